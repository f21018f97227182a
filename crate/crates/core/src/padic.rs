//! Truncated p-adic arithmetic and exact measures of residue classes.
//!
//! We work over `F = Q_p`, `R = Z_p`, residue field `F_p`; the field norm in
//! `‖a‖ = p^{-Ord(N(a))}` is then the identity. Integrals are computed by
//! enumerating the residue classes modulo `p^k` of the integral points of a
//! chart. Each class with a unit Jacobian minor is a polydisc in the free
//! coordinates of measure `p^{-k d}` (times the norm of the density, which
//! is 1 on such a class), so every value is an exact rational `m / p^{k d}`.
//! Classes with no unit minor are refused; singular integration is not
//! attempted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::fields::is_prime;
use crate::polynomials::{IntPolynomial, ResiduePlan};
use crate::schemes::{Ambient, ChartAtlas, GaugeDensity, VarietySpec};

pub const DEFAULT_MAX_PRECISION: u32 = 8;

/// `Z_p` worked modulo `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    precision: u32,
    max_precision: u32,
    budget: u64,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        Self::with_cap(p, precision, DEFAULT_MAX_PRECISION)
    }

    pub fn with_cap(p: u64, precision: u32, max_precision: u32) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let fits = (p as u128)
            .checked_pow(precision)
            .is_some_and(|m| m < 1 << 63);
        if precision == 0 || precision > max_precision || !fits {
            return Err(Error::Precision {
                k: precision,
                cap: max_precision,
            });
        }
        Ok(Self {
            p,
            precision,
            max_precision,
            budget: DEFAULT_BUDGET,
        })
    }

    /// Only `Q_p` itself is supported; any other local field is rejected.
    pub fn for_local_field(p: u64, ramification: u32, residue_degree: u32, k: u32) -> Result<Self> {
        if ramification != 1 || residue_degree != 1 {
            return Err(Error::Unsupported(format!(
                "only F = Q_p is supported (got e = {ramification}, f = {residue_degree}); \
                 the norm N_(F/Q_p) is taken to be the identity"
            )));
        }
        Self::new(p, k)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn max_precision(&self) -> u32 {
        self.max_precision
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.precision)
    }

    /// The same context one digit finer, if the cap allows it.
    fn finer(&self) -> Option<Self> {
        Self::with_cap(self.p, self.precision + 1, self.max_precision)
            .ok()
            .map(|c| c.with_budget(self.budget))
    }
}

/// `Ord_p(a)` for nonzero rational `a`.
pub fn valuation(a: &BigRational, p: u64) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let p = BigInt::from(p);
    let count = |mut x: BigInt| {
        let mut v = 0i64;
        loop {
            let (q, r) = x.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            x = q;
            v += 1;
        }
    };
    Ok(count(a.numer().abs()) - count(a.denom().abs()))
}

/// `‖a‖ = p^{-Ord(a)}`, with `‖0‖ = 0`.
pub fn padic_norm(a: &BigRational, p: u64) -> BigRational {
    match valuation(a, p) {
        Err(_) => BigRational::zero(),
        Ok(v) => pow_p(p, -v),
    }
}

fn pow_p(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// Haar measure of the unit box `A^n(Z_p)`: 1 by normalization.
pub fn haar_box(_n: usize) -> BigRational {
    BigRational::one()
}

/// Measure of the box `{x : x_i ≡ c_i mod p^{m_i}}`.
pub fn residue_box(p: u64, levels: &[u32]) -> BigRational {
    let total: i64 = levels.iter().map(|&m| m as i64).sum();
    pow_p(p, -total)
}

/// Which unit partial (or minor) to use on a class when several qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartialChoice {
    #[default]
    Smallest,
    Largest,
}

/// An exact p-adic integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicMeasureResult {
    #[serde(serialize_with = "ser_ratio")]
    pub value: BigRational,
    pub precision_used: u32,
    /// The value at `precision_used + 1` is identical.
    pub stabilized: bool,
    /// Residue classes (disks) visited at `precision_used`.
    pub disk_count: u64,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Residue classes modulo `p^k` of solutions, stored flat with stride `n`.
struct Classes {
    n: usize,
    flat: Vec<u64>,
}

impl Classes {
    fn len(&self) -> usize {
        if self.n == 0 {
            self.flat.len()
        } else {
            self.flat.len() / self.n
        }
    }

    fn iter(&self) -> impl Iterator<Item = &[u64]> {
        self.flat.chunks(self.n.max(1))
    }
}

/// All classes `x mod p^k` with every equation `≡ 0 mod p^k` and every cut
/// `≡ 0 mod p`, found by lifting one digit at a time.
fn lift_classes(
    n: usize,
    equations: &[IntPolynomial],
    cuts: &[IntPolynomial],
    p: u64,
    k: u32,
    budget: u64,
) -> Result<Classes> {
    if n == 0 {
        let ok = equations
            .iter()
            .chain(cuts)
            .all(|f| f.residue_plan(p).eval(&[]) == 0);
        return Ok(Classes {
            n,
            flat: if ok { vec![0] } else { Vec::new() },
        });
    }
    let digits = p.checked_pow(n as u32).ok_or(Error::Budget {
        required: u128::MAX,
        budget,
    })?;
    let mut evaluations = digits;
    if evaluations > budget {
        return Err(Error::Budget {
            required: evaluations as u128,
            budget,
        });
    }
    let eq1: Vec<ResiduePlan> = equations.iter().map(|f| f.residue_plan(p)).collect();
    let cut1: Vec<ResiduePlan> = cuts.iter().map(|f| f.residue_plan(p)).collect();
    let mut flat: Vec<u64> = (0..digits)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let pt = digits_of(idx, p, n);
            let keep = eq1.iter().chain(&cut1).all(|f| f.eval(&pt) == 0);
            keep.then_some(pt).into_iter().flatten()
        })
        .collect();
    let mut scale = 1u64;
    for _ in 1..k {
        scale *= p;
        let modulus = scale * p;
        let count = flat.len() as u64 / n as u64;
        evaluations = evaluations.saturating_add(count.saturating_mul(digits));
        if evaluations > budget {
            return Err(Error::Budget {
                required: evaluations as u128,
                budget,
            });
        }
        let plans: Vec<ResiduePlan> = equations.iter().map(|f| f.residue_plan(modulus)).collect();
        flat = flat
            .par_chunks(n)
            .flat_map_iter(|base| {
                let mut out = Vec::new();
                for idx in 0..digits {
                    let d = digits_of(idx, p, n);
                    let pt: Vec<u64> = base.iter().zip(&d).map(|(&b, &c)| b + scale * c).collect();
                    if plans.iter().all(|f| f.eval(&pt) == 0) {
                        out.extend_from_slice(&pt);
                    }
                }
                out
            })
            .collect();
    }
    Ok(Classes { n, flat })
}

fn digits_of(mut idx: u64, p: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for c in v.iter_mut() {
        *c = idx % p;
        idx /= p;
    }
    v
}

/// Determinant mod `p` of a small square matrix.
fn det_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i][c] % p != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        let inv = crate::fields::modpoly::inv_mod(m[c][c], p);
        det = det * m[c][c] % p;
        for i in c + 1..n {
            let f = m[i][c] * inv % p;
            for j in c..n {
                m[i][j] = (m[i][j] + p - f * m[c][j] % p) % p;
            }
        }
    }
    det
}

fn combinations(n: usize, c: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, c: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, c, &mut Vec::new(), &mut out);
    out
}

/// Integral of the unit-normalized density over the integral points of one
/// chart piece (equations `= 0`, cuts non-units), at precision `k`.
fn integrate_piece(
    n: usize,
    equations: &[IntPolynomial],
    cuts: &[IntPolynomial],
    ctx: &PadicContext,
    choice: PartialChoice,
) -> Result<(BigRational, u64)> {
    let p = ctx.p;
    let k = ctx.precision;
    let c = equations.len();
    if c > n {
        return Err(Error::InvalidSpec(format!(
            "{c} equations in {n} variables is not a complete intersection chart"
        )));
    }
    let classes = lift_classes(n, equations, cuts, p, k, ctx.budget)?;
    let d = n - c;
    let jac_p: Vec<Vec<ResiduePlan>> = equations
        .iter()
        .map(|f| (0..n).map(|j| f.derivative(j).residue_plan(p)).collect())
        .collect();
    let jac_k: Vec<Vec<ResiduePlan>> = equations
        .iter()
        .map(|f| (0..n).map(|j| f.derivative(j).residue_plan(ctx.modulus())).collect())
        .collect();
    let mut minors = combinations(n, c);
    if choice == PartialChoice::Largest {
        minors.reverse();
    }
    let mut total = BigRational::zero();
    for class in classes.iter() {
        if c == 0 {
            total += BigRational::one();
            continue;
        }
        let reduced: Vec<u64> = class.iter().map(|x| x % p).collect();
        let entries: Vec<Vec<u64>> = jac_p
            .iter()
            .map(|row| row.iter().map(|g| g.eval(&reduced)).collect())
            .collect();
        let Some(cols) = minors.iter().find(|cols| {
            let m = entries
                .iter()
                .map(|row| cols.iter().map(|&j| row[j]).collect())
                .collect();
            det_mod_p(m, p) != 0
        }) else {
            return Err(Error::SingularClass {
                class: class.to_vec(),
            });
        };
        // ‖1 / minor‖ on the class; the minor is a unit so this is 1, but it
        // is read off the class representative modulo p^k.
        let norm = if c == 1 {
            let v = jac_k[0][cols[0]].eval(class);
            let val = if v == 0 {
                k as i64
            } else {
                valuation(&BigRational::from_integer(BigInt::from(v)), p)?
            };
            pow_p(p, val)
        } else {
            BigRational::one()
        };
        total += norm;
    }
    let value = total * pow_p(p, -((k as i64) * d as i64));
    Ok((value, classes.len() as u64))
}

fn with_stabilization(
    ctx: &PadicContext,
    run: impl Fn(&PadicContext) -> Result<(BigRational, u64)>,
) -> Result<PadicMeasureResult> {
    let (value, disks) = run(ctx)?;
    let stabilized = match ctx.finer() {
        Some(finer) => run(&finer)?.0 == value,
        None => false,
    };
    Ok(PadicMeasureResult {
        value,
        precision_used: ctx.precision,
        stabilized,
        disk_count: disks,
    })
}

/// Weil measure of `X(Z_p)` for the Gelfand-Leray gauge form on an affine
/// hypersurface, using the smallest unit partial on each class.
pub fn weil_measure(density: &GaugeDensity, ctx: &PadicContext) -> Result<PadicMeasureResult> {
    weil_measure_with(density, ctx, PartialChoice::Smallest)
}

pub fn weil_measure_with(
    density: &GaugeDensity,
    ctx: &PadicContext,
    choice: PartialChoice,
) -> Result<PadicMeasureResult> {
    let f = density.equation();
    let n = f.nvars();
    with_stabilization(ctx, |c| {
        integrate_piece(n, std::slice::from_ref(f), &[], c, choice)
    })
}

/// Canonical measure of an atlas: the first-chart-wins pieces, each
/// integrated with a unit density. A point of chart `i` already lies in an
/// earlier chart `j` exactly when the cut `g_ij` is a unit there, so the new
/// part is where every cut reduces to zero mod `p`.
pub fn canonical_measure(atlas: &ChartAtlas, ctx: &PadicContext) -> Result<PadicMeasureResult> {
    with_stabilization(ctx, |c| {
        let mut total = BigRational::zero();
        let mut disks = 0;
        for chart in &atlas.charts {
            let cuts: Vec<IntPolynomial> = chart.cuts.iter().map(|k| k.poly.clone()).collect();
            let (v, d) = integrate_piece(
                chart.vars.len(),
                &chart.equations,
                &cuts,
                c,
                PartialChoice::Smallest,
            )?;
            total += v;
            disks += d;
        }
        Ok((total, disks))
    })
}

/// Haar measure of `{x ∈ A^n(Z_p) : every equation ≡ 0 mod p^m}`, the tube
/// of radius `p^{-m}` around `Z(Z_p)`.
pub fn tube_measure(sub: &VarietySpec, p: u64, m: u32, max_precision: u32) -> Result<BigRational> {
    let Ambient::Affine(n) = sub.ambient else {
        return Err(Error::InvalidSpec(format!("{} is not affine", sub.name)));
    };
    let ctx = PadicContext::with_cap(p, m, max_precision)?;
    let classes = lift_classes(n, &sub.equations, &[], p, m, ctx.budget)?;
    Ok(BigRational::from_integer(BigInt::from(classes.len())) * pow_p(p, -((n as i64) * m as i64)))
}
