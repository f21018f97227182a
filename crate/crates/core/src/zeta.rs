//! Weil zeta functions from count tables.
//!
//! `Z(X, p, t) = exp(Σ N_r t^r / r)` is expanded exactly, recovered as a
//! rational function by Padé approximation with guard coefficients, and
//! split into factors `P_i` by the absolute values `q^{i/2}` of their
//! reciprocal roots. For a smooth projective reduction `deg P_i = b_i`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::counting::{count_sequence, CountConfig, CountTable};
use crate::error::{Error, Result};
use crate::schemes::{BirationalPairSpec, Geometry};

/// Extra series coefficients that a reconstruction must also match.
pub const GUARD: usize = 2;
/// Weight assignment tolerance on `2 log_q |α|`.
pub const WEIGHT_TOLERANCE: f64 = 0.01;

/// Integer polynomial in one variable, coefficients low degree first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial taken to have degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    /// `x^d f(1/x)` for `d = deg f`.
    pub fn reversed(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Exact quotient by `d`, if `d` divides `self` over `Z`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let lead = d.coeffs.last().expect("nonzero");
        let dd = d.degree();
        if rem.len() < d.coeffs.len() {
            return rem.iter().all(Zero::is_zero).then(ZPoly::default);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| ZPoly::new(quot))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn eval_c(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * x + c.to_f64().unwrap_or(f64::NAN)
            })
    }

    /// Canonical text: the coefficient list, `[1, 3, 5]`.
    pub fn to_list(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "t")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                f.write_str(var)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl Serialize for ZPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Truncated power series `c_0 + c_1 t + … + c_R t^R` of the zeta function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaSeries {
    pub p: u64,
    pub coefficients: ZPoly,
    /// `R`; coefficients beyond the stored ones are zero up to this order.
    pub order: usize,
}

impl ZetaSeries {
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coefficients.coeff(i)
    }
}

/// `exp(Σ_{r≤R} N_r t^r / r)` mod `t^{R+1}`, via `n c_n = Σ_k N_k c_{n-k}`.
pub fn zeta_series(table: &CountTable, r: usize) -> Result<ZetaSeries> {
    if table.counts.len() < r {
        return Err(Error::Inconsistent(format!(
            "table has {} counts, {r} requested",
            table.counts.len()
        )));
    }
    let counts: Vec<BigInt> = table.counts[..r].iter().map(|&n| BigInt::from(n)).collect();
    series_from_counts(table.p, &counts)
}

pub fn series_from_counts(p: u64, counts: &[BigInt]) -> Result<ZetaSeries> {
    let mut c = vec![BigInt::one()];
    for n in 1..=counts.len() {
        let s: BigInt = (1..=n).map(|k| &counts[k - 1] * &c[n - k]).sum();
        let (q, rem) = s.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(Error::NonIntegralSeries {
                index: n,
                value: BigRational::new(s, BigInt::from(n)).to_string(),
            });
        }
        c.push(q);
    }
    Ok(ZetaSeries {
        p,
        coefficients: ZPoly::new(c),
        order: counts.len(),
    })
}

/// Counts `N_1..N_r` encoded by a rational function; inverse of
/// [`zeta_series`].
pub fn counts_of(z: &ZetaFunction, r: usize) -> Vec<BigInt> {
    let c = z.expand(r);
    let mut n: Vec<BigInt> = Vec::with_capacity(r);
    for k in 1..=r {
        let mut v = BigInt::from(k) * c.coeff(k);
        for j in 1..k {
            v -= &n[j - 1] * c.coeff(k - j);
        }
        n.push(v);
    }
    n
}

/// `numerator / denominator`, both with constant term 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaFunction {
    pub p: u64,
    pub numerator: ZPoly,
    pub denominator: ZPoly,
}

impl ZetaFunction {
    /// Power series to order `r`.
    pub fn expand(&self, r: usize) -> ZPoly {
        let mut c: Vec<BigInt> = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let mut v = self.numerator.coeff(k);
            for j in 1..=k.min(self.denominator.degree()) {
                v -= self.denominator.coeff(j) * &c[k - j];
            }
            c.push(v);
        }
        ZPoly::new(c)
    }

    pub fn to_canonical_text(&self) -> String {
        format!(
            "p: {}\nnumerator: {}\ndenominator: {}\n",
            self.p,
            self.numerator.to_list(),
            self.denominator.to_list()
        )
    }
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Solves a square system over `Q`; `None` if singular.
pub(crate) fn solve_rational(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let v = &f * &a[col][j];
                    a[r][j] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some(b)
}

fn to_integer(v: &BigRational, what: &str) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Reconstruction(format!("{what} coefficient {v} is not an integer")))
    }
}

/// The `[deg_num / deg_den]` Padé approximant, checked against every
/// coefficient of the series (at least [`GUARD`] beyond the unknowns).
pub fn pade_reconstruct(series: &ZetaSeries, deg_num: usize, deg_den: usize) -> Result<ZetaFunction> {
    let needed = deg_num + deg_den + GUARD;
    if series.order < needed {
        return Err(Error::Reconstruction(format!(
            "degrees ({deg_num}, {deg_den}) need R >= {needed}, have R = {}",
            series.order
        )));
    }
    let c = |i: isize| -> BigRational {
        if i < 0 {
            BigRational::zero()
        } else {
            BigRational::from_integer(series.coeff(i as usize))
        }
    };
    let m = deg_num as isize;
    let n = deg_den;
    let rows: Vec<Vec<BigRational>> = (1..=n as isize)
        .map(|i| (1..=n as isize).map(|j| c(m + i - j)).collect())
        .collect();
    let rhs: Vec<BigRational> = (1..=n as isize).map(|i| -c(m + i)).collect();
    let q = solve_rational(rows, rhs).ok_or_else(|| {
        Error::Reconstruction(format!("singular system for degrees ({deg_num}, {deg_den})"))
    })?;
    let mut den = vec![BigInt::one()];
    for v in &q {
        den.push(to_integer(v, "denominator")?);
    }
    let den = ZPoly::new(den);
    let prod = series.coefficients.mul(&den);
    let mut num = Vec::with_capacity(deg_num + 1);
    for k in 0..=series.order {
        let v = prod.coeff(k);
        if k <= deg_num {
            num.push(v);
        } else if !v.is_zero() {
            return Err(Error::Reconstruction(format!(
                "coefficient t^{k} does not match for degrees ({deg_num}, {deg_den})"
            )));
        }
    }
    Ok(ZetaFunction {
        p: series.p,
        numerator: ZPoly::new(num),
        denominator: den,
    })
}

/// Smallest total degree `D` (and, within it, largest denominator degree)
/// whose approximant matches every available coefficient.
pub fn auto_reconstruct(series: &ZetaSeries) -> Result<ZetaFunction> {
    for total in 0..=series.order.saturating_sub(GUARD) {
        for den in (0..=total).rev() {
            if let Ok(z) = pade_reconstruct(series, total - den, den) {
                return Ok(z);
            }
        }
    }
    Err(Error::Reconstruction(format!(
        "no rational function of total degree <= {} matches the series",
        series.order.saturating_sub(GUARD)
    )))
}

/// `deg(denominator) - deg(numerator)`.
pub fn euler_from_zeta(z: &ZetaFunction) -> i64 {
    z.denominator.degree() as i64 - z.numerator.degree() as i64
}

/// Factors `P_0 … P_{2n}` by weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSplit {
    pub q: u64,
    pub dim: usize,
    pub factors: Vec<WeightFactor>,
    pub betti: Vec<usize>,
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightFactor {
    pub weight: usize,
    pub poly: ZPoly,
}

impl WeightSplit {
    pub fn factor(&self, i: usize) -> &ZPoly {
        &self.factors[i].poly
    }

    pub fn to_canonical_text(&self) -> String {
        let mut s = format!("q: {}\n", self.q);
        for f in &self.factors {
            s.push_str(&format!("P_{}: {}\n", f.weight, f.poly.to_list()));
        }
        let b: Vec<String> = self.betti.iter().map(|b| b.to_string()).collect();
        s.push_str(&format!("betti: [{}]\neuler: {}\n", b.join(", "), self.euler));
        s
    }
}

/// Roots of a monic polynomial (coefficients low first, leading 1) by
/// simultaneous Newton iteration.
fn complex_roots(monic: &ZPoly) -> Vec<Complex64> {
    let d = monic.degree();
    if d == 0 {
        return Vec::new();
    }
    let bound = 1.0
        + monic.coeffs()[..d]
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY).abs())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(bound * 0.9, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    for _ in 0..5000 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let num = monic.eval_c(z[k]);
            let den = (0..d)
                .filter(|&j| j != k)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[k] - z[j]));
            if den.norm() == 0.0 {
                z[k] += Complex64::new(1e-9 * bound, 1e-9 * bound);
                continue;
            }
            let step = num / den;
            z[k] -= step;
            moved = moved.max(step.norm() / z[k].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Monic integer polynomial `Π (x - α)` from numerically computed roots.
fn round_product(roots: &[Complex64]) -> ZPoly {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &a in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= v * a;
        }
        c = next;
    }
    ZPoly::new(c.iter().map(|v| BigInt::from(v.re.round() as i64)).collect())
}

/// Splits the block `P(t) = Π(1 - α t)` into monic factors `Π(x - α)`
/// grouped by weight.
fn split_block(poly: &ZPoly, q: u64, max_weight: usize) -> Result<Vec<(usize, ZPoly)>> {
    let mut rest = poly.reversed();
    if rest.coeffs().last().is_some_and(|c| !c.is_one()) {
        return Err(Error::WeightSplit(format!("{poly} does not have constant term 1")));
    }
    let mut parts: Vec<(usize, ZPoly)> = Vec::new();
    let push = |parts: &mut Vec<(usize, ZPoly)>, w: usize, f: ZPoly| {
        match parts.iter_mut().find(|(i, _)| *i == w) {
            Some((_, g)) => *g = g.mul(&f),
            None => parts.push((w, f)),
        }
    };
    // integer reciprocal roots: ±q^j, weight 2j
    for j in 0..=max_weight / 2 {
        let mag = BigInt::from(q).pow(j as u32);
        for alpha in [mag.clone(), -mag] {
            let lin = ZPoly::new(vec![-alpha.clone(), BigInt::one()]);
            while rest.degree() > 0 && rest.eval(&alpha).is_zero() {
                rest = rest.div_exact(&lin).expect("root divides");
                push(&mut parts, 2 * j, lin.clone());
            }
        }
    }
    if rest.degree() > 0 {
        let roots = complex_roots(&rest);
        let lq = (q as f64).ln();
        let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
        for a in roots {
            let w = 2.0 * a.norm().ln() / lq;
            let i = w.round();
            if (w - i).abs() >= WEIGHT_TOLERANCE || i < 0.0 || i as usize > max_weight {
                return Err(Error::WeightSplit(format!(
                    "reciprocal root of {poly} with |α| = {:.6} has weight {w:.4}, \
                     not an integer in 0..={max_weight}",
                    a.norm()
                )));
            }
            match groups.iter_mut().find(|(k, _)| *k == i as usize) {
                Some((_, g)) => g.push(a),
                None => groups.push((i as usize, vec![a])),
            }
        }
        for (w, g) in groups {
            let f = round_product(&g);
            rest = rest.div_exact(&f).ok_or_else(|| {
                Error::WeightSplit(format!(
                    "weight-{w} part of {poly} is not an integer factor"
                ))
            })?;
            push(&mut parts, w, f);
        }
        if rest != ZPoly::one() {
            return Err(Error::WeightSplit(format!("leftover factor in {poly}")));
        }
    }
    Ok(parts)
}

/// Splits `z` into weight factors for a variety of dimension `dim` over
/// `F_q`, checking parity and exact re-multiplication.
pub fn weight_split(z: &ZetaFunction, q: u64, dim: usize) -> Result<WeightSplit> {
    let top = 2 * dim;
    let num = split_block(&z.numerator, q, top)?;
    let den = split_block(&z.denominator, q, top)?;
    if let Some((w, _)) = num.iter().find(|(w, _)| w % 2 == 0) {
        return Err(Error::WeightSplit(format!("even weight {w} in the numerator")));
    }
    if let Some((w, _)) = den.iter().find(|(w, _)| w % 2 == 1) {
        return Err(Error::WeightSplit(format!("odd weight {w} in the denominator")));
    }
    let mut factors: Vec<WeightFactor> = (0..=top)
        .map(|i| WeightFactor {
            weight: i,
            poly: ZPoly::one(),
        })
        .collect();
    for (w, f) in num.into_iter().chain(den) {
        factors[w].poly = factors[w].poly.mul(&f.reversed());
    }
    let prod = |odd: bool| {
        factors
            .iter()
            .filter(|f| (f.weight % 2 == 1) == odd)
            .fold(ZPoly::one(), |acc, f| acc.mul(&f.poly))
    };
    if prod(true) != z.numerator || prod(false) != z.denominator {
        return Err(Error::WeightSplit("re-multiplied factors differ from the zeta function".into()));
    }
    let betti: Vec<usize> = factors.iter().map(|f| f.poly.degree()).collect();
    let euler = betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    Ok(WeightSplit {
        q,
        dim,
        factors,
        betti,
        euler,
    })
}

/// Integer polynomial in `q`, coefficients low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountPolynomial {
    pub coefficients: ZPoly,
}

impl CountPolynomial {
    pub fn from_i64s(c: &[i64]) -> Self {
        Self {
            coefficients: ZPoly::from_i64s(c),
        }
    }

    pub fn eval(&self, q: i64) -> BigInt {
        self.coefficients.eval(&BigInt::from(q))
    }
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rev: Vec<BigInt> = self.coefficients.coeffs().to_vec();
        // highest power first reads more naturally for count polynomials
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in rev.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => mag.to_string(),
                _ => {
                    let coef = if mag.is_one() { String::new() } else { mag.to_string() };
                    let pow = if i > 1 { format!("^{i}") } else { String::new() };
                    format!("{coef}q{pow}")
                }
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if terms.is_empty() {
                terms.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{sign} {body}"));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" "))
        }
    }
}

/// The integer polynomial `C` of degree `<= d` with `C(p^r) = N_r` for
/// every entry of every table. Needs `d + 2` distinct values of `q`, so
/// one data point beyond the interpolation nodes is always checked.
pub fn count_polynomial_fit(tables: &[CountTable], degree: usize) -> Result<CountPolynomial> {
    let mut points: Vec<(BigInt, BigInt)> = Vec::new();
    for t in tables {
        for (i, &n) in t.counts.iter().enumerate() {
            let q = BigInt::from(t.p).pow(i as u32 + 1);
            match points.iter().find(|(x, _)| *x == q) {
                Some((_, y)) if *y != BigInt::from(n) => {
                    return Err(Error::Inconsistent(format!("two different counts at q = {q}")));
                }
                Some(_) => {}
                None => points.push((q, BigInt::from(n))),
            }
        }
    }
    if points.len() < degree + 2 {
        return Err(Error::Inconsistent(format!(
            "a degree-{degree} fit needs {} distinct values of q, got {}",
            degree + 2,
            points.len()
        )));
    }
    points.sort();
    let basis = &points[..degree + 1];
    let rows = basis
        .iter()
        .map(|(x, _)| {
            (0..=degree)
                .map(|j| BigRational::from_integer(x.pow(j as u32)))
                .collect()
        })
        .collect();
    let rhs = basis.iter().map(|(_, y)| BigRational::from_integer(y.clone())).collect();
    let sol = solve_rational(rows, rhs).expect("Vandermonde on distinct nodes");
    let mut coeffs = Vec::with_capacity(sol.len());
    for v in &sol {
        if !v.is_integer() {
            return Err(Error::Inconsistent(format!(
                "fitted coefficient {v} is not an integer; the counts are not polynomial in q"
            )));
        }
        coeffs.push(v.to_integer());
    }
    let poly = CountPolynomial {
        coefficients: ZPoly::new(coeffs),
    };
    for (x, y) in &points {
        let v = poly.coefficients.eval(x);
        if v != *y {
            return Err(Error::Inconsistent(format!(
                "C(q) = {poly} gives {v} at q = {x}, counted {y}"
            )));
        }
    }
    Ok(poly)
}

/// First `r` where two count tables differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub r: usize,
    pub left: u64,
    pub right: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaComparison {
    pub left: ZetaFunction,
    pub right: ZetaFunction,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiComparison {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub equal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareMode {
    CountsOnly,
    Zeta,
}

/// Outcome of comparing the two sides of a pair at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub pair: String,
    pub p: u64,
    pub r_max: u32,
    pub mode: CompareMode,
    pub left: CountTable,
    pub right: CountTable,
    pub counts_equal: bool,
    pub first_mismatch: Option<Mismatch>,
    pub zeta: Option<ZetaComparison>,
    pub betti: Option<BettiComparison>,
    pub notes: Vec<String>,
    pub pass: bool,
}

fn is_proper(g: &Geometry) -> bool {
    matches!(g, Geometry::Variety(v) if v.is_projective())
}

/// Counts both sides over `F_{p^r}`, `r <= R`, and compares tables; for
/// two projective sides it also compares zeta functions and Betti vectors.
pub fn compare_zeta(pair: &BirationalPairSpec, p: u64, r_max: u32, cfg: &CountConfig) -> Result<CompareReport> {
    let left = count_sequence(&pair.left, p, r_max, cfg)?;
    let right = count_sequence(&pair.right, p, r_max, cfg)?;
    let mut notes = Vec::new();
    for t in [&left, &right] {
        if let Some(tr) = &t.truncated {
            notes.push(format!("{} truncated at r = {}: {}", t.spec_name, tr.r, tr.reason));
        }
    }
    if pair.left.dimension() != pair.right.dimension() {
        notes.push(format!(
            "dimensions differ ({} vs {}); a birational pair must have equal dimension",
            pair.left.dimension(),
            pair.right.dimension()
        ));
    }
    let first_mismatch = left
        .counts
        .iter()
        .zip(&right.counts)
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (&l, &r))| Mismatch {
            r: i + 1,
            left: l,
            right: r,
        });
    let common = left.counts.len().min(right.counts.len());
    let counts_equal = first_mismatch.is_none() && common > 0;
    let mode = if is_proper(&pair.left) && is_proper(&pair.right) {
        CompareMode::Zeta
    } else {
        notes.push("counts-only: at least one side is not proper, so no purity claim is made".into());
        CompareMode::CountsOnly
    };
    let mut zeta = None;
    let mut betti = None;
    if mode == CompareMode::Zeta {
        let rec = |t: &CountTable| zeta_series(t, t.counts.len()).and_then(|s| auto_reconstruct(&s));
        match (rec(&left), rec(&right)) {
            (Ok(zl), Ok(zr)) => {
                let split = |z: &ZetaFunction, g: &Geometry| weight_split(z, p, g.dimension());
                match (split(&zl, &pair.left), split(&zr, &pair.right)) {
                    (Ok(wl), Ok(wr)) => {
                        betti = Some(BettiComparison {
                            equal: wl.betti == wr.betti,
                            left: wl.betti,
                            right: wr.betti,
                        })
                    }
                    (l, r) => {
                        for e in [l.err(), r.err()].into_iter().flatten() {
                            notes.push(format!("weight split: {e}"));
                        }
                    }
                }
                zeta = Some(ZetaComparison {
                    equal: zl == zr,
                    left: zl,
                    right: zr,
                });
            }
            (l, r) => {
                for e in [l.err(), r.err()].into_iter().flatten() {
                    notes.push(format!("zeta reconstruction: {e}"));
                }
            }
        }
    }
    let pass = counts_equal
        && zeta.as_ref().is_none_or(|z| z.equal)
        && betti.as_ref().is_none_or(|b| b.equal);
    Ok(CompareReport {
        pair: pair.name.clone(),
        p,
        r_max,
        mode,
        left,
        right,
        counts_equal,
        first_mismatch,
        zeta,
        betti,
        notes,
        pass,
    })
}
