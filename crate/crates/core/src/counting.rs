//! Point counting over `F_{p^r}`.
//!
//! The default strategy enumerates the first `n - 1` coordinates and, for
//! each prefix, specializes every equation to a univariate polynomial in the
//! last coordinate. The number of solutions is then the degree of
//! `gcd(h_1, .., h_m, x^q - x)`, so the work is `q^{n-1}` specializations
//! instead of `q^n` evaluations. [`Strategy::Exhaustive`] evaluates every
//! point and serves as the brute-force oracle.
//!
//! Enumeration is split into contiguous index ranges that workers process
//! independently; results are combined in range order, so counts and
//! reports do not depend on the number of threads.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{make_extension, ExtensionField, TableField};
use crate::polynomials::{reduce_mod_p, EvalPlan, IntPolynomial, PowerCache};
use crate::schemes::{Ambient, ChartAtlas, Geometry, VarietySpec};

/// Default cap on membership evaluations per count.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Univariate root counting on the last coordinate.
    #[default]
    Auto,
    /// Evaluate every point of `A^n(F_q)`.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountConfig {
    pub budget: u64,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub strategy: Strategy,
}

impl Default for CountConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            workers: None,
            strategy: Strategy::Auto,
        }
    }
}

impl CountConfig {
    pub fn exhaustive() -> Self {
        Self {
            strategy: Strategy::Exhaustive,
            ..Self::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        match self.workers {
            None => job(),
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .expect("thread pool")
                .install(job),
        }
    }
}

/// A count together with the number of evaluations it cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Count {
    pub points: u64,
    pub evaluations: u64,
}

/// A field together with its counting tables.
pub struct CountField {
    field: ExtensionField,
    table: TableField,
}

impl CountField {
    pub fn new(field: &ExtensionField) -> Result<Self> {
        Ok(Self {
            table: TableField::new(field)?,
            field: field.clone(),
        })
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn table(&self) -> &TableField {
        &self.table
    }

    pub fn q(&self) -> u64 {
        self.table.order() as u64
    }
}

fn checked_pow(q: u64, n: usize) -> Result<u64> {
    q.checked_pow(n as u32)
        .ok_or_else(|| Error::Unsupported(format!("{q}^{n} points overflow 64 bits")))
}

fn check_budget(required: u64, cfg: &CountConfig) -> Result<()> {
    if required > cfg.budget {
        return Err(Error::Budget {
            required: required as u128,
            budget: cfg.budget,
        });
    }
    Ok(())
}

/// Number of points of `A^n(F_q)` where every polynomial in `equations`
/// vanishes. All equations must be over the same `n` variables.
pub fn count_locus(
    n: usize,
    equations: &[IntPolynomial],
    cf: &CountField,
    cfg: &CountConfig,
) -> Result<Count> {
    for f in equations {
        if f.nvars() != n {
            return Err(Error::Arity {
                expected: n,
                got: f.nvars(),
            });
        }
    }
    let t = cf.table();
    let p = t.p();
    let reduced: Vec<_> = equations
        .iter()
        .map(|f| reduce_mod_p(f, p))
        .filter(|f| !f.is_zero())
        .collect();
    let q = cf.q();
    if reduced.is_empty() {
        return Ok(Count {
            points: checked_pow(q, n)?,
            evaluations: 0,
        });
    }
    if n == 0 {
        // nonzero constants only
        return Ok(Count {
            points: 0,
            evaluations: reduced.len() as u64,
        });
    }
    match cfg.strategy {
        Strategy::Exhaustive => {
            let total = checked_pow(q, n)?;
            check_budget(total, cfg)?;
            let plans: Vec<EvalPlan> = reduced.iter().map(|f| f.plan(t)).collect();
            let max_deg = merged_degrees(&plans, n);
            let points = cfg.run(|| {
                fold_points(q, n, total, |range_start, len| {
                    let mut cache = PowerCache::default();
                    let mut hits = 0u64;
                    for_each_in_range(q, n, range_start, len, |pt| {
                        cache.load(t, &max_deg, pt);
                        if plans.iter().all(|pl| pl.eval_cached(t, &cache) == 0) {
                            hits += 1;
                        }
                    });
                    hits
                })
            });
            Ok(Count {
                points,
                evaluations: total,
            })
        }
        Strategy::Auto => {
            let prefixes = checked_pow(q, n - 1)?;
            check_budget(prefixes, cfg)?;
            let split: Vec<SplitPlan> = equations
                .iter()
                .map(|f| SplitPlan::new(f, t))
                .collect();
            let max_deg: Vec<u32> = (0..n - 1)
                .map(|v| {
                    split
                        .iter()
                        .flat_map(|s| s.coeffs.iter().map(move |c| c.max_degrees()[v]))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let points = cfg.run(|| {
                fold_points(q, n - 1, prefixes, |range_start, len| {
                    let mut cache = PowerCache::default();
                    let mut acc = 0u64;
                    let mut g: Vec<u32> = Vec::new();
                    let mut h: Vec<u32> = Vec::new();
                    for_each_in_range(q, n - 1, range_start, len, |pt| {
                        cache.load(t, &max_deg, pt);
                        g.clear();
                        let mut first = true;
                        for s in &split {
                            s.specialize(t, &cache, &mut h);
                            if first {
                                std::mem::swap(&mut g, &mut h);
                                first = false;
                            } else {
                                g = upoly::gcd(t, &g, &h);
                            }
                            if g.len() == 1 {
                                break;
                            }
                        }
                        acc += upoly::count_roots(t, &g);
                    });
                    acc
                })
            });
            Ok(Count {
                points,
                evaluations: prefixes,
            })
        }
    }
}

fn merged_degrees(plans: &[EvalPlan], n: usize) -> Vec<u32> {
    (0..n)
        .map(|v| plans.iter().map(|p| p.max_degrees()[v]).max().unwrap_or(0))
        .collect()
}

/// Coefficients of each power of the last variable, as plans over the
/// remaining ones.
struct SplitPlan {
    coeffs: Vec<EvalPlan>,
}

impl SplitPlan {
    fn new(f: &IntPolynomial, t: &TableField) -> Self {
        let n = f.nvars();
        let last = n - 1;
        let deg = f.degree_in(last) as usize;
        let prefix_vars = &f.vars()[..last];
        let mut parts: Vec<Vec<(Vec<u32>, num_bigint::BigInt)>> = vec![Vec::new(); deg + 1];
        for (mono, c) in f.terms() {
            parts[mono[last] as usize].push((mono[..last].to_vec(), c.clone()));
        }
        let coeffs = parts
            .into_iter()
            .map(|terms| {
                let g = IntPolynomial::from_terms(prefix_vars, terms).expect("arity");
                reduce_mod_p(&g, t.p()).plan(t)
            })
            .collect();
        Self { coeffs }
    }

    fn specialize(&self, t: &TableField, cache: &PowerCache, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.coeffs.iter().map(|c| c.eval_cached(t, cache)));
        upoly::trim(out);
    }
}

/// Sums `work(start, len)` over contiguous ranges covering `0..total`.
fn fold_points(
    _q: u64,
    _n: usize,
    total: u64,
    work: impl Fn(u64, u64) -> u64 + Sync,
) -> u64 {
    let chunk = (total / 256).max(1024);
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            work(start, chunk.min(total - start))
        })
        .sum()
}

/// Visits points `start .. start + len` of `F_q^n` in odometer order
/// (first coordinate least significant), as table-field codes.
fn for_each_in_range(q: u64, n: usize, start: u64, len: u64, mut f: impl FnMut(&[u32])) {
    let mut pt = vec![0u32; n];
    let mut idx = start;
    for c in pt.iter_mut() {
        *c = (idx % q) as u32;
        idx /= q;
    }
    for _ in 0..len {
        f(&pt);
        for c in pt.iter_mut() {
            *c += 1;
            if (*c as u64) < q {
                break;
            }
            *c = 0;
        }
    }
}

/// Dense univariate polynomials over a table field, low degree first.
pub(crate) mod upoly {
    use crate::fields::TableField;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(t: &TableField, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = t.inv(m[dm]);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = t.mul(r[top], lead_inv);
            for (k, &mk) in m.iter().enumerate() {
                let idx = top - dm + k;
                r[idx] = t.sub(r[idx], t.mul(c, mk));
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(t: &TableField, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = t.add(out[i + j], t.mul(x, y));
            }
        }
        rem(t, &out, m)
    }

    pub fn gcd(t: &TableField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(t, &a, &b);
            a = b;
            b = r;
        }
        a
    }

    /// Number of distinct roots in `F_q`; the zero polynomial has `q`.
    pub fn count_roots(t: &TableField, g: &[u32]) -> u64 {
        let q = t.order() as u64;
        match g.len() {
            0 => return q,
            1 => return 0,
            2 => return 1,
            3 if t.p() != 2 => {
                // b^2 - 4ac is a square iff its log is even
                let (c, b, a) = (g[0], g[1], g[2]);
                let four = t.from_int(4);
                let disc = t.sub(t.mul(b, b), t.mul(four, t.mul(a, c)));
                return if disc == 0 {
                    1
                } else if (disc - 1) % 2 == 0 {
                    2
                } else {
                    0
                };
            }
            _ => {}
        }
        // x^q mod g by square-and-multiply, then gcd(g, x^q - x)
        let x = vec![0, 1];
        let mut acc = rem(t, &[1], g);
        let mut base = rem(t, &x, g);
        let mut e = q;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(t, &acc, &base, g);
            }
            base = mulmod(t, &base, &base, g);
            e >>= 1;
        }
        acc.resize(acc.len().max(2), 0);
        acc[1] = t.sub(acc[1], 1);
        trim(&mut acc);
        let d = gcd(t, g, &acc);
        (d.len() - 1) as u64
    }
}

/// `|X(F_q)|` for an affine spec.
pub fn count_affine(spec: &VarietySpec, field: &ExtensionField, cfg: &CountConfig) -> Result<Count> {
    let cf = CountField::new(field)?;
    count_affine_in(spec, &cf, cfg)
}

fn count_affine_in(spec: &VarietySpec, cf: &CountField, cfg: &CountConfig) -> Result<Count> {
    let Ambient::Affine(n) = spec.ambient else {
        return Err(Error::InvalidSpec(format!("{} is not affine", spec.name)));
    };
    count_locus(n, &spec.equations, cf, cfg)
}

/// `|X(F_q)|` for a projective spec, summed over the normalized strata
/// `A^N ⊔ A^{N-1} ⊔ .. ⊔ A^0`.
pub fn count_projective(
    spec: &VarietySpec,
    field: &ExtensionField,
    cfg: &CountConfig,
) -> Result<Count> {
    let cf = CountField::new(field)?;
    count_projective_in(spec, &cf, cfg)
}

fn count_projective_in(spec: &VarietySpec, cf: &CountField, cfg: &CountConfig) -> Result<Count> {
    if let Some(f) = spec.equations.iter().find(|f| f.homogeneous_degree().is_none()) {
        return Err(Error::InvalidSpec(format!("{f} is not homogeneous")));
    }
    let mut total = Count {
        points: 0,
        evaluations: 0,
    };
    for stratum in spec.affine_strata()? {
        let c = count_affine_in(&stratum, cf, cfg)?;
        total.points += c.points;
        total.evaluations += c.evaluations;
    }
    Ok(total)
}

/// Projective count by brute force over `A^{N+1} \ 0`, divided by `q - 1`.
/// Independent of the strata path; used as an oracle.
pub fn count_projective_orbits(
    spec: &VarietySpec,
    field: &ExtensionField,
    cfg: &CountConfig,
) -> Result<u64> {
    let cf = CountField::new(field)?;
    let cone = count_locus(
        spec.ambient.nvars(),
        &spec.equations,
        &cf,
        &CountConfig {
            strategy: Strategy::Exhaustive,
            ..*cfg
        },
    )?;
    Ok(cone.points.saturating_sub(1) / (cf.q() - 1))
}

/// First-chart-wins count: chart `i` contributes its points on which every
/// recorded cut vanishes.
pub fn count_atlas(atlas: &ChartAtlas, field: &ExtensionField, cfg: &CountConfig) -> Result<Count> {
    let cf = CountField::new(field)?;
    count_atlas_in(atlas, &cf, cfg)
}

fn count_atlas_in(atlas: &ChartAtlas, cf: &CountField, cfg: &CountConfig) -> Result<Count> {
    let mut total = Count {
        points: 0,
        evaluations: 0,
    };
    for chart in &atlas.charts {
        let c = count_locus(chart.vars.len(), &chart.new_part_equations(), cf, cfg)?;
        total.points += c.points;
        total.evaluations += c.evaluations;
    }
    Ok(total)
}

/// Counts any countable geometry.
pub fn count_geometry(g: &Geometry, field: &ExtensionField, cfg: &CountConfig) -> Result<Count> {
    let cf = CountField::new(field)?;
    match g {
        Geometry::Variety(v) if v.is_projective() => count_projective_in(v, &cf, cfg),
        Geometry::Variety(v) => count_affine_in(v, &cf, cfg),
        Geometry::Atlas(a) => count_atlas_in(a, &cf, cfg),
    }
}

/// Why a count table stopped early.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncation {
    /// First degree that was not counted.
    pub r: u32,
    pub reason: String,
}

/// `N_r = |X(F_{p^r})|` for `r = 1..=R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub spec_name: String,
    pub p: u64,
    pub counts: Vec<u64>,
    pub budget_used: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated: Option<Truncation>,
}

impl CountTable {
    /// Highest `r` counted.
    pub fn r_max(&self) -> usize {
        self.counts.len()
    }

    pub fn is_complete(&self) -> bool {
        self.truncated.is_none()
    }

    /// Columnar text `r, q^r, N_r` with a two-line header.
    pub fn to_columns(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# spec: {}", self.spec_name);
        let _ = writeln!(s, "# p: {}", self.p);
        let _ = writeln!(s, "r\tq^r\tN_r");
        for (i, n) in self.counts.iter().enumerate() {
            let r = i as u32 + 1;
            let q = (self.p as u128).pow(r);
            let _ = writeln!(s, "{r}\t{q}\t{n}");
        }
        if let Some(t) = &self.truncated {
            let _ = writeln!(s, "# truncated at r = {}: {}", t.r, t.reason);
        }
        s
    }
}

/// Counts in independently constructed fields `F_{p^r}`, `r = 1..=R`.
/// A budget refusal at some `r` ends the table there with a truncation
/// marker; other errors propagate.
pub fn count_sequence(g: &Geometry, p: u64, r_max: u32, cfg: &CountConfig) -> Result<CountTable> {
    let mut table = CountTable {
        spec_name: g.name().to_string(),
        p,
        counts: Vec::new(),
        budget_used: 0,
        truncated: None,
    };
    for r in 1..=r_max {
        let field = make_extension(p, r)?;
        match count_geometry(g, &field, cfg) {
            Ok(c) => {
                table.counts.push(c.points);
                table.budget_used += c.evaluations;
            }
            Err(e) if e.is_budget() => {
                table.truncated = Some(Truncation {
                    r,
                    reason: e.to_string(),
                });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(table)
}

/// Rational points where the Jacobian drops rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub field: String,
    pub checked_points: u64,
    pub singular_count: u64,
    /// Coordinates as base-`p` field indices, at most
    /// [`SINGULAR_POINT_LIMIT`] of them.
    pub singular_points: Vec<Vec<u64>>,
}

pub const SINGULAR_POINT_LIMIT: usize = 32;

impl SmoothnessReport {
    pub fn is_smooth(&self) -> bool {
        self.singular_count == 0
    }
}

/// Checks the Jacobian rank at every `F_q`-point of an affine complete
/// intersection. Only rational points are examined, so a singularity with
/// no rational witness goes unnoticed.
pub fn smoothness_check(
    spec: &VarietySpec,
    field: &ExtensionField,
    cfg: &CountConfig,
) -> Result<SmoothnessReport> {
    let Ambient::Affine(n) = spec.ambient else {
        return Err(Error::InvalidSpec(format!("{} is not affine", spec.name)));
    };
    let cf = CountField::new(field)?;
    let t = cf.table();
    let q = cf.q();
    let total = checked_pow(q, n)?;
    check_budget(total, cfg)?;
    let eqs: Vec<EvalPlan> = spec
        .equations
        .iter()
        .map(|f| reduce_mod_p(f, t.p()).plan(t))
        .collect();
    let jac: Vec<Vec<EvalPlan>> = spec
        .equations
        .iter()
        .map(|f| (0..n).map(|j| reduce_mod_p(&f.derivative(j), t.p()).plan(t)).collect())
        .collect();
    let all: Vec<&EvalPlan> = eqs.iter().chain(jac.iter().flatten()).collect();
    let max_deg: Vec<u32> = (0..n)
        .map(|v| all.iter().map(|p| p.max_degrees()[v]).max().unwrap_or(0))
        .collect();
    let rows = eqs.len();
    let chunk = (total / 256).max(1024);
    let chunks = total.div_ceil(chunk);
    let parts: Vec<(u64, u64, Vec<Vec<u32>>)> = cfg.run(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * chunk;
                let len = chunk.min(total - start);
                let mut cache = PowerCache::default();
                let (mut on, mut sing, mut pts) = (0u64, 0u64, Vec::new());
                let mut m = vec![0u32; rows * n];
                for_each_in_range(q, n, start, len, |pt| {
                    cache.load(t, &max_deg, pt);
                    if !eqs.iter().all(|e| e.eval_cached(t, &cache) == 0) {
                        return;
                    }
                    on += 1;
                    for (i, row) in jac.iter().enumerate() {
                        for (j, d) in row.iter().enumerate() {
                            m[i * n + j] = d.eval_cached(t, &cache);
                        }
                    }
                    if rank(t, &mut m, rows, n) < rows {
                        sing += 1;
                        if pts.len() < SINGULAR_POINT_LIMIT {
                            pts.push(pt.to_vec());
                        }
                    }
                });
                (on, sing, pts)
            })
            .collect()
    });
    let mut report = SmoothnessReport {
        field: format!("F_{}", q),
        checked_points: 0,
        singular_count: 0,
        singular_points: Vec::new(),
    };
    for (on, sing, pts) in parts {
        report.checked_points += on;
        report.singular_count += sing;
        for pt in pts {
            if report.singular_points.len() < SINGULAR_POINT_LIMIT {
                report
                    .singular_points
                    .push(pt.iter().map(|&c| t.index_of_code(c) as u64).collect());
            }
        }
    }
    Ok(report)
}

/// Row rank by Gaussian elimination; clobbers `m`.
fn rank(t: &TableField, m: &mut [u32], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        for k in 0..cols {
            m.swap(piv * cols + k, r * cols + k);
        }
        let inv = t.inv(m[r * cols + c]);
        for i in r + 1..rows {
            let f = t.mul(m[i * cols + c], inv);
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let v = t.mul(f, m[r * cols + k]);
                m[i * cols + k] = t.sub(m[i * cols + k], v);
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes;

    fn f(p: u64, r: u32) -> ExtensionField {
        make_extension(p, r).unwrap()
    }

    fn both(spec: &VarietySpec, field: &ExtensionField) -> u64 {
        let fast = count_affine(spec, field, &CountConfig::default()).unwrap().points;
        let slow = count_affine(spec, field, &CountConfig::exhaustive()).unwrap().points;
        assert_eq!(fast, slow, "{} over F_{}", spec.name, field.order().unwrap());
        fast
    }

    #[test]
    fn conifold_over_f5() {
        let q = 5u64;
        // rank <= 1 matrices [[x, z], [w, y]]: 1 + (q^2 - 1)(q + 1)
        let oracle = 1 + (q * q - 1) * (q + 1);
        assert_eq!(oracle, 145);
        assert_eq!(both(&schemes::conifold_singular(), &f(5, 1)), 145);
    }

    #[test]
    fn trivial_affine_counts() {
        let plane = VarietySpec::parse("A2", Ambient::Affine(2), None, &[]).unwrap();
        assert_eq!(both(&plane, &f(3, 1)), 9);
        assert_eq!(both(&schemes::hyperplane(2), &f(7, 1)), 7);
        let empty = VarietySpec::parse("e", Ambient::Affine(1), None, &["1"]).unwrap();
        assert_eq!(both(&empty, &f(7, 1)), 0);
        let all = VarietySpec::parse("z", Ambient::Affine(1), None, &["7*x1"]).unwrap();
        assert_eq!(both(&all, &f(7, 1)), 7);
    }

    #[test]
    fn projective_space_counts() {
        let p2 = schemes::projective_space(2);
        let c = count_projective(&p2, &f(5, 1), &CountConfig::default()).unwrap();
        assert_eq!(c.points, 31);
    }

    /// Brute force over all (x, y) in F_q^2 plus the single point at infinity.
    fn elliptic_oracle(field: &ExtensionField) -> u64 {
        let mut n = 1;
        let elems: Vec<_> = field.enumerate(1 << 20).unwrap().collect();
        for x in &elems {
            let rhs = field
                .add(
                    &field.add(&field.pow(x, 3).unwrap(), x).unwrap(),
                    &field.one(),
                )
                .unwrap();
            for y in &elems {
                if field.mul(y, y).unwrap() == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn elliptic_projective_counts() {
        let e = schemes::elliptic_projective();
        let f5 = f(5, 1);
        assert_eq!(elliptic_oracle(&f5), 9);
        assert_eq!(count_projective(&e, &f5, &CountConfig::default()).unwrap().points, 9);
        let f25 = f(5, 2);
        assert_eq!(elliptic_oracle(&f25), 27);
        // N_2 = p^2 + 1 - (a^2 - 2p), a = -3
        assert_eq!(25 + 1 - (9 - 10), 27);
        assert_eq!(count_projective(&e, &f25, &CountConfig::default()).unwrap().points, 27);
        for field in [f(2, 3), f(3, 2), f(7, 1), f(7, 2)] {
            let c = count_projective(&e, &field, &CountConfig::default()).unwrap().points;
            assert_eq!(c, elliptic_oracle(&field));
            assert_eq!(c, count_projective_orbits(&e, &field, &CountConfig::default()).unwrap());
        }
    }

    #[test]
    fn conifold_small_resolutions() {
        let f5 = f(5, 1);
        for atlas in [schemes::conifold_plus(), schemes::conifold_minus()] {
            let c = count_atlas(&atlas, &f5, &CountConfig::default()).unwrap();
            // |Q \ 0| + |P^1|
            assert_eq!(c.points, (145 - 1) + 6);
            assert_eq!(c.points, 150);
        }
    }

    #[test]
    fn count_sequences() {
        let p1 = Geometry::Variety(schemes::projective_space(1));
        let t = count_sequence(&p1, 3, 3, &CountConfig::default()).unwrap();
        assert_eq!(t.counts, vec![4, 10, 28]);
        let e = Geometry::Variety(schemes::elliptic_projective());
        assert_eq!(count_sequence(&e, 5, 2, &CountConfig::default()).unwrap().counts, vec![9, 27]);
        let x = Geometry::Atlas(schemes::conifold_plus());
        let t = count_sequence(&x, 2, 3, &CountConfig::default()).unwrap();
        let oracle: Vec<u64> = [2u64, 4, 8].iter().map(|q| q * q * q + q * q).collect();
        assert_eq!(t.counts, oracle);
        assert_eq!(t.counts, vec![12, 80, 576]);
    }

    #[test]
    fn truncated_sequence() {
        let e = Geometry::Variety(schemes::elliptic_projective());
        let cfg = CountConfig::default().with_budget(30);
        let t = count_sequence(&e, 5, 3, &cfg).unwrap();
        assert_eq!(t.counts, vec![9, 27]);
        assert_eq!(t.truncated.as_ref().unwrap().r, 3);
        assert!(t.to_columns().contains("# truncated at r = 3"));
    }

    #[test]
    fn budget_refusal_reports_requirement() {
        let q = schemes::conifold_singular();
        let err = count_affine(&q, &f(5, 1), &CountConfig::exhaustive().with_budget(100));
        assert_eq!(
            err,
            Err(Error::Budget {
                required: 625,
                budget: 100
            })
        );
    }

    #[test]
    fn columns_format() {
        let t = CountTable {
            spec_name: "P1".into(),
            p: 3,
            counts: vec![4, 10],
            budget_used: 0,
            truncated: None,
        };
        assert_eq!(t.to_columns(), "# spec: P1\n# p: 3\nr\tq^r\tN_r\n1\t3\t4\n2\t9\t10\n");
    }

    #[test]
    fn smoothness_examples() {
        let e = schemes::elliptic_affine().host;
        let r = smoothness_check(&e, &f(5, 1), &CountConfig::default()).unwrap();
        assert!(r.is_smooth());
        assert_eq!(r.checked_points, 8);

        let r = smoothness_check(&e, &f(31, 1), &CountConfig::default()).unwrap();
        assert!(!r.is_smooth());
        // x^3 + x + 1 = (x - a)^2 (x - b) mod 31; the double root a has
        // 3a^2 + 1 = 0, and the point (a, 0) is singular.
        let pt = &r.singular_points[0];
        let (x, y) = (pt[0], pt[1]);
        assert_eq!(y, 0);
        assert_eq!((x * x * x + x + 1) % 31, 0);
        assert_eq!((3 * x * x + 1) % 31, 0);

        let q = schemes::conifold_singular();
        let r = smoothness_check(&q, &f(5, 1), &CountConfig::default()).unwrap();
        assert_eq!(r.singular_count, 1);
        assert_eq!(r.singular_points, vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn univariate_root_counts_match_brute_force() {
        for (p, r) in [(2, 3), (3, 2), (7, 1)] {
            let ext = f(p, r);
            let t = TableField::new(&ext).unwrap();
            let q = t.order();
            // a few dense polynomials of degrees 1..5
            for seed in 0..40u32 {
                let deg = 1 + (seed % 5) as usize;
                let mut g: Vec<u32> = (0..=deg).map(|i| (seed * 7 + i as u32 * 13) % q).collect();
                if g[deg] == 0 {
                    g[deg] = 1;
                }
                let brute = (0..q)
                    .filter(|&x| {
                        let mut acc = 0;
                        for &c in g.iter().rev() {
                            acc = t.add(t.mul(acc, x), c);
                        }
                        acc == 0
                    })
                    .count() as u64;
                assert_eq!(upoly::count_roots(&t, &g), brute);
            }
        }
    }
}
