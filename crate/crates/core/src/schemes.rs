//! Geometric inputs: affine and projective subschemes over `Z`, glued chart
//! atlases, Gelfand-Leray gauge densities and birational pairs, together
//! with their JSON file format and the built-in gallery.
//!
//! An atlas records its gluing "first chart wins": chart `i` lists, for each
//! earlier chart `j` it meets, one polynomial `g` such that the overlap is
//! `{g != 0}` inside chart `i`. The part of chart `i` not already covered is
//! then the zero locus of all its cuts, so the covering decomposes into
//! disjoint pieces without ever computing intersections.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomials::{IntPolynomial, RationalFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Affine(usize),
    Projective(usize),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::Affine(n) | Ambient::Projective(n) => n,
        }
    }

    /// Number of coordinates (`N + 1` for `P^N`).
    pub fn nvars(&self) -> usize {
        match *self {
            Ambient::Affine(n) => n,
            Ambient::Projective(n) => n + 1,
        }
    }

    fn default_vars(&self) -> Vec<String> {
        match *self {
            Ambient::Affine(n) => (1..=n).map(|i| format!("x{i}")).collect(),
            Ambient::Projective(n) => (0..=n).map(|i| format!("x{i}")).collect(),
        }
    }
}

/// A closed subscheme of affine or projective space over `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpec {
    pub name: String,
    pub ambient: Ambient,
    pub vars: Vec<String>,
    pub equations: Vec<IntPolynomial>,
    /// Dimension supplied by the user; defaults to ambient dimension minus
    /// the number of equations.
    pub expected_dim: Option<usize>,
}

impl VarietySpec {
    /// Parses equation strings over `vars` (or `x1..xn` / `x0..xN` when
    /// `vars` is `None`).
    pub fn parse(
        name: &str,
        ambient: Ambient,
        vars: Option<&[&str]>,
        equations: &[&str],
    ) -> Result<Self> {
        let vars: Vec<String> = match vars {
            Some(v) => v.iter().map(|s| s.to_string()).collect(),
            None => ambient.default_vars(),
        };
        if vars.len() != ambient.nvars() {
            return Err(Error::InvalidSpec(format!(
                "{name}: {} variables for an ambient space with {} coordinates",
                vars.len(),
                ambient.nvars()
            )));
        }
        let equations = equations
            .iter()
            .map(|e| IntPolynomial::parse(e, &vars))
            .collect::<Result<_>>()?;
        Ok(Self {
            name: name.to_string(),
            ambient,
            vars,
            equations,
            expected_dim: None,
        })
    }

    pub fn with_expected_dim(mut self, n: usize) -> Self {
        self.expected_dim = Some(n);
        self
    }

    pub fn dimension(&self) -> usize {
        self.expected_dim
            .unwrap_or_else(|| self.ambient.dim().saturating_sub(self.equations.len()))
    }

    pub fn is_projective(&self) -> bool {
        matches!(self.ambient, Ambient::Projective(_))
    }

    /// The `N + 1` affine strata of `P^N` cut out by "first nonzero
    /// coordinate equals 1": stratum `i` sets `x_0 = .. = x_{i-1} = 0`,
    /// `x_i = 1` and leaves `N - i` free coordinates.
    pub fn affine_strata(&self) -> Result<Vec<VarietySpec>> {
        let Ambient::Projective(n) = self.ambient else {
            return Err(Error::InvalidSpec(format!("{} is not projective", self.name)));
        };
        let (zero, one) = (BigInt::from(0), BigInt::from(1));
        (0..=n)
            .map(|i| {
                let equations = self
                    .equations
                    .iter()
                    .map(|f| {
                        let mut g = f.clone();
                        // drop x_0..x_i; each removal shifts the rest down
                        for _ in 0..i {
                            g = g.substitute(0, &zero);
                        }
                        g.substitute(0, &one)
                    })
                    .collect();
                Ok(VarietySpec {
                    name: format!("{}[stratum {i}]", self.name),
                    ambient: Ambient::Affine(n - i),
                    vars: self.vars[i + 1..].to_vec(),
                    equations,
                    expected_dim: None,
                })
            })
            .collect()
    }
}

/// An earlier-chart overlap: inside this chart, the overlap with chart
/// `chart` is `{poly != 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub chart: usize,
    pub poly: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub vars: Vec<String>,
    pub equations: Vec<IntPolynomial>,
    pub cuts: Vec<Cut>,
}

impl Chart {
    /// `cuts` pairs an earlier chart index with a polynomial string.
    pub fn parse(vars: &[&str], equations: &[&str], cuts: &[(usize, &str)]) -> Result<Self> {
        Ok(Self {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            equations: equations
                .iter()
                .map(|e| IntPolynomial::parse(e, vars))
                .collect::<Result<_>>()?,
            cuts: cuts
                .iter()
                .map(|&(chart, g)| {
                    Ok(Cut {
                        chart,
                        poly: IntPolynomial::parse(g, vars)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }

    /// Equations of the piece this chart contributes to the disjoint
    /// decomposition: its own equations plus every cut.
    pub fn new_part_equations(&self) -> Vec<IntPolynomial> {
        self.equations
            .iter()
            .cloned()
            .chain(self.cuts.iter().map(|c| c.poly.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartAtlas {
    pub name: String,
    pub expected_dim: usize,
    pub charts: Vec<Chart>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMode {
    /// On `{∂f/∂x_i != 0}` the density is `1 / (∂f/∂x_i)` with the other
    /// coordinates as parameters.
    GelfandLeray,
}

/// A gauge form on an affine hypersurface `f = 0`, given by its residue
/// (Gelfand-Leray) expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeDensity {
    pub host: VarietySpec,
    pub mode: DensityMode,
}

impl GaugeDensity {
    pub fn gelfand_leray(host: VarietySpec) -> Result<Self> {
        if host.is_projective() || host.equations.len() != 1 {
            return Err(Error::InvalidSpec(format!(
                "{}: a Gelfand-Leray density needs a single affine equation",
                host.name
            )));
        }
        Ok(Self {
            host,
            mode: DensityMode::GelfandLeray,
        })
    }

    pub fn equation(&self) -> &IntPolynomial {
        &self.host.equations[0]
    }

    pub fn partials(&self) -> Vec<IntPolynomial> {
        let f = self.equation();
        (0..f.nvars()).map(|j| f.derivative(j)).collect()
    }

    /// The chart density `1 / (∂f/∂x_i)`.
    pub fn density_on(&self, i: usize) -> Result<RationalFunction> {
        let f = self.equation();
        RationalFunction::new(IntPolynomial::constant(f.vars(), 1), f.derivative(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    TrivialCanonical,
    CanonicalPreserving,
}

/// One side of a birational pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Geometry {
    Variety(VarietySpec),
    Atlas(ChartAtlas),
}

impl Geometry {
    pub fn name(&self) -> &str {
        match self {
            Geometry::Variety(v) => &v.name,
            Geometry::Atlas(a) => &a.name,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Geometry::Variety(v) => v.dimension(),
            Geometry::Atlas(a) => a.expected_dim,
        }
    }
}

/// Two varieties asserted (not proved) to be birational in the stated way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirationalPairSpec {
    pub name: String,
    pub left: Geometry,
    pub right: Geometry,
    pub claim: Claim,
    pub notes: String,
}

/// Anything a spec file or gallery entry can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spec {
    Variety(VarietySpec),
    Atlas(ChartAtlas),
    Density(GaugeDensity),
    Pair(BirationalPairSpec),
}

impl Spec {
    pub fn name(&self) -> &str {
        match self {
            Spec::Variety(v) => &v.name,
            Spec::Atlas(a) => &a.name,
            Spec::Density(d) => &d.host.name,
            Spec::Pair(p) => &p.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Spec::Variety(v) if v.is_projective() => "projective variety",
            Spec::Variety(_) => "affine variety",
            Spec::Atlas(_) => "chart atlas",
            Spec::Density(_) => "gauge density",
            Spec::Pair(_) => "birational pair",
        }
    }

    /// The countable geometry, if this is not a pair.
    pub fn geometry(&self) -> Option<Geometry> {
        match self {
            Spec::Variety(v) => Some(Geometry::Variety(v.clone())),
            Spec::Density(d) => Some(Geometry::Variety(d.host.clone())),
            Spec::Atlas(a) => Some(Geometry::Atlas(a.clone())),
            Spec::Pair(_) => None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        file.into_spec()
    }

    /// Canonical serialization: fixed field order, canonical polynomial
    /// strings, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let file = SpecFile::from_spec(self);
        let mut s = serde_json::to_string_pretty(&file).expect("serializable");
        s.push('\n');
        s
    }
}

/// Violations found by [`validate_spec`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_spec(spec: &Spec) -> ValidationReport {
    let mut report = ValidationReport {
        name: spec.name().to_string(),
        violations: Vec::new(),
    };
    match spec {
        Spec::Variety(v) => check_variety(v, &mut report.violations),
        Spec::Atlas(a) => check_atlas(a, &mut report.violations),
        Spec::Density(d) => {
            check_variety(&d.host, &mut report.violations);
            if d.host.is_projective() || d.host.equations.len() != 1 {
                report
                    .violations
                    .push("density host must be a single affine equation".into());
            }
        }
        Spec::Pair(p) => {
            for (side, g) in [("left", &p.left), ("right", &p.right)] {
                let mut inner = Vec::new();
                match g {
                    Geometry::Variety(v) => check_variety(v, &mut inner),
                    Geometry::Atlas(a) => check_atlas(a, &mut inner),
                }
                report
                    .violations
                    .extend(inner.into_iter().map(|m| format!("{side}: {m}")));
            }
            if p.left.dimension() != p.right.dimension() {
                report.violations.push(format!(
                    "sides have different dimensions ({} vs {})",
                    p.left.dimension(),
                    p.right.dimension()
                ));
            }
        }
    }
    report
}

fn check_variety(v: &VarietySpec, out: &mut Vec<String>) {
    if v.vars.len() != v.ambient.nvars() {
        out.push(format!(
            "{} variables for {} ambient coordinates",
            v.vars.len(),
            v.ambient.nvars()
        ));
    }
    for (i, f) in v.equations.iter().enumerate() {
        if f.vars() != v.vars.as_slice() {
            out.push(format!("equation {i} uses variables {:?}", f.vars()));
        }
        if v.is_projective() && f.homogeneous_degree().is_none() {
            out.push(format!("equation {i} ({f}) is not homogeneous"));
        }
    }
    if let Some(n) = v.expected_dim {
        if n > v.ambient.dim() {
            out.push(format!(
                "expected dimension {n} exceeds ambient dimension {}",
                v.ambient.dim()
            ));
        }
    }
}

fn check_atlas(a: &ChartAtlas, out: &mut Vec<String>) {
    if a.charts.is_empty() {
        out.push("atlas has no charts".into());
    }
    for (i, c) in a.charts.iter().enumerate() {
        for (k, f) in c.equations.iter().enumerate() {
            if f.vars() != c.vars.as_slice() {
                out.push(format!("chart {i} equation {k} uses variables {:?}", f.vars()));
            }
        }
        for cut in &c.cuts {
            if cut.chart >= i {
                out.push(format!(
                    "chart {i} has a cut against chart {} which is not earlier",
                    cut.chart
                ));
            }
            if cut.poly.vars() != c.vars.as_slice() {
                out.push(format!("chart {i} cut uses variables {:?}", cut.poly.vars()));
            }
        }
        let dim = c.vars.len().saturating_sub(c.equations.len());
        if dim != a.expected_dim {
            out.push(format!(
                "chart {i} has dimension {dim}, atlas expects {}",
                a.expected_dim
            ));
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let amb = match self.ambient {
            Ambient::Affine(n) => format!("A^{n}"),
            Ambient::Projective(n) => format!("P^{n}"),
        };
        let eqs: Vec<String> = self.equations.iter().map(|e| e.to_string()).collect();
        write!(f, "{} in {amb}({}): [{}]", self.name, self.vars.join(","), eqs.join(", "))
    }
}

// ---------------------------------------------------------------------------
// JSON file format

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<AmbientJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    atlas: Option<AtlasJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    density: Option<DensityJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pair: Option<PairJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmbientJson {
    #[serde(rename = "type")]
    kind: String,
    dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtlasJson {
    expected_dim: usize,
    charts: Vec<ChartJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartJson {
    vars: Vec<String>,
    #[serde(default)]
    equations: Vec<String>,
    #[serde(default)]
    cuts: Vec<CutJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CutJson {
    chart: usize,
    poly: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityJson {
    mode: String,
    f: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    left: Box<SpecFile>,
    right: Box<SpecFile>,
    claim: Claim,
    #[serde(default)]
    notes: String,
}

impl SpecFile {
    fn into_spec(self) -> Result<Spec> {
        let name = self.name;
        let present = [
            self.ambient.is_some(),
            self.atlas.is_some(),
            self.pair.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if present != 1 {
            return Err(Error::InvalidSpec(format!(
                "{name}: exactly one of `ambient`, `atlas`, `pair` must be present"
            )));
        }
        if let Some(pair) = self.pair {
            let side = |f: SpecFile| -> Result<Geometry> {
                f.into_spec()?.geometry().ok_or_else(|| {
                    Error::InvalidSpec(format!("{name}: pairs cannot be nested"))
                })
            };
            return Ok(Spec::Pair(BirationalPairSpec {
                name: name.clone(),
                left: side(*pair.left)?,
                right: side(*pair.right)?,
                claim: pair.claim,
                notes: pair.notes,
            }));
        }
        if let Some(atlas) = self.atlas {
            let charts = atlas
                .charts
                .into_iter()
                .map(|c| {
                    let vars: Vec<&str> = c.vars.iter().map(String::as_str).collect();
                    let eqs: Vec<&str> = c.equations.iter().map(String::as_str).collect();
                    let cuts: Vec<(usize, &str)> =
                        c.cuts.iter().map(|k| (k.chart, k.poly.as_str())).collect();
                    Chart::parse(&vars, &eqs, &cuts)
                })
                .collect::<Result<_>>()?;
            return Ok(Spec::Atlas(ChartAtlas {
                name,
                expected_dim: atlas.expected_dim,
                charts,
            }));
        }
        let amb = self.ambient.expect("checked above");
        let ambient = match amb.kind.as_str() {
            "affine" => Ambient::Affine(amb.dim),
            "projective" => Ambient::Projective(amb.dim),
            other => {
                return Err(Error::InvalidSpec(format!(
                    "{name}: unknown ambient type `{other}`"
                )))
            }
        };
        let vars: Option<Vec<&str>> = self
            .vars
            .as_ref()
            .map(|v| v.iter().map(String::as_str).collect());
        let mut equations: Vec<&str> = self.equations.iter().map(String::as_str).collect();
        if let Some(d) = &self.density {
            if equations.is_empty() {
                equations.push(&d.f);
            }
        }
        let mut spec = VarietySpec::parse(&name, ambient, vars.as_deref(), &equations)?;
        spec.expected_dim = self.expected_dim;
        match self.density {
            None => Ok(Spec::Variety(spec)),
            Some(d) => {
                if d.mode != "gelfand-leray" {
                    return Err(Error::InvalidSpec(format!(
                        "{name}: unknown density mode `{}`",
                        d.mode
                    )));
                }
                let f = IntPolynomial::parse(&d.f, &spec.vars)?;
                if spec.equations.len() != 1 || spec.equations[0] != f {
                    return Err(Error::InvalidSpec(format!(
                        "{name}: density polynomial must be the single host equation"
                    )));
                }
                Ok(Spec::Density(GaugeDensity::gelfand_leray(spec)?))
            }
        }
    }

    fn from_variety(v: &VarietySpec) -> Self {
        let (kind, dim) = match v.ambient {
            Ambient::Affine(n) => ("affine", n),
            Ambient::Projective(n) => ("projective", n),
        };
        SpecFile {
            name: v.name.clone(),
            ambient: Some(AmbientJson {
                kind: kind.into(),
                dim,
            }),
            vars: Some(v.vars.clone()),
            equations: v.equations.iter().map(|e| e.to_string()).collect(),
            expected_dim: v.expected_dim,
            atlas: None,
            density: None,
            pair: None,
        }
    }

    fn from_atlas(a: &ChartAtlas) -> Self {
        SpecFile {
            name: a.name.clone(),
            ambient: None,
            vars: None,
            equations: Vec::new(),
            expected_dim: None,
            atlas: Some(AtlasJson {
                expected_dim: a.expected_dim,
                charts: a
                    .charts
                    .iter()
                    .map(|c| ChartJson {
                        vars: c.vars.clone(),
                        equations: c.equations.iter().map(|e| e.to_string()).collect(),
                        cuts: c
                            .cuts
                            .iter()
                            .map(|k| CutJson {
                                chart: k.chart,
                                poly: k.poly.to_string(),
                            })
                            .collect(),
                    })
                    .collect(),
            }),
            density: None,
            pair: None,
        }
    }

    fn from_geometry(g: &Geometry) -> Self {
        match g {
            Geometry::Variety(v) => Self::from_variety(v),
            Geometry::Atlas(a) => Self::from_atlas(a),
        }
    }

    fn from_spec(spec: &Spec) -> Self {
        match spec {
            Spec::Variety(v) => Self::from_variety(v),
            Spec::Atlas(a) => Self::from_atlas(a),
            Spec::Density(d) => {
                let mut f = Self::from_variety(&d.host);
                f.density = Some(DensityJson {
                    mode: "gelfand-leray".into(),
                    f: d.equation().to_string(),
                });
                f
            }
            Spec::Pair(p) => SpecFile {
                name: p.name.clone(),
                ambient: None,
                vars: None,
                equations: Vec::new(),
                expected_dim: None,
                atlas: None,
                density: None,
                pair: Some(PairJson {
                    left: Box::new(Self::from_geometry(&p.left)),
                    right: Box::new(Self::from_geometry(&p.right)),
                    claim: p.claim,
                    notes: p.notes.clone(),
                }),
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Gallery

/// Small resolution `X+` of the conifold `xy = zw`.
///
/// Chart 0 (`a = 1`): free `(z, y, b)` with `x = -zb`, `w = -yb`.
/// Chart 1 (`b = 1`): free `(x, w, a)` with `z = -xa`, `y = -wa`; it meets
/// chart 0 where `a != 0`.
pub fn conifold_plus() -> ChartAtlas {
    ChartAtlas {
        name: "conifold-plus".into(),
        expected_dim: 3,
        charts: vec![
            Chart::parse(&["z", "y", "b"], &[], &[]).expect("static"),
            Chart::parse(&["x", "w", "a"], &[], &[(0, "a")]).expect("static"),
        ],
    }
}

/// [`conifold_plus`] with the charts listed in the opposite order; chart 1
/// (`a = 1`) now meets chart 0 where `b != 0`.
pub fn conifold_plus_reversed() -> ChartAtlas {
    ChartAtlas {
        name: "conifold-plus-reversed".into(),
        expected_dim: 3,
        charts: vec![
            Chart::parse(&["x", "w", "a"], &[], &[]).expect("static"),
            Chart::parse(&["z", "y", "b"], &[], &[(0, "b")]).expect("static"),
        ],
    }
}

/// The flopped small resolution `X-`.
///
/// Chart 0 (`a = 1`): free `(x, w, b)` with `z = xb`, `y = wb`.
/// Chart 1 (`b = 1`): free `(z, y, a)` with `x = za`, `w = ya`; it meets
/// chart 0 where `a != 0`.
pub fn conifold_minus() -> ChartAtlas {
    ChartAtlas {
        name: "conifold-minus".into(),
        expected_dim: 3,
        charts: vec![
            Chart::parse(&["x", "w", "b"], &[], &[]).expect("static"),
            Chart::parse(&["z", "y", "a"], &[], &[(0, "a")]).expect("static"),
        ],
    }
}

pub fn conifold_pair() -> BirationalPairSpec {
    BirationalPairSpec {
        name: "conifold-pair".into(),
        left: Geometry::Atlas(conifold_plus()),
        right: Geometry::Atlas(conifold_minus()),
        claim: Claim::CanonicalPreserving,
        notes: "the two small resolutions of xy = zw, related by the Atiyah flop".into(),
    }
}

pub fn projective_space(n: usize) -> VarietySpec {
    VarietySpec::parse(&format!("P{n}"), Ambient::Projective(n), None, &[]).expect("static")
}

/// `Y^2 Z = X^3 + X Z^2 + Z^3`, the projective closure of
/// `y^2 = x^3 + x + 1`.
pub fn elliptic_projective() -> VarietySpec {
    VarietySpec::parse(
        "elliptic-5191",
        Ambient::Projective(2),
        Some(&["X", "Y", "Z"]),
        &["Y^2*Z - X^3 - X*Z^2 - Z^3"],
    )
    .expect("static")
}

/// The affine chart `y^2 = x^3 + x + 1` with its Gelfand-Leray density.
pub fn elliptic_affine() -> GaugeDensity {
    let host = VarietySpec::parse(
        "elliptic-affine",
        Ambient::Affine(2),
        Some(&["x", "y"]),
        &["y^2 - x^3 - x - 1"],
    )
    .expect("static");
    GaugeDensity::gelfand_leray(host).expect("single affine equation")
}

pub fn conifold_singular() -> VarietySpec {
    VarietySpec::parse(
        "conifold",
        Ambient::Affine(4),
        Some(&["x", "y", "z", "w"]),
        &["x*y - z*w"],
    )
    .expect("static")
}

/// `{x1 = 0}` in `A^n`.
pub fn hyperplane(n: usize) -> VarietySpec {
    VarietySpec::parse(&format!("hyperplane-{n}"), Ambient::Affine(n), None, &["x1"])
        .expect("static")
}

/// Every built-in spec, in a fixed order.
pub fn builtin_gallery() -> Vec<Spec> {
    let mut out: Vec<Spec> = (0..=3).map(|n| Spec::Variety(projective_space(n))).collect();
    out.push(Spec::Variety(elliptic_projective()));
    out.push(Spec::Density(elliptic_affine()));
    out.push(Spec::Variety(conifold_singular()));
    out.push(Spec::Atlas(conifold_plus()));
    out.push(Spec::Atlas(conifold_minus()));
    out.push(Spec::Atlas(conifold_plus_reversed()));
    out.push(Spec::Pair(conifold_pair()));
    for n in 1..=6 {
        let case = crate::mckay::an_case(n).expect("n within range");
        out.push(Spec::Atlas(case.resolution));
        out.push(Spec::Variety(case.singular_model));
    }
    for n in 1..=3 {
        out.push(Spec::Variety(hyperplane(n)));
    }
    out
}

/// Looks up a gallery entry by name (an optional `gallery:` prefix is
/// accepted).
pub fn gallery_entry(name: &str) -> Result<Spec> {
    let key = name.strip_prefix("gallery:").unwrap_or(name);
    builtin_gallery()
        .into_iter()
        .find(|s| s.name() == key)
        .ok_or_else(|| Error::UnknownGallery(key.to_string()))
}
