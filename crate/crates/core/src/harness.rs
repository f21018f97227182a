//! Command-line front end. Every verb is a thin wrapper around one library
//! call and produces a [`RunReport`]: readable text followed by a JSON
//! block holding the library result verbatim.
//!
//! Exit codes: 0 pass, 1 verdict fail, 2 input error, 3 budget refusal.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting::{count_geometry, count_sequence, CountConfig, Strategy, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::fields::make_extension;
use crate::mckay::mckay_check;
use crate::padic::{
    canonical_measure, tube_measure, weil_measure, PadicContext, DEFAULT_MAX_PRECISION,
};
use crate::schemes::{
    builtin_gallery, gallery_entry, validate_spec, Ambient, BirationalPairSpec, Claim,
    GaugeDensity, Geometry, Spec,
};
use crate::zeta::{
    auto_reconstruct, compare_zeta, euler_from_zeta, pade_reconstruct, weight_split, zeta_series,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Line separating the text part of a report from its JSON block.
pub const JSON_MARKER: &str = "--- json ---";

#[derive(Debug, Parser)]
#[command(name = "zetaforge", version, about = "Point counts, zeta functions and p-adic measures")]
struct Cli {
    /// Print only the JSON block.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Engine {
    /// Evaluation budget.
    #[arg(long, env = "ZETAFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Enumerate every point instead of specializing the last variable.
    #[arg(long)]
    exhaustive: bool,
}

impl Engine {
    fn config(&self) -> CountConfig {
        CountConfig {
            budget: self.budget,
            workers: self.workers,
            strategy: if self.exhaustive {
                Strategy::Exhaustive
            } else {
                Strategy::Auto
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weil,
    Canonical,
    Tube,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count points over F_{p^r} for r = 1..=rmax.
    Count {
        /// `gallery:NAME` or a JSON spec file.
        spec: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        rmax: u32,
        #[command(flatten)]
        engine: Engine,
    },
    /// Reconstruct the zeta function and split it by weight.
    Zeta {
        spec: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        rmax: u32,
        #[arg(long, requires = "deg_den")]
        deg_num: Option<usize>,
        #[arg(long, requires = "deg_num")]
        deg_den: Option<usize>,
        /// Search for the smallest degrees (the default without --deg-*).
        #[arg(long, conflicts_with_all = ["deg_num", "deg_den"])]
        auto: bool,
        #[command(flatten)]
        engine: Engine,
    },
    /// Compare the two sides of a pair (or two specs) prime by prime.
    Compare {
        spec: String,
        /// Second spec; the first is then the left side of an ad hoc pair.
        right: Option<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [5u64])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        rmax: u32,
        #[command(flatten)]
        engine: Engine,
    },
    /// Exact p-adic measures.
    Measure {
        spec: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Mode::Weil)]
        mode: Mode,
        /// Tube levels: `3`, `1,2,4` or `1..4` (default: k).
        #[arg(long)]
        m: Option<String>,
        #[arg(long, env = "ZETAFORGE_MAX_PRECISION", default_value_t = DEFAULT_MAX_PRECISION)]
        max_precision: u32,
        #[command(flatten)]
        engine: Engine,
    },
    /// Cyclic McKay check for the A_n singularity.
    Mckay {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [5u64, 7, 11, 13])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        rmax: u32,
        #[command(flatten)]
        engine: Engine,
    },
    /// List the built-in specs, or print one as JSON.
    Gallery { name: Option<String> },
    /// Check a spec for structural problems.
    Validate { spec: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    /// The operation and inputs the verdict rests on.
    pub basis: String,
}

/// What one command produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdict: Verdict,
    pub budget_used: u64,
    pub budget_refused: bool,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.budget_refused {
            EXIT_BUDGET
        } else if self.verdict.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    /// The JSON block: stable key order, two-space indent, newline.
    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let mut s = self.text.clone();
        let _ = writeln!(
            s,
            "verdict: {} ({})",
            if self.verdict.pass { "PASS" } else { "FAIL" },
            self.verdict.basis
        );
        let _ = writeln!(s, "budget used: {} evaluations", self.budget_used);
        let _ = writeln!(s, "elapsed: {} ms", self.elapsed_ms);
        s.push_str(JSON_MARKER);
        s.push('\n');
        s.push_str(&self.json());
        s
    }
}

/// Parses the JSON block out of rendered output.
pub fn json_block(output: &str) -> Option<Value> {
    let start = output.find(JSON_MARKER).map(|i| i + JSON_MARKER.len()).unwrap_or(0);
    serde_json::from_str(&output[start..]).ok()
}

/// Captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis();
            let stdout = if cli.json { report.json() } else { report.render() };
            Outcome {
                stdout,
                stderr: String::new(),
                code: report.exit_code(),
            }
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: if e.is_budget() { EXIT_BUDGET } else { EXIT_INPUT },
        },
    }
}

/// Resolves `gallery:NAME`, a file path, or a bare gallery name.
pub fn load_spec(arg: &str) -> Result<Spec> {
    if arg.starts_with("gallery:") {
        return gallery_entry(arg);
    }
    match std::fs::read_to_string(arg) {
        Ok(text) => Spec::from_json(&text),
        Err(e) => gallery_entry(arg).map_err(|_| Error::Io(format!("{arg}: {e}"))),
    }
}

fn geometry_of(spec: &Spec) -> Result<Geometry> {
    spec.geometry()
        .ok_or_else(|| Error::InvalidSpec(format!("{} is a pair; use `compare`", spec.name())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn report(command: &str, inputs: Value, results: Value, verdict: Verdict, budget_used: u64, text: String) -> RunReport {
    RunReport {
        command: command.into(),
        inputs,
        results,
        verdict,
        budget_used,
        budget_refused: false,
        text,
        elapsed_ms: 0,
    }
}

fn execute(cmd: &Command) -> Result<RunReport> {
    match cmd {
        Command::Count { spec, p, rmax, engine } => cmd_count(spec, *p, *rmax, &engine.config()),
        Command::Zeta {
            spec,
            p,
            rmax,
            deg_num,
            deg_den,
            auto: _,
            engine,
        } => cmd_zeta(spec, *p, *rmax, deg_num.zip(*deg_den), &engine.config()),
        Command::Compare {
            spec,
            right,
            primes,
            rmax,
            engine,
        } => cmd_compare(spec, right.as_deref(), primes, *rmax, &engine.config()),
        Command::Measure {
            spec,
            p,
            k,
            mode,
            m,
            max_precision,
            engine,
        } => cmd_measure(spec, *p, *k, *mode, m.as_deref(), *max_precision, &engine.config()),
        Command::Mckay {
            n,
            primes,
            rmax,
            engine,
        } => cmd_mckay(*n, primes, *rmax, &engine.config()),
        Command::Gallery { name } => cmd_gallery(name.as_deref()),
        Command::Validate { spec } => cmd_validate(spec),
    }
}

fn cmd_count(spec_arg: &str, p: u64, rmax: u32, cfg: &CountConfig) -> Result<RunReport> {
    let spec = load_spec(spec_arg)?;
    let g = geometry_of(&spec)?;
    let table = count_sequence(&g, p, rmax, cfg)?;
    let mut text = table.to_columns();
    let _ = writeln!(text);
    let mut r = report(
        "count",
        json!({"spec": spec_arg, "p": p, "rmax": rmax}),
        to_value(&table),
        Verdict {
            pass: table.is_complete(),
            basis: format!("count_sequence({}, p = {p}, r <= {rmax})", g.name()),
        },
        table.budget_used,
        text,
    );
    r.budget_refused = !table.is_complete();
    Ok(r)
}

fn cmd_zeta(
    spec_arg: &str,
    p: u64,
    rmax: u32,
    degrees: Option<(usize, usize)>,
    cfg: &CountConfig,
) -> Result<RunReport> {
    let spec = load_spec(spec_arg)?;
    let g = geometry_of(&spec)?;
    let table = count_sequence(&g, p, rmax, cfg)?;
    let inputs = json!({
        "spec": spec_arg,
        "p": p,
        "rmax": rmax,
        "degrees": degrees.map(|(a, b)| json!([a, b])).unwrap_or(json!("auto")),
    });
    let mut text = String::new();
    let _ = writeln!(text, "spec: {}", g.name());
    let _ = writeln!(text, "p: {p}");
    let _ = writeln!(text, "counts: {:?}", table.counts);
    if let Some(t) = &table.truncated {
        let _ = writeln!(text, "truncated at r = {}: {}", t.r, t.reason);
        let mut r = report(
            "zeta",
            inputs,
            json!({"table": to_value(&table)}),
            Verdict {
                pass: false,
                basis: format!("count_sequence({}, p = {p}) refused by budget", g.name()),
            },
            table.budget_used,
            text,
        );
        r.budget_refused = true;
        return Ok(r);
    }
    let series = zeta_series(&table, table.counts.len())?;
    let rec = match degrees {
        Some((a, b)) => pade_reconstruct(&series, a, b),
        None => auto_reconstruct(&series),
    };
    let z = match rec {
        Ok(z) => z,
        Err(e) => {
            let _ = writeln!(text, "reconstruction failed: {e}");
            return Ok(report(
                "zeta",
                inputs,
                json!({"table": to_value(&table), "series": to_value(&series), "error": e.to_string()}),
                Verdict {
                    pass: false,
                    basis: format!("pade_reconstruct on {} counts at p = {p}", table.counts.len()),
                },
                table.budget_used,
                text,
            ));
        }
    };
    let _ = writeln!(text, "Z(t) = {z}");
    let _ = writeln!(text, "euler (deg den - deg num): {}", euler_from_zeta(&z));
    let proper = matches!(&g, Geometry::Variety(v) if v.is_projective());
    let mut results = json!({
        "table": to_value(&table),
        "series": to_value(&series),
        "zeta": to_value(&z),
        "euler_from_zeta": euler_from_zeta(&z),
    });
    let verdict;
    if proper {
        match weight_split(&z, p, g.dimension()) {
            Ok(w) => {
                text.push_str(&w.to_canonical_text());
                let mut checks = Vec::new();
                if w.dim >= 1 {
                    let p1 = w.factor(1);
                    if p1.degree() == 2 {
                        let product = p1.coeff(2);
                        let trace = -p1.coeff(1);
                        let hasse = &trace * &trace <= BigInt::from(4 * p);
                        let _ = writeln!(
                            text,
                            "P_1: root product {product} (q = {p}), trace^2 = {} <= 4q = {}: {hasse}",
                            &trace * &trace,
                            4 * p
                        );
                        checks.push(json!({
                            "root_product": product.to_string(),
                            "trace": trace.to_string(),
                            "hasse": hasse,
                            "product_is_q": product == BigInt::from(p),
                        }));
                    }
                }
                let consistent = w.euler == euler_from_zeta(&z);
                let checks_ok = checks
                    .iter()
                    .all(|c| c["hasse"] == json!(true) && c["product_is_q"] == json!(true));
                results["weight_split"] = to_value(&w);
                results["checks"] = Value::Array(checks);
                verdict = Verdict {
                    pass: consistent && checks_ok,
                    basis: format!(
                        "weight_split of the reconstructed zeta of {} at q = {p}, dimension {}",
                        g.name(),
                        g.dimension()
                    ),
                };
            }
            Err(e) => {
                let _ = writeln!(text, "weight split failed: {e}");
                results["weight_split_error"] = json!(e.to_string());
                verdict = Verdict {
                    pass: false,
                    basis: format!("weight_split of the reconstructed zeta of {} at q = {p}", g.name()),
                };
            }
        }
    } else {
        let _ = writeln!(text, "not projective: no weight split (purity is not claimed)");
        verdict = Verdict {
            pass: true,
            basis: format!("pade_reconstruct of {} at p = {p}", g.name()),
        };
    }
    Ok(report("zeta", inputs, results, verdict, table.budget_used, text))
}

fn cmd_compare(
    spec_arg: &str,
    right: Option<&str>,
    primes: &[u64],
    rmax: u32,
    cfg: &CountConfig,
) -> Result<RunReport> {
    let pair = match right {
        None => match load_spec(spec_arg)? {
            Spec::Pair(p) => p,
            other => {
                return Err(Error::InvalidSpec(format!(
                    "{} is not a pair; pass two specs to compare them",
                    other.name()
                )))
            }
        },
        Some(r) => {
            let left = geometry_of(&load_spec(spec_arg)?)?;
            let right = geometry_of(&load_spec(r)?)?;
            BirationalPairSpec {
                name: format!("{} vs {}", left.name(), right.name()),
                left,
                right,
                claim: Claim::TrivialCanonical,
                notes: "ad hoc pair from the command line".into(),
            }
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "pair: {} ({} vs {})", pair.name, pair.left.name(), pair.right.name());
    let mut reports = Vec::new();
    let mut budget = 0;
    let mut refused = false;
    for &p in primes {
        let r = compare_zeta(&pair, p, rmax, cfg)?;
        budget += r.left.budget_used + r.right.budget_used;
        refused |= !r.left.is_complete() || !r.right.is_complete();
        let _ = writeln!(text, "p = {p} [{}]", if r.pass { "equal" } else { "differ" });
        let _ = writeln!(text, "  {}: {:?}", r.left.spec_name, r.left.counts);
        let _ = writeln!(text, "  {}: {:?}", r.right.spec_name, r.right.counts);
        if let Some(m) = &r.first_mismatch {
            let _ = writeln!(text, "  first mismatch at r = {}: {} vs {}", m.r, m.left, m.right);
        }
        if let Some(z) = &r.zeta {
            let _ = writeln!(text, "  zeta: {} | {} ({})", z.left, z.right, if z.equal { "equal" } else { "differ" });
        }
        if let Some(b) = &r.betti {
            let _ = writeln!(text, "  betti: {:?} | {:?}", b.left, b.right);
        }
        for n in &r.notes {
            let _ = writeln!(text, "  note: {n}");
        }
        reports.push(r);
    }
    let pass = !reports.is_empty() && reports.iter().all(|r| r.pass);
    let primes_s: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
    let mut r = report(
        "compare",
        json!({"spec": spec_arg, "right": right, "primes": primes, "rmax": rmax}),
        to_value(&reports),
        Verdict {
            pass,
            basis: format!("compare_zeta({}, p in {{{}}}, r <= {rmax})", pair.name, primes_s.join(", ")),
        },
        budget,
        text,
    );
    r.budget_refused = refused;
    Ok(r)
}

/// `3`, `1,2,4` or `1..4`.
fn parse_levels(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidSpec(format!("cannot read tube levels `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a == 0 || b < a {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| bad()).and_then(|v| if v == 0 { Err(bad()) } else { Ok(v) }))
        .collect()
}

fn ratio_string(r: &BigRational) -> String {
    r.to_string()
}

#[allow(clippy::too_many_arguments)]
fn cmd_measure(
    spec_arg: &str,
    p: u64,
    k: u32,
    mode: Mode,
    m: Option<&str>,
    max_precision: u32,
    cfg: &CountConfig,
) -> Result<RunReport> {
    let spec = load_spec(spec_arg)?;
    let mut text = String::new();
    let _ = writeln!(text, "spec: {}", spec.name());
    match mode {
        Mode::Weil => {
            let density = match &spec {
                Spec::Density(d) => d.clone(),
                Spec::Variety(v) => GaugeDensity::gelfand_leray(v.clone())?,
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "weil measure needs an affine hypersurface, {} is a {}",
                        other.name(),
                        other.kind()
                    )))
                }
            };
            let ctx = PadicContext::with_cap(p, k, max_precision)?.with_budget(cfg.budget);
            let res = weil_measure(&density, &ctx)?;
            let host = Geometry::Variety(density.host.clone());
            let count = count_geometry(&host, &make_extension(p, 1)?, cfg)?;
            let d = host.dimension() as u32;
            let expected = BigRational::new(BigInt::from(count.points), BigInt::from(p).pow(d));
            let _ = writeln!(text, "weil measure at p = {p}, k = {k}: {}", res.value);
            let _ = writeln!(text, "stabilized at k + 1: {}", res.stabilized);
            let _ = writeln!(text, "residue disks: {}", res.disk_count);
            let _ = writeln!(text, "|X(F_{p})| / p^{d} = {} / {} = {expected}", count.points, BigInt::from(p).pow(d));
            let pass = res.stabilized && res.value == expected;
            Ok(report(
                "measure",
                json!({"spec": spec_arg, "p": p, "k": k, "mode": "weil"}),
                json!({"measure": to_value(&res), "affine_count": count.points, "count_over_p_dim": ratio_string(&expected)}),
                Verdict {
                    pass,
                    basis: format!("weil_measure({}, p = {p}, k = {k}) against the F_{p} count", spec.name()),
                },
                count.evaluations,
                text,
            ))
        }
        Mode::Canonical => {
            let Spec::Atlas(atlas) = &spec else {
                return Err(Error::InvalidSpec(format!(
                    "canonical measure needs a chart atlas, {} is a {}",
                    spec.name(),
                    spec.kind()
                )));
            };
            let ctx = PadicContext::with_cap(p, k, max_precision)?.with_budget(cfg.budget);
            let res = canonical_measure(atlas, &ctx)?;
            let g = Geometry::Atlas(atlas.clone());
            let count = count_geometry(&g, &make_extension(p, 1)?, cfg)?;
            let d = atlas.expected_dim as u32;
            let expected = BigRational::new(BigInt::from(count.points), BigInt::from(p).pow(d));
            let _ = writeln!(text, "canonical measure at p = {p}, k = {k}: {}", res.value);
            let _ = writeln!(text, "stabilized at k + 1: {}", res.stabilized);
            let _ = writeln!(text, "residue disks: {}", res.disk_count);
            let _ = writeln!(text, "|X(F_{p})| / p^{d} = {expected}");
            let pass = res.stabilized && res.value == expected;
            Ok(report(
                "measure",
                json!({"spec": spec_arg, "p": p, "k": k, "mode": "canonical"}),
                json!({"measure": to_value(&res), "atlas_count": count.points, "count_over_p_dim": ratio_string(&expected)}),
                Verdict {
                    pass,
                    basis: format!("canonical_measure({}, p = {p}, k = {k}) against the F_{p} count", spec.name()),
                },
                count.evaluations,
                text,
            ))
        }
        Mode::Tube => {
            let sub = match &spec {
                Spec::Variety(v) if matches!(v.ambient, Ambient::Affine(_)) => v.clone(),
                Spec::Density(d) => d.host.clone(),
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "tube measure needs an affine variety, {} is a {}",
                        other.name(),
                        other.kind()
                    )))
                }
            };
            let levels = match m {
                Some(s) => parse_levels(s)?,
                None => vec![k],
            };
            let mut values = Vec::new();
            for &level in &levels {
                let v = tube_measure(&sub, p, level, max_precision)?;
                let _ = writeln!(text, "tube m = {level}: {v}");
                values.push(v);
            }
            let decreasing = values.windows(2).all(|w| w[1] <= w[0]);
            Ok(report(
                "measure",
                json!({"spec": spec_arg, "p": p, "mode": "tube", "m": levels}),
                json!({
                    "tubes": levels.iter().zip(&values).map(|(m, v)| json!({"m": m, "value": ratio_string(v)})).collect::<Vec<_>>(),
                }),
                Verdict {
                    pass: decreasing,
                    basis: format!("tube_measure({}, p = {p}) is non-increasing in m", sub.name),
                },
                0,
                text,
            ))
        }
    }
}

fn cmd_mckay(n: usize, primes: &[u64], rmax: u32, cfg: &CountConfig) -> Result<RunReport> {
    let r = mckay_check(n, primes, rmax, cfg)?;
    let mut text = String::new();
    let _ = writeln!(text, "A_{n}: G = Z/{}", r.group_order);
    let _ = writeln!(text, "p\treduction\tN_r (resolution)\tN_r (singular)");
    for row in &r.rows {
        let red = match row.reduction {
            crate::mckay::Reduction::Good => "good",
            crate::mckay::Reduction::Bad => "bad",
        };
        let _ = writeln!(text, "{}\t{red}\t{:?}\t{:?}", row.p, row.counts, row.singular_counts);
        if let Some(d) = &row.diagnostic {
            let _ = writeln!(text, "  {d}");
        }
    }
    match (&r.fitted, &r.fit_error) {
        (Some(c), _) => {
            let _ = writeln!(text, "fitted C(q) = {c} (expected {})", r.expected);
        }
        (None, Some(e)) => {
            let _ = writeln!(text, "fit failed: {e}");
        }
        _ => {}
    }
    match r.c_at_one {
        Some(c) => {
            let _ = writeln!(text, "C(1) = {c}, conjugacy classes = {}", r.conjugacy_classes);
        }
        None => {
            let _ = writeln!(text, "C(1) unavailable, conjugacy classes = {}", r.conjugacy_classes);
        }
    }
    for note in &r.notes {
        let _ = writeln!(text, "note: {note}");
    }
    let primes_s: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
    Ok(report(
        "mckay",
        json!({"n": n, "primes": primes, "rmax": rmax}),
        to_value(&r),
        Verdict {
            pass: r.pass,
            basis: format!(
                "mckay_check(n = {n}, p in {{{}}}, r <= {rmax}): C(q) = {} and C(1) = {}",
                primes_s.join(", "),
                r.expected,
                r.conjugacy_classes
            ),
        },
        0,
        text,
    ))
}

fn cmd_gallery(name: Option<&str>) -> Result<RunReport> {
    match name {
        None => {
            let mut text = String::new();
            let mut list = Vec::new();
            for s in builtin_gallery() {
                let _ = writeln!(text, "{}\t{}", s.name(), s.kind());
                list.push(json!({"name": s.name(), "kind": s.kind()}));
            }
            Ok(report(
                "gallery",
                json!({}),
                Value::Array(list),
                Verdict {
                    pass: true,
                    basis: "builtin_gallery()".into(),
                },
                0,
                text,
            ))
        }
        Some(n) => {
            let spec = gallery_entry(n)?;
            let text = spec.to_json();
            let value: Value = serde_json::from_str(&text).expect("spec JSON");
            Ok(report(
                "gallery",
                json!({"name": n}),
                value,
                Verdict {
                    pass: true,
                    basis: format!("gallery_entry({n})"),
                },
                0,
                text,
            ))
        }
    }
}

fn cmd_validate(spec_arg: &str) -> Result<RunReport> {
    let spec = load_spec(spec_arg)?;
    let v = validate_spec(&spec);
    let mut text = format!("{} ({})\n", spec.name(), spec.kind());
    if v.is_valid() {
        text.push_str("no violations\n");
    }
    for violation in &v.violations {
        let _ = writeln!(text, "violation: {violation}");
    }
    Ok(report(
        "validate",
        json!({"spec": spec_arg}),
        to_value(&v),
        Verdict {
            pass: v.is_valid(),
            basis: format!("validate_spec({})", spec.name()),
        },
        0,
        text,
    ))
}
