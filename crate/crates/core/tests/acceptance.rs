//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails or runs over its time limit.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use zetaforge::counting::{
    count_affine, count_atlas, count_projective_orbits, count_sequence, CountConfig,
};
use zetaforge::fields::make_extension;
use zetaforge::harness::{json_block, run};
use zetaforge::mckay::{is_bad_prime, mckay_check};
use zetaforge::padic::{canonical_measure, tube_measure, weil_measure, PadicContext};
use zetaforge::schemes::{self, builtin_gallery, Geometry, Spec};
use zetaforge::zeta::{
    auto_reconstruct, euler_from_zeta, pade_reconstruct, weight_split, zeta_series,
    CountPolynomial, ZPoly, ZetaFunction, ZetaSeries, GUARD,
};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn brute(cfg: &CountConfig) -> CountConfig {
    CountConfig {
        strategy: zetaforge::counting::Strategy::Exhaustive,
        ..*cfg
    }
}

fn criterion_1() -> Check {
    let cfg = CountConfig::default();
    let d = schemes::elliptic_affine();
    for (p, ks) in [(5u64, &[1u32, 2][..]), (7, &[1]), (11, &[1]), (13, &[1])] {
        let n = count_affine(&d.host, &make_extension(p, 1).unwrap(), &brute(&cfg))
            .map_err(|e| e.to_string())?
            .points;
        if p == 5 {
            ensure(n == 8, || format!("|X(F_5)| affine = {n}, expected 8"))?;
        }
        for &k in ks {
            let r = weil_measure(&d, &PadicContext::new(p, k).unwrap()).map_err(|e| e.to_string())?;
            ensure(r.value == ratio(n, p), || {
                format!("p = {p}, k = {k}: measure {} != {n}/{p}", r.value)
            })?;
            ensure(r.stabilized, || format!("p = {p}, k = {k}: not stabilized"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    let cfg = CountConfig::default();
    let a1 = zetaforge::mckay::an_case(1).unwrap().resolution;
    let cases = [(a1, 5u64, ratio(6, 5)), (schemes::conifold_plus(), 3, ratio(4, 3))];
    for (atlas, p, expected) in cases {
        let m = canonical_measure(&atlas, &PadicContext::new(p, 1).unwrap())
            .map_err(|e| e.to_string())?;
        let n = count_atlas(&atlas, &make_extension(p, 1).unwrap(), &cfg)
            .map_err(|e| e.to_string())?
            .points;
        let by_count = ratio(n, p.pow(atlas.expected_dim as u32));
        ensure(m.value == expected && by_count == expected, || {
            format!("{} at p = {p}: measure {}, count/p^d {by_count}, expected {expected}", atlas.name, m.value)
        })?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let h = schemes::hyperplane(2);
    for m in 1..=4u32 {
        let v = tube_measure(&h, 5, m, 8).map_err(|e| e.to_string())?;
        ensure(v == ratio(1, 5u64.pow(m)), || format!("hyperplane tube m = {m}: {v}"))?;
    }
    let e = schemes::elliptic_affine().host;
    let tubes: Vec<BigRational> = (1..=3)
        .map(|m| tube_measure(&e, 5, m, 8))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for w in tubes.windows(2) {
        ensure(&w[1] / &w[0] == ratio(1, 5), || format!("elliptic tube ratio {} / {}", w[1], w[0]))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let cfg = CountConfig::default();
    let e = Geometry::Variety(schemes::elliptic_projective());
    let table = count_sequence(&e, 5, 6, &cfg).map_err(|e| e.to_string())?;
    ensure(table.is_complete(), || "elliptic table truncated".into())?;
    let s = zeta_series(&table, 6).map_err(|e| e.to_string())?;
    let expected = ZetaFunction {
        p: 5,
        numerator: ZPoly::from_i64s(&[1, 3, 5]),
        denominator: ZPoly::from_i64s(&[1, -6, 5]),
    };
    let z = pade_reconstruct(&s, 2, 2).map_err(|e| e.to_string())?;
    ensure(z == expected, || format!("(2,2) reconstruction gave {z}"))?;
    let za = auto_reconstruct(&s).map_err(|e| e.to_string())?;
    ensure(za == expected, || format!("auto reconstruction gave {za}"))?;
    let w = weight_split(&z, 5, 1).map_err(|e| e.to_string())?;
    ensure(w.betti == vec![1, 2, 1], || format!("betti {:?}", w.betti))?;
    ensure(w.euler == 0 && euler_from_zeta(&z) == 0, || "euler != 0".into())?;
    let p1 = w.factor(1);
    ensure(p1.coeff(2) == BigInt::from(5), || format!("root product {}", p1.coeff(2)))?;
    let trace = -p1.coeff(1);
    ensure(&trace * &trace == BigInt::from(9), || format!("trace {trace}"))?;
    ensure(&trace * &trace <= BigInt::from(20), || "Hasse bound violated".into())?;
    for n in 1..=3usize {
        let g = Geometry::Variety(schemes::projective_space(n));
        let r = (n + 1 + GUARD) as u32;
        let t = count_sequence(&g, 5, r, &cfg).map_err(|e| e.to_string())?;
        let z = auto_reconstruct(&zeta_series(&t, r as usize).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let w = weight_split(&z, 5, n).map_err(|e| e.to_string())?;
        let want: Vec<usize> = (0..=2 * n).map(|i| usize::from(i % 2 == 0)).collect();
        ensure(w.betti == want, || format!("P^{n}: betti {:?}", w.betti))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let cfg = CountConfig::default();
    let plus = Geometry::Atlas(schemes::conifold_plus());
    let minus = Geometry::Atlas(schemes::conifold_minus());
    for p in [2u64, 3, 5] {
        let a = count_sequence(&plus, p, 3, &cfg).map_err(|e| e.to_string())?;
        let b = count_sequence(&minus, p, 3, &cfg).map_err(|e| e.to_string())?;
        let oracle: Vec<u64> = (1..=3).map(|r| p.pow(r)).map(|q| q * q * q + q * q).collect();
        ensure(a.counts == b.counts && a.counts == oracle, || {
            format!("p = {p}: {:?} vs {:?}, oracle {oracle:?}", a.counts, b.counts)
        })?;
    }
    for (p, k) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let ctx = PadicContext::new(p, k).unwrap();
        let a = canonical_measure(&schemes::conifold_plus(), &ctx).map_err(|e| e.to_string())?;
        let b = canonical_measure(&schemes::conifold_minus(), &ctx).map_err(|e| e.to_string())?;
        let want = ratio(p * p * p + p * p, p * p * p);
        ensure(a.value == b.value && a.value == want, || {
            format!("(p, k) = ({p}, {k}): {} vs {}", a.value, b.value)
        })?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let cfg = CountConfig::default();
    for n in [1usize, 2, 4] {
        let primes: Vec<u64> = [5u64, 7, 11, 13].into_iter().filter(|&p| !is_bad_prime(n, p)).collect();
        let r = mckay_check(n, &primes, 2, &cfg).map_err(|e| e.to_string())?;
        let want = CountPolynomial::from_i64s(&[0, n as i64, 1]);
        ensure(r.fitted.as_ref() == Some(&want), || {
            format!("n = {n}: fitted {:?} ({:?})", r.fitted.as_ref().map(|c| c.to_string()), r.fit_error)
        })?;
        ensure(r.c_at_one == Some(n as i64 + 1) && r.conjugacy_classes == n + 1, || {
            format!("n = {n}: C(1) = {:?}", r.c_at_one)
        })?;
        ensure(r.pass, || format!("n = {n}: verdict fail"))?;
    }
    Ok(())
}

fn gcd_degree(a: &ZPoly, b: &ZPoly) -> usize {
    let q = |p: &ZPoly| -> Vec<BigRational> {
        p.coeffs().iter().cloned().map(BigRational::from_integer).collect()
    };
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(|c| *c == BigRational::from_integer(0.into())) {
            v.pop();
        }
    };
    let (mut a, mut b) = (q(a), q(b));
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let f = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = &a[i + shift] - &f * c;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn random_rational_function() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    let poly = |max| {
        (0..=max).prop_flat_map(|d: usize| {
            (prop::collection::vec(-6i64..=6, d), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]))
                .prop_map(move |(mut c, top)| {
                    c.insert(0, 1);
                    if d > 0 {
                        *c.last_mut().unwrap() = top;
                    }
                    c
                })
        })
    };
    (poly(4usize), poly(4usize))
}

fn criterion_7() -> Check {
    // Padé round trip on 50 random rational functions
    let mut runner = TestRunner::deterministic();
    let strat = random_rational_function();
    let mut done = 0;
    let mut draws = 0;
    while done < 50 {
        draws += 1;
        ensure(draws < 10_000, || "could not draw 50 coprime pairs".into())?;
        let (num, den) = strat.new_tree(&mut runner).unwrap().current();
        let z = ZetaFunction {
            p: 5,
            numerator: ZPoly::from_i64s(&num),
            denominator: ZPoly::from_i64s(&den),
        };
        if gcd_degree(&z.numerator, &z.denominator) > 0 {
            continue;
        }
        let (m, n) = (z.numerator.degree(), z.denominator.degree());
        let order = m + n + GUARD;
        let series = ZetaSeries {
            p: 5,
            coefficients: z.expand(order),
            order,
        };
        let back = pade_reconstruct(&series, m, n).map_err(|e| format!("{z}: {e}"))?;
        ensure(back == z, || format!("{z} came back as {back}"))?;
        done += 1;
    }
    // projective count equals the stratified affine sum and the orbit count
    let cfg = CountConfig::default();
    for spec in builtin_gallery() {
        let Spec::Variety(v) = spec else { continue };
        if !v.is_projective() {
            continue;
        }
        for (p, r) in [(2u64, 1u32), (2, 2), (3, 1), (5, 1)] {
            let f = make_extension(p, r).unwrap();
            let strata: u64 = v
                .affine_strata()
                .unwrap()
                .iter()
                .map(|s| count_affine(s, &f, &cfg).unwrap().points)
                .sum();
            let orbits = count_projective_orbits(&v, &f, &cfg).map_err(|e| e.to_string())?;
            ensure(strata == orbits, || {
                format!("{} over F_{p}^{r}: strata {strata}, orbits {orbits}", v.name)
            })?;
        }
    }
    // bit-exact reports under varying worker counts
    let commands: [&[&str]; 4] = [
        &["count", "gallery:conifold", "--p", "5", "--rmax", "2"],
        &["zeta", "gallery:elliptic-5191", "--p", "5", "--rmax", "6"],
        &["compare", "gallery:conifold-pair", "--primes", "2,3", "--rmax", "2"],
        &["measure", "gallery:conifold-plus", "--p", "3", "--k", "1", "--mode", "canonical"],
    ];
    for cmd in commands {
        let mut outputs = Vec::new();
        for w in ["1", "2", "3", "8"] {
            let mut args = vec!["zetaforge", "--json"];
            args.extend_from_slice(cmd);
            args.extend_from_slice(&["--workers", w]);
            let out = run(args);
            ensure(out.code == 0, || format!("{cmd:?} exited {}: {}", out.code, out.stderr))?;
            outputs.push(out.stdout);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{cmd:?} differs across workers"))?;
        ensure(json_block(&outputs[0]).is_some(), || "no JSON".into())?;
    }
    // atlas order reversal
    let fwd = Geometry::Atlas(schemes::conifold_plus());
    let rev = Geometry::Atlas(schemes::conifold_plus_reversed());
    for p in [2u64, 3, 5] {
        let a = count_sequence(&fwd, p, 2, &cfg).map_err(|e| e.to_string())?;
        let b = count_sequence(&rev, p, 2, &cfg).map_err(|e| e.to_string())?;
        ensure(a.counts == b.counts, || format!("p = {p}: {:?} vs {:?}", a.counts, b.counts))?;
    }
    for (p, k) in [(3u64, 1u32), (5, 1)] {
        let ctx = PadicContext::new(p, k).unwrap();
        let a = canonical_measure(&schemes::conifold_plus(), &ctx).map_err(|e| e.to_string())?;
        let b = canonical_measure(&schemes::conifold_plus_reversed(), &ctx).map_err(|e| e.to_string())?;
        ensure(a.value == b.value, || format!("(p, k) = ({p}, {k}): {} vs {}", a.value, b.value))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Option<Duration>); 7] = [
        ("weil measure of the elliptic chart equals N/p", criterion_1, Some(Duration::from_secs(1))),
        ("canonical measures of A_1 and X+ equal count/p^d", criterion_2, Some(Duration::from_secs(5))),
        ("tube measures decay by exactly 1/p", criterion_3, None),
        ("zeta reconstruction and Betti numbers", criterion_4, Some(Duration::from_secs(10))),
        ("conifold small resolutions agree", criterion_5, Some(Duration::from_secs(30))),
        ("cyclic McKay: C(q) = q^2 + nq, C(1) = n + 1", criterion_6, Some(Duration::from_secs(30))),
        ("property suites", criterion_7, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|l| elapsed > l);
        let status = match (&result, over) {
            (Ok(()), false) => "PASS",
            _ => "FAIL",
        };
        let limit_s = limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
        println!("criterion {}: {status}  {name}  [{:.3} s{limit_s}]", i + 1, elapsed.as_secs_f64());
        if let Err(e) = &result {
            println!("    {e}");
        }
        if over {
            println!("    over the time limit");
        }
        if status == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
