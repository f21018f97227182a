use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use zetaforge::counting::{
    count_affine, count_geometry, count_projective, count_projective_orbits, count_sequence,
    CountConfig, Strategy as CountStrategy,
};
use zetaforge::fields::make_extension;
use zetaforge::polynomials::{reduce_mod_p, IntPolynomial};
use zetaforge::schemes::{self, builtin_gallery, Ambient, Geometry, Spec, VarietySpec};
use zetaforge::zeta::{counts_of, pade_reconstruct, series_from_counts, ZPoly, ZetaFunction, ZetaSeries, GUARD};

const VARS: [&str; 3] = ["a", "b", "c"];

/// Random polynomial in the first `nvars` of `a, b, c`.
fn poly(nvars: usize) -> impl Strategy<Value = IntPolynomial> {
    poly_in(&VARS[..nvars])
}

/// Random polynomial with small coefficients, each exponent at most 2.
fn poly_in(vars: &'static [&'static str]) -> impl Strategy<Value = IntPolynomial> {
    let nvars = vars.len();
    prop::collection::vec((-4i64..=4, prop::collection::vec(0u32..=2, nvars)), 1..5).prop_map(move |terms| {
        terms.into_iter().fold(IntPolynomial::zero(vars), |acc, (c, exps)| {
            let mono = exps
                .iter()
                .enumerate()
                .fold(IntPolynomial::constant(vars, c), |m, (i, &e)| {
                    m.mul(&IntPolynomial::var(vars, i).pow(e)).unwrap()
                });
            acc.add(&mono).unwrap()
        })
    })
}

/// Random homogeneous polynomial of degree `d` in three variables.
fn homogeneous(d: u32) -> impl Strategy<Value = IntPolynomial> {
    let monos: Vec<(u32, u32)> = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect();
    prop::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
        let v = &VARS[..];
        cs.iter().zip(&monos).fold(IntPolynomial::zero(v), |acc, (&c, &(i, j))| {
            let m = IntPolynomial::var(v, 0)
                .pow(i)
                .mul(&IntPolynomial::var(v, 1).pow(j))
                .unwrap()
                .mul(&IntPolynomial::var(v, 2).pow(d - i - j))
                .unwrap();
            acc.add(&m.scale(&BigInt::from(c))).unwrap()
        })
    })
}

fn affine(name: &str, eqs: Vec<IntPolynomial>, n: usize) -> VarietySpec {
    let vars = eqs.first().map(|f| f.vars().to_vec()).unwrap_or_else(|| VARS[..n].iter().map(|s| s.to_string()).collect());
    VarietySpec {
        name: name.into(),
        ambient: Ambient::Affine(n),
        vars,
        equations: eqs,
        expected_dim: None,
    }
}

fn small_field() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)])
}

fn coprime_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    let side = (0usize..=4).prop_flat_map(|d| {
        (prop::collection::vec(-5i64..=5, d), prop::sample::select(vec![-2i64, -1, 1, 2, 3])).prop_map(
            move |(mut c, top)| {
                c.insert(0, 1);
                if d > 0 {
                    *c.last_mut().unwrap() = top;
                }
                c
            },
        )
    });
    (side.clone(), side)
}

/// Whether the gcd over `Q` is a constant.
fn coprime(a: &[i64], b: &[i64]) -> bool {
    use num_rational::BigRational;
    let q = |v: &[i64]| v.iter().map(|&c| BigRational::from_integer(c.into())).collect::<Vec<_>>();
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(|c| *c == BigRational::from_integer(0.into())) {
            v.pop();
        }
    };
    let (mut a, mut b) = (q(a), q(b));
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() && !a.is_empty() {
            let f = a.last().unwrap() / b.last().unwrap();
            let s = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + s] = &a[i + s] - &f * c;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pade_round_trip((num, den) in coprime_pair()) {
        prop_assume!(coprime(&num, &den));
        let z = ZetaFunction { p: 3, numerator: ZPoly::from_i64s(&num), denominator: ZPoly::from_i64s(&den) };
        let (m, n) = (z.numerator.degree(), z.denominator.degree());
        let order = m + n + GUARD;
        let series = ZetaSeries { p: 3, coefficients: z.expand(order), order };
        prop_assert_eq!(pade_reconstruct(&series, m, n).unwrap(), z);
    }

    #[test]
    fn series_and_counts_are_inverse((num, den) in coprime_pair()) {
        let z = ZetaFunction { p: 3, numerator: ZPoly::from_i64s(&num), denominator: ZPoly::from_i64s(&den) };
        let counts = counts_of(&z, 8);
        prop_assert_eq!(series_from_counts(3, &counts).unwrap().coefficients, z.expand(8));
    }

    #[test]
    fn root_counting_matches_brute_force(f in poly(3), g in poly(3), (p, r) in small_field()) {
        let spec = affine("x", vec![f, g], 3);
        let field = make_extension(p, r).unwrap();
        let cfg = CountConfig::default();
        let fast = count_affine(&spec, &field, &cfg).unwrap().points;
        let slow = count_affine(&spec, &field, &CountConfig::exhaustive()).unwrap().points;
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn projective_strata_match_orbits(f in homogeneous(2), g in homogeneous(3), (p, r) in small_field()) {
        for eqs in [vec![f.clone()], vec![g.clone()], vec![f.clone(), g.clone()]] {
            let spec = VarietySpec {
                name: "c".into(),
                ambient: Ambient::Projective(2),
                vars: VARS.iter().map(|s| s.to_string()).collect(),
                equations: eqs,
                expected_dim: None,
            };
            let field = make_extension(p, r).unwrap();
            let cfg = CountConfig::default();
            prop_assert_eq!(
                count_projective(&spec, &field, &cfg).unwrap().points,
                count_projective_orbits(&spec, &field, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn product_counts_multiply(f in poly(1), g in poly_in(&["b", "c"]), (p, r) in small_field()) {
        let field = make_extension(p, r).unwrap();
        let cfg = CountConfig::default();
        let x = affine("x", vec![f.clone()], 1);
        let y = affine("y", vec![g.clone()], 2);
        let vars = ["a", "b", "c"];
        let xy = affine("xy", vec![f.embed(&vars).unwrap(), g.embed(&vars).unwrap()], 3);
        let nx = count_affine(&x, &field, &cfg).unwrap().points;
        let ny = count_affine(&y, &field, &cfg).unwrap().points;
        prop_assert_eq!(count_affine(&xy, &field, &cfg).unwrap().points, nx * ny);
    }

    #[test]
    fn reduction_is_a_ring_map(f in poly(2), g in poly(2), a in -20i64..20, b in -20i64..20) {
        let p = 7u64;
        let field = make_extension(p, 1).unwrap();
        let point = [field.from_int(a as i128), field.from_int(b as i128)];
        let ints = [BigInt::from(a), BigInt::from(b)];
        let via_field = |h: &IntPolynomial| {
            reduce_mod_p(h, p).evaluate(&field, &point).unwrap().coeffs().first().copied().unwrap_or(0)
        };
        let via_int = |h: &IntPolynomial| {
            let v = h.eval_int(&ints).unwrap() % BigInt::from(p);
            ((v + BigInt::from(p)) % BigInt::from(p)).to_u64().unwrap()
        };
        let fg = f.mul(&g).unwrap();
        let sum = f.add(&g).unwrap();
        prop_assert_eq!(via_field(&f), via_int(&f));
        prop_assert_eq!(via_field(&fg), via_int(&fg));
        prop_assert_eq!(via_field(&sum), via_int(&sum));
        prop_assert_eq!(via_field(&fg), via_field(&f) * via_field(&g) % p);
    }

    #[test]
    fn variety_json_round_trip(eqs in prop::collection::vec(poly(3), 0..3)) {
        let spec = Spec::Variety(affine("rt", eqs, 3));
        prop_assert_eq!(Spec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn counts_do_not_depend_on_workers(f in poly(3), workers in 1usize..6, (p, _r) in small_field()) {
        let g = Geometry::Variety(affine("w", vec![f], 3));
        let one = count_sequence(&g, p, 1, &CountConfig::default().with_workers(1)).unwrap();
        let many = count_sequence(&g, p, 1, &CountConfig::default().with_workers(workers)).unwrap();
        prop_assert_eq!(&one, &many);
    }
}

#[test]
fn gallery_round_trips_and_strata() {
    let cfg = CountConfig::default();
    for spec in builtin_gallery() {
        assert_eq!(Spec::from_json(&spec.to_json()).unwrap(), spec);
        if let Spec::Variety(v) = &spec {
            if v.is_projective() {
                for p in [2, 3] {
                    let f = make_extension(p, 1).unwrap();
                    let sum: u64 = v
                        .affine_strata()
                        .unwrap()
                        .iter()
                        .map(|s| count_affine(s, &f, &cfg).unwrap().points)
                        .sum();
                    assert_eq!(sum, count_geometry(&Geometry::Variety(v.clone()), &f, &cfg).unwrap().points);
                }
            }
        }
    }
}

#[test]
fn atlas_order_reversal() {
    let cfg = CountConfig {
        strategy: CountStrategy::Exhaustive,
        ..CountConfig::default()
    };
    for p in [2, 3, 5] {
        let f = make_extension(p, 1).unwrap();
        let a = count_geometry(&Geometry::Atlas(schemes::conifold_plus()), &f, &cfg).unwrap();
        let b = count_geometry(&Geometry::Atlas(schemes::conifold_plus_reversed()), &f, &cfg).unwrap();
        assert_eq!(a.points, b.points);
    }
}
