//! JSON report blocks compared byte for byte with `tests/golden/*.json`.
//! Set `ZETAFORGE_BLESS=1` to rewrite the files.

use std::path::PathBuf;

use zetaforge::harness::run;

const CASES: &[(&str, &[&str])] = &[
    ("count-p1", &["count", "gallery:P1", "--p", "3", "--rmax", "3"]),
    ("count-elliptic", &["count", "gallery:elliptic-5191", "--p", "5", "--rmax", "2"]),
    ("count-conifold-plus", &["count", "gallery:conifold-plus", "--p", "2", "--rmax", "3"]),
    ("zeta-elliptic", &["zeta", "gallery:elliptic-5191", "--p", "5", "--rmax", "6"]),
    ("zeta-p2", &["zeta", "gallery:P2", "--p", "3", "--rmax", "6"]),
    ("zeta-p1-auto", &["zeta", "gallery:P1", "--p", "3", "--rmax", "4", "--auto"]),
    ("compare-conifold", &["compare", "gallery:conifold-pair", "--primes", "3,5,7", "--rmax", "2"]),
    ("compare-p1-p2", &["compare", "gallery:P1", "gallery:P2", "--primes", "3", "--rmax", "2"]),
    ("measure-weil", &["measure", "gallery:elliptic-affine", "--p", "5", "--k", "2"]),
    ("measure-tube", &["measure", "gallery:hyperplane-2", "--p", "5", "--mode", "tube", "--m", "1..4"]),
    ("measure-canonical", &["measure", "gallery:A1-resolution", "--p", "5", "--mode", "canonical"]),
    ("mckay-a1", &["mckay", "--n", "1", "--primes", "5,7,11,13"]),
    ("mckay-a4", &["mckay", "--n", "4", "--primes", "7,11,13,17"]),
    ("mckay-a2-bad-prime", &["mckay", "--n", "2", "--primes", "3,5,7,11,13"]),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("ZETAFORGE_BLESS").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in CASES {
        for workers in ["1", "4"] {
            let mut argv = vec!["zetaforge", "--json"];
            argv.extend_from_slice(args);
            argv.extend_from_slice(&["--workers", workers]);
            let out = run(argv);
            let path = golden_path(name);
            if bless {
                std::fs::write(&path, &out.stdout).unwrap();
                continue;
            }
            let expected = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            if out.stdout != expected {
                mismatched.push(format!("{name} (workers = {workers})"));
            }
        }
    }
    assert!(mismatched.is_empty(), "golden mismatches: {mismatched:?}");
}
