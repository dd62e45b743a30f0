use std::fs;
use std::path::PathBuf;

use gfl_core::certificate::{deserialize, serialize};
use gfl_core::dsl::{format, parse};
use gfl_core::{solve, verify, SolveConfig, VerifyOptions};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn gfl_files(dir: PathBuf) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "gfl"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn every_corpus_problem_solves_and_verifies() {
    let files = gfl_files(corpus());
    assert!(files.len() >= 10);
    for (name, src) in files {
        let problem = parse(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
        let cert = solve(&problem, &SolveConfig::default()).unwrap_or_else(|e| panic!("{name}: {e}"));
        let report = verify(&problem, &cert, &VerifyOptions::default()).unwrap();
        assert!(report.passed, "{name}:\n{}", report.render());
        let bytes = serialize(&cert);
        assert_eq!(deserialize(&bytes).unwrap(), cert, "{name}");
        assert_eq!(parse(&format(&problem)).unwrap(), problem, "{name}");
    }
}

#[test]
fn verification_is_stable_across_seeds() {
    for (name, src) in gfl_files(corpus()) {
        let problem = parse(&src).unwrap();
        let cert = solve(&problem, &SolveConfig::default()).unwrap();
        for seed in [1, 17, 4242] {
            let opts = VerifyOptions {
                trials: 3,
                seed,
                degree_bound: None,
            };
            let report = verify(&problem, &cert, &opts).unwrap();
            assert!(report.passed, "{name} seed {seed}:\n{}", report.render());
        }
    }
}

/// Each file in errors/ states the expected `line:column` in a header
/// comment `# expect L:C`.
#[test]
fn planted_errors_report_their_location() {
    let files = gfl_files(corpus().join("errors"));
    assert!(files.len() >= 5);
    for (name, src) in files {
        let header = src.lines().next().unwrap();
        let (line, col) = header
            .strip_prefix("# expect ")
            .and_then(|s| s.trim().split_once(':'))
            .unwrap_or_else(|| panic!("{name}: missing expect header"));
        let err = parse(&src).expect_err(&name);
        assert_eq!(
            (err.location.line, err.location.column),
            (line.parse().unwrap(), col.parse().unwrap()),
            "{name}: {err}"
        );
    }
}

#[test]
fn adversarial_instance_hits_the_default_cap() {
    let src = fs::read_to_string(corpus().join("adversarial/cap.gfl")).unwrap();
    let problem = parse(&src).unwrap();
    let err = solve(&problem, &SolveConfig::default()).unwrap_err();
    assert!(err.to_string().contains("cap"), "{err}");
}
