use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn gfl(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gfl"));
    for a in args {
        cmd.arg(a);
    }
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn solve_to(problem: &str, out: &Path) -> Output {
    let o = gfl(&[&"solve", &corpus(problem), &"-o", &out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    o
}

#[test]
fn solve_prints_the_witness_and_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("inv.cert");
    let o = solve_to("inverse_t.gfl", &cert);
    let text = stdout(&o);
    assert!(text.starts_with("f = t\n"), "{text}");
    assert!(text.contains("algebra staircase: 1 corners [x]"));
    assert!(cert.exists());

    let v = gfl(&[&"verify", &corpus("inverse_t.gfl"), &cert]);
    assert_eq!(code(&v), 0);
    for name in ["zero_witness", "spanning", "specialization", "dimension"] {
        assert!(stdout(&v).contains(&format!("{name}: PASS")), "{}", stdout(&v));
    }
}

#[test]
fn default_output_path_replaces_the_extension() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("p.gfl");
    fs::copy(corpus("parabola.gfl"), &src).unwrap();
    let o = gfl(&[&"solve", &src]);
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("p.cert").exists());
}

#[test]
fn missing_or_invalid_input_exits_2() {
    assert_eq!(code(&gfl(&[&"solve", &"/nonexistent/x.gfl"])), 2);
    let o = gfl(&[&"solve", &corpus("errors/unknown_param.gfl")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4, column 18"));
}

#[test]
fn cap_exceeded_exits_3_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cap.cert");
    let o = gfl(&[&"solve", &corpus("adversarial/cap.gfl"), &"-o", &out]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("degree cap exceeded"), "{err}");
    assert!(!out.exists());
    // a cap at the input degree trips on an otherwise easy problem, and a
    // cap below it is a configuration error
    assert_eq!(code(&gfl(&[&"solve", &corpus("parabola.gfl"), &"--cap", &"2", &"-o", &out])), 3);
    assert_eq!(code(&gfl(&[&"solve", &corpus("parabola.gfl"), &"--cap", &"1", &"-o", &out])), 2);
}

#[test]
fn zero_trials_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("s.cert");
    solve_to("sqrt2.gfl", &cert);
    assert_eq!(code(&gfl(&[&"verify", &corpus("sqrt2.gfl"), &cert, &"--trials", &"0"])), 2);
}

#[test]
fn tampered_certificates_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("s.cert");
    solve_to("sqrt2.gfl", &cert);
    let text = fs::read_to_string(&cert).unwrap();

    let wrong_tail = dir.path().join("tail.cert");
    fs::write(&wrong_tail, text.replace("\"coeff\": \"2\"", "\"coeff\": \"3\"")).unwrap();
    let o = gfl(&[&"verify", &corpus("sqrt2.gfl"), &wrong_tail]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));

    let zero = dir.path().join("zero.cert");
    fs::write(&zero, text.replace("\"witness_f\": \"1\"", "\"witness_f\": \"0\"")).unwrap();
    let o = gfl(&[&"verify", &corpus("sqrt2.gfl"), &zero]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("certificate: FAIL"));

    let garbage = dir.path().join("garbage.cert");
    fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&gfl(&[&"verify", &corpus("sqrt2.gfl"), &garbage])), 2);
}

#[test]
fn certificate_for_another_problem_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("s.cert");
    solve_to("sqrt2.gfl", &cert);
    let o = gfl(&[&"verify", &corpus("parabola.gfl"), &cert]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("WrongProblem"));
}

#[test]
fn explain_draws_the_three_corner_staircase() {
    let o = gfl(&[&"explain", &corpus("three_corners.gfl")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("module v1 (x right, y up):"), "{text}");
    let grid: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.starts_with("module v1 ("))
        .skip(1)
        .take_while(|l| !l.is_empty())
        .collect();
    // oracle: a cell is outside the staircase iff a corner divides it
    let corners = [(2, 5), (5, 3), (6, 2)];
    let expected: Vec<String> = (0..8)
        .rev()
        .map(|y| {
            (0..8)
                .map(|x| {
                    if corners.contains(&(x, y)) {
                        'C'
                    } else if corners.iter().any(|&(a, b)| a <= x && b <= y) {
                        '#'
                    } else {
                        '.'
                    }
                })
                .collect()
        })
        .collect();
    assert_eq!(grid, expected);
}

#[test]
fn explain_of_a_free_module_is_all_staircase() {
    let o = gfl(&[&"explain", &corpus("free.gfl")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("module v2 (x right, y up):"));
    for line in text.lines().filter(|l| l.starts_with('.') || l.starts_with('#')) {
        assert!(line.chars().all(|c| c == '.'), "{line}");
    }
}

#[test]
fn explain_lists_corners_beyond_two_variables() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.cert");
    solve_to("space_curve.gfl", &cert);
    let o = gfl(&[&"explain", &cert]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("algebra corners: z^2, y^2, x"), "{text}");
    assert!(!text.contains("right"));
}
