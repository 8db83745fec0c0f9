use std::io::Write;
use std::process::{Command, Output, Stdio};

use kerov_core::diagram::DiagramJson;
use kerov_core::poly::PolynomialJson;
use kerov_core::series::SeriesJson;
use kerov_core::stanley::{StanleyJson, StanleyPolynomial};
use kerov_core::{CumulantPolynomial, MultiRectangular, SeriesRole, TruncatedSeries};
use num_rational::BigRational;
use num_traits::Zero;

fn kerov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kerov"))
        .args(args)
        .env_remove("KEROV_THREADS")
        .output()
        .expect("failed to run kerov")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("kerov-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compute_text_and_latex() {
    assert_eq!(
        stdout(&kerov(&["compute", "--k", "6", "--format", "text"])).trim(),
        "R7 + 35 R5 + 35 R3 R2 + 84 R3"
    );
    assert_eq!(stdout(&kerov(&["compute", "--k", "1"])).trim(), "R2");
    assert_eq!(stdout(&kerov(&["compute", "--cycles", "1,1"])).trim(), "R2");
    assert_eq!(
        stdout(&kerov(&["compute", "--k", "5", "--format", "latex"])).trim(),
        "R_6 + 15R_4 + 5R_2^{2} + 8R_2"
    );
}

#[test]
fn compute_json_is_stable_and_parses() {
    let one = stdout(&kerov(&["compute", "--k", "6", "--format", "json", "--threads", "1"]));
    let four = stdout(&kerov(&["compute", "--k", "6", "--format", "json", "--threads", "4"]));
    let env = Command::new(env!("CARGO_BIN_EXE_kerov"))
        .args(["compute", "--k", "6", "--format", "json"])
        .env("KEROV_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one, four);
    assert_eq!(one, stdout(&env));

    let value: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert_eq!(value["cycles"], serde_json::json!([6]));
    assert_eq!(value["stats"]["visited"], 720);
    let poly: PolynomialJson = serde_json::from_value(value["polynomial"].clone()).unwrap();
    let poly = CumulantPolynomial::from_json(&poly).unwrap();
    assert_eq!(poly.to_text("R"), "R7 + 35 R5 + 35 R3 R2 + 84 R3");
    // the triple count is the sum of coefficients
    assert_eq!(value["stats"]["triples"], 1 + 35 + 35 + 84);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["compute"][..],
        &["compute", "--k", "3", "--cycles", "1,2"],
        &["compute", "--k", "0"],
        &["compute", "--cycles", "2,0"],
        &["compute", "--k", "3", "--format", "pdf"],
        &["verify", "--suites", "everything"],
        &["diagram", "--p", "1,2", "--q", "1"],
        &["diagram", "--partition", "1,x"],
        &["stanley", "--k", "2", "--bands", "0"],
        &["frobnicate"],
    ] {
        let out = kerov(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_selected_suites() {
    let out = kerov(&["verify", "--suites", "lemmas,divisibility", "--seed", "3"]);
    let text = stdout(&out);
    assert!(text.contains("PASS lemmas"), "{text}");
    assert!(text.contains("seed 3"));
    assert!(text.contains("PASS divisibility"));
    assert!(text.contains("(K5 - R6 + 2 R2)/5 = 3 R4 + R2^2 + 2 R2"));

    let out = kerov(&[
        "verify",
        "--max-boxes",
        "6",
        "--max-k",
        "5",
        "--suites",
        "oracle-identity,dual-route",
        "--format",
        "json",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
    assert_eq!(report["suites"][0]["suite"], "oracle-identity");
    assert!(report["suites"][0]["checks"].as_u64().unwrap() > 0);
}

#[test]
fn convert_dirac_moments() {
    let a = BigRational::new(3.into(), 2.into());
    let moments: Vec<BigRational> = (1..=6).map(|n| num_traits::pow(a.clone(), n)).collect();
    let input = TruncatedSeries::new(SeriesRole::Moments, moments);
    let path = temp_file("dirac.json", &serde_json::to_string(&input.to_json()).unwrap());
    let out = kerov(&[
        "convert",
        "--from",
        "moments",
        "--to",
        "free-cumulants",
        "--input",
        path.to_str().unwrap(),
    ]);
    let json: SeriesJson = serde_json::from_str(&stdout(&out)).unwrap();
    let r = TruncatedSeries::from_json(&json).unwrap();
    assert_eq!(r.role(), SeriesRole::FreeCumulants);
    assert_eq!(r.get(1), a);
    assert!((2..=6).all(|n| r.get(n).is_zero()));
}

#[test]
fn convert_roundtrip_reproduces_file() {
    let first = stdout(&kerov(&[
        "diagram",
        "--p",
        "1,1/2",
        "--q",
        "3,1",
        "--order",
        "7",
        "--series",
        "free-cumulants",
    ]));
    let path = temp_file("r.json", &first);
    let s = stdout(&kerov(&[
        "convert",
        "--from",
        "free-cumulants",
        "--to",
        "s-functionals",
        "--input",
        path.to_str().unwrap(),
    ]));
    let path_s = temp_file("s.json", &s);
    let back = stdout(&kerov(&[
        "convert",
        "--from",
        "s-functionals",
        "--to",
        "free-cumulants",
        "--input",
        path_s.to_str().unwrap(),
    ]));
    assert_eq!(back, first);
}

#[test]
fn convert_reads_stdin_and_checks_role() {
    let s = stdout(&kerov(&[
        "diagram",
        "--p",
        "2",
        "--q",
        "3",
        "--order",
        "5",
        "--series",
        "s-functionals",
    ]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_kerov"))
        .args(["convert", "--from", "s-functionals", "--to", "free-cumulants"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let r = TruncatedSeries::from_json(&serde_json::from_str(&stdout(&out)).unwrap()).unwrap();
    // a 2 × 3 rectangle has R2 equal to its area
    assert_eq!(r.get(2), BigRational::from_integer(6.into()));

    let path = temp_file("wrong-role.json", &s);
    let out = kerov(&[
        "convert",
        "--from",
        "moments",
        "--to",
        "free-cumulants",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s-functionals"));
}

#[test]
fn diagram_report() {
    let text = stdout(&kerov(&["diagram", "--partition", "2,1", "--order", "4"]));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let d: DiagramJson = serde_json::from_value(value["diagram"].clone()).unwrap();
    assert_eq!(
        MultiRectangular::from_json(&d).unwrap().area(),
        BigRational::from_integer(3.into())
    );
    assert_eq!(value["area"], "3");
    for key in ["s-functionals", "moments", "free-cumulants"] {
        let s: SeriesJson = serde_json::from_value(value[key].clone()).unwrap();
        assert_eq!(s.order, 4, "{key}");
    }
    // (2,1) is symmetric so R3 vanishes
    let r: SeriesJson = serde_json::from_value(value["free-cumulants"].clone()).unwrap();
    assert!(TruncatedSeries::from_json(&r).unwrap().get(3).is_zero());
}

#[test]
fn stanley_dump() {
    assert_eq!(
        stdout(&kerov(&["stanley", "--k", "2", "--bands", "1", "--format", "text"])).trim(),
        "p1 q1^2 - p1^2 q1"
    );
    let text = stdout(&kerov(&["stanley", "--cycles", "3", "--bands", "2"]));
    let json: StanleyJson = serde_json::from_str(&text).unwrap();
    let poly = StanleyPolynomial::from_json(&json).unwrap();
    assert_eq!(poly.m(), 2);
    // one band of height 1 and width 3: the character of the row (3) on a 3-cycle
    let one = BigRational::from_integer(1.into());
    let three = BigRational::from_integer(3.into());
    assert_eq!(
        poly.evaluate(&[one, BigRational::zero()], &[three.clone(), three]),
        BigRational::from_integer(6.into())
    );
}
