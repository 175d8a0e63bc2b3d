use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivertex")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("bad JSON {text:?}: {e}"))
}

fn f(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("no number {key} in {v}"))
}

const F4_ONES: [&str; 9] = ["eval-f4", "--a", "1", "--b", "1", "--c1", "1", "--c2", "1"];

#[test]
fn f4_at_origin_is_one() {
    let mut a = F4_ONES.to_vec();
    a.extend(["--x", "0", "--y", "0"]);
    let out = run(&a);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(f(&v, "value"), 1.0);
    assert_eq!(v["domain"], "series");
    assert!(v["terms_used"].as_u64().is_some());
    assert!(f(&v, "err") < 1e-14);
}

#[test]
fn f4_outside_domain_exits_2() {
    let mut a = F4_ONES.to_vec();
    a.extend(["--x", "0.5", "--y", "0.5"]);
    let out = run(&a);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_input_exits_1() {
    assert_eq!(run(&["eval-f4", "--a", "1"]).status.code(), Some(1));
    assert_eq!(run(&["ydelta", "--to", "delta", "1", "-2", "3"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn continued_mode_matches_library() {
    use trivertex::special::f4_continue_branch;
    use trivertex::{Branch, F4Params, Point2, SeriesControl};
    let args = [
        "eval-f4", "--a", "1.3", "--b", "1", "--c1", "1.3", "--c2", "0.7", "--x", "0.36", "--y", "4",
        "--mode", "continued", "--branch", "upper",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let p = F4Params::new(1.3, 1.0, 1.3, 0.7).unwrap();
    let lib = f4_continue_branch(p, Point2::new(0.36, 4.0).unwrap(), Branch::Upper, SeriesControl::default())
        .unwrap();
    assert_eq!(f(&v, "value"), lib.value.re);
    assert_eq!(f(&v, "value_im"), lib.value.im);
    assert_eq!(v["domain"], "continued");
}

#[test]
fn continued_mode_without_branch_refuses_the_cut() {
    let args = [
        "eval-f4", "--a", "1.3", "--b", "1", "--c1", "1.3", "--c2", "0.7", "--x", "0.36", "--y", "4",
        "--mode", "continued",
    ];
    assert_eq!(run(&args).status.code(), Some(2));
}

#[test]
fn four_and_reduced_agree() {
    let kin = ["--p2", "1", "--q2", "0.09", "--r2", "0.04", "--omega", "2.3"];
    let mut four = vec!["triangle"];
    four.extend(kin);
    let mut red = four.clone();
    red.extend(["--form", "reduced"]);
    let (a, b) = (json(&run(&four)), json(&run(&red)));
    assert_eq!(a["terms"].as_array().unwrap().len(), 4);
    assert_eq!(b["terms"].as_array().unwrap().len(), 3);
    let (ta, tb) = (f(&a, "total"), f(&b, "total"));
    assert!((ta - tb).abs() < 1e-10 * ta.abs(), "{ta} vs {tb}");
    assert!((ta - 72.04703368280781).abs() < 1e-12 * ta);
}

#[test]
fn ratio_kinematics_match_squared_momenta() {
    let a = json(&run(&["triangle", "--p2", "2", "--q2", "0.18", "--r2", "0.08", "--omega", "2.2"]));
    let b = json(&run(&["triangle", "--p2", "2", "--x", "0.04", "--y", "0.09", "--omega", "2.2"]));
    let (ta, tb) = (f(&a, "total"), f(&b, "total"));
    assert!((ta - tb).abs() < 1e-13 * ta.abs());
}

#[test]
fn symmetric_point_is_a_domain_error() {
    let out = run(&["triangle", "--p2", "1", "--q2", "1", "--r2", "1", "--omega", "2.3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain"));
}

#[test]
fn paper3_emits_three_terms() {
    let out = run(&["triangle", "--p2", "1", "--x", "0.04", "--y", "0.09", "--omega", "2.3", "--form", "paper3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(v["as_printed"], true);
    assert_eq!(terms[2]["evaluation"], "continued");
}

#[test]
fn ydelta_example() {
    let v = json(&run(&["ydelta", "--to", "delta", "1", "2", "3"]));
    assert_eq!(f(&v, "ra"), 11.0);
    assert_eq!(f(&v, "rb"), 5.5);
    assert_eq!(f(&v, "rc"), 11.0 / 3.0);
    let back = json(&run(&["ydelta", "--to", "y", "11", "5.5", "3.6666666666666665"]));
    for (k, want) in [("r1", 1.0), ("r2", 2.0), ("r3", 3.0)] {
        assert!((f(&back, k) - want).abs() < 1e-15 * want);
    }
}

#[test]
fn oracle_golden() {
    let v = json(&run(&["oracle", "--p2", "1", "--q2", "1", "--r2", "1"]));
    // frozen output at the default tolerance
    assert_eq!(f(&v, "value"), 23.133437198559644);
    assert!((f(&v, "value") - 23.133437198714689).abs() < 1e-10 * 23.2);
}

#[test]
fn numbers_round_trip_exactly() {
    let out = run(&["ydelta", "--to", "delta", "1", "2", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3.6666666666666665e+0"), "{text}");
}

#[test]
fn output_is_deterministic() {
    let args = ["triangle", "--p2", "1", "--q2", "0.09", "--r2", "0.04", "--omega", "2.3", "--form", "reduced"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let csv = ["--format", "csv", "oracle", "--p2", "1", "--q2", "0.5", "--r2", "0.7", "--quad-tol", "1e-8"];
    assert_eq!(run(&csv).stdout, run(&csv).stdout);
}

#[test]
fn csv_has_header_and_row() {
    let out = run(&["ydelta", "--to", "delta", "1", "2", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "to,ra,rb,rc");
    assert_eq!(lines.len(), 2);
}

#[test]
fn kin_file_gives_one_record_per_line() {
    let dir = std::env::temp_dir().join(format!("trivertex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kin.jsonl");
    std::fs::write(
        &path,
        "{\"p2\": 1, \"q2\": 0.09, \"r2\": 0.04}\n{\"p2\": 1, \"x\": 0.04, \"y\": 0.09}\n{\"p2\": 1, \"q2\": 1, \"r2\": 1}\n",
    )
    .unwrap();
    let out = run(&["triangle", "--kin-file", path.to_str().unwrap(), "--omega", "2.3"]);
    std::fs::remove_dir_all(&dir).ok();
    // the third point is outside the domain; it is reported and sets the status
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    let recs: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 3);
    assert_eq!(f(&recs[0], "total"), f(&recs[1], "total"));
    assert_eq!(recs[2]["error"], "domain");
    assert_eq!(recs[2]["line"], 3);
}

#[test]
fn network_suite_passes() {
    let out = run(&["check", "--suite", "network"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "PASS");
}
