use std::process::{Command, Output};

use lrhorn::conjectures::{SweepReport, SweepStatus};
use lrhorn::spectra::SpectralReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrhorn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn lrcoef_and_clcoef() {
    let o = run(&["lrcoef", "2,1", "2", "3,2"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "1"));
    let o = run(&["clcoef", "2,1", "2,1", "3,2,1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "2"));
    let o = run(&["lrcoef", "-", "-", "-"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn schur_mult_text_and_json() {
    let o = run(&["schur-mult", "3,1", "2"]);
    assert_eq!(stdout(&o), "5,1\t1\n4,2\t1\n4,1,1\t1\n3,3\t1\n3,2,1\t1\n");
    let o = run(&["--json", "schur-mult", "2,1", "2,1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 7);
    let c321 = terms.iter().find(|t| t["nu"] == serde_json::json!([3, 2, 1])).unwrap();
    assert_eq!(c321["c"], 2);
}

#[test]
fn horn_triples_listing() {
    let o = run(&["horn-triples", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = run(&["horn-triples", "3", "-r", "2", "--essential"]);
    assert!(stdout(&o).lines().all(|l| l.matches(',').count() == 3));
}

#[test]
fn ineq_exit_codes() {
    let o = run(&["ineq", "sv", "--gamma", "3,0", "--s", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("sv ({1},{1},{1})"));
    let o = run(&["ineq", "sv", "--gamma", "3,1", "--s", "2"]);
    assert_eq!(code(&o), 0);
    let o = run(&["ineq", "offdiag", "--lambda", "4,3,-2,-3", "--s", "3,1"]);
    assert_eq!(code(&o), 0);
    let o = run(&["ineq", "pxyq", "--gamma", "2,1", "--s", "3/2", "--t", "0"]);
    assert_eq!(code(&o), 0);
    let o = run(&["ineq", "sv", "--gamma", "1,2", "--s", "0"]);
    assert_eq!(code(&o), 2);
    let o = run(&["ineq", "sv", "--gamma", "x", "--s", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["lrcoef", "1,2", "1", "2"])), 2);
    assert_eq!(code(&run(&["quotient", "2,1"])), 2);
    assert_eq!(code(&run(&["--threads", "0", "tau", "1", "1"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn cone_and_decompose() {
    let o = run(&["cone", "--a", "4,2", "--b", "3,1", "--c", "6,4"]);
    assert_eq!(code(&o), 0);
    let o = run(&["cone", "--a", "4,2", "--b", "3,1", "--c", "8,2"]);
    assert_eq!(code(&o), 1);
    let o = run(&["cone", "--gamma", "4,3,2,1"]);
    assert!(stdout(&o).contains("a=4,2\tb=3,1\tc_1 in [5, 7]"));
    let o = run(&["decompose", "--a", "2,1,0", "--b", "2,1,0", "--c", "3,2,1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("valid\n"));
    let o = run(&["decompose", "--a", "1", "--b", "1", "--c", "3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn repaint_reaches_canonical() {
    let o = run(&["--json", "repaint", "--colors", "2,1,3,1,2,3", "-m", "3"]);
    let steps: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last = steps.as_array().unwrap().last().unwrap();
    assert_eq!(last["after"], serde_json::json!([1, 2, 3, 1, 2, 3]));
    assert_eq!(code(&run(&["repaint", "--colors", "1,1,2", "-m", "2"])), 2);
}

#[test]
fn ydt_modes() {
    let o = run(&["ydt", "4,4,1,1", "--weight", "3,2", "--render"]);
    assert!(stdout(&o).contains("word 12112"));
    assert!(stdout(&o).contains("1 1 1-1\n| |\n1 1 2-2\n"));
    assert!(stdout(&o).ends_with("1 tableaux\n"));
    let o = run(&["--json", "ydt", "2,2", "--all"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn star_helpers() {
    assert_eq!(stdout(&run(&["star", "5,5,2,2", "1,1,0,0"])), "4,3,1\t3,2,2,1\n");
    assert_eq!(stdout(&run(&["tau", "3,2", "3,2"])), "6,6,4,4\n");
    assert_eq!(stdout(&run(&["quotient", "4,4,1,1"])), "2,1\t2\n");
    let o = run(&["orbit", "1", "-"]);
    assert_eq!(stdout(&o), "1\t-\n-\t1\n");
}

#[test]
fn sample_report_round_trips() {
    let o = run(&["--seed", "5", "sample", "offdiag", "-p", "1", "-n", "3", "--trials", "20"]);
    assert_eq!(code(&o), 0);
    let r: SpectralReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.trials, r.seed, r.violations, r.records.len()), (20, 5, 0, 20));
    assert!(r.reverify().unwrap());
    let o = run(&["sample", "thm1", "-p", "1", "-n", "2", "--trials", "5", "--perturb", "10", "--summary"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["sample", "thm1", "-p", "2", "-n", "3"])), 2);
}

#[test]
fn sample_independent_of_threads() {
    let a = run(&["--threads", "1", "sample", "cone2", "-p", "2", "--trials", "30"]);
    let b = run(&["--threads", "4", "sample", "cone2", "-p", "2", "--trials", "30"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn matrices_from_stdin_and_file() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_lrhorn"))
        .args(["eig"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2 1\n1 2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "3.000000000000\n1.000000000000\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "3 0\n0 -4\n").unwrap();
    let o = run(&["svd", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "4.000000000000\n3.000000000000\n");
    std::fs::write(&path, "1 2\n3 4\n").unwrap();
    assert_eq!(code(&run(&["eig", path.to_str().unwrap()])), 2);
}

#[test]
fn verify_sweeps_and_resume() {
    let o = run(&["verify", "star", "--box", "2", "3"]);
    assert_eq!(code(&o), 0);
    let r: SweepReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.status, r.pairs_examined), (SweepStatus::Pass, 100));

    assert_eq!(code(&run(&["verify", "star", "--box", "5", "4"])), 3);
    assert_eq!(code(&run(&["verify", "tau", "--max-weight", "9"])), 3);

    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cursor.json");
    let cp = cp.to_str().unwrap();
    let o = run(&["verify", "tau", "--max-weight", "3", "--resume", cp, "--max-pairs", "4"]);
    assert_eq!(code(&o), 3);
    let o = run(&["verify", "tau", "--max-weight", "3", "--resume", cp]);
    assert_eq!(code(&o), 0);
    let r: SweepReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.pairs_examined, r.total);
    assert_eq!(code(&run(&["verify", "ffg", "--max-p", "2", "--resume", cp])), 2);

    let o = run(&["verify", "domination", "--gamma", "4,3,2,1", "-p", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["verify", "domination", "--max-weight", "6", "-p", "2"])), 0);
    assert_eq!(code(&run(&["verify", "ffg", "--max-p", "2"])), 0);
    assert_eq!(code(&run(&["verify", "star", "--pair", "5,5,2,2", "1,1", "--parts", "4"])), 0);
}
