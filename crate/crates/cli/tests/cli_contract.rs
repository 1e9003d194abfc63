//! Exit-code and report-surface contract of the binary.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_cosetcheck"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
    )
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["census", "--n", "0"][..],
        &["census", "--n", "3"], // exhaustive beyond budget
        &["census", "--n", "9"], // beyond the degree cap
        &["conj13", "--group", "a16"], // missing --full/--budget opt-in
        &["conj13", "--group", "a16", "--full", "--budget", "3"],
        &["conj14-scan", "--degree", "9"],
        &["zappa", "--p", "4", "--degree", "8", "--target", "cyclic"],
        &["zappa", "--p", "3", "--degree", "6", "--target", "cyclic"],
        &["lemma-tau", "--p", "5", "--degree", "9", "--x", "(1 2 3)"],
        &["no-such-command"],
    ] {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "{args:?}: {stderr}");
    }
}

#[test]
fn census_csv_has_the_two_column_layout() {
    let (code, stdout, _) = run(&["census", "--n", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("exp,count"));
    let counts: u64 = lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(counts, 96);
}

#[test]
fn out_flag_writes_the_report_file() {
    let path = std::env::temp_dir().join("cosetcheck_out_test.json");
    let (code, stdout, _) = run(&["census", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["centralizer_order"], 96);
    std::fs::remove_file(path).ok();
}

#[test]
fn selftest_passes() {
    let (code, stdout, _) = run(&["selftest"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.lines().all(|l| l.starts_with("[PASS]")));
}

#[test]
fn lemma_tau_accepts_image_list_input() {
    let (code, stdout, _) = run(&[
        "lemma-tau",
        "--p",
        "3",
        "--degree",
        "6",
        "--x",
        "[2,4,1,5,6,3]", // (1 2 4 5 6 3) is not 3-power order: reject shape
    ]);
    assert_eq!(code, 2, "{stdout}");

    let (code, stdout, _) = run(&["lemma-tau", "--p", "3", "--degree", "8", "--x", "(1 4 7)"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_ne!(report["product_order"], 3);
    assert_eq!(report["coset_all_p_power"], false);
}
