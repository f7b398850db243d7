use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_painleve-qcurve"))
        .args(args)
        .env_remove("PAINLEVE_QCURVE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

#[test]
fn genus_three_free_energy() {
    let o = run(&["compute", "free-energy", "--g", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "245/429981696 * q0^-10");
}

#[test]
fn w21_latex_matches_printed_form() {
    let o = run(&["compute", "w", "--g", "2", "--n", "1", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let printed = r"\frac{ 28 z_{1}^{8} + 84q_{0} z_{1}^{6} + 252q_{0}^{2}z_{1}^{4}
        + 609q_{0}^{3}z_{1}^{2}  + 945 q_{0}^{4}}
        {1990656q_{0}^{7} z_{1}^{10}}dz_{1}";
    assert_eq!(squash(&stdout(&o)), squash(printed));
}

#[test]
fn s4_in_x_matches_printed_form() {
    let o = run(&["compute", "s", "--m", "4", "--coord", "x", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let printed = r"-\frac{140x^{4}+1580q_{0}x^{3}
        + 7476 q_{0}^{2}x^{2}+18739q_{0}^{3}x+23499q_{0}^{4}}
        {9953280 q_{0}^{7}(x+2q_{0})^{9/2}}";
    assert_eq!(squash(&stdout(&o)), squash(printed));
}

#[test]
fn bad_input_is_a_usage_error() {
    for args in [
        &["compute", "w", "--g", "0", "--n", "2"][..],
        &["compute", "w", "--g", "1"][..],
        &["compute", "nonsense"][..],
        &["verify", "tau", "--gmax", "x"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn tau_suite_passes() {
    let o = run(&["verify", "tau", "--gmax", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn json_report_lists_passing_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["verify", "appendix", "--order", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["verdict"] == "pass"));
}

fn compute_with_cache(cache: &Path) -> String {
    let o = run(&["--cache", cache.to_str().unwrap(), "compute", "w", "--g", "2", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    stdout(&o)
}

#[test]
fn warm_cache_reproduces_cold_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("w.json");
    let cold = compute_with_cache(&cache);
    let saved = std::fs::read_to_string(&cache).unwrap();
    let warm = compute_with_cache(&cache);
    assert_eq!(cold, warm);
    assert_eq!(saved, std::fs::read_to_string(&cache).unwrap());

    let o = Command::new(env!("CARGO_BIN_EXE_painleve-qcurve"))
        .args(["compute", "w", "--g", "2", "--n", "2", "--format", "json"])
        .env("PAINLEVE_QCURVE_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), cold);
}

#[test]
fn tampered_cache_is_an_internal_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("w.json");
    compute_with_cache(&cache);
    let text = std::fs::read_to_string(&cache).unwrap().replacen("\"288\"", "\"289\"", 1);
    std::fs::write(&cache, text).unwrap();
    let o = run(&["--cache", cache.to_str().unwrap(), "compute", "free-energy", "--g", "2"]);
    assert_eq!(o.status.code(), Some(3));
}
