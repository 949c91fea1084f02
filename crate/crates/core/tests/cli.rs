use std::path::Path;
use std::process::{Command, Output};

use motzkin_hankel::cli::RunReport;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motzkin-hankel"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn reports(out: &Output) -> Vec<RunReport> {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn motzkin_csv_golden() {
    let out = bin(&["motzkin", "--r", "2", "--terms", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "r,section,key,value\n2,value,0,1\n2,value,1,2\n2,value,2,5\n2,value,3,12\n2,value,4,30\n"
    );
}

#[test]
fn det_json_golden() {
    let out = bin(&["det", "--r", "4", "--n-max", "9", "--method", "both"]);
    assert_eq!(code(&out), 0);
    let rep: RunReport = serde_json::from_slice(&out.stdout).unwrap();
    let h: Vec<&str> = rep.values.iter().map(|v| v.h.as_str()).collect();
    assert_eq!(h, ["1", "1", "-2", "-18", "-1", "-1", "20", "64", "0", "0"]);
    assert_eq!(rep.period, None);
    let json = stdout(&out);
    for key in ["\"tool_version\"", "\"r\": 4", "\"values\"", "\"period\": null", "\"closed_forms\": []", "\"verification\": []"] {
        assert!(json.contains(key), "missing {key}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&bin(&["motzkin", "--r", "0"])), 2);
    assert_eq!(code(&bin(&["scan", "--r", "6..2", "--n-max", "10"])), 2);
    assert_eq!(code(&bin(&["det", "--r", "3"])), 2);
    assert_eq!(code(&bin(&["frobnicate"])), 2);
    assert_eq!(code(&bin(&["det", "--r", "3", "--n-max", "4", "--jobs", "0"])), 2);
}

#[test]
fn precision_exhaustion_exits_5() {
    let out = bin(&["det", "--r", "6", "--n-max", "60", "--precision", "6", "--max-retries", "1"]);
    assert_eq!(code(&out), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("retries"));
}

#[test]
fn truncated_backend_agrees_with_exact() {
    let exact = bin(&["det", "--r", "3", "--n-max", "25"]);
    let truncated = bin(&["det", "--r", "3", "--n-max", "25", "--precision", "8"]);
    assert_eq!(code(&truncated), 0);
    assert_eq!(exact.stdout, truncated.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--r", "2..4", "--n-max", "30", "--format", "md", "--jobs", "2"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let fresh = bin(&["det", "--r", "5", "--n-max", "40", "--cache", cache]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let cached = bin(&["det", "--r", "5", "--n-max", "40", "--cache", cache]);
    let shorter = bin(&["det", "--r", "5", "--n-max", "12", "--cache", cache]);
    let uncached = bin(&["det", "--r", "5", "--n-max", "12"]);
    assert_eq!(fresh.stdout, cached.stdout);
    assert_eq!(shorter.stdout, uncached.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = bin(&["det", "--r", "2", "--n-max", "5", "--format", "md", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("| 5 | 0 |"));
    assert!(!Path::new("report.md").exists());
}

#[test]
fn scan_reports_periods() {
    let out = bin(&["scan", "--r", "2..8", "--n-max", "60"]);
    assert_eq!(code(&out), 0);
    let periods: Vec<Option<usize>> = reports(&out).iter().map(|r| r.period).collect();
    assert_eq!(periods, [6, 3, 12, 15, 6, 21, 24].map(Some));
    assert!(reports(&out).iter().all(|r| r.values.len() == 61));
}

#[test]
fn verify_families_lists_each_target() {
    let out = bin(&["verify", "--targets", "families", "--p-max", "3"]);
    let reps = reports(&out);
    let targets: Vec<&str> = reps
        .iter()
        .flat_map(|r| r.verification.iter().map(|v| v.target.as_str()))
        .collect();
    assert_eq!(
        targets,
        [
            "family-r3-link",
            "family-r3-recursion",
            "family-r3-initial-values",
            "family-r4-link",
            "family-r4-recursion",
            "family-r4-initial-values"
        ]
    );
    let all_verified = reps.iter().all(|r| r.verification.iter().all(|v| v.status.to_string() == "verified"));
    assert_eq!(code(&out), if all_verified { 0 } else { 3 });
}

#[test]
fn verify_conjectures_small() {
    let out = bin(&["verify", "--targets", "conjectures", "--r-max", "5"]);
    let reps = reports(&out);
    assert_eq!(reps.iter().map(|r| r.r).collect::<Vec<_>>(), [2, 3, 4, 5]);
    let r4 = &reps[2];
    let sum = r4.verification.iter().find(|v| v.target == "pair-sum").unwrap();
    assert_eq!(sum.constants["r4:gamma"], "-1");
    assert_eq!(code(&out), 0);
}
