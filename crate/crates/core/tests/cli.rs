use std::path::PathBuf;
use std::process::{Command, Output};

fn gammaspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammaspec"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .env_remove("GAMMASPEC_N")
        .env_remove("GAMMASPEC_D")
        .env_remove("GAMMASPEC_KMAX")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gammaspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for p in [&a, &b] {
        let out = gammaspec(&["gl1", "--ring", "Z/6", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(!text.contains("elapsed"));
    assert!(text.contains("\"seed\": 42"));
}

#[test]
fn summary_and_timing_go_to_stdout() {
    let out = gammaspec(&["hocolim", "--diagram", "corpus/diagrams/circle_constant.json"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("H1 = Z"), "{stdout}");
    assert!(stdout.contains("elapsed"));
    assert!(stdout.trim_end().lines().nth_back(1) == Some("PASS"));
}

#[test]
fn truncation_errors_exit_with_two_and_name_the_stage() {
    let out = gammaspec(&["gl1", "--ring", "F5", "-D", "2", "--kmax", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("segal_machine_delooping"));

    let out = gammaspec(&["gl1", "--ring", "F5", "--kmax", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("D − 2"));

    assert_eq!(gammaspec(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn environment_overrides_flags_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_gammaspec"))
        .args(["gl1", "--ring", "F5"])
        .env("GAMMASPEC_KMAX", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn default_suite_passes() {
    let out = gammaspec(&["suite"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
