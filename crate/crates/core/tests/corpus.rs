//! Runs every entry of `corpus/manifest.json` through the command-line
//! parser and job runner and compares the report byte for byte with the
//! checked-in expectation.  Set `GAMMASPEC_BLESS=1` to rewrite the
//! expectations (and the diagram files) instead.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use gammaspec::cli::{corpus, jobs, Cli, JobConfig};
use serde::Deserialize;

#[derive(Deserialize)]
struct Manifest {
    entries: Vec<Entry>,
}

#[derive(Deserialize)]
struct Entry {
    name: String,
    args: Vec<String>,
    exit: i32,
    expected: String,
}

fn workspace() -> PathBuf {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap();
    // diagram paths in the manifest are relative to the workspace root
    std::env::set_current_dir(&root).unwrap();
    root
}

fn blessing() -> bool {
    std::env::var_os("GAMMASPEC_BLESS").is_some_and(|v| v == "1")
}

fn check_file(path: &Path, actual: &str) {
    if blessing() {
        fs::write(path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{} differs from the computed output:\n{actual}", path.display());
}

#[test]
fn diagram_files_match_the_built_in_diagrams() {
    let root = workspace();
    for d in &corpus::DIAGRAMS {
        let x = (d.build)().unwrap();
        let mut text = serde_json::to_string_pretty(&x.to_json()).unwrap();
        text.push('\n');
        check_file(&root.join("corpus/diagrams").join(format!("{}.json", d.name)), &text);
    }
}

#[test]
fn reports_match_the_expected_corpus() {
    let root = workspace();
    let manifest: Manifest =
        serde_json::from_str(&fs::read_to_string(root.join("corpus/manifest.json")).unwrap()).unwrap();
    for e in &manifest.entries {
        let argv = std::iter::once("gammaspec".to_string()).chain(e.args.iter().cloned());
        let job = JobConfig::from_cli(Cli::try_parse_from(argv).unwrap()).unwrap();
        let report = jobs::run(&job);
        assert_eq!(report.exit_code(), e.exit, "{}", e.name);
        check_file(&root.join("corpus").join(&e.expected), &report.to_json_string());
    }
}
