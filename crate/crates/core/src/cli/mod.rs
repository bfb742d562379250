//! Command-line front end: `gl1`, `suite` and `hocolim`.
//!
//! Every job produces a deterministic JSON report (written with `--out`)
//! and a short human-readable summary on standard output, which is also
//! the only place timing appears.

pub mod args;
pub mod corpus;
pub mod jobs;
pub mod report;

use std::time::Instant;

use clap::Parser;
use itertools::Itertools;

pub use args::{Cli, Command, JobConfig};
pub use report::{Check, Report, SCHEMA};

/// Renders the summary printed after a job.
pub fn summary(r: &Report) -> String {
    let job = &r.job;
    let input = job
        .ring
        .clone()
        .or_else(|| job.diagram.as_ref().map(|p| p.display().to_string()))
        .unwrap_or_else(|| "built-in cases".into());
    let mut out = format!(
        "{} {input}  (N = {}, D = {}, n_max = {}, k_max = {}, seed = {})\n",
        format!("{:?}", job.command).to_lowercase(),
        job.bound,
        job.truncation,
        job.n_max,
        job.k_max,
        job.seed
    );
    for c in &r.checks {
        out += &format!("  {:<4} {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        if let Some(w) = &c.witness {
            out += &format!("  [{w}]");
        }
        out.push('\n');
    }
    if let Some(f) = &r.failure {
        out += &format!("  error in stage {}: {} ({})\n", f.stage, f.message, f.kind);
    }
    let highlights = highlights(r);
    if !highlights.is_empty() {
        out += &format!("  {}\n", highlights.iter().join("; "));
    }
    out += if r.passed { "PASS" } else { "FAIL" };
    out
}

fn highlights(r: &Report) -> Vec<String> {
    let v = &r.results;
    let show = |x: &serde_json::Value| match x.as_array() {
        Some(a) if a.is_empty() => "0".to_string(),
        Some(a) => a.iter().filter_map(|s| s.as_str()).join(" + "),
        None => x.to_string(),
    };
    let mut out = Vec::new();
    if let Some(g) = v.get("unit_group") {
        out.push(format!("units {}", show(g)));
    }
    if let Some(h) = v.pointer("/delooping/homology/1") {
        out.push(format!("delooping H₁ = {}", show(h)));
    }
    if let Some(h) = v.get("homology").and_then(|h| h.as_array()) {
        out.push(h.iter().enumerate().map(|(k, g)| format!("H{k} = {}", show(g))).join(", "));
    }
    if let Some(c) = v.get("components") {
        out.push(format!("{c} components"));
    }
    out
}

/// Runs the command line and returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let job = match JobConfig::from_cli(cli) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return 2;
        }
    };
    let start = Instant::now();
    let report = jobs::run(&job);
    if let Some(path) = &job.out {
        if let Err(e) = std::fs::write(path, report.to_json_string()) {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    println!("{}", summary(&report));
    println!("elapsed {:.2} s", start.elapsed().as_secs_f64());
    report.exit_code()
}
