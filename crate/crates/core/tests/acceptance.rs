//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use gammaspec::barcat::{bar_homology, hocolim};
use gammaspec::cli::{corpus, jobs, Command, JobConfig, Report};
use gammaspec::dkspec::ring::FinCommRing;
use gammaspec::gammaunits::{gl1_pipeline_staged, Gl1Config, Gl1Report};
use gammaspec::linalg::AbGroup;

const BUDGET: Duration = Duration::from_secs(300);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

struct Run {
    ring: &'static str,
    report: Result<Gl1Report, String>,
    elapsed: Duration,
}

fn gl1(ring: &'static str, cfg: Gl1Config) -> Run {
    let start = Instant::now();
    let report = FinCommRing::parse(ring)
        .map_err(|e| e.to_string())
        .and_then(|r| gl1_pipeline_staged(Arc::new(r), cfg).map_err(|e| e.to_string()));
    Run { ring, report, elapsed: start.elapsed() }
}

fn expected_units(ring: &str) -> AbGroup {
    match ring {
        "Z/2" => AbGroup::zero(),
        "Z/4" | "Z/6" | "F2[x]/x^2" => AbGroup::cyclic(2),
        "F5" => AbGroup::cyclic(4),
        _ => unreachable!(),
    }
}

/// Applies `f` to every run and joins the per-ring verdicts.
fn over_runs(runs: &[Run], f: impl Fn(&Gl1Report) -> (bool, String)) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in runs {
        match &r.report {
            Ok(g) => {
                let (p, d) = f(g);
                ok &= p;
                parts.push(format!("{}: {d}", r.ring));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{}: error {e}", r.ring));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn suite(bound: usize) -> Report {
    let job = JobConfig {
        command: Command::Suite,
        ring: None,
        diagram: None,
        bound,
        truncation: 4,
        n_max: 3,
        k_max: 1,
        seed: 42,
        out: None,
    };
    jobs::run(&job)
}

fn suite_checks(r: &Report, names: &[&str]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        match r.checks.iter().find(|c| c.name == *name) {
            Some(c) => {
                ok &= c.passed;
                parts.push(format!("{name} {}", if c.passed { "ok" } else { "failed" }));
            }
            None => {
                ok = false;
                parts.push(format!("{name} missing"));
            }
        }
    }
    outcome(ok, parts.join(", "))
}

fn main() {
    let cfg = Gl1Config::default();
    let runs: Vec<Run> = corpus::RINGS.iter().map(|r| gl1(r, cfg)).collect();
    let suite = suite(4);
    let mut results: Vec<(&str, Outcome)> = Vec::new();

    results.push((
        "gl₁ π₀ equals the unit group of the ring",
        {
            let mut o = over_runs(&runs, |g| {
                let want = expected_units(&g.ring);
                (g.gamma_completion == want && g.unit_group == want, format!("{}", g.gamma_completion))
            });
            let slow: Vec<_> = runs.iter().filter(|r| r.elapsed >= BUDGET).map(|r| r.ring).collect();
            o.passed &= slow.is_empty();
            if !slow.is_empty() {
                o.detail += &format!("; over budget: {slow:?}");
            }
            let worst = runs.iter().map(|r| r.elapsed).max().unwrap_or_default();
            o.detail += &format!(" (slowest {:.1} s)", worst.as_secs_f64());
            o
        },
    ));

    results.push((
        "units FCP π₀ agrees with the Γ-space group completion",
        over_runs(&runs, |g| (g.pi0_agrees(), format!("{} = {}", g.units_completion, g.gamma_completion))),
    ));

    results.push((
        "Segal maps for n ≤ 3",
        over_runs(&runs, |g| {
            let covered = (0..=3).all(|n| g.segal.levels.iter().any(|l| l.n == n));
            let objects: Vec<usize> = g.segal.levels.iter().map(|l| l.comma_objects_checked).collect();
            (covered && g.segal.passed(), format!("comma objects {objects:?}"))
        }),
    ));

    results.push(("box product against the oracle", suite_checks(&suite, &["box_vs_oracle", "free_products"])));

    results.push((
        "bar identities, interchange and negative controls",
        suite_checks(
            &suite,
            &["bar_identities", "interchange_homotopy", "corrupted_composition_control", "transposed_twist_control"],
        ),
    ));

    results.push((
        "delooping H₁ equals the bar H₁ of the unit group",
        over_runs(&runs, |g| {
            let h1 = g.delooping.h1().cloned();
            let pinned = match g.ring.as_str() {
                "F5" => h1 == Some(AbGroup::cyclic(4)),
                "Z/6" => h1 == Some(AbGroup::cyclic(2)),
                _ => true,
            };
            let shown = h1.map(|h| h.to_string()).unwrap_or_else(|| "missing".into());
            (pinned && g.delooping_agrees(), format!("{shown} vs {}", g.unit_group_bar_h1))
        }),
    ));

    results.push(("adjunction audit", suite_checks(&suite, &["adjunction_audit"])));

    results.push(("recomputing at D + 1 leaves in-range values unchanged", {
        let wider = Gl1Config { truncation: cfg.truncation + 1, ..cfg };
        let mut ok = true;
        let mut parts = Vec::new();
        for r in &runs {
            let again = gl1(r.ring, wider);
            let same = matches!((&r.report, &again.report), (Ok(a), Ok(b)) if jobs::truncation_stable(a, b));
            ok &= same;
            parts.push(format!("{} {}", r.ring, if same { "stable" } else { "changed" }));
        }
        for d in &corpus::DIAGRAMS {
            let x = (d.build)().unwrap();
            let at = |t| hocolim(x.base(), &x, t).and_then(|b| bar_homology(&b, t - 2));
            let same = match (at(cfg.truncation), at(cfg.truncation + 1)) {
                (Ok(a), Ok(b)) => b.starts_with(&a),
                _ => false,
            };
            ok &= same;
            parts.push(format!("{} {}", d.name, if same { "stable" } else { "changed" }));
        }
        outcome(ok, parts.join(", "))
    }));

    let mut failures = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {}: {} — {name} ({})", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
        failures += usize::from(!o.passed);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
