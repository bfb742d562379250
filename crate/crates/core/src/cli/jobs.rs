use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::args::{Command, JobConfig};
use super::corpus::{DIAGRAMS, RINGS};
use super::report::{group, groups, Check, Report};
use crate::barcat::{
    bar, bar_homology, colimit_of_components, hocolim, interchange_homotopy_check, CoDiagramF, DiagramF, FinCat,
};
use crate::dkspec::omega::omega_bullet;
use crate::dkspec::ring::FinCommRing;
use crate::dkspec::sigma::adjunction_audit;
use crate::dkspec::spectrum::{em_spectrum, spectrum_homotopy_report, trivial_spectrum, StableGroup};
use crate::error::{Error, Result};
use crate::gammaunits::{
    gamma_construct, gl1_pipeline_staged, group_completion_pi0, segal_check, segal_machine_delooping, FinMonoid,
    Gl1Config, Gl1Report,
};
use crate::ispace::boxprod::check_free_product;
use crate::ispace::{box_oracle, box_product, check_fcp, compare_with_oracle, free_ispace, random_ispace, subset_fcp};
use crate::ispace::{FcpStruct, ISpace, InjCat};
use crate::linalg::{AbGroup, IsoVerdict};
use crate::sset::finsset::FinSSet;
use crate::sset::sphere::standard_sphere;
use crate::sset::traits::{check_identities, check_identities_nondegenerate, SimplicialSet};

pub fn run(job: &JobConfig) -> Report {
    match job.command {
        Command::Gl1 => run_gl1(job),
        Command::Suite => run_suite(job),
        Command::Hocolim => run_hocolim(job),
    }
}

fn parse_ring(job: &JobConfig) -> Result<Arc<FinCommRing>> {
    let text = job.ring.as_deref().ok_or_else(|| Error::Parse("no ring given".into()))?;
    FinCommRing::parse(text).map(Arc::new)
}

fn gl1_config(job: &JobConfig) -> Gl1Config {
    Gl1Config { bound: job.bound, truncation: job.truncation, n_max: job.n_max, k_max: job.k_max }
}

fn monoid_json(m: &FinMonoid) -> Value {
    json!({ "elements": m.labels, "table": m.table, "unit": m.unit, "commutative": m.commutative })
}

fn verdict_json(v: &IsoVerdict) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

pub fn gl1_results(g: &Gl1Report) -> Value {
    json!({
        "ring": g.ring,
        "omega_pi0_monoid": monoid_json(&g.omega_pi0),
        "unit_group": group(&g.unit_group),
        "units_pi0_order": g.units_pi0_order,
        "units_completion": group(&g.units_completion),
        "gamma_completion": group(&g.gamma_completion),
        "grouplike": g.grouplike,
        "gamma_levels": g.level_homology.iter().enumerate()
            .map(|(n, h)| json!({ "n": n, "homology": groups(h) }))
            .collect::<Vec<_>>(),
        "segal": g.segal.levels.iter().map(|l| json!({
            "n": l.n,
            "pi0_bijection": l.pi0_bijection,
            "homology": verdict_json(&l.homology),
            "comma_certificate": l.comma_certificate,
            "comma_objects_checked": l.comma_objects_checked,
        })).collect::<Vec<_>>(),
        "delooping": {
            "levels": g.delooping.levels,
            "valid_through": g.delooping.levels - 2,
            "homology": groups(&g.delooping.homology),
        },
        "unit_group_bar_h1": group(&g.unit_group_bar_h1),
        "functoriality": g.functoriality,
        "ordering_checks": g.ordering_checks,
        "gamma": g.gamma,
    })
}

pub fn gl1_checks(g: &Gl1Report) -> Vec<Check> {
    let h1 = g.delooping.h1().cloned().unwrap_or_default();
    let segal_witness = g.segal.levels.iter().find(|l| {
        !(l.pi0_bijection == Some(true) && l.homology.passed() && l.comma_certificate)
    });
    let mut segal = Check::new(
        "segal_maps",
        g.segal.passed(),
        json!({ "levels": g.segal.levels.len(), "k_max": g.segal.k_max }),
    );
    if let Some(l) = segal_witness {
        segal = segal.with_witness(format!("n = {}: {}", l.n, verdict_json(&l.homology)));
    }
    vec![
        Check::new(
            "units_match_brute_force",
            g.gamma_completion == g.unit_group,
            json!({ "expected": group(&g.unit_group), "computed": group(&g.gamma_completion) }),
        ),
        Check::new(
            "two_path_agreement",
            g.units_completion == g.gamma_completion,
            json!({ "units_fcp": group(&g.units_completion), "group_completion_pi0": group(&g.gamma_completion) }),
        ),
        Check::new("grouplike", g.grouplike, json!(g.grouplike)),
        segal,
        Check::new(
            "delooping_h1_matches_bar",
            g.delooping_agrees(),
            json!({ "delooping": group(&h1), "bar_of_unit_group": group(&g.unit_group_bar_h1) }),
        ),
        Check::new("functoriality_audit", true, json!({ "composites": g.functoriality.composites })),
        Check::new("ordering_independence", true, json!({ "components_compared": g.ordering_checks })),
    ]
}

fn run_gl1(job: &JobConfig) -> Report {
    let mut r = Report::new(job);
    let ring = match parse_ring(job) {
        Ok(x) => x,
        Err(e) => return r.fail("ring", &e),
    };
    match gl1_pipeline_staged(ring, gl1_config(job)) {
        Err(e) => r.fail(e.stage, &e.error),
        Ok(g) => {
            r.results = gl1_results(&g);
            for c in gl1_checks(&g) {
                r.push(c);
            }
            r.finish()
        }
    }
}

fn homotopy_json(h: &[StableGroup]) -> Value {
    Value::Array(
        h.iter()
            .enumerate()
            .map(|(k, g)| match g {
                StableGroup::Stable { group: g, from_level } => {
                    json!({ "degree": k, "group": group(g), "stable_from_level": from_level })
                }
                StableGroup::NotStabilized { reason } => json!({ "degree": k, "not_stabilized": reason }),
            })
            .collect(),
    )
}

fn hocolim_of(job: &JobConfig, x: &DiagramF, r: &mut Report) -> Result<Value> {
    let c = x.base().clone();
    let b = hocolim(&c, x, job.truncation)?;
    let top = job.k_max + 1;
    let identities = check_identities_nondegenerate(&b, top).map_err(Error::from)?;
    let homology = bar_homology(&b, job.k_max)?;
    let components = b.components()?;
    let oracle = colimit_of_components(x)?;
    r.push(Check::new("components_match_colimit", components == oracle, json!({ "hocolim": components, "colimit": oracle })));
    r.push(Check::new("simplicial_identities", true, json!({ "simplices_checked": identities, "through": top })));
    Ok(json!({
        "category": { "objects": c.n_obj(), "morphisms": c.n_mor() },
        "components": components,
        "homology": groups(&homology),
        "nondegenerate_simplices": (0..=top).map(|k| b.nondegenerate(k).map(|v| v.len())).collect::<Result<Vec<_>>>()?,
    }))
}

fn run_hocolim(job: &JobConfig) -> Report {
    let mut r = Report::new(job);
    if let Some(path) = &job.diagram {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return r.fail("read_diagram", &Error::Parse(format!("{}: {e}", path.display()))),
        };
        let x = match serde_json::from_str::<Value>(&text).map_err(|e| Error::Parse(e.to_string())).and_then(|v| DiagramF::from_json(&v)) {
            Ok(x) => x,
            Err(e) => return r.fail("parse_diagram", &e),
        };
        return match hocolim_of(job, &x, &mut r) {
            Ok(v) => {
                r.results = v;
                r.finish()
            }
            Err(e) => r.fail("hocolim", &e),
        };
    }
    let ring = match parse_ring(job) {
        Ok(x) => x,
        Err(e) => return r.fail("ring", &e),
    };
    let hr = match em_spectrum(ring.clone(), job.bound) {
        Ok(x) => x,
        Err(e) => return r.fail("em_spectrum", &e),
    };
    let omega = match omega_bullet(&hr) {
        Ok(x) => x,
        Err(e) => return r.fail("omega_bullet", &e),
    };
    let mut v = match hocolim_of(job, omega.space.diagram(), &mut r) {
        Ok(v) => v,
        Err(e) => return r.fail("hocolim", &e),
    };
    match spectrum_homotopy_report(&hr.spectrum, job.k_max) {
        Ok(h) => v["spectrum_homotopy"] = homotopy_json(&h),
        Err(e) => return r.fail("spectrum_homotopy", &e),
    }
    v["input"] = json!(format!("Ω•H{}", ring.name()));
    r.results = v;
    r.finish()
}

/// One suite entry: a name and a check that either passes with details or
/// fails with a witness.
type SuiteCase = (&'static str, Box<dyn Fn(&JobConfig) -> Result<(bool, Value, Option<String>)>>);

fn pass(v: Value) -> Result<(bool, Value, Option<String>)> {
    Ok((true, v, None))
}

fn sset_identities(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let mut checked = 0;
    for n in 0..=3 {
        checked += check_identities(&standard_sphere(n).space, job.truncation).map_err(Error::from)?;
    }
    checked += check_identities(&crate::ispace::surrogate::double_cover_circle(), job.truncation).map_err(Error::from)?;
    pass(json!({ "simplices_checked": checked, "through": job.truncation }))
}

fn bar_identities(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let mut checked = 0;
    for d in &DIAGRAMS {
        let x = (d.build)()?;
        checked += check_identities(&hocolim(x.base(), &x, job.truncation)?, job.truncation).map_err(Error::from)?;
    }
    let c = InjCat::new(2)?.cat().clone();
    let b = bar(&CoDiagramF::represented(c.clone(), 2)?, &c, &DiagramF::represented(c.clone(), 0)?, job.truncation)?;
    checked += check_identities(&b, job.truncation).map_err(Error::from)?;
    pass(json!({ "simplices_checked": checked, "through": job.truncation }))
}

fn interchange(_job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let c = InjCat::new(2)?.cat().clone();
    let mut relations = 0;
    let pairs = [
        (CoDiagramF::point(c.clone()), DiagramF::point(c.clone())),
        (CoDiagramF::point(c.clone()), DiagramF::represented(c.clone(), 0)?),
        (CoDiagramF::represented(c.clone(), 2)?, DiagramF::represented(c.clone(), 1)?),
    ];
    for (y, x) in &pairs {
        relations += interchange_homotopy_check(y, &c, x, 3)?.relations_checked;
    }
    pass(json!({ "category": "𝕀≤2", "q_max": 3, "instances": pairs.len(), "relations_checked": relations }))
}

fn corrupted_composition(_job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let c = Arc::new(FinCat::cyclic_group(3).with_composition_override(1, 1, 0));
    let rejected = c.validate().is_err();
    match interchange_homotopy_check(&CoDiagramF::point(c.clone()), &c, &DiagramF::point(c.clone()), 2) {
        Err(e @ Error::IdentityViolation { .. }) => {
            Ok((rejected, json!({ "expected": "IdentityViolation", "observed": "IdentityViolation" }), Some(e.to_string())))
        }
        Err(e) => Ok((false, json!({ "expected": "IdentityViolation", "observed": super::report::error_kind(&e) }), Some(e.to_string()))),
        Ok(_) => Ok((false, json!({ "expected": "IdentityViolation", "observed": "pass" }), None)),
    }
}

fn transposed_twist(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let s = subset_fcp(Arc::new(InjCat::new(job.bound.min(3))?), true)?;
    match check_fcp(&s, false) {
        Err(Error::LawViolation { law, witness }) => {
            Ok((law == "commutativity", json!({ "expected": "commutativity", "observed": law }), Some(witness)))
        }
        other => Ok((false, json!({ "expected": "commutativity", "observed": format!("{other:?}") }), None)),
    }
}

fn fcp_laws(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let base = Arc::new(InjCat::new(job.bound.min(3))?);
    let a = check_fcp(&subset_fcp(base.clone(), false)?, false)?;
    let b = check_fcp(&FcpStruct::terminal(base), false)?;
    pass(json!({ "subsets": a.checks, "terminal": b.checks }))
}

pub const BOX_PAIRS: usize = 20;

fn box_vs_oracle(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let n = job.bound.min(4);
    let base = Arc::new(InjCat::new(n)?);
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let mut matched = Vec::with_capacity(BOX_PAIRS);
    for i in 0..BOX_PAIRS {
        let x = random_ispace(&mut rng, &base)?;
        let y = random_ispace(&mut rng, &base)?;
        match compare_with_oracle(&box_product(&x, &y)?, &box_oracle(&x, &y)?) {
            Ok(m) => matched.push(m),
            Err(e) => return Ok((false, json!({ "pair": i, "N": n }), Some(e.to_string()))),
        }
    }
    pass(json!({ "N": n, "seed": job.seed, "pairs": BOX_PAIRS, "simplices_matched": matched }))
}

fn free_products(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let n = job.bound.min(4);
    let base = Arc::new(InjCat::new(n)?);
    let mut cases = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            cases.push(json!({ "m": a, "n": b, "matched": check_free_product(a, b, &base)? }));
        }
    }
    pass(json!({ "N": n, "cases": cases }))
}

fn terminal_segal(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let x = FcpStruct::terminal(Arc::new(InjCat::new(job.bound.min(2))?));
    let h = gamma_construct(&x, job.n_max, job.truncation)?;
    let segal = segal_check(&h, job.k_max)?;
    let d = segal_machine_delooping(&h, job.truncation.min(job.n_max))?;
    let g = group_completion_pi0(&h)?;
    let acyclic = d.homology.iter().enumerate().all(|(k, g)| *g == if k == 0 { AbGroup::free(1) } else { AbGroup::zero() });
    let ok = segal.passed() && acyclic && g.completion.order == 1;
    Ok((ok, json!({ "segal_levels": segal.levels.len(), "delooping": groups(&d.homology) }), None))
}

fn group_completion_oracle(_job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let z4 = FinMonoid::multiplicative(&FinCommRing::parse("Z/4")?).group_completion()?;
    let f5 = FinMonoid::multiplicative(&FinCommRing::parse("F5")?);
    let units = f5.unit_group()?;
    let ok = z4.order == 1 && !z4.grouplike && units == AbGroup::cyclic(4);
    Ok((ok, json!({ "Z/4 multiplicative": group(&z4.group), "F5 units": group(&units) }), None))
}

/// Hom-set bijection audit on every corpus ring against the point and the
/// free I-spaces on a point; each hom-set is a copy of the ring.
fn adjunction(_job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let pt = Arc::new(FinSSet::point());
    let mut rows = Vec::new();
    let mut witness = None;
    let sources: Vec<(&str, ISpace, usize)> = vec![
        ("*", ISpace::point(Arc::new(InjCat::new(2)?)), 2),
        ("F₀(*)", free_ispace(0, pt.clone(), Arc::new(InjCat::new(1)?))?, 1),
        ("F₁(*)", free_ispace(1, pt.clone(), Arc::new(InjCat::new(2)?))?, 2),
    ];
    for ring in RINGS {
        let r = Arc::new(FinCommRing::parse(ring)?);
        for (name, x, n) in &sources {
            let e = em_spectrum(r.clone(), *n)?;
            let a = adjunction_audit(x, &e.spectrum)?;
            let counts = [a.spectrum_maps, a.ispace_maps, a.round_trips];
            if witness.is_none() && counts != [r.len(); 3] {
                witness = Some(format!("{name} → H{ring}: counts {counts:?}, expected {}", r.len()));
            }
            rows.push(json!({ "source": name, "target": format!("H{ring}"), "N": n, "audit": a }));
        }
    }
    let a = adjunction_audit(&sources[2].1, &trivial_spectrum(2)?.spectrum)?;
    if witness.is_none() && (a.spectrum_maps, a.ispace_maps, a.round_trips) != (1, 1, 1) {
        witness = Some(format!("F₁(*) → 0: {a:?}"));
    }
    rows.push(json!({ "source": "F₁(*)", "target": "trivial", "N": 2, "audit": a }));
    Ok((witness.is_none(), Value::Array(rows), witness))
}

fn ring_cases(job: &JobConfig) -> Result<(bool, Value, Option<String>)> {
    let ring = parse_ring(job)?;
    let cfg = gl1_config(job);
    let g = gl1_pipeline_staged(ring.clone(), cfg).map_err(|e| e.error)?;
    let failed: Vec<String> = gl1_checks(&g).into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
    let wider = Gl1Config { truncation: cfg.truncation + 1, ..cfg };
    let g2 = gl1_pipeline_staged(ring, wider).map_err(|e| e.error)?;
    let stable = truncation_stable(&g, &g2);
    let ok = failed.is_empty() && stable;
    let witness = (!ok).then(|| format!("failed checks: {failed:?}; stable under D+1: {stable}"));
    Ok((ok, json!({ "gl1": gl1_results(&g), "stable_under_D_plus_1": stable }), witness))
}

/// In-range values of a gl₁ run are unchanged when the truncation grows.
pub fn truncation_stable(a: &Gl1Report, b: &Gl1Report) -> bool {
    a.level_homology == b.level_homology
        && a.segal.levels == b.segal.levels
        && a.delooping.homology == b.delooping.homology
        && a.gamma_completion == b.gamma_completion
        && a.units_completion == b.units_completion
}

fn cases(job: &JobConfig) -> Vec<SuiteCase> {
    let mut v: Vec<SuiteCase> = vec![
        ("sset_identities", Box::new(sset_identities)),
        ("bar_identities", Box::new(bar_identities)),
        ("interchange_homotopy", Box::new(interchange)),
        ("corrupted_composition_control", Box::new(corrupted_composition)),
        ("fcp_laws", Box::new(fcp_laws)),
        ("transposed_twist_control", Box::new(transposed_twist)),
        ("box_vs_oracle", Box::new(box_vs_oracle)),
        ("free_products", Box::new(free_products)),
        ("terminal_gamma_space", Box::new(terminal_segal)),
        ("group_completion", Box::new(group_completion_oracle)),
        ("adjunction_audit", Box::new(adjunction)),
    ];
    if job.ring.is_some() {
        v.push(("ring_pipeline", Box::new(ring_cases)));
    }
    v
}

fn run_suite(job: &JobConfig) -> Report {
    let mut r = Report::new(job);
    let mut names = Vec::new();
    for (name, case) in cases(job) {
        names.push(name);
        let c = match case(job) {
            Ok((passed, detail, witness)) => {
                let c = Check::new(name, passed, detail);
                match witness {
                    Some(w) => c.with_witness(w),
                    None => c,
                }
            }
            Err(e) => Check::new(name, false, json!({ "error": super::report::error_kind(&e) })).with_witness(e.to_string()),
        };
        r.push(c);
    }
    r.results = json!({ "cases": names });
    r.finish()
}
