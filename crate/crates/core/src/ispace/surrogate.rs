//! Computable stand-ins for stable equivalences and fibrancy of 𝕀-spaces:
//! maps are compared through π₀ and integral homology, of homotopy
//! colimits for equivalences and of single levels for fibrancy.

use std::sync::Arc;

use serde::Serialize;

use crate::barcat::{hocolim, DiagramF, EquivalenceVerdict, FinCat, FinFunctor, HocolimMap};
use crate::error::{Error, Result};
use crate::linalg::{homology_iso, IsoVerdict};
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::pi0::pi0;
use crate::sset::traits::{induced_chain_map, normalized_chains};

use super::space::{ISpace, ISpaceMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    OutOfRange,
}

/// Outcome of [`stable_equiv_surrogate`] with the range it speaks for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurrogateReport {
    pub verdict: Verdict,
    pub truncation: usize,
    pub k_max: usize,
    pub valid_through: usize,
    pub pi0_bijection: Option<bool>,
    pub homology: IsoVerdict,
}

fn classify(v: &EquivalenceVerdict) -> Verdict {
    if v.out_of_range() {
        Verdict::OutOfRange
    } else if v.passed() {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Tests whether `hocolim f` is a π₀-bijection and an `H_k`-isomorphism for
/// `k ≤ k_max`, with homotopy colimits truncated at simplicial degree `d`.
pub fn stable_equiv_surrogate(f: &ISpaceMap, d: usize, k_max: usize) -> Result<SurrogateReport> {
    if k_max + 2 > d {
        return Err(Error::TruncationTooSmall(format!("k_max = {k_max} needs D ≥ {}, got D = {d}", k_max + 2)));
    }
    let cat = f.source.base().cat().clone();
    let source = hocolim(&cat, f.source.diagram(), d)?;
    let target = hocolim(&cat, f.target.diagram(), d)?;
    let map = HocolimMap::new(source, target, FinFunctor::identity(cat), f.components.clone())?;
    let v = map.equivalence(k_max)?;
    Ok(SurrogateReport {
        verdict: classify(&v),
        truncation: d,
        k_max,
        valid_through: d - 2,
        pi0_bijection: v.pi0_bijection,
        homology: v.homology,
    })
}

/// π₀ and homology comparison for a single simplicial map of finite
/// simplicial sets.
pub fn map_equivalence(f: &SMap, k_max: usize) -> Result<EquivalenceVerdict> {
    let (x, y) = (f.source.as_ref(), f.target.as_ref());
    let (px, py) = (pi0(x)?, pi0(y)?);
    let mut image: Vec<u32> = px.vertices.iter().map(|v| py.component_of(y, &f.apply(v))).collect();
    // one entry per source component
    let mut per_component = vec![u32::MAX; px.count];
    for (i, &c) in px.vertex_component.iter().enumerate() {
        per_component[c as usize] = image[i];
    }
    image = per_component;
    image.sort_unstable();
    image.dedup();
    let bijection = image.len() == px.count && px.count == py.count;
    let top = k_max + 1;
    let a = normalized_chains(x, top)?;
    let b = normalized_chains(y, top)?;
    let m = induced_chain_map::<FinSSet, FinSSet, _>(&a, &b, y, top, |s: &FinSimplex| f.apply(s))?;
    let homology = homology_iso(&m, &a.complex, &b.complex, k_max)?;
    Ok(EquivalenceVerdict { pi0_bijection: Some(bijection), homology })
}

/// True iff every generating injection (adjacent transpositions and the
/// inclusions `n → n+1`) induces a π₀-bijection and `H_k`-isomorphisms for
/// `k ≤ k_max`.
pub fn fibrant_surrogate(x: &ISpace, k_max: usize) -> Result<bool> {
    fibrant_surrogate_with(x, k_max, false)
}

/// [`fibrant_surrogate`] restricted to levels `≥ 1` when `positive`.
pub fn fibrant_surrogate_with(x: &ISpace, k_max: usize, positive: bool) -> Result<bool> {
    for g in x.base().generators(positive) {
        if !map_equivalence(x.map(g), k_max)?.passed() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The inclusion `X(d) → hocolim X` as the map of homotopy colimits induced
/// by the functor from the terminal category picking out `d`.
pub fn level_inclusion(x: &ISpace, d: usize, truncation: usize) -> Result<HocolimMap> {
    if d > x.bound() {
        return Err(Error::ObjectOutOfRange(d));
    }
    let pt = Arc::new(FinCat::terminal());
    let cat = x.base().cat().clone();
    let functor = FinFunctor::new(pt.clone(), cat.clone(), vec![d as u32], vec![x.base().identity(d)])?;
    let source = hocolim(&pt, &DiagramF::constant(pt.clone(), x.level(d).clone()), truncation)?;
    let target = hocolim(&cat, x.diagram(), truncation)?;
    HocolimMap::new(source, target, functor, vec![Arc::new(SMap::identity(x.level(d).clone()))])
}

/// The circle with two vertices and two edges.
pub fn double_cover_circle() -> FinSSet {
    let mut b = FinSSet::builder();
    b.add_vertex();
    b.add_vertex();
    b.add(&[FinSimplex::vertex(1), FinSimplex::vertex(0)]);
    b.add(&[FinSimplex::vertex(0), FinSimplex::vertex(1)]);
    b.build().expect("two-gon")
}

/// The constant map of 𝕀-spaces wrapping the two-edge circle twice around
/// the one-edge circle: an isomorphism on π₀ but multiplication by 2 on
/// `H₁`.
pub fn double_cover_map(base: Arc<super::InjCat>) -> Result<ISpaceMap> {
    let c2 = Arc::new(double_cover_circle());
    let s1 = Arc::new(crate::sset::sphere::standard_sphere(1).space);
    let cover = Arc::new(SMap::from_fn(c2.clone(), s1.clone(), |s| {
        if s.dim() == 0 {
            FinSimplex::vertex(0)
        } else {
            FinSimplex::nondeg(1, 0)
        }
    })?);
    let source = ISpace::constant(base.clone(), c2);
    let target = ISpace::constant(base.clone(), s1);
    ISpaceMap::new(source, target, base.objects().map(|_| cover.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ispace::{free_ispace, InjCat};

    fn base(n: usize) -> Arc<InjCat> {
        Arc::new(InjCat::new(n).unwrap())
    }

    #[test]
    fn identity_and_collapse_pass() {
        let b = base(2);
        let f1 = free_ispace(1, Arc::new(FinSSet::point()), b.clone()).unwrap();
        let r = stable_equiv_surrogate(&ISpaceMap::identity(&f1), 3, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let f0 = free_ispace(0, Arc::new(FinSSet::point()), b).unwrap();
        let r = stable_equiv_surrogate(&ISpaceMap::to_point(&f0), 3, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn double_cover_fails_on_h1() {
        let f = double_cover_map(base(2)).unwrap();
        let r = stable_equiv_surrogate(&f, 3, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.pi0_bijection, Some(true));
        assert!(matches!(r.homology, IsoVerdict::Fail { degree: 1, .. }));
    }

    #[test]
    fn truncation_is_enforced() {
        let b = base(2);
        let e = stable_equiv_surrogate(&ISpaceMap::identity(&ISpace::point(b)), 3, 2).unwrap_err();
        assert!(matches!(e, Error::TruncationTooSmall(_)));
    }

    #[test]
    fn fibrancy_examples() {
        let b = base(3);
        let s1 = Arc::new(crate::sset::sphere::standard_sphere(1).space);
        assert!(fibrant_surrogate(&ISpace::constant(b.clone(), s1), 2).unwrap());
        let f1 = free_ispace(1, Arc::new(FinSSet::point()), b.clone()).unwrap();
        assert!(!fibrant_surrogate(&f1, 0).unwrap());
        // F₁(*) is fibrant in no positive sense either: 1 → 2 is not onto π₀
        assert!(!fibrant_surrogate_with(&f1, 0, true).unwrap());
    }

    #[test]
    fn fibrant_levels_include_into_the_hocolim() {
        let b = base(2);
        let s1 = Arc::new(crate::sset::sphere::standard_sphere(1).space);
        let x = ISpace::constant(b, s1);
        for d in 0..=2 {
            let v = level_inclusion(&x, d, 3).unwrap().equivalence(1).unwrap();
            assert!(v.passed(), "level {d}: {v:?}");
        }
    }
}
