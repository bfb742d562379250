use std::sync::Arc;

use super::*;
use crate::linalg::AbGroup;
use crate::sset::finsset::FinSSet;
use crate::sset::sphere::standard_sphere;
use crate::sset::traits::{check_identities, check_identities_nondegenerate, SimplicialSet};

fn z() -> AbGroup {
    AbGroup::free(1)
}

fn zero() -> AbGroup {
    AbGroup::zero()
}

fn chain3() -> Arc<FinCat> {
    Arc::new(FinCat::poset(3, |i, j| i <= j).unwrap())
}

#[test]
fn nerve_of_terminal_is_point() {
    let n = nerve(&Arc::new(FinCat::terminal()), 3).unwrap();
    assert_eq!(n.counts(), &[1, 0, 0, 0]);
}

#[test]
fn nerve_of_cyclic_group_of_order_two() {
    let c = Arc::new(FinCat::cyclic_group(2));
    let b = hocolim(&c, &DiagramF::point(c.clone()), 4).unwrap();
    let h = bar_homology(&b, 3).unwrap();
    assert_eq!(h, vec![z(), AbGroup::cyclic(2), zero(), AbGroup::cyclic(2)]);
    let n = nerve(&c, 4).unwrap();
    assert_eq!(n.counts(), &[1, 1, 1, 1, 1]);
}

#[test]
fn nerve_with_initial_object_is_acyclic() {
    let c = Arc::new(FinCat::poset(4, |i, j| i == j || i == 0 || (i == 1 && j == 3)).unwrap());
    let b = hocolim(&c, &DiagramF::point(c.clone()), 4).unwrap();
    assert_eq!(bar_homology(&b, 2).unwrap(), vec![z(), zero(), zero()]);
}

#[test]
fn bar_over_terminal_is_the_diagram() {
    let c = Arc::new(FinCat::terminal());
    let s2 = Arc::new(standard_sphere(2).space);
    let x = DiagramF::constant(c.clone(), s2.clone());
    let b = hocolim(&c, &x, 3).unwrap();
    for k in 0..=3 {
        assert_eq!(b.nondegenerate(k).unwrap().len(), s2.nondeg_count(k));
    }
    assert_eq!(bar_homology(&b, 2).unwrap(), vec![z(), zero(), z()]);
}

#[test]
fn bar_with_point_modules_is_the_nerve() {
    let c = chain3();
    let b = bar(&CoDiagramF::point(c.clone()), &c, &DiagramF::point(c.clone()), 3).unwrap();
    let n = nerve(&c, 3).unwrap();
    for k in 0..=3 {
        assert_eq!(b.nondegenerate(k).unwrap().len(), n.nondeg_count(k));
    }
}

#[test]
fn represented_functor_collapses() {
    let c = Arc::new(FinCat::cyclic_group(3));
    let x = DiagramF::represented(c.clone(), 0).unwrap();
    let b = hocolim(&c, &x, 4).unwrap();
    assert_eq!(bar_homology(&b, 2).unwrap(), vec![z(), zero(), zero()]);
    let p = chain3();
    let y = DiagramF::represented(p.clone(), 1).unwrap();
    assert_eq!(bar_homology(&hocolim(&p, &y, 4).unwrap(), 2).unwrap(), vec![z(), zero(), zero()]);
}

#[test]
fn identities_hold_through_truncation() {
    let c = Arc::new(FinCat::cyclic_group(2));
    let s1 = Arc::new(standard_sphere(1).space);
    let x = DiagramF::constant(c.clone(), s1);
    let y = CoDiagramF::discrete(c.clone(), &[2], |m, v| if m == 1 { 1 - v } else { v }).unwrap();
    let b = bar(&y, &c, &x, 3).unwrap();
    check_identities(&b, 3).unwrap();
    check_identities_nondegenerate(&b, 3).unwrap();
}

#[test]
fn simplex_counts_match_chain_enumeration() {
    let c = chain3();
    let x = DiagramF::constant(c.clone(), Arc::new(standard_sphere(1).space));
    let y = CoDiagramF::represented(c.clone(), 2).unwrap();
    let b = bar(&y, &c, &x, 3).unwrap();
    for q in 0..=3 {
        assert_eq!(b.simplices(q).unwrap().len(), b.simplex_count(q), "degree {q}");
    }
}

#[test]
fn components_match_colimit() {
    let c = Arc::new(FinCat::cyclic_group(2));
    let swap = DiagramF::discrete(c.clone(), &[4], |m, v| if m == 1 { v ^ 1 } else { v }).unwrap();
    let b = hocolim(&c, &swap, 2).unwrap();
    assert_eq!(b.components().unwrap(), 2);
    assert_eq!(colimit_of_components(&swap).unwrap(), 2);
    let two = DiagramF::constant(chain3(), Arc::new(FinSSet::discrete(2)));
    assert_eq!(hocolim(&chain3(), &two, 2).unwrap().components().unwrap(), 2);
}

#[test]
fn truncation_is_stable() {
    let c = Arc::new(FinCat::cyclic_group(2));
    let x = DiagramF::point(c.clone());
    let h4 = bar_homology(&hocolim(&c, &x, 4).unwrap(), 2).unwrap();
    let h5 = bar_homology(&hocolim(&c, &x, 5).unwrap(), 2).unwrap();
    assert_eq!(h4, h5);
}

#[test]
fn mismatched_base_is_rejected() {
    let c = chain3();
    let other = Arc::new(FinCat::terminal());
    let r = hocolim(&c, &DiagramF::point(other), 2);
    assert!(matches!(r, Err(crate::Error::MismatchedBase)));
}

#[test]
fn identity_functor_induces_identity() {
    let c = chain3();
    let f = FinFunctor::identity(c.clone());
    let x = DiagramF::constant(c.clone(), Arc::new(FinSSet::discrete(2)));
    let m = induced_hocolim_map(&f, &x, 3).unwrap();
    for k in 0..=3 {
        for s in m.source.nondegenerate(k).unwrap() {
            assert_eq!(m.apply(&s), s);
        }
    }
    assert!(m.equivalence(1).unwrap().passed());
}

#[test]
fn inclusion_of_initial_object_is_an_equivalence() {
    let c = chain3();
    let point = Arc::new(FinCat::terminal());
    let f = FinFunctor::new(point, c.clone(), vec![0], vec![c.id(0)]).unwrap();
    let x = DiagramF::represented(c.clone(), 0).unwrap();
    let m = induced_hocolim_map(&f, &x, 3).unwrap();
    let v = m.equivalence(1).unwrap();
    assert!(v.passed(), "{v:?}");
    // a non-cofinal inclusion is detected
    let two = Arc::new(FinCat::poset(2, |i, j| i == j).unwrap());
    let g = FinFunctor::new(two, c.clone(), vec![1, 2], vec![c.id(1), c.id(2)]).unwrap();
    let v = induced_hocolim_map(&g, &DiagramF::point(c.clone()), 3).unwrap().equivalence(1).unwrap();
    assert!(!v.passed());
}

#[test]
fn explicit_map_agrees_with_lazy_map() {
    let c = chain3();
    let f = FinFunctor::identity(c.clone());
    let m = induced_hocolim_map(&f, &DiagramF::point(c.clone()), 2).unwrap();
    let (a, b, s) = m.to_smap().unwrap();
    assert_eq!(a.set.counts(), b.set.counts());
    assert!(s.same_as(&crate::sset::SMap::identity(a.set.clone())));
}

#[test]
fn serialized_bar_has_provenance() {
    let c = chain3();
    let b = hocolim(&c, &DiagramF::point(c.clone()), 2).unwrap().named("*", "chain", "*");
    let v = b.to_json().unwrap();
    assert_eq!(v["provenance"]["truncation"], 2);
    assert_eq!(v["provenance"]["model"], bar::DIAGONAL_MODEL);
    assert!(FinSSet::from_json(&v).is_ok());
}
