//! The box product of 𝕀-spaces.
//!
//! `(X_1 ⊠ ⋯ ⊠ X_r)(m)` is computed as the coequalizer of
//! `∐ 𝕀(a_1 + ⋯ + a_r, m) × X_1(a_1) × ⋯ × X_r(a_r)` by the relations
//! `(ψ ∘ (f_1 ⊕ ⋯ ⊕ f_r), x) ~ (ψ, f_* x)`, imposed for generating
//! injections only (adjacent transpositions and `ι`).  The oracle computes
//! the same colimit over the full comma category `(⊕ ↓ m)`, using every
//! morphism and the category's own composition.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::traits::SimplicialSet;

use super::injcat::{Inj, InjCat};
use super::quotient::{check_descends_to_iso, Elements, Quotient};
use super::space::{free_ispace, ISpace};

/// `(ψ; x_1, …, x_r)` with `x_j ∈ X_j(parts[j])` and `ψ: Σ parts → m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxElem {
    pub parts: Vec<usize>,
    pub psi: Vec<usize>,
    pub xs: Vec<FinSimplex>,
}

struct Nav<'a> {
    factors: &'a [ISpace],
}

impl Elements for Nav<'_> {
    type E = BoxElem;

    fn face(&self, i: usize, e: &BoxElem) -> BoxElem {
        let xs = e.xs.iter().zip(&e.parts).zip(self.factors).map(|((x, &p), f)| f.level(p).face(i, x)).collect();
        BoxElem { parts: e.parts.clone(), psi: e.psi.clone(), xs }
    }

    fn mask(&self, e: &BoxElem) -> u32 {
        e.xs.iter().fold(u32::MAX, |m, x| m & x.deg.mask())
    }
}

/// Which relations generate the colimit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relations {
    Generators,
    CommaCategory,
}

/// A box product together with its coequalizer data.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub factors: Vec<ISpace>,
    pub space: ISpace,
    levels: Vec<Quotient<BoxElem>>,
}

fn compositions(total_max: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=total_max {
        for mut rest in compositions(total_max - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `ψ'` with `ψ' ∘ B = ψ`, for an injection `B` of the sum; one solution
/// per way of filling the positions outside the image of `B`.
fn pushforwards(psi: &[usize], block: &Inj, m: usize) -> Vec<Vec<usize>> {
    let mut fixed = vec![usize::MAX; block.tgt];
    for (i, &b) in block.values.iter().enumerate() {
        fixed[b] = psi[i];
    }
    let free: Vec<usize> = (0..block.tgt).filter(|&i| fixed[i] == usize::MAX).collect();
    let unused: Vec<usize> = (0..m).filter(|v| !psi.contains(v)).collect();
    let mut out = Vec::new();
    let mut cur = fixed;
    fn fill(j: usize, free: &[usize], unused: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == free.len() {
            out.push(cur.clone());
            return;
        }
        for &v in unused {
            if !cur.contains(&v) {
                cur[free[j]] = v;
                fill(j + 1, free, unused, cur, out);
                cur[free[j]] = usize::MAX;
            }
        }
    }
    fill(0, &free, &unused, &mut cur, &mut out);
    out
}

fn block_around(parts: &[usize], j: usize, f: &Inj) -> Inj {
    let mut acc = Inj::identity(0);
    for (i, &p) in parts.iter().enumerate() {
        let piece = if i == j { f.clone() } else { Inj::identity(p) };
        acc = acc.block_sum(&piece);
    }
    acc
}

fn build_level(factors: &[ISpace], base: &InjCat, m: usize, top: usize, rel: Relations) -> Result<Quotient<BoxElem>> {
    let nav = Nav { factors };
    let r = factors.len();
    let mut elems: Vec<Vec<BoxElem>> = vec![Vec::new(); top + 1];
    for k in 0..=top {
        let lists: Vec<Vec<Vec<FinSimplex>>> =
            factors.iter().map(|f| base.objects().map(|n| f.level(n).simplices(k)).collect::<Result<_>>()).collect::<Result<_>>()?;
        for parts in compositions(m, r) {
            let total: usize = parts.iter().sum();
            let choices: Vec<&Vec<FinSimplex>> = parts.iter().enumerate().map(|(j, &p)| &lists[j][p]).collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            for h in base.hom(total, m) {
                let psi = base.inj(h).values.clone();
                let mut idx = vec![0usize; r];
                loop {
                    let xs = (0..r).map(|j| choices[j][idx[j]]).collect();
                    elems[k].push(BoxElem { parts: parts.clone(), psi: psi.clone(), xs });
                    let mut j = 0;
                    while j < r {
                        idx[j] += 1;
                        if idx[j] < choices[j].len() {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == r {
                        break;
                    }
                }
            }
        }
    }
    let cat = base.cat();
    Quotient::build(&nav, elems, |_k, e, push| {
        let total: usize = e.parts.iter().sum();
        match rel {
            Relations::Generators => {
                for (j, &p) in e.parts.iter().enumerate() {
                    let mut gens: Vec<Inj> = (0..p.saturating_sub(1))
                        .map(|i| {
                            let mut v: Vec<usize> = (0..p).collect();
                            v.swap(i, i + 1);
                            Inj { tgt: p, values: v }
                        })
                        .collect();
                    if total < m {
                        gens.push(Inj::inclusion(p, p + 1));
                    }
                    for f in gens {
                        let block = block_around(&e.parts, j, &f);
                        let mut parts = e.parts.clone();
                        parts[j] = f.tgt;
                        let mut xs = e.xs.clone();
                        xs[j] = factors[j].act(&f).apply(&xs[j]);
                        for psi in pushforwards(&e.psi, &block, m) {
                            push(BoxElem { parts: parts.clone(), psi, xs: xs.clone() });
                        }
                    }
                }
            }
            Relations::CommaCategory => {
                let h = base.id_of(&Inj { tgt: m, values: e.psi.clone() });
                let outs: Vec<&[u32]> = e.parts.iter().map(|&p| cat.out(p as u32)).collect();
                let mut idx = vec![0usize; outs.len()];
                loop {
                    let fs: Vec<&Inj> = idx.iter().zip(&outs).map(|(&i, o)| base.inj(o[i])).collect();
                    let tgt_total: usize = fs.iter().map(|f| f.tgt).sum();
                    if tgt_total <= m {
                        let sum = fs.iter().fold(Inj::identity(0), |acc, f| acc.block_sum(f));
                        let sum_id = base.id_of(&sum);
                        for h2 in base.hom(tgt_total, m) {
                            if cat.compose(h2, sum_id) == Some(h) {
                                let xs = fs.iter().enumerate().map(|(j, f)| factors[j].act(f).apply(&e.xs[j])).collect();
                                push(BoxElem { parts: fs.iter().map(|f| f.tgt).collect(), psi: base.inj(h2).values.clone(), xs });
                            }
                        }
                    }
                    let mut j = 0;
                    while j < idx.len() {
                        idx[j] += 1;
                        if idx[j] < outs[j].len() {
                            break;
                        }
                        idx[j] = 0;
                        j += 1;
                    }
                    if j == idx.len() {
                        break;
                    }
                }
            }
        }
    })
}

fn assemble(factors: &[ISpace], rel: Relations) -> Result<BoxProduct> {
    let Some(first) = factors.first() else {
        return Err(Error::NotAFunctor("a box product needs at least one factor".into()));
    };
    let base = first.base().clone();
    if factors.iter().any(|f| f.base() != &base) {
        return Err(Error::MismatchedBase);
    }
    let top: usize = factors.iter().map(ISpace::dim_top).sum();
    let levels: Vec<Quotient<BoxElem>> =
        base.objects().map(|m| build_level(factors, &base, m, top, rel)).collect::<Result<_>>()?;
    let sets: Vec<Arc<FinSSet>> = levels.iter().map(|q| q.set.clone()).collect();
    let space = ISpace::from_fn(base.clone(), sets.clone(), |phi| {
        let (m, n) = (phi.src(), phi.tgt);
        SMap::from_fn(sets[m].clone(), sets[n].clone(), |s| {
            let rep = levels[m].representative(s.dim(), s.base);
            let moved = BoxElem { parts: rep.parts.clone(), psi: rep.psi.iter().map(|&v| phi.values[v]).collect(), xs: rep.xs.clone() };
            levels[n].class_of(s.dim(), &moved).expect("pushforward is listed")
        })
    })?;
    Ok(BoxProduct { factors: factors.to_vec(), space, levels })
}

/// `X ⊠ Y` by the coequalizer formula.
pub fn box_product(x: &ISpace, y: &ISpace) -> Result<BoxProduct> {
    assemble(&[x.clone(), y.clone()], Relations::Generators)
}

/// `X_1 ⊠ ⋯ ⊠ X_r` in one step.
pub fn box_many(factors: &[ISpace]) -> Result<BoxProduct> {
    assemble(factors, Relations::Generators)
}

/// `X ⊠ Y` as the pointwise colimit over `(⊕ ↓ m)`; for cross-checking.
pub fn box_oracle(x: &ISpace, y: &ISpace) -> Result<BoxProduct> {
    assemble(&[x.clone(), y.clone()], Relations::CommaCategory)
}

impl BoxProduct {
    pub fn level_quotient(&self, m: usize) -> &Quotient<BoxElem> {
        &self.levels[m]
    }

    /// The simplex of level `m` represented by an element.
    pub fn class(&self, m: usize, k: usize, e: &BoxElem) -> Option<FinSimplex> {
        self.levels[m].class_of(k, e)
    }

    /// A representing element of any simplex of level `m`.
    pub fn element_of(&self, m: usize, s: &FinSimplex) -> BoxElem {
        let rep = self.levels[m].representative(s.base_dim(), s.base);
        let xs = rep.xs.iter().map(|x| FinSimplex { deg: s.deg.then(x.deg), base: x.base }).collect();
        BoxElem { parts: rep.parts.clone(), psi: rep.psi.clone(), xs }
    }

    fn bound(&self) -> usize {
        self.space.bound()
    }
}

/// Number of simplices matched by a levelwise isomorphism check.
pub type Matched = usize;

/// The coequalizer and the comma-category colimit have the same classes
/// in every level and dimension, and the same 𝕀-functoriality.
pub fn compare_with_oracle(b: &BoxProduct, o: &BoxProduct) -> Result<Matched> {
    let mut total = 0;
    for m in 0..=b.bound() {
        total += check_descends_to_iso(&b.levels[m], o.space.level(m), |k, e| {
            o.class(m, k, e).ok_or_else(|| Error::BijectionFailure(format!("{e:?} is missing from the oracle")))
        })?;
    }
    let base = b.space.base();
    for phi in 0..base.n_mor() as u32 {
        let f = base.inj(phi);
        let (src, tgt) = (b.space.level(f.src()), b.space.level(f.tgt));
        for k in 0..=src.dim_top() {
            for s in 0..src.nondeg_count(k) as u32 {
                let s = FinSimplex::nondeg(k, s);
                let e = b.element_of(f.src(), &s);
                let via_box = b.element_of(f.tgt, &b.space.map(phi).apply(&s));
                let via_oracle = o.space.map(phi).apply(&o.class(f.src(), k, &e).expect("listed"));
                if o.class(f.tgt, k, &via_box) != Some(via_oracle) {
                    return Err(Error::BijectionFailure(format!("{f:?} acts differently on {e:?} (target has {} simplices)", tgt.simplex_count(k))));
                }
            }
        }
    }
    Ok(total)
}

/// `* ⊠ X ≅ X ≅ X ⊠ *` via `(ψ; pt, x) ↦ X(ψ) x`.
pub fn check_unit_law(x: &ISpace) -> Result<Matched> {
    let pt = ISpace::point(x.base().clone());
    let left = box_product(&pt, x)?;
    let right = box_product(x, &pt)?;
    let mut total = 0;
    for m in 0..=x.bound() {
        // restrict ψ to the block of the X factor
        let to_x = |slot: usize| {
            move |_k: usize, e: &BoxElem| {
                let start: usize = e.parts[..slot].iter().sum();
                let block = e.psi[start..start + e.parts[slot]].to_vec();
                Ok(x.act(&Inj { tgt: m, values: block }).apply(&e.xs[slot]))
            }
        };
        total += check_descends_to_iso(&left.levels[m], x.level(m), to_x(1))?;
        total += check_descends_to_iso(&right.levels[m], x.level(m), to_x(0))?;
    }
    Ok(total)
}

/// `F_a(*) ⊠ F_b(*) ≅ F_{a+b}(*)` via `(ψ; x, y) ↦ ψ ∘ (x ⊕ y)`.
pub fn check_free_product(a: usize, b: usize, base: &Arc<InjCat>) -> Result<Matched> {
    if a + b > base.bound() {
        return Err(Error::ObjectOutOfRange(a + b));
    }
    let pt = Arc::new(FinSSet::point());
    let fa = free_ispace(a, pt.clone(), base.clone())?;
    let fb = free_ispace(b, pt.clone(), base.clone())?;
    let fab = free_ispace(a + b, pt, base.clone())?;
    let bx = box_product(&fa, &fb)?;
    let mut total = 0;
    for m in 0..=base.bound() {
        let homs = base.hom(a + b, m);
        total += check_descends_to_iso(&bx.levels[m], fab.level(m), |_k, e| {
            let x = base.inj(base.hom(a, e.parts[0])[e.xs[0].base as usize]);
            let y = base.inj(base.hom(b, e.parts[1])[e.xs[1].base as usize]);
            let composite = Inj { tgt: m, values: e.psi.clone() }.after(&x.block_sum(y));
            let id = base.id_of(&composite);
            let pos = homs.iter().position(|&h| h == id).expect("an injection a+b → m");
            Ok(FinSimplex::vertex(pos as u32))
        })?;
    }
    Ok(total)
}

/// `(X ⊠ Y) ⊠ Z ≅ X ⊠ Y ⊠ Z ≅ X ⊠ (Y ⊠ Z)`, by flattening representatives.
pub fn check_associativity(x: &ISpace, y: &ISpace, z: &ISpace) -> Result<Matched> {
    let xy = box_product(x, y)?;
    let yz = box_product(y, z)?;
    let left = box_product(&xy.space, z)?;
    let right = box_product(x, &yz.space)?;
    let triple = box_many(&[x.clone(), y.clone(), z.clone()])?;
    let mut total = 0;
    for m in 0..=x.bound() {
        total += check_descends_to_iso(&left.levels[m], triple.space.level(m), |k, e| {
            let inner = xy.element_of(e.parts[0], &e.xs[0]);
            let chi = Inj { tgt: e.parts[0], values: inner.psi.clone() }.block_sum(&Inj::identity(e.parts[1]));
            let psi = Inj { tgt: m, values: e.psi.clone() }.after(&chi);
            let flat = BoxElem {
                parts: vec![inner.parts[0], inner.parts[1], e.parts[1]],
                psi: psi.values,
                xs: vec![inner.xs[0], inner.xs[1], e.xs[1]],
            };
            triple.class(m, k, &flat).ok_or_else(|| Error::BijectionFailure(format!("{flat:?} is not a triple element")))
        })?;
        total += check_descends_to_iso(&right.levels[m], triple.space.level(m), |k, e| {
            let inner = yz.element_of(e.parts[1], &e.xs[1]);
            let chi = Inj::identity(e.parts[0]).block_sum(&Inj { tgt: e.parts[1], values: inner.psi.clone() });
            let psi = Inj { tgt: m, values: e.psi.clone() }.after(&chi);
            let flat = BoxElem {
                parts: vec![e.parts[0], inner.parts[0], inner.parts[1]],
                psi: psi.values,
                xs: vec![e.xs[0], inner.xs[0], inner.xs[1]],
            };
            triple.class(m, k, &flat).ok_or_else(|| Error::BijectionFailure(format!("{flat:?} is not a triple element")))
        })?;
    }
    Ok(total)
}

/// `X ⊠ Y ≅ Y ⊠ X` via `(ψ; x, y) ↦ (ψ ∘ τ; y, x)` with `τ` the block twist.
pub fn check_symmetry(x: &ISpace, y: &ISpace) -> Result<Matched> {
    let xy = box_product(x, y)?;
    let yx = box_product(y, x)?;
    let mut total = 0;
    for m in 0..=x.bound() {
        total += check_descends_to_iso(&xy.levels[m], yx.space.level(m), |k, e| {
            let (a, b) = (e.parts[0], e.parts[1]);
            let psi = Inj { tgt: m, values: e.psi.clone() }.after(&Inj::twist(b, a));
            let swapped = BoxElem { parts: vec![b, a], psi: psi.values, xs: vec![e.xs[1], e.xs[0]] };
            yx.class(m, k, &swapped).ok_or_else(|| Error::BijectionFailure(format!("{swapped:?} is missing")))
        })?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::sphere::standard_sphere;

    fn base(n: usize) -> Arc<InjCat> {
        Arc::new(InjCat::new(n).unwrap())
    }

    #[test]
    fn free_products_are_free() {
        let b = base(4);
        for a in 0..=4 {
            for c in 0..=4 - a {
                check_free_product(a, c, &b).unwrap();
            }
        }
    }

    #[test]
    fn units_and_oracle_for_a_circle_diagram() {
        let b = base(2);
        let x = free_ispace(1, Arc::new(standard_sphere(1).space), b.clone()).unwrap();
        check_unit_law(&x).unwrap();
        let y = ISpace::constant(b.clone(), Arc::new(FinSSet::discrete(2)));
        let bx = box_product(&x, &y).unwrap();
        let o = box_oracle(&x, &y).unwrap();
        assert!(compare_with_oracle(&bx, &o).unwrap() > 0);
        check_symmetry(&x, &y).unwrap();
        check_associativity(&y, &x, &y).unwrap();
    }

    #[test]
    fn box_of_points_is_a_point() {
        let b = base(3);
        let pt = ISpace::point(b.clone());
        let bx = box_product(&pt, &pt).unwrap();
        for m in 0..=3 {
            assert_eq!(bx.space.level(m).counts(), &[1]);
        }
    }
}
