//! The category `𝕀≤N(n⁺)` of coproduct-preserving functors
//! `θ: 𝒫(n⁺) → 𝕀≤N`.
//!
//! An object is stored as a word `w` over `{1, …, n}` of length at most `N`:
//! `θ(A)` is the set of positions of `w` whose letter lies in `A`, ordered
//! by position, and `θ({i}) → θ(A)` is the inclusion of positions.  Every
//! functor satisfying the coproduct condition is isomorphic to one of these,
//! and the class is closed under precomposition with inverse images, so
//! `α ↦ α_*` is strictly functorial.  A morphism `θ → θ'` is a tuple of
//! injections `θ_i → θ'_i`; its component at `A` is read off the words.

use std::collections::HashMap;
use std::sync::Arc;

use crate::barcat::{FinCat, FinFunctor};
use crate::error::{Error, Result};
use crate::ispace::{Inj, InjCat};

/// A based map `m⁺ → n⁺`, stored as the images of `0, 1, …, m` (`0 ↦ 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasedMap {
    pub tgt: usize,
    pub values: Vec<usize>,
}

impl BasedMap {
    pub fn new(tgt: usize, values: Vec<usize>) -> Result<BasedMap> {
        if values.first() != Some(&0) || values.iter().any(|&v| v > tgt) {
            return Err(Error::InvalidCategory(format!("{values:?} is not a based map into {tgt}⁺")));
        }
        Ok(BasedMap { tgt, values })
    }

    pub fn src(&self) -> usize {
        self.values.len() - 1
    }

    pub fn identity(n: usize) -> BasedMap {
        BasedMap { tgt: n, values: (0..=n).collect() }
    }

    /// `δ_i: n⁺ → 1⁺`, sending `i` to `1` and everything else to `0`.
    pub fn projection(n: usize, i: usize) -> BasedMap {
        BasedMap { tgt: 1, values: (0..=n).map(|j| usize::from(j == i)).collect() }
    }

    /// The fold map `n⁺ → 1⁺`.
    pub fn fold(n: usize) -> BasedMap {
        BasedMap { tgt: 1, values: (0..=n).map(|j| usize::from(j > 0)).collect() }
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &BasedMap) -> BasedMap {
        BasedMap { tgt: self.tgt, values: other.values.iter().map(|&v| self.values[v]).collect() }
    }

    /// `α⁻¹(j)` for `j ≥ 1`, in increasing order.
    pub fn fibre(&self, j: usize) -> Vec<usize> {
        (1..=self.src()).filter(|&i| self.values[i] == j).collect()
    }

    /// Every based map `m⁺ → n⁺`.
    pub fn all(m: usize, n: usize) -> Vec<BasedMap> {
        let total = (n + 1).pow(m as u32);
        (0..total)
            .map(|mut code| {
                let mut values = vec![0];
                for _ in 0..m {
                    values.push(code % (n + 1));
                    code /= n + 1;
                }
                BasedMap { tgt: n, values }
            })
            .collect()
    }
}

/// `𝕀≤N(n⁺)` with its word presentation.
#[derive(Clone, Debug)]
pub struct ICatN {
    n: usize,
    base: Arc<InjCat>,
    words: Vec<Vec<u8>>,
    word_index: HashMap<Vec<u8>, u32>,
    counts: Vec<Vec<usize>>,
    cat: Arc<FinCat>,
    /// per morphism: one `InjCat` morphism per letter
    comps: Vec<Vec<u32>>,
    mor_index: HashMap<(u32, u32, Vec<u32>), u32>,
}

fn words(n: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        if n == 0 {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for j in 1..=n as u8 {
                let mut v: Vec<u8> = w.clone();
                v.push(j);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl ICatN {
    pub fn new(n: usize, base: Arc<InjCat>) -> Result<ICatN> {
        let bound = base.bound();
        let words = words(n, bound);
        let word_index: HashMap<Vec<u8>, u32> = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let counts: Vec<Vec<usize>> =
            words.iter().map(|w| (1..=n as u8).map(|j| w.iter().filter(|&&c| c == j).count()).collect()).collect();
        let mut ends = Vec::new();
        let mut comps = Vec::new();
        let mut mor_index = HashMap::new();
        let mut id = vec![0u32; words.len()];
        for (a, ca) in counts.iter().enumerate() {
            for (b, cb) in counts.iter().enumerate() {
                if ca.iter().zip(cb).any(|(x, y)| x > y) {
                    continue;
                }
                let homs: Vec<Vec<u32>> = ca.iter().zip(cb).map(|(&x, &y)| base.hom(x, y)).collect();
                let mut tuple = vec![0usize; n];
                loop {
                    let t: Vec<u32> = (0..n).map(|j| homs[j][tuple[j]]).collect();
                    let m = ends.len() as u32;
                    if a == b && t.iter().enumerate().all(|(j, &f)| f == base.identity(ca[j])) {
                        id[a] = m;
                    }
                    mor_index.insert((a as u32, b as u32, t.clone()), m);
                    ends.push((a as u32, b as u32));
                    comps.push(t);
                    // odometer over the factors
                    let mut j = 0;
                    while j < n {
                        tuple[j] += 1;
                        if tuple[j] < homs[j].len() {
                            break;
                        }
                        tuple[j] = 0;
                        j += 1;
                    }
                    if j == n {
                        break;
                    }
                }
            }
        }
        let cat = {
            let comps = &comps;
            let ends = &ends;
            let mor_index = &mor_index;
            FinCat::from_fn_unchecked(words.len(), ends.clone(), id, |g, f| {
                let t: Vec<u32> = (0..n).map(|j| base.compose(comps[g as usize][j], comps[f as usize][j])).collect();
                mor_index[&(ends[f as usize].0, ends[g as usize].1, t)]
            })?
        };
        let labels = words.iter().map(|w| if w.is_empty() { "∅".to_string() } else { w.iter().map(|c| c.to_string()).collect() }).collect();
        Ok(ICatN { n, base, words, word_index, counts, cat: Arc::new(cat.with_labels(labels)), comps, mor_index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &Arc<InjCat> {
        &self.base
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn word(&self, o: u32) -> &[u8] {
        &self.words[o as usize]
    }

    pub fn object_of(&self, w: &[u8]) -> Option<u32> {
        self.word_index.get(w).copied()
    }

    /// `(θ_1, …, θ_n)` as sizes.
    pub fn counts(&self, o: u32) -> &[usize] {
        &self.counts[o as usize]
    }

    /// The injections `θ_i → θ'_i` of a morphism.
    pub fn components(&self, m: u32) -> &[u32] {
        &self.comps[m as usize]
    }

    pub fn morphism(&self, src: u32, tgt: u32, comps: &[u32]) -> Option<u32> {
        self.mor_index.get(&(src, tgt, comps.to_vec())).copied()
    }

    /// Positions of `w` whose letter lies in `a` (a predicate on letters).
    fn positions(w: &[u8], a: &dyn Fn(usize) -> bool) -> Vec<usize> {
        (0..w.len()).filter(|&p| a(w[p] as usize)).collect()
    }

    /// Rank of position `p` among the occurrences of its letter.
    fn rank(w: &[u8], p: usize) -> usize {
        w[..p].iter().filter(|&&c| c == w[p]).count()
    }

    /// Position of the `r`-th occurrence of letter `i`.
    fn occurrence(w: &[u8], i: u8, r: usize) -> usize {
        w.iter().enumerate().filter(|(_, &c)| c == i).nth(r).map(|(p, _)| p).expect("occurrence exists")
    }

    /// The component `θ(A) → θ'(A)` of a morphism.
    pub fn component_at(&self, m: u32, a: &dyn Fn(usize) -> bool) -> Inj {
        let (s, t) = (self.cat.src(m), self.cat.tgt(m));
        let (w, wt) = (self.word(s), self.word(t));
        let target_positions = Self::positions(wt, a);
        let values = Self::positions(w, a)
            .into_iter()
            .map(|p| {
                let i = w[p];
                let f = self.base.inj(self.comps[m as usize][i as usize - 1]);
                let pt = Self::occurrence(wt, i, f.values[Self::rank(w, p)]);
                target_positions.iter().position(|&q| q == pt).expect("image position is in θ'(A)")
            })
            .collect();
        Inj { tgt: target_positions.len(), values }
    }

    /// `α(w)`: letters sent to the basepoint are deleted.
    pub fn push_word(alpha: &BasedMap, w: &[u8]) -> Vec<u8> {
        w.iter().map(|&c| alpha.values[c as usize]).filter(|&v| v != 0).map(|v| v as u8).collect()
    }

    /// `α_*: 𝕀≤N(m⁺) → 𝕀≤N(n⁺)`, precomposition with `α⁻¹`.
    pub fn push_forward(&self, alpha: &BasedMap, target: &ICatN) -> Result<FinFunctor> {
        if alpha.src() != self.n || alpha.tgt != target.n {
            return Err(Error::MismatchedBase);
        }
        let obj: Vec<u32> = self
            .words
            .iter()
            .map(|w| target.object_of(&Self::push_word(alpha, w)).expect("pushed words are no longer"))
            .collect();
        let mor = (0..self.cat.n_mor() as u32)
            .map(|m| {
                let comps: Vec<u32> = (1..=target.n)
                    .map(|k| {
                        let f = self.component_at(m, &|i| alpha.values[i] == k);
                        self.base.mor(&f).expect("component lies in 𝕀≤N")
                    })
                    .collect();
                let (s, t) = (obj[self.cat.src(m) as usize], obj[self.cat.tgt(m) as usize]);
                target.morphism(s, t, &comps).expect("pushed morphism exists")
            })
            .collect();
        Ok(FinFunctor { src: self.cat.clone(), tgt: target.cat.clone(), obj, mor })
    }

    /// The canonical iso `⊕_{i ∈ α⁻¹(k)} θ_i ≅ θ(α⁻¹(k))`, blocks in
    /// increasing `i`.
    pub fn ordering_iso(&self, o: u32, fibre: &[usize]) -> Inj {
        let w = self.word(o);
        let targets = Self::positions(w, &|c| fibre.contains(&c));
        let values = fibre
            .iter()
            .flat_map(|&i| (0..self.counts[o as usize][i - 1]).map(move |r| (i, r)))
            .map(|(i, r)| {
                let p = Self::occurrence(w, i as u8, r);
                targets.iter().position(|&q| q == p).expect("position lies in the fibre")
            })
            .collect();
        Inj { tgt: targets.len(), values }
    }

    /// `u: 𝕀≤N(n⁺) → (𝕀≤N)ⁿ`, `θ ↦ (θ_1, …, θ_n)`, into the given product
    /// category (objects and morphisms in lexicographic order, first factor
    /// slowest).
    pub fn forgetful(&self, product: &Arc<FinCat>) -> Result<FinFunctor> {
        let b = self.base.cat();
        let (no, nm) = (b.n_obj() as u32, b.n_mor() as u32);
        let obj = self.counts.iter().map(|c| c.iter().fold(0u32, |acc, &d| acc * no + d as u32)).collect();
        let mor = self.comps.iter().map(|t| t.iter().fold(0u32, |acc, &f| acc * nm + f)).collect();
        FinFunctor::new(self.cat.clone(), product.clone(), obj, mor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn icat(n: usize, bound: usize) -> ICatN {
        ICatN::new(n, Arc::new(InjCat::new(bound).unwrap())).unwrap()
    }

    #[test]
    fn sizes_and_laws() {
        let c = icat(2, 2);
        assert_eq!(c.words().len(), 7);
        c.cat().validate().unwrap();
        assert_eq!(c.cat().initial_objects(), vec![0]);
        let one = icat(1, 3);
        assert_eq!(one.cat().n_mor(), InjCat::new(3).unwrap().n_mor());
    }

    #[test]
    fn push_forward_is_strictly_functorial() {
        let (c1, c2, c3) = (icat(1, 3), icat(2, 3), icat(3, 3));
        let cats = [None, Some(&c1), Some(&c2), Some(&c3)];
        for m in 1..=3 {
            for n in 1..=2 {
                for l in 1..=2 {
                    for a in BasedMap::all(m, n) {
                        for b in BasedMap::all(n, l) {
                            let (cm, cn, cl) = (cats[m].unwrap(), cats[n].unwrap(), cats[l].unwrap());
                            let fa = cm.push_forward(&a, cn).unwrap();
                            let fb = cn.push_forward(&b, cl).unwrap();
                            let fba = cm.push_forward(&b.after(&a), cl).unwrap();
                            assert_eq!(fba.obj, fa.obj.iter().map(|&o| fb.obj[o as usize]).collect::<Vec<_>>());
                            assert_eq!(fba.mor, fa.mor.iter().map(|&f| fb.mor[f as usize]).collect::<Vec<_>>());
                        }
                    }
                }
            }
        }
        // functor laws of one push-forward, checked by the validator
        let f = c3.push_forward(&BasedMap::new(2, vec![0, 2, 1, 2]).unwrap(), &c2).unwrap();
        f.validate().unwrap();
    }

    #[test]
    fn ordering_iso_interleaves_blocks() {
        let c = icat(2, 3);
        let o = c.object_of(&[2, 1, 2]).unwrap();
        // blocks θ_1 = {1}, θ_2 = {0, 2} in positions
        assert_eq!(c.ordering_iso(o, &[1, 2]).values, vec![1, 0, 2]);
        assert_eq!(c.ordering_iso(o, &[2]).values, vec![0, 1]);
    }

    #[test]
    fn based_maps() {
        assert_eq!(BasedMap::all(2, 2).len(), 9);
        let fold = BasedMap::fold(2);
        assert_eq!(fold.after(&BasedMap::identity(2)), fold);
        assert_eq!(BasedMap::projection(3, 2).fibre(1), vec![2]);
        assert!(BasedMap::new(1, vec![1, 0]).is_err());
    }
}
