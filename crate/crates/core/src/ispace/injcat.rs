//! The truncated injection category `𝕀≤N`: objects `0..=N`, morphisms
//! `m → n` the injections `{0..m} → {0..n}` stored as value arrays.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::barcat::FinCat;
use crate::error::{Error, Result};
use crate::util::permutations;

/// An injection `m → tgt` with `m = values.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inj {
    pub tgt: usize,
    pub values: Vec<usize>,
}

impl Inj {
    pub fn src(&self) -> usize {
        self.values.len()
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Inj) -> Inj {
        debug_assert_eq!(other.tgt, self.src());
        Inj { tgt: self.tgt, values: other.values.iter().map(|&v| self.values[v]).collect() }
    }

    /// `self ⊕ other`: the second block is shifted past the first.
    pub fn block_sum(&self, other: &Inj) -> Inj {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + self.tgt));
        Inj { tgt: self.tgt + other.tgt, values }
    }

    pub fn identity(n: usize) -> Inj {
        Inj { tgt: n, values: (0..n).collect() }
    }

    /// The standard inclusion `ι: m → n`, `i ↦ i`.
    pub fn inclusion(m: usize, n: usize) -> Inj {
        Inj { tgt: n, values: (0..m).collect() }
    }

    /// The block twist `m + n → n + m` moving the first `m` points past
    /// the last `n`.
    pub fn twist(m: usize, n: usize) -> Inj {
        Inj { tgt: m + n, values: (0..m + n).map(|i| if i < m { i + n } else { i - m }).collect() }
    }

    pub fn is_permutation(&self) -> bool {
        self.src() == self.tgt
    }

    /// The canonical permutation `φ̄` with `φ = φ̄ ∘ ι`: it agrees with `φ`
    /// on `0..m` and sends the remaining points, in order, to the unused
    /// values in ascending order.
    pub fn canonical_extension(&self) -> Inj {
        let mut values = self.values.clone();
        values.extend((0..self.tgt).filter(|v| !self.values.contains(v)));
        Inj { tgt: self.tgt, values }
    }

    /// Every permutation `φ̄` with `φ = φ̄ ∘ ι`.
    pub fn all_extensions(&self) -> Vec<Inj> {
        let unused: Vec<usize> = (0..self.tgt).filter(|v| !self.values.contains(v)).collect();
        permutations(unused.len())
            .into_iter()
            .map(|p| {
                let mut values = self.values.clone();
                values.extend(p.iter().map(|&i| unused[i]));
                Inj { tgt: self.tgt, values }
            })
            .collect()
    }
}

/// `𝕀≤N` as a finite category together with its injection data.
#[derive(Clone, Debug)]
pub struct InjCat {
    bound: usize,
    cat: Arc<FinCat>,
    injs: Vec<Inj>,
    index: HashMap<Inj, u32>,
}

impl PartialEq for InjCat {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound
    }
}

/// Largest supported bound; `𝕀≤6` already has 13 327 morphisms.
pub const MAX_BOUND: usize = 6;

impl InjCat {
    pub fn new(bound: usize) -> Result<InjCat> {
        if bound > MAX_BOUND {
            return Err(Error::ObjectOutOfRange(bound));
        }
        let mut injs = Vec::new();
        for m in 0..=bound {
            for n in m..=bound {
                let mut here: Vec<Inj> = permutations(n)
                    .into_iter()
                    .map(|p| Inj { tgt: n, values: p[..m].to_vec() })
                    .collect();
                here.sort();
                here.dedup();
                injs.extend(here);
            }
        }
        let index: HashMap<Inj, u32> = injs.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let ends = injs.iter().map(|f| (f.src() as u32, f.tgt as u32)).collect();
        let id = (0..=bound).map(|n| index[&Inj::identity(n)]).collect();
        let cat = FinCat::from_fn_unchecked(bound + 1, ends, id, |g, f| index[&injs[g as usize].after(&injs[f as usize])])?
            .with_labels((0..=bound).map(|n| n.to_string()).collect());
        Ok(InjCat { bound, cat: Arc::new(cat), injs, index })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn n_mor(&self) -> usize {
        self.injs.len()
    }

    pub fn inj(&self, m: u32) -> &Inj {
        &self.injs[m as usize]
    }

    pub fn mor(&self, f: &Inj) -> Option<u32> {
        self.index.get(f).copied()
    }

    /// Morphism index of an injection known to lie in the category.
    pub fn id_of(&self, f: &Inj) -> u32 {
        self.index[f]
    }

    pub fn identity(&self, n: usize) -> u32 {
        self.id_of(&Inj::identity(n))
    }

    pub fn inclusion(&self, m: usize, n: usize) -> u32 {
        self.id_of(&Inj::inclusion(m, n))
    }

    pub fn permutation(&self, p: &[usize]) -> u32 {
        self.id_of(&Inj { tgt: p.len(), values: p.to_vec() })
    }

    /// The adjacent transposition `(i i+1)` on `n`.
    pub fn transposition(&self, n: usize, i: usize) -> u32 {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, i + 1);
        self.permutation(&p)
    }

    pub fn compose(&self, g: u32, f: u32) -> u32 {
        self.cat.compose(g, f).expect("composable injections")
    }

    pub fn block_sum(&self, f: u32, g: u32) -> Option<u32> {
        self.mor(&self.inj(f).block_sum(self.inj(g)))
    }

    /// Injections `m → n` in the category's order.
    pub fn hom(&self, m: usize, n: usize) -> Vec<u32> {
        self.cat.hom(m as u32, n as u32)
    }

    /// Generating morphisms: the adjacent transpositions of every level and
    /// the inclusions `n → n+1`.  With `positive`, level 0 is left out.
    pub fn generators(&self, positive: bool) -> Vec<u32> {
        let lo = usize::from(positive);
        let mut out = Vec::new();
        for n in lo..=self.bound {
            for i in 0..n.saturating_sub(1) {
                out.push(self.transposition(n, i));
            }
            if n < self.bound {
                out.push(self.inclusion(n, n + 1));
            }
        }
        out
    }

    /// `m` written as a word in generators (application order): first the
    /// inclusions `ι`, then adjacent transpositions composing to `φ̄`.
    pub fn generator_word(&self, m: u32) -> Vec<u32> {
        let f = self.inj(m);
        let mut word: Vec<u32> = (f.src()..f.tgt).map(|k| self.inclusion(k, k + 1)).collect();
        // bubble-sorting the values of φ̄ right-multiplies by transpositions:
        // φ̄ s_{i1} ⋯ s_{ir} = id, so φ̄ = s_{ir} ∘ ⋯ ∘ s_{i1}
        let mut a = f.canonical_extension().values;
        let n = a.len();
        for pass in 0..n {
            for i in 0..n.saturating_sub(1 + pass) {
                if a[i] > a[i + 1] {
                    a.swap(i, i + 1);
                    word.push(self.transposition(n, i));
                }
            }
        }
        word
    }

    /// `(φ̄, ι)` with `φ = φ̄ ∘ ι` and `φ̄` canonical.
    pub fn factor(&self, m: u32) -> (u32, u32) {
        let f = self.inj(m);
        (self.id_of(&f.canonical_extension()), self.inclusion(f.src(), f.tgt))
    }

    pub fn objects(&self) -> impl Iterator<Item = usize> {
        0..=self.bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn morphism_counts() {
        let c = InjCat::new(4).unwrap();
        assert_eq!(c.n_mor(), 89);
        c.cat().validate().unwrap();
        for m in 0..=4usize {
            for n in 0..=4usize {
                let expect = if m <= n { (n - m + 1..=n).product::<usize>() } else { 0 };
                assert_eq!(c.hom(m, n).len(), expect);
            }
        }
    }

    #[test]
    fn generator_words_recompose() {
        let c = InjCat::new(4).unwrap();
        for m in 0..c.n_mor() as u32 {
            let word = c.generator_word(m);
            let src = c.inj(m).src();
            let composite = word.iter().fold(c.identity(src), |acc, &g| c.compose(g, acc));
            assert_eq!(composite, m, "{:?}", c.inj(m));
            let (bar, iota) = c.factor(m);
            assert_eq!(c.compose(bar, iota), m);
        }
    }

    #[test]
    fn extensions_and_twists() {
        let f = Inj { tgt: 4, values: vec![2, 0] };
        assert_eq!(f.canonical_extension().values, vec![2, 0, 1, 3]);
        let ext = f.all_extensions();
        assert_eq!(ext.len(), 2);
        assert!(ext.iter().all(|p| p.after(&Inj::inclusion(2, 4)) == f));
        let t = Inj::twist(1, 2);
        assert_eq!(t.values, vec![2, 0, 1]);
        assert_eq!(t.after(&Inj::twist(2, 1)), Inj::identity(3));
    }
}
