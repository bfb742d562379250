//! Colimits of simplicial sets computed dimensionwise: all simplices of a
//! disjoint union are listed, identified by union–find, and the classes
//! reassembled into an explicit simplicial set.
//!
//! A class is degenerate exactly when it has a degenerate member, so the
//! nondegenerate simplices of the colimit are the classes without one.
//! Classes are numbered by their least member.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::finsset::{FinSSet, FinSimplex};
use crate::util::UnionFind;

/// How to navigate the elements of the disjoint union.
pub(crate) trait Elements {
    type E: Clone + Eq + Hash + Ord + Debug;
    fn face(&self, i: usize, e: &Self::E) -> Self::E;
    /// Degeneracy mask: bit `i` set iff `e` lies in the image of `s_i`.
    fn mask(&self, e: &Self::E) -> u32;
}

#[derive(Clone, Debug)]
pub struct Quotient<E> {
    pub set: Arc<FinSSet>,
    elems: Vec<Vec<E>>,
    index: Vec<HashMap<E, u32>>,
    class: Vec<Vec<u32>>,
    /// explicit simplex of each class
    fin: Vec<Vec<FinSimplex>>,
    /// least member of each nondegenerate class
    reps: Vec<Vec<u32>>,
}

impl<E: Clone + Eq + Hash + Ord + Debug> Quotient<E> {
    /// `elems[k]` must list every `k`-simplex (degenerate ones included) and
    /// be closed under faces; `relate(k, e, push)` pushes elements to be
    /// identified with `e`.
    pub(crate) fn build<X: Elements<E = E>>(
        nav: &X,
        mut elems: Vec<Vec<E>>,
        relate: impl Fn(usize, &E, &mut dyn FnMut(E)),
    ) -> Result<Quotient<E>> {
        let top = elems.len().saturating_sub(1);
        let mut index = Vec::with_capacity(elems.len());
        let mut class = Vec::with_capacity(elems.len());
        let mut fin: Vec<Vec<FinSimplex>> = Vec::with_capacity(elems.len());
        let mut reps = Vec::with_capacity(elems.len());
        let mut builder = FinSSet::builder();
        for k in 0..elems.len() {
            elems[k].sort();
            elems[k].dedup();
            let idx: HashMap<E, u32> = elems[k].iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
            let mut uf = UnionFind::new(elems[k].len());
            for (i, e) in elems[k].iter().enumerate() {
                let mut err = None;
                relate(k, e, &mut |f: E| match idx.get(&f) {
                    Some(&j) => {
                        uf.union(i as u32, j);
                    }
                    None => err = Some(format!("{f:?}")),
                });
                if let Some(f) = err {
                    return Err(Error::InvalidSSet(format!("related element {f} was not listed in dimension {k}")));
                }
            }
            let (labels, n_classes) = uf.labels();
            let mut degenerate = vec![None; n_classes];
            for (i, e) in elems[k].iter().enumerate() {
                let m = nav.mask(e);
                if m != 0 && degenerate[labels[i] as usize].is_none() {
                    degenerate[labels[i] as usize] = Some((i, m.trailing_zeros() as usize));
                }
            }
            let mut first = vec![u32::MAX; n_classes];
            for (i, &c) in labels.iter().enumerate() {
                if first[c as usize] == u32::MAX {
                    first[c as usize] = i as u32;
                }
            }
            let mut fin_k = vec![FinSimplex::vertex(0); n_classes];
            let mut reps_k = Vec::new();
            let face_class = |i: usize, e: &E, index: &Vec<HashMap<E, u32>>, class: &Vec<Vec<u32>>| -> Result<u32> {
                let f = nav.face(i, e);
                let j = index[k - 1]
                    .get(&f)
                    .ok_or_else(|| Error::InvalidSSet(format!("face {f:?} was not listed in dimension {}", k - 1)))?;
                Ok(class[k - 1][*j as usize])
            };
            for c in 0..n_classes {
                match degenerate[c] {
                    Some((i, bit)) => {
                        let below = fin[k - 1][face_class(bit, &elems[k][i], &index, &class)? as usize];
                        fin_k[c] = FinSimplex { deg: below.deg.degeneracy(bit), base: below.base };
                    }
                    None => {
                        let rep = first[c];
                        fin_k[c] = FinSimplex::nondeg(k, reps_k.len() as u32);
                        reps_k.push(rep);
                        if k == 0 {
                            builder.add_vertex();
                        } else {
                            let faces = (0..=k)
                                .map(|i| face_class(i, &elems[k][rep as usize], &index, &class).map(|fc| fin[k - 1][fc as usize]))
                                .collect::<Result<Vec<_>>>()?;
                            builder.add(&faces);
                        }
                    }
                }
            }
            index.push(idx);
            class.push(labels);
            fin.push(fin_k);
            reps.push(reps_k);
        }
        let mut set = builder.build()?;
        set.extend_to(top);
        Ok(Quotient { set: Arc::new(set), elems, index, class, fin, reps })
    }

    pub fn top(&self) -> usize {
        self.elems.len() - 1
    }

    /// Explicit simplex of the class of `e`.
    pub fn class_of(&self, k: usize, e: &E) -> Option<FinSimplex> {
        let i = *self.index.get(k)?.get(e)?;
        Some(self.fin[k][self.class[k][i as usize] as usize])
    }

    /// Least member of a nondegenerate class.
    pub fn representative(&self, k: usize, base: u32) -> &E {
        &self.elems[k][self.reps[k][base as usize] as usize]
    }

    pub fn elements(&self, k: usize) -> &[E] {
        &self.elems[k]
    }

    /// Number of classes (all simplices of the colimit) in dimension `k`.
    pub fn class_count(&self, k: usize) -> usize {
        self.fin[k].len()
    }
}

/// Checks that `map`, defined on elements, descends to a bijection from
/// the classes of `q` onto all simplices of `target` in every dimension
/// through `q`'s top.  Returns the number of simplices matched.
pub(crate) fn check_descends_to_iso<E: Clone + Eq + Hash + Ord + Debug>(
    q: &Quotient<E>,
    target: &FinSSet,
    map: impl Fn(usize, &E) -> Result<FinSimplex>,
) -> Result<usize> {
    use crate::sset::traits::SimplicialSet;
    let mut matched = 0;
    for k in 0..=q.top() {
        let n_tgt = target.simplices(k)?.len();
        let mut image: Vec<Option<FinSimplex>> = vec![None; q.class_count(k)];
        let mut hit: HashMap<FinSimplex, FinSimplex> = HashMap::new();
        for e in q.elements(k) {
            let ci = q.class[k][q.index[k][e] as usize] as usize;
            let c = q.fin[k][ci];
            let y = map(k, e)?;
            match image[ci] {
                None => image[ci] = Some(y),
                Some(prev) if prev != y => {
                    return Err(Error::BijectionFailure(format!("members of one class map to {prev:?} and {y:?} in dimension {k}")));
                }
                _ => {}
            }
            if let Some(other) = hit.insert(y, c) {
                if other != c {
                    return Err(Error::BijectionFailure(format!("two classes map to {y:?} in dimension {k}")));
                }
            }
        }
        if hit.len() != n_tgt {
            return Err(Error::BijectionFailure(format!(
                "{} of {n_tgt} simplices of dimension {k} are hit",
                hit.len()
            )));
        }
        matched += n_tgt;
    }
    Ok(matched)
}
