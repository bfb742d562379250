//! Turning a lazily described simplicial set into an explicit one while
//! remembering which lazy simplex each explicit simplex came from.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::finsset::{FinSSet, FinSimplex};
use crate::sset::traits::{Extent, SimplicialSet};

#[derive(Clone, Debug)]
pub struct Materialized<S> {
    pub set: Arc<FinSSet>,
    pub basis: Vec<Vec<S>>,
    pub index: Vec<HashMap<S, u32>>,
}

impl<S: Clone + Eq + std::hash::Hash + std::fmt::Debug + Ord> Materialized<S> {
    /// Explicit simplex corresponding to a lazy one.
    pub fn encode<X: SimplicialSet<Simplex = S>>(&self, x: &X, s: &S) -> Result<FinSimplex> {
        let (eta, b) = x.decompose(s);
        let k = eta.target_dim();
        match self.index.get(k).and_then(|m| m.get(&b)) {
            Some(&id) => Ok(FinSimplex { deg: eta, base: id }),
            None => Err(Error::InvalidSSet(format!("simplex {b:?} was not materialized"))),
        }
    }

    /// Lazy simplex corresponding to an explicit one.
    pub fn decode<X: SimplicialSet<Simplex = S>>(&self, x: &X, s: &FinSimplex) -> S {
        let b = &self.basis[s.base_dim()][s.base as usize];
        x.apply_deg(s.deg, b)
    }
}

/// Lists nondegenerate simplices through `top` and records their faces.
pub fn materialize<X: SimplicialSet>(x: &X, top: usize) -> Result<Materialized<X::Simplex>> {
    let ext = x.extent();
    let top = match ext {
        Extent::Complete(t) => top.min(t),
        Extent::Skeletal(t) => {
            if top > t {
                return Err(Error::InsufficientDimension { needed: top, available: t });
            }
            top
        }
    };
    let mut b = FinSSet::builder();
    let mut basis: Vec<Vec<X::Simplex>> = Vec::with_capacity(top + 1);
    let mut index: Vec<HashMap<X::Simplex, u32>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let nd = x.nondegenerate(k)?;
        let idx: HashMap<X::Simplex, u32> = nd.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        if k == 0 {
            b = b.vertices(nd.len());
        } else {
            for s in &nd {
                let mut faces = Vec::with_capacity(k + 1);
                for i in 0..=k {
                    let f = x.face(i, s);
                    let (eta, base) = x.decompose(&f);
                    let id = index[eta.target_dim()]
                        .get(&base)
                        .copied()
                        .ok_or_else(|| Error::InvalidSSet(format!("face base {base:?} is not listed")))?;
                    faces.push(FinSimplex { deg: eta, base: id });
                }
                b.add(&faces);
            }
        }
        basis.push(nd);
        index.push(idx);
    }
    let mut set = b.build_unchecked();
    // Pad empty dimensions so dim_top equals the requested top.
    let complete = ext.is_complete() && top >= ext.top();
    set = pad(set, top);
    if !complete {
        set = set.into_skeletal();
    }
    while basis.len() <= top {
        basis.push(Vec::new());
        index.push(HashMap::new());
    }
    Ok(Materialized { set: Arc::new(set), basis, index })
}

fn pad(mut set: FinSSet, top: usize) -> FinSSet {
    set.extend_to(top);
    set
}
