//! The simplicial-set interface shared by explicit and lazily enumerated
//! models, together with the algorithms that only need that interface:
//! identity checking, normalized chains and materialization.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::linalg::chain::{normalize, ChainComplex, SparseMatrix};
use crate::sset::deg::Deg;

/// How far the nondegenerate simplices of a simplicial set are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", content = "top", rename_all = "snake_case")]
pub enum Extent {
    /// No nondegenerate simplices above `top`.
    Complete(usize),
    /// Nondegenerate simplices are known through `top` only.
    Skeletal(usize),
}

impl Extent {
    pub fn top(self) -> usize {
        match self {
            Extent::Complete(t) | Extent::Skeletal(t) => t,
        }
    }

    pub fn is_complete(self) -> bool {
        matches!(self, Extent::Complete(_))
    }

    /// Whether nondegenerate simplices of dimension `k` are available.
    pub fn knows(self, k: usize) -> bool {
        match self {
            Extent::Complete(_) => true,
            Extent::Skeletal(t) => k <= t,
        }
    }
}

pub trait SimplicialSet {
    type Simplex: Clone + Eq + Hash + Ord + Debug;

    fn dim_of(&self, s: &Self::Simplex) -> usize;

    fn face(&self, i: usize, s: &Self::Simplex) -> Self::Simplex;

    fn degeneracy(&self, i: usize, s: &Self::Simplex) -> Self::Simplex;

    /// The set `{ i : s ∈ im s_i }` as a bitmask.
    fn degeneracy_mask(&self, s: &Self::Simplex) -> u32;

    /// Nondegenerate `k`-simplices in a deterministic order.
    fn nondegenerate(&self, k: usize) -> Result<Vec<Self::Simplex>>;

    fn extent(&self) -> Extent;

    fn is_degenerate(&self, s: &Self::Simplex) -> bool {
        self.degeneracy_mask(s) != 0
    }

    /// Applies the degeneracy operator `eta` to a simplex of dimension
    /// `eta.target_dim()`.
    fn apply_deg(&self, eta: Deg, s: &Self::Simplex) -> Self::Simplex {
        let mut x = s.clone();
        let mask = eta.mask();
        for i in 0..eta.dim() {
            if (mask >> i) & 1 == 1 {
                x = self.degeneracy(i, &x);
            }
        }
        x
    }

    /// Eilenberg–Zilber decomposition `s = eta^* b` with `b` nondegenerate.
    fn decompose(&self, s: &Self::Simplex) -> (Deg, Self::Simplex) {
        let q = self.dim_of(s);
        let mask = self.degeneracy_mask(s);
        let mut b = s.clone();
        for i in (0..q).rev() {
            if (mask >> i) & 1 == 1 {
                b = self.face(i, &b);
            }
        }
        (Deg::from_mask(q, mask), b)
    }

    /// Every `k`-simplex, degenerate or not, grouped by base dimension.
    fn simplices(&self, k: usize) -> Result<Vec<Self::Simplex>> {
        let mut out = Vec::new();
        for j in 0..=k {
            if !self.extent().knows(j) {
                return Err(Error::InsufficientDimension { needed: k, available: self.extent().top() });
            }
            let base = self.nondegenerate(j)?;
            if base.is_empty() {
                continue;
            }
            for eta in Deg::with_collapse(k, k - j) {
                for b in &base {
                    out.push(self.apply_deg(eta, b));
                }
            }
        }
        Ok(out)
    }
}

impl<T: SimplicialSet + ?Sized> SimplicialSet for &T {
    type Simplex = T::Simplex;
    fn dim_of(&self, s: &Self::Simplex) -> usize {
        (**self).dim_of(s)
    }
    fn face(&self, i: usize, s: &Self::Simplex) -> Self::Simplex {
        (**self).face(i, s)
    }
    fn degeneracy(&self, i: usize, s: &Self::Simplex) -> Self::Simplex {
        (**self).degeneracy(i, s)
    }
    fn degeneracy_mask(&self, s: &Self::Simplex) -> u32 {
        (**self).degeneracy_mask(s)
    }
    fn nondegenerate(&self, k: usize) -> Result<Vec<Self::Simplex>> {
        (**self).nondegenerate(k)
    }
    fn extent(&self) -> Extent {
        (**self).extent()
    }
}

/// A failed simplicial identity with the simplex that witnessed it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub dim: usize,
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub witness: String,
}

impl From<IdentityFailure> for Error {
    fn from(f: IdentityFailure) -> Self {
        Error::IdentityViolation { q: f.dim, i: f.i, j: f.j, relation: format!("{} on {}", f.relation, f.witness) }
    }
}

fn check_one<X: SimplicialSet>(x: &X, s: &X::Simplex) -> std::result::Result<(), IdentityFailure> {
    let k = x.dim_of(s);
    let fail = |relation: &str, i: usize, j: usize| IdentityFailure {
        dim: k,
        relation: relation.to_string(),
        i,
        j,
        witness: format!("{s:?}"),
    };
    if k >= 2 {
        for j in 1..=k {
            let dj = x.face(j, s);
            for i in 0..j {
                if x.face(i, &dj) != x.face(j - 1, &x.face(i, s)) {
                    return Err(fail("d_i d_j = d_{j-1} d_i", i, j));
                }
            }
        }
    }
    for j in 0..=k {
        let sj = x.degeneracy(j, s);
        if x.dim_of(&sj) != k + 1 || (x.degeneracy_mask(&sj) >> j) & 1 == 0 {
            return Err(fail("s_j lands in the image of s_j", j, j));
        }
        for i in 0..=k + 1 {
            let lhs = x.face(i, &sj);
            let rhs = if i == j || i == j + 1 {
                s.clone()
            } else if i < j {
                x.degeneracy(j - 1, &x.face(i, s))
            } else {
                x.degeneracy(j, &x.face(i - 1, s))
            };
            if k == 0 && i != j && i != j + 1 {
                continue;
            }
            if lhs != rhs {
                return Err(fail("d_i s_j", i, j));
            }
        }
        for i in 0..=j {
            if x.degeneracy(i, &sj) != x.degeneracy(j + 1, &x.degeneracy(i, s)) {
                return Err(fail("s_i s_j = s_{j+1} s_i", i, j));
            }
        }
    }
    for i in 0..k {
        let is_image = (x.degeneracy_mask(s) >> i) & 1 == 1;
        let really = x.degeneracy(i, &x.face(i, s)) == *s;
        if is_image != really {
            return Err(fail("degeneracy mask matches s_i d_i", i, i));
        }
    }
    Ok(())
}

/// Checks every simplicial identity on every simplex (degenerate ones
/// included) of dimension `≤ top`.
pub fn check_identities<X: SimplicialSet>(x: &X, top: usize) -> std::result::Result<usize, IdentityFailure> {
    let mut checked = 0;
    for k in 0..=top {
        let all = x.simplices(k).map_err(|e| IdentityFailure {
            dim: k,
            relation: format!("enumeration: {e}"),
            i: 0,
            j: 0,
            witness: String::new(),
        })?;
        for s in &all {
            check_one(x, s)?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// Checks the identities on nondegenerate simplices and their first
/// degeneracies only; used for lazily enumerated sets whose degenerate part
/// is too large to list.
pub fn check_identities_nondegenerate<X: SimplicialSet>(
    x: &X,
    top: usize,
) -> std::result::Result<usize, IdentityFailure> {
    let mut checked = 0;
    for k in 0..=top {
        let nd = x.nondegenerate(k).map_err(|e| IdentityFailure {
            dim: k,
            relation: format!("enumeration: {e}"),
            i: 0,
            j: 0,
            witness: String::new(),
        })?;
        for s in &nd {
            if x.degeneracy_mask(s) != 0 {
                return Err(IdentityFailure {
                    dim: k,
                    relation: "listed simplex is nondegenerate".into(),
                    i: 0,
                    j: 0,
                    witness: format!("{s:?}"),
                });
            }
            check_one(x, s)?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// Normalized chain complex through degree `top`, with its basis.
pub struct NormalizedChains<S> {
    pub complex: ChainComplex,
    pub basis: Vec<Vec<S>>,
    pub index: Vec<HashMap<S, u32>>,
}

impl<S: Clone + Eq + Hash> NormalizedChains<S> {
    /// Coordinates of a simplex: `None` when it is degenerate.
    pub fn coordinate(&self, k: usize, s: &S) -> Option<u32> {
        self.index.get(k).and_then(|m| m.get(s).copied())
    }
}

pub fn normalized_chains<X: SimplicialSet>(x: &X, top: usize) -> Result<NormalizedChains<X::Simplex>> {
    let ext = x.extent();
    let top_eff = match ext {
        Extent::Complete(t) => top.min(t),
        Extent::Skeletal(t) => {
            if top > t {
                return Err(Error::InsufficientDimension { needed: top, available: t });
            }
            top
        }
    };
    let mut basis = Vec::with_capacity(top_eff + 1);
    let mut index = Vec::with_capacity(top_eff + 1);
    for k in 0..=top_eff {
        let nd = x.nondegenerate(k)?;
        let idx: HashMap<X::Simplex, u32> = nd.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        basis.push(nd);
        index.push(idx);
    }
    let mut bds = vec![SparseMatrix::zero(0, basis[0].len())];
    for k in 1..=top_eff {
        let mut cols = Vec::with_capacity(basis[k].len());
        for s in &basis[k] {
            let mut terms = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let f = x.face(i, s);
                if let Some(&r) = index[k - 1].get(&f) {
                    terms.push((r, if i % 2 == 0 { 1 } else { -1 }));
                } else if !x.is_degenerate(&f) {
                    return Err(Error::InvalidSSet(format!("face {i} of {s:?} is not a listed simplex")));
                }
            }
            cols.push(normalize(terms));
        }
        bds.push(SparseMatrix::new(basis[k - 1].len(), cols));
    }
    let complete = ext.is_complete() && top_eff == ext.top();
    let ranks = basis.iter().map(Vec::len).collect();
    Ok(NormalizedChains { complex: ChainComplex::new(ranks, bds, complete), basis, index })
}

/// Chain map induced by a simplexwise map on normalized chains.
pub fn induced_chain_map<X, Y, F>(
    src: &NormalizedChains<X::Simplex>,
    tgt: &NormalizedChains<Y::Simplex>,
    y: &Y,
    top: usize,
    f: F,
) -> Result<crate::linalg::ChainMap>
where
    X: SimplicialSet,
    Y: SimplicialSet,
    F: Fn(&X::Simplex) -> Y::Simplex,
{
    let mut degrees = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let nsrc = src.basis.get(k).map_or(0, Vec::len);
        let ntgt = tgt.basis.get(k).map_or(0, Vec::len);
        let mut cols = Vec::with_capacity(nsrc);
        for s in src.basis.get(k).into_iter().flatten() {
            let t = f(s);
            match tgt.coordinate(k, &t) {
                Some(r) => cols.push(vec![(r, 1)]),
                None if y.is_degenerate(&t) => cols.push(Vec::new()),
                None => return Err(Error::InvalidSSet(format!("image {t:?} is not a listed simplex"))),
            }
        }
        degrees.push(SparseMatrix::new(ntgt, cols));
    }
    Ok(crate::linalg::ChainMap { degrees })
}
