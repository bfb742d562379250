//! Chain complexes of modules and their Dold–Kan realizations.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{AbGroup, ChainComplex, IntMatrix};
use crate::sset::deg::{Deg, DegFace};
use crate::sset::traits::{Extent, SimplicialSet};

use super::lattice::{Scalars, Submodule};

/// A nonnegatively graded chain complex `M_0 ← M_1 ← ... ← M_top`, each
/// `M_k` a submodule of `R^{rank_k}`, with boundaries given as scalar
/// matrices `R^{rank_k} → R^{rank_{k-1}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DkModel {
    scalars: Scalars,
    modules: Vec<Submodule>,
    boundaries: Vec<IntMatrix>,
}

/// Serializable form: ranks, boundary matrices (scalar entries) and, for
/// non-free degrees, generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DkModelTables {
    pub scalars: String,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Option<Vec<Vec<i64>>>>,
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&v| v as i64).collect()).collect()
}

fn from_rows(rows: &[Vec<i64>], nrows: usize, ncols: usize) -> Result<IntMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidModule(format!("boundary matrix must be {nrows}×{ncols}")));
    }
    let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    Ok(if nrows == 0 { IntMatrix::zeros(0, ncols) } else { IntMatrix::from_rows(&wide) })
}

impl DkModel {
    /// Validates that each boundary maps `M_k` into `M_{k-1}` and that
    /// `∂∂ = 0`.
    pub fn new(scalars: Scalars, modules: Vec<Submodule>, boundaries: Vec<IntMatrix>) -> Result<DkModel> {
        if modules.is_empty() || boundaries.len() != modules.len() {
            return Err(Error::InvalidModule("need one module and one boundary per degree".into()));
        }
        for k in 0..modules.len() {
            let b = &boundaries[k];
            let rows = if k == 0 { 0 } else { modules[k - 1].rank };
            if b.rows() != rows || b.cols() != modules[k].rank {
                return Err(Error::InvalidModule(format!("boundary {k} has the wrong shape")));
            }
            if let Some(ring) = scalars.ring() {
                if (0..b.rows()).any(|r| b.row(r).iter().any(|&v| v < 0 || v as usize >= ring.len())) {
                    return Err(Error::InvalidModule(format!("boundary {k} has an entry outside the ring")));
                }
            }
        }
        let m = DkModel { scalars, modules, boundaries };
        for k in 1..m.modules.len() {
            let img = m.modules[k].image_under(&m.scalars, &m.boundaries[k])?;
            let below = &m.modules[k - 1];
            let joined = Submodule::generated_lattice(below, &img)?;
            if joined != *below {
                return Err(Error::InvalidModule(format!("∂_{k} leaves the degree-{} module", k - 1)));
            }
            if k >= 2 {
                let dd = m.compose(k - 1, k);
                let z = m.modules[k].image_under(&m.scalars, &dd)?;
                if z != Submodule::zero(&m.scalars, m.modules[k - 2].rank)? {
                    return Err(Error::InvalidModule(format!("∂_{}∂_{k} ≠ 0", k - 1)));
                }
            }
        }
        Ok(m)
    }

    /// A complex of free modules.
    pub fn free(scalars: Scalars, ranks: &[usize], boundaries: Vec<IntMatrix>) -> Result<DkModel> {
        let modules = ranks.iter().map(|&r| Submodule::free(&scalars, r)).collect();
        DkModel::new(scalars, modules, boundaries)
    }

    /// `K(R, n)`: the scalars in degree `n`.
    pub fn eilenberg_maclane(scalars: Scalars, n: usize) -> DkModel {
        let mut ranks = vec![0; n + 1];
        ranks[n] = 1;
        let bds = (0..=n).map(|k| IntMatrix::zeros(if k == 0 { 0 } else { ranks[k - 1] }, ranks[k])).collect();
        DkModel::free(scalars, &ranks, bds).expect("K(R, n) is a valid complex")
    }

    /// `C ⊗ R` for an integral chain complex.
    pub fn from_integral(c: &ChainComplex, top: usize, scalars: Scalars) -> Result<DkModel> {
        let ranks: Vec<usize> = (0..=top).map(|k| c.rank(k)).collect();
        let mut bds = vec![IntMatrix::zeros(0, ranks[0])];
        for k in 1..=top {
            let dense = c.boundaries[k].to_dense();
            let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
            for r in 0..ranks[k - 1] {
                for col in 0..ranks[k] {
                    m.set(r, col, scalars.from_int(dense.get(r, col) as i64) as i128);
                }
            }
            bds.push(m);
        }
        DkModel::free(scalars, &ranks, bds)
    }

    pub fn scalars(&self) -> &Scalars {
        &self.scalars
    }

    /// Highest degree stored (everything above is zero).
    pub fn top(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, k: usize) -> Option<&Submodule> {
        self.modules.get(k)
    }

    pub fn rank(&self, k: usize) -> usize {
        self.modules.get(k).map_or(0, |m| m.rank)
    }

    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        self.boundaries.get(k)
    }

    fn compose(&self, k: usize, l: usize) -> IntMatrix {
        // ∂_k ∘ ∂_l with scalar arithmetic
        let (a, b) = (&self.boundaries[k], &self.boundaries[l]);
        let sc = &self.scalars;
        let mut out = IntMatrix::zeros(a.rows(), b.cols());
        for r in 0..a.rows() {
            for c in 0..b.cols() {
                let v = (0..a.cols()).fold(sc.zero(), |acc, t| sc.add(acc, sc.mul(a.get(r, t) as i64, b.get(t, c) as i64)));
                out.set(r, c, v as i128);
            }
        }
        out
    }

    /// Cycles in degree `k`.
    pub fn cycles(&self, k: usize) -> Result<Submodule> {
        let m = &self.modules[k];
        if k == 0 {
            return Ok(m.clone());
        }
        m.kernel_of(&self.scalars, &self.boundaries[k])
    }

    /// The décalage `Ω^n`: degree `j ≥ 1` is `M_{j+n}`, degree 0 is the
    /// cycles `Z_n`.
    pub fn loops(&self, n: usize) -> Result<DkModel> {
        if n == 0 {
            return Ok(self.clone());
        }
        if n > self.top() {
            let z = Submodule::free(&self.scalars, 0);
            return Ok(DkModel { scalars: self.scalars.clone(), modules: vec![z], boundaries: vec![IntMatrix::zeros(0, 0)] });
        }
        let mut modules = vec![self.cycles(n)?];
        let mut bds = vec![IntMatrix::zeros(0, self.rank(n))];
        for k in n + 1..=self.top() {
            modules.push(self.modules[k].clone());
            bds.push(self.boundaries[k].clone());
        }
        Ok(DkModel { scalars: self.scalars.clone(), modules, boundaries: bds })
    }

    /// Homology of the normalized complex, which is the homotopy of the
    /// realization.
    pub fn moore_homotopy(&self, k_max: usize) -> Result<Vec<AbGroup>> {
        (0..=k_max)
            .map(|k| {
                if k > self.top() {
                    return Ok(AbGroup::zero());
                }
                let z = self.cycles(k)?;
                let b = if k < self.top() {
                    self.modules[k + 1].image_under(&self.scalars, &self.boundaries[k + 1])?
                } else {
                    Submodule::zero(&self.scalars, self.rank(k))?
                };
                z.quotient(&b)
            })
            .collect()
    }

    pub fn to_tables(&self) -> Result<DkModelTables> {
        let mut generators = Vec::new();
        let mut any = false;
        for m in &self.modules {
            if m.is_free(&self.scalars) {
                generators.push(None);
            } else {
                any = true;
                generators.push(Some(m.elements(&self.scalars, 1 << 16)?));
            }
        }
        Ok(DkModelTables {
            scalars: self.scalars.name(),
            ranks: self.modules.iter().map(|m| m.rank).collect(),
            boundaries: self.boundaries.iter().map(to_rows).collect(),
            generators: if any { generators } else { Vec::new() },
        })
    }

    pub fn from_tables(t: &DkModelTables) -> Result<DkModel> {
        let scalars = if t.scalars == "Z" {
            Scalars::Integers
        } else {
            Scalars::Ring(Arc::new(super::ring::FinCommRing::parse(&t.scalars)?))
        };
        if t.boundaries.len() != t.ranks.len() {
            return Err(Error::InvalidModule("one boundary per degree expected".into()));
        }
        let mut modules = Vec::new();
        let mut bds = Vec::new();
        for (k, &r) in t.ranks.iter().enumerate() {
            let rows = if k == 0 { 0 } else { t.ranks[k - 1] };
            bds.push(from_rows(&t.boundaries[k], rows, r)?);
            modules.push(match t.generators.get(k).cloned().flatten() {
                None => Submodule::free(&scalars, r),
                Some(g) => Submodule::generated(&scalars, r, &g)?,
            });
        }
        DkModel::new(scalars, modules, bds)
    }
}

impl Submodule {
    /// `a + b` (both inside the same ambient module).
    pub(crate) fn generated_lattice(a: &Submodule, b: &Submodule) -> Result<Submodule> {
        let g = a.lattice.hcat(&b.lattice);
        Ok(Submodule { rank: a.rank, lattice: crate::linalg::matrix::hermite(&g)? })
    }
}

/// A simplex of the Dold–Kan realization: one module element per
/// surjection `[k] ↠ [j]` (only nonzero components are stored).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DkSimplex {
    pub dim: usize,
    pub parts: Vec<(Deg, Vec<i64>)>,
}

impl DkSimplex {
    pub fn zero(dim: usize) -> DkSimplex {
        DkSimplex { dim, parts: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

/// The simplicial module `Γ(M)` through a dimension cutoff, enumerated on
/// demand.
pub struct DkRealization {
    model: Arc<DkModel>,
    cutoff: usize,
    budget: usize,
    elements: Mutex<BTreeMap<usize, Arc<Vec<Vec<i64>>>>>,
}

impl DkRealization {
    pub fn new(model: Arc<DkModel>, cutoff: usize, budget: usize) -> Result<DkRealization> {
        if matches!(model.scalars(), Scalars::Integers) {
            return Err(Error::NotDkBacked("integral complexes have infinite realizations".into()));
        }
        Ok(DkRealization { model, cutoff, budget, elements: Mutex::new(BTreeMap::new()) })
    }

    pub fn model(&self) -> &Arc<DkModel> {
        &self.model
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn elements_of(&self, j: usize) -> Result<Arc<Vec<Vec<i64>>>> {
        let mut cache = self.elements.lock().expect("cache lock");
        if let Some(e) = cache.get(&j) {
            return Ok(e.clone());
        }
        let e = Arc::new(match self.model.module(j) {
            Some(m) => m.elements(self.model.scalars(), self.budget)?,
            None => vec![Vec::new()],
        });
        cache.insert(j, e.clone());
        Ok(e)
    }

    fn is_zero_vec(&self, v: &[i64]) -> bool {
        let z = self.model.scalars().zero();
        v.iter().all(|&a| a == z)
    }

    fn add_vec(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let sc = self.model.scalars();
        a.iter().zip(b).map(|(&x, &y)| sc.add(x, y)).collect()
    }

    fn collect(&self, dim: usize, terms: Vec<(Deg, Vec<i64>)>) -> DkSimplex {
        let mut acc: BTreeMap<Deg, Vec<i64>> = BTreeMap::new();
        for (d, v) in terms {
            match acc.get_mut(&d) {
                Some(w) => *w = self.add_vec(w, &v),
                None => {
                    acc.insert(d, v);
                }
            }
        }
        DkSimplex { dim, parts: acc.into_iter().filter(|(_, v)| !self.is_zero_vec(v)).collect() }
    }

    /// Sum of two simplices of the same dimension.
    pub fn add(&self, a: &DkSimplex, b: &DkSimplex) -> DkSimplex {
        self.collect(a.dim, a.parts.iter().chain(&b.parts).cloned().collect())
    }

    /// The degree-`k` element `x` placed on the nondegenerate summand.
    pub fn embed(&self, k: usize, x: Vec<i64>) -> DkSimplex {
        self.collect(k, vec![(Deg::identity(k), x)])
    }
}

impl SimplicialSet for DkRealization {
    type Simplex = DkSimplex;

    fn dim_of(&self, s: &DkSimplex) -> usize {
        s.dim
    }

    fn face(&self, i: usize, s: &DkSimplex) -> DkSimplex {
        let mut terms = Vec::new();
        for (eta, x) in &s.parts {
            match eta.face(i) {
                DegFace::Surj(d) => terms.push((d, x.clone())),
                DegFace::Hits(0, d) => {
                    let j = eta.target_dim();
                    let b = self.model.boundary(j).expect("degree within the model");
                    terms.push((d, self.model.scalars().apply(b, x)));
                }
                DegFace::Hits(_, _) => {}
            }
        }
        self.collect(s.dim - 1, terms)
    }

    fn degeneracy(&self, i: usize, s: &DkSimplex) -> DkSimplex {
        DkSimplex { dim: s.dim + 1, parts: s.parts.iter().map(|(eta, x)| (eta.degeneracy(i), x.clone())).collect::<BTreeMap<_, _>>().into_iter().collect() }
    }

    fn degeneracy_mask(&self, s: &DkSimplex) -> u32 {
        if s.dim == 0 {
            return 0;
        }
        s.parts.iter().fold((1u32 << s.dim) - 1, |m, (eta, _)| m & eta.mask())
    }

    fn nondegenerate(&self, k: usize) -> Result<Vec<DkSimplex>> {
        let all = self.simplices(k)?;
        Ok(all.into_iter().filter(|s| self.degeneracy_mask(s) == 0).collect())
    }

    fn simplices(&self, k: usize) -> Result<Vec<DkSimplex>> {
        if k > self.cutoff {
            return Err(Error::InsufficientDimension { needed: k, available: self.cutoff });
        }
        let degs: Vec<Deg> = Deg::all_from(k).filter(|d| d.target_dim() <= self.model.top()).collect();
        let lists: Vec<Arc<Vec<Vec<i64>>>> = degs.iter().map(|d| self.elements_of(d.target_dim())).collect::<Result<_>>()?;
        let total: u128 = lists.iter().map(|l| l.len() as u128).product();
        if total > self.budget as u128 {
            return Err(Error::BudgetExceeded(format!("{total} simplices in dimension {k}")));
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0usize; lists.len()];
        loop {
            let parts: Vec<(Deg, Vec<i64>)> = degs
                .iter()
                .zip(&idx)
                .zip(&lists)
                .filter(|((_, &i), l)| !self.is_zero_vec(&l[i]))
                .map(|((d, &i), l)| (*d, l[i].clone()))
                .collect();
            out.push(DkSimplex { dim: k, parts });
            let mut p = 0;
            loop {
                if p == idx.len() {
                    return Ok(out);
                }
                idx[p] += 1;
                if idx[p] < lists[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    fn extent(&self) -> Extent {
        Extent::Skeletal(self.cutoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dkspec::ring::FinCommRing;
    use crate::sset::traits::check_identities;

    fn z(n: u32) -> Scalars {
        Scalars::Ring(Arc::new(FinCommRing::zmod(n).unwrap()))
    }

    #[test]
    fn eilenberg_maclane_homotopy() {
        let k = DkModel::eilenberg_maclane(z(4), 2);
        assert_eq!(k.moore_homotopy(3).unwrap(), vec![AbGroup::zero(), AbGroup::zero(), AbGroup::cyclic(4), AbGroup::zero()]);
        assert_eq!(k.loops(2).unwrap(), DkModel::eilenberg_maclane(z(4), 0));
        assert_eq!(k.loops(1).unwrap(), DkModel::eilenberg_maclane(z(4), 1));
    }

    #[test]
    fn multiplication_by_two_over_integers() {
        let m = DkModel::free(Scalars::Integers, &[1, 1], vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[vec![2]])]).unwrap();
        assert_eq!(m.moore_homotopy(2).unwrap(), vec![AbGroup::cyclic(2), AbGroup::zero(), AbGroup::zero()]);
        let zero = DkModel::free(Scalars::Integers, &[0], vec![IntMatrix::zeros(0, 0)]).unwrap();
        assert!(zero.moore_homotopy(3).unwrap().iter().all(|g| *g == AbGroup::zero()));
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let one = IntMatrix::from_rows(&[vec![1]]);
        let r = DkModel::free(Scalars::Integers, &[1, 1, 1], vec![IntMatrix::zeros(0, 1), one.clone(), one]);
        assert!(matches!(r, Err(Error::InvalidModule(_))));
    }

    #[test]
    fn loops_compose_on_the_nose() {
        // Z/4 ← Z/4 ← Z/4 with boundaries 2, 2
        let two = IntMatrix::from_rows(&[vec![2]]);
        let m = DkModel::free(z(4), &[1, 1, 1, 1], vec![IntMatrix::zeros(0, 1), two.clone(), two.clone(), two]).unwrap();
        for a in 0..=3 {
            for b in 0..=3 {
                assert_eq!(m.loops(a + b).unwrap(), m.loops(a).unwrap().loops(b).unwrap(), "a={a} b={b}");
            }
        }
        for n in 0..=3 {
            let lhs = m.loops(n).unwrap().moore_homotopy(2).unwrap();
            let rhs = m.moore_homotopy(n + 2).unwrap()[n..].to_vec();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn realization_is_simplicial_and_recovers_homotopy() {
        // Z/2 ← Z/2 (identity) ⊕ a K(Z/2, 1) summand
        let m = DkModel::free(z(2), &[1, 2], vec![IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[vec![1, 0]])]).unwrap();
        let real = DkRealization::new(Arc::new(m.clone()), 3, 1 << 16).unwrap();
        check_identities(&real, 3).unwrap();
        // Moore complex by enumeration: N_k = ∩_{i ≥ 1} ker d_i, ∂ = d_0
        let expect = m.moore_homotopy(1).unwrap();
        for k in 0..=1 {
            let normal = |k: usize| -> Vec<DkSimplex> {
                real.simplices(k).unwrap().into_iter().filter(|s| (1..=k).all(|i| real.face(i, s).is_zero())).collect()
            };
            let nk = normal(k);
            let cycles = if k == 0 { nk.len() } else { nk.iter().filter(|s| real.face(0, s).is_zero()).count() };
            let mut bounds: Vec<DkSimplex> = normal(k + 1).iter().map(|s| real.face(0, s)).collect();
            bounds.sort();
            bounds.dedup();
            assert_eq!((cycles / bounds.len()) as u64, expect[k].orders().iter().product::<u64>().max(1));
        }
    }

    #[test]
    fn tables_round_trip() {
        let m = DkModel::eilenberg_maclane(z(4), 2).loops(1).unwrap();
        let t = m.to_tables().unwrap();
        assert_eq!(DkModel::from_tables(&t).unwrap(), m);
        let two = IntMatrix::from_rows(&[vec![2]]);
        let c = DkModel::free(z(4), &[1, 1], vec![IntMatrix::zeros(0, 1), two]).unwrap().loops(1).unwrap();
        let back = DkModel::from_tables(&c.to_tables().unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
