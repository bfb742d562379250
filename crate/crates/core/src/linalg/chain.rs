//! Sparse integral chain complexes, chain maps, mapping cones and homology.
//!
//! Homology is computed in two stages: a sparse elimination that cancels
//! pairs of cells joined by a unit coefficient (this never changes the
//! homology), followed by a dense Smith normal form of whatever is left.
//! `homology_dense` skips the first stage and serves as an oracle in tests.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::linalg::abgroup::AbGroup;
use crate::linalg::matrix::{invariant_factors, IntMatrix};

/// Sparse vector: strictly increasing indices, no zero coefficients.
pub type SparseVec = Vec<(u32, i64)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { nrows, cols }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n as u32).map(|i| vec![(i, 1)]).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows, self.cols.len());
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m.set(r as usize, c, v as i128);
            }
        }
        m
    }

    /// Product `self * other` (apply `other` first).
    pub fn compose(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        assert_eq!(self.cols.len(), other.nrows, "dimension mismatch in composition");
        let mut acc = Accumulator::new(self.nrows);
        let mut out = Vec::with_capacity(other.cols.len());
        for col in &other.cols {
            for &(k, a) in col {
                acc.axpy(a, &self.cols[k as usize])?;
            }
            out.push(acc.drain());
        }
        Ok(SparseMatrix { nrows: self.nrows, cols: out })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}

/// Normalizes an unsorted list of (index, coefficient) terms.
pub fn normalize(mut terms: Vec<(u32, i64)>) -> SparseVec {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// Dense scatter/gather accumulator for sparse column arithmetic.
struct Accumulator {
    vals: Vec<i64>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator { vals: vec![0; n], touched: Vec::new(), mark: vec![false; n] }
    }

    fn add(&mut self, i: u32, v: i64) -> Result<()> {
        let iu = i as usize;
        self.vals[iu] = self.vals[iu].checked_add(v).ok_or(Error::Overflow)?;
        if !self.mark[iu] {
            self.mark[iu] = true;
            self.touched.push(i);
        }
        Ok(())
    }

    fn axpy(&mut self, a: i64, col: &SparseVec) -> Result<()> {
        for &(i, v) in col {
            self.add(i, a.checked_mul(v).ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    fn get(&self, i: u32) -> i64 {
        self.vals[i as usize]
    }

    fn drain(&mut self) -> SparseVec {
        let mut out = Vec::new();
        self.touched.sort_unstable();
        for &i in &self.touched {
            let iu = i as usize;
            if self.vals[iu] != 0 {
                out.push((i, self.vals[iu]));
            }
            self.vals[iu] = 0;
            self.mark[iu] = false;
        }
        self.touched.clear();
        out
    }
}

/// A nonnegatively graded chain complex of finitely generated free abelian
/// groups, known through degree `top()`.  `boundaries[k]` maps `C_k` to
/// `C_{k-1}`; `boundaries[0]` is the zero map to the zero group.  When
/// `complete` is false the complex may continue above `top()`, so homology
/// is only determined through `top() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
    pub complete: bool,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseMatrix>, complete: bool) -> Self {
        assert_eq!(ranks.len(), boundaries.len());
        for (k, b) in boundaries.iter().enumerate() {
            assert_eq!(b.ncols(), ranks[k], "boundary {k} has wrong column count");
            let rows = if k == 0 { 0 } else { ranks[k - 1] };
            assert_eq!(b.nrows, rows, "boundary {k} has wrong row count");
        }
        ChainComplex { ranks, boundaries, complete }
    }

    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// Highest degree whose homology is determined by the stored data.
    pub fn valid_through(&self) -> Option<usize> {
        if self.ranks.is_empty() {
            None
        } else if self.complete {
            Some(usize::MAX)
        } else {
            self.top().checked_sub(1)
        }
    }

    fn require(&self, k_max: usize) -> Result<()> {
        match self.valid_through() {
            Some(v) if v >= k_max => Ok(()),
            _ => Err(Error::InsufficientDimension { needed: k_max + 1, available: self.top() }),
        }
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    fn boundary(&self, k: usize) -> SparseMatrix {
        match self.boundaries.get(k) {
            Some(b) => b.clone(),
            None => SparseMatrix::zero(self.rank(k.wrapping_sub(1)), self.rank(k)),
        }
    }

    /// True iff every composite `∂_{k-1} ∂_k` vanishes.
    pub fn boundary_squared_is_zero(&self) -> Result<bool> {
        for k in 2..self.boundaries.len() {
            if !self.boundaries[k - 1].compose(&self.boundaries[k])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Integral homology in degrees `0..=k_max`.
    pub fn homology(&self, k_max: usize) -> Result<Vec<AbGroup>> {
        self.require(k_max)?;
        let red = reduce(self, k_max + 1)?;
        groups_from_dense(&red.ranks, &red.remainders, k_max)
    }

    /// The same groups computed without sparse elimination.
    pub fn homology_dense(&self, k_max: usize) -> Result<Vec<AbGroup>> {
        self.require(k_max)?;
        let top = k_max + 1;
        let ranks: Vec<usize> = (0..=top).map(|k| self.rank(k)).collect();
        let mats: Vec<IntMatrix> = (0..=top).map(|k| self.boundary(k).to_dense()).collect();
        groups_from_dense(&ranks, &mats, k_max)
    }

    /// Truncates to degrees `0..=top`, marking the result incomplete if
    /// anything was dropped.
    pub fn truncate(&self, top: usize) -> ChainComplex {
        if top >= self.top() {
            return self.clone();
        }
        ChainComplex {
            ranks: self.ranks[..=top].to_vec(),
            boundaries: self.boundaries[..=top].to_vec(),
            complete: false,
        }
    }
}

struct Reduced {
    ranks: Vec<usize>,
    remainders: Vec<IntMatrix>,
}

/// Cancels unit-coefficient pairs degree by degree up to `top`.
fn reduce(cx: &ChainComplex, top: usize) -> Result<Reduced> {
    let n_deg = top + 1;
    // alive[k][i]: cell i of C_k survives.
    let mut alive: Vec<Vec<bool>> = (0..n_deg).map(|k| vec![true; cx.rank(k)]).collect();
    // remainder columns per degree, indexed by original column ids.
    let mut rem: Vec<Vec<(u32, SparseVec)>> = vec![Vec::new(); n_deg];
    for k in 1..n_deg {
        let bd = cx.boundary(k);
        let nrows = bd.nrows;
        let mut acc = Accumulator::new(nrows);
        let mut pivot_of_row: Vec<u32> = vec![u32::MAX; nrows];
        let mut pivots: Vec<(u32, SparseVec)> = Vec::new(); // (row, reduced column)
        let mut rest: Vec<(u32, SparseVec)> = Vec::new();
        let reduce_col = |acc: &mut Accumulator,
                          pivot_of_row: &Vec<u32>,
                          pivots: &Vec<(u32, SparseVec)>|
         -> Result<SparseVec> {
            let mut heap: BinaryHeap<Reverse<u32>> = acc
                .touched
                .iter()
                .filter(|&&r| pivot_of_row[r as usize] != u32::MAX)
                .map(|&r| Reverse(pivot_of_row[r as usize]))
                .collect();
            while let Some(Reverse(p)) = heap.pop() {
                let (row, col) = &pivots[p as usize];
                let x = acc.get(*row);
                if x == 0 {
                    continue;
                }
                let pv = col.iter().find(|t| t.0 == *row).expect("pivot entry").1;
                // pv is ±1, so x / pv = x * pv.
                let factor = -(x.checked_mul(pv).ok_or(Error::Overflow)?);
                for &(r, v) in col {
                    let was_zero = acc.get(r) == 0;
                    acc.add(r, factor.checked_mul(v).ok_or(Error::Overflow)?)?;
                    let q = pivot_of_row[r as usize];
                    if was_zero && q != u32::MAX && q > p {
                        heap.push(Reverse(q));
                    }
                }
            }
            Ok(acc.drain())
        };
        for (c, col) in bd.cols.iter().enumerate() {
            for &(r, v) in col {
                if alive[k - 1][r as usize] {
                    acc.add(r, v)?;
                }
            }
            let v = reduce_col(&mut acc, &pivot_of_row, &pivots)?;
            if let Some(&(row, _)) = v.iter().find(|t| t.1.abs() == 1) {
                pivot_of_row[row as usize] = pivots.len() as u32;
                pivots.push((row, v));
                alive[k][c] = false;
            } else {
                rest.push((c as u32, v));
            }
        }
        // Re-reduce earlier remainder columns against pivots found later.
        for (_, v) in rest.iter_mut() {
            if v.iter().any(|t| pivot_of_row[t.0 as usize] != u32::MAX) {
                for &(r, x) in v.iter() {
                    acc.add(r, x)?;
                }
                *v = reduce_col(&mut acc, &pivot_of_row, &pivots)?;
            }
        }
        for (row, _) in &pivots {
            alive[k - 1][*row as usize] = false;
        }
        rem[k] = rest;
    }
    // Assemble dense remainders over surviving cells.
    let mut ranks = Vec::with_capacity(n_deg);
    let mut index: Vec<Vec<u32>> = Vec::with_capacity(n_deg);
    for a in alive.iter() {
        let mut idx = vec![u32::MAX; a.len()];
        let mut n = 0u32;
        for (i, &live) in a.iter().enumerate() {
            if live {
                idx[i] = n;
                n += 1;
            }
        }
        ranks.push(n as usize);
        index.push(idx);
    }
    let mut remainders = Vec::with_capacity(n_deg);
    remainders.push(IntMatrix::zeros(0, ranks[0]));
    for k in 1..n_deg {
        let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
        for (c, col) in &rem[k] {
            let cj = index[k][*c as usize];
            if cj == u32::MAX {
                continue;
            }
            for &(r, v) in col {
                let ri = index[k - 1][r as usize];
                debug_assert!(ri != u32::MAX, "remainder touches a cancelled cell");
                m.set(ri as usize, cj as usize, v as i128);
            }
        }
        remainders.push(m);
    }
    Ok(Reduced { ranks, remainders })
}

fn groups_from_dense(ranks: &[usize], mats: &[IntMatrix], k_max: usize) -> Result<Vec<AbGroup>> {
    let factors: Vec<Vec<i128>> = mats.iter().map(invariant_factors).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let rank_out = factors[k].len();
        let rank_in = factors[k + 1].len();
        let free = ranks[k] - rank_out - rank_in;
        let tors: Vec<u64> = factors[k + 1].iter().map(|&d| d as u64).filter(|&d| d > 1).collect();
        out.push(AbGroup::from_cyclic(free, &tors));
    }
    Ok(out)
}

/// Degreewise matrices `f_k : A_k → B_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub degrees: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn is_chain_map(&self, a: &ChainComplex, b: &ChainComplex) -> Result<bool> {
        for k in 1..self.degrees.len().min(a.boundaries.len()).min(b.boundaries.len()) {
            let lhs = b.boundaries[k].compose(&self.degrees[k])?;
            let rhs = self.degrees[k - 1].compose(&a.boundaries[k])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Mapping cone: `Cone_k = B_k ⊕ A_{k-1}`, `∂(b, a) = (∂b + f a, -∂a)`.
pub fn mapping_cone(f: &ChainMap, a: &ChainComplex, b: &ChainComplex, top: usize) -> ChainComplex {
    let ra = |k: usize| if k == 0 { 0 } else { a.rank(k - 1) };
    let ranks: Vec<usize> = (0..=top).map(|k| b.rank(k) + ra(k)).collect();
    let mut bds = vec![SparseMatrix::zero(0, ranks[0])];
    for k in 1..=top {
        let shift = b.rank(k - 1) as u32;
        let mut cols = Vec::with_capacity(ranks[k]);
        for c in b.boundary(k).cols {
            cols.push(c);
        }
        let fa = f.degrees.get(k - 1).cloned().unwrap_or_else(|| SparseMatrix::zero(b.rank(k - 1), a.rank(k - 1)));
        let da = a.boundary(k - 1);
        for j in 0..a.rank(k - 1) {
            let mut col: SparseVec = fa.cols[j].clone();
            if k >= 2 {
                col.extend(da.cols[j].iter().map(|&(r, v)| (r + shift, -v)));
            }
            cols.push(col);
        }
        bds.push(SparseMatrix { nrows: ranks[k - 1], cols });
    }
    ChainComplex { ranks, boundaries: bds, complete: false }
}

/// Outcome of an isomorphism test in a bounded range of degrees.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    Pass { through: usize },
    Fail { degree: usize, source: String, target: String, reason: String },
    OutOfRange { requested: usize, available: usize },
}

impl IsoVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, IsoVerdict::Pass { .. })
    }
}

/// Decides whether `f` induces isomorphisms `H_k(A) → H_k(B)` for all
/// `k ≤ k_max`.  The cone being acyclic through `k_max` gives isomorphisms
/// below `k_max` and a surjection in degree `k_max`; an abstract
/// isomorphism of the two finitely generated groups then upgrades that
/// surjection to an isomorphism.
pub fn homology_iso(f: &ChainMap, a: &ChainComplex, b: &ChainComplex, k_max: usize) -> Result<IsoVerdict> {
    let avail = a.valid_through().unwrap_or(0).min(b.valid_through().unwrap_or(0));
    if a.valid_through().is_none() || b.valid_through().is_none() || avail < k_max {
        return Ok(IsoVerdict::OutOfRange { requested: k_max, available: avail });
    }
    let ha = a.homology(k_max)?;
    let hb = b.homology(k_max)?;
    let cone = mapping_cone(f, a, b, k_max + 1);
    let hc = cone.homology(k_max)?;
    for k in 0..=k_max {
        if !hc[k].is_zero() {
            return Ok(IsoVerdict::Fail {
                degree: k,
                source: ha[k].to_string(),
                target: hb[k].to_string(),
                reason: format!("mapping cone has H_{k} = {}", hc[k]),
            });
        }
    }
    if ha[k_max] != hb[k_max] {
        return Ok(IsoVerdict::Fail {
            degree: k_max,
            source: ha[k_max].to_string(),
            target: hb[k_max].to_string(),
            reason: "groups differ".into(),
        });
    }
    Ok(IsoVerdict::Pass { through: k_max })
}

/// Tensor product of two complexes through degree `top`, with the Koszul
/// sign `∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y`.  Basis of degree `n` is ordered
/// by `p` ascending, then `x` index, then `y` index.
pub fn tensor(a: &ChainComplex, b: &ChainComplex, top: usize) -> (ChainComplex, Vec<Vec<(usize, usize)>>) {
    // offsets[n][p] = starting index of the block A_p ⊗ B_{n-p} in degree n
    let mut offsets = Vec::new();
    let mut ranks = Vec::new();
    let mut blocks = Vec::new();
    for n in 0..=top {
        let mut off = Vec::new();
        let mut total = 0;
        let mut bl = Vec::new();
        for p in 0..=n {
            off.push(total);
            total += a.rank(p) * b.rank(n - p);
            bl.push((p, n - p));
        }
        offsets.push(off);
        ranks.push(total);
        blocks.push(bl);
    }
    let mut bds = vec![SparseMatrix::zero(0, ranks[0])];
    for n in 1..=top {
        let mut cols = Vec::with_capacity(ranks[n]);
        for p in 0..=n {
            let q = n - p;
            let (ra, rb) = (a.rank(p), b.rank(q));
            let da = a.boundary(p);
            let db = b.boundary(q);
            for x in 0..ra {
                for y in 0..rb {
                    let mut terms = Vec::new();
                    if p > 0 {
                        let base = offsets[n - 1][p - 1];
                        for &(xi, v) in &da.cols[x] {
                            terms.push(((base + xi as usize * rb + y) as u32, v));
                        }
                    }
                    if q > 0 {
                        let base = offsets[n - 1][p];
                        let rbq = b.rank(q - 1);
                        let sign = if p % 2 == 0 { 1 } else { -1 };
                        for &(yi, v) in &db.cols[y] {
                            terms.push(((base + x * rbq + yi as usize) as u32, sign * v));
                        }
                    }
                    cols.push(normalize(terms));
                }
            }
        }
        bds.push(SparseMatrix { nrows: ranks[n - 1], cols });
    }
    let complete = a.complete && b.complete && top >= a.top() + b.top();
    (ChainComplex { ranks, boundaries: bds, complete }, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        // one vertex, one edge with zero boundary
        ChainComplex::new(vec![1, 1], vec![SparseMatrix::zero(0, 1), SparseMatrix::zero(1, 1)], true)
    }

    fn rp2() -> ChainComplex {
        // one vertex v, edges a, b; triangles U (a,b,a-ish) with boundary a+b, L with b-a... (ΔC model)
        ChainComplex::new(
            vec![1, 2, 2],
            vec![
                SparseMatrix::zero(0, 1),
                SparseMatrix::zero(1, 2),
                SparseMatrix::new(2, vec![vec![(0, 1), (1, 1)], vec![(0, -1), (1, 1)]]),
            ],
            true,
        )
    }

    #[test]
    fn circle_and_rp2() {
        let h = circle().homology(1).unwrap();
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::free(1)]);
        let h = rp2().homology(2).unwrap();
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::cyclic(2), AbGroup::zero()]);
        assert_eq!(rp2().homology_dense(2).unwrap(), h);
    }

    #[test]
    fn truncated_complex_refuses_top_degree() {
        let t = rp2().truncate(1);
        assert!(t.homology(0).is_ok());
        assert!(matches!(t.homology(1), Err(Error::InsufficientDimension { .. })));
    }

    #[test]
    fn doubling_map_on_circle_fails_iso() {
        let c = circle();
        let f = ChainMap { degrees: vec![SparseMatrix::identity(1), SparseMatrix::new(1, vec![vec![(0, 2)]])] };
        assert!(f.is_chain_map(&c, &c).unwrap());
        let v = homology_iso(&f, &c, &c, 1).unwrap();
        assert!(matches!(v, IsoVerdict::Fail { degree: 1, .. }));
        let id = ChainMap { degrees: vec![SparseMatrix::identity(1), SparseMatrix::identity(1)] };
        assert!(homology_iso(&id, &c, &c, 1).unwrap().passed());
    }

    #[test]
    fn torus_by_kunneth() {
        let (t, _) = tensor(&circle(), &circle(), 2);
        assert!(t.boundary_squared_is_zero().unwrap());
        let h = t.homology(2).unwrap();
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::free(2), AbGroup::free(1)]);
        let (p, _) = tensor(&rp2(), &rp2(), 3);
        let h = p.homology(2).unwrap();
        // H_2(RP2 x RP2) = Z/2 (Tor-free Künneth part Z/2⊗Z/2)
        assert_eq!(h[2], AbGroup::cyclic(2));
        assert_eq!(p.homology_dense(2).unwrap(), h);
    }
}
