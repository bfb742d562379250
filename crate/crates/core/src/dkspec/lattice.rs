//! Submodules of free modules over `Z` or a finite commutative ring, held as
//! integer lattices.
//!
//! `R^t` is presented as `Z^{t·s} / E` where `s` is the number of cyclic
//! factors of `(R, +)` and `E` is the diagonal relation lattice.  A
//! submodule is stored as the canonical basis of its full preimage in
//! `Z^{t·s}` (which contains `E`), so equal submodules compare equal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::matrix::{hermite, kernel, smith, solve};
use crate::linalg::{AbGroup, IntMatrix};

use super::ring::FinCommRing;

#[derive(Clone, Debug, PartialEq)]
pub enum Scalars {
    Integers,
    Ring(Arc<FinCommRing>),
}

impl Scalars {
    pub fn name(&self) -> String {
        match self {
            Scalars::Integers => "Z".into(),
            Scalars::Ring(r) => r.name().to_string(),
        }
    }

    pub fn ring(&self) -> Option<&Arc<FinCommRing>> {
        match self {
            Scalars::Integers => None,
            Scalars::Ring(r) => Some(r),
        }
    }

    /// Orders of the additive cyclic factors (`0` = infinite cyclic).
    pub fn orders(&self) -> Vec<u64> {
        match self {
            Scalars::Integers => vec![0],
            Scalars::Ring(r) => r.additive().orders.clone(),
        }
    }

    fn width(&self) -> usize {
        self.orders().len()
    }

    pub fn one(&self) -> i64 {
        match self {
            Scalars::Integers => 1,
            Scalars::Ring(r) => r.one() as i64,
        }
    }

    pub fn zero(&self) -> i64 {
        match self {
            Scalars::Integers => 0,
            Scalars::Ring(r) => r.zero() as i64,
        }
    }

    /// Image of an integer scalar.
    pub fn from_int(&self, k: i64) -> i64 {
        match self {
            Scalars::Integers => k,
            Scalars::Ring(r) => r.from_int(k) as i64,
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        match self {
            Scalars::Integers => a + b,
            Scalars::Ring(r) => r.add(a as u32, b as u32) as i64,
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match self {
            Scalars::Integers => a * b,
            Scalars::Ring(r) => r.mul(a as u32, b as u32) as i64,
        }
    }

    pub fn neg(&self, a: i64) -> i64 {
        match self {
            Scalars::Integers => -a,
            Scalars::Ring(r) => r.neg(a as u32) as i64,
        }
    }

    /// Additive coordinates of a scalar.
    fn coords(&self, a: i64) -> Vec<i128> {
        match self {
            Scalars::Integers => vec![a as i128],
            Scalars::Ring(r) => r.additive().coords(a as u32).iter().map(|&c| c as i128).collect(),
        }
    }

    /// The additive generators of the scalars.
    fn basis(&self) -> Vec<i64> {
        match self {
            Scalars::Integers => vec![1],
            Scalars::Ring(r) => r.additive().basis.iter().map(|&b| b as i64).collect(),
        }
    }

    /// Lattice coordinates of a module vector.
    pub fn vector_coords(&self, v: &[i64]) -> Vec<i128> {
        v.iter().flat_map(|&a| self.coords(a)).collect()
    }

    /// Module vector with the given lattice coordinates.
    pub fn vector_from_coords(&self, c: &[i128]) -> Vec<i64> {
        match self {
            Scalars::Integers => c.iter().map(|&v| v as i64).collect(),
            Scalars::Ring(r) => c.chunks(self.width()).map(|ch| r.additive().element(ch) as i64).collect(),
        }
    }

    /// Relation lattice of `R^t` (columns).
    pub fn relations(&self, t: usize) -> IntMatrix {
        let orders = self.orders();
        let s = orders.len();
        let cols: Vec<Vec<i128>> = (0..t * s)
            .filter(|&i| orders[i % s] != 0)
            .map(|i| {
                let mut c = vec![0i128; t * s];
                c[i] = orders[i % s] as i128;
                c
            })
            .collect();
        IntMatrix::from_cols(t * s, &cols)
    }

    /// Integer matrix of an `R`-linear map `R^t → R^u` given by scalar
    /// entries `m[row][col]` (`u × t`).
    pub fn lattice_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let (u, t) = (m.rows(), m.cols());
        let s = self.width();
        let basis = self.basis();
        let mut out = IntMatrix::zeros(u * s, t * s);
        for j in 0..t {
            for (i, &b) in basis.iter().enumerate() {
                for l in 0..u {
                    let c = self.coords(self.mul(m.get(l, j) as i64, b));
                    for (k, &v) in c.iter().enumerate() {
                        out.set(l * s + k, j * s + i, v);
                    }
                }
            }
        }
        out
    }

    /// Applies a scalar matrix to a module vector.
    pub fn apply(&self, m: &IntMatrix, v: &[i64]) -> Vec<i64> {
        (0..m.rows())
            .map(|r| (0..m.cols()).fold(self.zero(), |acc, c| self.add(acc, self.mul(m.get(r, c) as i64, v[c]))))
            .collect()
    }
}

/// A submodule of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub rank: usize,
    /// Canonical lattice basis (columns) of the preimage in `Z^{rank·s}`.
    pub lattice: IntMatrix,
}

impl Submodule {
    pub fn free(sc: &Scalars, rank: usize) -> Submodule {
        Submodule { rank, lattice: IntMatrix::identity(rank * sc.width()) }
    }

    pub fn zero(sc: &Scalars, rank: usize) -> Result<Submodule> {
        Ok(Submodule { rank, lattice: hermite(&sc.relations(rank))? })
    }

    /// The submodule generated by the given vectors.
    pub fn generated(sc: &Scalars, rank: usize, gens: &[Vec<i64>]) -> Result<Submodule> {
        let n = rank * sc.width();
        let basis = sc.basis();
        let mut cols: Vec<Vec<i128>> = Vec::new();
        for g in gens {
            if g.len() != rank {
                return Err(Error::InvalidModule("generator of wrong length".into()));
            }
            for &b in &basis {
                let v: Vec<i64> = g.iter().map(|&a| sc.mul(a, b)).collect();
                cols.push(sc.vector_coords(&v));
            }
        }
        let g = IntMatrix::from_cols(n, &cols).hcat(&sc.relations(rank));
        Ok(Submodule { rank, lattice: hermite(&g)? })
    }

    pub fn is_free(&self, sc: &Scalars) -> bool {
        *self == Submodule::free(sc, self.rank)
    }

    pub fn contains(&self, sc: &Scalars, v: &[i64]) -> Result<bool> {
        let c = IntMatrix::from_cols(self.lattice.rows(), &[sc.vector_coords(v)]);
        Ok(solve(&self.lattice, &c)?.is_some())
    }

    /// `{v ∈ self : m v = 0}` for a scalar matrix `m : R^rank → R^u`.
    pub fn kernel_of(&self, sc: &Scalars, m: &IntMatrix) -> Result<Submodule> {
        let u = m.rows();
        let a = sc.lattice_matrix(m).mul(&self.lattice)?;
        let e = sc.relations(u);
        let big = a.hcat(&e);
        let k = kernel(&big)?;
        let coeffs = k.select_rows(0..self.lattice.cols());
        let gens = self.lattice.mul(&coeffs)?.hcat(&sc.relations(self.rank));
        Ok(Submodule { rank: self.rank, lattice: hermite(&gens)? })
    }

    /// The image `m(self) ⊆ R^u`.
    pub fn image_under(&self, sc: &Scalars, m: &IntMatrix) -> Result<Submodule> {
        let u = m.rows();
        let a = sc.lattice_matrix(m).mul(&self.lattice)?.hcat(&sc.relations(u));
        Ok(Submodule { rank: u, lattice: hermite(&a)? })
    }

    /// `self / sub` as an abstract group (`sub ⊆ self`).
    pub fn quotient(&self, sub: &Submodule) -> Result<AbGroup> {
        if self.lattice.cols() == 0 {
            return Ok(AbGroup::zero());
        }
        let x = solve(&self.lattice, &sub.lattice)?.ok_or_else(|| Error::InvalidModule("not a submodule".into()))?;
        let s = smith(&x)?;
        let free = self.lattice.cols() - s.rank;
        let tors: Vec<u64> = s.diag[..s.rank].iter().map(|&d| d as u64).filter(|&d| d > 1).collect();
        Ok(AbGroup::from_cyclic(free, &tors))
    }

    /// All elements (finite scalars only), sorted.
    pub fn elements(&self, sc: &Scalars, budget: usize) -> Result<Vec<Vec<i64>>> {
        if matches!(sc, Scalars::Integers) {
            if self.lattice.cols() == 0 {
                return Ok(vec![vec![0; self.rank]]);
            }
            return Err(Error::BudgetExceeded("integer modules are infinite".into()));
        }
        let e = sc.relations(self.rank);
        let x = solve(&self.lattice, &e)?.ok_or_else(|| Error::InvalidModule("relations not contained".into()))?;
        let s = smith(&x)?;
        // generators of L/E: columns of lattice · U^{-1}, orders diag
        let gens = self.lattice.mul(&s.u_inv)?;
        let orders: Vec<u64> = (0..x.rows()).map(|i| if i < s.rank { s.diag[i] as u64 } else { 0 }).collect();
        if orders.contains(&0) {
            return Err(Error::InvalidModule("infinite quotient".into()));
        }
        let total: u128 = orders.iter().map(|&o| o as u128).product();
        if total > budget as u128 {
            return Err(Error::BudgetExceeded(format!("{total} module elements exceed the budget {budget}")));
        }
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total as u64 {
            let mut rest = idx;
            let mut c = vec![0i128; gens.rows()];
            for (j, &o) in orders.iter().enumerate() {
                let k = (rest % o) as i128;
                rest /= o;
                if k != 0 {
                    for (r, cr) in c.iter_mut().enumerate() {
                        *cr += k * gens.get(r, j);
                    }
                }
            }
            out.push(sc.vector_from_coords(&c));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Scalars {
        Scalars::Ring(Arc::new(FinCommRing::parse(s).unwrap()))
    }

    #[test]
    fn kernel_and_quotient_over_z4() {
        let sc = ring("Z/4");
        // multiplication by 2 on Z/4: kernel {0, 2}, image {0, 2}
        let two = IntMatrix::from_rows(&[vec![2]]);
        let free = Submodule::free(&sc, 1);
        let k = free.kernel_of(&sc, &two).unwrap();
        assert_eq!(k.elements(&sc, 100).unwrap(), vec![vec![0], vec![2]]);
        let im = free.image_under(&sc, &two).unwrap();
        assert_eq!(k, im);
        assert_eq!(free.quotient(&im).unwrap(), AbGroup::cyclic(2));
        assert_eq!(free.quotient(&Submodule::zero(&sc, 1).unwrap()).unwrap(), AbGroup::cyclic(4));
    }

    #[test]
    fn generated_submodules_over_nonreduced_ring() {
        let sc = ring("F2[x]/x^2");
        let r = sc.ring().unwrap().clone();
        let x = (0..4).find(|&e| r.label(e) == "x").unwrap() as i64;
        let m = Submodule::generated(&sc, 1, &[vec![x]]).unwrap();
        assert_eq!(m.elements(&sc, 100).unwrap().len(), 2);
        assert!(m.contains(&sc, &[x]).unwrap());
        assert!(!m.contains(&sc, &[1]).unwrap());
    }

    #[test]
    fn integer_cokernel() {
        let sc = Scalars::Integers;
        let two = IntMatrix::from_rows(&[vec![2]]);
        let free = Submodule::free(&sc, 1);
        assert_eq!(free.quotient(&free.image_under(&sc, &two).unwrap()).unwrap(), AbGroup::cyclic(2));
        assert_eq!(free.kernel_of(&sc, &two).unwrap().lattice.cols(), 0);
    }
}
