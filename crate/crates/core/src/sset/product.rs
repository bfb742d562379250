//! Cartesian products of explicit simplicial sets.

use std::sync::Arc;

use crate::error::Result;
use crate::sset::deg::Deg;
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::materialize::{materialize, Materialized};
use crate::sset::traits::{Extent, SimplicialSet};

/// The lazy product `X_1 × ... × X_n`; a simplex is a tuple of equal-dimension
/// simplices, degenerate exactly when all components share a degeneracy.
#[derive(Clone, Debug)]
pub struct FinProduct {
    pub factors: Vec<Arc<FinSSet>>,
}

impl FinProduct {
    pub fn new(factors: Vec<Arc<FinSSet>>) -> Self {
        FinProduct { factors }
    }

    fn collect(&self, k: usize, f: usize, and_mask: u32, cur: &mut Vec<FinSimplex>, out: &mut Vec<Vec<FinSimplex>>) {
        if f == self.factors.len() {
            if and_mask == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let x = &self.factors[f];
        for eta in Deg::all_from(k) {
            let j = eta.target_dim();
            if j > x.dim_top() {
                continue;
            }
            let m = and_mask & eta.mask();
            // Remaining factors cannot clear bits of a mask that is already
            // forced; any pattern is allowed, so prune only at the end.
            for b in 0..x.nondeg_count(j) as u32 {
                cur.push(FinSimplex { deg: eta, base: b });
                self.collect(k, f + 1, m, cur, out);
                cur.pop();
            }
        }
    }
}

impl SimplicialSet for FinProduct {
    type Simplex = Vec<FinSimplex>;

    fn dim_of(&self, s: &Self::Simplex) -> usize {
        s.first().map_or(0, |x| x.dim())
    }

    fn face(&self, i: usize, s: &Self::Simplex) -> Self::Simplex {
        s.iter().zip(&self.factors).map(|(x, f)| f.face(i, x)).collect()
    }

    fn degeneracy(&self, i: usize, s: &Self::Simplex) -> Self::Simplex {
        s.iter().map(|x| FinSimplex { deg: x.deg.degeneracy(i), base: x.base }).collect()
    }

    fn degeneracy_mask(&self, s: &Self::Simplex) -> u32 {
        if s.is_empty() {
            // the empty product is a point: everything above dimension 0 is degenerate
            return 0;
        }
        s.iter().fold(u32::MAX, |m, x| m & x.deg.mask())
    }

    fn nondegenerate(&self, k: usize) -> Result<Vec<Self::Simplex>> {
        if let Extent::Skeletal(t) = self.extent() {
            if k > t {
                return Err(crate::Error::InsufficientDimension { needed: k, available: t });
            }
        }
        if self.factors.is_empty() {
            return Ok(if k == 0 { vec![Vec::new()] } else { Vec::new() });
        }
        let mut out = Vec::new();
        self.collect(k, 0, if k == 0 { 0 } else { (1u32 << k) - 1 }, &mut Vec::new(), &mut out);
        out.sort();
        Ok(out)
    }

    fn extent(&self) -> Extent {
        if self.factors.iter().all(|f| f.is_complete()) {
            Extent::Complete(self.factors.iter().map(|f| f.dim_top()).sum())
        } else {
            Extent::Skeletal(self.factors.iter().map(|f| f.dim_top()).min().unwrap_or(0))
        }
    }

    fn apply_deg(&self, eta: Deg, s: &Self::Simplex) -> Self::Simplex {
        s.iter().map(|x| FinSimplex { deg: eta.then(x.deg), base: x.base }).collect()
    }
}

/// An explicit product together with its component bookkeeping.
#[derive(Clone, Debug)]
pub struct ProductSet {
    pub lazy: FinProduct,
    pub mat: Materialized<Vec<FinSimplex>>,
}

impl ProductSet {
    pub fn new(factors: Vec<Arc<FinSSet>>, top: usize) -> Result<Self> {
        let lazy = FinProduct::new(factors);
        let mat = materialize(&lazy, top)?;
        Ok(ProductSet { lazy, mat })
    }

    pub fn set(&self) -> &Arc<FinSSet> {
        &self.mat.set
    }

    pub fn factors(&self) -> &[Arc<FinSSet>] {
        &self.lazy.factors
    }

    /// The product simplex with the given components.
    pub fn encode(&self, components: &[FinSimplex]) -> Result<FinSimplex> {
        if components.is_empty() {
            // the empty product is the point
            let k = 0;
            return Ok(FinSimplex::nondeg(k, 0));
        }
        self.mat.encode(&self.lazy, &components.to_vec())
    }

    pub fn decode(&self, s: &FinSimplex) -> Vec<FinSimplex> {
        if self.lazy.factors.is_empty() {
            return Vec::new();
        }
        self.mat.decode(&self.lazy, s)
    }

    pub fn projection(&self, i: usize) -> Result<SMap> {
        SMap::from_fn(self.set().clone(), self.lazy.factors[i].clone(), |s| self.decode(s)[i])
    }

    /// `f_1 × ... × f_n` into another product.
    pub fn map_product(&self, target: &ProductSet, maps: &[&SMap]) -> Result<SMap> {
        SMap::from_fn(self.set().clone(), target.set().clone(), |s| {
            let comps: Vec<FinSimplex> = self.decode(s).iter().zip(maps).map(|(x, m)| m.apply(x)).collect();
            target.encode(&comps).expect("image lies in the target product")
        })
    }
}

/// `X × Y` as an explicit simplicial set.
pub fn product(x: &Arc<FinSSet>, y: &Arc<FinSSet>) -> Result<ProductSet> {
    let top = if x.is_complete() && y.is_complete() {
        x.dim_top() + y.dim_top()
    } else {
        x.dim_top().min(y.dim_top())
    };
    ProductSet::new(vec![x.clone(), y.clone()], top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::finsset::from_ordered_complex;
    use crate::sset::traits::check_identities;

    fn circle() -> Arc<FinSSet> {
        let mut b = FinSSet::builder().vertices(1);
        b.add_nd(&[0, 0]);
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn square_of_interval_has_two_triangles() {
        let i = Arc::new(from_ordered_complex(2, &[vec![0, 1]]).unwrap());
        let p = product(&i, &i).unwrap();
        assert_eq!(p.set().counts(), &[4, 5, 2]);
        check_identities(p.set().as_ref(), 3).unwrap();
    }

    #[test]
    fn torus_counts_and_projections() {
        let c = circle();
        let t = product(&c, &c).unwrap();
        assert_eq!(t.set().counts(), &[1, 3, 2]);
        let p0 = t.projection(0).unwrap();
        assert!(p0.validate().is_ok());
        for k in 0..=2 {
            for s in t.set().nondegenerate(k).unwrap() {
                assert_eq!(t.encode(&t.decode(&s)).unwrap(), s);
            }
        }
    }

    #[test]
    fn point_is_a_unit() {
        let c = circle();
        let p = Arc::new(FinSSet::point());
        let t = product(&p, &c).unwrap();
        assert_eq!(t.set().counts(), c.counts());
    }
}
