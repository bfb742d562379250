//! Quotients by subcomplexes and smash products.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::finsset::{FinSSet, FinSimplex, PointedFinSSet, SMap};
use crate::sset::product::ProductSet;

/// `X / A` for a subcomplex `A`, which collapses to one vertex.  The
/// collapsed vertex takes the slot of the least-indexed vertex of `A`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub set: Arc<FinSSet>,
    pub basepoint: u32,
    /// Old nondegenerate index → new index (`u32::MAX` if collapsed).
    renumber: Vec<Vec<u32>>,
    /// New nondegenerate index → old index (`u32::MAX` for the collapsed vertex).
    origin: Vec<Vec<u32>>,
}

impl Quotient {
    /// `in_sub(k, s)` says whether nondegenerate simplex `s` of dimension `k`
    /// lies in the subcomplex.  The subcomplex must be nonempty and closed
    /// under faces.
    pub fn new(x: &FinSSet, in_sub: impl Fn(usize, u32) -> bool) -> Result<Quotient> {
        let top = x.dim_top();
        let mut renumber: Vec<Vec<u32>> = Vec::with_capacity(top + 1);
        let mut basepoint = None;
        let mut n_vertices = 0u32;
        let mut v_map = vec![u32::MAX; x.vertex_count()];
        for (v, slot) in v_map.iter_mut().enumerate() {
            if in_sub(0, v as u32) {
                if basepoint.is_none() {
                    basepoint = Some(n_vertices);
                    n_vertices += 1;
                }
            } else {
                *slot = n_vertices;
                n_vertices += 1;
            }
        }
        let bp = basepoint.ok_or_else(|| Error::InvalidSSet("collapsed subcomplex has no vertex".into()))?;
        renumber.push(v_map);
        let mut b = FinSSet::builder().vertices(n_vertices as usize);
        for k in 1..=top {
            let mut map = vec![u32::MAX; x.nondeg_count(k)];
            for s in 0..x.nondeg_count(k) as u32 {
                if in_sub(k, s) {
                    continue;
                }
                let faces: Vec<FinSimplex> = (0..=k)
                    .map(|i| {
                        let f = x.base_face(k, s, i);
                        let new = renumber[f.base_dim()][f.base as usize];
                        if new == u32::MAX {
                            FinSimplex::degenerate_vertex(bp, k - 1)
                        } else {
                            FinSimplex { deg: f.deg, base: new }
                        }
                    })
                    .collect();
                map[s as usize] = b.add(&faces);
            }
            renumber.push(map);
        }
        let mut set = b.build_unchecked();
        set.extend_to(top);
        if !x.is_complete() {
            set = set.into_skeletal();
        }
        let origin = renumber
            .iter()
            .enumerate()
            .map(|(k, map)| {
                let mut o = vec![u32::MAX; set.nondeg_count(k)];
                for (old, &new) in map.iter().enumerate() {
                    if new != u32::MAX {
                        o[new as usize] = old as u32;
                    }
                }
                o
            })
            .collect();
        Ok(Quotient { set: Arc::new(set), basepoint: bp, renumber, origin })
    }

    pub fn project(&self, s: &FinSimplex) -> FinSimplex {
        let new = self.renumber[s.base_dim()][s.base as usize];
        if new == u32::MAX {
            FinSimplex::degenerate_vertex(self.basepoint, s.dim())
        } else {
            FinSimplex { deg: s.deg, base: new }
        }
    }

    pub fn pointed(&self) -> PointedFinSSet {
        PointedFinSSet { space: (*self.set).clone(), basepoint: self.basepoint }
    }

    /// A simplex of the original set mapping onto `s`, unless `s` is the
    /// collapsed basepoint.
    pub fn lift(&self, s: &FinSimplex) -> Option<FinSimplex> {
        let old = self.origin[s.base_dim()][s.base as usize];
        (old != u32::MAX).then_some(FinSimplex { deg: s.deg, base: old })
    }
}

/// `X ∧ Y = X × Y / X ∨ Y`, keeping the product bookkeeping so that maps
/// can be smashed together.
#[derive(Clone, Debug)]
pub struct SmashSet {
    pub x: PointedFinSSet,
    pub y: PointedFinSSet,
    pub product: ProductSet,
    pub quotient: Quotient,
}

impl SmashSet {
    pub fn new(x: &PointedFinSSet, y: &PointedFinSSet) -> Result<SmashSet> {
        let xs = Arc::new(x.space.clone());
        let ys = Arc::new(y.space.clone());
        let product = crate::sset::product::product(&xs, &ys)?;
        let (bx, by) = (x.basepoint, y.basepoint);
        let quotient = Quotient::new(product.set(), |k, s| {
            let c = product.decode(&FinSimplex::nondeg(k, s));
            is_base(&c[0], bx) || is_base(&c[1], by)
        })?;
        Ok(SmashSet { x: x.clone(), y: y.clone(), product, quotient })
    }

    pub fn set(&self) -> &Arc<FinSSet> {
        &self.quotient.set
    }

    pub fn basepoint(&self) -> u32 {
        self.quotient.basepoint
    }

    pub fn pointed(&self) -> PointedFinSSet {
        self.quotient.pointed()
    }

    /// The class of `x ∧ y`.
    pub fn encode(&self, a: &FinSimplex, b: &FinSimplex) -> FinSimplex {
        if is_base(a, self.x.basepoint) || is_base(b, self.y.basepoint) {
            return FinSimplex::degenerate_vertex(self.basepoint(), a.dim());
        }
        let p = self.product.encode(&[*a, *b]).expect("components of equal dimension");
        self.quotient.project(&p)
    }

    /// Components of a non-basepoint simplex; `None` for the basepoint.
    pub fn decode(&self, s: &FinSimplex) -> Option<(FinSimplex, FinSimplex)> {
        let old = self.quotient.lift(s)?;
        let c = self.product.decode(&old);
        Some((c[0], c[1]))
    }

    /// `f ∧ g` between smash products.
    pub fn smash_maps(&self, target: &SmashSet, f: &SMap, g: &SMap) -> Result<SMap> {
        SMap::from_fn(self.set().clone(), target.set().clone(), |s| match self.decode(s) {
            None => FinSimplex::degenerate_vertex(target.basepoint(), s.dim()),
            Some((a, b)) => target.encode(&f.apply(&a), &g.apply(&b)),
        })
    }
}

pub(crate) fn is_base(s: &FinSimplex, bp: u32) -> bool {
    s.base_dim() == 0 && s.base == bp
}

/// `X ∧ Y` as a pointed simplicial set.
pub fn smash(x: &PointedFinSSet, y: &PointedFinSSet) -> Result<PointedFinSSet> {
    Ok(SmashSet::new(x, y)?.pointed())
}

/// True iff a map sends the basepoint to the basepoint.
pub fn is_pointed_map(f: &SMap, src_bp: u32, tgt_bp: u32) -> bool {
    f.apply(&FinSimplex::vertex(src_bp)) == FinSimplex::vertex(tgt_bp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::traits::check_identities;

    fn circle() -> PointedFinSSet {
        let mut b = FinSSet::builder().vertices(1);
        b.add_nd(&[0, 0]);
        PointedFinSSet::new(b.build().unwrap(), 0).unwrap()
    }

    #[test]
    fn circle_smash_circle_has_one_top_cell_pair() {
        let s = SmashSet::new(&circle(), &circle()).unwrap();
        // torus has (1 vertex, 3 edges, 2 triangles); the wedge has 2 edges
        assert_eq!(s.set().counts(), &[1, 1, 2]);
        check_identities(s.set().as_ref(), 3).unwrap();
    }

    #[test]
    fn smash_with_point_is_point() {
        let s = smash(&circle(), &PointedFinSSet::point()).unwrap();
        assert_eq!(s.space.counts(), &[1, 0]);
    }
}
