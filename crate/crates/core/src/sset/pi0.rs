//! Connected components.

use std::collections::HashMap;

use crate::error::Result;
use crate::sset::traits::SimplicialSet;
use crate::util::UnionFind;

/// Components of a simplicial set, numbered by their least vertex.
#[derive(Clone, Debug)]
pub struct Pi0<S> {
    pub vertices: Vec<S>,
    pub vertex_component: Vec<u32>,
    pub count: usize,
    index: HashMap<S, u32>,
}

impl<S: Clone + Eq + std::hash::Hash> Pi0<S> {
    /// Component of any simplex (via its first vertex).
    pub fn component_of<X: SimplicialSet<Simplex = S>>(&self, x: &X, s: &S) -> u32 {
        let mut v = s.clone();
        while x.dim_of(&v) > 0 {
            v = x.face(x.dim_of(&v), &v);
        }
        self.vertex_component[self.index[&v] as usize]
    }

    pub fn vertex_index(&self, v: &S) -> Option<u32> {
        self.index.get(v).copied()
    }
}

pub fn pi0<X: SimplicialSet>(x: &X) -> Result<Pi0<X::Simplex>> {
    let vertices = x.nondegenerate(0)?;
    let index: HashMap<X::Simplex, u32> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
    let mut uf = UnionFind::new(vertices.len());
    if x.extent().knows(1) {
        for e in x.nondegenerate(1)? {
            let a = index[&x.face(0, &e)];
            let b = index[&x.face(1, &e)];
            uf.union(a, b);
        }
    }
    let (vertex_component, count) = uf.labels();
    Ok(Pi0 { vertices, vertex_component, count, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::finsset::{from_ordered_complex, FinSSet};
    use crate::sset::sphere::standard_sphere;

    #[test]
    fn small_cases() {
        assert_eq!(pi0(&FinSSet::discrete(2)).unwrap().count, 2);
        assert_eq!(pi0(&standard_sphere(1).space).unwrap().count, 1);
        assert_eq!(pi0(&standard_sphere(0).space).unwrap().count, 2);
        let x = from_ordered_complex(5, &[vec![0, 2], vec![1, 3], vec![3, 4]]).unwrap();
        let p = pi0(&x).unwrap();
        assert_eq!(p.count, 2);
        assert_eq!(p.vertex_component, vec![0, 1, 0, 1, 1]);
    }
}
