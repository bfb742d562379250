//! The spheres `S^n = (S¹)^{∧n}` with `S¹ = Δ¹/∂Δ¹`.
//!
//! A `k`-simplex of `Δ¹` is a cut `c ∈ {0..k+1}` (the number of leading
//! zeros); it survives in `S¹` iff `1 ≤ c ≤ k`.  A non-basepoint `k`-simplex
//! of `S^n` is therefore a tuple `f ∈ {1..k}^n`, and it is nondegenerate iff
//! `f` hits every value in `{1..k}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::sset::deg::Deg;
use crate::sset::finsset::{FinSSet, FinSimplex, PointedFinSSet, SMap};

#[derive(Clone, Debug)]
pub struct SphereModel {
    pub n: usize,
    pub pointed: PointedFinSSet,
    /// Nondegenerate non-basepoint simplices per dimension (as cut tuples).
    tuples: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, u32>>,
}

/// `d_i` on a cut tuple of dimension `k`; `None` is the basepoint.
pub fn tuple_face(k: usize, f: &[u8], i: usize) -> Option<Vec<u8>> {
    let i8 = i as u8;
    if i == 0 {
        if f.contains(&1) {
            return None;
        }
        return Some(f.iter().map(|&c| c - 1).collect());
    }
    if i == k {
        if f.contains(&(k as u8)) {
            return None;
        }
        return Some(f.to_vec());
    }
    Some(f.iter().map(|&c| if c > i8 { c - 1 } else { c }).collect())
}

/// `s_i` on a cut tuple.
pub fn tuple_degeneracy(f: &[u8], i: usize) -> Vec<u8> {
    f.iter().map(|&c| if c as usize > i { c + 1 } else { c }).collect()
}

/// All surjections `{1..n} → {1..k}` in lexicographic order.
fn surjections(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![1u8; n];
    if n == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    loop {
        let mut hit = vec![false; k + 1];
        for &c in &cur {
            hit[c as usize] = true;
        }
        if hit[1..].iter().all(|&h| h) {
            out.push(cur.clone());
        }
        // increment in base k, most significant first
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (cur[pos] as usize) < k {
                cur[pos] += 1;
                for c in cur.iter_mut().skip(pos + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

impl SphereModel {
    pub fn new(n: usize) -> SphereModel {
        if n == 0 {
            let space = FinSSet::discrete(2);
            return SphereModel {
                n,
                pointed: PointedFinSSet { space, basepoint: 0 },
                tuples: vec![vec![Vec::new()]],
                index: vec![HashMap::from([(Vec::new(), 1)])],
            };
        }
        let mut tuples = vec![Vec::new()];
        let mut index = vec![HashMap::new()];
        let mut b = FinSSet::builder().vertices(1);
        for k in 1..=n {
            let list = surjections(n, k);
            let idx: HashMap<Vec<u8>, u32> = list.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
            tuples.push(list);
            index.push(idx);
            for t in &tuples[k] {
                let faces: Vec<FinSimplex> = (0..=k)
                    .map(|i| match tuple_face(k, t, i) {
                        None => FinSimplex::degenerate_vertex(0, k - 1),
                        Some(g) => encode_with(&index, k - 1, &g),
                    })
                    .collect();
                b.add(&faces);
            }
        }
        SphereModel { n, pointed: PointedFinSSet { space: b.build_unchecked(), basepoint: 0 }, tuples, index }
    }

    pub fn set(&self) -> &FinSSet {
        &self.pointed.space
    }

    /// The simplex named by a cut tuple of dimension `k` (`None` = basepoint).
    pub fn encode(&self, k: usize, t: Option<&[u8]>) -> FinSimplex {
        match t {
            None => FinSimplex::degenerate_vertex(self.pointed.basepoint, k),
            Some(t) if self.n == 0 => FinSimplex::degenerate_vertex(if t.is_empty() { 1 } else { 0 }, k),
            Some(t) => encode_with(&self.index, k, t),
        }
    }

    /// Cut tuple of a simplex, `None` for the basepoint.
    pub fn decode(&self, s: &FinSimplex) -> Option<Vec<u8>> {
        if s.base_dim() == 0 && s.base == self.pointed.basepoint {
            return None;
        }
        if self.n == 0 {
            return Some(Vec::new());
        }
        let base = &self.tuples[s.base_dim()][s.base as usize];
        // apply the degeneracies in increasing order
        let mut t = base.clone();
        for i in 0..s.dim() {
            if (s.deg.mask() >> i) & 1 == 1 {
                t = tuple_degeneracy(&t, i);
            }
        }
        Some(t)
    }

    /// The top nondegenerate simplices `S^n_n`: the permutations of `{1..n}`.
    pub fn top_cells(&self) -> &[Vec<u8>] {
        &self.tuples[self.n]
    }

    pub fn nondeg_tuples(&self, k: usize) -> &[Vec<u8>] {
        &self.tuples[k]
    }

    pub fn tuple_index(&self, k: usize, t: &[u8]) -> Option<u32> {
        self.index.get(k)?.get(t).copied()
    }

    /// The action of a permutation `σ` (as `perm[i] = σ(i)`, zero-based) by
    /// moving coordinate `i` to position `σ(i)`.
    pub fn permutation_map(&self, perm: &[usize]) -> Result<SMap> {
        let set = Arc::new(self.set().clone());
        SMap::from_fn(set.clone(), set, |s| match self.decode(s) {
            None => *s,
            Some(t) => {
                let mut u = vec![0u8; t.len()];
                for (i, &c) in t.iter().enumerate() {
                    u[perm[i]] = c;
                }
                self.encode(s.dim(), Some(&u))
            }
        })
    }
}

fn encode_with(index: &[HashMap<Vec<u8>, u32>], k: usize, t: &[u8]) -> FinSimplex {
    // positions i with value i+1 missing are s_i-degenerate
    let mut hit = vec![false; k + 2];
    for &c in t {
        hit[c as usize] = true;
    }
    let mut mask = 0u32;
    let mut relabel = vec![0u8; k + 2];
    let mut next = 0u8;
    for v in 1..=k {
        if hit[v] {
            next += 1;
            relabel[v] = next;
        } else {
            mask |= 1 << (v - 1);
        }
    }
    let base: Vec<u8> = t.iter().map(|&c| relabel[c as usize]).collect();
    let j = next as usize;
    FinSimplex { deg: Deg::from_mask(k, mask), base: index[j][&base] }
}

/// The pointed model of `S^n`.
pub fn standard_sphere(n: usize) -> PointedFinSSet {
    SphereModel::new(n).pointed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::traits::{check_identities, SimplicialSet};

    #[test]
    fn small_spheres() {
        assert_eq!(standard_sphere(0).space.counts(), &[2]);
        assert_eq!(standard_sphere(1).space.counts(), &[1, 1]);
        assert_eq!(standard_sphere(2).space.counts(), &[1, 1, 2]);
        assert_eq!(standard_sphere(3).space.counts(), &[1, 1, 6, 6]);
    }

    #[test]
    fn sphere_tables_satisfy_identities() {
        for n in 0..=3 {
            let s = standard_sphere(n);
            check_identities(&s.space, n + 1).unwrap();
        }
    }

    #[test]
    fn decode_matches_faces() {
        let m = SphereModel::new(3);
        for k in 1..=3 {
            for s in m.set().nondegenerate(k).unwrap() {
                let t = m.decode(&s).unwrap();
                for i in 0..=k {
                    let f = m.set().face(i, &s);
                    assert_eq!(m.decode(&f), tuple_face(k, &t, i));
                }
            }
        }
    }

    #[test]
    fn permutation_action_is_a_map() {
        let m = SphereModel::new(3);
        let p = m.permutation_map(&[1, 2, 0]).unwrap();
        let q = m.permutation_map(&[2, 0, 1]).unwrap();
        assert!(p.then(&q).same_as(&SMap::identity(Arc::new(m.set().clone()))));
    }
}
