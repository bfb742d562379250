//! Reduced normalized chains of pointed sets and the shuffle cross product.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::chain::normalize;
use crate::linalg::{ChainComplex, SparseMatrix};
use crate::sset::finsset::{FinSimplex, PointedFinSSet};
use crate::sset::traits::{NormalizedChains, SimplicialSet};

/// Normalized chains of `X` modulo the basepoint.
pub fn reduced_chains(x: &PointedFinSSet) -> Result<NormalizedChains<FinSimplex>> {
    let top = x.space.dim_top();
    let bp = FinSimplex::vertex(x.basepoint);
    let mut basis: Vec<Vec<FinSimplex>> = Vec::with_capacity(top + 1);
    let mut index: Vec<HashMap<FinSimplex, u32>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let nd: Vec<FinSimplex> = x.space.nondegenerate(k)?.into_iter().filter(|s| *s != bp).collect();
        index.push(nd.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect());
        basis.push(nd);
    }
    let mut bds = vec![SparseMatrix::zero(0, basis[0].len())];
    for k in 1..=top {
        let cols = basis[k]
            .iter()
            .map(|s| {
                let terms = (0..=k)
                    .filter_map(|i| {
                        let f = x.space.face(i, s);
                        index[k - 1].get(&f).map(|&r| (r, if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect();
                normalize(terms)
            })
            .collect();
        bds.push(SparseMatrix::new(basis[k - 1].len(), cols));
    }
    let ranks = basis.iter().map(Vec::len).collect();
    Ok(NormalizedChains { complex: ChainComplex::new(ranks, bds, x.space.is_complete()), basis, index })
}

/// Sign of a permutation given as a value array.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All `(p, q)`-shuffles as the sorted position sets `(μ, ν)` of
/// `{0..p+q-1}` together with their signs.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let n = p + q;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let mu: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
        let nu: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 0).collect();
        let inversions: usize = mu.iter().enumerate().map(|(i, &m)| m - i).sum();
        out.push((mu, nu, if inversions % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// The Eilenberg–Zilber terms of `a ⊗ b`: pairs `(s_ν a, s_μ b)` of
/// `(p+q)`-simplices with their shuffle signs.
pub fn cross_terms<X, Y>(x: &X, a: &X::Simplex, y: &Y, b: &Y::Simplex) -> Vec<(X::Simplex, Y::Simplex, i64)>
where
    X: SimplicialSet,
    Y: SimplicialSet,
{
    let (p, q) = (x.dim_of(a), y.dim_of(b));
    shuffles(p, q)
        .into_iter()
        .map(|(mu, nu, sign)| {
            let mut a2 = a.clone();
            for &i in &nu {
                a2 = x.degeneracy(i, &a2);
            }
            let mut b2 = b.clone();
            for &i in &mu {
                b2 = y.degeneracy(i, &b2);
            }
            (a2, b2, sign)
        })
        .collect()
}

/// A chain over a scalar ring on the basis of a reduced chain group:
/// `(basis index, scalar)` pairs, scalars as integers (or ring elements).
pub type Chain = Vec<(u32, i64)>;

/// Pushes a formal sum of simplices into reduced-chain coordinates,
/// dropping degenerate simplices and the basepoint.
pub fn coordinates(chains: &NormalizedChains<FinSimplex>, k: usize, terms: &[(FinSimplex, i64)]) -> Chain {
    let mut out = Vec::new();
    for (s, c) in terms {
        if let Some(r) = chains.coordinate(k, s) {
            out.push((r, *c));
        }
    }
    normalize(out)
}

/// The integral fundamental cycle of `S^n = S^{n-1} ∧ S¹`, defined as the
/// iterated cross product of the 1-cell, in top-cell coordinates.
pub fn sphere_fundamental(n: usize) -> Result<Vec<(Vec<u8>, i64)>> {
    if n == 0 {
        return Ok(vec![(Vec::new(), 1)]);
    }
    let mut cur: Vec<(Vec<u8>, i64)> = vec![(vec![1], 1)];
    let circle = crate::sset::sphere::SphereModel::new(1);
    for m in 1..n {
        let sm = crate::sset::sphere::SphereModel::new(m);
        let mut acc: HashMap<Vec<u8>, i64> = HashMap::new();
        for (t, c) in &cur {
            let a = sm.encode(m, Some(t));
            let e = circle.encode(1, Some(&[1]));
            for (a2, b2, sign) in cross_terms(sm.set(), &a, circle.set(), &e) {
                let (Some(mut ta), Some(tb)) = (sm.decode(&a2), circle.decode(&b2)) else { continue };
                ta.extend(tb);
                *acc.entry(ta).or_default() += sign * c;
            }
        }
        cur = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        cur.sort();
    }
    if cur.iter().any(|(t, _)| {
        let mut s = t.clone();
        s.sort();
        s != (1..=n as u8).collect::<Vec<_>>()
    }) {
        return Err(Error::InvalidSSet("cross product left the top cells".into()));
    }
    Ok(cur)
}

/// Pointed finite set helper: the nondegenerate non-basepoint simplices of
/// a dimension.
pub fn nonbase_simplices(x: &PointedFinSSet, k: usize) -> Result<Vec<FinSimplex>> {
    Ok(x.space.nondegenerate(k)?.into_iter().filter(|s| *s != FinSimplex::vertex(x.basepoint)).collect())
}

/// All `k`-simplices of `x` (degenerate ones included) except the basepoint.
pub fn all_nonbase(x: &PointedFinSSet, k: usize) -> Result<Vec<FinSimplex>> {
    let bp = x.base_simplex(k);
    Ok(x.space.simplices(k)?.into_iter().filter(|s| *s != bp).collect())
}

pub(crate) fn is_base(x: &PointedFinSSet, s: &FinSimplex) -> bool {
    s.base_dim() == 0 && s.base == x.basepoint
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::sphere::{standard_sphere, SphereModel};

    #[test]
    fn reduced_sphere_homology() {
        for n in 0..=3 {
            let c = reduced_chains(&standard_sphere(n)).unwrap();
            let h = c.complex.homology(n).unwrap();
            for (k, g) in h.iter().enumerate() {
                let expect = if k == n { crate::linalg::AbGroup::free(1) } else { crate::linalg::AbGroup::zero() };
                assert_eq!(*g, expect, "S^{n} degree {k}");
            }
        }
    }

    #[test]
    fn fundamental_cycles_are_cycles_of_full_support() {
        for n in 1..=4 {
            let f = sphere_fundamental(n).unwrap();
            assert_eq!(f.len(), (1..=n).product::<usize>());
            let sm = SphereModel::new(n);
            let c = reduced_chains(&sm.pointed).unwrap();
            let chain: Chain = coordinates(&c, n, &f.iter().map(|(t, v)| (sm.encode(n, Some(t)), *v)).collect::<Vec<_>>());
            let bd = &c.complex.boundaries[n];
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for (col, v) in chain {
                for &(r, w) in &bd.cols[col as usize] {
                    *acc.entry(r).or_default() += v * w;
                }
            }
            assert!(acc.values().all(|&v| v == 0), "∂[S^{n}] ≠ 0");
        }
    }

    #[test]
    fn shuffle_counts_and_signs() {
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(1, 1).iter().map(|s| s.2).sum::<i64>(), 0);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
