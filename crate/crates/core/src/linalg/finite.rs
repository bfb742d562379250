//! Finite abelian groups given by an operation table, with an explicit
//! decomposition into cyclic factors.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::abgroup::AbGroup;
use crate::linalg::matrix::{invariant_factors, IntMatrix};

/// A finite abelian group on `0..n` together with generators `basis[i]` of
/// order `orders[i]` such that every element is uniquely
/// `Σ coords[i] · basis[i]` with `0 ≤ coords[i] < orders[i]`.
#[derive(Clone, Debug)]
pub struct FiniteAbelian {
    pub orders: Vec<u64>,
    pub basis: Vec<u32>,
    coords: Vec<Vec<u64>>,
    from_coords: HashMap<Vec<u64>, u32>,
}

/// Invariant factors of the abelian group with table `op` (presentation by
/// all relations `a + b = op(a, b)` and `0 = identity`).
pub fn group_from_table(n: usize, op: &dyn Fn(u32, u32) -> u32, identity: u32) -> Result<AbGroup> {
    let mut rows = Vec::new();
    let mut id = vec![0i128; n];
    id[identity as usize] = 1;
    rows.push(id);
    for a in 0..n as u32 {
        for b in a..n as u32 {
            let mut r = vec![0i128; n];
            r[a as usize] += 1;
            r[b as usize] += 1;
            r[op(a, b) as usize] -= 1;
            rows.push(r);
        }
    }
    let m = IntMatrix::from_rows(&rows);
    let inv = invariant_factors(&m)?;
    let free = n - inv.len();
    let tors: Vec<u64> = inv.iter().map(|&d| d as u64).filter(|&d| d > 1).collect();
    Ok(AbGroup::from_cyclic(free, &tors))
}

impl FiniteAbelian {
    pub fn from_table(n: usize, op: &dyn Fn(u32, u32) -> u32, identity: u32) -> Result<FiniteAbelian> {
        let g = group_from_table(n, op, identity)?;
        if g.rank != 0 {
            return Err(Error::InvalidModule("operation table is not a finite group".into()));
        }
        let orders = g.torsion.clone();
        let mult = |k: u64, a: u32| -> u32 {
            let mut acc = identity;
            for _ in 0..k {
                acc = op(acc, a);
            }
            acc
        };
        let order_of = |a: u32| -> u64 {
            let mut k = 1;
            let mut acc = a;
            while acc != identity {
                acc = op(acc, a);
                k += 1;
            }
            k
        };
        // Backtracking: choose generators from the largest order down, each
        // meeting the span of the previous ones trivially.
        let want: Vec<u64> = orders.iter().rev().copied().collect();
        let mut chosen: Vec<u32> = Vec::new();
        fn span(op: &dyn Fn(u32, u32) -> u32, identity: u32, gens: &[u32], n: usize) -> Vec<bool> {
            let mut inside = vec![false; n];
            inside[identity as usize] = true;
            let mut frontier = vec![identity];
            while let Some(x) = frontier.pop() {
                for &g in gens {
                    let y = op(x, g);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        frontier.push(y);
                    }
                }
            }
            inside
        }
        fn search(
            op: &dyn Fn(u32, u32) -> u32,
            identity: u32,
            n: usize,
            want: &[u64],
            order_of: &dyn Fn(u32) -> u64,
            chosen: &mut Vec<u32>,
        ) -> bool {
            let k = chosen.len();
            if k == want.len() {
                return true;
            }
            let current = span(op, identity, chosen, n);
            let size: usize = current.iter().filter(|&&b| b).count();
            for g in 0..n as u32 {
                if order_of(g) != want[k] {
                    continue;
                }
                chosen.push(g);
                let next = span(op, identity, chosen, n);
                if next.iter().filter(|&&b| b).count() == size * want[k] as usize
                    && search(op, identity, n, want, order_of, chosen)
                {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        if !search(op, identity, n, &want, &order_of, &mut chosen) {
            return Err(Error::InvalidModule("no cyclic decomposition found".into()));
        }
        chosen.reverse();
        let basis = chosen;
        let mut coords = vec![Vec::new(); n];
        let mut from_coords = HashMap::new();
        let total: u64 = orders.iter().product();
        for idx in 0..total {
            let mut rest = idx;
            let mut c = Vec::with_capacity(orders.len());
            let mut elem = identity;
            for (i, &o) in orders.iter().enumerate() {
                let ci = rest % o;
                rest /= o;
                c.push(ci);
                elem = op(elem, mult(ci, basis[i]));
            }
            coords[elem as usize] = c.clone();
            from_coords.insert(c, elem);
        }
        if from_coords.len() != n {
            return Err(Error::InvalidModule("decomposition is not bijective".into()));
        }
        Ok(FiniteAbelian { orders, basis, coords, from_coords })
    }

    pub fn group(&self) -> AbGroup {
        AbGroup::from_cyclic(0, &self.orders)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self, a: u32) -> &[u64] {
        &self.coords[a as usize]
    }

    /// Element with the given coordinates (reduced modulo the orders).
    pub fn element(&self, c: &[i128]) -> u32 {
        let red: Vec<u64> = c.iter().zip(&self.orders).map(|(&v, &o)| v.rem_euclid(o as i128) as u64).collect();
        self.from_coords[&red]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_products() {
        // Z/2 × Z/4 as pairs
        let op = |a: u32, b: u32| -> u32 {
            let (a0, a1, b0, b1) = (a / 4, a % 4, b / 4, b % 4);
            ((a0 + b0) % 2) * 4 + (a1 + b1) % 4
        };
        let f = FiniteAbelian::from_table(8, &op, 0).unwrap();
        assert_eq!(f.orders, vec![2, 4]);
        for a in 0..8 {
            let c: Vec<i128> = f.coords(a).iter().map(|&x| x as i128).collect();
            assert_eq!(f.element(&c), a);
        }
        let z6 = |a: u32, b: u32| (a + b) % 6;
        assert_eq!(group_from_table(6, &z6, 0).unwrap(), AbGroup::cyclic(6));
    }
}
