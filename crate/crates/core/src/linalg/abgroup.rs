//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use serde::{Deserialize, Serialize};

/// `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_s` with `1 < t_1 | t_2 | ... | t_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::from_cyclic(0, &[n])
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 means `Z`) into
    /// invariant-factor form.
    pub fn from_orders(orders: &[u64]) -> Self {
        let rank = orders.iter().filter(|&&o| o == 0).count();
        let finite: Vec<u64> = orders.iter().copied().filter(|&o| o > 1).collect();
        Self::from_cyclic(rank, &finite)
    }

    pub fn from_cyclic(rank: usize, orders: &[u64]) -> Self {
        // Split into primary parts, then reassemble the largest powers first.
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &o in orders.iter().filter(|&&o| o > 1) {
            for (p, q) in prime_powers(o) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for qs in by_prime.values_mut() {
            qs.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in qs.iter().enumerate() {
                torsion[len - 1 - i] *= q;
            }
        }
        AbGroup { rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut t = self.torsion.clone();
        t.extend_from_slice(&other.torsion);
        Self::from_cyclic(self.rank + other.rank, &t)
    }

    /// Cyclic orders as a flat list, free summands first (as 0).
    pub fn orders(&self) -> Vec<u64> {
        let mut v = vec![0; self.rank];
        v.extend_from_slice(&self.torsion);
        v
    }

    /// `self ⊗ Z/n` (with `n = 0` meaning `Z`).
    pub fn tensor_cyclic(&self, n: u64) -> AbGroup {
        if n == 0 {
            return self.clone();
        }
        let mut t = vec![n; self.rank];
        t.extend(self.torsion.iter().map(|&x| gcd(x, n)));
        Self::from_cyclic(0, &t)
    }

    /// `Tor(self, Z/n)`.
    pub fn tor_cyclic(&self, n: u64) -> AbGroup {
        if n == 0 {
            return AbGroup::zero();
        }
        let t: Vec<u64> = self.torsion.iter().map(|&x| gcd(x, n)).collect();
        Self::from_cyclic(0, &t)
    }

    /// Invariant factors rendered as `"Z"` / `"Z/n"` strings.
    pub fn factor_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = (0..self.rank).map(|_| "Z".to_string()).collect();
        v.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        v
    }

    pub fn parse_factors(items: &[String]) -> Option<AbGroup> {
        let mut orders = Vec::new();
        for s in items {
            if s == "Z" {
                orders.push(0);
            } else {
                orders.push(s.strip_prefix("Z/")?.parse().ok()?);
            }
        }
        Some(Self::from_orders(&orders))
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_to_invariant_factors() {
        let g = AbGroup::from_orders(&[2, 3, 4, 0]);
        assert_eq!(g, AbGroup { rank: 1, torsion: vec![2, 12] });
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        assert_eq!(AbGroup::from_orders(&[1, 1]), AbGroup::zero());
        assert_eq!(AbGroup::from_orders(&[6]), AbGroup::from_orders(&[2, 3]));
    }

    #[test]
    fn tensor_and_tor() {
        let g = AbGroup::from_orders(&[0, 2, 4]);
        assert_eq!(g.tensor_cyclic(2), AbGroup::from_orders(&[2, 2, 2]));
        assert_eq!(g.tor_cyclic(6), AbGroup::from_orders(&[2, 2]));
        assert_eq!(g.tor_cyclic(0), AbGroup::zero());
    }

    #[test]
    fn strings_round_trip() {
        let g = AbGroup::from_orders(&[0, 0, 3]);
        assert_eq!(g.factor_strings(), vec!["Z", "Z", "Z/3"]);
        assert_eq!(AbGroup::parse_factors(&g.factor_strings()), Some(g));
    }
}
