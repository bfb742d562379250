//! Degeneracy operators: monotone surjections `[q] ↠ [j]`.
//!
//! A surjection `η` is determined by `q` and the set of positions `t` with
//! `η(t) = η(t+1)`; that set is stored as a bitmask.  A simplex written as
//! `η^* b` with `b` nondegenerate is in Eilenberg–Zilber normal form, and it
//! lies in the image of `s_i` exactly when bit `i` of the mask is set.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deg {
    q: u8,
    mask: u32,
}

/// Result of precomposing a surjection with a coface map `δ^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegFace {
    /// `η δ^i` is still surjective.
    Surj(Deg),
    /// `η δ^i = δ^m η''`: the face lands on face `m` of the base simplex.
    Hits(usize, Deg),
}

impl fmt::Debug for Deg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Deg{:?}", self.values())
    }
}

#[inline]
fn bit(mask: u32, i: usize) -> u32 {
    (mask >> i) & 1
}

#[inline]
fn low(i: usize) -> u32 {
    if i >= 32 {
        u32::MAX
    } else {
        (1u32 << i) - 1
    }
}

impl Deg {
    pub const MAX_DIM: usize = 31;

    pub fn identity(q: usize) -> Deg {
        debug_assert!(q <= Self::MAX_DIM);
        Deg { q: q as u8, mask: 0 }
    }

    pub fn from_mask(q: usize, mask: u32) -> Deg {
        assert!(q <= Self::MAX_DIM && mask & !low(q) == 0, "mask out of range");
        Deg { q: q as u8, mask }
    }

    /// The surjection with the given values `η(0), ..., η(q)`.
    pub fn from_values(values: &[usize]) -> Deg {
        assert!(!values.is_empty() && values[0] == 0);
        let mut mask = 0;
        for t in 0..values.len() - 1 {
            match values[t + 1] - values[t] {
                0 => mask |= 1 << t,
                1 => {}
                _ => panic!("not a monotone surjection: {values:?}"),
            }
        }
        Deg::from_mask(values.len() - 1, mask)
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.q as usize
    }

    #[inline]
    pub fn target_dim(self) -> usize {
        self.q as usize - self.mask.count_ones() as usize
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn value(self, t: usize) -> usize {
        t - (self.mask & low(t)).count_ones() as usize
    }

    pub fn values(self) -> Vec<usize> {
        (0..=self.dim()).map(|t| self.value(t)).collect()
    }

    /// `outer ∘ self`.
    pub fn then(self, outer: Deg) -> Deg {
        debug_assert_eq!(self.target_dim(), outer.dim());
        let mut mask = self.mask;
        for t in 0..self.dim() {
            if bit(self.mask, t) == 0 && bit(outer.mask, self.value(t)) == 1 {
                mask |= 1 << t;
            }
        }
        Deg { q: self.q, mask }
    }

    /// `self ∘ σ^i`, the operator of `s_i` applied to `self^* b`.
    pub fn degeneracy(self, i: usize) -> Deg {
        debug_assert!(i <= self.dim());
        let m = self.mask;
        let mask = (m & low(i)) | (1 << i) | ((m >> i) << (i + 1));
        Deg { q: self.q + 1, mask }
    }

    /// `self ∘ δ^i`.
    pub fn face(self, i: usize) -> DegFace {
        let q = self.dim();
        debug_assert!(q >= 1 && i <= q);
        let m = self.mask;
        let below = if i >= 1 { bit(m, i - 1) } else { 0 };
        let at = if i < q { bit(m, i) } else { 0 };
        let mut mask = if i >= 1 { m & low(i - 1) } else { 0 };
        if i >= 1 && i < q {
            mask |= (below & at) << (i - 1);
        }
        if i < q {
            mask |= (m >> (i + 1)) << i;
        }
        let d = Deg { q: self.q - 1, mask };
        if below == 1 || at == 1 {
            DegFace::Surj(d)
        } else {
            DegFace::Hits(self.value(i), d)
        }
    }

    /// All surjections out of `[q]` onto `[q - r]`, in increasing mask order.
    pub fn with_collapse(q: usize, r: usize) -> impl Iterator<Item = Deg> {
        (0u32..(1u32 << q)).filter(move |m| m.count_ones() as usize == r).map(move |m| Deg::from_mask(q, m))
    }

    /// All surjections out of `[q]`.
    pub fn all_from(q: usize) -> impl Iterator<Item = Deg> {
        (0u32..(1u32 << q)).map(move |m| Deg::from_mask(q, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face_values(d: Deg, i: usize) -> Vec<usize> {
        let v = d.values();
        (0..v.len()).filter(|&t| t != i).map(|t| v[t]).collect()
    }

    #[test]
    fn faces_agree_with_value_arrays() {
        for q in 1..7 {
            for d in Deg::all_from(q) {
                for i in 0..=q {
                    let expect = face_values(d, i);
                    match d.face(i) {
                        DegFace::Surj(e) => assert_eq!(e.values(), expect),
                        DegFace::Hits(m, e) => {
                            let shifted: Vec<usize> = expect.iter().map(|&x| if x > m { x - 1 } else { x }).collect();
                            assert!(!expect.contains(&m));
                            assert_eq!(e.values(), shifted);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degeneracy_and_composition() {
        for q in 0..6 {
            for d in Deg::all_from(q) {
                for i in 0..=q {
                    let v = d.values();
                    let mut w = v.clone();
                    w.insert(i, v[i]);
                    assert_eq!(d.degeneracy(i).values(), w);
                }
                for outer in Deg::all_from(d.target_dim()) {
                    let v: Vec<usize> = d.values().iter().map(|&x| outer.value(x)).collect();
                    assert_eq!(d.then(outer).values(), v);
                }
            }
        }
    }
}
