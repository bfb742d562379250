//! Homology of simplicial sets with integral or finite coefficients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::AbGroup;
use crate::sset::traits::{normalized_chains, Extent, SimplicialSet};

/// Coefficients: the integers, or a finite abelian group (in practice the
/// additive group of a finite ring).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Finite(AbGroup),
}

impl Coefficients {
    pub fn name(&self) -> String {
        match self {
            Coefficients::Integers => "Z".into(),
            Coefficients::Finite(g) => g.to_string(),
        }
    }
}

/// Per-degree homology with the range in which it is valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub coefficients: String,
    pub valid_through: usize,
    pub degrees: Vec<Vec<String>>,
    #[serde(skip)]
    pub groups: Vec<AbGroup>,
}

impl HomologyReport {
    pub fn new(groups: Vec<AbGroup>, coefficients: &Coefficients) -> Self {
        HomologyReport {
            coefficients: coefficients.name(),
            valid_through: groups.len().saturating_sub(1),
            degrees: groups.iter().map(AbGroup::factor_strings).collect(),
            groups,
        }
    }
}

/// Integral homology in degrees `0..=k_max`.
pub fn integral_homology<X: SimplicialSet>(x: &X, k_max: usize) -> Result<Vec<AbGroup>> {
    if let Extent::Skeletal(t) = x.extent() {
        if t < k_max + 1 {
            return Err(Error::InsufficientDimension { needed: k_max + 1, available: t });
        }
    }
    let chains = normalized_chains(x, k_max + 1)?;
    chains.complex.homology(k_max)
}

/// Homology with the given coefficients, via universal coefficients:
/// `H_k(X; A) = H_k(X) ⊗ A ⊕ Tor(H_{k-1}(X), A)`.
pub fn homology<X: SimplicialSet>(x: &X, k_max: usize, coeffs: &Coefficients) -> Result<Vec<AbGroup>> {
    let h = integral_homology(x, k_max)?;
    Ok(match coeffs {
        Coefficients::Integers => h,
        Coefficients::Finite(a) => (0..=k_max)
            .map(|k| {
                let mut g = AbGroup::zero();
                for &e in &a.orders() {
                    g = g.direct_sum(&h[k].tensor_cyclic(e));
                    if k > 0 {
                        g = g.direct_sum(&h[k - 1].tor_cyclic(e));
                    }
                }
                g
            })
            .collect(),
    })
}

pub fn homology_report<X: SimplicialSet>(x: &X, k_max: usize, coeffs: &Coefficients) -> Result<HomologyReport> {
    Ok(HomologyReport::new(homology(x, k_max, coeffs)?, coeffs))
}

/// Reduced integral homology (degree 0 loses one free summand).
pub fn reduced_homology<X: SimplicialSet>(x: &X, k_max: usize) -> Result<Vec<AbGroup>> {
    let mut h = integral_homology(x, k_max)?;
    if h[0].rank > 0 {
        h[0].rank -= 1;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::finsset::{from_ordered_complex, FinSSet};
    use crate::sset::sphere::standard_sphere;

    /// The six-vertex triangulation of RP².
    pub(crate) fn rp2() -> FinSSet {
        let f = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5],
        ];
        let facets: Vec<Vec<u32>> = f.iter().map(|t| t.to_vec()).collect();
        from_ordered_complex(6, &facets).unwrap()
    }

    #[test]
    fn spheres_and_point() {
        let z = AbGroup::free(1);
        let o = AbGroup::zero();
        assert_eq!(integral_homology(&FinSSet::point(), 2).unwrap(), vec![z.clone(), o.clone(), o.clone()]);
        assert_eq!(integral_homology(&standard_sphere(2).space, 2).unwrap(), vec![z.clone(), o.clone(), z.clone()]);
        assert_eq!(
            integral_homology(&standard_sphere(3).space, 3).unwrap(),
            vec![z.clone(), o.clone(), o.clone(), z.clone()]
        );
    }

    #[test]
    fn projective_plane() {
        let x = rp2();
        let h = integral_homology(&x, 2).unwrap();
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::cyclic(2), AbGroup::zero()]);
        let h2 = homology(&x, 2, &Coefficients::Finite(AbGroup::cyclic(2))).unwrap();
        assert_eq!(h2, vec![AbGroup::cyclic(2), AbGroup::cyclic(2), AbGroup::cyclic(2)]);
    }

    #[test]
    fn skeletal_sets_refuse_out_of_range() {
        let x = standard_sphere(2).space.skeleton(1);
        assert!(matches!(integral_homology(&x, 1), Err(Error::InsufficientDimension { .. })));
        assert!(integral_homology(&x, 0).is_ok());
    }
}
