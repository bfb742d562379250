//! `Ω•` of a Dold–Kan backed ring spectrum: the 𝕀-space `n ↦ Ω^n E_n`
//! with its FCP structure.
//!
//! Level `n` is the realization of the décalage `loops(E_n, n)`.  For the
//! spectra built here that model is concentrated in degree 0, where it is
//! the module of `n`-cycles `Z_n(C̃(Y_n) ⊗ R)`, so each level is a finite
//! discrete set.  An injection `φ = φ̄ ∘ ι` acts by the suspension chain
//! map for `ι` followed by conjugation with `φ̄` (the spectrum action on
//! chains times the sign of the inverse sphere permutation); products come
//! from the ring multiplication through the shuffle product.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ispace::{FcpStruct, ISpace, Inj, InjCat};
use crate::linalg::SparseMatrix;
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::traits::NormalizedChains;

use super::chains::{coordinates, cross_terms, permutation_sign};
use super::lattice::Scalars;
use super::spectrum::SymRingSpectrum;

/// Largest level size enumerated.
const ELEMENT_BUDGET: usize = 1 << 16;

/// `Ω•E` together with the chain data it was computed from.
#[derive(Clone, Debug)]
pub struct OmegaBullet {
    pub space: ISpace,
    pub fcp: FcpStruct,
    /// Level `n` vertices as cycle vectors in `C̃_n(Y_n) ⊗ R`.
    pub elements: Vec<Vec<Vec<i64>>>,
    pub factorization: FactorizationReport,
}

/// Evidence that `φ̄_* ∘ ι_*` does not depend on the chosen extension `φ̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub injections: usize,
    pub extensions_compared: usize,
}

struct ChainData<'a> {
    sc: Scalars,
    r: &'a SymRingSpectrum,
    chains: Vec<NormalizedChains<FinSimplex>>,
    suspension: Vec<Option<SparseMatrix>>,
    index: Vec<HashMap<Vec<i64>, u32>>,
}

fn apply_sparse(sc: &Scalars, m: &SparseMatrix, v: &[i64], rows: usize) -> Vec<i64> {
    let mut out = vec![sc.zero(); rows];
    for (c, col) in m.cols.iter().enumerate() {
        if v[c] == sc.zero() {
            continue;
        }
        for &(r, k) in col {
            out[r as usize] = sc.add(out[r as usize], sc.mul(sc.from_int(k), v[c]));
        }
    }
    out
}

impl ChainData<'_> {
    fn rank(&self, n: usize) -> usize {
        self.chains[n].basis.get(n).map_or(0, Vec::len)
    }

    /// `ι_*: Z_n → Z_{n+1}`.
    fn iota(&self, n: usize, v: &[i64]) -> Vec<i64> {
        match &self.suspension[n] {
            Some(m) => apply_sparse(&self.sc, m, v, self.rank(n + 1)),
            None => vec![self.sc.zero(); self.rank(n + 1)],
        }
    }

    /// Conjugation by a permutation of level `n`.
    fn conjugate(&self, n: usize, p: &[usize], v: &[i64]) -> Vec<i64> {
        let sc = &self.sc;
        let action = self.r.spectrum.action(n, p);
        let sign = sc.from_int(permutation_sign(p));
        let mut out = vec![sc.zero(); v.len()];
        for (i, s) in self.chains[n].basis.get(n).into_iter().flatten().enumerate() {
            if v[i] == sc.zero() {
                continue;
            }
            if let Some(j) = self.chains[n].coordinate(n, &action.apply(s)) {
                out[j as usize] = sc.add(out[j as usize], sc.mul(sign, v[i]));
            }
        }
        out
    }

    fn act(&self, f: &Inj, ext: &Inj, v: &[i64]) -> Vec<i64> {
        let mut cur = v.to_vec();
        for n in f.src()..f.tgt {
            cur = self.iota(n, &cur);
        }
        self.conjugate(f.tgt, &ext.values, &cur)
    }

    fn lookup(&self, n: usize, v: &[i64]) -> Result<u32> {
        self.index[n]
            .get(v)
            .copied()
            .ok_or_else(|| Error::InvalidModule(format!("{v:?} is not a cycle of level {n}")))
    }
}

/// Builds `Ω•E` and its FCP structure for a ring spectrum with Dold–Kan
/// backed levels, verifying functoriality and independence of the
/// factorization `φ = φ̄ ∘ ι` exhaustively.
pub fn omega_bullet(r: &SymRingSpectrum) -> Result<OmegaBullet> {
    let e = &r.spectrum;
    let sc = e.scalars().cloned().ok_or_else(|| Error::NotDkBacked(format!("{} has plain simplicial levels", e.name())))?;
    let n_max = e.bound();
    let base = Arc::new(InjCat::new(n_max)?);
    let chains: Vec<NormalizedChains<FinSimplex>> = (0..=n_max).map(|n| e.chains(n)).collect::<Result<_>>()?;
    let mut elements = Vec::new();
    for n in 0..=n_max {
        let looped = e.dk_model(n)?.loops(n)?;
        if (1..=looped.top()).any(|k| looped.rank(k) > 0) {
            return Err(Error::NotDkBacked(format!("Ω^{n} of level {n} is not concentrated in degree 0")));
        }
        let z = looped.module(0).expect("degree 0 exists");
        elements.push(z.elements(&sc, ELEMENT_BUDGET)?);
    }
    let suspension = (0..=n_max)
        .map(|n| (n < n_max).then(|| e.suspension_chain_map(n, &chains[n], &chains[n + 1]).degrees.get(n + 1).cloned()).flatten())
        .collect();
    let index = elements.iter().map(|l| l.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect()).collect();
    let data = ChainData { sc: sc.clone(), r, chains, suspension, index };

    let levels: Vec<Arc<FinSSet>> = elements.iter().map(|l| Arc::new(FinSSet::discrete(l.len()))).collect();
    let space = ISpace::from_fn(base.clone(), levels.clone(), |f| {
        let ext = f.canonical_extension();
        let table = elements[f.src()]
            .iter()
            .map(|v| data.lookup(f.tgt, &data.act(f, &ext, v)))
            .collect::<Result<Vec<u32>>>()?;
        SMap::from_fn(levels[f.src()].clone(), levels[f.tgt].clone(), |s| FinSimplex::vertex(table[s.base as usize]))
    })?;

    let mut factorization = FactorizationReport { injections: 0, extensions_compared: 0 };
    for m in 0..base.n_mor() as u32 {
        let f = base.inj(m);
        let canonical = f.canonical_extension();
        for ext in f.all_extensions() {
            for v in &elements[f.src()] {
                if data.act(f, &ext, v) != data.act(f, &canonical, v) {
                    return Err(Error::LawViolation {
                        law: "factorization independence".into(),
                        witness: format!("{f:?} with extensions {:?} and {:?} on {v:?}", ext.values, canonical.values),
                    });
                }
            }
            factorization.extensions_compared += 1;
        }
        factorization.injections += 1;
    }

    // bilinear shuffle-product tensor on basis pairs
    let unit_chain = coordinates(&data.chains[0], 0, &[(FinSimplex::vertex(r.unit), 1)]);
    let mut unit_vec = vec![sc.zero(); data.rank(0)];
    for (i, c) in unit_chain {
        unit_vec[i as usize] = sc.from_int(c);
    }
    let unit = data.lookup(0, &unit_vec)?;
    let product = |m: usize, n: usize, x: &[i64], y: &[i64]| -> Vec<i64> {
        let mut out = vec![sc.zero(); data.rank(m + n)];
        let (bm, bn) = (&data.chains[m].basis, &data.chains[n].basis);
        for (i, a) in bm.get(m).into_iter().flatten().enumerate() {
            for (j, b) in bn.get(n).into_iter().flatten().enumerate() {
                let coeff = sc.mul(x[i], y[j]);
                if coeff == sc.zero() {
                    continue;
                }
                let terms: Vec<(FinSimplex, i64)> = cross_terms(&e.level(m).space, a, &e.level(n).space, b)
                    .into_iter()
                    .map(|(a2, b2, s)| (r.multiply(m, n, &a2, &b2), s))
                    .collect();
                for (t, c) in coordinates(&data.chains[m + n], m + n, &terms) {
                    out[t as usize] = sc.add(out[t as usize], sc.mul(sc.from_int(c), coeff));
                }
            }
        }
        out
    };
    let fcp = FcpStruct::new(
        space.clone(),
        unit,
        |m, n, dom| {
            let mut table = HashMap::new();
            for (i, x) in elements[m].iter().enumerate() {
                for (j, y) in elements[n].iter().enumerate() {
                    table.insert((i, j), data.lookup(m + n, &product(m, n, x, y))?);
                }
            }
            SMap::from_fn(dom.set().clone(), levels[m + n].clone(), |s| {
                let c = dom.decode(s);
                FinSimplex::vertex(table[&(c[0].base as usize, c[1].base as usize)])
            })
        },
        r.commutative,
    )?;
    Ok(OmegaBullet { space, fcp, elements, factorization })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dkspec::ring::FinCommRing;
    use crate::dkspec::spectrum::{em_spectrum, trivial_spectrum};
    use crate::ispace::check_fcp;

    fn ring(s: &str) -> Arc<FinCommRing> {
        Arc::new(FinCommRing::parse(s).unwrap())
    }

    #[test]
    fn levels_are_copies_of_the_ring() {
        let o = omega_bullet(&em_spectrum(ring("Z/2"), 3).unwrap()).unwrap();
        for n in 0..=3 {
            assert_eq!(o.space.level(n).vertex_count(), 2);
            assert_eq!(o.space.level(n).dim_top(), 0);
        }
        assert!(o.factorization.extensions_compared > o.factorization.injections);
    }

    #[test]
    fn z4_structure_passes_the_fcp_audit() {
        let o = omega_bullet(&em_spectrum(ring("Z/4"), 3).unwrap()).unwrap();
        let rep = check_fcp(&o.fcp, false).unwrap();
        assert!(rep.checks["commutativity"] > 0);
    }

    #[test]
    fn level_zero_product_is_the_ring_product() {
        let r = ring("F5");
        let o = omega_bullet(&em_spectrum(r.clone(), 2).unwrap()).unwrap();
        // level 0 is Z_0 = R with the coordinate of the non-basepoint vertex
        for (i, x) in o.elements[0].iter().enumerate() {
            for (j, y) in o.elements[0].iter().enumerate() {
                let p = o.fcp.multiply(0, 0, &FinSimplex::vertex(i as u32), &FinSimplex::vertex(j as u32));
                let expect = r.mul(x[0] as u32, y[0] as u32) as i64;
                assert_eq!(o.elements[0][p.base as usize], vec![expect]);
            }
        }
        assert_eq!(o.elements[0][o.fcp.unit() as usize], vec![r.one() as i64]);
    }

    #[test]
    fn transposition_at_level_two_is_natural() {
        let o = omega_bullet(&em_spectrum(ring("Z/6"), 3).unwrap()).unwrap();
        let b = o.space.base().clone();
        let t = b.transposition(2, 0);
        let t_plus = b.id_of(&b.inj(t).block_sum(&Inj::identity(1)));
        let tt = o.space.map(t).then(o.space.map(t));
        assert!(tt.same_as(&SMap::identity(o.space.level(2).clone())));
        for a in 0..o.space.level(2).vertex_count() as u32 {
            for c in 0..o.space.level(1).vertex_count() as u32 {
                let (a, c) = (FinSimplex::vertex(a), FinSimplex::vertex(c));
                let lhs = o.fcp.multiply(2, 1, &o.space.map(t).apply(&a), &c);
                let rhs = o.space.map(t_plus).apply(&o.fcp.multiply(2, 1, &a, &c));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trivial_spectrum_gives_the_point() {
        let o = omega_bullet(&trivial_spectrum(2).unwrap()).unwrap();
        for n in 0..=2 {
            assert_eq!(o.space.level(n).vertex_count(), 1);
        }
    }

    #[test]
    fn plain_levels_are_rejected() {
        let s = crate::dkspec::spectrum::sphere_spectrum(2).unwrap();
        assert!(matches!(omega_bullet(&s), Err(Error::NotDkBacked(_))));
    }
}
