//! Segal maps of a Γ-space, the first Segal-machine delooping and the
//! group completion of `π₀ H(1⁺)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::barcat::{BarComplex, BarSimplex, FinCat, HocolimMap};
use crate::error::{Error, Result};
use crate::linalg::chain::{homology_iso, normalize, tensor, ChainComplex, SparseMatrix};
use crate::linalg::{AbGroup, ChainMap, IsoVerdict};
use crate::sset::homology::integral_homology;
use crate::sset::pi0::pi0;
use crate::sset::traits::{normalized_chains, Extent, NormalizedChains, SimplicialSet};

use super::gamma::GammaSpace;
use super::icat::BasedMap;
use super::monoid::{FinMonoid, GroupCompletion};

/// The Segal map `H(n⁺) → H(1⁺)ⁿ` at one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalLevel {
    pub n: usize,
    pub pi0_bijection: Option<bool>,
    pub homology: IsoVerdict,
    /// `(d ↓ u)` has an initial object for every `d` with `Σd ≤ N`
    pub comma_certificate: bool,
    pub comma_objects_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalReport {
    pub k_max: usize,
    pub levels: Vec<SegalLevel>,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.pi0_bijection == Some(true) && l.homology.passed() && l.comma_certificate)
    }

    pub fn out_of_range(&self) -> bool {
        self.levels.iter().any(|l| matches!(l.homology, IsoVerdict::OutOfRange { .. }))
    }
}

/// The restriction of a `q`-simplex to its vertices `a..=b`.
fn restrict<X: SimplicialSet>(x: &X, s: &X::Simplex, a: usize, b: usize) -> X::Simplex {
    let mut out = s.clone();
    for q in (b + 1..=x.dim_of(s)).rev() {
        out = x.face(q, &out);
    }
    for _ in 0..a {
        out = x.face(0, &out);
    }
    out
}

/// `C^{⊗n}` through degree `top` together with the block offsets needed to
/// locate `e_1 ⊗ … ⊗ e_n`.
struct TensorPower {
    complex: ChainComplex,
    /// `offsets[j][e][p]`: start of the block `T_{j-1,p} ⊗ C_{e-p}` in `T_{j,e}`
    offsets: Vec<Vec<Vec<usize>>>,
    factor_ranks: Vec<usize>,
}

impl TensorPower {
    fn new(c: &ChainComplex, n: usize, top: usize) -> TensorPower {
        let factor_ranks: Vec<usize> = (0..=top).map(|k| c.rank(k)).collect();
        let mut complex = c.truncate(top);
        let mut offsets = vec![Vec::new()];
        for _ in 1..n {
            let prev: Vec<usize> = (0..=top).map(|k| complex.rank(k)).collect();
            offsets.push(
                (0..=top)
                    .map(|e| {
                        let mut acc = 0;
                        (0..=e)
                            .map(|p| {
                                let here = acc;
                                acc += prev[p] * factor_ranks[e - p];
                                here
                            })
                            .collect()
                    })
                    .collect(),
            );
            complex = tensor(&complex, c, top).0;
        }
        TensorPower { complex, offsets, factor_ranks }
    }

    /// Basis index of `e_1 ⊗ … ⊗ e_n` from `(degree, index)` pairs.
    fn index(&self, parts: &[(usize, u32)]) -> usize {
        let (mut deg, mut idx) = (parts[0].0, parts[0].1 as usize);
        for (j, &(d, i)) in parts.iter().enumerate().skip(1) {
            let e = deg + d;
            idx = self.offsets[j][e][deg] + idx * self.factor_ranks[d] + i as usize;
            deg = e;
        }
        idx
    }
}

/// Alexander–Whitney composed with the Segal map, into `C(H(1⁺))^{⊗n}`.
fn segal_chain_map(
    h1: &BarComplex,
    c1: &NormalizedChains<BarSimplex>,
    src: &NormalizedChains<BarSimplex>,
    target: &TensorPower,
    deltas: &[HocolimMap],
    top: usize,
) -> ChainMap {
    let n = deltas.len();
    let mut degrees = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut cols = Vec::with_capacity(src.basis[k].len());
        for s in &src.basis[k] {
            let xs: Vec<BarSimplex> = deltas.iter().map(|d| d.apply(s)).collect();
            let mut terms = Vec::new();
            // cut points 0 = i_0 ≤ i_1 ≤ … ≤ i_n = k
            let mut cuts = vec![0usize; n + 1];
            cuts[n] = k;
            loop {
                let mut parts = Vec::with_capacity(n);
                for j in 0..n {
                    let (a, b) = (cuts[j], cuts[j + 1]);
                    match c1.coordinate(b - a, &restrict(h1, &xs[j], a, b)) {
                        Some(i) => parts.push((b - a, i)),
                        None => break,
                    }
                }
                if parts.len() == n {
                    terms.push((target.index(&parts) as u32, 1));
                }
                // next nondecreasing sequence cuts[1..n] in 0..=k
                let mut j = n - 1;
                while j > 0 && cuts[j] == k {
                    j -= 1;
                }
                if j == 0 {
                    break;
                }
                cuts[j] += 1;
                for l in j + 1..n {
                    cuts[l] = cuts[j];
                }
            }
            cols.push(normalize(terms));
        }
        degrees.push(SparseMatrix::new(target.complex.rank(k), cols));
    }
    ChainMap { degrees }
}

fn comma_certificate(h: &GammaSpace, n: usize) -> Result<(bool, usize)> {
    let cat = h.category(n);
    let base = cat.base().cat();
    let factors: Vec<&FinCat> = vec![base.as_ref(); n];
    let product = std::sync::Arc::new(FinCat::product(&factors)?);
    let u = cat.forgetful(&product)?;
    let bound = cat.base().bound();
    let no = base.n_obj();
    let mut checked = 0;
    for d in 0..product.n_obj() {
        let mut counts = Vec::with_capacity(n);
        let mut code = d;
        for _ in 0..n {
            counts.push(code % no);
            code /= no;
        }
        if counts.iter().sum::<usize>() > bound {
            continue;
        }
        checked += 1;
        if crate::barcat::comma_category(d as u32, &u)?.initial.is_none() {
            return Ok((false, checked));
        }
    }
    Ok((true, checked))
}

/// `H(0⁺)` against the empty product: one component and the homology of a
/// point.  The comma category over `𝕀≤N(0⁺) = *` always has an initial object.
fn point_level(h: &GammaSpace, k_max: usize, avail: usize) -> Result<SegalLevel> {
    let h0 = h.level(0);
    if k_max > avail {
        return Ok(SegalLevel {
            n: 0,
            pi0_bijection: None,
            homology: IsoVerdict::OutOfRange { requested: k_max, available: avail },
            comma_certificate: true,
            comma_objects_checked: 1,
        });
    }
    let groups = integral_homology(h0, k_max)?;
    let point: Vec<AbGroup> = (0..=k_max).map(|k| if k == 0 { AbGroup::free(1) } else { AbGroup::zero() }).collect();
    let homology = match groups.iter().zip(&point).position(|(a, b)| a != b) {
        None => IsoVerdict::Pass { through: k_max },
        Some(k) => IsoVerdict::Fail {
            degree: k,
            source: groups[k].to_string(),
            target: point[k].to_string(),
            reason: "H(0⁺) is not a point".into(),
        },
    };
    Ok(SegalLevel {
        n: 0,
        pi0_bijection: Some(h0.components()? == 1),
        homology,
        comma_certificate: true,
        comma_objects_checked: 1,
    })
}

/// Checks the Segal maps `H(n⁺) → H(1⁺)ⁿ` for `0 ≤ n ≤ n_max` on π₀ and on
/// homology through `k_max`, and certifies them by the comma-category
/// criterion.  A request beyond the truncation gives an out-of-range verdict.
pub fn segal_check(h: &GammaSpace, k_max: usize) -> Result<SegalReport> {
    let avail = h.truncation().saturating_sub(2);
    let mut levels = vec![point_level(h, k_max, avail)?];
    for n in 1..=h.n_max() {
        let h1 = h.level(1);
        let (comma_certificate, comma_objects_checked) = comma_certificate(h, n)?;
        if k_max > avail {
            levels.push(SegalLevel {
                n,
                pi0_bijection: None,
                homology: IsoVerdict::OutOfRange { requested: k_max, available: avail },
                comma_certificate,
                comma_objects_checked,
            });
            continue;
        }
        let hn = h.level(n);
        let deltas: Vec<HocolimMap> =
            (1..=n).map(|i| h.map(&BasedMap::projection(n, i))).collect::<Result<_>>()?;

        let pn = pi0(hn)?;
        let p1 = pi0(h1)?;
        let mut image: Vec<Option<usize>> = vec![None; pn.count];
        for (i, v) in pn.vertices.iter().enumerate() {
            let code = deltas.iter().fold(0usize, |acc, d| acc * p1.count + p1.component_of(h1, &d.apply(v)) as usize);
            image[pn.vertex_component[i] as usize] = Some(code);
        }
        let mut distinct: Vec<usize> = image.iter().flatten().copied().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let pi0_bijection = distinct.len() == pn.count && Some(pn.count) == p1.count.checked_pow(n as u32);

        let top = k_max + 1;
        let src = normalized_chains(hn, top)?;
        let c1 = normalized_chains(h1, top)?;
        let target = TensorPower::new(&c1.complex, n, top);
        let f = segal_chain_map(h1, &c1, &src, &target, &deltas, top);
        let homology = homology_iso(&f, &src.complex, &target.complex, k_max)?;
        levels.push(SegalLevel { n, pi0_bijection: Some(pi0_bijection), homology, comma_certificate, comma_objects_checked });
    }
    Ok(SegalReport { k_max, levels })
}

/// The diagonal of `[k] ↦ H(k⁺)`, i.e. `H` evaluated on the simplicial
/// circle, through simplicial degree `levels`.
pub struct Delooping<'a> {
    h: &'a GammaSpace,
    levels: usize,
    faces: Vec<Vec<HocolimMap>>,
    degeneracies: Vec<Vec<HocolimMap>>,
}

/// `d_i: (k)⁺ → (k−1)⁺` of the simplicial circle.
fn circle_face(k: usize, i: usize) -> BasedMap {
    let values = (0..=k)
        .map(|j| {
            if j == 0 {
                0
            } else if i == 0 {
                j - 1
            } else if i == k {
                if j == k {
                    0
                } else {
                    j
                }
            } else if j <= i {
                j
            } else {
                j - 1
            }
        })
        .collect();
    BasedMap { tgt: k - 1, values }
}

/// `s_i: k⁺ → (k+1)⁺` of the simplicial circle.
fn circle_degeneracy(k: usize, i: usize) -> BasedMap {
    let values = (0..=k).map(|j| if j == 0 || j <= i { j } else { j + 1 }).collect();
    BasedMap { tgt: k + 1, values }
}

impl<'a> Delooping<'a> {
    fn new(h: &'a GammaSpace, levels: usize) -> Result<Self> {
        let mut faces = vec![Vec::new()];
        let mut degeneracies = Vec::new();
        for k in 1..=levels {
            faces.push((0..=k).map(|i| h.map(&circle_face(k, i))).collect::<Result<_>>()?);
        }
        for k in 0..levels {
            degeneracies.push((0..=k).map(|i| h.map(&circle_degeneracy(k, i))).collect::<Result<_>>()?);
        }
        Ok(Delooping { h, levels, faces, degeneracies })
    }
}

impl SimplicialSet for Delooping<'_> {
    type Simplex = BarSimplex;

    fn dim_of(&self, s: &BarSimplex) -> usize {
        s.mors.len()
    }

    fn face(&self, i: usize, s: &BarSimplex) -> BarSimplex {
        let k = s.mors.len();
        self.faces[k][i].apply(&self.h.level(k).face(i, s))
    }

    fn degeneracy(&self, i: usize, s: &BarSimplex) -> BarSimplex {
        let k = s.mors.len();
        self.degeneracies[k][i].apply(&self.h.level(k).degeneracy(i, s))
    }

    fn degeneracy_mask(&self, s: &BarSimplex) -> u32 {
        let k = s.mors.len();
        if k == 0 || k > self.levels {
            return 0;
        }
        (0..k).filter(|&i| self.degeneracy(i, &self.face(i, s)) == *s).fold(0, |m, i| m | (1 << i))
    }

    fn nondegenerate(&self, k: usize) -> Result<Vec<BarSimplex>> {
        if k > self.levels {
            return Err(Error::InsufficientDimension { needed: k, available: self.levels });
        }
        Ok(self.h.level(k).simplices(k)?.into_iter().filter(|s| self.degeneracy_mask(s) == 0).collect())
    }

    fn extent(&self) -> Extent {
        Extent::Skeletal(self.levels)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeloopingReport {
    /// simplicial degrees of the diagonal that were built
    pub levels: usize,
    /// homology in degrees `0..=levels-2`
    pub homology: Vec<AbGroup>,
}

impl DeloopingReport {
    pub fn h1(&self) -> Option<&AbGroup> {
        self.homology.get(1)
    }
}

/// First delooping of `H` through simplicial degree `d` (so homology is
/// certified through `d − 2`).  Needs `H(k⁺)` for every `k ≤ d`.
pub fn segal_machine_delooping(h: &GammaSpace, d: usize) -> Result<DeloopingReport> {
    if d > h.n_max() {
        return Err(Error::InsufficientGammaRange { needed: d, available: h.n_max() });
    }
    if d < 2 || d > h.truncation() {
        return Err(Error::TruncationTooSmall(format!(
            "the delooping through degree {d} needs 2 ≤ {d} ≤ D = {}",
            h.truncation()
        )));
    }
    let diag = Delooping::new(h, d)?;
    let homology = integral_homology(&diag, d - 2)?;
    Ok(DeloopingReport { levels: d, homology })
}

/// `π₀ H(1⁺)` with the product induced by the fold map `2⁺ → 1⁺`, and its
/// group completion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCompletionPi0 {
    pub monoid: FinMonoid,
    pub completion: GroupCompletion,
}

impl GroupCompletionPi0 {
    pub fn grouplike(&self) -> bool {
        self.completion.grouplike
    }
}

pub fn group_completion_pi0(h: &GammaSpace) -> Result<GroupCompletionPi0> {
    if h.n_max() < 2 {
        return Err(Error::InsufficientGammaRange { needed: 2, available: h.n_max() });
    }
    let (h0, h1, h2) = (h.level(0), h.level(1), h.level(2));
    let p1 = pi0(h1)?;
    let p2 = pi0(h2)?;
    let d1 = h.map(&BasedMap::projection(2, 1))?;
    let d2 = h.map(&BasedMap::projection(2, 2))?;
    let fold = h.map(&BasedMap::fold(2))?;
    let n = p1.count;
    let mut table: HashMap<(u32, u32), u32> = HashMap::new();
    let mut seen = vec![false; p2.count];
    for (i, v) in p2.vertices.iter().enumerate() {
        let c = p2.vertex_component[i] as usize;
        if std::mem::replace(&mut seen[c], true) {
            continue;
        }
        let key = (p1.component_of(h1, &d1.apply(v)), p1.component_of(h1, &d2.apply(v)));
        let value = p1.component_of(h1, &fold.apply(v));
        if let Some(old) = table.insert(key, value) {
            if old != value {
                return Err(Error::LawViolation {
                    law: "fold map well defined on π₀".into(),
                    witness: format!("classes {key:?} multiply to both {old} and {value}"),
                });
            }
        }
    }
    let mut rows = vec![vec![0u32; n]; n];
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            rows[a as usize][b as usize] = *table.get(&(a, b)).ok_or_else(|| {
                Error::BijectionFailure(format!("no component of H(2⁺) over the pair ({a}, {b})"))
            })?;
        }
    }
    let include = h.map(&BasedMap { tgt: 1, values: vec![0] })?;
    let base = h0.nondegenerate(0)?;
    let unit = p1.component_of(h1, &include.apply(&base[0]));
    let labels = (0..n).map(|c| format!("[{c}]")).collect();
    let monoid = FinMonoid::new(labels, rows, unit)?;
    let completion = monoid.group_completion()?;
    Ok(GroupCompletionPi0 { monoid, completion })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::barcat::{hocolim, DiagramF};
    use crate::dkspec::ring::FinCommRing;
    use crate::dkspec::spectrum::em_spectrum;
    use crate::gammaunits::gamma::gamma_construct;
    use crate::gammaunits::monoid::gl1_bullet;
    use crate::ispace::{FcpStruct, InjCat};

    fn gl1(ring: &str, n: usize) -> FcpStruct {
        let r = Arc::new(FinCommRing::parse(ring).unwrap());
        gl1_bullet(&em_spectrum(r, n).unwrap()).unwrap().units.fcp
    }

    fn group_bar_h1(g: &FinMonoid) -> AbGroup {
        let c = Arc::new(FinCat::group(&g.table, g.unit).unwrap());
        let b = hocolim(&c, &DiagramF::point(c.clone()), 3).unwrap();
        integral_homology(&b, 1).unwrap()[1].clone()
    }

    #[test]
    fn circle_operators_satisfy_the_identities() {
        for k in 2..5 {
            for j in 1..=k {
                for i in 0..j {
                    let lhs = circle_face(k - 1, i).after(&circle_face(k, j));
                    let rhs = circle_face(k - 1, j - 1).after(&circle_face(k, i));
                    assert_eq!(lhs, rhs, "k={k} i={i} j={j}");
                }
            }
        }
        for k in 1..4 {
            for j in 0..=k {
                assert_eq!(circle_face(k + 1, j).after(&circle_degeneracy(k, j)), BasedMap::identity(k));
                assert_eq!(circle_face(k + 1, j + 1).after(&circle_degeneracy(k, j)), BasedMap::identity(k));
            }
        }
    }

    #[test]
    fn terminal_gamma_space_is_special() {
        let x = FcpStruct::terminal(Arc::new(InjCat::new(2).unwrap()));
        let h = gamma_construct(&x, 3, 3).unwrap();
        let r = segal_check(&h, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.levels.len(), 4);
        let d = segal_machine_delooping(&h, 3).unwrap();
        assert_eq!(d.homology, vec![AbGroup::free(1), AbGroup::zero()]);
        let g = group_completion_pi0(&h).unwrap();
        assert!(g.grouplike());
        assert_eq!(g.completion.order, 1);
    }

    #[test]
    fn units_of_z6_deloop() {
        let h = gamma_construct(&gl1("Z/6", 2), 3, 3).unwrap();
        let g = group_completion_pi0(&h).unwrap();
        assert_eq!(g.completion.group, AbGroup::cyclic(2));
        let d = segal_machine_delooping(&h, 3).unwrap();
        assert_eq!(d.h1(), Some(&AbGroup::cyclic(2)));
        assert_eq!(d.h1(), Some(&group_bar_h1(&g.monoid)));
    }

    #[test]
    fn segal_maps_for_units_of_f5() {
        let h = gamma_construct(&gl1("F5", 2), 2, 3).unwrap();
        let r = segal_check(&h, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        let g = group_completion_pi0(&h).unwrap();
        assert_eq!(g.completion.group, AbGroup::cyclic(4));
    }

    #[test]
    fn requests_beyond_the_range_are_reported() {
        let x = FcpStruct::terminal(Arc::new(InjCat::new(2).unwrap()));
        let h = gamma_construct(&x, 2, 3).unwrap();
        let r = segal_check(&h, 2).unwrap();
        assert!(r.out_of_range());
        assert!(!r.passed());
        assert_eq!(
            segal_machine_delooping(&h, 3).unwrap_err(),
            Error::InsufficientGammaRange { needed: 3, available: 2 }
        );
    }
}
