//! `Σ•₊` from 𝕀-spaces to symmetric spectra and an explicit audit of the
//! adjunction `Hom(Σ•₊X, E) ≅ Hom(X, Ω•E)`.
//!
//! For a linear spectrum `E_n = R̃[Y_n]`, a pointed simplicial map
//! `K → R̃[Y]` assigns to every nondegenerate non-basepoint simplex of `K`
//! an `R`-combination of simplices of `Y` of the same dimension, compatibly
//! with faces.  These maps form a submodule which is enumerated exactly;
//! both sides of the adjunction are then enumerated independently and the
//! restriction map between them is checked to be a bijection with the
//! expected inverse.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ispace::ISpace;
use crate::linalg::IntMatrix;
use crate::sset::finsset::{FinSimplex, PointedFinSSet, SMap};
use crate::sset::smash::SmashSet;
use crate::sset::sphere::SphereModel;
use crate::sset::traits::SimplicialSet;

use super::lattice::{Scalars, Submodule};
use super::spectrum::{LevelKind, SymSpectrum};

/// Maps out of the disjointly based level are extended by sending the added
/// point to the new basepoint.
fn plus_map(f: &SMap, src: &PointedFinSSet, tgt: &PointedFinSSet) -> Result<SMap> {
    let added = src.basepoint;
    SMap::from_fn(Arc::new(src.space.clone()), Arc::new(tgt.space.clone()), |s| {
        if s.base_dim() == 0 && s.base == added {
            tgt.base_simplex(s.dim())
        } else {
            f.apply(s)
        }
    })
}

struct SigmaParts {
    spectrum: SymSpectrum,
    smashes: Vec<SmashSet>,
    spheres: Vec<SphereModel>,
}

fn sigma_parts(x: &ISpace) -> Result<SigmaParts> {
    let base = x.base();
    let n_max = x.bound();
    let plus: Vec<PointedFinSSet> = base.objects().map(|n| PointedFinSSet::plus(x.level(n))).collect();
    let spheres: Vec<SphereModel> = base.objects().map(SphereModel::new).collect();
    let smashes: Vec<SmashSet> = base.objects().map(|n| SmashSet::new(&plus[n], &spheres[n].pointed)).collect::<Result<_>>()?;
    let levels = smashes.iter().map(SmashSet::pointed).collect();
    let circle = SphereModel::new(1);
    let iota: Vec<SMap> = (0..n_max)
        .map(|n| plus_map(x.map(base.inclusion(n, n + 1)), &plus[n], &plus[n + 1]))
        .collect::<Result<_>>()?;
    let spectrum = SymSpectrum::new(
        "Σ•₊X",
        LevelKind::Space,
        levels,
        |n, p| {
            let xp = plus_map(x.map(base.permutation(p)), &plus[n], &plus[n])?;
            let sp = spheres[n].permutation_map(p)?;
            smashes[n].smash_maps(&smashes[n], &xp, &sp)
        },
        |n, dom| {
            let (src, tgt) = (&smashes[n], &smashes[n + 1]);
            SMap::from_fn(dom.set().clone(), tgt.set().clone(), |s| {
                let k = s.dim();
                let Some((w, c)) = dom.decode(s) else { return FinSimplex::degenerate_vertex(tgt.basepoint(), k) };
                let Some((a, b)) = src.decode(&w) else { return FinSimplex::degenerate_vertex(tgt.basepoint(), k) };
                let mut t = spheres[n].decode(&b).expect("non-basepoint sphere simplex");
                t.extend(circle.decode(&c).expect("non-basepoint circle simplex"));
                tgt.encode(&iota[n].apply(&a), &spheres[n + 1].encode(k, Some(&t)))
            })
        },
        (0..=n_max).map(|n| Some(n.saturating_sub(1))).collect(),
    )?;
    Ok(SigmaParts { spectrum, smashes, spheres })
}

/// `Σ•₊X`: level `n` is `X(n)₊ ∧ S^n` with `Σ_n` acting diagonally; the
/// structure maps include `X(n) → X(n+1)` along `ι` and append the circle
/// coordinate.
pub fn sigma_bullet_plus(x: &ISpace) -> Result<SymSpectrum> {
    Ok(sigma_parts(x)?.spectrum)
}

/// The simplicial module `R̃[Y]` in dimensions `0..=top`: basis of
/// dimension `k` is every `k`-simplex of `Y` except the basepoint.
struct FreeLevels {
    y: PointedFinSSet,
    basis: Vec<Vec<FinSimplex>>,
    index: Vec<HashMap<FinSimplex, u32>>,
}

impl FreeLevels {
    fn new(y: &PointedFinSSet, top: usize) -> Result<FreeLevels> {
        let mut basis = Vec::new();
        let mut index = Vec::new();
        for k in 0..=top {
            let bp = y.base_simplex(k);
            let b: Vec<FinSimplex> = y.space.simplices(k)?.into_iter().filter(|s| *s != bp).collect();
            index.push(b.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect());
            basis.push(b);
        }
        Ok(FreeLevels { y: y.clone(), basis, index })
    }

    fn rank(&self, k: usize) -> usize {
        self.basis[k].len()
    }

    /// Pushes a vector forward along a simplexwise map into `target`.
    fn push(&self, sc: &Scalars, k: usize, v: &[i64], target: &FreeLevels, f: impl Fn(&FinSimplex) -> FinSimplex) -> Vec<i64> {
        let mut out = vec![sc.zero(); target.rank(k)];
        for (i, s) in self.basis[k].iter().enumerate() {
            if v[i] == sc.zero() {
                continue;
            }
            if let Some(&j) = target.index[k].get(&f(s)) {
                out[j as usize] = sc.add(out[j as usize], v[i]);
            }
        }
        out
    }

    fn face_vec(&self, sc: &Scalars, i: usize, k: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![sc.zero(); self.rank(k - 1)];
        for (r, s) in self.basis[k].iter().enumerate() {
            if v[r] == sc.zero() {
                continue;
            }
            if let Some(&j) = self.index[k - 1].get(&self.y.space.face(i, s)) {
                out[j as usize] = sc.add(out[j as usize], v[r]);
            }
        }
        out
    }

    fn degeneracy(&self, sc: &Scalars, i: usize, k: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![sc.zero(); self.rank(k + 1)];
        for (r, s) in self.basis[k].iter().enumerate() {
            if v[r] == sc.zero() {
                continue;
            }
            let j = self.index[k + 1][&self.y.space.degeneracy(i, s)];
            out[j as usize] = sc.add(out[j as usize], v[r]);
        }
        out
    }
}

/// All pointed simplicial maps `K → R̃[Y]`, each stored as one vector: the
/// images of the nondegenerate non-basepoint simplices of `K`, concatenated.
struct PointedMaps {
    k: PointedFinSSet,
    target: Arc<FreeLevels>,
    offset: HashMap<FinSimplex, usize>,
    elements: Vec<Vec<i64>>,
    position: HashMap<Vec<i64>, u32>,
}

impl PointedMaps {
    fn enumerate(sc: &Scalars, k: &PointedFinSSet, target: Arc<FreeLevels>, budget: usize) -> Result<PointedMaps> {
        let bp = FinSimplex::vertex(k.basepoint);
        let mut cells = Vec::new();
        let mut offset = HashMap::new();
        let mut width = 0;
        for d in 0..=k.space.dim_top() {
            for s in k.space.nondegenerate(d)? {
                if s == bp {
                    continue;
                }
                offset.insert(s, width);
                width += target.rank(d);
                cells.push(s);
            }
        }
        // one block of rows per (cell, face): d_i g(a) − g(d_i a) = 0
        let mut rows: Vec<Vec<i128>> = Vec::new();
        let minus_one = sc.neg(sc.one());
        for a in &cells {
            let d = a.dim();
            if d == 0 {
                continue;
            }
            let start = offset[a];
            for i in 0..=d {
                let face = k.space.face(i, a);
                // contribution of g(a): face_i of each basis vector
                let mut block = vec![vec![0i128; width]; target.rank(d - 1)];
                for (c, _) in target.basis[d].iter().enumerate() {
                    let mut unit = vec![sc.zero(); target.rank(d)];
                    unit[c] = sc.one();
                    for (r, val) in target.face_vec(sc, i, d, &unit).into_iter().enumerate() {
                        if val != sc.zero() {
                            block[r][start + c] = sc.add(block[r][start + c] as i64, val) as i128;
                        }
                    }
                }
                // minus g(face), written through the degeneracies of its base
                if !(face.base_dim() == 0 && face.base == k.basepoint) {
                    let b = FinSimplex::nondeg(face.base_dim(), face.base);
                    let fstart = offset[&b];
                    for c in 0..target.rank(b.dim()) {
                        let mut unit = vec![sc.zero(); target.rank(b.dim())];
                        unit[c] = sc.one();
                        let img = apply_degeneracies(sc, &target, &face, unit);
                        for (r, val) in img.into_iter().enumerate() {
                            if val != sc.zero() {
                                let cur = block[r][fstart + c] as i64;
                                block[r][fstart + c] = sc.add(cur, sc.mul(minus_one, val)) as i128;
                            }
                        }
                    }
                }
                rows.extend(block);
            }
        }
        let constraints = if rows.is_empty() { IntMatrix::zeros(0, width) } else { IntMatrix::from_rows(&rows) };
        let solutions = Submodule::free(sc, width).kernel_of(sc, &constraints)?;
        let elements = solutions.elements(sc, budget)?;
        let position = elements.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        Ok(PointedMaps { k: k.clone(), target, offset, elements, position })
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    /// `g(s)` as a vector of `R̃[Y]_{dim s}`.
    fn eval(&self, sc: &Scalars, g: &[i64], s: &FinSimplex) -> Vec<i64> {
        if s.base_dim() == 0 && s.base == self.k.basepoint {
            return vec![sc.zero(); self.target.rank(s.dim())];
        }
        let b = FinSimplex::nondeg(s.base_dim(), s.base);
        let start = self.offset[&b];
        let v = g[start..start + self.target.rank(b.dim())].to_vec();
        apply_degeneracies(sc, &self.target, s, v)
    }

    /// Vector of the map with the given values on the cells.
    fn assemble(&self, sc: &Scalars, value: impl Fn(&FinSimplex) -> Vec<i64>) -> Vec<i64> {
        let width: usize = self.offset.keys().map(|s| self.target.rank(s.dim())).sum();
        let mut out = vec![sc.zero(); width];
        for (s, &start) in &self.offset {
            for (i, v) in value(s).into_iter().enumerate() {
                out[start + i] = v;
            }
        }
        out
    }
}

fn apply_degeneracies(sc: &Scalars, target: &FreeLevels, s: &FinSimplex, mut v: Vec<i64>) -> Vec<i64> {
    let mut dim = s.base_dim();
    for i in 0..s.dim() {
        if (s.deg.mask() >> i) & 1 == 1 {
            v = target.degeneracy(sc, i, dim, &v);
            dim += 1;
        }
    }
    v
}

/// Outcome of the adjunction audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionAudit {
    pub bound: usize,
    /// `|Hom(Σ•₊X, E)|`
    pub spectrum_maps: usize,
    /// `|Hom(X, Ω•E)|`
    pub ispace_maps: usize,
    pub round_trips: usize,
}

/// Budget for every enumerated hom-set.
const AUDIT_BUDGET: usize = 1 << 20;

fn transpositions(n: usize) -> Vec<Vec<usize>> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, i + 1);
            p
        })
        .collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        q[v] = i;
    }
    q
}

fn bijection_failure(what: String) -> Error {
    Error::BijectionFailure(what)
}

/// Enumerates `Hom(Σ•₊X, E)` (level maps into `R̃[Y_n]` that are
/// equivariant and commute with structure maps) and `Hom(X, Ω•E)` (natural
/// families of points of the pointed mapping spaces `Map_*(S^n, E_n)`), and
/// checks that restriction along `S^n → X(n)₊ ∧ S^n`, `u ↦ x ∧ u`, is a
/// bijection whose inverse is `x ∧ u ↦ h(x)(u)`.
///
/// `X` must have discrete levels and `E` must be linear with the same bound.
pub fn adjunction_audit(x: &ISpace, e: &SymSpectrum) -> Result<AdjunctionAudit> {
    let sc = e.scalars().cloned().ok_or_else(|| Error::NotDkBacked(format!("{} has plain simplicial levels", e.name())))?;
    if x.bound() != e.bound() {
        return Err(Error::MismatchedBase);
    }
    if x.dim_top() > 0 {
        return Err(Error::InvalidSSet("the adjunction audit enumerates maps out of discrete 𝕀-spaces only".into()));
    }
    let n_max = x.bound();
    let base = x.base().clone();
    let parts = sigma_parts(x)?;
    let sig = &parts.spectrum;
    let targets: Vec<Arc<FreeLevels>> =
        (0..=n_max).map(|n| FreeLevels::new(e.level(n), n + 1).map(Arc::new)).collect::<Result<_>>()?;
    let left_maps: Vec<PointedMaps> = (0..=n_max)
        .map(|n| PointedMaps::enumerate(&sc, sig.level(n), targets[n].clone(), AUDIT_BUDGET))
        .collect::<Result<_>>()?;
    let right_maps: Vec<PointedMaps> = (0..=n_max)
        .map(|n| PointedMaps::enumerate(&sc, &parts.spheres[n].pointed, targets[n].clone(), AUDIT_BUDGET))
        .collect::<Result<_>>()?;
    let circle = SphereModel::new(1);
    let cells = |m: &PointedMaps, top: usize| -> Result<Vec<FinSimplex>> {
        let mut out = Vec::new();
        for k in 0..=top {
            out.extend(m.k.space.nondegenerate(k)?.into_iter().filter(|s| *s != FinSimplex::vertex(m.k.basepoint)));
        }
        Ok(out)
    };
    let act_e = |n: usize, p: &[usize], k: usize, v: &[i64]| -> Vec<i64> {
        let a = e.action(n, p);
        targets[n].push(&sc, k, v, &targets[n], |s| a.apply(s))
    };
    // σ^E(v ∧ c) for v ∈ R̃[Y_n]_k and a circle simplex c
    let sigma_e = |n: usize, k: usize, v: &[i64], c: &FinSimplex| -> Vec<i64> {
        let st = e.structure(n);
        targets[n].push(&sc, k, v, &targets[n + 1], |s| st.apply(s, c))
    };

    // ---- left side: spectrum maps
    let mut equivariant: Vec<Vec<u32>> = Vec::new();
    for n in 0..=n_max {
        let lm = &left_maps[n];
        let ks = cells(lm, n)?;
        let mut ok = Vec::new();
        'cand: for (gi, g) in lm.elements.iter().enumerate() {
            for p in transpositions(n) {
                let act_k = sig.action(n, &p);
                for s in &ks {
                    if lm.eval(&sc, g, &act_k.apply(s)) != act_e(n, &p, s.dim(), &lm.eval(&sc, g, s)) {
                        continue 'cand;
                    }
                }
            }
            ok.push(gi as u32);
        }
        equivariant.push(ok);
    }
    let left_compatible = |n: usize, g: &[i64], g1: &[i64]| -> Result<bool> {
        let st = sig.structure(n);
        for k in 0..=n + 1 {
            for w in st.domain.set().nondegenerate(k)? {
                let Some((a, c)) = st.domain.decode(&w) else { continue };
                let lhs = left_maps[n + 1].eval(&sc, g1, &st.map.apply(&w));
                let rhs = sigma_e(n, k, &left_maps[n].eval(&sc, g, &a), &c);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let mut left_families: Vec<Vec<u32>> = Vec::new();
    chain_families(&equivariant, &mut left_families, &|n, a, b| {
        let g = &left_maps[n].elements[equivariant[n][a as usize] as usize];
        let g1 = &left_maps[n + 1].elements[equivariant[n + 1][b as usize] as usize];
        left_compatible(n, g, g1)
    })?;

    // ---- right side: natural families X(n) → Map_*(S^n, E_n)
    let conj = |n: usize, p: &[usize], h: &[i64]| -> Result<Vec<i64>> {
        let rm = &right_maps[n];
        let inv = parts.spheres[n].permutation_map(&invert(p))?;
        Ok(rm.assemble(&sc, |u| act_e(n, p, u.dim(), &rm.eval(&sc, h, &inv.apply(u)))))
    };
    let iota_star = |n: usize, h: &[i64]| -> Vec<i64> {
        let (rm, rm1) = (&right_maps[n], &right_maps[n + 1]);
        rm1.assemble(&sc, |u| {
            let k = u.dim();
            let t = parts.spheres[n + 1].decode(u).expect("non-basepoint cell");
            let a = parts.spheres[n].encode(k, Some(&t[..n]));
            let c = circle.encode(k, Some(&t[n..]));
            if circle.decode(&c).is_none() {
                return vec![sc.zero(); targets[n + 1].rank(k)];
            }
            sigma_e(n, k, &rm.eval(&sc, h, &a), &c)
        })
    };
    let lookup = |n: usize, v: &[i64]| -> Result<u32> {
        right_maps[n].position.get(v).copied().ok_or_else(|| bijection_failure(format!("{v:?} is not a pointed map at level {n}")))
    };
    // per-level assignments respecting the permutation action
    let mut level_assignments: Vec<Vec<Vec<u32>>> = Vec::new();
    for n in 0..=n_max {
        let verts = x.level(n).vertex_count();
        let mut conj_tables: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
        for p in transpositions(n) {
            let table = right_maps[n].elements.iter().map(|h| lookup(n, &conj(n, &p, h)?)).collect::<Result<Vec<u32>>>()?;
            conj_tables.push((p, table));
        }
        let perm_maps: Vec<(SMap, &Vec<u32>)> =
            conj_tables.iter().map(|(p, t)| (x.map(base.permutation(p)).clone(), t)).collect();
        let mut out = Vec::new();
        let mut cur = vec![u32::MAX; verts];
        assign(0, &mut cur, right_maps[n].len(), &perm_maps, &mut out)?;
        level_assignments.push(out);
    }
    let iota_tables: Vec<Vec<u32>> = (0..n_max)
        .map(|n| right_maps[n].elements.iter().map(|h| lookup(n + 1, &iota_star(n, h))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let level_index: Vec<Vec<u32>> = level_assignments.iter().map(|l| (0..l.len() as u32).collect()).collect();
    let mut right_families: Vec<Vec<u32>> = Vec::new();
    chain_families(&level_index, &mut right_families, &|n, a, b| {
        let (ha, hb) = (&level_assignments[n][a as usize], &level_assignments[n + 1][b as usize]);
        let inc = x.map(base.inclusion(n, n + 1));
        Ok((0..ha.len()).all(|v| hb[inc.apply(&FinSimplex::vertex(v as u32)).base as usize] == iota_tables[n][ha[v] as usize]))
    })?;

    // ---- the comparison map and its inverse
    let restrict = |fam: &[u32]| -> Result<Vec<Vec<u32>>> {
        (0..=n_max)
            .map(|n| {
                let g = &left_maps[n].elements[equivariant[n][fam[n] as usize] as usize];
                let sm = &parts.smashes[n];
                (0..x.level(n).vertex_count() as u32)
                    .map(|v| {
                        let h = right_maps[n].assemble(&sc, |u| {
                            let xs = FinSimplex::degenerate_vertex(v, u.dim());
                            left_maps[n].eval(&sc, g, &sm.encode(&xs, u))
                        });
                        lookup(n, &h)
                    })
                    .collect()
            })
            .collect()
    };
    let right_set: HashMap<Vec<Vec<u32>>, usize> = right_families
        .iter()
        .enumerate()
        .map(|(i, fam)| ((0..=n_max).map(|n| level_assignments[n][fam[n] as usize].clone()).collect(), i))
        .collect();
    let mut hit = vec![false; right_families.len()];
    let mut round_trips = 0;
    for fam in &left_families {
        let image = restrict(fam)?;
        let Some(&j) = right_set.get(&image) else {
            return Err(bijection_failure(format!("restriction of {fam:?} is not natural")));
        };
        if std::mem::replace(&mut hit[j], true) {
            return Err(bijection_failure(format!("two spectrum maps restrict to family {j}")));
        }
        // inverse: x ∧ u ↦ h(x)(u)
        for n in 0..=n_max {
            let lm = &left_maps[n];
            let sm = &parts.smashes[n];
            let rebuilt = lm.assemble(&sc, |s| match sm.decode(s) {
                None => vec![sc.zero(); targets[n].rank(s.dim())],
                Some((a, u)) => {
                    if a.base == x.level(n).vertex_count() as u32 {
                        return vec![sc.zero(); targets[n].rank(s.dim())];
                    }
                    right_maps[n].eval(&sc, &right_maps[n].elements[image[n][a.base as usize] as usize], &u)
                }
            });
            let original = &lm.elements[equivariant[n][fam[n] as usize] as usize];
            if &rebuilt != original {
                return Err(bijection_failure(format!("round trip changes the level-{n} map of {fam:?}")));
            }
        }
        round_trips += 1;
    }
    if let Some(j) = hit.iter().position(|h| !h) {
        return Err(bijection_failure(format!(
            "natural family {j} is not hit ({} spectrum maps, {} natural families)",
            left_families.len(),
            right_families.len()
        )));
    }
    Ok(AdjunctionAudit { bound: n_max, spectrum_maps: left_families.len(), ispace_maps: right_families.len(), round_trips })
}

/// Sequences `(c_0, …, c_N)` with `c_n ∈ choices[n]` (as positions) and
/// `ok(n, c_n, c_{n+1})` for consecutive entries.
fn chain_families(
    choices: &[Vec<u32>],
    out: &mut Vec<Vec<u32>>,
    ok: &dyn Fn(usize, u32, u32) -> Result<bool>,
) -> Result<()> {
    fn go(
        n: usize,
        cur: &mut Vec<u32>,
        choices: &[Vec<u32>],
        out: &mut Vec<Vec<u32>>,
        ok: &dyn Fn(usize, u32, u32) -> Result<bool>,
    ) -> Result<()> {
        if n == choices.len() {
            if out.len() >= AUDIT_BUDGET {
                return Err(Error::BudgetExceeded(format!("more than {AUDIT_BUDGET} families")));
            }
            out.push(cur.clone());
            return Ok(());
        }
        for c in 0..choices[n].len() as u32 {
            if n > 0 && !ok(n - 1, cur[n - 1], c)? {
                continue;
            }
            cur.push(c);
            go(n + 1, cur, choices, out, ok)?;
            cur.pop();
        }
        Ok(())
    }
    go(0, &mut Vec::new(), choices, out, ok)
}

/// Assignments `vertex ↦ map index` with `h(p·v) = p_*(h(v))` for each
/// given permutation.
fn assign(v: usize, cur: &mut Vec<u32>, n_maps: usize, perms: &[(SMap, &Vec<u32>)], out: &mut Vec<Vec<u32>>) -> Result<()> {
    if v == cur.len() {
        if out.len() >= AUDIT_BUDGET {
            return Err(Error::BudgetExceeded(format!("more than {AUDIT_BUDGET} level assignments")));
        }
        out.push(cur.clone());
        return Ok(());
    }
    for c in 0..n_maps as u32 {
        cur[v] = c;
        let consistent = perms.iter().all(|(pm, table)| {
            (0..=v).all(|w| {
                let pw = pm.apply(&FinSimplex::vertex(w as u32)).base as usize;
                pw > v || cur[pw] == table[cur[w] as usize]
            }) && (0..=v).all(|w| {
                // constraints whose image is w but whose source was assigned later
                (0..=v).all(|u| pm.apply(&FinSimplex::vertex(u as u32)).base as usize != w || cur[w] == table[cur[u] as usize])
            })
        });
        if consistent {
            assign(v + 1, cur, n_maps, perms, out)?;
        }
    }
    cur[v] = u32::MAX;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dkspec::ring::FinCommRing;
    use crate::dkspec::spectrum::{em_spectrum, sphere_spectrum, trivial_spectrum};
    use crate::ispace::{free_ispace, InjCat};
    use crate::linalg::AbGroup;
    use crate::sset::finsset::FinSSet;
    use crate::sset::homology::integral_homology;

    fn base(n: usize) -> Arc<InjCat> {
        Arc::new(InjCat::new(n).unwrap())
    }

    #[test]
    fn sigma_of_the_point_is_the_sphere_spectrum() {
        let s = sigma_bullet_plus(&ISpace::point(base(3))).unwrap();
        s.check_laws().unwrap();
        let sphere = sphere_spectrum(3).unwrap();
        for n in 0..=3 {
            assert_eq!(s.level(n).space.counts(), sphere.spectrum.level(n).space.counts(), "level {n}");
        }
    }

    #[test]
    fn free_level_two_is_a_wedge_of_two_spheres() {
        let f1 = free_ispace(1, Arc::new(FinSSet::point()), base(2)).unwrap();
        let s = sigma_bullet_plus(&f1).unwrap();
        s.check_laws().unwrap();
        let h = integral_homology(&s.level(2).space, 2).unwrap();
        assert_eq!(h[2], AbGroup::free(2));
    }

    #[test]
    fn point_against_hz2() {
        let r = Arc::new(FinCommRing::parse("Z/2").unwrap());
        let e = em_spectrum(r, 2).unwrap();
        let a = adjunction_audit(&ISpace::point(base(2)), &e.spectrum).unwrap();
        assert_eq!(a.spectrum_maps, a.ispace_maps);
        assert_eq!(a.spectrum_maps, 2);
    }

    #[test]
    fn free_on_a_point_matches_level_zero() {
        let r = Arc::new(FinCommRing::parse("Z/4").unwrap());
        let e = em_spectrum(r, 1).unwrap();
        let f0 = free_ispace(0, Arc::new(FinSSet::point()), base(1)).unwrap();
        let a = adjunction_audit(&f0, &e.spectrum).unwrap();
        // pointed maps pt₊ → R̃[S⁰]: one per ring element
        assert_eq!(a.spectrum_maps, 4);
    }

    #[test]
    fn trivial_target_gives_singletons() {
        let f1 = free_ispace(1, Arc::new(FinSSet::point()), base(2)).unwrap();
        let a = adjunction_audit(&f1, &trivial_spectrum(2).unwrap().spectrum).unwrap();
        assert_eq!((a.spectrum_maps, a.ispace_maps), (1, 1));
    }

    #[test]
    fn free_on_one_generator_at_level_two() {
        let r = Arc::new(FinCommRing::parse("Z/3").unwrap());
        let e = em_spectrum(r, 2).unwrap();
        let f1 = free_ispace(1, Arc::new(FinSSet::point()), base(2)).unwrap();
        let a = adjunction_audit(&f1, &e.spectrum).unwrap();
        assert_eq!(a.spectrum_maps, a.ispace_maps);
        assert_eq!(a.round_trips, a.spectrum_maps);
        // determined by a point of Ω E₁ ≃ R
        assert_eq!(a.spectrum_maps, 3);
    }

    #[test]
    fn rejects_unsupported_inputs() {
        let s1 = Arc::new(crate::sset::sphere::standard_sphere(1).space);
        let r = Arc::new(FinCommRing::parse("Z/2").unwrap());
        let e = em_spectrum(r, 1).unwrap();
        let err = adjunction_audit(&ISpace::constant(base(1), s1), &e.spectrum).unwrap_err();
        assert!(matches!(err, Error::InvalidSSet(_)));
        let sphere = sphere_spectrum(1).unwrap();
        let err = adjunction_audit(&ISpace::point(base(1)), &sphere.spectrum).unwrap_err();
        assert!(matches!(err, Error::NotDkBacked(_)));
        let err = adjunction_audit(&ISpace::point(base(2)), &e.spectrum).unwrap_err();
        assert!(matches!(err, Error::MismatchedBase));
    }
}
