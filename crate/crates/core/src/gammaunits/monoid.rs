//! Finite monoids, π₀ of an FCP, the units pullback and `GL₁•R`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::dkspec::omega::{omega_bullet, OmegaBullet};
use crate::dkspec::ring::FinCommRing;
use crate::dkspec::spectrum::SymRingSpectrum;
use crate::error::{Error, Result};
use crate::ispace::{check_fcp, FcpReport, FcpStruct, ISpace};
use crate::linalg::finite::group_from_table;
use crate::linalg::AbGroup;
use crate::sset::finsset::{FinSimplex, SMap};
use crate::sset::pi0::pi0;
use crate::util::UnionFind;

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinMonoid {
    pub labels: Vec<String>,
    pub table: Vec<Vec<u32>>,
    pub unit: u32,
    pub commutative: bool,
}

impl FinMonoid {
    /// Validates associativity and the unit laws; the commutative flag is
    /// read off the table.
    pub fn new(labels: Vec<String>, table: Vec<Vec<u32>>, unit: u32) -> Result<FinMonoid> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v as usize >= n)) {
            return Err(Error::LawViolation { law: "closure".into(), witness: "table is not n × n".into() });
        }
        if unit as usize >= n {
            return Err(Error::ObjectOutOfRange(unit as usize));
        }
        let m = |a: u32, b: u32| table[a as usize][b as usize];
        for a in 0..n as u32 {
            if m(unit, a) != a || m(a, unit) != a {
                return Err(Error::LawViolation { law: "unit".into(), witness: labels[a as usize].clone() });
            }
            for b in 0..n as u32 {
                for c in 0..n as u32 {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        let w = format!("({}, {}, {})", labels[a as usize], labels[b as usize], labels[c as usize]);
                        return Err(Error::LawViolation { law: "associativity".into(), witness: w });
                    }
                }
            }
        }
        let commutative = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
        Ok(FinMonoid { labels, table, unit, commutative })
    }

    /// The trivial monoid.
    pub fn trivial() -> FinMonoid {
        FinMonoid { labels: vec!["1".into()], table: vec![vec![0]], unit: 0, commutative: true }
    }

    /// `(R, ×)`.
    pub fn multiplicative(ring: &FinCommRing) -> FinMonoid {
        let n = ring.len() as u32;
        let table = (0..n).map(|a| (0..n).map(|b| ring.mul(a, b)).collect()).collect();
        FinMonoid { labels: ring.labels().to_vec(), table, unit: ring.one(), commutative: true }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    /// Two-sided inverse, by exhaustive search.
    pub fn inverse(&self, a: u32) -> Option<u32> {
        (0..self.len() as u32).find(|&b| self.mul(a, b) == self.unit && self.mul(b, a) == self.unit)
    }

    pub fn units(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&a| self.inverse(a).is_some()).collect()
    }

    pub fn is_group(&self) -> bool {
        self.units().len() == self.len()
    }

    /// The group of units as an abelian group (commutative monoids only).
    pub fn unit_group(&self) -> Result<AbGroup> {
        if !self.commutative {
            return Err(Error::NotCommutative("the unit group is only reported for commutative monoids".into()));
        }
        let units = self.units();
        let pos: HashMap<u32, u32> = units.iter().enumerate().map(|(i, &u)| (u, i as u32)).collect();
        let one = pos[&self.unit];
        group_from_table(units.len(), &|a, b| pos[&self.mul(units[a as usize], units[b as usize])], one)
    }

    /// A bijection `self → other` preserving unit and product, if any.
    pub fn isomorphism(&self, other: &FinMonoid) -> Option<Vec<u32>> {
        let n = self.len();
        if n != other.len() || self.commutative != other.commutative {
            return None;
        }
        fn extend(a: &FinMonoid, b: &FinMonoid, map: &mut Vec<u32>, used: &mut [bool], next: usize) -> bool {
            if next == a.len() {
                return true;
            }
            if map[next] != u32::MAX {
                return extend(a, b, map, used, next + 1);
            }
            for t in 0..b.len() as u32 {
                if used[t as usize] {
                    continue;
                }
                map[next] = t;
                let consistent = (0..=next).all(|x| {
                    (0..=next).all(|y| {
                        let p = a.mul(x as u32, y as u32) as usize;
                        map[p] == u32::MAX || p > next || map[p] == b.mul(map[x], map[y])
                    })
                });
                if consistent {
                    used[t as usize] = true;
                    if extend(a, b, map, used, next + 1) {
                        return true;
                    }
                    used[t as usize] = false;
                }
                map[next] = u32::MAX;
            }
            false
        }
        let mut map = vec![u32::MAX; n];
        let mut used = vec![false; n];
        map[self.unit as usize] = other.unit;
        used[other.unit as usize] = true;
        if !extend(self, other, &mut map, &mut used, 0) {
            return None;
        }
        let ok = (0..n as u32).all(|x| (0..n as u32).all(|y| map[self.mul(x, y) as usize] == other.mul(map[x as usize], map[y as usize])));
        ok.then_some(map)
    }

    /// Grothendieck group of a commutative monoid: pairs `(a, b)` modulo
    /// `(a, b) ~ (c, d)` iff `a·d·k = b·c·k` for some `k`.
    pub fn group_completion(&self) -> Result<GroupCompletion> {
        if !self.commutative {
            return Err(Error::NotCommutative("group completion needs a commutative monoid".into()));
        }
        let n = self.len() as u32;
        let pair = |a: u32, b: u32| (a * n + b) as usize;
        let mut uf = UnionFind::new((n * n) as usize);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (l, r) = (self.mul(a, d), self.mul(b, c));
                        if (0..n).any(|k| self.mul(l, k) == self.mul(r, k)) {
                            uf.union(pair(a, b) as u32, pair(c, d) as u32);
                        }
                    }
                }
            }
        }
        let (labels, count) = uf.labels();
        let mut rep = vec![(0u32, 0u32); count];
        for a in 0..n {
            for b in 0..n {
                rep[labels[pair(a, b)] as usize] = (a, b);
            }
        }
        let class = |a: u32, b: u32| labels[pair(a, b)];
        let group = group_from_table(
            count,
            &|x, y| {
                let ((a, b), (c, d)) = (rep[x as usize], rep[y as usize]);
                class(self.mul(a, c), self.mul(b, d))
            },
            class(self.unit, self.unit),
        )?;
        let map = (0..n).map(|a| class(a, self.unit)).collect();
        Ok(GroupCompletion { group, order: count, grouplike: self.is_group(), map })
    }
}

/// Output of [`FinMonoid::group_completion`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCompletion {
    pub group: AbGroup,
    pub order: usize,
    /// the monoid was already a group (completion is then a bijection)
    pub grouplike: bool,
    /// image of each monoid element
    pub map: Vec<u32>,
}

/// π₀ of an FCP as a finite monoid.
#[derive(Clone, Debug, Serialize)]
pub struct Pi0Monoid {
    pub monoid: FinMonoid,
    /// first level `s` with `π₀X(s)` and `π₀X(s+1)` both mapping bijectively
    /// onto the colimit
    pub stable_from: usize,
    /// a vertex `(level, vertex)` in each class
    pub representatives: Vec<(usize, u32)>,
    /// class of each vertex, per level
    pub class_of: Vec<Vec<u32>>,
    /// number of products compared while filling the table
    pub products_checked: usize,
}

/// π₀ of `hocolim X` as `colim_n π₀X(n)`, with the product induced by `μ`
/// on representatives; every pair of vertices in range is multiplied and
/// compared with the table.
pub fn pi0_monoid(x: &FcpStruct) -> Result<Pi0Monoid> {
    let space = x.space();
    let base = space.base();
    let n_max = space.bound();
    let comps: Vec<_> = base.objects().map(|n| pi0(space.level(n).as_ref())).collect::<Result<_>>()?;
    let mut offset = Vec::new();
    let mut total = 0u32;
    for c in &comps {
        offset.push(total);
        total += c.count as u32;
    }
    let mut uf = UnionFind::new(total as usize);
    for g in base.generators(false) {
        let f = base.inj(g);
        let (m, n) = (f.src(), f.tgt);
        let map = space.map(g);
        for (i, v) in comps[m].vertices.iter().enumerate() {
            let w = map.apply(v);
            let cw = comps[n].component_of(space.level(n).as_ref(), &w);
            uf.union(offset[m] + comps[m].vertex_component[i], offset[n] + cw);
        }
    }
    let (labels, count) = uf.labels();
    let class_of: Vec<Vec<u32>> = base
        .objects()
        .map(|n| comps[n].vertex_component.iter().map(|&c| labels[(offset[n] + c) as usize]).collect())
        .collect();
    let onto = |n: usize| {
        let mut seen: Vec<u32> = (0..comps[n].count as u32).map(|c| labels[(offset[n] + c) as usize]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == comps[n].count && seen.len() == count
    };
    let stable_from = (0..n_max).find(|&s| onto(s) && onto(s + 1)).ok_or_else(|| {
        Error::NotStabilized(format!("π₀ of the levels does not stabilize within N = {n_max}"))
    })?;
    let mut representatives = vec![(usize::MAX, 0u32); count];
    for n in base.objects() {
        for (v, &c) in class_of[n].iter().enumerate() {
            if representatives[c as usize].0 == usize::MAX {
                representatives[c as usize] = (n, v as u32);
            }
        }
    }
    let mut table = vec![vec![u32::MAX; count]; count];
    let mut checked = 0;
    for m in 0..=n_max {
        for n in 0..=n_max - m {
            for (a, &ca) in class_of[m].iter().enumerate() {
                for (b, &cb) in class_of[n].iter().enumerate() {
                    let p = x.multiply(m, n, &FinSimplex::vertex(a as u32), &FinSimplex::vertex(b as u32));
                    let cp = class_of[m + n][p.base as usize];
                    let slot = &mut table[ca as usize][cb as usize];
                    if *slot == u32::MAX {
                        *slot = cp;
                    } else if *slot != cp {
                        return Err(Error::LawViolation {
                            law: "independence of representatives".into(),
                            witness: format!("classes {ca}·{cb} give {} and {cp}", *slot),
                        });
                    }
                    checked += 1;
                }
            }
        }
    }
    if let Some((a, b)) = (0..count).flat_map(|a| (0..count).map(move |b| (a, b))).find(|&(a, b)| table[a][b] == u32::MAX) {
        return Err(Error::NotStabilized(format!("no representatives of classes {a} and {b} multiply within N = {n_max}")));
    }
    let unit = class_of[0][x.unit() as usize];
    let labels = representatives.iter().map(|(n, v)| format!("[{v}]@{n}")).collect();
    let monoid = FinMonoid::new(labels, table, unit)?;
    Ok(Pi0Monoid { monoid, stable_from, representatives, class_of, products_checked: checked })
}

/// The sub-FCP on components whose class is invertible.
#[derive(Clone, Debug)]
pub struct UnitsFcp {
    pub fcp: FcpStruct,
    /// π₀ of the input
    pub monoid: Pi0Monoid,
    /// invertible classes of the input, in increasing order
    pub units: Vec<u32>,
    /// π₀ of the output (a group)
    pub pi0: Pi0Monoid,
}

fn translate(index: &[Vec<u32>], s: &FinSimplex) -> FinSimplex {
    FinSimplex { deg: s.deg, base: index[s.base_dim()][s.base as usize] }
}

/// `X^×`: the pullback of `X → π₀X ← (π₀X)^×`, levelwise the union of
/// components whose colimit class is a unit.
pub fn units_fcp(x: &FcpStruct) -> Result<UnitsFcp> {
    let monoid = pi0_monoid(x)?;
    let units = monoid.monoid.units();
    let is_unit: Vec<bool> = (0..monoid.monoid.len() as u32).map(|c| units.contains(&c)).collect();
    let space = x.space();
    let base = space.base().clone();
    let mut levels = Vec::new();
    let mut fwd = Vec::new();
    let mut back = Vec::new();
    for n in base.objects() {
        let keep: Vec<bool> = monoid.class_of[n].iter().map(|&c| is_unit[c as usize]).collect();
        let (sub, index) = space.level(n).full_subcomplex(&keep);
        let mut inverse: Vec<Vec<u32>> = index.iter().map(|_| Vec::new()).collect();
        for (k, idx) in index.iter().enumerate() {
            inverse[k] = vec![0; sub.nondeg_count(k)];
            for (old, &new) in idx.iter().enumerate() {
                if new != u32::MAX {
                    inverse[k][new as usize] = old as u32;
                }
            }
        }
        levels.push(Arc::new(sub));
        fwd.push(index);
        back.push(inverse);
    }
    let restricted = ISpace::from_fn(base.clone(), levels.clone(), |f| {
        let (m, n) = (f.src(), f.tgt);
        let map = space.act(f);
        SMap::from_fn(levels[m].clone(), levels[n].clone(), |s| translate(&fwd[n], &map.apply(&translate(&back[m], s))))
    })?;
    let unit = fwd[0][0][x.unit() as usize];
    if unit == u32::MAX {
        return Err(Error::LawViolation { law: "unit".into(), witness: "the unit component is not invertible".into() });
    }
    let fcp = FcpStruct::new(
        restricted,
        unit,
        |m, n, dom| {
            SMap::from_fn(dom.set().clone(), levels[m + n].clone(), |s| {
                let parts = dom.decode(s);
                let (a, b) = (translate(&back[m], &parts[0]), translate(&back[n], &parts[1]));
                translate(&fwd[m + n], &x.multiply(m, n, &a, &b))
            })
        },
        x.commutative,
    )?;
    let pi0 = pi0_monoid(&fcp)?;
    if !pi0.monoid.is_group() {
        return Err(Error::LawViolation { law: "grouplike".into(), witness: "π₀ of the units is not a group".into() });
    }
    Ok(UnitsFcp { fcp, monoid, units, pi0 })
}

/// `GL₁•R = (Ω•R)^×` with the audits rerun on the output.
#[derive(Clone, Debug)]
pub struct Gl1Bullet {
    pub omega: OmegaBullet,
    pub units: UnitsFcp,
    pub audit: FcpReport,
}

impl Gl1Bullet {
    pub fn fcp(&self) -> &FcpStruct {
        &self.units.fcp
    }
}

pub fn gl1_bullet(r: &SymRingSpectrum) -> Result<Gl1Bullet> {
    let omega = omega_bullet(r)?;
    check_fcp(&omega.fcp, false)?;
    let units = units_fcp(&omega.fcp)?;
    let audit = check_fcp(&units.fcp, false)?;
    Ok(Gl1Bullet { omega, units, audit })
}

/// Brute-force unit group of a ring (the oracle for π₀ gl₁).
pub fn ring_unit_group(ring: &FinCommRing) -> Result<AbGroup> {
    FinMonoid::multiplicative(ring).unit_group()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dkspec::spectrum::{em_spectrum, trivial_spectrum};
    use crate::ispace::{subset_fcp, InjCat};

    fn ring(s: &str) -> Arc<FinCommRing> {
        Arc::new(FinCommRing::parse(s).unwrap())
    }

    #[test]
    fn monoid_laws_are_checked() {
        let bad = FinMonoid::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]], 1);
        assert!(matches!(bad, Err(Error::LawViolation { .. })));
        let m = FinMonoid::multiplicative(&ring("Z/4"));
        assert!(m.commutative);
        assert_eq!(m.units(), vec![1, 3]);
    }

    #[test]
    fn group_completion_examples() {
        let t = FinMonoid::trivial().group_completion().unwrap();
        assert_eq!((t.order, t.grouplike), (1, true));
        // 0 absorbs, so everything is identified
        let z4 = FinMonoid::multiplicative(&ring("Z/4")).group_completion().unwrap();
        assert_eq!(z4.group, AbGroup::zero());
        assert!(!z4.grouplike);
        let units = FinMonoid::new(
            vec!["1".into(), "2".into(), "3".into(), "4".into()],
            (1..5u32).map(|a| (1..5u32).map(|b| (a * b % 5) - 1).collect()).collect(),
            0,
        )
        .unwrap();
        let g = units.group_completion().unwrap();
        assert_eq!(g.group, AbGroup::cyclic(4));
        assert!(g.grouplike);
    }

    #[test]
    fn isomorphisms_are_found() {
        let a = FinMonoid::multiplicative(&ring("Z/6"));
        let mut b = a.clone();
        // relabel by x ↦ 5x (an automorphism of the monoid)
        let perm = [0u32, 5, 4, 3, 2, 1];
        b.table = (0..6).map(|x| (0..6).map(|y| perm[a.mul(perm[x], perm[y]) as usize]).collect()).collect();
        b.unit = perm[a.unit as usize];
        assert!(a.isomorphism(&b).is_some());
        assert!(a.isomorphism(&FinMonoid::multiplicative(&ring("Z/5"))).is_none());
    }

    #[test]
    fn pi0_of_omega_is_the_multiplicative_monoid() {
        for (name, n) in [("F5", 3), ("Z/6", 2)] {
            let r = ring(name);
            let hr = em_spectrum(r.clone(), n).unwrap();
            let omega = omega_bullet(&hr).unwrap();
            let p = pi0_monoid(&omega.fcp).unwrap();
            assert!(p.monoid.isomorphism(&FinMonoid::multiplicative(&r)).is_some(), "{name}");
            assert_eq!(p.stable_from, 0);
        }
        let t = omega_bullet(&trivial_spectrum(2).unwrap()).unwrap();
        assert_eq!(pi0_monoid(&t.fcp).unwrap().monoid, FinMonoid { labels: vec!["[0]@0".into()], ..FinMonoid::trivial() });
    }

    #[test]
    fn units_of_em_spectra() {
        for (name, order) in [("Z/2", 1), ("F5", 4), ("Z/6", 2), ("F2[x]/(x^2)", 2)] {
            let r = ring(name);
            let g = gl1_bullet(&em_spectrum(r.clone(), 2).unwrap()).unwrap();
            assert_eq!(g.units.pi0.monoid.len(), order, "{name}");
            assert_eq!(g.units.pi0.monoid.unit_group().unwrap(), ring_unit_group(&r).unwrap());
            assert!(g.audit.commutative);
        }
    }

    #[test]
    fn subsets_do_not_stabilize() {
        let x = subset_fcp(Arc::new(InjCat::new(2).unwrap()), false).unwrap();
        assert!(matches!(pi0_monoid(&x), Err(Error::NotStabilized(_))));
    }

    #[test]
    fn units_of_the_point() {
        let x = FcpStruct::terminal(Arc::new(InjCat::new(2).unwrap()));
        let u = units_fcp(&x).unwrap();
        assert_eq!(u.pi0.monoid.len(), 1);
        assert_eq!(u.fcp.space().level(2).vertex_count(), 1);
    }
}
