//! 𝕀-spaces (functors `𝕀≤N → sSet`), maps between them, free 𝕀-spaces and
//! their adjunction check.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::barcat::DiagramF;
use crate::error::{Error, Result};
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::json::FinSSetTables;

use super::injcat::{Inj, InjCat};

#[derive(Clone, Debug)]
pub struct ISpace {
    base: Arc<InjCat>,
    diagram: DiagramF,
}

/// JSON form: one simplicial set per level and one map per generating
/// morphism; the remaining maps are recovered by composition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ISpaceTables {
    pub bound: usize,
    pub levels: Vec<FinSSetTables>,
    pub generators: Vec<GeneratorTable>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorTable {
    pub injection: Inj,
    pub map: Vec<Vec<u32>>,
}

impl ISpace {
    pub fn new(base: Arc<InjCat>, diagram: DiagramF) -> Result<ISpace> {
        if diagram.base().as_ref() != base.cat().as_ref() {
            return Err(Error::MismatchedBase);
        }
        Ok(ISpace { base, diagram })
    }

    /// Builds the 𝕀-space with the given levels and the map of every
    /// injection supplied by `act`; functoriality is verified exhaustively.
    pub fn from_fn(base: Arc<InjCat>, levels: Vec<Arc<FinSSet>>, act: impl Fn(&Inj) -> Result<SMap>) -> Result<ISpace> {
        check_levels(&base, &levels)?;
        let maps = (0..base.n_mor() as u32).map(|m| act(base.inj(m)).map(Arc::new)).collect::<Result<Vec<_>>>()?;
        let diagram = DiagramF::new(base.cat().clone(), levels, maps)?;
        Ok(ISpace { base, diagram })
    }

    /// Builds an 𝕀-space from the maps of the generating morphisms only;
    /// all other maps are composites along generator words, and the result
    /// is rejected unless it is a functor.
    pub fn from_generators(
        base: Arc<InjCat>,
        levels: Vec<Arc<FinSSet>>,
        generator: impl Fn(&Inj) -> Result<SMap>,
    ) -> Result<ISpace> {
        check_levels(&base, &levels)?;
        let mut gens: HashMap<u32, SMap> = HashMap::new();
        for g in base.generators(false) {
            gens.insert(g, generator(base.inj(g))?);
        }
        let maps = (0..base.n_mor() as u32)
            .map(|m| {
                let src = base.inj(m).src();
                let start = SMap::identity(levels[src].clone());
                Arc::new(base.generator_word(m).iter().fold(start, |acc, g| acc.then(&gens[g])))
            })
            .collect();
        let diagram = DiagramF::new(base.cat().clone(), levels, maps)?;
        Ok(ISpace { base, diagram })
    }

    pub fn constant(base: Arc<InjCat>, x: Arc<FinSSet>) -> ISpace {
        let diagram = DiagramF::constant(base.cat().clone(), x);
        ISpace { base, diagram }
    }

    /// The unit 𝕀-space `*`.
    pub fn point(base: Arc<InjCat>) -> ISpace {
        Self::constant(base, Arc::new(FinSSet::point()))
    }

    pub fn base(&self) -> &Arc<InjCat> {
        &self.base
    }

    pub fn bound(&self) -> usize {
        self.base.bound()
    }

    pub fn diagram(&self) -> &DiagramF {
        &self.diagram
    }

    pub fn level(&self, n: usize) -> &Arc<FinSSet> {
        self.diagram.object(n as u32)
    }

    pub fn map(&self, m: u32) -> &SMap {
        self.diagram.map(m)
    }

    pub fn act(&self, f: &Inj) -> &SMap {
        self.diagram.map(self.base.id_of(f))
    }

    /// Largest `dim_top` over all levels.
    pub fn dim_top(&self) -> usize {
        self.base.objects().map(|n| self.level(n).dim_top()).max().unwrap_or(0)
    }

    /// Levelwise disjoint union.
    pub fn disjoint_union(&self, other: &ISpace) -> Result<ISpace> {
        if self.base != other.base {
            return Err(Error::MismatchedBase);
        }
        let levels: Vec<Arc<FinSSet>> =
            self.base.objects().map(|n| Arc::new(self.level(n).disjoint_union(other.level(n)))).collect();
        ISpace::from_fn(self.base.clone(), levels.clone(), |f| {
            let (a, b) = (self.level(f.src()), levels[f.tgt].clone());
            let shift_src = |k: usize| a.nondeg_count(k) as u32;
            let shift_tgt = |k: usize| self.level(f.tgt).nondeg_count(k) as u32;
            SMap::from_fn(levels[f.src()].clone(), b, |s| {
                let k = s.dim();
                if s.base < shift_src(k) {
                    self.act(f).apply(s)
                } else {
                    let y = other.act(f).apply(&FinSimplex::nondeg(k, s.base - shift_src(k)));
                    FinSimplex { deg: y.deg, base: y.base + shift_tgt(y.base_dim()) }
                }
            })
        })
    }

    pub fn to_tables(&self) -> ISpaceTables {
        ISpaceTables {
            bound: self.bound(),
            levels: self.base.objects().map(|n| self.level(n).to_tables()).collect(),
            generators: self
                .base
                .generators(false)
                .into_iter()
                .map(|g| GeneratorTable { injection: self.base.inj(g).clone(), map: self.map(g).to_table() })
                .collect(),
        }
    }

    pub fn from_tables(t: &ISpaceTables) -> Result<ISpace> {
        let base = Arc::new(InjCat::new(t.bound)?);
        if t.levels.len() != t.bound + 1 {
            return Err(Error::Parse(format!("expected {} levels", t.bound + 1)));
        }
        let levels: Vec<Arc<FinSSet>> = t.levels.iter().map(|l| FinSSet::from_tables(l).map(Arc::new)).collect::<Result<_>>()?;
        let given: HashMap<&Inj, &Vec<Vec<u32>>> = t.generators.iter().map(|g| (&g.injection, &g.map)).collect();
        ISpace::from_generators(base, levels.clone(), |f| {
            let table = given.get(f).ok_or_else(|| Error::Parse(format!("missing generator {f:?}")))?;
            SMap::from_table(levels[f.src()].clone(), levels[f.tgt].clone(), table)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_tables()).expect("tables serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ISpace> {
        let t: ISpaceTables = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        ISpace::from_tables(&t)
    }
}

fn check_levels(base: &InjCat, levels: &[Arc<FinSSet>]) -> Result<()> {
    if levels.len() != base.bound() + 1 {
        return Err(Error::NotAFunctor(format!("{} levels given for bound {}", levels.len(), base.bound())));
    }
    Ok(())
}

/// A natural transformation between 𝕀-spaces over the same base.
#[derive(Clone, Debug)]
pub struct ISpaceMap {
    pub source: ISpace,
    pub target: ISpace,
    pub components: Vec<Arc<SMap>>,
}

impl ISpaceMap {
    pub fn new(source: ISpace, target: ISpace, components: Vec<Arc<SMap>>) -> Result<ISpaceMap> {
        if source.base != target.base {
            return Err(Error::MismatchedBase);
        }
        if components.len() != source.bound() + 1 {
            return Err(Error::NotAFunctor("one component per level is required".into()));
        }
        let base = source.base.clone();
        for m in 0..base.n_mor() as u32 {
            let f = base.inj(m);
            let a = components[f.src()].then(target.map(m));
            let b = source.map(m).then(&components[f.tgt]);
            if !a.same_as(&b) {
                return Err(Error::NotAFunctor(format!("components are not natural at {f:?}")));
            }
        }
        Ok(ISpaceMap { source, target, components })
    }

    pub fn identity(x: &ISpace) -> ISpaceMap {
        let components = x.base.objects().map(|n| Arc::new(SMap::identity(x.level(n).clone()))).collect();
        ISpaceMap { source: x.clone(), target: x.clone(), components }
    }

    /// The collapse `X → *`.
    pub fn to_point(x: &ISpace) -> ISpaceMap {
        let target = ISpace::point(x.base.clone());
        let components =
            x.base.objects().map(|n| Arc::new(SMap::constant(x.level(n).clone(), target.level(n).clone(), 0))).collect();
        ISpaceMap { source: x.clone(), target, components }
    }
}

/// The 𝕀-space `n ↦ T_n × C` for a functorial family of finite index sets
/// `T_n` (listed per level) acted on by `act`.
pub fn copies_ispace<T: Clone + Eq + Hash>(
    base: Arc<InjCat>,
    c: Arc<FinSSet>,
    index: Vec<Vec<T>>,
    act: impl Fn(&Inj, &T) -> T,
) -> Result<ISpace> {
    let levels: Vec<Arc<FinSSet>> = index
        .iter()
        .map(|t| Arc::new(t.iter().fold(FinSSet::empty(), |acc, _| acc.disjoint_union(&c))))
        .collect();
    let position: Vec<HashMap<T, u32>> =
        index.iter().map(|t| t.iter().enumerate().map(|(i, x)| (x.clone(), i as u32)).collect()).collect();
    ISpace::from_fn(base, levels.clone(), |f| {
        SMap::from_fn(levels[f.src()].clone(), levels[f.tgt].clone(), |s| {
            let k = s.dim();
            let per = c.nondeg_count(k) as u32;
            let (copy, b) = (s.base / per, s.base % per);
            let image = act(f, &index[f.src()][copy as usize]);
            let j = *position[f.tgt].get(&image).expect("action stays inside the index sets");
            FinSimplex::nondeg(k, j * per + b)
        })
    })
}

/// The free 𝕀-space `F_d A`, `n ↦ 𝕀(d, n) × A`, with postcomposition.
pub fn free_ispace(d: usize, a: Arc<FinSSet>, base: Arc<InjCat>) -> Result<ISpace> {
    if d > base.bound() {
        return Err(Error::ObjectOutOfRange(d));
    }
    let index: Vec<Vec<Inj>> = base.objects().map(|n| base.hom(d, n).into_iter().map(|m| base.inj(m).clone()).collect()).collect();
    copies_ispace(base, a, index, |f, psi| f.after(psi))
}

/// Sizes of the two hom-sets of the free/evaluation adjunction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionCount {
    pub natural_transformations: usize,
    pub maps_into_level: usize,
}

/// Enumerates `Hom(F_d A, X)` as natural families and `Hom(A, X(d))` as
/// simplicial maps, and checks that restriction to the copy indexed by
/// `id_d` is a bijection whose inverse is `f ↦ (ψ ↦ X(ψ) ∘ f)`.
pub fn free_adjunction_check(d: usize, a: &Arc<FinSSet>, x: &ISpace, budget: usize) -> Result<AdjunctionCount> {
    let base = x.base().clone();
    if d > base.bound() {
        return Err(Error::ObjectOutOfRange(d));
    }
    let right = SMap::enumerate(a, x.level(d), budget)?;
    // slots (n, ψ) in order; candidates are all maps A → X(n)
    let slots: Vec<(usize, u32)> = base.objects().flat_map(|n| base.hom(d, n).into_iter().map(move |p| (n, p))).collect();
    let slot_of: HashMap<u32, usize> = slots.iter().enumerate().map(|(i, &(_, p))| (p, i)).collect();
    let cand: Vec<Vec<SMap>> = base.objects().map(|n| SMap::enumerate(a, x.level(n), budget)).collect::<Result<_>>()?;
    let mut chosen: Vec<Option<usize>> = vec![None; slots.len()];
    let mut families: Vec<Vec<usize>> = Vec::new();
    // naturality: g_{φψ} = X(φ) ∘ g_ψ for every φ out of the target of ψ
    let consistent = |chosen: &[Option<usize>], i: usize| -> bool {
        let (n, p) = slots[i];
        let gi = &cand[n][chosen[i].expect("assigned")];
        for (j, &(nj, pj)) in slots.iter().enumerate() {
            let Some(cj) = chosen[j] else { continue };
            let gj = &cand[nj][cj];
            for &phi in base.cat().out(nj as u32) {
                if base.compose(phi, pj) == p && !gj.then(x.map(phi)).same_as(gi) {
                    return false;
                }
            }
            for &phi in base.cat().out(n as u32) {
                if base.compose(phi, p) == pj && !gi.then(x.map(phi)).same_as(gj) {
                    return false;
                }
            }
        }
        true
    };
    fn search(
        i: usize,
        chosen: &mut Vec<Option<usize>>,
        slots: &[(usize, u32)],
        cand: &[Vec<SMap>],
        consistent: &dyn Fn(&[Option<usize>], usize) -> bool,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        if i == slots.len() {
            if out.len() >= budget {
                return Err(Error::BudgetExceeded(format!("more than {budget} natural transformations")));
            }
            out.push(chosen.iter().map(|c| c.expect("assigned")).collect());
            return Ok(());
        }
        for c in 0..cand[slots[i].0].len() {
            chosen[i] = Some(c);
            if consistent(chosen, i) {
                search(i + 1, chosen, slots, cand, consistent, out, budget)?;
            }
            chosen[i] = None;
        }
        Ok(())
    }
    search(0, &mut chosen, &slots, &cand, &consistent, &mut families, budget)?;
    let id_slot = slot_of[&base.identity(d)];
    let mut seen = vec![false; right.len()];
    for fam in &families {
        let restricted = &cand[d][fam[id_slot]];
        let Some(r) = right.iter().position(|f| f.same_as(restricted)) else {
            return Err(Error::BijectionFailure("restriction is not a map into X(d)".into()));
        };
        if std::mem::replace(&mut seen[r], true) {
            return Err(Error::BijectionFailure(format!("two families restrict to map {r}")));
        }
        for (i, &(n, p)) in slots.iter().enumerate() {
            if !restricted.then(x.map(p)).same_as(&cand[n][fam[i]]) {
                return Err(Error::BijectionFailure(format!("family differs from the extension of its restriction at level {n}")));
            }
        }
    }
    if let Some(r) = seen.iter().position(|s| !s) {
        return Err(Error::BijectionFailure(format!("map {r} into X({d}) extends to no natural family")));
    }
    Ok(AdjunctionCount { natural_transformations: families.len(), maps_into_level: right.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::sphere::standard_sphere;

    fn base(n: usize) -> Arc<InjCat> {
        Arc::new(InjCat::new(n).unwrap())
    }

    #[test]
    fn free_level_sizes() {
        let b = base(3);
        let pt = Arc::new(FinSSet::point());
        let f0 = free_ispace(0, pt.clone(), b.clone()).unwrap();
        assert!((0..=3).all(|n| f0.level(n).vertex_count() == 1));
        let f1 = free_ispace(1, pt.clone(), b.clone()).unwrap();
        assert_eq!((0..=3).map(|n| f1.level(n).vertex_count()).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        let f2 = free_ispace(2, pt, b.clone()).unwrap();
        assert_eq!(f2.level(3).vertex_count(), 6);
        assert!(matches!(free_ispace(4, Arc::new(FinSSet::point()), b), Err(Error::ObjectOutOfRange(4))));
    }

    #[test]
    fn generators_determine_the_functor() {
        let b = base(3);
        let circle = Arc::new(standard_sphere(1).space);
        let x = free_ispace(1, circle, b.clone()).unwrap();
        let y = ISpace::from_json(&x.to_json()).unwrap();
        for m in 0..b.n_mor() as u32 {
            assert!(x.map(m).same_as(y.map(m)));
        }
    }

    #[test]
    fn free_adjunction_on_small_instances() {
        let b = base(2);
        let two = Arc::new(FinSSet::discrete(2));
        let circle = Arc::new(standard_sphere(1).space);
        let targets = [
            ISpace::constant(b.clone(), two.clone()),
            free_ispace(1, Arc::new(FinSSet::point()), b.clone()).unwrap(),
            free_ispace(0, circle.clone(), b.clone()).unwrap(),
        ];
        for d in 0..=2 {
            for a in [two.clone(), circle.clone()] {
                for x in &targets {
                    let c = free_adjunction_check(d, &a, x, 10_000).unwrap();
                    assert_eq!(c.natural_transformations, c.maps_into_level);
                }
            }
        }
    }
}
