//! Functors from a finite category into finite simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::barcat::cat::{FinCat, FinCatTables, FinFunctor};
use crate::error::{Error, Result};
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::json::FinSSetTables;

/// Shared storage for covariant and contravariant diagrams.
#[derive(Clone, Debug)]
struct Assignment {
    base: Arc<FinCat>,
    objects: Vec<Arc<FinSSet>>,
    maps: Vec<Arc<SMap>>,
}

impl Assignment {
    fn check(&self, contravariant: bool) -> Result<()> {
        let c = &self.base;
        let bad = |m: String| Error::NotAFunctor(m);
        if self.objects.len() != c.n_obj() || self.maps.len() != c.n_mor() {
            return Err(bad("object or morphism assignment has the wrong length".into()));
        }
        for m in 0..c.n_mor() as u32 {
            let f = &self.maps[m as usize];
            let (a, b) = if contravariant { (c.tgt(m), c.src(m)) } else { (c.src(m), c.tgt(m)) };
            let same = |x: &Arc<FinSSet>, y: &Arc<FinSSet>| Arc::ptr_eq(x, y) || x == y;
            if !same(&f.source, &self.objects[a as usize]) || !same(&f.target, &self.objects[b as usize]) {
                return Err(bad(format!("map of morphism {m} has the wrong source or target")));
            }
            f.validate()?;
        }
        for o in 0..c.n_obj() as u32 {
            let id = SMap::identity(self.objects[o as usize].clone());
            if !self.maps[c.id(o) as usize].same_as(&id) {
                return Err(bad(format!("identity of object {o} is not sent to the identity")));
            }
        }
        for f in 0..c.n_mor() as u32 {
            for &g in c.out(c.tgt(f)) {
                let gf = c.compose(g, f).expect("composable");
                let (first, second) = if contravariant { (g, f) } else { (f, g) };
                let composite = self.maps[first as usize].then(&self.maps[second as usize]);
                if !composite.same_as(&self.maps[gf as usize]) {
                    return Err(bad(format!("composite ({g}, {f}) is not preserved")));
                }
            }
        }
        Ok(())
    }

    fn discrete(base: Arc<FinCat>, sizes: &[usize], act: impl Fn(u32, u32) -> u32, contravariant: bool) -> Self {
        let objects: Vec<Arc<FinSSet>> = sizes.iter().map(|&n| Arc::new(FinSSet::discrete(n))).collect();
        let maps = (0..base.n_mor() as u32)
            .map(|m| {
                let (a, b) = if contravariant { (base.tgt(m), base.src(m)) } else { (base.src(m), base.tgt(m)) };
                let (s, t) = (objects[a as usize].clone(), objects[b as usize].clone());
                let images = vec![(0..s.vertex_count() as u32).map(|v| FinSimplex::vertex(act(m, v))).collect()];
                Arc::new(SMap::new_unchecked(s, t, images))
            })
            .collect();
        Assignment { base, objects, maps }
    }

    fn to_tables(&self) -> DiagramTables {
        let maps = self.maps.iter().map(|f| f.to_table()).collect();
        DiagramTables {
            category: self.base.to_tables(),
            objects: self.objects.iter().map(|x| x.to_tables()).collect(),
            maps,
        }
    }

    fn from_tables(t: &DiagramTables, contravariant: bool) -> Result<Self> {
        let base = Arc::new(FinCat::from_tables(&t.category)?);
        let objects: Vec<Arc<FinSSet>> =
            t.objects.iter().map(|o| FinSSet::from_tables(o).map(Arc::new)).collect::<Result<_>>()?;
        if objects.len() != base.n_obj() || t.maps.len() != base.n_mor() {
            return Err(Error::NotAFunctor("diagram tables have the wrong length".into()));
        }
        let mut maps = Vec::with_capacity(t.maps.len());
        for (m, table) in t.maps.iter().enumerate() {
            let m = m as u32;
            let (a, b) = if contravariant { (base.tgt(m), base.src(m)) } else { (base.src(m), base.tgt(m)) };
            let (s, tg) = (objects[a as usize].clone(), objects[b as usize].clone());
            let f = SMap::from_table(s, tg, table).map_err(|e| Error::NotAFunctor(format!("map of morphism {m}: {e}")))?;
            maps.push(Arc::new(f));
        }
        let a = Assignment { base, objects, maps };
        a.check(contravariant)?;
        Ok(a)
    }
}

/// JSON form of a diagram: the category, one simplicial set per object and,
/// per morphism, the image of every simplex (indices into the full tables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramTables {
    pub category: FinCatTables,
    pub objects: Vec<FinSSetTables>,
    pub maps: Vec<Vec<Vec<u32>>>,
}

macro_rules! diagram_type {
    ($(#[$doc:meta])* $name:ident, $contra:expr) => {
        $(#[$doc])*
        #[derive(Clone, Debug)]
        pub struct $name {
            inner: Assignment,
        }

        impl $name {
            /// Builds and verifies functoriality exhaustively.
            pub fn new(base: Arc<FinCat>, objects: Vec<Arc<FinSSet>>, maps: Vec<Arc<SMap>>) -> Result<Self> {
                let inner = Assignment { base, objects, maps };
                inner.check($contra)?;
                Ok($name { inner })
            }

            /// A diagram of finite sets; `act(m, v)` is the image of element `v`
            /// under morphism `m`.
            pub fn discrete(base: Arc<FinCat>, sizes: &[usize], act: impl Fn(u32, u32) -> u32) -> Result<Self> {
                let inner = Assignment::discrete(base, sizes, act, $contra);
                inner.check($contra)?;
                Ok($name { inner })
            }

            /// The constant diagram at `x`.
            pub fn constant(base: Arc<FinCat>, x: Arc<FinSSet>) -> Self {
                let id = Arc::new(SMap::identity(x.clone()));
                let objects = vec![x; base.n_obj()];
                let maps = vec![id; base.n_mor()];
                $name { inner: Assignment { base, objects, maps } }
            }

            /// The constant diagram at a point.
            pub fn point(base: Arc<FinCat>) -> Self {
                Self::constant(base, Arc::new(FinSSet::point()))
            }

            pub fn base(&self) -> &Arc<FinCat> {
                &self.inner.base
            }

            pub fn object(&self, o: u32) -> &Arc<FinSSet> {
                &self.inner.objects[o as usize]
            }

            pub fn objects(&self) -> &[Arc<FinSSet>] {
                &self.inner.objects
            }

            pub fn map(&self, m: u32) -> &SMap {
                &self.inner.maps[m as usize]
            }

            pub fn to_tables(&self) -> DiagramTables {
                self.inner.to_tables()
            }

            pub fn from_tables(t: &DiagramTables) -> Result<Self> {
                Ok($name { inner: Assignment::from_tables(t, $contra)? })
            }

            pub fn to_json(&self) -> serde_json::Value {
                serde_json::to_value(self.to_tables()).expect("tables serialize")
            }

            pub fn from_json(v: &serde_json::Value) -> Result<Self> {
                let t: DiagramTables = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                Self::from_tables(&t)
            }

            /// Whether every object is a discrete simplicial set.
            pub fn is_discrete(&self) -> bool {
                self.inner.objects.iter().all(|x| x.counts().iter().skip(1).all(|&c| c == 0))
            }
        }
    };
}

diagram_type!(
    /// A covariant functor `C → sSet`.
    DiagramF,
    false
);

diagram_type!(
    /// A contravariant functor `C^op → sSet`; the map of `m: a → b` goes
    /// from the value at `b` to the value at `a`.
    CoDiagramF,
    true
);

impl DiagramF {
    /// The represented functor `C(c, −)` as a diagram of finite sets.
    pub fn represented(base: Arc<FinCat>, c: u32) -> Result<Self> {
        let homs: Vec<Vec<u32>> = (0..base.n_obj() as u32).map(|d| base.hom(c, d)).collect();
        let pos: HashMap<u32, u32> =
            homs.iter().flat_map(|h| h.iter().enumerate().map(|(i, &m)| (m, i as u32))).collect();
        let sizes: Vec<usize> = homs.iter().map(Vec::len).collect();
        let b = base.clone();
        Self::discrete(base, &sizes, |m, v| {
            let f = homs[b.src(m) as usize][v as usize];
            pos[&b.compose(m, f).expect("composable")]
        })
    }

    /// Restriction `X ∘ F` along a functor into the base category.
    pub fn pullback(&self, f: &FinFunctor) -> Result<Self> {
        if f.tgt.as_ref() != self.base().as_ref() {
            return Err(Error::MismatchedBase);
        }
        let objects = f.obj.iter().map(|&o| self.object(o).clone()).collect();
        let maps = f.mor.iter().map(|&m| self.inner.maps[m as usize].clone()).collect();
        Ok(DiagramF { inner: Assignment { base: f.src.clone(), objects, maps } })
    }
}

impl CoDiagramF {
    /// The corepresented functor `C(−, c)` as a diagram of finite sets.
    pub fn represented(base: Arc<FinCat>, c: u32) -> Result<Self> {
        let homs: Vec<Vec<u32>> = (0..base.n_obj() as u32).map(|d| base.hom(d, c)).collect();
        let pos: HashMap<u32, u32> =
            homs.iter().flat_map(|h| h.iter().enumerate().map(|(i, &m)| (m, i as u32))).collect();
        let sizes: Vec<usize> = homs.iter().map(Vec::len).collect();
        let b = base.clone();
        Self::discrete(base, &sizes, |m, v| {
            let f = homs[b.tgt(m) as usize][v as usize];
            pos[&b.compose(f, m).expect("composable")]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::sphere::standard_sphere;

    #[test]
    fn represented_functor_is_functorial() {
        let c = Arc::new(FinCat::poset(3, |i, j| i <= j).unwrap());
        let x = DiagramF::represented(c.clone(), 1).unwrap();
        assert_eq!(x.object(0).vertex_count(), 0);
        assert_eq!(x.object(2).vertex_count(), 1);
        let y = CoDiagramF::represented(c, 1).unwrap();
        assert_eq!(y.object(0).vertex_count(), 1);
        assert_eq!(y.object(2).vertex_count(), 0);
    }

    #[test]
    fn non_functor_is_rejected() {
        let c = Arc::new(FinCat::cyclic_group(2));
        // the generator acts by the identity, but the identity acts by a swap
        let r = DiagramF::discrete(c, &[2], |m, v| if m == 0 { 1 - v } else { v });
        assert!(matches!(r, Err(Error::NotAFunctor(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = Arc::new(FinCat::cyclic_group(2));
        let s = Arc::new(standard_sphere(1).space);
        let x = DiagramF::constant(c, s);
        let back = DiagramF::from_json(&x.to_json()).unwrap();
        assert_eq!(back.to_tables(), x.to_tables());
    }
}
