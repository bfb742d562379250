//! Finite categories given by explicit tables.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite category.  Morphisms out of each object are listed in
/// `out[obj]`; composition is stored per morphism `f` aligned with the
/// list of morphisms out of `tgt(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    n_obj: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    id: Vec<u32>,
    out: Vec<Vec<u32>>,
    into: Vec<Vec<u32>>,
    /// position of each morphism inside `out[src]`
    pos: Vec<u32>,
    /// `after[f][pos(g)] = g ∘ f`
    after: Vec<Vec<u32>>,
    pub labels: Option<Vec<String>>,
}

impl FinCat {
    /// Builds a category from objects, morphism endpoints, identities and a
    /// composition function `(g, f) ↦ g ∘ f` (called only on composable pairs).
    pub fn from_fn(
        n_obj: usize,
        ends: Vec<(u32, u32)>,
        id: Vec<u32>,
        compose: impl Fn(u32, u32) -> u32,
    ) -> Result<FinCat> {
        let cat = Self::from_fn_unchecked(n_obj, ends, id, compose)?;
        cat.validate()?;
        Ok(cat)
    }

    /// As [`FinCat::from_fn`] but only checks that the tables are well typed;
    /// category laws are not verified.
    pub fn from_fn_unchecked(
        n_obj: usize,
        ends: Vec<(u32, u32)>,
        id: Vec<u32>,
        compose: impl Fn(u32, u32) -> u32,
    ) -> Result<FinCat> {
        let n_mor = ends.len();
        let src: Vec<u32> = ends.iter().map(|e| e.0).collect();
        let tgt: Vec<u32> = ends.iter().map(|e| e.1).collect();
        if src.iter().chain(&tgt).any(|&o| o as usize >= n_obj) {
            return Err(Error::InvalidCategory("morphism endpoint out of range".into()));
        }
        if id.len() != n_obj || id.iter().any(|&m| m as usize >= n_mor) {
            return Err(Error::InvalidCategory("identity table is malformed".into()));
        }
        for (o, &m) in id.iter().enumerate() {
            if src[m as usize] as usize != o || tgt[m as usize] as usize != o {
                return Err(Error::InvalidCategory(format!("identity of object {o} has wrong endpoints")));
            }
        }
        let mut out = vec![Vec::new(); n_obj];
        let mut into = vec![Vec::new(); n_obj];
        let mut pos = vec![0u32; n_mor];
        for m in 0..n_mor as u32 {
            pos[m as usize] = out[src[m as usize] as usize].len() as u32;
            out[src[m as usize] as usize].push(m);
            into[tgt[m as usize] as usize].push(m);
        }
        let mut after = Vec::with_capacity(n_mor);
        for f in 0..n_mor {
            let t = tgt[f] as usize;
            let mut row = Vec::with_capacity(out[t].len());
            for &g in &out[t] {
                let h = compose(g, f as u32);
                if h as usize >= n_mor || src[h as usize] != src[f] || tgt[h as usize] != tgt[g as usize] {
                    return Err(Error::InvalidCategory(format!("composite of {g} after {f} has wrong endpoints")));
                }
                row.push(h);
            }
            after.push(row);
        }
        Ok(FinCat { n_obj, src, tgt, id, out, into, pos, after, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n_obj);
        self.labels = Some(labels);
        self
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> FinCat {
        Self::from_fn(1, vec![(0, 0)], vec![0], |_, _| 0).expect("terminal category")
    }

    /// A finite group (given by its multiplication table) as a one-object
    /// category; element `e` is the identity.
    pub fn group(mul: &[Vec<u32>], e: u32) -> Result<FinCat> {
        let n = mul.len();
        Self::from_fn(1, vec![(0, 0); n], vec![e], |g, f| mul[g as usize][f as usize])
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> FinCat {
        let mul: Vec<Vec<u32>> = (0..n).map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect()).collect();
        Self::group(&mul, 0).expect("cyclic group")
    }

    /// A finite poset `0..n` with `i ≤ j` iff `le(i, j)` (assumed reflexive
    /// and transitive).
    pub fn poset(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<FinCat> {
        let mut ends = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    index.insert((i, j), ends.len() as u32);
                    ends.push((i as u32, j as u32));
                }
            }
        }
        let id = (0..n).map(|i| index[&(i, i)]).collect();
        let e2 = ends.clone();
        Self::from_fn(n, ends, id, |g, f| index[&(e2[f as usize].0 as usize, e2[g as usize].1 as usize)])
    }

    /// Product category; objects and morphisms are numbered in mixed radix
    /// with the first factor most significant.
    pub fn product(factors: &[&FinCat]) -> Result<FinCat> {
        let n_obj: usize = factors.iter().map(|c| c.n_obj).product();
        let n_mor: usize = factors.iter().map(|c| c.n_mor()).product();
        let split = |mut m: usize, sizes: &dyn Fn(&FinCat) -> usize| -> Vec<usize> {
            let mut parts = vec![0; factors.len()];
            for (i, c) in factors.iter().enumerate().rev() {
                let s = sizes(c);
                parts[i] = m % s;
                m /= s;
            }
            parts
        };
        let join = |parts: &[usize], sizes: &dyn Fn(&FinCat) -> usize| -> u32 {
            let mut m = 0;
            for (i, c) in factors.iter().enumerate() {
                m = m * sizes(c) + parts[i];
            }
            m as u32
        };
        let nm = |c: &FinCat| c.n_mor();
        let no = |c: &FinCat| c.n_obj;
        let ends: Vec<(u32, u32)> = (0..n_mor)
            .map(|m| {
                let p = split(m, &nm);
                let s: Vec<usize> = p.iter().zip(factors).map(|(&x, c)| c.src(x as u32) as usize).collect();
                let t: Vec<usize> = p.iter().zip(factors).map(|(&x, c)| c.tgt(x as u32) as usize).collect();
                (join(&s, &no), join(&t, &no))
            })
            .collect();
        let id: Vec<u32> = (0..n_obj)
            .map(|o| {
                let p = split(o, &no);
                let ids: Vec<usize> = p.iter().zip(factors).map(|(&x, c)| c.id(x as u32) as usize).collect();
                join(&ids, &nm)
            })
            .collect();
        Self::from_fn_unchecked(n_obj, ends, id, |g, f| {
            let pg = split(g as usize, &nm);
            let pf = split(f as usize, &nm);
            let h: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(i, c)| c.compose(pg[i] as u32, pf[i] as u32).expect("composable") as usize)
                .collect();
            join(&h, &nm)
        })
    }

    pub fn n_obj(&self) -> usize {
        self.n_obj
    }

    pub fn n_mor(&self) -> usize {
        self.src.len()
    }

    #[inline]
    pub fn src(&self, m: u32) -> u32 {
        self.src[m as usize]
    }

    #[inline]
    pub fn tgt(&self, m: u32) -> u32 {
        self.tgt[m as usize]
    }

    #[inline]
    pub fn id(&self, o: u32) -> u32 {
        self.id[o as usize]
    }

    #[inline]
    pub fn is_identity(&self, m: u32) -> bool {
        self.id[self.src[m as usize] as usize] == m
    }

    pub fn out(&self, o: u32) -> &[u32] {
        &self.out[o as usize]
    }

    pub fn into(&self, o: u32) -> &[u32] {
        &self.into[o as usize]
    }

    pub fn hom(&self, a: u32, b: u32) -> Vec<u32> {
        self.out[a as usize].iter().copied().filter(|&m| self.tgt(m) == b).collect()
    }

    /// `g ∘ f`, if composable.
    #[inline]
    pub fn compose(&self, g: u32, f: u32) -> Option<u32> {
        if self.tgt(f) != self.src(g) {
            return None;
        }
        Some(self.after[f as usize][self.pos[g as usize] as usize])
    }

    /// Composite of a chain given in application order (`ms[0]` first).
    pub fn compose_chain(&self, ms: &[u32]) -> Option<u32> {
        let mut it = ms.iter();
        let mut acc = *it.next()?;
        for &m in it {
            acc = self.compose(m, acc)?;
        }
        Some(acc)
    }

    /// Overwrites one composite; used to build deliberately broken
    /// categories for negative controls.
    pub fn with_composition_override(mut self, g: u32, f: u32, h: u32) -> FinCat {
        let p = self.pos[g as usize] as usize;
        self.after[f as usize][p] = h;
        self
    }

    /// Verifies identity and associativity laws on all composable data.
    pub fn validate(&self) -> Result<()> {
        for m in 0..self.n_mor() as u32 {
            let (s, t) = (self.src(m), self.tgt(m));
            if self.compose(m, self.id(s)) != Some(m) || self.compose(self.id(t), m) != Some(m) {
                return Err(Error::InvalidCategory(format!("identity law fails for morphism {m}")));
            }
        }
        for f in 0..self.n_mor() as u32 {
            for &g in self.out(self.tgt(f)) {
                let gf = self.compose(g, f).expect("composable");
                for &h in self.out(self.tgt(g)) {
                    let lhs = self.compose(h, gf);
                    let rhs = self.compose(self.compose(h, g).expect("composable"), f);
                    if lhs != rhs {
                        return Err(Error::InvalidCategory(format!("associativity fails on ({h}, {g}, {f})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Objects `o` such that every object receives exactly one morphism from `o`.
    pub fn initial_objects(&self) -> Vec<u32> {
        (0..self.n_obj as u32)
            .filter(|&o| {
                let mut counts = vec![0usize; self.n_obj];
                for &m in self.out(o) {
                    counts[self.tgt(m) as usize] += 1;
                }
                counts.iter().all(|&c| c == 1)
            })
            .collect()
    }

    pub fn terminal_objects(&self) -> Vec<u32> {
        (0..self.n_obj as u32)
            .filter(|&o| {
                let mut counts = vec![0usize; self.n_obj];
                for &m in self.into(o) {
                    counts[self.src(m) as usize] += 1;
                }
                counts.iter().all(|&c| c == 1)
            })
            .collect()
    }

    pub fn to_tables(&self) -> FinCatTables {
        let mut compose = Vec::new();
        for f in 0..self.n_mor() as u32 {
            for &g in self.out(self.tgt(f)) {
                compose.push([g, f, self.compose(g, f).expect("composable")]);
            }
        }
        FinCatTables {
            objects: self.n_obj,
            morphisms: (0..self.n_mor()).map(|m| [self.src[m], self.tgt[m]]).collect(),
            identities: self.id.clone(),
            compose,
            labels: self.labels.clone(),
        }
    }

    pub fn from_tables(t: &FinCatTables) -> Result<FinCat> {
        let table: HashMap<(u32, u32), u32> = t.compose.iter().map(|c| ((c[0], c[1]), c[2])).collect();
        let ends = t.morphisms.iter().map(|m| (m[0], m[1])).collect();
        let missing = std::cell::Cell::new(None);
        let cat = Self::from_fn_unchecked(t.objects, ends, t.identities.clone(), |g, f| match table.get(&(g, f)) {
            Some(&h) => h,
            None => {
                missing.set(Some((g, f)));
                f
            }
        });
        if let Some((g, f)) = missing.get() {
            return Err(Error::InvalidCategory(format!("composite of {g} after {f} is missing")));
        }
        let mut cat = cat?;
        cat.labels = t.labels.clone();
        cat.validate()?;
        Ok(cat)
    }
}

/// JSON form of a finite category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatTables {
    pub objects: usize,
    /// `[src, tgt]` per morphism
    pub morphisms: Vec<[u32; 2]>,
    pub identities: Vec<u32>,
    /// `[g, f, g∘f]` for every composable pair
    pub compose: Vec<[u32; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    pub src: Arc<FinCat>,
    pub tgt: Arc<FinCat>,
    pub obj: Vec<u32>,
    pub mor: Vec<u32>,
}

impl FinFunctor {
    pub fn new(src: Arc<FinCat>, tgt: Arc<FinCat>, obj: Vec<u32>, mor: Vec<u32>) -> Result<FinFunctor> {
        let f = FinFunctor { src, tgt, obj, mor };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: Arc<FinCat>) -> FinFunctor {
        let obj = (0..c.n_obj() as u32).collect();
        let mor = (0..c.n_mor() as u32).collect();
        FinFunctor { src: c.clone(), tgt: c, obj, mor }
    }

    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&self.src, &self.tgt);
        if self.obj.len() != c.n_obj() || self.mor.len() != c.n_mor() {
            return Err(Error::NotAFunctor("tables have the wrong length".into()));
        }
        for m in 0..c.n_mor() as u32 {
            let fm = self.mor[m as usize];
            if fm as usize >= d.n_mor()
                || d.src(fm) != self.obj[c.src(m) as usize]
                || d.tgt(fm) != self.obj[c.tgt(m) as usize]
            {
                return Err(Error::NotAFunctor(format!("morphism {m} is sent to a morphism with wrong endpoints")));
            }
        }
        for o in 0..c.n_obj() as u32 {
            if self.mor[c.id(o) as usize] != d.id(self.obj[o as usize]) {
                return Err(Error::NotAFunctor(format!("identity of object {o} is not preserved")));
            }
        }
        for f in 0..c.n_mor() as u32 {
            for &g in c.out(c.tgt(f)) {
                let gf = c.compose(g, f).expect("composable");
                let lhs = self.mor[gf as usize];
                let rhs = d.compose(self.mor[g as usize], self.mor[f as usize]);
                if Some(lhs) != rhs {
                    return Err(Error::NotAFunctor(format!("composition ({g}, {f}) is not preserved")));
                }
            }
        }
        Ok(())
    }
}

/// The comma category `(d ↓ F)`: objects are pairs `(c, f: d → F c)`,
/// morphisms `(c, f) → (c', f')` are `g: c → c'` with `F(g) ∘ f = f'`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub cat: FinCat,
    /// `(c, f)` per object
    pub objects: Vec<(u32, u32)>,
    pub initial: Option<u32>,
}

pub fn comma_category(d: u32, functor: &FinFunctor) -> Result<CommaCategory> {
    let (c, cp) = (&functor.src, &functor.tgt);
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for o in 0..c.n_obj() as u32 {
        for f in cp.hom(d, functor.obj[o as usize]) {
            obj_index.insert((o, f), objects.len() as u32);
            objects.push((o, f));
        }
    }
    let mut ends = Vec::new();
    let mut mor_data = Vec::new();
    let mut mor_index = HashMap::new();
    for (i, &(o, f)) in objects.iter().enumerate() {
        for &g in c.out(o) {
            let fp = cp.compose(functor.mor[g as usize], f).expect("composable");
            let j = obj_index[&(c.tgt(g), fp)];
            mor_index.insert((i as u32, g), ends.len() as u32);
            ends.push((i as u32, j));
            mor_data.push(g);
        }
    }
    let id: Vec<u32> = (0..objects.len() as u32).map(|i| mor_index[&(i, c.id(objects[i as usize].0))]).collect();
    let md = mor_data.clone();
    let en = ends.clone();
    let cat = FinCat::from_fn(objects.len(), ends, id, |g, f| {
        let h = c.compose(md[g as usize], md[f as usize]).expect("composable");
        mor_index[&(en[f as usize].0, h)]
    })?;
    let initial = cat.initial_objects().first().copied();
    Ok(CommaCategory { cat, objects, initial })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_category_laws() {
        let c = FinCat::cyclic_group(3);
        assert_eq!(c.n_mor(), 3);
        assert_eq!(c.compose(1, 2), Some(0));
        assert!(c.initial_objects().is_empty());
    }

    #[test]
    fn poset_with_bottom_has_initial_object() {
        let p = FinCat::poset(3, |i, j| i == j || i == 0).unwrap();
        assert_eq!(p.initial_objects(), vec![0]);
        assert!(p.terminal_objects().is_empty());
    }

    #[test]
    fn broken_composition_is_rejected() {
        let c = FinCat::cyclic_group(3).with_composition_override(1, 1, 0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn tables_round_trip() {
        let c = FinCat::poset(3, |i, j| i <= j).unwrap();
        let back = FinCat::from_tables(&c.to_tables()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn comma_of_identity_has_identity_initial() {
        let c = Arc::new(FinCat::poset(3, |i, j| i <= j).unwrap());
        let f = FinFunctor::identity(c.clone());
        for d in 0..3 {
            let cc = comma_category(d, &f).unwrap();
            let init = cc.initial.unwrap();
            assert_eq!(cc.objects[init as usize], (d, c.id(d)));
        }
    }

    #[test]
    fn product_category() {
        let a = FinCat::cyclic_group(2);
        let b = FinCat::poset(2, |i, j| i <= j).unwrap();
        let p = FinCat::product(&[&a, &b]).unwrap();
        p.validate().unwrap();
        assert_eq!(p.n_obj(), 2);
        assert_eq!(p.n_mor(), 6);
    }
}
