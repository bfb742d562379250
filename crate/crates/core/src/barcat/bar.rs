//! The two-sided bar construction `B(Y, C, X)` as the diagonal of its
//! bisimplicial set, enumerated lazily and truncated at a chosen degree.
//!
//! A `q`-simplex is `(y; ψ_q, …, ψ_1; x)` with a chain
//! `c_0 → c_1 → … → c_q`, `x` a `q`-simplex of `X(c_0)` and `y` a
//! `q`-simplex of `Y(c_q)`.  `d_0` pushes `x` forward along `ψ_1`, `d_q`
//! pulls `y` back along `ψ_q`, inner faces compose, and degeneracies insert
//! identities while degenerating `x` and `y`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::barcat::cat::{FinCat, FinFunctor};
use crate::barcat::diagram::{CoDiagramF, DiagramF};
use crate::error::{Error, Result};
use crate::linalg::chain::homology_iso;
use crate::linalg::{ChainMap, IsoVerdict};
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::materialize::{materialize, Materialized};
use crate::sset::pi0::pi0;
use crate::sset::traits::{induced_chain_map, normalized_chains, Extent, NormalizedChains, SimplicialSet};
use crate::util::UnionFind;

pub const DIAGONAL_MODEL: &str = "diagonal of the bisimplicial bar construction";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarSimplex {
    /// `c_0`, the object carrying `x`
    pub obj0: u32,
    /// `ψ_1, …, ψ_q` in application order
    pub mors: Vec<u32>,
    pub x: FinSimplex,
    /// absent when the right module is the point
    pub y: Option<FinSimplex>,
}

/// What a bar construction was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarProvenance {
    pub left: String,
    pub category: String,
    pub right: String,
    pub truncation: usize,
    pub model: String,
}

#[derive(Clone, Debug)]
pub struct BarComplex {
    cat: Arc<FinCat>,
    x: Arc<DiagramF>,
    y: Option<Arc<CoDiagramF>>,
    top: usize,
    pub provenance: BarProvenance,
}

/// `B(Y, C, X)` truncated at degree `d`.
pub fn bar(y: &CoDiagramF, c: &Arc<FinCat>, x: &DiagramF, d: usize) -> Result<BarComplex> {
    if y.base().as_ref() != c.as_ref() || x.base().as_ref() != c.as_ref() {
        return Err(Error::MismatchedBase);
    }
    BarComplex::build(c.clone(), Arc::new(x.clone()), Some(Arc::new(y.clone())), d)
}

/// `hocolim_C X = B(*, C, X)` truncated at degree `d`.
pub fn hocolim(c: &Arc<FinCat>, x: &DiagramF, d: usize) -> Result<BarComplex> {
    if x.base().as_ref() != c.as_ref() {
        return Err(Error::MismatchedBase);
    }
    BarComplex::build(c.clone(), Arc::new(x.clone()), None, d)
}

/// The nerve of `C` through degree `d`, as an explicit simplicial set.
pub fn nerve(c: &Arc<FinCat>, d: usize) -> Result<FinSSet> {
    let b = hocolim(c, &DiagramF::point(c.clone()), d)?;
    Ok(materialize(&b, d)?.set.as_ref().clone())
}

impl BarComplex {
    fn build(cat: Arc<FinCat>, x: Arc<DiagramF>, y: Option<Arc<CoDiagramF>>, top: usize) -> Result<BarComplex> {
        if top < 1 {
            return Err(Error::TruncationTooSmall("bar constructions need degree at least 1".into()));
        }
        let provenance = BarProvenance {
            left: if y.is_some() { "Y".into() } else { "*".into() },
            category: "C".into(),
            right: "X".into(),
            truncation: top,
            model: DIAGONAL_MODEL.into(),
        };
        Ok(BarComplex { cat, x, y, top, provenance })
    }

    /// Names recorded in the provenance block.
    pub fn named(mut self, left: &str, category: &str, right: &str) -> Self {
        self.provenance.left = left.into();
        self.provenance.category = category.into();
        self.provenance.right = right.into();
        self
    }

    pub fn category(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn diagram(&self) -> &Arc<DiagramF> {
        &self.x
    }

    pub fn truncation(&self) -> usize {
        self.top
    }

    /// Homology degrees certified by the truncation.
    pub fn valid_through(&self) -> usize {
        self.top.saturating_sub(2)
    }

    fn last_object(&self, s: &BarSimplex) -> u32 {
        s.mors.last().map_or(s.obj0, |&m| self.cat.tgt(m))
    }

    fn y_set(&self, o: u32) -> Option<&FinSSet> {
        self.y.as_ref().map(|y| y.object(o).as_ref())
    }

    /// Total number of `q`-simplices, counted directly from chains.
    pub fn simplex_count(&self, q: usize) -> usize {
        let mut total = 0;
        let mut stack: Vec<(u32, u32, usize)> = (0..self.cat.n_obj() as u32).map(|o| (o, o, 0)).collect();
        while let Some((start, end, len)) = stack.pop() {
            if len == q {
                let xs = self.x.object(start).simplex_count(q);
                let ys = self.y_set(end).map_or(1, |y| y.simplex_count(q));
                total += xs * ys;
                continue;
            }
            for &m in self.cat.out(end) {
                stack.push((start, self.cat.tgt(m), len + 1));
            }
        }
        total
    }

    /// Components of the bar construction computed from vertices and edges.
    pub fn components(&self) -> Result<usize> {
        Ok(pi0(self)?.count)
    }

    /// Explicit simplicial set through the truncation degree.
    pub fn materialize(&self) -> Result<Materialized<BarSimplex>> {
        materialize(self, self.top)
    }

    /// Tables of the explicit simplicial set plus the provenance block.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let m = self.materialize()?;
        let mut v = m.set.to_json();
        v["provenance"] = serde_json::to_value(&self.provenance).expect("provenance serializes");
        Ok(v)
    }
}

impl SimplicialSet for BarComplex {
    type Simplex = BarSimplex;

    fn dim_of(&self, s: &BarSimplex) -> usize {
        s.mors.len()
    }

    fn face(&self, i: usize, s: &BarSimplex) -> BarSimplex {
        let q = s.mors.len();
        let xs = self.x.object(s.obj0);
        if i == 0 {
            let m = s.mors[0];
            let x = self.x.map(m).apply(&xs.face(0, &s.x));
            let y = s.y.map(|y| self.y_set(self.last_object(s)).expect("right module").face(0, &y));
            return BarSimplex { obj0: self.cat.tgt(m), mors: s.mors[1..].to_vec(), x, y };
        }
        if i == q {
            let m = s.mors[q - 1];
            let y = s.y.map(|y| {
                let ys = self.y_set(self.last_object(s)).expect("right module");
                self.y.as_ref().expect("right module").map(m).apply(&ys.face(q, &y))
            });
            return BarSimplex { obj0: s.obj0, mors: s.mors[..q - 1].to_vec(), x: xs.face(q, &s.x), y };
        }
        let mut mors = Vec::with_capacity(q - 1);
        mors.extend_from_slice(&s.mors[..i - 1]);
        mors.push(self.cat.compose(s.mors[i], s.mors[i - 1]).expect("composable chain"));
        mors.extend_from_slice(&s.mors[i + 1..]);
        let y = s.y.map(|y| self.y_set(self.last_object(s)).expect("right module").face(i, &y));
        BarSimplex { obj0: s.obj0, mors, x: xs.face(i, &s.x), y }
    }

    fn degeneracy(&self, i: usize, s: &BarSimplex) -> BarSimplex {
        let c_i = if i == 0 { s.obj0 } else { self.cat.tgt(s.mors[i - 1]) };
        let mut mors = Vec::with_capacity(s.mors.len() + 1);
        mors.extend_from_slice(&s.mors[..i]);
        mors.push(self.cat.id(c_i));
        mors.extend_from_slice(&s.mors[i..]);
        BarSimplex {
            obj0: s.obj0,
            mors,
            x: FinSimplex { deg: s.x.deg.degeneracy(i), base: s.x.base },
            y: s.y.map(|y| FinSimplex { deg: y.deg.degeneracy(i), base: y.base }),
        }
    }

    fn degeneracy_mask(&self, s: &BarSimplex) -> u32 {
        let mut mask = s.x.deg.mask();
        if let Some(y) = &s.y {
            mask &= y.deg.mask();
        }
        for (i, &m) in s.mors.iter().enumerate() {
            if !self.cat.is_identity(m) {
                mask &= !(1 << i);
            }
        }
        mask
    }

    fn nondegenerate(&self, k: usize) -> Result<Vec<BarSimplex>> {
        if k > self.top {
            return Err(Error::InsufficientDimension { needed: k, available: self.top });
        }
        let mut xs: HashMap<u32, Vec<FinSimplex>> = HashMap::new();
        let mut ys: HashMap<u32, Vec<FinSimplex>> = HashMap::new();
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(k);
        for c0 in 0..self.cat.n_obj() as u32 {
            let x_list = xs.entry(c0).or_insert_with(|| self.x.object(c0).simplices(k).expect("explicit set")).clone();
            if x_list.is_empty() {
                continue;
            }
            self.chains(c0, k, 0, &mut chain, &mut |chain, id_mask| {
                let end = chain.last().map_or(c0, |&m| self.cat.tgt(m));
                let y_list: Vec<Option<FinSimplex>> = match &self.y {
                    None => vec![None],
                    Some(y) => ys
                        .entry(end)
                        .or_insert_with(|| y.object(end).simplices(k).expect("explicit set"))
                        .iter()
                        .map(|s| Some(*s))
                        .collect(),
                };
                for x in &x_list {
                    let xm = id_mask & x.deg.mask();
                    for y in &y_list {
                        let m = y.map_or(xm, |y| xm & y.deg.mask());
                        if m == 0 {
                            out.push(BarSimplex { obj0: c0, mors: chain.to_vec(), x: *x, y: *y });
                        }
                    }
                }
            });
        }
        Ok(out)
    }

    fn extent(&self) -> Extent {
        Extent::Skeletal(self.top)
    }
}

impl BarComplex {
    fn chains(&self, at: u32, k: usize, id_mask: u32, chain: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32], u32)) {
        if chain.len() == k {
            let full = if k == 0 { 0 } else { id_mask };
            visit(chain, full);
            return;
        }
        for &m in self.cat.out(at) {
            let bit = if self.cat.is_identity(m) { 1u32 << chain.len() } else { 0 };
            chain.push(m);
            self.chains(self.cat.tgt(m), k, id_mask | bit, chain, visit);
            chain.pop();
        }
    }
}

/// A simplexwise map `hocolim_C X → hocolim_{C'} X'` induced by a functor
/// `F: C → C'` and components `X(c) → X'(F c)`.
#[derive(Clone, Debug)]
pub struct HocolimMap {
    pub source: BarComplex,
    pub target: BarComplex,
    functor: FinFunctor,
    components: Vec<Arc<SMap>>,
}

impl HocolimMap {
    pub fn new(source: BarComplex, target: BarComplex, functor: FinFunctor, components: Vec<Arc<SMap>>) -> Result<Self> {
        if source.y.is_some() || target.y.is_some() {
            return Err(Error::MismatchedBase);
        }
        if functor.src.as_ref() != source.cat.as_ref() || functor.tgt.as_ref() != target.cat.as_ref() {
            return Err(Error::MismatchedBase);
        }
        if components.len() != source.cat.n_obj() {
            return Err(Error::NotAFunctor("one component per object is required".into()));
        }
        let c = &source.cat;
        for o in 0..c.n_obj() as u32 {
            let f = &components[o as usize];
            if f.source.as_ref() != source.x.object(o).as_ref()
                || f.target.as_ref() != target.x.object(functor.obj[o as usize]).as_ref()
            {
                return Err(Error::NotAFunctor(format!("component at object {o} has the wrong endpoints")));
            }
        }
        for m in 0..c.n_mor() as u32 {
            let a = components[c.src(m) as usize].then(target.x.map(functor.mor[m as usize]));
            let b = source.x.map(m).then(&components[c.tgt(m) as usize]);
            if !a.same_as(&b) {
                return Err(Error::NotAFunctor(format!("components are not natural at morphism {m}")));
            }
        }
        Ok(HocolimMap { source, target, functor, components })
    }

    pub fn apply(&self, s: &BarSimplex) -> BarSimplex {
        BarSimplex {
            obj0: self.functor.obj[s.obj0 as usize],
            mors: s.mors.iter().map(|&m| self.functor.mor[m as usize]).collect(),
            x: self.components[s.obj0 as usize].apply(&s.x),
            y: None,
        }
    }

    /// Normalized chains of both sides through `top` and the induced map.
    pub fn chain_map(
        &self,
        top: usize,
    ) -> Result<(NormalizedChains<BarSimplex>, NormalizedChains<BarSimplex>, ChainMap)> {
        let a = normalized_chains(&self.source, top)?;
        let b = normalized_chains(&self.target, top)?;
        let f = induced_chain_map::<BarComplex, BarComplex, _>(&a, &b, &self.target, top, |s| self.apply(s))?;
        Ok((a, b, f))
    }

    /// The map as an explicit simplicial map between materialized sets.
    pub fn to_smap(&self) -> Result<(Materialized<BarSimplex>, Materialized<BarSimplex>, SMap)> {
        let a = self.source.materialize()?;
        let b = self.target.materialize()?;
        let f = SMap::from_fn(a.set.clone(), b.set.clone(), |s| {
            let lazy = a.decode(&self.source, s);
            b.encode(&self.target, &self.apply(&lazy)).expect("image is materialized")
        })?;
        Ok((a, b, f))
    }

    /// π₀-bijection and homology isomorphism through `k_max`.
    pub fn equivalence(&self, k_max: usize) -> Result<EquivalenceVerdict> {
        let avail = self.source.valid_through().min(self.target.valid_through());
        if k_max > avail {
            return Ok(EquivalenceVerdict {
                pi0_bijection: None,
                homology: IsoVerdict::OutOfRange { requested: k_max, available: avail },
            });
        }
        let pa = pi0(&self.source)?;
        let pb = pi0(&self.target)?;
        // a simplicial map induces a well-defined map on components
        let mut image = vec![u32::MAX; pa.count];
        for (i, v) in pa.vertices.iter().enumerate() {
            image[pa.vertex_component[i] as usize] = pb.component_of(&self.target, &self.apply(v));
        }
        let mut distinct = image.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let bijection = distinct.len() == pa.count && pa.count == pb.count;
        let (a, b, f) = self.chain_map(k_max + 1)?;
        let homology = homology_iso(&f, &a.complex, &b.complex, k_max)?;
        Ok(EquivalenceVerdict { pi0_bijection: Some(bijection), homology })
    }
}

/// Outcome of comparing two homotopy colimits in a range of degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub pi0_bijection: Option<bool>,
    pub homology: IsoVerdict,
}

impl EquivalenceVerdict {
    pub fn passed(&self) -> bool {
        self.pi0_bijection == Some(true) && self.homology.passed()
    }

    pub fn out_of_range(&self) -> bool {
        matches!(self.homology, IsoVerdict::OutOfRange { .. })
    }
}

/// The canonical map `hocolim_C (X'∘F) → hocolim_{C'} X'`.
pub fn induced_hocolim_map(f: &FinFunctor, x: &DiagramF, d: usize) -> Result<HocolimMap> {
    f.validate()?;
    let pulled = x.pullback(f)?;
    let source = hocolim(&f.src, &pulled, d)?;
    let target = hocolim(&f.tgt, x, d)?;
    let components = (0..f.src.n_obj() as u32)
        .map(|o| Arc::new(SMap::identity(pulled.object(o).clone())))
        .collect();
    HocolimMap::new(source, target, f.clone(), components)
}

/// `colim_C π₀(X(c))` by union-find; the oracle for components of a hocolim.
pub fn colimit_of_components(x: &DiagramF) -> Result<usize> {
    let c = x.base();
    let comps: Vec<_> = x.objects().iter().map(|o| pi0(o.as_ref())).collect::<Result<_>>()?;
    let mut offset = Vec::with_capacity(c.n_obj());
    let mut total = 0u32;
    for p in &comps {
        offset.push(total);
        total += p.count as u32;
    }
    let mut uf = UnionFind::new(total as usize);
    for m in 0..c.n_mor() as u32 {
        let (a, b) = (c.src(m) as usize, c.tgt(m) as usize);
        let f = x.map(m);
        for (i, v) in comps[a].vertices.iter().enumerate() {
            let w = f.apply(v);
            let cb = comps[b].component_of(x.object(b as u32).as_ref(), &w);
            uf.union(offset[a] + comps[a].vertex_component[i], offset[b] + cb);
        }
    }
    Ok(uf.labels().1)
}

/// Homology of a bar construction in degrees `0..=k_max` (at most one below
/// the truncation degree).
pub fn bar_homology(b: &BarComplex, k_max: usize) -> Result<Vec<crate::linalg::AbGroup>> {
    crate::sset::homology::integral_homology(b, k_max)
}
