//! Explicit finite simplicial sets.
//!
//! Only nondegenerate simplices are stored; each carries its faces in
//! Eilenberg–Zilber normal form.  Degenerate simplices are implicit, which
//! keeps the tables small while still answering every face and degeneracy
//! query exactly.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::deg::{Deg, DegFace};
use crate::sset::traits::{check_identities, Extent, SimplicialSet};

/// A simplex `deg^* base`, where `base` indexes a nondegenerate simplex of
/// dimension `deg.target_dim()`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FinSimplex {
    pub deg: Deg,
    pub base: u32,
}

impl FinSimplex {
    pub fn nondeg(dim: usize, base: u32) -> Self {
        FinSimplex { deg: Deg::identity(dim), base }
    }

    pub fn vertex(v: u32) -> Self {
        Self::nondeg(0, v)
    }

    pub fn dim(&self) -> usize {
        self.deg.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.deg.target_dim()
    }

    /// The totally degenerate `k`-simplex on a vertex.
    pub fn degenerate_vertex(v: u32, k: usize) -> Self {
        FinSimplex { deg: Deg::from_mask(k, (1u32 << k) - 1), base: v }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.deg.is_identity()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinSSet {
    counts: Vec<usize>,
    /// `faces[k][s * (k + 1) + i]` is `d_i` of nondegenerate simplex `s`.
    faces: Vec<Vec<FinSimplex>>,
    complete: bool,
}

impl FinSSet {
    pub fn empty() -> Self {
        FinSSet { counts: vec![0], faces: vec![Vec::new()], complete: true }
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        FinSSet { counts: vec![n], faces: vec![Vec::new()], complete: true }
    }

    pub fn builder() -> FinSSetBuilder {
        FinSSetBuilder { set: FinSSet { counts: vec![0], faces: vec![Vec::new()], complete: true } }
    }

    pub fn dim_top(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn nondeg_count(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn vertex_count(&self) -> usize {
        self.counts[0]
    }

    /// `d_i` of the nondegenerate `k`-simplex `s`.
    #[inline]
    pub fn base_face(&self, k: usize, s: u32, i: usize) -> FinSimplex {
        self.faces[k][s as usize * (k + 1) + i]
    }

    /// Keeps only the skeleton through `top`, marking the result skeletal
    /// if simplices were dropped.
    pub fn skeleton(&self, top: usize) -> FinSSet {
        if top >= self.dim_top() {
            return self.clone();
        }
        FinSSet { counts: self.counts[..=top].to_vec(), faces: self.faces[..=top].to_vec(), complete: false }
    }

    /// Extends the tables with empty dimensions up to `top`.
    pub fn extend_to(&mut self, top: usize) {
        while self.counts.len() <= top {
            self.counts.push(0);
            self.faces.push(Vec::new());
        }
    }

    /// Marks the set as known only through its top dimension.
    pub fn into_skeletal(mut self) -> FinSSet {
        self.complete = false;
        self
    }

    /// Vertices of a simplex, in order.
    pub fn vertices(&self, s: &FinSimplex) -> Vec<u32> {
        let mut out = Vec::with_capacity(s.dim() + 1);
        let base_vertices = self.base_vertices(s.base_dim(), s.base);
        for t in 0..=s.dim() {
            out.push(base_vertices[s.deg.value(t)]);
        }
        out
    }

    fn base_vertices(&self, k: usize, s: u32) -> Vec<u32> {
        if k == 0 {
            return vec![s];
        }
        let mut out = Vec::with_capacity(k + 1);
        // vertex t: drop the indices above t with d_top, then those below with d_0
        for t in 0..=k {
            let mut x = FinSimplex::nondeg(k, s);
            while x.dim() > t {
                x = self.face(x.dim(), &x);
            }
            while x.dim() > 0 {
                x = self.face(0, &x);
            }
            out.push(x.base);
        }
        out
    }

    /// The full sub-simplicial set on the kept vertices, with the new index
    /// of every nondegenerate simplex (`u32::MAX` when dropped).
    pub fn full_subcomplex(&self, keep: &[bool]) -> (FinSSet, Vec<Vec<u32>>) {
        let mut counts = Vec::with_capacity(self.counts.len());
        let mut faces = Vec::with_capacity(self.counts.len());
        let mut index: Vec<Vec<u32>> = Vec::with_capacity(self.counts.len());
        for k in 0..self.counts.len() {
            let mut idx = vec![u32::MAX; self.counts[k]];
            let mut f = Vec::new();
            let mut n = 0u32;
            for s in 0..self.counts[k] as u32 {
                let x = FinSimplex::nondeg(k, s);
                if !self.vertices(&x).iter().all(|&v| keep[v as usize]) {
                    continue;
                }
                idx[s as usize] = n;
                n += 1;
                if k > 0 {
                    for i in 0..=k {
                        let d = self.base_face(k, s, i);
                        f.push(FinSimplex { deg: d.deg, base: index[d.base_dim()][d.base as usize] });
                    }
                }
            }
            counts.push(n as usize);
            faces.push(f);
            index.push(idx);
        }
        (FinSSet { counts, faces, complete: self.complete }, index)
    }

    /// Disjoint union; simplices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &FinSSet) -> FinSSet {
        let top = self.dim_top().max(other.dim_top());
        let mut counts = Vec::with_capacity(top + 1);
        let mut faces = Vec::with_capacity(top + 1);
        for k in 0..=top {
            counts.push(self.nondeg_count(k) + other.nondeg_count(k));
            let mut f: Vec<FinSimplex> = self.faces.get(k).cloned().unwrap_or_default();
            if k >= 1 {
                for x in other.faces.get(k).into_iter().flatten() {
                    let shift = self.nondeg_count(x.base_dim()) as u32;
                    f.push(FinSimplex { deg: x.deg, base: x.base + shift });
                }
            }
            faces.push(f);
        }
        FinSSet { counts, faces, complete: self.complete && other.complete }
    }

    /// Checks the stored tables: indices in range and all simplicial identities
    /// on every simplex through `dim_top + 1`.
    pub fn validate(&self) -> Result<()> {
        for k in 1..=self.dim_top() {
            if self.faces[k].len() != self.counts[k] * (k + 1) {
                return Err(Error::InvalidSSet(format!("face table of dimension {k} has wrong length")));
            }
            for (n, f) in self.faces[k].iter().enumerate() {
                if f.dim() != k - 1 || f.base as usize >= self.nondeg_count(f.base_dim()) {
                    return Err(Error::InvalidSSet(format!("face {} of simplex {} in dimension {k} is out of range", n % (k + 1), n / (k + 1))));
                }
            }
        }
        let top = if self.complete { self.dim_top() + 1 } else { self.dim_top() };
        check_identities(self, top)?;
        Ok(())
    }

    /// Total number of `k`-simplices, degenerate ones included.
    pub fn simplex_count(&self, k: usize) -> usize {
        (0..=k.min(self.dim_top())).map(|j| binomial(k, k - j) * self.nondeg_count(j)).sum()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl SimplicialSet for FinSSet {
    type Simplex = FinSimplex;

    fn dim_of(&self, s: &FinSimplex) -> usize {
        s.dim()
    }

    fn face(&self, i: usize, s: &FinSimplex) -> FinSimplex {
        match s.deg.face(i) {
            DegFace::Surj(d) => FinSimplex { deg: d, base: s.base },
            DegFace::Hits(m, d) => {
                let f = self.base_face(s.base_dim(), s.base, m);
                FinSimplex { deg: d.then(f.deg), base: f.base }
            }
        }
    }

    fn degeneracy(&self, i: usize, s: &FinSimplex) -> FinSimplex {
        FinSimplex { deg: s.deg.degeneracy(i), base: s.base }
    }

    fn degeneracy_mask(&self, s: &FinSimplex) -> u32 {
        s.deg.mask()
    }

    fn nondegenerate(&self, k: usize) -> Result<Vec<FinSimplex>> {
        if !self.complete && k > self.dim_top() {
            return Err(Error::InsufficientDimension { needed: k, available: self.dim_top() });
        }
        Ok((0..self.nondeg_count(k) as u32).map(|s| FinSimplex::nondeg(k, s)).collect())
    }

    fn extent(&self) -> Extent {
        if self.complete {
            Extent::Complete(self.dim_top())
        } else {
            Extent::Skeletal(self.dim_top())
        }
    }

    fn apply_deg(&self, eta: crate::sset::deg::Deg, s: &FinSimplex) -> FinSimplex {
        FinSimplex { deg: eta.then(s.deg), base: s.base }
    }

    fn decompose(&self, s: &FinSimplex) -> (Deg, FinSimplex) {
        (s.deg, FinSimplex::nondeg(s.base_dim(), s.base))
    }
}

/// Incremental construction of a [`FinSSet`], one nondegenerate simplex at a
/// time.
pub struct FinSSetBuilder {
    set: FinSSet,
}

impl FinSSetBuilder {
    pub fn vertices(mut self, n: usize) -> Self {
        self.set.counts[0] += n;
        self
    }

    pub fn add_vertex(&mut self) -> u32 {
        self.set.counts[0] += 1;
        (self.set.counts[0] - 1) as u32
    }

    /// Adds a nondegenerate simplex with the given faces and returns its index.
    pub fn add(&mut self, faces: &[FinSimplex]) -> u32 {
        let k = faces.len() - 1;
        assert!(k >= 1, "use add_vertex for vertices");
        while self.set.counts.len() <= k {
            self.set.counts.push(0);
            self.set.faces.push(Vec::new());
        }
        self.set.faces[k].extend_from_slice(faces);
        self.set.counts[k] += 1;
        (self.set.counts[k] - 1) as u32
    }

    /// Adds a nondegenerate simplex whose faces are all nondegenerate,
    /// given by index.
    pub fn add_nd(&mut self, faces: &[u32]) -> u32 {
        let k = faces.len() - 1;
        let f: Vec<FinSimplex> = faces.iter().map(|&b| FinSimplex::nondeg(k - 1, b)).collect();
        self.add(&f)
    }

    pub fn skeletal(mut self) -> Self {
        self.set.complete = false;
        self
    }

    pub fn build(self) -> Result<FinSSet> {
        self.set.validate()?;
        Ok(self.set)
    }

    pub fn build_unchecked(self) -> FinSSet {
        self.set
    }
}

/// Builds the simplicial set generated by an ordered simplicial complex:
/// each listed face is a strictly increasing vertex list and all subfaces
/// are added automatically.
pub fn from_ordered_complex(n_vertices: usize, facets: &[Vec<u32>]) -> Result<FinSSet> {
    let mut by_dim: Vec<std::collections::BTreeSet<Vec<u32>>> = vec![Default::default()];
    for f in facets {
        if f.windows(2).any(|w| w[0] >= w[1]) || f.iter().any(|&v| v as usize >= n_vertices) {
            return Err(Error::InvalidSSet(format!("facet {f:?} is not an increasing vertex list")));
        }
        let k = f.len() - 1;
        for sub in 1u32..(1u32 << f.len()) {
            let s: Vec<u32> = (0..f.len()).filter(|i| (sub >> i) & 1 == 1).map(|i| f[i]).collect();
            let d = s.len() - 1;
            while by_dim.len() <= k.max(d) {
                by_dim.push(Default::default());
            }
            by_dim[d].insert(s);
        }
    }
    let mut b = FinSSet::builder().vertices(n_vertices);
    let mut index: Vec<HashMap<Vec<u32>, u32>> = vec![HashMap::new()];
    for v in 0..n_vertices as u32 {
        index[0].insert(vec![v], v);
    }
    for (d, simplices) in by_dim.iter().enumerate().skip(1) {
        index.push(HashMap::new());
        for s in simplices {
            let faces: Vec<u32> = (0..=d)
                .map(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    index[d - 1][&t]
                })
                .collect();
            let id = b.add_nd(&faces);
            index[d].insert(s.clone(), id);
        }
    }
    b.build()
}

/// A simplicial set with a chosen base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedFinSSet {
    pub space: FinSSet,
    pub basepoint: u32,
}

impl PointedFinSSet {
    pub fn new(space: FinSSet, basepoint: u32) -> Result<Self> {
        if basepoint as usize >= space.vertex_count() {
            return Err(Error::InvalidSSet(format!("basepoint {basepoint} is not a vertex")));
        }
        Ok(PointedFinSSet { space, basepoint })
    }

    /// The basepoint degenerated to dimension `k`.
    pub fn base_simplex(&self, k: usize) -> FinSimplex {
        FinSimplex::degenerate_vertex(self.basepoint, k)
    }

    /// `X₊`: adds a disjoint basepoint (the last vertex).
    pub fn plus(x: &FinSSet) -> PointedFinSSet {
        let u = x.disjoint_union(&FinSSet::point());
        let bp = (u.vertex_count() - 1) as u32;
        PointedFinSSet { space: u, basepoint: bp }
    }

    pub fn point() -> PointedFinSSet {
        PointedFinSSet { space: FinSSet::point(), basepoint: 0 }
    }
}

/// A simplicial map between explicit simplicial sets, given on
/// nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMap {
    pub source: Arc<FinSSet>,
    pub target: Arc<FinSSet>,
    images: Vec<Vec<FinSimplex>>,
}

impl SMap {
    pub fn new(source: Arc<FinSSet>, target: Arc<FinSSet>, images: Vec<Vec<FinSimplex>>) -> Result<SMap> {
        let m = SMap { source, target, images };
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(source: Arc<FinSSet>, target: Arc<FinSSet>, images: Vec<Vec<FinSimplex>>) -> SMap {
        SMap { source, target, images }
    }

    pub fn identity(x: Arc<FinSSet>) -> SMap {
        let images = (0..=x.dim_top()).map(|k| (0..x.nondeg_count(k) as u32).map(|s| FinSimplex::nondeg(k, s)).collect()).collect();
        SMap { source: x.clone(), target: x, images }
    }

    /// Builds a map from a simplexwise function on nondegenerate simplices.
    pub fn from_fn(source: Arc<FinSSet>, target: Arc<FinSSet>, f: impl Fn(&FinSimplex) -> FinSimplex) -> Result<SMap> {
        let images = (0..=source.dim_top())
            .map(|k| (0..source.nondeg_count(k) as u32).map(|s| f(&FinSimplex::nondeg(k, s))).collect())
            .collect();
        SMap::new(source, target, images)
    }

    /// The constant map onto a vertex.
    pub fn constant(source: Arc<FinSSet>, target: Arc<FinSSet>, v: u32) -> SMap {
        let images = (0..=source.dim_top())
            .map(|k| vec![FinSimplex::degenerate_vertex(v, k); source.nondeg_count(k)])
            .collect();
        SMap { source, target, images }
    }

    /// Images of the nondegenerate simplices as `[mask, base]` pairs, per
    /// dimension (a compact serialization).
    pub fn image_table(&self) -> Vec<Vec<[u32; 2]>> {
        self.images.iter().map(|row| row.iter().map(|y| [y.deg.mask(), y.base]).collect()).collect()
    }

    pub fn image_of_nondeg(&self, k: usize, s: u32) -> FinSimplex {
        self.images[k][s as usize]
    }

    pub fn apply(&self, x: &FinSimplex) -> FinSimplex {
        let y = self.images[x.base_dim()][x.base as usize];
        FinSimplex { deg: x.deg.then(y.deg), base: y.base }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SMap) -> SMap {
        let images = self.images.iter().map(|row| row.iter().map(|y| other.apply(y)).collect()).collect();
        SMap { source: self.source.clone(), target: other.target.clone(), images }
    }

    pub fn validate(&self) -> Result<()> {
        let src = &self.source;
        for k in 0..=src.dim_top() {
            if self.images.get(k).map_or(0, Vec::len) != src.nondeg_count(k) {
                return Err(Error::InvalidSSet(format!("map table of dimension {k} has wrong length")));
            }
            for s in 0..src.nondeg_count(k) as u32 {
                let y = self.images[k][s as usize];
                if y.dim() != k || y.base as usize >= self.target.nondeg_count(y.base_dim()) {
                    return Err(Error::InvalidSSet(format!("image of simplex {s} in dimension {k} is out of range")));
                }
                if k >= 1 {
                    for i in 0..=k {
                        let lhs = self.apply(&src.base_face(k, s, i));
                        let rhs = self.target.face(i, &y);
                        if lhs != rhs {
                            return Err(Error::InvalidSSet(format!(
                                "map does not commute with d_{i} on simplex {s} of dimension {k}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// All simplicial maps `source → target`, by backtracking over the
    /// nondegenerate simplices in increasing dimension.  Fails with
    /// `BudgetExceeded` once more than `budget` maps have been found.
    pub fn enumerate(source: &Arc<FinSSet>, target: &Arc<FinSSet>, budget: usize) -> Result<Vec<SMap>> {
        if !target.is_complete() && target.dim_top() < source.dim_top() {
            return Err(Error::InsufficientDimension { needed: source.dim_top(), available: target.dim_top() });
        }
        let cells: Vec<(usize, u32)> =
            (0..=source.dim_top()).flat_map(|k| (0..source.nondeg_count(k) as u32).map(move |s| (k, s))).collect();
        let candidates: Vec<Vec<FinSimplex>> = (0..=source.dim_top()).map(|k| target.simplices(k)).collect::<Result<_>>()?;
        let mut images: Vec<Vec<FinSimplex>> =
            (0..=source.dim_top()).map(|k| vec![FinSimplex::vertex(0); source.nondeg_count(k)]).collect();
        let mut out = Vec::new();
        fn go(
            pos: usize,
            cells: &[(usize, u32)],
            cand: &[Vec<FinSimplex>],
            images: &mut Vec<Vec<FinSimplex>>,
            src: &Arc<FinSSet>,
            tgt: &Arc<FinSSet>,
            out: &mut Vec<SMap>,
            budget: usize,
        ) -> Result<()> {
            if pos == cells.len() {
                if out.len() >= budget {
                    return Err(Error::BudgetExceeded(format!("more than {budget} maps")));
                }
                out.push(SMap { source: src.clone(), target: tgt.clone(), images: images.clone() });
                return Ok(());
            }
            let (k, s) = cells[pos];
            let faces: Vec<FinSimplex> = (0..=k)
                .filter(|_| k >= 1)
                .map(|i| {
                    let f = src.base_face(k, s, i);
                    let y = images[f.base_dim()][f.base as usize];
                    FinSimplex { deg: f.deg.then(y.deg), base: y.base }
                })
                .collect();
            for y in &cand[k] {
                if k >= 1 && !(0..=k).all(|i| tgt.face(i, y) == faces[i]) {
                    continue;
                }
                images[k][s as usize] = *y;
                go(pos + 1, cells, cand, images, src, tgt, out, budget)?;
            }
            Ok(())
        }
        go(0, &cells, &candidates, &mut images, source, target, &mut out, budget)?;
        Ok(out)
    }

    /// Equality as maps: same images on all nondegenerate simplices.
    pub fn same_as(&self, other: &SMap) -> bool {
        self.images == other.images
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle() -> FinSSet {
        let mut b = FinSSet::builder().vertices(1);
        b.add_nd(&[0, 0]);
        b.build().unwrap()
    }

    #[test]
    fn circle_faces_and_degeneracies() {
        let c = circle();
        let e = FinSimplex::nondeg(1, 0);
        assert_eq!(c.face(0, &e), FinSimplex::vertex(0));
        let s = c.degeneracy(0, &e);
        assert_eq!(c.face(0, &s), e);
        assert_eq!(c.face(2, &s), c.degeneracy(0, &c.face(1, &e)));
        assert_eq!(c.simplex_count(3), 1 + 3);
        assert_eq!(c.simplices(3).unwrap().len(), 4);
    }

    #[test]
    fn ordered_complex_vertices() {
        let tri = from_ordered_complex(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(tri.counts(), &[3, 3, 1]);
        let t = FinSimplex::nondeg(2, 0);
        assert_eq!(tri.vertices(&t), vec![0, 1, 2]);
        let s = tri.degeneracy(1, &t);
        assert_eq!(tri.vertices(&s), vec![0, 1, 1, 2]);
    }

    #[test]
    fn broken_face_table_is_rejected() {
        // an edge whose faces claim a triangle boundary that does not close up
        let mut b = FinSSet::builder().vertices(3);
        let e01 = b.add_nd(&[1, 0]);
        let e12 = b.add_nd(&[2, 1]);
        let _e02 = b.add_nd(&[2, 0]);
        b.add_nd(&[e12, e01, e01]);
        assert!(b.build().is_err());
    }

    #[test]
    fn enumerated_maps_from_a_circle() {
        let c = Arc::new(circle());
        // maps S¹ → S¹ (one vertex, one edge): the edge goes to the edge or
        // to the degenerate vertex
        assert_eq!(SMap::enumerate(&c, &c, 10).unwrap().len(), 2);
        let two = Arc::new(FinSSet::discrete(2));
        assert_eq!(SMap::enumerate(&two, &c, 10).unwrap().len(), 1);
        assert_eq!(SMap::enumerate(&c, &two, 10).unwrap().len(), 2);
        assert!(matches!(SMap::enumerate(&c, &c, 1), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn full_subcomplex_of_a_triangle() {
        let tri = from_ordered_complex(3, &[vec![0, 1, 2]]).unwrap();
        let (edge, index) = tri.full_subcomplex(&[true, false, true]);
        edge.validate().unwrap();
        assert_eq!(edge.counts(), &[2, 1, 0]);
        assert_eq!(index[0], vec![0, u32::MAX, 1]);
        let e = index[1].iter().position(|&i| i == 0).unwrap() as u32;
        assert_eq!(tri.vertices(&FinSimplex::nondeg(1, e)), vec![0, 2]);
        let (all, _) = tri.full_subcomplex(&[true; 3]);
        assert_eq!(all, tri);
    }

    #[test]
    fn map_validation() {
        let c = Arc::new(circle());
        let p = Arc::new(FinSSet::point());
        let m = SMap::constant(c.clone(), p.clone(), 0);
        assert!(m.validate().is_ok());
        let id = SMap::identity(c.clone());
        assert!(id.then(&m).same_as(&m));
    }
}
