//! The Γ-space `H X` of a commutative FCP:
//! `H X(n⁺) = hocolim_{𝕀≤N(n⁺)} ∏ᵢ X(θᵢ)`, with a based map `α` acting by
//! projection, `μ` over the fibres of `α`, the ordering isomorphism and the
//! push-forward `α_*`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::barcat::{hocolim, BarComplex, DiagramF, HocolimMap};
use crate::error::{Error, Result};
use crate::ispace::FcpStruct;
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::product::ProductSet;
use crate::util::permutations;

use super::icat::{BasedMap, ICatN};

/// Where a Γ-space came from and the truncations it was built with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaProvenance {
    pub source: String,
    /// bound `N` of the indexing categories
    pub bound: usize,
    /// simplicial truncation `D` of every homotopy colimit
    pub truncation: usize,
    pub n_max: usize,
}

pub struct GammaSpace {
    fcp: FcpStruct,
    cats: Vec<Arc<ICatN>>,
    products: Vec<Vec<ProductSet>>,
    levels: Vec<BarComplex>,
    cache: Mutex<HashMap<BasedMap, Arc<Vec<Arc<SMap>>>>>,
    pub provenance: GammaProvenance,
}

impl std::fmt::Debug for GammaSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GammaSpace").field("provenance", &self.provenance).finish_non_exhaustive()
    }
}

fn product_of(factors: Vec<Arc<FinSSet>>) -> Result<ProductSet> {
    let top = if factors.iter().all(|f| f.is_complete()) {
        factors.iter().map(|f| f.dim_top()).sum()
    } else {
        factors.iter().map(|f| f.dim_top()).min().unwrap_or(0)
    };
    ProductSet::new(factors, top)
}

fn encode(p: &ProductSet, comps: &[FinSimplex], k: usize) -> FinSimplex {
    if comps.is_empty() {
        FinSimplex::degenerate_vertex(0, k)
    } else {
        p.encode(comps).expect("components lie in the factors")
    }
}

/// Builds `H X` for `n ≤ n_max` with homotopy colimits truncated at `d`.
pub fn gamma_construct(x: &FcpStruct, n_max: usize, d: usize) -> Result<GammaSpace> {
    gamma_construct_named(x, n_max, d, "X")
}

pub fn gamma_construct_named(x: &FcpStruct, n_max: usize, d: usize, source: &str) -> Result<GammaSpace> {
    if !x.commutative {
        return Err(Error::NotCommutative("the Γ-space construction needs a commutative FCP".into()));
    }
    if d < 2 {
        return Err(Error::TruncationTooSmall(format!("π₀ of the Γ-space levels needs D ≥ 2, got D = {d}")));
    }
    let space = x.space();
    let base = space.base().clone();
    let mut cats = Vec::new();
    let mut products = Vec::new();
    let mut levels = Vec::new();
    for n in 0..=n_max {
        let cat = Arc::new(ICatN::new(n, base.clone())?);
        let prods: Vec<ProductSet> = (0..cat.words().len() as u32)
            .map(|o| product_of(cat.counts(o).iter().map(|&c| space.level(c).clone()).collect()))
            .collect::<Result<_>>()?;
        let c = cat.cat();
        let maps = (0..c.n_mor() as u32)
            .map(|m| {
                let (s, t) = (c.src(m) as usize, c.tgt(m) as usize);
                let factors: Vec<&SMap> = cat.components(m).iter().map(|&f| space.map(f)).collect();
                if factors.is_empty() {
                    return Ok(Arc::new(SMap::identity(prods[s].set().clone())));
                }
                prods[s].map_product(&prods[t], &factors).map(Arc::new)
            })
            .collect::<Result<Vec<_>>>()?;
        let diagram = DiagramF::new(c.clone(), prods.iter().map(|p| p.set().clone()).collect(), maps)?;
        levels.push(hocolim(c, &diagram, d)?.named("*", &format!("𝕀≤{}({n}⁺)", base.bound()), source));
        cats.push(cat);
        products.push(prods);
    }
    let provenance = GammaProvenance { source: source.to_string(), bound: base.bound(), truncation: d, n_max };
    Ok(GammaSpace { fcp: x.clone(), cats, products, levels, cache: Mutex::new(HashMap::new()), provenance })
}

impl GammaSpace {
    pub fn n_max(&self) -> usize {
        self.provenance.n_max
    }

    pub fn truncation(&self) -> usize {
        self.provenance.truncation
    }

    pub fn fcp(&self) -> &FcpStruct {
        &self.fcp
    }

    /// `H(n⁺)`.
    pub fn level(&self, n: usize) -> &BarComplex {
        &self.levels[n]
    }

    pub fn category(&self, n: usize) -> &Arc<ICatN> {
        &self.cats[n]
    }

    fn check_range(&self, alpha: &BasedMap) -> Result<()> {
        let top = alpha.src().max(alpha.tgt);
        if top > self.n_max() {
            return Err(Error::InsufficientGammaRange { needed: top, available: self.n_max() });
        }
        Ok(())
    }

    /// `X(α)_θ` with the factors over each fibre multiplied in the given
    /// orders (`orders[k-1]` lists `α⁻¹(k)`).
    fn component_ordered(&self, alpha: &BasedMap, o: u32, target_obj: u32, orders: &[Vec<usize>]) -> Result<SMap> {
        let (m, n) = (alpha.src(), alpha.tgt);
        let src = &self.products[m][o as usize];
        let tgt = &self.products[n][target_obj as usize];
        let counts = self.cats[m].counts(o);
        let space = self.fcp.space();
        let isos: Vec<&SMap> = orders.iter().map(|f| space.act(&self.cats[m].ordering_iso(o, f))).collect();
        SMap::from_fn(src.set().clone(), tgt.set().clone(), |s| {
            let k = s.dim();
            let xs = src.decode(s);
            let out: Vec<FinSimplex> = orders
                .iter()
                .zip(&isos)
                .map(|(fibre, iso)| {
                    let Some((&first, rest)) = fibre.split_first() else {
                        return FinSimplex::degenerate_vertex(self.fcp.unit(), k);
                    };
                    let mut level = counts[first - 1];
                    let mut y = xs[first - 1];
                    for &i in rest {
                        y = self.fcp.multiply(level, counts[i - 1], &y, &xs[i - 1]);
                        level += counts[i - 1];
                    }
                    iso.apply(&y)
                })
                .collect();
            encode(tgt, &out, k)
        })
    }

    /// The natural transformation `X(α): X(m⁺) → X(n⁺) ∘ α_*`, one map per
    /// object of `𝕀≤N(m⁺)`.
    pub fn components(&self, alpha: &BasedMap) -> Result<Arc<Vec<Arc<SMap>>>> {
        self.check_range(alpha)?;
        if let Some(c) = self.cache.lock().expect("cache lock").get(alpha) {
            return Ok(c.clone());
        }
        let (m, n) = (alpha.src(), alpha.tgt);
        let functor = self.cats[m].push_forward(alpha, &self.cats[n])?;
        let orders: Vec<Vec<usize>> = (1..=n).map(|k| alpha.fibre(k)).collect();
        let comps = (0..self.cats[m].words().len() as u32)
            .map(|o| self.component_ordered(alpha, o, functor.obj[o as usize], &orders).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        let comps = Arc::new(comps);
        self.cache.lock().expect("cache lock").insert(alpha.clone(), comps.clone());
        Ok(comps)
    }

    /// `H(α): H(m⁺) → H(n⁺)`.
    pub fn map(&self, alpha: &BasedMap) -> Result<HocolimMap> {
        self.check_range(alpha)?;
        let (m, n) = (alpha.src(), alpha.tgt);
        let functor = self.cats[m].push_forward(alpha, &self.cats[n])?;
        let comps = self.components(alpha)?;
        HocolimMap::new(self.levels[m].clone(), self.levels[n].clone(), functor, comps.as_ref().clone())
    }

    /// Exhaustive functoriality: `H(id) = id` and `H(β∘α) = H(β)∘H(α)` for
    /// all based maps between `0⁺, …, n_max⁺`, compared on the functors and
    /// on every component (which determines the maps simplexwise).
    pub fn functoriality_audit(&self) -> Result<FunctorialityReport> {
        let n_max = self.n_max();
        let mut identities = 0;
        let mut composites = 0;
        let functor_of = |a: &BasedMap| -> Result<(Vec<u32>, Vec<u32>)> {
            let f = self.cats[a.src()].push_forward(a, &self.cats[a.tgt])?;
            Ok((f.obj, f.mor))
        };
        for n in 0..=n_max {
            let id = BasedMap::identity(n);
            let (obj, mor) = functor_of(&id)?;
            let c = self.cats[n].cat();
            if obj != (0..c.n_obj() as u32).collect::<Vec<_>>() || mor != (0..c.n_mor() as u32).collect::<Vec<_>>() {
                return Err(Error::NotAFunctor(format!("id_* on 𝕀≤N({n}⁺) is not the identity")));
            }
            for (o, f) in self.components(&id)?.iter().enumerate() {
                if !f.same_as(&SMap::identity(f.source.clone())) {
                    return Err(Error::NotAFunctor(format!("X(id)_θ is not the identity at object {o} of level {n}")));
                }
            }
            identities += 1;
        }
        let all: Vec<Vec<Vec<BasedMap>>> =
            (0..=n_max).map(|m| (0..=n_max).map(|n| BasedMap::all(m, n)).collect()).collect();
        let mut tables: HashMap<BasedMap, (Vec<u32>, Vec<u32>)> = HashMap::new();
        for row in &all {
            for maps in row {
                for a in maps {
                    tables.insert(a.clone(), functor_of(a)?);
                }
            }
        }
        for l in 0..=n_max {
            for m in 0..=n_max {
                for n in 0..=n_max {
                    for a in &all[l][m] {
                        let ca = self.components(a)?;
                        let (ta_obj, ta_mor) = &tables[a];
                        for b in &all[m][n] {
                            let ba = b.after(a);
                            let (tb_obj, tb_mor) = &tables[b];
                            let (tba_obj, tba_mor) = &tables[&ba];
                            let obj_ok = ta_obj.iter().zip(tba_obj).all(|(&o, &p)| tb_obj[o as usize] == p);
                            let mor_ok = ta_mor.iter().zip(tba_mor).all(|(&f, &g)| tb_mor[f as usize] == g);
                            if !obj_ok || !mor_ok {
                                return Err(Error::NotAFunctor(format!(
                                    "(β∘α)_* ≠ β_*∘α_* for α = {:?}, β = {:?}",
                                    a.values, b.values
                                )));
                            }
                            let cb = self.components(b)?;
                            let cba = self.components(&ba)?;
                            for (o, f) in ca.iter().enumerate() {
                                let composite = f.then(&cb[ta_obj[o] as usize]);
                                if !composite.same_as(&cba[o]) {
                                    return Err(Error::NotAFunctor(format!(
                                        "X(β∘α) ≠ X(β)∘X(α) at object {} for α = {:?}, β = {:?}",
                                        o, a.values, b.values
                                    )));
                                }
                            }
                            composites += 1;
                        }
                    }
                }
            }
        }
        Ok(FunctorialityReport { n_max, identities, composites })
    }

    /// For every based map with nonempty fibres and every object, permuting
    /// the factors multiplied over each fibre (with the matching ordering
    /// isomorphism) gives the same component.
    pub fn ordering_independence_audit(&self) -> Result<usize> {
        let n_max = self.n_max();
        let mut compared = 0;
        for m in 0..=n_max {
            for n in 0..=n_max {
                for a in BasedMap::all(m, n) {
                    let canonical = self.components(&a)?;
                    let functor = self.cats[m].push_forward(&a, &self.cats[n])?;
                    let fibres: Vec<Vec<usize>> = (1..=n).map(|k| a.fibre(k)).collect();
                    if fibres.iter().all(|f| f.len() < 2) {
                        continue;
                    }
                    // one fibre permuted at a time keeps the count small
                    for (k, fibre) in fibres.iter().enumerate() {
                        for p in permutations(fibre.len()).into_iter().skip(1) {
                            let mut orders = fibres.clone();
                            orders[k] = p.iter().map(|&i| fibre[i]).collect();
                            for o in 0..self.cats[m].words().len() as u32 {
                                let f = self.component_ordered(&a, o, functor.obj[o as usize], &orders)?;
                                if !f.same_as(&canonical[o as usize]) {
                                    return Err(Error::LawViolation {
                                        law: "ordering independence".into(),
                                        witness: format!("α = {:?}, fibre order {:?}, object {o}", a.values, orders[k]),
                                    });
                                }
                                compared += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(compared)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    pub n_max: usize,
    pub identities: usize,
    pub composites: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcat::bar_homology;
    use crate::dkspec::ring::FinCommRing;
    use crate::dkspec::spectrum::em_spectrum;
    use crate::gammaunits::monoid::gl1_bullet;
    use crate::ispace::{subset_fcp, InjCat};
    use crate::linalg::AbGroup;

    fn gl1(ring: &str, n: usize) -> FcpStruct {
        let r = Arc::new(FinCommRing::parse(ring).unwrap());
        gl1_bullet(&em_spectrum(r, n).unwrap()).unwrap().units.fcp
    }

    #[test]
    fn terminal_levels_are_contractible() {
        let x = FcpStruct::terminal(Arc::new(InjCat::new(2).unwrap()));
        let h = gamma_construct(&x, 2, 3).unwrap();
        for n in 0..=2 {
            let hn = bar_homology(h.level(n), 1).unwrap();
            assert_eq!(hn, vec![AbGroup::free(1), AbGroup::zero()], "level {n}");
        }
        h.functoriality_audit().unwrap();
    }

    #[test]
    fn gl1_f5_has_four_components() {
        let h = gamma_construct(&gl1("F5", 3), 1, 4).unwrap();
        assert_eq!(h.level(1).components().unwrap(), 4);
        assert_eq!(h.level(0).components().unwrap(), 1);
    }

    #[test]
    fn noncommutative_input_is_rejected() {
        let x = subset_fcp(Arc::new(InjCat::new(2).unwrap()), false).unwrap().with_commutative(false);
        assert!(matches!(gamma_construct(&x, 2, 3), Err(Error::NotCommutative(_))));
        let t = FcpStruct::terminal(Arc::new(InjCat::new(2).unwrap()));
        assert!(matches!(gamma_construct(&t, 2, 1), Err(Error::TruncationTooSmall(_))));
    }

    #[test]
    fn functoriality_and_ordering_for_units() {
        let h = gamma_construct(&gl1("Z/6", 2), 2, 3).unwrap();
        let r = h.functoriality_audit().unwrap();
        assert_eq!(r.identities, 3);
        assert!(h.ordering_independence_audit().unwrap() > 0);
    }

    #[test]
    fn fold_multiplies_components() {
        // on π₀ the fold map 2⁺ → 1⁺ is the product of classes
        let x = gl1("F5", 2);
        let h = gamma_construct(&x, 2, 3).unwrap();
        let fold = h.map(&BasedMap::fold(2)).unwrap();
        let c = h.category(2);
        let o = c.object_of(&[1, 2]).unwrap();
        // vertices 1 and 2 of X(1) multiply to the vertex μ(1, 2) of X(2)
        let prod = &h.products[2][o as usize];
        let v = prod.encode(&[FinSimplex::vertex(1), FinSimplex::vertex(2)]).unwrap();
        let s = crate::barcat::BarSimplex { obj0: o, mors: vec![], x: v, y: None };
        let image = fold.apply(&s);
        let expected = x.multiply(1, 1, &FinSimplex::vertex(1), &FinSimplex::vertex(2));
        assert_eq!(image.x, expected);
        assert_eq!(h.category(1).word(image.obj0), &[1, 1]);
    }
}
