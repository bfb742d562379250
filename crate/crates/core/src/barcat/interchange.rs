//! The simplicial homotopy between the two collapse maps
//! `diag B(Y, C, C, C, X) → B(Y, C, X)`.
//!
//! A `q`-simplex of the source is
//! `(y; φ'_q, …, φ'_1; φ; φ''_q, …, φ''_1; x)` where the chain
//! `b_0 → … → b_q` of the `φ''` is followed by `φ: b_q → a_0` and the chain
//! `a_0 → … → a_q` of the `φ'`.  The maps are
//!
//! * `f = (y; φ'; X(φ φ''_q ⋯ φ''_1) x)`,
//! * `g = (Y(φ'_q ⋯ φ'_1 φ) y; φ''; x)`,
//!
//! and the prisms `h_i` (for `0 ≤ i ≤ q`) splice the middle composite
//! `φ'_i ⋯ φ'_1 φ φ''_q ⋯ φ''_{i+1}` between `φ''_1..φ''_i` and
//! `φ'_{i+1}..φ'_q`.  Modules are taken to be diagrams of finite sets.

use std::sync::Arc;

use serde::Serialize;

use crate::barcat::cat::FinCat;
use crate::barcat::diagram::{CoDiagramF, DiagramF};
use crate::error::{Error, Result};

/// A simplex of `B(Y, C, X)` with discrete modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Chain {
    x: u32,
    /// application order, starting at the object of `x`
    mors: Vec<u32>,
    y: u32,
}

/// A simplex of the diagonal of the five-fold bar construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Prism {
    x: u32,
    /// `φ''_1, …, φ''_q`
    inner: Vec<u32>,
    mid: u32,
    /// `φ'_1, …, φ'_q`
    outer: Vec<u32>,
    y: u32,
}

struct Ctx<'a> {
    c: &'a FinCat,
    x: &'a DiagramF,
    y: &'a CoDiagramF,
}

impl Ctx<'_> {
    fn comp(&self, g: u32, f: u32) -> u32 {
        self.c.compose(g, f).expect("composable")
    }

    fn act_x(&self, m: u32, v: u32) -> u32 {
        self.x.map(m).image_of_nondeg(0, v).base
    }

    fn act_y(&self, m: u32, v: u32) -> u32 {
        self.y.map(m).image_of_nondeg(0, v).base
    }

    fn chain_face(&self, i: usize, s: &Chain) -> Chain {
        let q = s.mors.len();
        let mut t = s.clone();
        if i == 0 {
            t.x = self.act_x(s.mors[0], s.x);
            t.mors.remove(0);
        } else if i == q {
            t.y = self.act_y(s.mors[q - 1], s.y);
            t.mors.pop();
        } else {
            let m = self.comp(s.mors[i], s.mors[i - 1]);
            t.mors.splice(i - 1..=i, [m]);
        }
        t
    }

    fn chain_degeneracy(&self, i: usize, s: &Chain, obj0: u32) -> Chain {
        let c_i = if i == 0 { obj0 } else { self.c.tgt(s.mors[i - 1]) };
        let mut t = s.clone();
        t.mors.insert(i, self.c.id(c_i));
        t
    }

    fn prism_face(&self, i: usize, s: &Prism) -> Prism {
        let q = s.inner.len();
        let mut t = s.clone();
        // inner direction
        if i == 0 {
            t.x = self.act_x(s.inner[0], s.x);
            t.inner.remove(0);
        } else if i == q {
            t.mid = self.comp(t.mid, s.inner[q - 1]);
            t.inner.pop();
        } else {
            let m = self.comp(s.inner[i], s.inner[i - 1]);
            t.inner.splice(i - 1..=i, [m]);
        }
        // outer direction
        if i == 0 {
            t.mid = self.comp(s.outer[0], t.mid);
            t.outer.remove(0);
        } else if i == q {
            t.y = self.act_y(s.outer[q - 1], s.y);
            t.outer.pop();
        } else {
            let m = self.comp(s.outer[i], s.outer[i - 1]);
            t.outer.splice(i - 1..=i, [m]);
        }
        t
    }

    fn prism_degeneracy(&self, i: usize, s: &Prism, x_obj: u32) -> Prism {
        let b_i = if i == 0 { x_obj } else { self.c.tgt(s.inner[i - 1]) };
        let a_i = if i == 0 { self.c.tgt(s.mid) } else { self.c.tgt(s.outer[i - 1]) };
        let mut t = s.clone();
        t.inner.insert(i, self.c.id(b_i));
        t.outer.insert(i, self.c.id(a_i));
        t
    }

    fn prism_obj(&self, s: &Prism) -> u32 {
        s.inner.first().map_or(self.c.src(s.mid), |&m| self.c.src(m))
    }

    fn f(&self, s: &Prism) -> Chain {
        let mut whole: Vec<u32> = s.inner.clone();
        whole.push(s.mid);
        let total = self.c.compose_chain(&whole).expect("composable");
        Chain { x: self.act_x(total, s.x), mors: s.outer.clone(), y: s.y }
    }

    fn g(&self, s: &Prism) -> Chain {
        let mut whole = vec![s.mid];
        whole.extend_from_slice(&s.outer);
        let total = self.c.compose_chain(&whole).expect("composable");
        Chain { x: s.x, mors: s.inner.clone(), y: self.act_y(total, s.y) }
    }

    fn h(&self, i: usize, s: &Prism) -> Chain {
        let q = s.inner.len();
        let mut middle: Vec<u32> = s.inner[i..].to_vec();
        middle.push(s.mid);
        middle.extend_from_slice(&s.outer[..i]);
        let spliced = self.c.compose_chain(&middle).expect("composable");
        let mut mors = Vec::with_capacity(q + 1);
        mors.extend_from_slice(&s.inner[..i]);
        mors.push(spliced);
        mors.extend_from_slice(&s.outer[i..]);
        Chain { x: s.x, mors, y: s.y }
    }

    /// All source `q`-simplices.
    fn prisms(&self, q: usize) -> Vec<Prism> {
        let mut out = Vec::new();
        let mut inner = Vec::new();
        for b0 in 0..self.c.n_obj() as u32 {
            let nx = self.x.object(b0).vertex_count() as u32;
            if nx == 0 {
                continue;
            }
            self.walk(b0, q, &mut inner, &mut |inner, bq| {
                for &mid in self.c.out(bq) {
                    let mut outer = Vec::new();
                    self.walk(self.c.tgt(mid), q, &mut outer, &mut |outer, aq| {
                        let ny = self.y.object(aq).vertex_count() as u32;
                        for x in 0..nx {
                            for y in 0..ny {
                                out.push(Prism { x, inner: inner.to_vec(), mid, outer: outer.to_vec(), y });
                            }
                        }
                    });
                }
            });
        }
        out
    }

    fn walk(&self, at: u32, q: usize, chain: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32], u32)) {
        if chain.len() == q {
            visit(chain, at);
            return;
        }
        for &m in self.c.out(at) {
            chain.push(m);
            self.walk(self.c.tgt(m), q, chain, visit);
            chain.pop();
        }
    }
}

/// Summary of a successful interchange-homotopy check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterchangeReport {
    pub q_max: usize,
    /// number of source simplices examined per degree
    pub simplices: Vec<usize>,
    pub relations_checked: usize,
}

/// Verifies that the prisms `h_i` form a simplicial homotopy from `f` to `g`
/// on every source simplex of degree `≤ q_max`.  Category laws are not
/// assumed: a broken composition table surfaces as the first failing
/// relation.  Both modules must be discrete.
pub fn interchange_homotopy_check(
    y: &CoDiagramF,
    c: &Arc<FinCat>,
    x: &DiagramF,
    q_max: usize,
) -> Result<InterchangeReport> {
    if y.base().n_obj() != c.n_obj() || x.base().n_obj() != c.n_obj() {
        return Err(Error::MismatchedBase);
    }
    if !x.is_discrete() || !y.is_discrete() {
        return Err(Error::InvalidSSet("interchange check needs diagrams of finite sets".into()));
    }
    let ctx = Ctx { c, x, y };
    let mut relations = 0usize;
    let mut counts = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let all = ctx.prisms(q);
        counts.push(all.len());
        for s in &all {
            relations += check_prism(&ctx, q, s)?;
        }
    }
    Ok(InterchangeReport { q_max, simplices: counts, relations_checked: relations })
}

fn check_prism(ctx: &Ctx<'_>, q: usize, s: &Prism) -> Result<usize> {
    let fail = |i: usize, j: usize, relation: &str| Error::IdentityViolation { q, i, j, relation: relation.to_string() };
    let x_obj = ctx.prism_obj(s);
    let hs: Vec<Chain> = (0..=q).map(|j| ctx.h(j, s)).collect();
    let mut n = 0;
    if ctx.chain_face(0, &hs[0]) != ctx.f(s) {
        return Err(fail(0, 0, "d_0 h_0 = f"));
    }
    if ctx.chain_face(q + 1, &hs[q]) != ctx.g(s) {
        return Err(fail(q + 1, q, "d_{q+1} h_q = g"));
    }
    n += 2;
    for j in 0..=q {
        for i in 0..=q + 1 {
            let lhs = ctx.chain_face(i, &hs[j]);
            let rhs = if i < j {
                Some((ctx.h(j - 1, &ctx.prism_face(i, s)), "d_i h_j = h_{j-1} d_i"))
            } else if i == j + 1 && j < q {
                Some((ctx.chain_face(j + 1, &hs[j + 1]), "d_{j+1} h_{j+1} = d_{j+1} h_j"))
            } else if i > j + 1 {
                Some((ctx.h(j, &ctx.prism_face(i - 1, s)), "d_i h_j = h_j d_{i-1}"))
            } else {
                None
            };
            if let Some((rhs, name)) = rhs {
                n += 1;
                if lhs != rhs {
                    return Err(fail(i, j, name));
                }
            }
        }
        for i in 0..=q + 1 {
            let lhs = ctx.chain_degeneracy(i, &hs[j], x_obj);
            let (rhs, name) = if i <= j {
                (ctx.h(j + 1, &ctx.prism_degeneracy(i, s, x_obj)), "s_i h_j = h_{j+1} s_i")
            } else {
                (ctx.h(j, &ctx.prism_degeneracy(i - 1, s, x_obj)), "s_i h_j = h_j s_{i-1}")
            };
            n += 1;
            if lhs != rhs {
                return Err(fail(i, j, name));
            }
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_category() -> Arc<FinCat> {
        Arc::new(FinCat::poset(3, |i, j| i <= j).unwrap())
    }

    #[test]
    fn terminal_category_passes() {
        let c = Arc::new(FinCat::terminal());
        let r = interchange_homotopy_check(&CoDiagramF::point(c.clone()), &c, &DiagramF::point(c.clone()), 3).unwrap();
        assert_eq!(r.simplices, vec![1, 1, 1, 1]);
    }

    #[test]
    fn poset_with_modules_passes() {
        let c = chain_category();
        let x = DiagramF::represented(c.clone(), 0).unwrap();
        let y = CoDiagramF::represented(c.clone(), 2).unwrap();
        interchange_homotopy_check(&y, &c, &x, 2).unwrap();
    }

    #[test]
    fn group_category_passes() {
        let c = Arc::new(FinCat::cyclic_group(3));
        let x = DiagramF::discrete(c.clone(), &[3], |m, v| (m + v) % 3).unwrap();
        let y = CoDiagramF::discrete(c.clone(), &[3], |m, v| (v + 3 - m) % 3).unwrap();
        interchange_homotopy_check(&y, &c, &x, 2).unwrap();
    }

    #[test]
    fn broken_associativity_is_caught() {
        let mul: Vec<Vec<u32>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let c = FinCat::group(&mul, 0).unwrap().with_composition_override(1, 1, 0);
        let c = Arc::new(c);
        let x = DiagramF::point(c.clone());
        let y = CoDiagramF::point(c.clone());
        let err = interchange_homotopy_check(&y, &c, &x, 2).unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { .. }), "{err}");
    }
}
