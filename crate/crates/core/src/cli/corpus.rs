//! The built-in corpus: the rings every pipeline is run on and a handful of
//! hand-built diagrams (spheres, double covers) with known homotopy colimits.

use std::sync::Arc;

use crate::barcat::{DiagramF, FinCat};
use crate::error::Result;
use crate::ispace::surrogate::double_cover_circle;
use crate::ispace::InjCat;
use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::sphere::standard_sphere;

pub const RINGS: [&str; 5] = ["Z/2", "Z/4", "Z/6", "F5", "F2[x]/x^2"];

/// File-name friendly form of a ring name: `F2[x]/x^2` → `F2x_x2`.
pub fn slug(ring: &str) -> String {
    ring.chars()
        .filter_map(|c| match c {
            '/' => Some('_'),
            c if c.is_ascii_alphanumeric() => Some(c),
            _ => None,
        })
        .collect::<String>()
        .replace("Z_", "Z")
}

/// A corpus diagram with the homology of its homotopy colimit in degrees
/// 0 and 1, as factor strings.
pub struct CorpusDiagram {
    pub name: &'static str,
    pub about: &'static str,
    pub build: fn() -> Result<DiagramF>,
    pub expected: [&'static [&'static str]; 2],
}

fn point() -> Result<DiagramF> {
    Ok(DiagramF::point(Arc::new(FinCat::terminal())))
}

fn constant_circle() -> Result<DiagramF> {
    let base = InjCat::new(2)?;
    Ok(DiagramF::constant(base.cat().clone(), Arc::new(standard_sphere(1).space)))
}

fn constant_two_sphere() -> Result<DiagramF> {
    let base = InjCat::new(2)?;
    Ok(DiagramF::constant(base.cat().clone(), Arc::new(standard_sphere(2).space)))
}

fn deck(c2: &Arc<FinSSet>) -> Result<SMap> {
    SMap::from_fn(c2.clone(), c2.clone(), |s| FinSimplex { deg: s.deg, base: 1 - s.base })
}

/// `Z/2` acting freely on the two-edge circle by the deck transformation;
/// the homotopy colimit is the quotient circle.
fn double_cover_quotient() -> Result<DiagramF> {
    let c = Arc::new(FinCat::cyclic_group(2));
    let c2 = Arc::new(double_cover_circle());
    DiagramF::new(c, vec![c2.clone()], vec![Arc::new(SMap::identity(c2.clone())), Arc::new(deck(&c2)?)])
}

/// The covering map `C₂ → S¹` as a diagram over `0 → 1`; the terminal object
/// makes the homotopy colimit the target circle.
fn double_cover_arrow() -> Result<DiagramF> {
    let c = Arc::new(FinCat::poset(2, |i, j| i <= j)?);
    let c2 = Arc::new(double_cover_circle());
    let s1 = Arc::new(standard_sphere(1).space);
    let cover = SMap::from_fn(c2.clone(), s1.clone(), |s| {
        if s.dim() == 0 {
            FinSimplex::vertex(0)
        } else {
            FinSimplex { deg: s.deg, base: 0 }
        }
    })?;
    // morphisms of the poset in row order: (0,0), (0,1), (1,1)
    DiagramF::new(
        c,
        vec![c2.clone(), s1.clone()],
        vec![Arc::new(SMap::identity(c2)), Arc::new(cover), Arc::new(SMap::identity(s1))],
    )
}

pub const DIAGRAMS: [CorpusDiagram; 5] = [
    CorpusDiagram { name: "point", about: "the point over the terminal category", build: point, expected: [&["Z"], &[]] },
    CorpusDiagram {
        name: "circle_constant",
        about: "constant S¹ over 𝕀≤2",
        build: constant_circle,
        expected: [&["Z"], &["Z"]],
    },
    CorpusDiagram {
        name: "sphere2_constant",
        about: "constant S² over 𝕀≤2",
        build: constant_two_sphere,
        expected: [&["Z"], &[]],
    },
    CorpusDiagram {
        name: "double_cover_quotient",
        about: "Z/2 acting on the two-edge circle by the deck transformation",
        build: double_cover_quotient,
        expected: [&["Z"], &["Z"]],
    },
    CorpusDiagram {
        name: "double_cover_arrow",
        about: "the double cover C₂ → S¹ over the arrow category",
        build: double_cover_arrow,
        expected: [&["Z"], &["Z"]],
    },
];

pub fn diagram(name: &str) -> Option<&'static CorpusDiagram> {
    DIAGRAMS.iter().find(|d| d.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcat::{bar_homology, hocolim};

    #[test]
    fn slugs_are_file_names() {
        let slugs: Vec<String> = RINGS.iter().map(|r| slug(r)).collect();
        assert_eq!(slugs, ["Z2", "Z4", "Z6", "F5", "F2x_x2"]);
    }

    #[test]
    fn corpus_diagrams_have_the_stated_homology() {
        for d in &DIAGRAMS {
            let x = (d.build)().unwrap();
            let h = bar_homology(&hocolim(x.base(), &x, 3).unwrap(), 1).unwrap();
            let got: Vec<Vec<String>> = h.iter().map(|g| g.factor_strings()).collect();
            let want: Vec<Vec<String>> = d.expected.iter().map(|v| v.iter().map(|s| s.to_string()).collect()).collect();
            assert_eq!(got, want, "{}", d.name);
        }
    }
}
