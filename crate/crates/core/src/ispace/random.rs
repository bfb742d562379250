//! Seeded random 𝕀-spaces for property suites.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::sset::finsset::FinSSet;
use crate::sset::sphere::standard_sphere;

use super::injcat::{Inj, InjCat};
use super::space::{copies_ispace, free_ispace, ISpace};

/// A subset of `0..n` with a label on each point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Labeled {
    points: Vec<usize>,
    labels: Vec<u8>,
}

fn labeled_sets(n: usize, sizes: &[usize], alphabet: u8) -> Vec<Labeled> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let points: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if !sizes.contains(&points.len()) {
            continue;
        }
        let count = (alphabet as usize).pow(points.len() as u32);
        for code in 0..count {
            let mut rest = code;
            let labels = (0..points.len())
                .map(|_| {
                    let l = (rest % alphabet as usize) as u8;
                    rest /= alphabet as usize;
                    l
                })
                .collect();
            out.push(Labeled { points: points.clone(), labels });
        }
    }
    out
}

fn push_forward(f: &Inj, s: &Labeled) -> Labeled {
    let mut pairs: Vec<(usize, u8)> = s.points.iter().zip(&s.labels).map(|(&p, &l)| (f.values[p], l)).collect();
    pairs.sort();
    Labeled { points: pairs.iter().map(|p| p.0).collect(), labels: pairs.iter().map(|p| p.1).collect() }
}

fn fibre(rng: &mut impl Rng, allow_circle: bool) -> Arc<FinSSet> {
    match rng.gen_range(0..if allow_circle { 3 } else { 2 }) {
        0 => Arc::new(FinSSet::point()),
        1 => Arc::new(FinSSet::discrete(2)),
        _ => Arc::new(standard_sphere(1).space),
    }
}

fn simple(rng: &mut impl Rng, base: &Arc<InjCat>) -> Result<ISpace> {
    let small = base.bound() <= 3;
    match rng.gen_range(0..3) {
        0 => {
            // labelled subsets of bounded size, times a fibre
            let c = fibre(rng, small);
            let circle = c.dim_top() > 0;
            let max_size = if circle { 1 } else { 2 };
            let mut sizes: Vec<usize> = (0..=max_size).filter(|_| rng.gen_bool(0.6)).collect();
            if sizes.is_empty() {
                sizes.push(rng.gen_range(0..=max_size));
            }
            let alphabet = if circle { 1 } else { rng.gen_range(1..=2) };
            let index = base.objects().map(|n| labeled_sets(n, &sizes, alphabet)).collect();
            copies_ispace(base.clone(), c, index, push_forward)
        }
        1 => {
            let d = rng.gen_range(0..=base.bound().min(2));
            free_ispace(d, fibre(rng, small), base.clone())
        }
        _ => Ok(ISpace::constant(base.clone(), fibre(rng, true))),
    }
}

/// A random small 𝕀-space: labelled-subset spaces, free spaces, constant
/// spaces, or the disjoint union of two of them.
pub fn random_ispace(rng: &mut impl Rng, base: &Arc<InjCat>) -> Result<ISpace> {
    let x = simple(rng, base)?;
    if rng.gen_bool(0.25) {
        let y = simple(rng, base)?;
        x.disjoint_union(&y)
    } else {
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_spaces_are_functors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = Arc::new(InjCat::new(3).unwrap());
        for _ in 0..10 {
            let x = random_ispace(&mut rng, &b).unwrap();
            assert_eq!(x.bound(), 3);
        }
    }
}
