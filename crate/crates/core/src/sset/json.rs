//! Table-based JSON interchange for finite simplicial sets.
//!
//! The exported form lists every simplex (degenerate ones included) through
//! `dim_top`, with full face and degeneracy tables, so that a consumer
//! needs no knowledge of the normal form used internally.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use std::sync::Arc;

use crate::sset::finsset::{FinSSet, FinSimplex, SMap};
use crate::sset::traits::SimplicialSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinSSetTables {
    pub dim_top: usize,
    #[serde(default = "yes")]
    pub complete: bool,
    pub simplices: Vec<Vec<u32>>,
    pub faces: Vec<Vec<Vec<u32>>>,
    pub degens: Vec<Vec<Vec<u32>>>,
    #[serde(default)]
    pub nondegenerate: Vec<Vec<bool>>,
}

fn yes() -> bool {
    true
}

impl FinSSet {
    pub fn to_tables(&self) -> FinSSetTables {
        let top = self.dim_top();
        let lists: Vec<Vec<FinSimplex>> = (0..=top).map(|k| self.simplices(k).expect("known dimension")).collect();
        let index: Vec<HashMap<FinSimplex, u32>> = lists
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        let mut degens = Vec::new();
        for k in 0..=top {
            if k >= 1 {
                faces.push(lists[k].iter().map(|s| (0..=k).map(|i| index[k - 1][&self.face(i, s)]).collect()).collect());
            }
            if k < top {
                degens.push(lists[k].iter().map(|s| (0..=k).map(|i| index[k + 1][&self.degeneracy(i, s)]).collect()).collect());
            }
        }
        FinSSetTables {
            dim_top: top,
            complete: self.is_complete(),
            simplices: lists[..=top].iter().map(|l| (0..l.len() as u32).collect()).collect(),
            faces,
            degens,
            nondegenerate: lists[..=top].iter().map(|l| l.iter().map(|s| s.is_nondegenerate()).collect()).collect(),
        }
    }

    /// Rebuilds a simplicial set from full tables, checking that the tables
    /// are total, in range and consistent with the reconstructed structure.
    pub fn from_tables(t: &FinSSetTables) -> Result<FinSSet> {
        let top = t.dim_top;
        let bad = |m: String| Error::InvalidSSet(m);
        if t.simplices.len() != top + 1 || t.faces.len() != top + 1 || t.degens.len() != top {
            return Err(bad("table lengths do not match dim_top".into()));
        }
        let count = |k: usize| t.simplices[k].len();
        for k in 0..=top {
            if t.simplices[k].iter().enumerate().any(|(i, &id)| id as usize != i) {
                return Err(bad(format!("simplex ids in dimension {k} must be 0..n")));
            }
            if k >= 1 {
                if t.faces[k].len() != count(k) {
                    return Err(bad(format!("face table {k} is not total")));
                }
                for row in &t.faces[k] {
                    if row.len() != k + 1 || row.iter().any(|&f| f as usize >= count(k - 1)) {
                        return Err(bad(format!("face table {k} has an out-of-range entry")));
                    }
                }
            }
            if k < top {
                if t.degens[k].len() != count(k) {
                    return Err(bad(format!("degeneracy table {k} is not total")));
                }
                for row in &t.degens[k] {
                    if row.len() != k + 1 || row.iter().any(|&f| f as usize >= count(k + 1)) {
                        return Err(bad(format!("degeneracy table {k} has an out-of-range entry")));
                    }
                }
            }
        }
        // A simplex is degenerate iff it is s_i of its own i-th face for some i.
        let mut ez: Vec<Vec<FinSimplex>> = Vec::with_capacity(top + 1);
        let mut builder = FinSSet::builder();
        for k in 0..=top {
            let mut row = Vec::with_capacity(count(k));
            let mut pending: Vec<usize> = Vec::new();
            for id in 0..count(k) {
                let deg_from = (k >= 1)
                    .then(|| (0..k).find(|&i| t.degens[k - 1][t.faces[k][id][i] as usize][i] as usize == id))
                    .flatten();
                match deg_from {
                    Some(i) => {
                        let below = ez[k - 1][t.faces[k][id][i] as usize];
                        row.push(FinSimplex { deg: below.deg.degeneracy(i), base: below.base });
                    }
                    None => {
                        pending.push(id);
                        row.push(FinSimplex::nondeg(k, u32::MAX));
                    }
                }
            }
            let mut next = 0u32;
            for &id in &pending {
                row[id] = FinSimplex::nondeg(k, next);
                next += 1;
                if k == 0 {
                    builder = builder.vertices(1);
                } else {
                    let faces: Vec<FinSimplex> = t.faces[k][id].iter().map(|&f| ez[k - 1][f as usize]).collect();
                    builder.add(&faces);
                }
            }
            if let Some(flags) = t.nondegenerate.get(k) {
                for (id, &flag) in flags.iter().enumerate() {
                    if flag != row[id].is_nondegenerate() {
                        return Err(bad(format!("nondegenerate flag of simplex {id} in dimension {k} is inconsistent")));
                    }
                }
            }
            ez.push(row);
        }
        let mut set = builder.build_unchecked();
        set.extend_to(top);
        if !t.complete {
            set = set.into_skeletal();
        }
        set.validate()?;
        // Every table entry must agree with the reconstructed operators.
        for k in 0..=top {
            for id in 0..count(k) {
                let s = ez[k][id];
                if k >= 1 {
                    for i in 0..=k {
                        if set.face(i, &s) != ez[k - 1][t.faces[k][id][i] as usize] {
                            return Err(bad(format!("d_{i} of simplex {id} in dimension {k} is inconsistent")));
                        }
                    }
                }
                if k < top {
                    for i in 0..=k {
                        if set.degeneracy(i, &s) != ez[k + 1][t.degens[k][id][i] as usize] {
                            return Err(bad(format!("s_{i} of simplex {id} in dimension {k} is inconsistent")));
                        }
                    }
                }
            }
        }
        Ok(set)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_tables()).expect("tables serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FinSSet> {
        let t: FinSSetTables = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        FinSSet::from_tables(&t)
    }
}


impl SMap {
    /// Per-dimension image indices over *all* simplices (degenerate ones
    /// included) through the source's `dim_top`, in the order of
    /// [`FinSSet::to_tables`].
    pub fn to_table(&self) -> Vec<Vec<u32>> {
        let top = self.source.dim_top();
        (0..=top)
            .map(|k| {
                let tgt_list = self.target.simplices(k).expect("explicit set");
                let idx: HashMap<FinSimplex, u32> = tgt_list.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
                let src_list = self.source.simplices(k).expect("explicit set");
                src_list.iter().map(|s| idx[&self.apply(s)]).collect()
            })
            .collect()
    }

    /// Inverse of [`SMap::to_table`]; every entry, degenerate or not, must
    /// agree with the simplicial map determined by the nondegenerate ones.
    pub fn from_table(source: Arc<FinSSet>, target: Arc<FinSSet>, table: &[Vec<u32>]) -> Result<SMap> {
        let bad = |m: String| Error::InvalidSSet(m);
        let mut images = Vec::with_capacity(source.dim_top() + 1);
        let mut lists = Vec::new();
        for k in 0..=source.dim_top() {
            let src_list = source.simplices(k)?;
            let tgt_list = target.simplices(k)?;
            let row = table
                .get(k)
                .filter(|r| r.len() == src_list.len())
                .ok_or_else(|| bad(format!("map table is not total in dimension {k}")))?;
            let mut imgs = vec![FinSimplex::vertex(0); source.nondeg_count(k)];
            for (i, x) in src_list.iter().enumerate() {
                let y = tgt_list.get(row[i] as usize).ok_or_else(|| bad(format!("map table has an out-of-range image in dimension {k}")))?;
                if x.is_nondegenerate() {
                    imgs[x.base as usize] = *y;
                }
            }
            images.push(imgs);
            lists.push((src_list, tgt_list));
        }
        let f = SMap::new(source, target, images)?;
        for (k, (src_list, tgt_list)) in lists.iter().enumerate() {
            for (i, x) in src_list.iter().enumerate() {
                if f.apply(x) != tgt_list[table[k][i] as usize] {
                    return Err(bad(format!("map table entry {i} in dimension {k} is not simplicial")));
                }
            }
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::sphere::standard_sphere;

    #[test]
    fn round_trip_sphere() {
        for n in 0..=3 {
            let s = standard_sphere(n).space;
            let t = s.to_tables();
            let back = FinSSet::from_tables(&t).unwrap();
            assert_eq!(back.counts(), s.counts());
            assert_eq!(back.to_tables(), t);
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let s = standard_sphere(2).space;
        let mut t = s.to_tables();
        // claim that the nondegenerate edge is s_0 of the vertex
        t.degens[0][0][0] = 1;
        assert!(FinSSet::from_tables(&t).is_err());
        t.nondegenerate.clear();
        assert!(FinSSet::from_tables(&t).is_err());
    }
}
