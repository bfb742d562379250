//! Dense integer matrices and the Smith normal form.
//!
//! Entries are `i128`; every arithmetic step is checked and overflow is
//! reported rather than wrapped.  The matrices handled here are the small
//! remainders left after sparse reduction and the lattices of finite-module
//! computations, so a dense representation is adequate.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

pub(crate) fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<i128>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i128] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<i128> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i128>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = ck(ck(a.checked_mul(b))?.checked_add(out.get(i, j)))?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0i128; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0i128;
            for (j, &x) in v.iter().enumerate() {
                if x != 0 {
                    acc = ck(acc.checked_add(ck(self.get(i, j).checked_mul(x))?))?;
                }
            }
            *o = acc;
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let mut m = IntMatrix::zeros(range.len(), self.cols);
        for (i, r) in range.enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c));
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s != 0 {
                let v = ck(self.get(dst, c).checked_add(ck(k.checked_mul(s))?))?;
                self.set(dst, c, v);
            }
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for r in 0..self.rows {
            let s = self.get(r, src);
            if s != 0 {
                let v = ck(self.get(r, dst).checked_add(ck(k.checked_mul(s))?))?;
                self.set(r, dst, v);
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, -v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = self.get(r, c);
            self.set(r, c, -v);
        }
    }
}

/// Smith normal form `U * A * V = D` with `D` diagonal, nonnegative, and
/// `d_0 | d_1 | ...`.  `u_inv` is the inverse of `u`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<i128>,
    pub rank: usize,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

struct Tracker {
    u: Option<(IntMatrix, IntMatrix)>,
    v: Option<IntMatrix>,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some((u, ui)) = self.u.as_mut() {
            u.swap_rows(a, b);
            ui.swap_cols(a, b);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(a, b);
        }
    }
    fn add_row(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if let Some((u, ui)) = self.u.as_mut() {
            u.add_row(dst, src, k)?;
            // inverse of (row dst += k row src) is col src -= k col dst
            ui.add_col(src, dst, -k)?;
        }
        Ok(())
    }
    fn add_col(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        if let Some(v) = self.v.as_mut() {
            v.add_col(dst, src, k)?;
        }
        Ok(())
    }
    fn negate_row(&mut self, r: usize) {
        if let Some((u, ui)) = self.u.as_mut() {
            u.negate_row(r);
            ui.negate_col(r);
        }
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn smith_core(a: &IntMatrix, track: bool) -> Result<(IntMatrix, Tracker)> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut tr = Tracker {
        u: track.then(|| (IntMatrix::identity(rows), IntMatrix::identity(rows))),
        v: track.then(|| IntMatrix::identity(cols)),
    };
    let n = rows.min(cols);
    for t in 0..n {
        // Locate the entry of least absolute value in the trailing block.
        let mut best: Option<(usize, usize, i128)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = m.get(r, c).abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((r, c, v));
                    if v == 1 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, 1))) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        m.swap_rows(t, pr);
        tr.swap_rows(t, pr);
        m.swap_cols(t, pc);
        tr.swap_cols(t, pc);
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                let x = m.get(r, t);
                if x != 0 {
                    let q = floor_div(x, m.get(t, t));
                    m.add_row(r, t, -q)?;
                    tr.add_row(r, t, -q)?;
                    if m.get(r, t) != 0 {
                        clean = false;
                    }
                }
            }
            for c in t + 1..cols {
                let x = m.get(t, c);
                if x != 0 {
                    let q = floor_div(x, m.get(t, t));
                    m.add_col(c, t, -q)?;
                    tr.add_col(c, t, -q)?;
                    if m.get(t, c) != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                // Enforce divisibility of the trailing block by the pivot.
                let p = m.get(t, t);
                let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| m.get(r, c) % p != 0));
                match bad {
                    None => break,
                    Some(r) => {
                        m.add_row(t, r, 1)?;
                        tr.add_row(t, r, 1)?;
                    }
                }
            }
            // Move the smallest nonzero entry of row/column t into the pivot.
            let mut best = (t, t, m.get(t, t).abs());
            for r in t + 1..rows {
                let v = m.get(r, t).abs();
                if v != 0 && (best.2 == 0 || v < best.2) {
                    best = (r, t, v);
                }
            }
            for c in t + 1..cols {
                let v = m.get(t, c).abs();
                if v != 0 && (best.2 == 0 || v < best.2) {
                    best = (t, c, v);
                }
            }
            if best.0 != t {
                m.swap_rows(t, best.0);
                tr.swap_rows(t, best.0);
            }
            if best.1 != t {
                m.swap_cols(t, best.1);
                tr.swap_cols(t, best.1);
            }
        }
        if m.get(t, t) < 0 {
            m.negate_row(t);
            tr.negate_row(t);
        }
    }
    Ok((m, tr))
}

fn diagonal_of(m: &IntMatrix) -> Vec<i128> {
    (0..m.rows.min(m.cols)).map(|i| m.get(i, i)).collect()
}

/// Invariant factors of `a` (the nonzero diagonal entries of its Smith form).
pub fn invariant_factors(a: &IntMatrix) -> Result<Vec<i128>> {
    let (m, _) = smith_core(a, false)?;
    Ok(diagonal_of(&m).into_iter().filter(|&d| d != 0).collect())
}

pub fn smith(a: &IntMatrix) -> Result<SmithForm> {
    let (m, tr) = smith_core(a, true)?;
    let diag = diagonal_of(&m);
    let rank = diag.iter().take_while(|&&d| d != 0).count();
    let (u, u_inv) = tr.u.expect("tracked");
    Ok(SmithForm { diag, rank, u, u_inv, v: tr.v.expect("tracked") })
}

pub fn rank(a: &IntMatrix) -> Result<usize> {
    Ok(invariant_factors(a)?.len())
}

/// Basis (as columns) of the integer kernel of `a`.
pub fn kernel(a: &IntMatrix) -> Result<IntMatrix> {
    let s = smith(a)?;
    let idx: Vec<usize> = (s.rank..a.cols).collect();
    Ok(s.v.select_cols(&idx))
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn column_span_basis(gens: &IntMatrix) -> Result<IntMatrix> {
    let s = smith(gens)?;
    let mut out = IntMatrix::zeros(gens.rows, s.rank);
    for j in 0..s.rank {
        for r in 0..gens.rows {
            out.set(r, j, ck(s.u_inv.get(r, j).checked_mul(s.diag[j]))?);
        }
    }
    Ok(out)
}

/// Integer solution `x` of `a x = b` (column-wise for a matrix `b`), if any.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>> {
    assert_eq!(a.rows, b.rows);
    let s = smith(a)?;
    let ub = s.u.mul(b)?;
    let mut z = IntMatrix::zeros(a.cols, b.cols);
    for c in 0..b.cols {
        for r in 0..a.rows {
            let val = ub.get(r, c);
            if r < s.rank {
                let d = s.diag[r];
                if val % d != 0 {
                    return Ok(None);
                }
                z.set(r, c, val / d);
            } else if val != 0 {
                return Ok(None);
            }
        }
    }
    Ok(Some(s.v.mul(&z)?))
}

/// Canonical basis of the lattice spanned by the columns of `gens`: the
/// column Hermite normal form with positive pivots and off-pivot entries
/// reduced into `0..pivot`.  Equal lattices give equal matrices.
pub fn hermite(gens: &IntMatrix) -> Result<IntMatrix> {
    let mut rows: Vec<Vec<i128>> = gens.columns();
    let n = gens.rows();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        // Euclid on coordinate `col` across the remaining vectors.
        loop {
            rows.retain(|r| r.iter().any(|&v| v != 0));
            let Some(min_i) = (0..rows.len()).filter(|&i| rows[i][col] != 0).min_by_key(|&i| rows[i][col].abs()) else {
                break;
            };
            rows.swap(0, min_i);
            let p = rows[0][col];
            let mut done = true;
            for i in 1..rows.len() {
                let q = rows[i][col].div_euclid(p);
                if q != 0 {
                    for c in 0..n {
                        let v = ck(rows[0][c].checked_mul(q))?;
                        rows[i][c] = ck(rows[i][c].checked_sub(v))?;
                    }
                }
                if rows[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if let Some(first) = rows.first().filter(|r| r[col] != 0).cloned() {
            rows.remove(0);
            let mut v = first;
            if v[col] < 0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(v);
            pivots.push(col);
        }
        col += 1;
    }
    // Reduce entries at each pivot row of the later vectors into 0..pivot,
    // and entries of earlier vectors against later pivots.
    for j in 0..basis.len() {
        for i in 0..basis.len() {
            if i == j {
                continue;
            }
            let pc = pivots[j];
            if i < j {
                let q = basis[i][pc].div_euclid(basis[j][pc]);
                if q != 0 {
                    for c in 0..n {
                        let v = ck(basis[j][c].checked_mul(q))?;
                        basis[i][c] = ck(basis[i][c].checked_sub(v))?;
                    }
                }
            }
        }
    }
    Ok(IntMatrix::from_cols(n, &basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i128]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn smith_of_known_matrix() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(invariant_factors(&a).unwrap(), vec![2, 6, 12]);
    }

    #[test]
    fn rp2_boundary_has_two_torsion() {
        // d_2 of the standard ΔC model of RP^2 with one vertex: e_a, e_b; t1,t2.
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(invariant_factors(&a).unwrap(), vec![1, 2]);
    }

    #[test]
    fn solve_detects_non_integral() {
        let a = m(&[&[2]]);
        let b = m(&[&[3]]);
        assert!(solve(&a, &b).unwrap().is_none());
        let b = m(&[&[4]]);
        assert_eq!(solve(&a, &b).unwrap().unwrap().get(0, 0), 2);
    }

    proptest! {
        #[test]
        fn smith_transforms_are_consistent(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-6i128..7, 25)
        ) {
            let mut a = IntMatrix::zeros(rows, cols);
            for r in 0..rows { for c in 0..cols { a.set(r, c, seed[r * 5 + c]); } }
            let s = smith(&a).unwrap();
            let d = s.u.mul(&a).unwrap().mul(&s.v).unwrap();
            for r in 0..rows {
                for c in 0..cols {
                    let expect = if r == c { s.diag[r] } else { 0 };
                    prop_assert_eq!(d.get(r, c), expect);
                }
            }
            prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(rows));
            for w in s.diag[..s.rank].windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            let k = kernel(&a).unwrap();
            prop_assert!(a.mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.cols(), cols - s.rank);
        }
    }
}
