//! Exact Smith normal form.
//!
//! Sparse matrices are first reduced by eliminating on unit (±1) pivots, chosen
//! from the sparsest column first; the residual block without unit entries goes
//! through a dense Smith normal form over arbitrary-precision integers. The
//! sparse phase runs on checked `i64` and restarts on `BigInt` if any entry
//! would overflow.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-major sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Per column: `(row, value)` sorted by row, no zeros.
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from columns; duplicate rows are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    assert!((r as usize) < rows, "row index out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        SparseMatrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let columns = (0..c)
            .map(|j| {
                (0..r)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i as u32, rows[i][j]))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: r,
            cols: c,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    /// `self * other`, exact; `None` on `i64` overflow.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut columns = Vec::with_capacity(other.cols);
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        for col in &other.columns {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k as usize] {
                    let i = i as usize;
                    if acc[i] == 0 {
                        touched.push(i);
                    }
                    acc[i] = acc[i].checked_add(a.checked_mul(b)?)?;
                }
            }
            touched.sort_unstable();
            let mut out = Vec::new();
            for &i in &touched {
                if acc[i] != 0 {
                    out.push((i as u32, acc[i]));
                }
                acc[i] = 0;
            }
            touched.clear();
            columns.push(out);
        }
        Some(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

/// Nonzero diagonal of the Smith normal form, `d_1 | d_2 | ... | d_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigUint>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(rows: &[Vec<i64>]) -> SmithForm {
    smith_normal_form_sparse(&SparseMatrix::from_dense(rows))
}

pub fn smith_normal_form_sparse(m: &SparseMatrix) -> SmithForm {
    let (units, rest) = match eliminate_units::<i64>(m) {
        Some(x) => x,
        None => eliminate_units::<BigInt>(m).expect("BigInt arithmetic cannot overflow"),
    };
    let mut factors = vec![BigUint::one(); units];
    factors.extend(dense_snf(rest));
    SmithForm {
        invariant_factors: factors,
    }
}

trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(x: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self - f * g`
    fn sub_mul(&self, f: &Self, g: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, f: &Self, g: &Self) -> Option<Self> {
        self.checked_sub(f.checked_mul(*g)?)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, f: &Self, g: &Self) -> Option<Self> {
        Some(self - f * g)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Eliminates unit pivots. Returns their count and the residual dense block
/// (rows and columns not yet eliminated, zero rows dropped), or `None` on
/// overflow.
fn eliminate_units<T: Coeff>(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let nrows = m.rows;
    let ncols = m.cols;
    let mut rows: Vec<Vec<(u32, T)>> = vec![Vec::new(); nrows];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            rows[i as usize].push((j as u32, T::from_i64(v)));
        }
    }
    let mut col_rows: Vec<Vec<u32>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|e| e.0).collect())
        .collect();
    let mut col_count: Vec<usize> = m.columns.iter().map(|c| c.len()).collect();
    let mut col_active = vec![true; ncols];
    let mut row_active = vec![true; nrows];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..ncols)
        .filter(|&j| col_count[j] > 0)
        .map(|j| Reverse((col_count[j], j as u32)))
        .collect();
    let mut units = 0usize;

    let entry = |rows: &Vec<Vec<(u32, T)>>, i: usize, j: u32| -> Option<T> {
        rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .ok()
            .map(|p| rows[i][p].1.clone())
    };

    while let Some(Reverse((count, j))) = heap.pop() {
        let ju = j as usize;
        if !col_active[ju] || col_count[ju] != count || count == 0 {
            continue;
        }
        // live rows of this column, deduplicated
        let mut live: Vec<u32> = col_rows[ju]
            .iter()
            .copied()
            .filter(|&i| row_active[i as usize] && entry(&rows, i as usize, j).is_some())
            .collect();
        live.sort_unstable();
        live.dedup();
        col_rows[ju] = live.clone();
        let pivot = live
            .iter()
            .copied()
            .filter(|&i| entry(&rows, i as usize, j).is_some_and(|v| v.is_unit()))
            .min_by_key(|&i| (rows[i as usize].len(), i));
        let Some(r) = pivot else {
            // no unit in this column for now; it returns to the heap when its
            // entries change
            continue;
        };
        let ru = r as usize;
        let u = entry(&rows, ru, j).unwrap();
        let pivot_row = std::mem::take(&mut rows[ru]);
        for &i in &live {
            if i == r {
                continue;
            }
            let iu = i as usize;
            let a = entry(&rows, iu, j).unwrap();
            let factor = a.mul(&u)?;
            let old = std::mem::take(&mut rows[iu]);
            let new = sub_scaled(&old, &factor, &pivot_row)?;
            // update column bookkeeping
            let (mut p, mut q) = (0, 0);
            while p < old.len() || q < new.len() {
                let oc = old.get(p).map(|e| e.0);
                let nc = new.get(q).map(|e| e.0);
                match (oc, nc) {
                    (Some(a), Some(b)) if a == b => {
                        p += 1;
                        q += 1;
                    }
                    (Some(a), b) if b.is_none_or(|b| a < b) => {
                        col_count[a as usize] -= 1;
                        if col_active[a as usize] {
                            heap.push(Reverse((col_count[a as usize], a)));
                        }
                        p += 1;
                    }
                    (_, Some(b)) => {
                        col_count[b as usize] += 1;
                        col_rows[b as usize].push(i);
                        if col_active[b as usize] {
                            heap.push(Reverse((col_count[b as usize], b)));
                        }
                        q += 1;
                    }
                    _ => unreachable!(),
                }
            }
            rows[iu] = new;
        }
        row_active[ru] = false;
        col_active[ju] = false;
        for (c, _) in &pivot_row {
            let c = *c as usize;
            col_count[c] -= 1;
            if col_active[c] && col_count[c] > 0 {
                heap.push(Reverse((col_count[c], c as u32)));
            }
        }
        units += 1;
    }

    let live_cols: Vec<usize> = (0..ncols)
        .filter(|&j| col_active[j] && col_count[j] > 0)
        .collect();
    let col_pos: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(p, &j)| (j, p)).collect();
    let mut dense = Vec::new();
    for i in 0..nrows {
        if !row_active[i] || rows[i].is_empty() {
            continue;
        }
        let mut row = vec![BigInt::zero(); live_cols.len()];
        for (c, v) in &rows[i] {
            row[col_pos[&(*c as usize)]] = v.to_big();
        }
        dense.push(row);
    }
    Some((units, dense))
}

/// `row - factor * pivot`, both sorted by column.
fn sub_scaled<T: Coeff>(row: &[(u32, T)], factor: &T, pivot: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut p, mut q) = (0, 0);
    let zero = T::from_i64(0);
    while p < row.len() || q < pivot.len() {
        let a = row.get(p).map(|e| e.0);
        let b = pivot.get(q).map(|e| e.0);
        match (a, b) {
            (Some(x), Some(y)) if x == y => {
                let v = row[p].1.sub_mul(factor, &pivot[q].1)?;
                if !v.vanishes() {
                    out.push((x, v));
                }
                p += 1;
                q += 1;
            }
            (Some(x), y) if y.is_none_or(|y| x < y) => {
                out.push(row[p].clone());
                p += 1;
            }
            (_, Some(y)) => {
                out.push((y, zero.sub_mul(factor, &pivot[q].1)?));
                q += 1;
            }
            _ => unreachable!(),
        }
    }
    Some(out)
}

/// Dense Smith normal form: the positive nonzero diagonal entries.
// row operations read one row while writing another, so index loops are clearer here
#[allow(clippy::needless_range_loop)]
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        changed = true;
                    }
                }
            }
            if changed {
                // a remainder smaller than the pivot exists in row or column t
                let (mut bi, mut bj) = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // pivot must divide the whole trailing block
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs().to_biguint().unwrap());
        t += 1;
    }
    out
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(m: &[Vec<i64>]) -> Vec<u64> {
        smith_normal_form(m)
            .invariant_factors
            .iter()
            .map(|x| x.to_u64_digits().first().copied().unwrap_or(0))
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 0]]), vec![2]);
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(factors(&[vec![0, 0], vec![0, 0]]), Vec::<u64>::new());
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(
            factors(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            vec![1, 3]
        );
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = vec![vec![1, big, 0], vec![big, 1, 1], vec![0, big, 1]];
        let f = smith_normal_form(&m);
        assert_eq!(f.rank(), 3);
        // |det| = |1*(1 - big) - big*(big)| computed exactly
        let b = BigInt::from(big);
        let det = (BigInt::one() - &b) - &b * &b;
        let prod: BigUint = f.invariant_factors.iter().product();
        assert_eq!(BigInt::from(prod), det.abs());
    }

    #[test]
    fn sparse_product() {
        let a = SparseMatrix::from_dense(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let b = SparseMatrix::from_dense(&[vec![1], vec![1], vec![1]]);
        assert!(a.checked_mul(&b).unwrap().is_zero());
    }
}
