//! Dense integer matrices with exact Smith and Hermite normal forms.
//!
//! Everything here is small (at most a few hundred rows) so a plain
//! row-major `Vec<i64>` is enough. Entries are checked for overflow in the
//! elimination loops; an overflow panics rather than returning garbage.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols<C: AsRef<[i64]>>(cols: &[C], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = checked_fma(out[(i, j)], a, other[(k, j)]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0i64, |acc, (a, b)| checked_fma(acc, *a, *b))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
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

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = self[(src, c)];
            self[(dst, c)] = checked_fma(self[(dst, c)], q, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        for r in 0..self.rows {
            let v = self[(r, src)];
            self[(r, dst)] = checked_fma(self[(r, dst)], q, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self[(r, c)] = -self[(r, c)];
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination in `i128`.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|r| self.row(r).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

fn checked_fma(acc: i64, a: i64, b: i64) -> i64 {
    a.checked_mul(b).and_then(|p| acc.checked_add(p)).expect("integer overflow in exact matrix arithmetic")
}

/// Result of a Smith normal form computation: `left * m * right == diag`.
#[derive(Debug, Clone)]
pub struct Snf {
    /// Nonnegative invariant factors, `min(rows, cols)` of them, each
    /// dividing the next (zeros at the end).
    pub factors: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// The diagonal matrix itself, same shape as the input.
    pub diag: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d != 0).count()
    }

    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<i64> {
        self.factors.iter().copied().filter(|&d| d > 1).collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Returns `Snf { left, right, diag, factors }` such that
/// `left * m * right == diag`, `diag` is diagonal with nonnegative entries
/// and every nonzero factor divides the next one.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        // Bring the smallest nonzero entry of the remaining block to (t, t).
        let Some((pi, pj)) = min_abs_entry(&a, t, |_, _| true) else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let p = a[(t, t)];
            for i in t + 1..rows {
                let q = a[(i, t)] / p;
                if q != 0 {
                    a.add_row(i, t, -q);
                    left.add_row(i, t, -q);
                }
            }
            for j in t + 1..cols {
                let q = a[(t, j)] / p;
                if q != 0 {
                    a.add_col(j, t, -q);
                    right.add_col(j, t, -q);
                }
            }
            // A remainder in row/column t is smaller than the pivot: swap it in.
            let rest = min_abs_entry(&a, t, |i, j| (i == t) != (j == t));
            if let Some((ri, rj)) = rest {
                a.swap_rows(t, ri);
                left.swap_rows(t, ri);
                a.swap_cols(t, rj);
                right.swap_cols(t, rj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = a[(t, t)];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[(i, j)] % p != 0));
            match bad {
                Some(i) => {
                    a.add_row(t, i, 1);
                    left.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if a[(t, t)] < 0 {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let factors = (0..n).map(|i| a[(i, i)]).collect();
    Snf { factors, left, right, diag: a }
}

/// Smallest-magnitude nonzero entry of the block `[t.., t..]` passing `filter`.
fn min_abs_entry(a: &IntMatrix, t: usize, filter: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a[(i, j)].abs();
            if v != 0 && filter(i, j) && best.is_none_or(|(_, _, b)| v < b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn rank(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    smith_normal_form(m).rank()
}

/// Basis of the integer kernel `{v in Z^cols : m v = 0}`, returned as
/// vectors. The basis spans a saturated sublattice.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<i64>> {
    if m.rows == 0 {
        return IntMatrix::identity(m.cols).to_rows();
    }
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols).map(|j| snf.right.col(j)).collect()
}

/// Solves `m k = x` over the integers, returning the unique solution when
/// `m` has full column rank and an integral solution exists.
pub fn solve_unique(m: &IntMatrix, x: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(m.rows, x.len());
    let snf = smith_normal_form(m);
    if snf.rank() != m.cols {
        return None;
    }
    let lx = snf.left.mul_vec(x);
    let mut z = vec![0i64; m.cols];
    for i in 0..m.rows {
        let d = if i < m.cols { snf.factors[i] } else { 0 };
        if d == 0 {
            if lx[i] != 0 {
                return None;
            }
        } else {
            if lx[i] % d != 0 {
                return None;
            }
            z[i] = lx[i] / d;
        }
    }
    Some(snf.right.mul_vec(&z))
}

/// Rank by fraction-free Gaussian elimination over `i128`. Independent of
/// the Smith normal form code path; used as a cross-check.
pub fn rank_by_elimination(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<i128>> = (0..m.rows).map(|r| m.row(r).iter().map(|&x| x as i128).collect()).collect();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..m.rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in r + 1..m.rows {
            if a[i][c] != 0 {
                let (f, g) = (a[r][c], a[i][c]);
                let gcd = num_integer::Integer::gcd(&f, &g);
                for j in c..m.cols {
                    a[i][j] = a[i][j] * (f / gcd) - a[r][j] * (g / gcd);
                }
            }
        }
        r += 1;
    }
    r
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result has no zero rows, strictly increasing pivot columns, positive
/// pivots and entries above each pivot reduced into `[0, pivot)`. Two
/// generating sets of the same lattice give identical output.
pub fn hermite_rows(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            let pick = (r..a.len()).filter(|&i| a[i][col] != 0).min_by_key(|&i| a[i][col].abs());
            let Some(p) = pick else { break };
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..a.len() {
                let q = a[i][col] / a[r][col];
                if q != 0 {
                    let src = a[r].clone();
                    for (x, s) in a[i].iter_mut().zip(&src) {
                        *x = checked_fma(*x, -q, *s);
                    }
                }
                if a[i][col] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][col] == 0 {
            continue;
        }
        if a[r][col] < 0 {
            a[r].iter_mut().for_each(|x| *x = -*x);
        }
        let piv = a[r][col];
        for i in 0..r {
            let q = num_integer::Integer::div_floor(&a[i][col], &piv);
            if q != 0 {
                let src = a[r].clone();
                for (x, s) in a[i].iter_mut().zip(&src) {
                    *x = checked_fma(*x, -q, *s);
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|&x| x != 0));
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(m).mul(&s.right), s.diag);
        assert_eq!(s.left.det().abs(), 1);
        assert_eq!(s.right.det().abs(), 1);
        for w in s.factors.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "{:?}", s.factors);
            } else {
                assert!(w[0] >= 0);
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check_snf(&IntMatrix::identity(3)).factors, vec![1, 1, 1]);
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(check_snf(&m).factors, vec![2, 4]);
        assert_eq!(check_snf(&IntMatrix::zeros(2, 2)).factors, vec![0, 0]);
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(check_snf(&m).factors, vec![1, 6]);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]], 3);
        let s = check_snf(&m);
        assert_eq!(s.factors, vec![1, 3]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]), vec![0, 0]);
    }

    #[test]
    fn solve_examples() {
        let m = IntMatrix::from_cols(&[vec![1, 0, 0], vec![1, 1, 0]], 3);
        assert_eq!(solve_unique(&m, &[3, 2, 0]), Some(vec![1, 2]));
        assert_eq!(solve_unique(&m, &[3, 2, 1]), None);
        let m = IntMatrix::from_cols(&[vec![2, 0]], 2);
        assert_eq!(solve_unique(&m, &[3, 0]), None);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(&[vec![1, 1, 0], vec![0, 1, 1]], 3);
        let b = hermite_rows(&[vec![1, 2, 1], vec![0, -1, -1], vec![1, 1, 0]], 3);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 0, -1], vec![0, 1, 1]]);
    }

    #[test]
    fn det_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(m.det(), -8);
        assert_eq!(IntMatrix::identity(4).det(), 1);
    }
}
