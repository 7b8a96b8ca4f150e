//! Dense integer matrices and the lattice routines built on Smith and
//! Hermite normal forms. This is the single elimination engine behind
//! kernels, lattice indices, integer solves and basis standardization.
//!
//! Everything is `i64`; the lattices in this crate have rank at most ten
//! and tiny entries, so overflow is not a practical concern (arithmetic
//! is checked in debug builds via the default overflow checks).

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<i64>>) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        assert!(cols.iter().all(|col| col.len() == r));
        let mut m = Mat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn scale(&self, k: i64) -> Mat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= k;
        }
        m
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut m = Mat::zero(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m[(i - r0, j - c0)] = self[(i, j)];
            }
        }
        m
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)] as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let swap = (k + 1..n).find(|&i| a[i][k] != 0);
                match swap {
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
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        let d = sign * a[n - 1][n - 1];
        i64::try_from(d).expect("determinant overflow")
    }

    /// Inverse of a matrix with determinant +-1.
    pub fn inverse_unimodular(&self) -> Mat {
        assert_eq!(self.rows, self.cols);
        let d = self.det();
        assert!(d == 1 || d == -1, "matrix is not unimodular (det {d})");
        let n = self.rows;
        let mut inv = Mat::zero(n, n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let x = solve(self, &e).expect("unimodular solve cannot fail");
            for i in 0..n {
                inv[(i, j)] = x[i];
            }
        }
        inv
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with the divisibility chain d1 | d2 | ...
pub struct Snf {
    pub d: Mat,
    pub u: Mat,
    pub v: Mat,
}

pub fn snf(a: &Mat) -> Snf {
    let mut d = a.clone();
    let mut u = Mat::identity(a.rows);
    let mut v = Mat::identity(a.cols);
    let n = a.rows.min(a.cols);

    for t in 0..n {
        loop {
            // pick the entry of least absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if d[(i, j)] != 0
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match best {
                Some(p) => p,
                None => return Snf { d, u, v },
            };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);

            let mut clean = true;
            for i in t + 1..d.rows {
                let q = div_round(d[(i, t)], d[(t, t)]);
                if q != 0 {
                    row_op(&mut d, &mut u, i, t, -q);
                }
                if d[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                let q = div_round(d[(t, j)], d[(t, t)]);
                if q != 0 {
                    col_op(&mut d, &mut v, j, t, -q);
                }
                if d[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let mut divides = true;
            'outer: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if d[(i, j)] % d[(t, t)] != 0 {
                        row_op(&mut d, &mut u, t, i, 1);
                        divides = false;
                        break 'outer;
                    }
                }
            }
            if divides {
                break;
            }
        }
        if d[(t, t)] < 0 {
            negate_row(&mut d, &mut u, t);
        }
    }
    Snf { d, u, v }
}

fn swap_rows(d: &mut Mat, u: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let t = d[(a, j)];
        d[(a, j)] = d[(b, j)];
        d[(b, j)] = t;
    }
    for j in 0..u.cols {
        let t = u[(a, j)];
        u[(a, j)] = u[(b, j)];
        u[(b, j)] = t;
    }
}

fn swap_cols(d: &mut Mat, v: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let t = d[(i, a)];
        d[(i, a)] = d[(i, b)];
        d[(i, b)] = t;
    }
    for i in 0..v.rows {
        let t = v[(i, a)];
        v[(i, a)] = v[(i, b)];
        v[(i, b)] = t;
    }
}

/// row a += k * row b (in both d and the row transform u)
fn row_op(d: &mut Mat, u: &mut Mat, a: usize, b: usize, k: i64) {
    for j in 0..d.cols {
        d[(a, j)] += k * d[(b, j)];
    }
    for j in 0..u.cols {
        u[(a, j)] += k * u[(b, j)];
    }
}

/// col a += k * col b (in both d and the column transform v)
fn col_op(d: &mut Mat, v: &mut Mat, a: usize, b: usize, k: i64) {
    for i in 0..d.rows {
        d[(i, a)] += k * d[(i, b)];
    }
    for i in 0..v.rows {
        v[(i, a)] += k * v[(i, b)];
    }
}

fn negate_row(d: &mut Mat, u: &mut Mat, a: usize) {
    for j in 0..d.cols {
        d[(a, j)] = -d[(a, j)];
    }
    for j in 0..u.cols {
        u[(a, j)] = -u[(a, j)];
    }
}

fn div_round(a: i64, b: i64) -> i64 {
    // rounded division keeps remainders in [-|b|/2, |b|/2]
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + r.signum() * b.signum()
    } else {
        q
    }
}

/// Basis (as columns) of the integer kernel of `a`.
pub fn kernel(a: &Mat) -> Mat {
    let s = snf(a);
    let rank = (0..a.rows.min(a.cols))
        .take_while(|&i| s.d[(i, i)] != 0)
        .count();
    let mut out = Mat::zero(a.cols, a.cols - rank);
    for (jj, j) in (rank..a.cols).enumerate() {
        for i in 0..a.cols {
            out[(i, jj)] = s.v[(i, j)];
        }
    }
    out
}

/// One integer solution of `a x = b`, if any.
pub fn solve(a: &Mat, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows, b.len());
    let s = snf(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![0i64; a.cols];
    for i in 0..a.rows {
        let d = if i < a.cols { s.d[(i, i)] } else { 0 };
        if d == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % d != 0 {
                return None;
            }
            y[i] = ub[i] / d;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Solve `a X = b` columnwise over the integers.
pub fn solve_mat(a: &Mat, b: &Mat) -> Option<Mat> {
    let mut cols = Vec::with_capacity(b.cols);
    for j in 0..b.cols {
        cols.push(solve(a, &b.col(j))?);
    }
    Some(Mat::from_cols(cols))
}

/// Canonical column Hermite normal form of the lattice spanned by the
/// columns of `a`. Zero columns are dropped; pivots are positive and the
/// entries left of a pivot are reduced into [0, pivot).
pub fn hnf(a: &Mat) -> Mat {
    let mut m = a.clone();
    let mut pivot_col = 0usize;
    for row in 0..m.rows {
        if pivot_col >= m.cols {
            break;
        }
        // gcd all columns >= pivot_col into column pivot_col at this row
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..m.cols {
                if m[(row, j)] != 0
                    && best.is_none_or(|bj| m[(row, j)].abs() < m[(row, bj)].abs())
                {
                    best = Some(j);
                }
            }
            let bj = match best {
                Some(j) => j,
                None => break,
            };
            if bj != pivot_col {
                for i in 0..m.rows {
                    let t = m[(i, bj)];
                    m[(i, bj)] = m[(i, pivot_col)];
                    m[(i, pivot_col)] = t;
                }
            }
            let mut done = true;
            for j in pivot_col + 1..m.cols {
                let q = div_round(m[(row, j)], m[(row, pivot_col)]);
                if q != 0 {
                    for i in 0..m.rows {
                        m[(i, j)] -= q * m[(i, pivot_col)];
                    }
                }
                if m[(row, j)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[(row, pivot_col)] == 0 {
            continue;
        }
        if m[(row, pivot_col)] < 0 {
            for i in 0..m.rows {
                m[(i, pivot_col)] = -m[(i, pivot_col)];
            }
        }
        // reduce the fixed earlier columns against this pivot
        let p = m[(row, pivot_col)];
        for j in 0..pivot_col {
            let q = m[(row, j)].div_euclid(p);
            if q != 0 {
                for i in 0..m.rows {
                    m[(i, j)] -= q * m[(i, pivot_col)];
                }
            }
        }
        pivot_col += 1;
    }
    m.submatrix(0, m.rows, 0, pivot_col)
}

/// Lattice equality of column spans.
pub fn same_lattice(a: &Mat, b: &Mat) -> bool {
    hnf(a) == hnf(b)
}

/// Characteristic polynomial coefficients (low degree first, monic) of a
/// small square matrix, by Laplace expansion over i64 polynomials.
pub fn charpoly(a: &Mat) -> Vec<i64> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    assert!(n <= 6, "charpoly is only meant for tiny matrices");
    // entries of xI - A as polynomials in x
    let entry = |i: usize, j: usize| -> Vec<i64> {
        if i == j {
            vec![-a[(i, j)], 1]
        } else {
            vec![-a[(i, j)]]
        }
    };
    fn pmul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut r = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        r
    }
    fn padd(a: &mut Vec<i64>, b: &[i64]) {
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (i, &y) in b.iter().enumerate() {
            a[i] += y;
        }
    }
    fn det_rec(
        rows: &[usize],
        cols: &[usize],
        entry: &dyn Fn(usize, usize) -> Vec<i64>,
    ) -> Vec<i64> {
        if rows.is_empty() {
            return vec![1];
        }
        let mut acc = vec![0i64];
        let r = rows[0];
        let rest: Vec<usize> = rows[1..].to_vec();
        for (k, &c) in cols.iter().enumerate() {
            let mut sub_cols = cols.to_vec();
            sub_cols.remove(k);
            let minor = det_rec(&rest, &sub_cols, entry);
            let mut term = pmul(&entry(r, c), &minor);
            if k % 2 == 1 {
                for t in term.iter_mut() {
                    *t = -*t;
                }
            }
            padd(&mut acc, &term);
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    let mut p = det_rec(&idx, &idx, &entry);
    p.resize(n + 1, 0);
    p
}
