//! Dense integer matrices with arbitrary-precision entries, Smith normal
//! form, and the integer row-space solvers built on it.
//!
//! Vectors are treated as rows whenever a matrix is read as a list of
//! generators (relations, kernel bases); homomorphism matrices elsewhere in
//! the crate act on column vectors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Option<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return None;
            }
            data.extend(r);
        }
        Some(IntegerMatrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics when the rows are ragged.
    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += xi * a;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntegerMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&IntegerMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &IntegerMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Drops rows that are entirely zero.
    pub fn nonzero_rows(&self) -> Self {
        let rows = (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|x| !x.is_zero()))
            .map(|i| self.row(i).to_vec())
            .collect();
        Self::from_rows(self.cols, rows).unwrap()
    }

    /// Determinant by fraction-free elimination (Bareiss). Square only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

/// Result of a Smith normal form computation: `u * m * v = d`.
///
/// The inverses of the unimodular factors are tracked alongside so that
/// changes of basis can be undone without a second elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form by unimodular row and column operations.
///
/// Pivots are chosen with the smallest nonzero absolute value in the
/// remaining block.
pub fn smith_normal_form(m: &IntegerMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut u_inv = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);
    let mut v_inv = IntegerMatrix::identity(c);
    let mut rank = 0;

    'outer: for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                u_inv.add_col_multiple(t, i, &-&q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                v_inv.add_row_multiple(t, j, &-&q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let p = a.get(t, t).clone();
            let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
            if let Some(i) = offending {
                let one = BigInt::one();
                a.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                u_inv.add_col_multiple(i, t, &-&one);
                continue;
            }
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank = t + 1;
    }
    Smith {
        u,
        u_inv,
        d: a,
        v,
        v_inv,
        rank,
    }
}

/// Solves `x * a = b` over the integers using a precomputed Smith form of `a`.
pub fn solve_left_with(smith: &Smith, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = smith.u.rows;
    let c = smith.v.left_apply(b);
    let mut y = vec![BigInt::zero(); rows];
    for (j, cj) in c.iter().enumerate() {
        if j < smith.rank {
            let d = smith.d.get(j, j);
            let (q, rem) = cj.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[j] = q;
        } else if !cj.is_zero() {
            return None;
        }
    }
    Some(smith.u.left_apply(&y))
}

/// Solves `x * a = b` over the integers.
pub fn solve_left(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.cols, b.len(), "solve_left dimension mismatch");
    solve_left_with(&smith_normal_form(a), b)
}

/// A basis (as rows) of `{ z : z * a = 0 }`.
pub fn left_kernel(a: &IntegerMatrix) -> IntegerMatrix {
    let s = smith_normal_form(a);
    s.u.submatrix(s.rank..a.rows, 0..a.rows)
}

/// A basis of the lattice spanned by the rows of `a`.
pub fn row_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let s = smith_normal_form(a);
    s.u.mul(a).submatrix(0..s.rank, 0..a.cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IntegerMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = IntegerMatrix::from_i64(2, &[&[2, 0], &[0, 3]]);
        let s = check_smith(&m);
        assert_eq!(s.invariant_factors(), vec![int(1), int(6)]);
        assert_eq!(s.u.determinant().abs(), int(1));
        assert_eq!(s.v.determinant().abs(), int(1));
    }

    #[test]
    fn zero_one_by_one() {
        let s = check_smith(&IntegerMatrix::zeros(1, 1));
        assert_eq!(s.d, IntegerMatrix::zeros(1, 1));
        assert_eq!(s.u, IntegerMatrix::identity(1));
        assert_eq!(s.v, IntegerMatrix::identity(1));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check_smith(&IntegerMatrix::identity(2));
        assert_eq!(s.d, IntegerMatrix::identity(2));
    }

    #[test]
    fn rectangular_and_empty() {
        check_smith(&IntegerMatrix::from_i64(3, &[&[4, 6, 8], &[2, 2, 2]]));
        check_smith(&IntegerMatrix::zeros(0, 3));
        check_smith(&IntegerMatrix::zeros(2, 0));
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntegerMatrix::from_i64(2, &[&[2, 0], &[0, 4]]);
        assert_eq!(solve_left(&a, &[int(4), int(8)]), Some(vec![int(2), int(2)]));
        assert_eq!(solve_left(&a, &[int(1), int(0)]), None);
        let k = left_kernel(&IntegerMatrix::from_i64(1, &[&[2], &[3]]));
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&IntegerMatrix::from_i64(1, &[&[2], &[3]])).is_zero());
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntegerMatrix::from_i64(3, &[&[2, -1, 0], &[1, 3, 2], &[0, 1, 4]]);
        assert_eq!(m.determinant(), int(24));
    }
}
