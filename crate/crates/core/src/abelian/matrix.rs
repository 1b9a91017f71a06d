use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from small integer rows. All rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: usize, cols: usize, values: &[&[T]]) -> Self {
        assert_eq!(values.len(), rows, "row count mismatch");
        let mut data = Vec::with_capacity(rows * cols);
        for row in values {
            assert_eq!(row.len(), cols, "column count mismatch");
            data.extend(row.iter().map(|&v| v.into()));
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        IntMatrix { rows, cols, data }
    }

    /// A single column built from a vector.
    pub fn column(values: &[BigInt]) -> Self {
        IntMatrix::from_vec(values.len(), 1, values.to_vec())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Columns `range` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, end - start);
        for r in 0..self.rows {
            for c in start..end {
                m.set(r, c - start, self.get(r, c).clone());
            }
        }
        m
    }

    /// Rows `range` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Selects rows by index, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hconcat");
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// `[self ; other]`
    pub fn vconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch in vconcat");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diagonal(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn scaled(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v =
                        (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)).div_floor(&prev);
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = self.get_mut(i, c);
            *v = -std::mem::take(v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = self.get_mut(r, j);
            *v = -std::mem::take(v);
        }
    }

    /// Left-multiplies rows `i`, `j` by the 2×2 block `t`:
    /// `row_i <- t00 row_i + t01 row_j`, `row_j <- t10 row_i + t11 row_j`.
    pub(crate) fn transform_rows(&mut self, i: usize, j: usize, t: &Block2) {
        for c in 0..self.cols {
            let a = self.get(i, c);
            let b = self.get(j, c);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let ni = &t[0][0] * a + &t[0][1] * b;
            let nj = &t[1][0] * a + &t[1][1] * b;
            self.set(i, c, ni);
            self.set(j, c, nj);
        }
    }

    /// Right-multiplies columns `i`, `j` by the 2×2 block `t`:
    /// `col_i <- t00 col_i + t10 col_j`, `col_j <- t01 col_i + t11 col_j`.
    pub(crate) fn transform_cols(&mut self, i: usize, j: usize, t: &Block2) {
        for r in 0..self.rows {
            let a = self.get(r, i);
            let b = self.get(r, j);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let ni = &t[0][0] * a + &t[1][0] * b;
            let nj = &t[0][1] * a + &t[1][1] * b;
            self.set(r, i, ni);
            self.set(r, j, nj);
        }
    }
}

/// A 2×2 integer block acting on a pair of rows or columns.
pub(crate) type Block2 = [[BigInt; 2]; 2];

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        *out.get_mut(r, c) += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: IntMatrix) -> IntMatrix {
        &self * &rhs
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(2, 3, &[&[1, 2, 3], &[4, 5, 6]]);
        let b = a.transpose();
        let p = &a * &b;
        assert_eq!(p, IntMatrix::from_rows(2, 2, &[&[14, 32], &[32, 77]]));
    }

    #[test]
    fn empty_products_have_the_right_shape() {
        let a = IntMatrix::zeros(0, 3);
        let b = IntMatrix::zeros(3, 0);
        let ab = &a * &b;
        assert_eq!((ab.rows(), ab.cols()), (0, 0));
        let ba = &b * &a;
        assert_eq!((ba.rows(), ba.cols()), (3, 3));
        assert!(ba.is_zero());
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows(3, 3, &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.determinant(), BigInt::from(4));
        let s = IntMatrix::from_rows(2, 2, &[&[0, 1], &[1, 0]]);
        assert_eq!(s.determinant(), BigInt::from(-1));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
        let singular = IntMatrix::from_rows(2, 2, &[&[2, 4], &[1, 2]]);
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn block_transforms_match_explicit_products() {
        let a = IntMatrix::from_rows(2, 2, &[&[3, 5], &[7, 11]]);
        let t: Block2 = [
            [BigInt::from(2), BigInt::from(1)],
            [BigInt::from(1), BigInt::from(1)],
        ];
        let tm = IntMatrix::from_rows(2, 2, &[&[2, 1], &[1, 1]]);
        let mut r = a.clone();
        r.transform_rows(0, 1, &t);
        assert_eq!(r, &tm * &a);
        let mut c = a.clone();
        c.transform_cols(0, 1, &t);
        assert_eq!(c, &a * &tm);
    }
}
