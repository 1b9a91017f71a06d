//! Gaussian elimination over ℚ and 𝔽ₚ.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::AbelianError;

/// Arithmetic of a field whose elements are plain values.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn embed(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// The prime field 𝔽ₚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AbelianError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(AbelianError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn embed(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = *a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }
}

/// Dense matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_int(field: &F, m: &IntMatrix) -> Self {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            data.extend(m.row(r).iter().map(|v| field.embed(v)));
        }
        FieldMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn apply(&self, field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = field.zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !field.is_zero(a) && !field.is_zero(x) {
                        acc = field.add(&acc, &field.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, field: &F, rhs: &FieldMatrix<F>) -> FieldMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = FieldMatrix::zeros(field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !field.is_zero(b) {
                        let v = field.add(out.get(r, c), &field.mul(a, b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.data.iter().all(|v| field.is_zero(v))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, field: &F) -> (FieldMatrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = field.inv(m.get(row, col));
            for c in col..m.cols {
                let v = field.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = field.sub(m.get(r, c), &field.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the null space, as vectors.
    pub fn kernel_basis(&self, field: &F) -> Vec<Vec<F::Elem>> {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }

    /// A solution of `self · x = b`, if any.
    pub fn solve(&self, field: &F, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = FieldMatrix::zeros(field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

/// `dim ker(d_out) − rank(d_in)` over the field, without building a basis.
pub fn cohomology_dimension<F: Field>(field: &F, d_out: &IntMatrix, d_in: &IntMatrix) -> usize {
    let n = d_out.cols();
    let rank_out = FieldMatrix::from_int(field, d_out).rank(field);
    let rank_in = FieldMatrix::from_int(field, d_in).rank(field);
    n - rank_out - rank_in
}

/// `ker(d_out) / im(d_in)` over a field with an explicit basis of classes.
#[derive(Clone, Debug)]
pub struct VectorCohomology<F: Field> {
    field: F,
    basis: Vec<Vec<F::Elem>>,
    /// `[basis | independent boundaries]`, full column rank.
    frame: FieldMatrix<F>,
    d_out: FieldMatrix<F>,
}

impl<F: Field> VectorCohomology<F> {
    pub fn new(field: F, d_out: &IntMatrix, d_in: &IntMatrix) -> Result<Self, AbelianError> {
        if d_out.cols() != d_in.rows() {
            return Err(AbelianError::DimensionMismatch {
                expected: (d_out.cols(), d_in.cols()),
                found: (d_in.rows(), d_in.cols()),
            });
        }
        let out = FieldMatrix::from_int(&field, d_out);
        let inn = FieldMatrix::from_int(&field, d_in);
        if !out.mul(&field, &inn).is_zero(&field) {
            return Err(AbelianError::CompositionNotZero);
        }
        let n = d_out.cols();
        let kernel = out.kernel_basis(&field);
        // Boundaries first, then kernel vectors; the kernel vectors that become pivots
        // complete a basis of the boundaries to one of the cocycles.
        let mut columns: Vec<Vec<F::Elem>> = (0..inn.cols()).map(|c| inn.col(c)).collect();
        let boundary_count = columns.len();
        columns.extend(kernel.iter().cloned());
        let (_, pivots) = FieldMatrix::from_columns(&field, n, &columns).rref(&field);
        let independent_boundaries: Vec<Vec<F::Elem>> = pivots
            .iter()
            .filter(|&&p| p < boundary_count)
            .map(|&p| columns[p].clone())
            .collect();
        let basis: Vec<Vec<F::Elem>> = pivots
            .iter()
            .filter(|&&p| p >= boundary_count)
            .map(|&p| columns[p].clone())
            .collect();
        let frame_cols: Vec<Vec<F::Elem>> = basis
            .iter()
            .chain(&independent_boundaries)
            .cloned()
            .collect();
        let frame = FieldMatrix::from_columns(&field, n, &frame_cols);
        Ok(VectorCohomology {
            field,
            basis,
            frame,
            d_out: out,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn cochain_len(&self) -> usize {
        self.frame.rows()
    }

    pub fn classify(&self, cocycle: &[F::Elem]) -> Result<Vec<F::Elem>, AbelianError> {
        if self
            .d_out
            .apply(&self.field, cocycle)
            .iter()
            .any(|v| !self.field.is_zero(v))
        {
            return Err(AbelianError::NotACocycle);
        }
        let x = self
            .frame
            .solve(&self.field, cocycle)
            .expect("cocycles lie in the span of the frame");
        Ok(x[..self.basis.len()].to_vec())
    }

    /// Linear map on classes induced by an integer cochain map.
    pub fn map_to(
        &self,
        target: &VectorCohomology<F>,
        cochain_map: &IntMatrix,
    ) -> Result<FieldMatrix<F>, AbelianError> {
        if cochain_map.cols() != self.cochain_len() || cochain_map.rows() != target.cochain_len() {
            return Err(AbelianError::DimensionMismatch {
                expected: (target.cochain_len(), self.cochain_len()),
                found: (cochain_map.rows(), cochain_map.cols()),
            });
        }
        let m = FieldMatrix::from_int(&self.field, cochain_map);
        let columns = self
            .basis
            .iter()
            .map(|b| target.classify(&m.apply(&self.field, b)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldMatrix::from_columns(
            &self.field,
            target.dimension(),
            &columns,
        ))
    }
}

/// Exactness of `A --f--> B --g--> C` for linear maps: `g f = 0` and `rank f = dim ker g`.
/// Returns `(exact, dim im f, dim ker g)`.
pub fn linear_exactness<F: Field>(
    field: &F,
    f: &FieldMatrix<F>,
    g: &FieldMatrix<F>,
) -> Result<(bool, usize, usize), AbelianError> {
    if f.rows() != g.cols() {
        return Err(AbelianError::IncompatibleMaps);
    }
    if !g.mul(field, f).is_zero(field) {
        return Err(AbelianError::CompositionNotZero);
    }
    let image = f.rank(field);
    let kernel = g.cols() - g.rank(field);
    Ok((image == kernel, image, kernel))
}
