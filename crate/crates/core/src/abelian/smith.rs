//! Smith normal form over the integers.
//!
//! The decomposition is `A = U · S · V` with `U`, `V` unimodular and `S`
//! diagonal, nonnegative, with each diagonal entry dividing the next and all
//! zeros last. The inverses of `U` and `V` are tracked alongside, so kernels,
//! images and integer solutions can be read off without a second elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Block2, IntMatrix};

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    u: IntMatrix,
    s: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    /// Left unimodular factor (rows × rows).
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    /// Diagonal factor, same shape as the input.
    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    /// Right unimodular factor (cols × cols).
    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inv
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn source_rows(&self) -> usize {
        self.s.rows()
    }

    pub fn source_cols(&self) -> usize {
        self.s.cols()
    }

    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Basis of the integer kernel `{x : A x = 0}` as columns (cols × (cols - rank)).
    pub fn kernel_basis(&self) -> IntMatrix {
        self.v_inv.column_range(self.rank, self.s.cols())
    }

    /// Left inverse of [`kernel_basis`](Self::kernel_basis): maps a kernel vector to its
    /// coordinates in that basis.
    pub fn kernel_coordinates(&self) -> IntMatrix {
        self.v.row_range(self.rank, self.s.cols())
    }

    /// Integer solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.s.rows(), "right-hand side length mismatch");
        let w = self.u_inv.apply(b);
        let mut y = vec![BigInt::zero(); self.s.cols()];
        for (i, wi) in w.iter().enumerate() {
            if i < self.rank {
                let d = self.s.get(i, i);
                let (q, r) = wi.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.v_inv.apply(&y))
    }
}

/// Computes the Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    // Invariant: p · a · q = s, with p_inv = p⁻¹ and q_inv = q⁻¹.
    let mut p = IntMatrix::identity(m);
    let mut p_inv = IntMatrix::identity(m);
    let mut q = IntMatrix::identity(n);
    let mut q_inv = IntMatrix::identity(n);

    let mut rank = 0;
    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&s, t) else {
            break;
        };
        if pi != t {
            s.swap_rows(t, pi);
            p.swap_rows(t, pi);
            p_inv.swap_cols(t, pi);
        }
        if pj != t {
            s.swap_cols(t, pj);
            q.swap_cols(t, pj);
            q_inv.swap_rows(t, pj);
        }

        loop {
            for i in t + 1..m {
                if !s.get(i, t).is_zero() {
                    let (op, inv) = bezout_block(s.get(t, t), s.get(i, t));
                    s.transform_rows(t, i, &op);
                    p.transform_rows(t, i, &op);
                    p_inv.transform_cols(t, i, &inv);
                }
            }
            for j in t + 1..n {
                if !s.get(t, j).is_zero() {
                    let (op, inv) = bezout_block(s.get(t, t), s.get(t, j));
                    // Column form: col_t <- x col_t + y col_j, col_j <- -b/g col_t + a/g col_j,
                    // which is right-multiplication by the transpose of the row block.
                    let op_t = transpose_block(&op);
                    let inv_t = transpose_block(&inv);
                    s.transform_cols(t, j, &op_t);
                    q.transform_cols(t, j, &op_t);
                    q_inv.transform_rows(t, j, &inv_t);
                }
            }
            if (t + 1..m).any(|i| !s.get(i, t).is_zero()) {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row and reduce again.
            let pivot = s.get(t, t).clone();
            let offending =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let op = add_block();
                    let inv = sub_block();
                    s.transform_rows(t, i, &op);
                    p.transform_rows(t, i, &op);
                    p_inv.transform_cols(t, i, &inv);
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            p.negate_row(t);
            p_inv.negate_col(t);
        }
        rank += 1;
    }

    SmithDecomposition {
        u: p_inv,
        s,
        v: q_inv,
        u_inv: p,
        v_inv: q,
        rank,
    }
}

/// Position of a nonzero entry of least absolute value in the lower-right block from `t`.
fn smallest_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                let unit = abs.is_one();
                best = Some((i, j, abs));
                if unit {
                    let (i, j, _) = best.unwrap();
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Unimodular block sending `(a, b)` to `(g, 0)` with `g = gcd(a, b)` (up to sign), and its inverse.
fn bezout_block(a: &BigInt, b: &BigInt) -> (Block2, Block2) {
    if b.is_multiple_of(a) {
        let k = b / a;
        let op = [[BigInt::one(), BigInt::zero()], [-&k, BigInt::one()]];
        let inv = [[BigInt::one(), BigInt::zero()], [k, BigInt::one()]];
        return (op, inv);
    }
    let e = a.extended_gcd(b);
    let g = e.gcd;
    let (x, y) = (e.x, e.y);
    let ag = a / &g;
    let bg = b / &g;
    // det = (x·a + y·b) / g = 1
    let op = [[x.clone(), y.clone()], [-&bg, ag.clone()]];
    let inv = [[ag, -y], [bg, x]];
    (op, inv)
}

fn transpose_block(t: &Block2) -> Block2 {
    [
        [t[0][0].clone(), t[1][0].clone()],
        [t[0][1].clone(), t[1][1].clone()],
    ]
}

fn add_block() -> Block2 {
    [
        [BigInt::one(), BigInt::one()],
        [BigInt::zero(), BigInt::one()],
    ]
}

fn sub_block() -> Block2 {
    [
        [BigInt::one(), -BigInt::one()],
        [BigInt::zero(), BigInt::one()],
    ]
}
