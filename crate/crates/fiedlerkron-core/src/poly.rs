//! Matrix polynomials and block pencils `lambda B1 + B0`.

use alloc::vec::Vec;

use crate::err;
use crate::error::Result;
use crate::matrix::{
    approx_eq, block, block_transpose, grid, is_zero, zeros, BlockPermutation, Mat, C64,
};

/// Matrix polynomial `sum_i lambda^i A_i` of a fixed grade.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    rows: usize,
    cols: usize,
    coeffs: Vec<Mat>,
}

impl MatrixPolynomial {
    /// Builds a polynomial from `A_0, ..., A_k`; the grade is `k = coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Mat>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| err!(InvalidSpec, "a polynomial needs at least one coefficient"))?;
        let (rows, cols) = first.shape();
        if coeffs.iter().any(|c| c.shape() != (rows, cols)) {
            return Err(err!(Dimension, "coefficients must share one shape"));
        }
        Ok(Self { rows, cols, coeffs })
    }

    /// Grade `k`.
    pub fn grade(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Row dimension.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column dimension.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Coefficient `A_i`.
    pub fn coeff(&self, i: usize) -> &Mat {
        &self.coeffs[i]
    }

    /// All coefficients in increasing degree.
    pub fn coeffs(&self) -> &[Mat] {
        &self.coeffs
    }

    /// True when the polynomial is square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Evaluates at `lambda` with Horner's rule.
    pub fn eval(&self, lambda: C64) -> Mat {
        let mut acc = self.coeffs[self.grade()].clone();
        for c in self.coeffs[..self.grade()].iter().rev() {
            acc = acc * lambda + c;
        }
        acc
    }

    /// Reversal with respect to grade `k`: `lambda^k P(1/lambda)`.
    ///
    /// When `k` exceeds the grade the missing top coefficients are zero.
    pub fn reversal(&self, k: usize) -> Result<Self> {
        if k < self.grade() {
            return Err(err!(InvalidSpec, "reversal grade {k} below grade {}", self.grade()));
        }
        let coeffs = (0..=k)
            .map(|i| {
                self.coeffs
                    .get(k - i)
                    .cloned()
                    .unwrap_or_else(|| zeros(self.rows, self.cols))
            })
            .collect();
        Self::new(coeffs)
    }

    /// Transposed polynomial `P(lambda)^T`.
    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            coeffs: self.coeffs.iter().map(|c| c.transpose()).collect(),
        }
    }

    /// Polynomial with coefficients `A_lo, ..., A_hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi || hi > self.grade() {
            return Err(err!(OutOfRange, "coefficient range {lo}..={hi}"));
        }
        Self::new(self.coeffs[lo..=hi].to_vec())
    }

    /// Polynomial with `B_i = f(i, A_i)`.
    pub fn map(&self, f: impl Fn(usize, &Mat) -> Mat) -> Result<Self> {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| f(i, c)).collect())
    }
}

/// Block pencil `lambda B1 + B0` with square `n x n` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPencil {
    /// Coefficient of `lambda`.
    pub b1: Mat,
    /// Constant coefficient.
    pub b0: Mat,
    /// Block size.
    pub n: usize,
}

impl BlockPencil {
    /// Validates that both coefficients share a shape tiled by `n x n` blocks.
    pub fn new(b1: Mat, b0: Mat, n: usize) -> Result<Self> {
        if b1.shape() != b0.shape() {
            return Err(err!(Dimension, "pencil coefficients differ in shape"));
        }
        grid(&b1, n)?;
        Ok(Self { b1, b0, n })
    }

    /// Zero pencil with the given grid.
    pub fn zeros(rows: usize, cols: usize, n: usize) -> Self {
        Self { b1: zeros(rows * n, cols * n), b0: zeros(rows * n, cols * n), n }
    }

    /// Number of block rows.
    pub fn grid_rows(&self) -> usize {
        self.b1.nrows() / self.n
    }

    /// Number of block columns.
    pub fn grid_cols(&self) -> usize {
        self.b1.ncols() / self.n
    }

    /// Block `(i, j)` (0-based) as the pair `(lambda-coefficient, constant)`.
    pub fn block(&self, i: usize, j: usize) -> (Mat, Mat) {
        (block(&self.b1, self.n, i, j), block(&self.b0, self.n, i, j))
    }

    /// True when block `(i, j)` is identically zero.
    pub fn block_is_zero(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.block(i, j);
        is_zero(&a) && is_zero(&b)
    }

    /// Evaluates at `lambda`.
    pub fn eval(&self, lambda: C64) -> Mat {
        &self.b1 * lambda + &self.b0
    }

    /// Sub-pencil on the given block rows and columns (0-based, in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let n = self.n;
        let pick = |m: &Mat| {
            let mut out = zeros(rows.len() * n, cols.len() * n);
            for (a, &i) in rows.iter().enumerate() {
                for (b, &j) in cols.iter().enumerate() {
                    out.view_mut((a * n, b * n), (n, n))
                        .copy_from(&m.view((i * n, j * n), (n, n)));
                }
            }
            out
        };
        Self { b1: pick(&self.b1), b0: pick(&self.b0), n }
    }

    /// `P_l^T L P_r`.
    pub fn permute(&self, left: &BlockPermutation, right: &BlockPermutation) -> Self {
        let n = self.n;
        let b1 = right.permute_cols(&left.permute_rows(&self.b1, n), n);
        let b0 = right.permute_cols(&left.permute_rows(&self.b0, n), n);
        Self { b1, b0, n }
    }

    /// Reversal `B1 + lambda B0`.
    pub fn rev(&self) -> Self {
        Self { b1: self.b0.clone(), b0: self.b1.clone(), n: self.n }
    }

    /// Negated pencil.
    pub fn neg(&self) -> Self {
        Self { b1: -&self.b1, b0: -&self.b0, n: self.n }
    }

    /// Block transpose of both coefficients.
    pub fn block_transpose(&self) -> Self {
        Self {
            b1: block_transpose(&self.b1, self.n).expect("pencil is a block grid"),
            b0: block_transpose(&self.b0, self.n).expect("pencil is a block grid"),
            n: self.n,
        }
    }

    /// Equality of both coefficients up to the tolerance of [`approx_eq`].
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && approx_eq(&self.b1, &other.b1, tol) && approx_eq(&self.b0, &other.b0, tol)
    }

    /// The pencil read as a grade-one polynomial `B0 + lambda B1`.
    pub fn as_polynomial(&self) -> MatrixPolynomial {
        MatrixPolynomial::new(alloc::vec![self.b0.clone(), self.b1.clone()])
            .expect("coefficients share a shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{from_real_rows, identity, re};

    fn scalar(x: f64) -> Mat {
        from_real_rows(1, 1, &[x])
    }

    #[test]
    fn horner_matches_power_sum() {
        let p = MatrixPolynomial::new(alloc::vec![scalar(1.0), scalar(-2.0), scalar(3.0)]).unwrap();
        let l = C64::new(0.5, -1.5);
        let direct = re(1.0) - l * 2.0 + l * l * 3.0;
        assert!((p.eval(l)[(0, 0)] - direct).norm() < 1e-14);
    }

    #[test]
    fn reversal_pads_with_zeros() {
        let p = MatrixPolynomial::new(alloc::vec![scalar(1.0), scalar(2.0)]).unwrap();
        let r = p.reversal(3).unwrap();
        assert_eq!(r.grade(), 3);
        assert_eq!(r.coeff(0), &scalar(0.0));
        assert_eq!(r.coeff(2), &scalar(2.0));
        assert_eq!(r.coeff(3), &scalar(1.0));
        assert!(p.reversal(0).is_err());
    }

    #[test]
    fn pencil_select_and_permute_agree() {
        let b1 = Mat::from_fn(4, 4, |i, j| re((i * 4 + j) as f64));
        let pencil = BlockPencil::new(b1, identity(4), 2).unwrap();
        let swap = BlockPermutation::new(alloc::vec![2, 1]).unwrap();
        let permuted = pencil.permute(&swap, &BlockPermutation::identity(2));
        assert_eq!(permuted, pencil.select(&[1, 0], &[0, 1]));
    }
}
