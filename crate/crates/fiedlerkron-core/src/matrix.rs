//! Dense complex matrices viewed as grids of `n x n` blocks.
//!
//! All storage is complex. Real data is embedded with zero imaginary part,
//! which keeps integer-valued inputs exact through every block operation.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::err;
use crate::error::Result;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Dense complex matrix.
pub type Mat = DMatrix<C64>;

/// Embeds a real scalar.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Zero matrix of the given shape.
pub fn zeros(rows: usize, cols: usize) -> Mat {
    Mat::zeros(rows, cols)
}

/// Identity matrix of order `n`.
pub fn identity(n: usize) -> Mat {
    Mat::identity(n, n)
}

/// Builds a matrix from real entries listed in row-major order.
pub fn from_real_rows(rows: usize, cols: usize, data: &[f64]) -> Mat {
    assert_eq!(data.len(), rows * cols, "entry count must match shape");
    Mat::from_fn(rows, cols, |i, j| re(data[i * cols + j]))
}

/// Copies the block at grid position `(i, j)` (0-based) of a grid with block size `n`.
pub fn block(m: &Mat, n: usize, i: usize, j: usize) -> Mat {
    m.view((i * n, j * n), (n, n)).into_owned()
}

/// Overwrites the block at grid position `(i, j)` (0-based).
pub fn set_block(m: &mut Mat, n: usize, i: usize, j: usize, b: &Mat) {
    m.view_mut((i * n, j * n), (n, n)).copy_from(b);
}

/// Adds `b` to the block at grid position `(i, j)` (0-based).
pub fn add_block(m: &mut Mat, n: usize, i: usize, j: usize, b: &Mat) {
    let mut v = m.view_mut((i * n, j * n), (n, n));
    v += b;
}

/// Number of block rows and block columns, or an error when `n` does not divide the shape.
pub fn grid(m: &Mat, n: usize) -> Result<(usize, usize)> {
    if n == 0 || !m.nrows().is_multiple_of(n) || !m.ncols().is_multiple_of(n) {
        return Err(err!(
            Dimension,
            "{}x{} matrix is not a grid of {n}x{n} blocks",
            m.nrows(),
            m.ncols()
        ));
    }
    Ok((m.nrows() / n, m.ncols() / n))
}

/// Transposes the block grid while leaving each block untouched.
pub fn block_transpose(m: &Mat, n: usize) -> Result<Mat> {
    let (r, c) = grid(m, n)?;
    let mut out = zeros(c * n, r * n);
    for i in 0..r {
        for j in 0..c {
            set_block(&mut out, n, j, i, &block(m, n, i, j));
        }
    }
    Ok(out)
}

/// Block diagonal matrix with the given diagonal blocks.
pub fn block_diag(blocks: &[&Mat]) -> Mat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), (b.nrows(), b.ncols())).copy_from(*b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

/// Largest entry modulus.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// True when every entry is exactly zero.
pub fn is_zero(m: &Mat) -> bool {
    m.iter().all(|z| z.re == 0.0 && z.im == 0.0)
}

/// Equality up to `tol * max(1, max|a|, max|b|)` entrywise.
///
/// With `tol = 0` this is exact equality.
pub fn approx_eq(a: &Mat, b: &Mat, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let scale = 1.0f64.max(max_abs(a)).max(max_abs(b));
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol * scale)
}

/// Inverse of a square matrix, or `Singular` when it does not exist.
pub fn inverse(m: &Mat) -> Result<Mat> {
    if m.nrows() != m.ncols() {
        return Err(err!(Dimension, "cannot invert a {}x{} matrix", m.nrows(), m.ncols()));
    }
    m.clone()
        .try_inverse()
        .ok_or_else(|| err!(Singular, "matrix of order {} has no inverse", m.nrows()))
}

/// Numerical rank with threshold `max(rows, cols) * eps * sigma_max`.
pub fn rank(m: &Mat) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    if top == 0.0 {
        return 0;
    }
    let tol = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * top;
    sv.iter().filter(|&&s| s > tol).count()
}

/// True when a square matrix has full numerical rank; the empty matrix counts as nonsingular.
pub fn is_nonsingular(m: &Mat) -> bool {
    m.nrows() == m.ncols() && rank(m) == m.nrows()
}

/// Block permutation `[e_{c_1} (x) I, ..., e_{c_k} (x) I]` given by a 1-based permutation `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPermutation {
    perm: Vec<usize>,
}

impl BlockPermutation {
    /// Validates that `perm` is a permutation of `1..=k`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let k = perm.len();
        let mut seen = alloc::vec![false; k];
        for &c in &perm {
            if c == 0 || c > k || seen[c - 1] {
                return Err(err!(InvalidSpec, "{perm:?} is not a permutation of 1..={k}"));
            }
            seen[c - 1] = true;
        }
        Ok(Self { perm })
    }

    /// Identity on `k` blocks.
    pub fn identity(k: usize) -> Self {
        Self { perm: (1..=k).collect() }
    }

    /// Block reversal `R_k`.
    pub fn reversal(k: usize) -> Self {
        Self { perm: (1..=k).rev().collect() }
    }

    /// The 1-based permutation vector.
    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    /// True for the permutation on zero blocks.
    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.perm.len()];
        for (i, &c) in self.perm.iter().enumerate() {
            inv[c - 1] = i + 1;
        }
        Self { perm: inv }
    }

    /// `R P R`, the permutation conjugated by block reversal.
    pub fn conjugate_by_reversal(&self) -> Self {
        let k = self.perm.len();
        Self {
            perm: (0..k).map(|j| k + 1 - self.perm[k - 1 - j]).collect(),
        }
    }

    /// The `kn x kn` permutation matrix.
    pub fn matrix(&self, n: usize) -> Mat {
        let k = self.perm.len();
        let mut out = zeros(k * n, k * n);
        let id = identity(n);
        for (i, &c) in self.perm.iter().enumerate() {
            set_block(&mut out, n, c - 1, i, &id);
        }
        out
    }

    /// `P^T M`: block row `i` of the result is block row `c_i` of `m`.
    pub fn permute_rows(&self, m: &Mat, n: usize) -> Mat {
        let mut out = zeros(m.nrows(), m.ncols());
        for (i, &c) in self.perm.iter().enumerate() {
            out.view_mut((i * n, 0), (n, m.ncols()))
                .copy_from(&m.view(((c - 1) * n, 0), (n, m.ncols())));
        }
        out
    }

    /// `M P`: block column `j` of the result is block column `c_j` of `m`.
    pub fn permute_cols(&self, m: &Mat, n: usize) -> Mat {
        let mut out = zeros(m.nrows(), m.ncols());
        for (j, &c) in self.perm.iter().enumerate() {
            out.view_mut((0, j * n), (m.nrows(), n))
                .copy_from(&m.view((0, (c - 1) * n), (m.nrows(), n)));
        }
        out
    }
}

/// Block permutation matrix for a 1-based permutation `c` with block size `n`.
pub fn block_permutation_matrix(c: &[usize], n: usize) -> Result<Mat> {
    Ok(BlockPermutation::new(c.to_vec())?.matrix(n))
}

/// Block reversal `R_k (x) I_n`.
pub fn block_sip(k: usize, n: usize) -> Mat {
    BlockPermutation::reversal(k).matrix(n)
}
