//! Wing pencils `K = B (L_s (x) I_n)` and minimal-basis tests.

use alloc::vec::Vec;

use crate::err;
use crate::error::Result;
use crate::matrix::{block, identity, is_nonsingular, max_abs, rank, set_block, zeros, Mat, C64};
use crate::poly::{BlockPencil, MatrixPolynomial};

/// `L_s(lambda) (x) I_n`: block `(i, i)` is `-I` and block `(i, i+1)` is `lambda I`.
pub fn l_pencil(s: usize, n: usize) -> BlockPencil {
    let mut out = BlockPencil::zeros(s, s + 1, n);
    let id = identity(n);
    for i in 0..s {
        set_block(&mut out.b0, n, i, i, &-&id);
        set_block(&mut out.b1, n, i, i + 1, &id);
    }
    out
}

/// `Lambda_s(lambda) (x) I_n = [lambda^s I, ..., lambda I, I]` as an `n x (s+1)n` polynomial.
pub fn lambda_row(s: usize, n: usize) -> MatrixPolynomial {
    let coeffs = (0..=s)
        .map(|d| {
            let mut c = zeros(n, (s + 1) * n);
            set_block(&mut c, n, 0, s - d, &identity(n));
            c
        })
        .collect();
    MatrixPolynomial::new(coeffs).expect("coefficients share a shape")
}

pub(crate) fn scale_of(k: &BlockPencil) -> f64 {
    1.0f64.max(max_abs(&k.b1)).max(max_abs(&k.b0))
}

pub(crate) fn small(m: &Mat, bound: f64) -> bool {
    m.iter().all(|z| z.norm() <= bound)
}

/// True when block row `i` of `k` satisfies the wing equations over the given block columns.
///
/// The equations are `[K1]_{1} = 0`, `[K1]_{j} = -[K0]_{j-1}` and `[K0]_{last} = 0`.
pub(crate) fn row_is_wing(k: &BlockPencil, i: usize, cols: &[usize], bound: f64) -> bool {
    let n = k.n;
    let Some((&first, _)) = cols.split_first() else {
        return true;
    };
    if !small(&block(&k.b1, n, i, first), bound) {
        return false;
    }
    for w in cols.windows(2) {
        let lam = block(&k.b1, n, i, w[1]);
        let prev = block(&k.b0, n, i, w[0]);
        if !small(&(lam + prev), bound) {
            return false;
        }
    }
    small(&block(&k.b0, n, i, *cols.last().expect("nonempty")), bound)
}

fn check_wing_shape(k: &BlockPencil) -> Result<usize> {
    let s = k.grid_rows();
    if k.grid_cols() != s + 1 {
        return Err(err!(Dimension, "wing pencil must have an s x (s+1) grid, got {} x {}", s, k.grid_cols()));
    }
    Ok(s)
}

/// True when `K (Lambda_s^T (x) I_n) = 0`, up to `tol` relative to the largest entry.
pub fn is_wing(k: &BlockPencil, tol: f64) -> bool {
    let Ok(s) = check_wing_shape(k) else {
        return false;
    };
    let bound = tol * scale_of(k);
    let cols: Vec<usize> = (0..=s).collect();
    (0..s).all(|i| row_is_wing(k, i, &cols, bound))
}

/// The factor `B` with `K = B (L_s (x) I_n)`, read as `-[K0]` on the first `s` block columns.
pub fn wing_factor(k: &BlockPencil, tol: f64) -> Result<Mat> {
    let s = check_wing_shape(k)?;
    if !is_wing(k, tol) {
        return Err(err!(Derivation, "pencil violates the wing equations"));
    }
    Ok(-k.b0.view((0, 0), (s * k.n, s * k.n)).into_owned())
}

/// `B (L_s (x) I_n)` for an `sn x sn` factor.
pub fn wing_from_factor(b: &Mat, n: usize) -> Result<BlockPencil> {
    if !b.nrows().is_multiple_of(n) || !b.ncols().is_multiple_of(n) {
        return Err(err!(Dimension, "factor is not a block matrix"));
    }
    let s = b.ncols() / n;
    let l = l_pencil(s, n);
    BlockPencil::new(b * &l.b1, b * &l.b0, n)
}

/// Minimal-basis test for a wing pencil: its factor is nonsingular.
pub fn is_minimal_basis_wing(k: &BlockPencil, tol: f64) -> Result<bool> {
    Ok(is_nonsingular(&wing_factor(k, tol)?))
}

/// Highest-row-degree coefficient matrix: row `i` is the coefficient of `lambda^{d_i}` in row `i`.
pub fn highest_row_degree_coefficient(q: &MatrixPolynomial) -> Mat {
    let mut out = zeros(q.rows(), q.cols());
    for i in 0..q.rows() {
        let top = (0..=q.grade())
            .rev()
            .find(|&d| q.coeff(d).row(i).iter().any(|z| *z != C64::new(0.0, 0.0)));
        if let Some(d) = top {
            out.row_mut(i).copy_from(&q.coeff(d).row(i));
        }
    }
    out
}

/// Sample points used by [`is_minimal_basis_numeric`]: eight points on the annulus `0.5 <= |z| <= 2`.
///
/// Radii are log-spaced and angles follow golden-ratio increments, so no point is real.
pub fn annulus_points() -> [C64; 8] {
    const PHI: f64 = 0.618_033_988_749_894_9;
    core::array::from_fn(|j| {
        let r = 0.5 * libm::pow(4.0, (j as f64 + 0.5) / 8.0);
        let turns = 0.1 + PHI * (j as f64 + 1.0);
        C64::from_polar(r, 2.0 * core::f64::consts::PI * (turns - libm::floor(turns)))
    })
}

/// Probabilistic minimal-basis test for an `m x n` polynomial with `m <= n`.
///
/// Requires full row rank of `Q(z)` at every sample point and of the highest-row-degree
/// coefficient matrix.
pub fn is_minimal_basis_numeric(q: &MatrixPolynomial) -> bool {
    let m = q.rows();
    if m > q.cols() {
        return false;
    }
    rank(&highest_row_degree_coefficient(q)) == m
        && annulus_points().iter().all(|&z| rank(&q.eval(z)) == m)
}
