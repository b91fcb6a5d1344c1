//! Antidiagonal sums of block pencils and the polynomial a body represents.

use alloc::vec::Vec;

use crate::err;
use crate::error::Result;
use crate::matrix::{approx_eq, block, zeros, Mat};
use crate::poly::{BlockPencil, MatrixPolynomial};

use super::wing::lambda_row;

/// `AS(M, s) = sum_{i+j=k+2-s} [M1]_{ij} + sum_{i+j=k+1-s} [M0]_{ij}` with 1-based block indices.
///
/// `k` must satisfy `k = rows + cols - 1` for the grid of `m` and `0 <= s <= k`.
pub fn antidiagonal_sum(m: &BlockPencil, s: usize, k: usize) -> Result<Mat> {
    let (r, c, n) = (m.grid_rows(), m.grid_cols(), m.n);
    if r + c != k + 1 {
        return Err(err!(Dimension, "a {r} x {c} grid does not match grade {k}"));
    }
    if s > k {
        return Err(err!(OutOfRange, "s = {s} exceeds k = {k}"));
    }
    let mut acc = zeros(n, n);
    for i in 1..=r {
        for j in 1..=c {
            if i + j + s == k + 2 {
                acc += block(&m.b1, n, i - 1, j - 1);
            }
            if i + j + s == k + 1 {
                acc += block(&m.b0, n, i - 1, j - 1);
            }
        }
    }
    Ok(acc)
}

/// AS condition `AS(M, s) = A_s` for `s = 0:k`, compared with [`approx_eq`] at `tol`.
pub fn check_as(m: &BlockPencil, p: &MatrixPolynomial, tol: f64) -> bool {
    let k = p.grade();
    if m.n != p.rows() || m.grid_rows() + m.grid_cols() != k + 1 {
        return false;
    }
    (0..=k).all(|s| antidiagonal_sum(m, s, k).is_ok_and(|a| approx_eq(&a, p.coeff(s), tol)))
}

/// AS condition of a full `k x k` grid for `lambda^{k-1} P`: zero for `s < k-1`, `A_{s-k+1}` otherwise.
pub fn check_cas(c: &BlockPencil, p: &MatrixPolynomial, tol: f64) -> bool {
    let k = p.grade();
    if c.grid_rows() != k || c.grid_cols() != k || c.n != p.rows() {
        return false;
    }
    let n = p.rows();
    (0..=2 * k - 1).all(|s| {
        let want = if s + 1 < k { zeros(n, n) } else { p.coeff(s + 1 - k).clone() };
        antidiagonal_sum(c, s, 2 * k - 1).is_ok_and(|a| approx_eq(&a, &want, tol))
    })
}

fn poly_mul(a: &[Mat], b: &[Mat]) -> Vec<Mat> {
    let mut out = alloc::vec![zeros(a[0].nrows(), b[0].ncols()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Q = (Lambda_q (x) I) M (Lambda_p^T (x) I)` for a body with a `(q+1) x (p+1)` grid.
///
/// The products are formed coefficientwise, independently of [`antidiagonal_sum`].
pub fn body_polynomial(m: &BlockPencil) -> Result<MatrixPolynomial> {
    let (rows, cols, n) = (m.grid_rows(), m.grid_cols(), m.n);
    if rows == 0 || cols == 0 {
        return Err(err!(Dimension, "body must have at least one block row and column"));
    }
    let left = lambda_row(rows - 1, n);
    let right = lambda_row(cols - 1, n);
    let right_t: Vec<Mat> = right.coeffs().iter().map(|c| c.transpose()).collect();
    let mid = [m.b0.clone(), m.b1.clone()];
    let coeffs = poly_mul(&poly_mul(left.coeffs(), &mid), &right_t);
    MatrixPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{re, set_block};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_pencil(rng: &mut ChaCha8Rng, r: usize, c: usize, n: usize) -> BlockPencil {
        let mut f = || Mat::from_fn(r * n, c * n, |_, _| re(rng.random_range(-9..=9) as f64));
        let b1 = f();
        BlockPencil::new(b1, f(), n).unwrap()
    }

    #[test]
    fn body_polynomial_matches_antidiagonal_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (r, c, n) = (rng.random_range(1..5), rng.random_range(1..5), rng.random_range(1..3));
            let m = random_pencil(&mut rng, r, c, n);
            let q = body_polynomial(&m).unwrap();
            let k = r + c - 1;
            assert_eq!(q.grade(), k);
            for s in 0..=k {
                assert_eq!(&antidiagonal_sum(&m, s, k).unwrap(), q.coeff(s));
            }
            assert!(check_as(&m, &q, 0.0));
        }
    }

    #[test]
    fn single_block_body() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = random_pencil(&mut rng, 1, 1, 2);
        let q = body_polynomial(&m).unwrap();
        assert_eq!(q.coeff(0), &m.b0);
        assert_eq!(q.coeff(1), &m.b1);
    }

    #[test]
    fn zero_pencil_and_range_errors() {
        let z = BlockPencil::zeros(2, 3, 2);
        for s in 0..=4 {
            assert_eq!(antidiagonal_sum(&z, s, 4).unwrap(), zeros(2, 2));
        }
        assert!(antidiagonal_sum(&z, 5, 4).is_err());
        assert!(antidiagonal_sum(&z, 0, 3).is_err());
    }

    #[test]
    fn perturbed_coefficient_fails_as() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut m = random_pencil(&mut rng, 2, 3, 1);
        let q = body_polynomial(&m).unwrap();
        let mut b = block(&m.b0, 1, 1, 1);
        b[(0, 0)] += re(1.0);
        set_block(&mut m.b0, 1, 1, 1, &b);
        assert!(!check_as(&m, &q, 0.0));
    }
}
