//! Fixture polynomials: deterministic integer data, seeded random data and singular examples
//! with known minimal indices.
//!
//! The integer fixture uses `A_i = (-1)^i U_i L_i` where `U_i` is unit upper triangular and
//! `L_i` unit lower triangular with small integer entries from a fixed sequence. Every
//! coefficient is unimodular, the coefficients are pairwise distinct, and all products formed
//! by elementary matrices stay integral, so pencils built from it compare exactly.

use fiedlerkron_core::matrix::{from_real_rows, re, zeros};
use fiedlerkron_core::pencils::GfprSpec;
use fiedlerkron_core::{Mat, MatrixPolynomial, C64};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Entries of the triangular factors, cycled deterministically.
const SEQUENCE: [i64; 11] = [2, -3, 5, -1, 4, -2, 3, -5, 1, -4, 6];

fn sequence(i: usize) -> f64 {
    SEQUENCE[i % SEQUENCE.len()] as f64
}

/// Coefficient `A_i` of the integer fixture of size `n`.
pub fn integer_coefficient(i: usize, n: usize) -> Mat {
    let upper = Mat::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Less => re(sequence(3 * i + r + 2 * c)),
        std::cmp::Ordering::Equal => re(1.0),
        std::cmp::Ordering::Greater => re(0.0),
    });
    let lower = Mat::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Greater => re(sequence(5 * i + 2 * r + c + 1)),
        std::cmp::Ordering::Equal => re(1.0),
        std::cmp::Ordering::Less => re(0.0),
    });
    let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    upper * lower * re(sign)
}

/// Integer fixture of grade `k` and size `n` with unimodular, pairwise distinct coefficients.
pub fn integer_polynomial(k: usize, n: usize) -> MatrixPolynomial {
    MatrixPolynomial::new((0..=k).map(|i| integer_coefficient(i, n)).collect()).expect("shared shape")
}

/// Complex standard normal scalar: real and imaginary parts are `N(0, 1/2)`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(s * re, s * im)
}

/// Matrix with i.i.d. complex standard normal entries.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Grade-`k` polynomial of size `n` with i.i.d. complex standard normal coefficients.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> MatrixPolynomial {
    MatrixPolynomial::new((0..=k).map(|_| random_matrix(rng, n, n)).collect()).expect("shared shape")
}

/// Tuples of the standard grade-6 and grade-3 examples.
pub mod tuples {
    use super::GfprSpec;

    /// Fiedler pencil tuple at grade 6.
    pub const FIEDLER_Q: [i64; 6] = [0, 2, 4, 1, 3, 5];
    /// Proper GFP at grade 6: `q`.
    pub const GFP_Q: [i64; 4] = [3, 4, 2, 0];
    /// Proper GFP at grade 6: `z`.
    pub const GFP_Z: [i64; 3] = [-1, -6, -5];

    /// The grade-6 Fiedler pencil with repetition `(lambda M_{-6:-1} - M_0) M_{rz}`.
    pub fn fpr() -> GfprSpec {
        let rz = [(-6..=-2).collect::<Vec<_>>(), (-6..=-3).collect(), (-6..=-4).collect(), (-6..=-5).collect(), vec![-6]].concat();
        GfprSpec::new(vec![0], (-6..=-1).collect()).with_outer(vec![], vec![], vec![], rz)
    }

    /// `D_1 = lambda M_{-3,0:1,0} - M_{0:2,0:1,0}` written as `(lambda M_{-3} - M_{0:2}) M_{0:1,0}`.
    pub fn d1() -> GfprSpec {
        GfprSpec::new(vec![0, 1, 2], vec![-3]).with_outer(vec![], vec![0, 1, 0], vec![], vec![])
    }

    /// `D_2` written as `M_{-3} (lambda M_{-2,-3} - M_{0:1}) M_0`.
    pub fn d2() -> GfprSpec {
        GfprSpec::new(vec![0, 1], vec![-2, -3]).with_outer(vec![], vec![0], vec![-3], vec![])
    }

    /// `D_3` written as `(lambda M_{-3:-1} - M_0) M_{-3:-2,-3}`.
    pub fn d3() -> GfprSpec {
        GfprSpec::new(vec![0], vec![-3, -2, -1]).with_outer(vec![], vec![], vec![], vec![-3, -2, -3])
    }
}

/// A singular polynomial whose minimal indices are known by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularFixture {
    /// Short description.
    pub name: &'static str,
    /// The polynomial.
    pub poly: MatrixPolynomial,
    /// Right minimal indices, nondecreasing.
    pub right: Vec<usize>,
    /// Left minimal indices, nondecreasing.
    pub left: Vec<usize>,
}

/// Builds a polynomial from real coefficient lists given row-major.
fn real_poly(n: usize, coeffs: &[&[f64]]) -> MatrixPolynomial {
    MatrixPolynomial::new(coeffs.iter().map(|c| from_real_rows(n, n, c)).collect()).expect("shared shape")
}

/// Embeds `p` in the top-left corner of an `m x m` polynomial, padding with zeros.
fn pad(p: &MatrixPolynomial, m: usize) -> MatrixPolynomial {
    p.map(|_, a| {
        let mut out = zeros(m, m);
        out.view_mut((0, 0), a.shape()).copy_from(a);
        out
    })
    .expect("shared shape")
}

/// Singular polynomials with known right and left minimal indices.
///
/// Rank-one examples `u(lambda) v(lambda)^T` have null spaces spanned by the syzygies of `u`
/// and `v`; block-diagonal examples add a regular block and zero rows and columns.
pub fn singular_fixtures() -> Vec<SingularFixture> {
    let regular = integer_polynomial(3, 2);
    let mut out = vec![
        SingularFixture { name: "diag(R, 0), k = 3", poly: pad(&regular, 3), right: vec![0], left: vec![0] },
        // [1; l] [1, l]
        SingularFixture {
            name: "[1; l][1, l], k = 2",
            poly: real_poly(2, &[&[1., 0., 0., 0.], &[0., 1., 1., 0.], &[0., 0., 0., 1.]]),
            right: vec![1],
            left: vec![1],
        },
        // [1; l] [l^2, 1]
        SingularFixture {
            name: "[1; l][l^2, 1], k = 3",
            poly: real_poly(2, &[&[0., 1., 0., 0.], &[0., 0., 0., 1.], &[1., 0., 0., 0.], &[0., 0., 1., 0.]]),
            right: vec![2],
            left: vec![1],
        },
        // [1; 0] [l^2 + 1, l]
        SingularFixture {
            name: "[1; 0][l^2 + 1, l], k = 2",
            poly: real_poly(2, &[&[1., 0., 0., 0.], &[0., 1., 0., 0.], &[1., 0., 0., 0.]]),
            right: vec![2],
            left: vec![0],
        },
        SingularFixture { name: "zero 2 x 2, k = 2", poly: real_poly(2, &[&[0.; 4], &[0.; 4], &[0.; 4]]), right: vec![0, 0], left: vec![0, 0] },
        // [1; l; l^2] [1, l, 0]
        SingularFixture {
            name: "[1; l; l^2][1, l, 0], k = 3",
            poly: real_poly(
                3,
                &[
                    &[1., 0., 0., 0., 0., 0., 0., 0., 0.],
                    &[0., 1., 0., 1., 0., 0., 0., 0., 0.],
                    &[0., 0., 0., 0., 1., 0., 1., 0., 0.],
                    &[0., 0., 0., 0., 0., 0., 0., 1., 0.],
                ],
            ),
            right: vec![0, 1],
            left: vec![1, 1],
        },
    ];
    // diag(1, [1; l][1, l]) with a constant unit block.
    let mut c = vec![zeros(3, 3), zeros(3, 3), zeros(3, 3)];
    c[0][(0, 0)] = re(1.0);
    c[0][(1, 1)] = re(1.0);
    c[1][(1, 2)] = re(1.0);
    c[1][(2, 1)] = re(1.0);
    c[2][(2, 2)] = re(1.0);
    out.push(SingularFixture {
        name: "diag(1, [1; l][1, l]), k = 2",
        poly: MatrixPolynomial::new(c).expect("shared shape"),
        right: vec![1],
        left: vec![1],
    });
    out
}
