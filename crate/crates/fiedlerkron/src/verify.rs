//! Numerical certification of linearizations.
//!
//! Spectra come from a QZ-based generalized eigensolver and are compared with the first
//! companion form of the polynomial. Minimal indices are read off the nullities of block
//! convolution matrices.

use fiedlerkron_core::kronecker::{annulus_points, antidiagonal_sum, check_cas, is_wing, EbkView};
use fiedlerkron_core::matrix::{approx_eq, identity, rank, set_block, zeros};
use fiedlerkron_core::{BlockPencil, Mat, MatrixPolynomial, C64};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::io::check_compatible;

/// Default tolerance for spectral and structural comparisons.
pub const DEFAULT_TOL: f64 = 1e-8;

/// `|beta| <= INF_TOL * max(|alpha|, |beta|)` classifies an eigenvalue as infinite.
pub const INF_TOL: f64 = 1e-10;

/// Grid used to round eigenvalues before sorting.
const SORT_GRID: f64 = 1e-10;

fn serialize_c64s<S: Serializer>(v: &[C64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

fn serialize_pair<S: Serializer>(v: &Option<(C64, C64)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some((a, b)) => s.collect_seq([[a.re, a.im], [b.re, b.im]]),
        None => s.serialize_none(),
    }
}

/// Finite eigenvalues in canonical order plus the number of infinite ones.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    /// Finite eigenvalues sorted by real part, then imaginary part.
    #[serde(serialize_with = "serialize_c64s")]
    pub finite_eigs: Vec<C64>,
    /// Number of infinite eigenvalues.
    pub inf_count: usize,
    /// Identifier of the reference this spectrum was compared with.
    pub matched_against: Option<String>,
    /// Largest relative error against the reference.
    pub max_rel_error: Option<f64>,
}

impl SpectrumReport {
    fn new(mut finite_eigs: Vec<C64>, inf_count: usize) -> Self {
        sort_canonical(&mut finite_eigs);
        Self { finite_eigs, inf_count, matched_against: None, max_rel_error: None }
    }
}

fn grid_key(z: &C64) -> (f64, f64) {
    ((z.re / SORT_GRID).round(), (z.im / SORT_GRID).round())
}

/// Sorts by `(Re, Im)` after rounding both parts to a `1e-10` grid.
pub fn sort_canonical(v: &mut [C64]) {
    v.sort_by(|a, b| {
        let (ka, kb) = (grid_key(a), grid_key(b));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
}

fn to_faer(m: &Mat) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Generalized eigenvalue pairs `(alpha, beta)` of `lambda b1 + b0`, i.e. `-b0 x = (alpha/beta) b1 x`.
pub fn eigen_pairs(b1: &Mat, b0: &Mat) -> Result<Vec<(C64, C64)>> {
    if b1.shape() != b0.shape() || b1.nrows() != b1.ncols() {
        return Err(Error::Input(format!("pencil must be square, got {}x{}", b1.nrows(), b1.ncols())));
    }
    if b1.nrows() == 0 {
        return Ok(Vec::new());
    }
    let a = to_faer(&-b0);
    let b = to_faer(b1);
    let ge = a.generalized_eigen(b.as_ref()).map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let sa = ge.S_a().column_vector();
    let sb = ge.S_b().column_vector();
    Ok((0..b1.nrows()).map(|i| (sa[i], sb[i])).collect())
}

/// Spectrum of `lambda B1 + B0` with the infinity threshold `inf_tol`.
pub fn pencil_eigs_with(l: &BlockPencil, inf_tol: f64) -> Result<SpectrumReport> {
    let mut finite = Vec::new();
    let mut inf = 0;
    for (alpha, beta) in eigen_pairs(&l.b1, &l.b0)? {
        if beta.norm() <= inf_tol * alpha.norm().max(beta.norm()) {
            inf += 1;
        } else {
            finite.push(alpha / beta);
        }
    }
    Ok(SpectrumReport::new(finite, inf))
}

/// Spectrum of a square pencil with the default infinity threshold.
pub fn pencil_eigs(l: &BlockPencil) -> Result<SpectrumReport> {
    pencil_eigs_with(l, INF_TOL)
}

/// First companion form `lambda diag(A_k, I, ..., I) + [[A_{k-1} ... A_0]; [-I 0 ...]; ...]`.
pub fn companion(p: &MatrixPolynomial) -> BlockPencil {
    let (k, n) = (p.grade(), p.rows());
    let mut b1 = identity(k * n);
    let mut b0 = zeros(k * n, k * n);
    set_block(&mut b1, n, 0, 0, p.coeff(k));
    for j in 0..k {
        set_block(&mut b0, n, 0, j, p.coeff(k - 1 - j));
    }
    for i in 1..k {
        set_block(&mut b0, n, i, i - 1, &-identity(n));
    }
    BlockPencil::new(b1, b0, n).expect("square blocks")
}

/// Second companion form, the block transpose of [`companion`].
pub fn second_companion(p: &MatrixPolynomial) -> BlockPencil {
    companion(p).block_transpose()
}

/// Normal rank estimated as the largest rank over the fixed annulus sample points.
pub fn normal_rank(p: &MatrixPolynomial) -> usize {
    annulus_points().iter().map(|&z| rank(&p.eval(z))).max().unwrap_or(0)
}

/// True when a square polynomial has full normal rank.
pub fn is_regular(p: &MatrixPolynomial) -> bool {
    p.is_square() && normal_rank(p) == p.rows()
}

/// Spectrum of the first companion form of a square regular polynomial.
pub fn polyeig_reference(p: &MatrixPolynomial) -> Result<SpectrumReport> {
    if !p.is_square() {
        return Err(Error::Input(format!("polynomial must be square, got {}x{}", p.rows(), p.cols())));
    }
    if !is_regular(p) {
        return Err(Error::SingularPolynomial(format!("normal rank {} < {}", normal_rank(p), p.rows())));
    }
    pencil_eigs(&companion(p))
}

/// Largest disagreement between the two companion spectra divided by machine epsilon.
///
/// Both forms are exact linearizations, so their spectra differ only by rounding; the ratio is a
/// cheap proxy for the eigenvalue condition numbers.
pub fn condition_estimate(p: &MatrixPolynomial) -> Result<f64> {
    let a = pencil_eigs(&companion(p))?;
    let b = pencil_eigs(&second_companion(p))?;
    if a.inf_count != b.inf_count {
        return Ok(f64::INFINITY);
    }
    Ok(match_spectra(&a.finite_eigs, &b.finite_eigs).map_or(f64::INFINITY, |m| m.max_rel_error / f64::EPSILON))
}

/// Result of pairing two eigenvalue multisets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matching {
    /// Largest relative error `|a - b| / max(1, |b|)`.
    pub max_rel_error: f64,
    /// The worst pair `(found, reference)`.
    pub worst: Option<(C64, C64)>,
}

fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn score(pairs: impl Iterator<Item = (C64, C64)>) -> Matching {
    pairs.fold(Matching { max_rel_error: 0.0, worst: None }, |m, (a, b)| {
        let e = rel_err(a, b);
        if e > m.max_rel_error || m.worst.is_none() {
            Matching { max_rel_error: e.max(m.max_rel_error), worst: Some((a, b)) }
        } else {
            m
        }
    })
}

/// Pairs two multisets of equal size; `None` when the sizes differ.
///
/// Canonically sorted lists are paired in order. When rounding reorders nearly tied real parts,
/// a greedy nearest-neighbour pairing is also tried and the better of the two is returned.
pub fn match_spectra(found: &[C64], reference: &[C64]) -> Option<Matching> {
    if found.len() != reference.len() {
        return None;
    }
    let (mut a, mut b) = (found.to_vec(), reference.to_vec());
    sort_canonical(&mut a);
    sort_canonical(&mut b);
    let sorted = score(a.iter().copied().zip(b.iter().copied()));
    let mut used = vec![false; a.len()];
    let greedy_pairs: Vec<(C64, C64)> = b
        .iter()
        .map(|&r| {
            let (i, _) = a
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|x, y| rel_err(*x.1, r).total_cmp(&rel_err(*y.1, r)))
                .expect("equal sizes");
            used[i] = true;
            (a[i], r)
        })
        .collect();
    let greedy = score(greedy_pairs.into_iter());
    Some(if greedy.max_rel_error < sorted.max_rel_error { greedy } else { sorted })
}

/// Outcome of [`strong_linearization_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearizationReport {
    /// True when every comparison is within tolerance.
    pub passed: bool,
    /// Spectrum of the pencil.
    pub pencil: SpectrumReport,
    /// Spectrum of the companion form of the polynomial.
    pub reference: SpectrumReport,
    /// Spectrum of the reversed pencil.
    pub reversed_pencil: SpectrumReport,
    /// Spectrum of the companion form of the reversed polynomial.
    pub reversed_reference: SpectrumReport,
    /// Worst finite pair `(pencil, reference)`.
    #[serde(serialize_with = "serialize_pair")]
    pub worst: Option<(C64, C64)>,
    /// One line per failed comparison.
    pub failures: Vec<String>,
}

fn compare(
    label: &str,
    found: &mut SpectrumReport,
    reference: &SpectrumReport,
    tol: f64,
    failures: &mut Vec<String>,
) -> Option<(C64, C64)> {
    found.matched_against = Some(label.to_string());
    if found.inf_count != reference.inf_count {
        failures.push(format!("{label}: {} infinite eigenvalues, reference has {}", found.inf_count, reference.inf_count));
    }
    match match_spectra(&found.finite_eigs, &reference.finite_eigs) {
        None => {
            failures.push(format!(
                "{label}: {} finite eigenvalues, reference has {}",
                found.finite_eigs.len(),
                reference.finite_eigs.len()
            ));
            None
        }
        Some(m) => {
            found.max_rel_error = Some(m.max_rel_error);
            if m.max_rel_error > tol {
                let (a, b) = m.worst.expect("nonempty when the error is positive");
                failures.push(format!("{label}: eigenvalue {a} vs {b}, relative error {:.3e}", m.max_rel_error));
            }
            m.worst
        }
    }
}

/// Compares the spectrum of `l` and of its reversal with the companion forms of `p` and `rev_k p`.
pub fn strong_linearization_check(l: &BlockPencil, p: &MatrixPolynomial, tol: f64) -> Result<LinearizationReport> {
    check_compatible(l, p)?;
    let reference = polyeig_reference(p)?;
    let reversed_reference = polyeig_reference(&p.reversal(p.grade())?)?;
    let mut pencil = pencil_eigs(l)?;
    let mut reversed_pencil = pencil_eigs(&l.rev())?;
    let mut failures = Vec::new();
    let worst = compare("companion", &mut pencil, &reference, tol, &mut failures);
    compare("reversed companion", &mut reversed_pencil, &reversed_reference, tol, &mut failures);
    Ok(LinearizationReport {
        passed: failures.is_empty(),
        pencil,
        reference,
        reversed_pencil,
        reversed_reference,
        worst,
        failures,
    })
}

/// Right and left minimal indices, each nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalIndexReport {
    /// Degrees of a minimal basis of the right null space.
    pub right_indices: Vec<usize>,
    /// Degrees of a minimal basis of the left null space.
    pub left_indices: Vec<usize>,
}

/// Block convolution matrix `T_d` mapping the coefficients of `x` with `deg x <= d` to those of `P x`.
///
/// Block `(i, j)` is `A_{i-j}` for `0 <= i - j <= k`; the shape is `(k+d+1) m x (d+1) n`.
pub fn convolution_matrix(p: &MatrixPolynomial, d: usize) -> Mat {
    let (k, m, n) = (p.grade(), p.rows(), p.cols());
    let mut t = zeros((k + d + 1) * m, (d + 1) * n);
    for j in 0..=d {
        for (s, a) in p.coeffs().iter().enumerate() {
            t.view_mut(((j + s) * m, j * n), (m, n)).copy_from(a);
        }
    }
    t
}

/// `nu(d) = dim ker T_d` for `d = 0..=d_max`.
pub fn convolution_nullities(p: &MatrixPolynomial, d_max: usize) -> Vec<usize> {
    (0..=d_max)
        .map(|d| {
            let t = convolution_matrix(p, d);
            t.ncols() - rank(&t)
        })
        .collect()
}

/// Right minimal indices from second differences of `nu(d) = sum_{e_i <= d} (d - e_i + 1)`.
pub fn right_minimal_indices(p: &MatrixPolynomial, d_max: usize) -> Result<Vec<usize>> {
    let count = p.cols() - normal_rank(p);
    let nu = convolution_nullities(p, d_max);
    let slope = |d: usize| nu[d] - if d == 0 { 0 } else { nu[d - 1] };
    let slopes: Vec<usize> = (0..=d_max).map(slope).collect();
    let last = *slopes.last().expect("d_max >= 0");
    if last < count {
        return Err(Error::DegreeBound(format!(
            "nullity slope {last} at d = {d_max} is below the {count} right null vectors; increase d_max"
        )));
    }
    if last > count || slopes.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::DegreeBound(format!("inconsistent nullities {nu:?} for {count} null vectors")));
    }
    let mut out = Vec::with_capacity(count);
    for (d, &s) in slopes.iter().enumerate() {
        let before = if d == 0 { 0 } else { slopes[d - 1] };
        out.extend(std::iter::repeat_n(d, s - before));
    }
    Ok(out)
}

/// Right indices of `p` and right indices of `p^T` as the left indices.
pub fn minimal_indices_oracle(p: &MatrixPolynomial, d_max: usize) -> Result<MinimalIndexReport> {
    Ok(MinimalIndexReport {
        right_indices: right_minimal_indices(p, d_max)?,
        left_indices: right_minimal_indices(&p.transpose(), d_max)?,
    })
}

/// Outcome of [`minimal_index_shift_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftReport {
    /// True when right indices shift by `p` and left indices by `q`.
    pub passed: bool,
    /// Partition of the view.
    pub p: usize,
    /// Partition of the view.
    pub q: usize,
    /// Indices of the polynomial.
    pub polynomial: MinimalIndexReport,
    /// Indices of the pencil.
    pub pencil: MinimalIndexReport,
}

/// Checks that the pencil's right indices are those of `poly` plus `p` and its left indices plus `q`.
///
/// The view must be eligible; `d_max` bounds the indices of `poly`, and the pencil is examined up
/// to `d_max + max(p, q)`.
pub fn minimal_index_shift_check(view: &EbkView, poly: &MatrixPolynomial, d_max: usize, tol: f64) -> Result<ShiftReport> {
    if !view.is_eligible(tol) {
        return Err(fiedlerkron_core::Error::Ineligible("a wing factor is singular".into()).into());
    }
    let polynomial = minimal_indices_oracle(poly, d_max)?;
    let pencil = minimal_indices_oracle(&view.pencil.as_polynomial(), d_max + view.p.max(view.q))?;
    let shifted = |v: &[usize], s: usize| v.iter().map(|e| e + s).collect::<Vec<_>>();
    let passed = pencil.right_indices == shifted(&polynomial.right_indices, view.p)
        && pencil.left_indices == shifted(&polynomial.left_indices, view.q);
    Ok(ShiftReport { passed, p: view.p, q: view.q, polynomial, pencil })
}

/// Overall result of certifying a view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// All applicable checks passed.
    Pass,
    /// A structural or spectral check failed.
    Fail,
    /// Structure holds but a wing factor is singular.
    Ineligible,
}

/// Structural and spectral certificate of an extended block Kronecker view.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    /// Overall verdict.
    pub verdict: Verdict,
    /// Partition of the view.
    pub p: usize,
    /// Partition of the view.
    pub q: usize,
    /// Values of `s` with `AS(M, s) != A_s`.
    pub as_failures: Vec<usize>,
    /// Antidiagonal sums of the full pencil reproduce `lambda^{k-1} P`.
    pub cas: bool,
    /// `K1` and `K2` are wing pencils.
    pub wings: [bool; 2],
    /// The bottom-right block is zero.
    pub zero_corner: bool,
    /// Wing factors are nonsingular.
    pub minimal_basis_flags: [bool; 2],
    /// Spectral comparison, run only for eligible views with passing structure.
    pub linearization: Option<LinearizationReport>,
    /// One line per failed check.
    pub failures: Vec<String>,
}

/// Runs the AS, CAS and wing checks, then the spectral check when the wings are minimal bases.
pub fn certify(view: &EbkView, poly: &MatrixPolynomial, tol: f64) -> Result<Certificate> {
    check_compatible(&view.pencil, poly)?;
    let k = poly.grade();
    let body = view.body();
    let as_failures: Vec<usize> = (0..=k)
        .filter(|&s| !antidiagonal_sum(&body, s, k).is_ok_and(|a| approx_eq(&a, poly.coeff(s), tol)))
        .collect();
    let cas = check_cas(&view.pencil, poly, tol);
    let wings = [is_wing(&view.k1(), tol), is_wing(&view.k2(), tol)];
    let corner = view.corner();
    let zero_corner = [&corner.b1, &corner.b0].iter().all(|m| m.iter().all(|z| z.norm() <= tol));
    let minimal_basis_flags = view.minimal_basis_flags(tol);
    let mut failures: Vec<String> = as_failures.iter().map(|s| format!("AS(M, {s}) differs from A_{s}")).collect();
    if !cas {
        failures.push("antidiagonal sums of the full pencil differ from lambda^(k-1) P".into());
    }
    for (i, ok) in wings.iter().enumerate() {
        if !ok {
            failures.push(format!("K{} is not a wing pencil", i + 1));
        }
    }
    if !zero_corner {
        failures.push("bottom-right block is not zero".into());
    }
    let eligible = minimal_basis_flags.iter().all(|&f| f);
    let linearization = if failures.is_empty() && eligible {
        let report = strong_linearization_check(&view.pencil, poly, tol)?;
        failures.extend(report.failures.iter().cloned());
        Some(report)
    } else {
        None
    };
    let verdict = if !failures.is_empty() {
        Verdict::Fail
    } else if !eligible {
        Verdict::Ineligible
    } else {
        Verdict::Pass
    };
    Ok(Certificate {
        verdict,
        p: view.p,
        q: view.q,
        as_failures,
        cas,
        wings,
        zero_corner,
        minimal_basis_flags,
        linearization,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{integer_polynomial, random_matrix, random_polynomial, singular_fixtures};
    use fiedlerkron_core::kronecker::{fiedler_ebk, lambda_row};
    use fiedlerkron_core::matrix::{from_real_rows, re};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn diagonal_pencil_eigenvalues() {
        let l = BlockPencil::new(identity(3), -from_real_rows(3, 3, &[1., 0., 0., 0., 2., 0., 0., 0., 3.]), 1).unwrap();
        let s = pencil_eigs(&l).unwrap();
        assert_eq!(s.inf_count, 0);
        let m = match_spectra(&s.finite_eigs, &[c(1.0), c(2.0), c(3.0)]).unwrap();
        assert!(m.max_rel_error < 1e-14);
    }

    #[test]
    fn singular_leading_coefficient_gives_infinite_eigenvalue() {
        let l = BlockPencil::new(from_real_rows(2, 2, &[1., 0., 0., 0.]), from_real_rows(2, 2, &[-2., 0., 0., 1.]), 1).unwrap();
        let s = pencil_eigs(&l).unwrap();
        assert_eq!(s.inf_count, 1);
        assert_eq!(s.finite_eigs.len(), 1);
        assert!((s.finite_eigs[0] - c(2.0)).norm() < 1e-14);
    }

    #[test]
    fn eigenvalues_are_invariant_under_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let l = BlockPencil::new(random_matrix(&mut rng, 6, 6), random_matrix(&mut rng, 6, 6), 2).unwrap();
            let (u, v) = (random_matrix(&mut rng, 6, 6), random_matrix(&mut rng, 6, 6));
            let t = BlockPencil::new(&u * &l.b1 * &v, &u * &l.b0 * &v, 2).unwrap();
            let (a, b) = (pencil_eigs(&l).unwrap(), pencil_eigs(&t).unwrap());
            assert_eq!(a.inf_count, b.inf_count);
            assert!(match_spectra(&a.finite_eigs, &b.finite_eigs).unwrap().max_rel_error < 1e-8);
        }
    }

    #[test]
    fn scalar_quadratic_reference() {
        let p = MatrixPolynomial::new(vec![from_real_rows(1, 1, &[2.]), from_real_rows(1, 1, &[-3.]), from_real_rows(1, 1, &[1.])]).unwrap();
        let s = polyeig_reference(&p).unwrap();
        assert!(match_spectra(&s.finite_eigs, &[c(1.0), c(2.0)]).unwrap().max_rel_error < 1e-14);
    }

    #[test]
    fn grade_padding_gives_infinite_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let p = random_polynomial(&mut rng, 2, 2).reversal(3).unwrap().reversal(3).unwrap();
        assert_eq!(p.grade(), 3);
        let s = polyeig_reference(&p).unwrap();
        assert!(s.inf_count >= 2);
        assert_eq!(s.finite_eigs.len() + s.inf_count, 6);
    }

    #[test]
    fn companion_determinant_matches_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let p = random_polynomial(&mut rng, 2, 3);
        let z = C64::new(0.7, -0.4);
        let d1 = companion(&p).eval(z).determinant();
        let d2 = p.eval(z).determinant();
        assert!((d1 - d2).norm() < 1e-10 * d2.norm().max(1.0));
    }

    #[test]
    fn singular_polynomial_is_rejected_as_reference() {
        let f = &singular_fixtures()[1];
        assert!(matches!(polyeig_reference(&f.poly), Err(Error::SingularPolynomial(_))));
    }

    #[test]
    fn fiedler_pencil_is_a_strong_linearization() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let p = random_polynomial(&mut rng, 2, 6);
        let v = fiedler_ebk(&p, &[0, 2, 4, 1, 3, 5], 1e-10).unwrap();
        let report = strong_linearization_check(&v.pencil, &p, 1e-8).unwrap();
        assert!(report.passed, "{:?}", report.failures);
        let cert = certify(&v, &p, 1e-8).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass);
    }

    #[test]
    fn corrupted_pencil_fails_the_spectral_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let p = random_polynomial(&mut rng, 2, 3);
        let mut l = companion(&p);
        l.b0[(0, 0)] += re(0.5);
        let report = strong_linearization_check(&l, &p, 1e-8).unwrap();
        assert!(!report.passed);
        assert!(report.failures[0].starts_with("companion"));
    }

    #[test]
    fn matching_recovers_from_near_ties() {
        let a = [C64::new(1.0, 5.0), C64::new(1.0 + 1e-9, -5.0)];
        let b = [C64::new(1.0 + 1e-9, 5.0), C64::new(1.0, -5.0)];
        assert!(match_spectra(&a, &b).unwrap().max_rel_error < 1e-8);
        assert!(match_spectra(&a, &b[..1]).is_none());
    }

    #[test]
    fn minimal_indices_of_regular_and_zero_polynomials() {
        let p = integer_polynomial(3, 2);
        assert_eq!(minimal_indices_oracle(&p, 3).unwrap(), MinimalIndexReport { right_indices: vec![], left_indices: vec![] });
        let z = p.map(|_, a| a * re(0.0)).unwrap();
        assert_eq!(minimal_indices_oracle(&z, 1).unwrap().right_indices, vec![0, 0]);
    }

    #[test]
    fn minimal_indices_of_monomial_row() {
        // The 1 x 3 row [l^2, l, 1]: its right null space has a minimal basis of degrees 1 and 1.
        let row = lambda_row(2, 1);
        let r = right_minimal_indices(&row, 3).unwrap();
        assert_eq!(r, vec![1, 1]);
        assert_eq!(right_minimal_indices(&row.transpose(), 3).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn minimal_indices_of_fixtures() {
        for f in singular_fixtures() {
            let r = minimal_indices_oracle(&f.poly, 4).unwrap();
            assert_eq!(r.right_indices, f.right, "{}", f.name);
            assert_eq!(r.left_indices, f.left, "{}", f.name);
        }
    }

    #[test]
    fn small_degree_bound_is_reported() {
        let f = singular_fixtures().into_iter().find(|f| f.right == vec![2]).unwrap();
        assert!(matches!(right_minimal_indices(&f.poly, 1), Err(Error::DegreeBound(_))));
    }

    #[test]
    fn fiedler_shift_on_singular_fixtures() {
        for f in singular_fixtures() {
            let k = f.poly.grade();
            let q: Vec<i64> = (0..k as i64).rev().collect();
            let v = fiedler_ebk(&f.poly, &q, 1e-10).unwrap();
            let r = minimal_index_shift_check(&v, &f.poly, 4, 1e-10).unwrap();
            assert!(r.passed, "{}: {r:?}", f.name);
        }
    }
}
