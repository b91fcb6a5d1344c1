//! Property tests for JSON formats and spectral verification.

mod common;

use common::{random_spec, Spec};
use fiedlerkron::fixtures::{complex_normal, random_matrix, random_polynomial};
use fiedlerkron::io::{parse_document, to_json_string, Document, PencilJson, PolynomialJson};
use fiedlerkron::verify::{certify, condition_estimate, match_spectra, pencil_eigs, Verdict};
use fiedlerkron_core::kronecker::{fiedler_ebk, gfp_ebk, gfpr_ebk};
use fiedlerkron_core::matrix::{identity, re};
use fiedlerkron_core::{BlockPencil, Mat};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn near_identity(rng: &mut ChaCha8Rng, m: usize) -> Mat {
    identity(m) + random_matrix(rng, m, m) * re(0.2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pencil_json_roundtrip(seed in any::<u64>(), k in 1usize..5, n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = BlockPencil::new(random_matrix(&mut rng, k * n, k * n), random_matrix(&mut rng, k * n, k * n), n).unwrap();
        let text = to_json_string(&PencilJson::from_pencil(&l)).unwrap();
        match parse_document(&text).unwrap() {
            Document::Pencil(back) => prop_assert_eq!(back, l),
            Document::Polynomial(_) => prop_assert!(false, "pencil parsed as a polynomial"),
        }
    }

    #[test]
    fn polynomial_json_roundtrip(seed in any::<u64>(), k in 1usize..6, n in 1usize..4) {
        let p = random_polynomial(&mut ChaCha8Rng::seed_from_u64(seed), n, k);
        let text = to_json_string(&PolynomialJson::from_polynomial(&p)).unwrap();
        match parse_document(&text).unwrap() {
            Document::Polynomial(back) => prop_assert_eq!(back, p),
            Document::Pencil(_) => prop_assert!(false, "polynomial parsed as a pencil"),
        }
    }

    #[test]
    fn spectrum_is_equivalence_invariant(seed in any::<u64>(), m in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b1 = near_identity(&mut rng, m);
        let b0 = random_matrix(&mut rng, m, m);
        let (e, f) = (near_identity(&mut rng, m), near_identity(&mut rng, m));
        let l = BlockPencil::new(b1.clone(), b0.clone(), 1).unwrap();
        let moved = BlockPencil::new(&e * &b1 * &f, &e * &b0 * &f, 1).unwrap();
        let (a, b) = (pencil_eigs(&l).unwrap(), pencil_eigs(&moved).unwrap());
        prop_assert_eq!(a.inf_count, b.inf_count);
        let err = match_spectra(&b.finite_eigs, &a.finite_eigs).unwrap().max_rel_error;
        prop_assert!(err <= 1e-8, "relative error {err:e}");
    }
}

#[test]
fn complex_normal_has_unit_variance() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = 20_000;
    let mean_sq: f64 = (0..m).map(|_| complex_normal(&mut rng).norm_sqr()).sum::<f64>() / m as f64;
    assert!((mean_sq - 1.0).abs() < 0.05, "{mean_sq}");
}

/// Every family certifies on random regular polynomials over `{1,2,3} x {2..7}`.
#[test]
fn families_are_strong_linearizations_across_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=3 {
        for k in 2..=7 {
            for family in 0..4 {
                let mut certified = 0;
                let mut draws = 0;
                while certified < 2 {
                    draws += 1;
                    assert!(draws < 50, "no eligible instance for n = {n}, k = {k}, family {family}");
                    let p = random_polynomial(&mut rng, n, k);
                    if condition_estimate(&p).unwrap() > 1e8 {
                        continue;
                    }
                    let spec = random_spec(&mut rng, family, k, n);
                    let view = match &spec {
                        Spec::Fiedler(q) => fiedler_ebk(&p, q, 1e-8),
                        Spec::Gfp(q, z) => gfp_ebk(&p, q, z, 1e-8),
                        Spec::Fpr(s) | Spec::Gfpr(s) => gfpr_ebk(&p, s, 1e-8),
                    }
                    .unwrap_or_else(|e| panic!("{spec:?}: {e}"));
                    if !view.is_eligible(1e-8) {
                        continue;
                    }
                    let cert = certify(&view, &p, 1e-8).unwrap();
                    assert_eq!(cert.verdict, Verdict::Pass, "{spec:?}: {:?}", cert.failures);
                    certified += 1;
                }
            }
        }
    }
}
