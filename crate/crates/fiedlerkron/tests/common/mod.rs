//! Shared helpers for integration tests: a block-entry notation and random spec generators.

#![allow(dead_code)]

use fiedlerkron_core::elementary::Assignment;
use fiedlerkron_core::matrix::{identity, re, set_block, zeros};
use fiedlerkron_core::pencils::GfprSpec;
use fiedlerkron_core::tuples::{concat, satisfies_sip, Index};
use fiedlerkron_core::{BlockPencil, Mat, MatrixPolynomial};
use rand::seq::SliceRandom;
use rand::Rng;

/// Parses one block entry such as `λA6-A5`, `-I`, `λI`, `0` or `-λA1+A0` into `(B1, B0)`.
pub fn parse_cell(cell: &str, p: &MatrixPolynomial) -> (Mat, Mat) {
    let n = p.rows();
    let (mut b1, mut b0) = (zeros(n, n), zeros(n, n));
    let s: String = cell.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return (b1, b0);
    }
    let mut terms: Vec<(f64, String)> = Vec::new();
    let mut sign = 1.0;
    let mut cur = String::new();
    for ch in s.chars() {
        if ch == '+' || ch == '-' {
            if !cur.is_empty() {
                terms.push((sign, std::mem::take(&mut cur)));
            }
            sign = if ch == '-' { -1.0 } else { 1.0 };
        } else {
            cur.push(ch);
        }
    }
    terms.push((sign, cur));
    for (sign, term) in terms {
        let (lambda, rest) = match term.strip_prefix('λ') {
            Some(r) => (true, r),
            None => (false, term.as_str()),
        };
        let m = if rest == "I" {
            identity(n)
        } else {
            let i: usize = rest.strip_prefix('A').and_then(|d| d.parse().ok()).unwrap_or_else(|| panic!("bad cell {cell}"));
            p.coeff(i).clone()
        };
        let target = if lambda { &mut b1 } else { &mut b0 };
        *target += m * re(sign);
    }
    (b1, b0)
}

/// Builds a block pencil from rows of block entries.
pub fn pencil_from_cells(rows: &[&[&str]], p: &MatrixPolynomial) -> BlockPencil {
    let n = p.rows();
    let (r, c) = (rows.len(), rows[0].len());
    let mut out = BlockPencil::zeros(r, c, n);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), c, "ragged block row {i}");
        for (j, cell) in row.iter().enumerate() {
            let (b1, b0) = parse_cell(cell, p);
            set_block(&mut out.b1, n, i, j, &b1);
            set_block(&mut out.b0, n, i, j, &b0);
        }
    }
    out
}

/// Integer matrix with entries in `-r..=r`.
pub fn int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, r: i32) -> Mat {
    Mat::from_fn(rows, cols, |_, _| re(rng.random_range(-r..=r) as f64))
}

/// Random integer polynomial of grade `k` with entries in `-5..=5`.
pub fn int_polynomial<R: Rng>(rng: &mut R, n: usize, k: usize) -> MatrixPolynomial {
    MatrixPolynomial::new((0..=k).map(|_| int_matrix(rng, n, n, 5)).collect()).unwrap()
}

/// Random permutation of `lo..=hi`.
pub fn shuffled<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (lo..=hi).collect();
    v.shuffle(rng);
    v
}

/// Random tuple over `lo..=hi` of length at most `max_len`, drawn until `accept` holds.
pub fn random_tuple<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_len: usize, accept: impl Fn(&[i64]) -> bool) -> Vec<i64> {
    if lo > hi {
        return Vec::new();
    }
    for _ in 0..200 {
        let len = rng.random_range(0..=max_len);
        let t: Vec<i64> = (0..len).map(|_| rng.random_range(lo..=hi)).collect();
        if accept(&t) {
            return t;
        }
    }
    Vec::new()
}

/// Random tuple over `lo..=hi` satisfying the SIP.
pub fn random_sip<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_len: usize) -> Vec<i64> {
    random_tuple(rng, lo, hi, max_len, |t| satisfies_sip(t).unwrap())
}

/// A family instance drawn by [`random_spec`].
#[derive(Debug, Clone)]
pub enum Spec {
    /// Fiedler pencil for a permutation of `0:k-1`.
    Fiedler(Vec<i64>),
    /// Proper generalized Fiedler pencil.
    Gfp(Vec<Index>, Vec<Index>),
    /// GFPR with trivial assignments.
    Fpr(GfprSpec),
    /// GFPR with explicit assignments.
    Gfpr(GfprSpec),
}

impl Spec {
    /// Short family label.
    pub fn family(&self) -> &'static str {
        match self {
            Spec::Fiedler(_) => "fiedler",
            Spec::Gfp(..) => "gfp",
            Spec::Fpr(_) => "fpr",
            Spec::Gfpr(_) => "gfpr",
        }
    }
}

/// Random proper GFP over grade `k`.
pub fn random_gfp<R: Rng>(rng: &mut R, k: usize) -> (Vec<Index>, Vec<Index>) {
    let mut q = vec![0usize];
    let mut z = vec![k];
    for i in 1..k {
        if rng.random_bool(0.5) {
            q.push(i);
        } else {
            z.push(i);
        }
    }
    q.shuffle(rng);
    z.shuffle(rng);
    (q.into_iter().map(Index::Pos).collect(), z.into_iter().map(Index::Neg).collect())
}

/// Random GFPR tuples over grade `k`, with outer tuples satisfying the SIP conditions.
pub fn random_gfpr_tuples<R: Rng>(rng: &mut R, k: usize) -> GfprSpec {
    let h = rng.random_range(0..k) as i64;
    let k = k as i64;
    let q = shuffled(rng, 0, h);
    let z = shuffled(rng, -k, -h - 1);
    let lq = random_tuple(rng, 0, h - 1, 3, |t| satisfies_sip(&concat(&[t, &q])).unwrap());
    let rq = random_tuple(rng, 0, h - 1, 3, |t| satisfies_sip(&concat(&[&lq, &q, t])).unwrap());
    let lz = random_tuple(rng, -k, -h - 2, 3, |t| satisfies_sip(&concat(&[t, &z])).unwrap());
    let rz = random_tuple(rng, -k, -h - 2, 3, |t| satisfies_sip(&concat(&[&lz, &z, t])).unwrap());
    GfprSpec::new(q, z).with_outer(lq, rq, lz, rz)
}

/// Replaces every trivial assignment with random integer matrices.
pub fn explicit_assignments<R: Rng>(rng: &mut R, mut spec: GfprSpec, n: usize) -> GfprSpec {
    let mut draw = |len: usize| Assignment::Explicit((0..len).map(|_| int_matrix(rng, n, n, 4)).collect());
    spec.x = draw(spec.lq.len());
    spec.y = draw(spec.rq.len());
    spec.zs = draw(spec.lz.len());
    spec.w = draw(spec.rz.len());
    spec
}

/// Draws a spec of the given family index (`0..4`) for grade `k` and block size `n`.
pub fn random_spec<R: Rng>(rng: &mut R, family: usize, k: usize, n: usize) -> Spec {
    match family % 4 {
        0 => Spec::Fiedler(shuffled(rng, 0, k as i64 - 1)),
        1 => {
            let (q, z) = random_gfp(rng, k);
            Spec::Gfp(q, z)
        }
        2 => Spec::Fpr(random_gfpr_tuples(rng, k)),
        _ => {
            let t = random_gfpr_tuples(rng, k);
            Spec::Gfpr(explicit_assignments(rng, t, n))
        }
    }
}
