//! Elementary matrices `M_i(B)`, their products over index tuples and block-structure facts.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::err;
use crate::error::Result;
use crate::matrix::{block, block_transpose, identity, inverse, is_zero, set_block, zeros, Mat};
use crate::poly::MatrixPolynomial;
use crate::tuples::{heads, rev, satisfies_sip, Index};

/// Matrices attached to the entries of an index tuple.
#[derive(Debug, Clone, PartialEq)]
pub enum Assignment {
    /// `M_i(-A_i)` for `i >= 0` and `M_{-i}(A_i)` for `-i < 0`.
    Trivial,
    /// One explicit `n x n` matrix per tuple entry.
    Explicit(Vec<Mat>),
}

impl Assignment {
    /// Materializes the matrices for tuple `t` of a pencil built from `p`.
    pub fn resolve(&self, p: &MatrixPolynomial, t: &[Index]) -> Result<Vec<Mat>> {
        match self {
            Assignment::Trivial => trivial_assignment(p, t),
            Assignment::Explicit(x) => {
                if x.len() != t.len() {
                    return Err(err!(Dimension, "{} matrices for a tuple of length {}", x.len(), t.len()));
                }
                if x.iter().any(|m| m.shape() != (p.rows(), p.rows())) {
                    return Err(err!(Dimension, "assigned matrices must be {0}x{0}", p.rows()));
                }
                Ok(x.clone())
            }
        }
    }
}

/// The trivial assignment: `i >= 0` maps to `-A_i` and `-i` maps to `A_i`.
///
/// The inverse forms are covered as well: `k` maps to `A_k` so that `M_k^P = (M_{-k}^P)^{-1}`,
/// and `-0` maps to `-A_0` so that `M_{-0}^P = (M_0^P)^{-1}`.
pub fn trivial_assignment(p: &MatrixPolynomial, t: &[Index]) -> Result<Vec<Mat>> {
    let k = p.grade();
    t.iter()
        .map(|&idx| match idx {
            Index::Pos(i) if i < k => Ok(-p.coeff(i)),
            Index::Pos(i) if i == k => Ok(p.coeff(k).clone()),
            Index::Neg(0) => Ok(-p.coeff(0)),
            Index::Neg(i) if i <= k => Ok(p.coeff(i).clone()),
            _ => Err(err!(OutOfRange, "index {idx} outside -{k}:{k}")),
        })
        .collect()
}

/// The `kn x kn` elementary matrix with index `idx` and payload `b`.
///
/// `M_{-0}(B)` and `M_k(B)` are the inverses of `M_0(B)` and `M_{-k}(B)`; they require `B`
/// nonsingular.
pub fn elementary(k: usize, n: usize, idx: Index, b: &Mat) -> Result<Mat> {
    if b.shape() != (n, n) {
        return Err(err!(Dimension, "payload must be {n}x{n}"));
    }
    if k == 0 || idx.magnitude() > k {
        return Err(err!(OutOfRange, "index {idx} outside -{k}:{k}"));
    }
    let mut m = identity(k * n);
    let id = identity(n);
    match idx {
        Index::Pos(0) => set_block(&mut m, n, k - 1, k - 1, b),
        Index::Neg(0) => set_block(&mut m, n, k - 1, k - 1, &inverse(b)?),
        Index::Pos(i) if i == k => set_block(&mut m, n, 0, 0, &inverse(b)?),
        Index::Neg(i) if i == k => set_block(&mut m, n, 0, 0, b),
        Index::Pos(i) => {
            let r = k - i - 1;
            set_block(&mut m, n, r, r, b);
            set_block(&mut m, n, r, r + 1, &id);
            set_block(&mut m, n, r + 1, r, &id);
            set_block(&mut m, n, r + 1, r + 1, &zeros(n, n));
        }
        Index::Neg(i) => {
            let r = k - i - 1;
            set_block(&mut m, n, r, r, &zeros(n, n));
            set_block(&mut m, n, r, r + 1, &id);
            set_block(&mut m, n, r + 1, r, &id);
            set_block(&mut m, n, r + 1, r + 1, b);
        }
    }
    Ok(m)
}

/// `M_t(X) = M_{t_1}(X_1) ... M_{t_r}(X_r)`; the empty product is `I_{kn}`.
pub fn product(k: usize, n: usize, t: &[Index], x: &[Mat]) -> Result<Mat> {
    if t.len() != x.len() {
        return Err(err!(Dimension, "{} matrices for a tuple of length {}", x.len(), t.len()));
    }
    let mut acc = identity(k * n);
    for (&idx, b) in t.iter().zip(x) {
        acc *= elementary(k, n, idx, b)?;
    }
    Ok(acc)
}

/// `M_t^P`, the product with the trivial assignment.
pub fn product_trivial(p: &MatrixPolynomial, t: &[Index]) -> Result<Mat> {
    product(p.grade(), p.rows(), t, &trivial_assignment(p, t)?)
}

/// `M_{(a:b)}(X)` written down directly from its block pattern.
///
/// Inside the active window the first block column holds `X_b, ..., X_a` (followed by `I`
/// when `a > 0`) and the first block superdiagonal holds identities.
pub fn string_product_fast(k: usize, n: usize, a: usize, b: usize, x: &[Mat]) -> Result<Mat> {
    if a > b || b + 1 > k {
        return Err(err!(OutOfRange, "string {a}:{b} not inside 0:{}", k as i64 - 1));
    }
    if x.len() != b - a + 1 || x.iter().any(|m| m.shape() != (n, n)) {
        return Err(err!(Dimension, "need {} payloads of size {n}x{n}", b - a + 1));
    }
    let start = k - b - 1;
    let width = if a == 0 { b + 1 } else { b - a + 2 };
    let mut m = identity(k * n);
    let id = identity(n);
    for w in 0..width {
        set_block(&mut m, n, start + w, start + w, &zeros(n, n));
    }
    for (w, payload) in x.iter().rev().enumerate() {
        set_block(&mut m, n, start + w, start, payload);
    }
    if a > 0 {
        set_block(&mut m, n, start + width - 1, start, &id);
    }
    for w in 0..width - 1 {
        set_block(&mut m, n, start + w, start + w + 1, &id);
    }
    Ok(m)
}

/// Checks `M_t(X)^B = M_{rev t}(rev X)` for a SIP tuple of indices in `0:k-1`.
pub fn block_transpose_law_check(k: usize, n: usize, t: &[i64], x: &[Mat]) -> Result<bool> {
    check_nonnegative_sip(k, t)?;
    let lhs = block_transpose(&product(k, n, &crate::tuples::to_indices(t), x)?, n)?;
    let rx: Vec<Mat> = x.iter().rev().cloned().collect();
    let rhs = product(k, n, &crate::tuples::to_indices(&rev(t)), &rx)?;
    Ok(lhs == rhs)
}

fn check_nonnegative_sip(k: usize, t: &[i64]) -> Result<()> {
    if t.iter().any(|&i| i < 0 || i as usize >= k) {
        return Err(err!(OutOfRange, "indices must lie in 0:{}", k as i64 - 1));
    }
    if !satisfies_sip(t)? {
        return Err(err!(NotSip, "tuple violates SIP"));
    }
    Ok(())
}

/// Block columns and rows (1-based) of `M_t(X)` that may differ from `e_i (x) I_n`.
///
/// The sets are `{k - h : h in heads(t)}` and `{k - h : h in heads(rev t)}`. Every other block
/// column and row of the materialized product is checked to be a unit block vector.
pub fn column_structure(
    k: usize,
    n: usize,
    t: &[i64],
    x: &[Mat],
) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    check_nonnegative_sip(k, t)?;
    let cols: BTreeSet<usize> = heads(t)?.iter().map(|&h| k - h as usize).collect();
    let rows: BTreeSet<usize> = heads(&rev(t))?.iter().map(|&h| k - h as usize).collect();
    let m = product(k, n, &crate::tuples::to_indices(t), x)?;
    let id = identity(n);
    let unit = |blocks: Vec<Mat>| {
        let nonzero: Vec<&Mat> = blocks.iter().filter(|b| !is_zero(b)).collect();
        nonzero.len() == 1 && *nonzero[0] == id
    };
    for j in 1..=k {
        if !cols.contains(&j) && !unit((0..k).map(|i| block(&m, n, i, j - 1)).collect()) {
            return Err(err!(Derivation, "block column {j} is not a unit block column"));
        }
        if !rows.contains(&j) && !unit((0..k).map(|i| block(&m, n, j - 1, i)).collect()) {
            return Err(err!(Derivation, "block row {j} is not a unit block row"));
        }
    }
    Ok((cols, rows))
}
