//! Block permutations that reveal the extended block Kronecker structure of Fiedler-like pencils.
//!
//! Each derivation predicts the wing positions from the index tuples, builds the canonical view
//! and then checks the predicted properties. A failed check is reported as `Derivation`, since it
//! would contradict the structure theory rather than the input.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::elementary::{elementary, trivial_assignment};
use crate::err;
use crate::error::{Error, Result};
use crate::matrix::{approx_eq, Mat};
use crate::pencils::{fiedler, gfp, gfpr, gfpr_split, simple_pair, GfprSpec};
use crate::poly::{BlockPencil, MatrixPolynomial};
use crate::tuples::{concat, h_count, rev, satisfies_sip, shift, Index};
use crate::BlockPermutation;

use super::antidiag::check_as;
use super::ebk::{search, view_from_sets, EbkView, ReversedEbkView};

fn sip(parts: &[&[i64]]) -> bool {
    satisfies_sip(&concat(parts)).unwrap_or(false)
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(err!(Derivation, "{what}"))
    }
}

/// True when block `(0, 0)` of `m` equals `lambda a1 + a0`.
fn block_is(m: &BlockPencil, i: usize, j: usize, a1: &Mat, a0: &Mat, tol: f64) -> bool {
    let (b1, b0) = m.block(i, j);
    approx_eq(&b1, a1, tol) && approx_eq(&b0, a0, tol)
}

/// Positions `k - j`, `j = 0:k-2`, for which `pred(j)` holds.
fn positions(k: usize, pred: impl Fn(i64) -> bool) -> BTreeSet<usize> {
    (0..k.saturating_sub(1)).filter(|&j| pred(j as i64)).map(|j| k - j).collect()
}

/// Predicted wing rows and wing columns of a Fiedler pencil.
pub fn fiedler_wing_positions(q: &[i64], k: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let rows = positions(k, |j| sip(&[&[j], q]));
    let cols = positions(k, |j| sip(&[q, &[j]]));
    (rows, cols)
}

/// Block Kronecker view of the Fiedler pencil `F_q` with partition `(h(q)-1, h(rev q)-1)`.
pub fn fiedler_ebk(p: &MatrixPolynomial, q: &[i64], tol: f64) -> Result<EbkView> {
    let l = fiedler(p, q)?;
    let k = p.grade();
    let (rows, cols) = fiedler_wing_positions(q, k);
    ensure(rows.len() + 1 == h_count(q)?, "wing row count differs from h(q) - 1")?;
    ensure(cols.len() + 1 == h_count(&rev(q))?, "wing column count differs from h(rev q) - 1")?;
    let view = view_from_sets(&l, &rows, &cols, tol).map_err(to_derivation)?;
    ensure(view.check_as(p, tol), "body fails the AS condition")?;
    ensure(view.is_block_kronecker(tol), "wings are not L_p and L_q")?;
    ensure(view.body_rows()[0] == 1 && view.body_cols()[0] == 1, "first row or column is not body")?;
    ensure(block_is(&view.body(), 0, 0, p.coeff(k), p.coeff(k - 1), tol), "body (1,1) differs from lambda A_k + A_{k-1}")?;
    Ok(view)
}

fn to_derivation(e: Error) -> Error {
    match e {
        Error::NoPermutation(s) => Error::Derivation(s),
        other => other,
    }
}

fn values(t: &[Index]) -> Vec<i64> {
    t.iter().map(|i| i.value()).collect()
}

/// Predicted wing rows and columns of a proper GFP, as positions `j` in `1:k`.
pub fn gfp_wing_positions(q: &[i64], z: &[i64], k: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let zk = shift(z, k as i64);
    let ki = k as i64;
    let rows = (1..=k)
        .filter(|&j| sip(&[&[ki - j as i64], q]) && sip(&[&[j as i64 - 1], &zk]))
        .collect();
    let cols = (1..=k)
        .filter(|&j| sip(&[q, &[ki - j as i64]]) && sip(&[&zk, &[j as i64 - 1]]))
        .collect();
    (rows, cols)
}

/// Block Kronecker view of a proper GFP with partition `(h(qhat)-1, h(rev qhat)+k-h-2)`.
pub fn gfp_ebk(p: &MatrixPolynomial, q: &[Index], z: &[Index], tol: f64) -> Result<EbkView> {
    let g = gfp(p, q, z)?;
    if !g.is_proper {
        return Err(err!(Ineligible, "the GFP is not proper; normalize it first"));
    }
    let k = p.grade();
    let (qv, zv) = (values(q), values(z));
    let sp = simple_pair(&qv, &zv, k)?;
    let want_p = h_count(&sp.qhat)? - 1;
    let want_q = h_count(&rev(&sp.qhat))? + k - sp.h - 2;
    let (rows, cols) = gfp_wing_positions(&qv, &zv, k);
    ensure(rows.len() == want_p, "wing row count differs from h(qhat) - 1")?;
    ensure(cols.len() == want_q, "wing column count differs from h(rev qhat) + k - h - 2")?;
    let view = view_from_sets(&g.pencil, &rows, &cols, tol).map_err(to_derivation)?;
    ensure(view.check_as(p, tol), "body fails the AS condition")?;
    ensure(view.is_block_kronecker(tol), "wings are not L_p and L_q")?;
    Ok(view)
}

/// Scaling `left * K_{q,z} * right = K_{qt,zt}` that turns a GFP into a proper one.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    /// Block diagonal left factor.
    pub left: Mat,
    /// Block diagonal right factor.
    pub right: Mat,
    /// Proper `q` tuple.
    pub q: Vec<Index>,
    /// Proper `z` tuple.
    pub z: Vec<Index>,
}

/// Normalizes a GFP to a proper one, handling `-0` in `z` and `k` in `q` in that order.
///
/// When `-0` sits right of `-1` (or `-1` is absent) the factor `M_0^P` multiplies on the right and
/// `0` is appended to `q`; otherwise it multiplies on the left and `0` is prepended. The index `k`
/// is treated alike with `M_{-k}^P` and `k-1`. The identity is checked up to `tol`.
pub fn nonproper_normalize(p: &MatrixPolynomial, q: &[Index], z: &[Index], tol: f64) -> Result<Normalization> {
    let original = gfp(p, q, z)?;
    let (k, n) = (p.grade(), p.rows());
    let (mut q, mut z) = (q.to_vec(), z.to_vec());
    let mut left = Mat::identity(k * n, k * n);
    let mut right = Mat::identity(k * n, k * n);
    let factor = |idx: Index| -> Result<Mat> { elementary(k, n, idx, &trivial_assignment(p, &[idx])?[0]) };
    if let Some(pos0) = z.iter().position(|&i| i == Index::Neg(0)) {
        let m0 = factor(Index::Pos(0))?;
        z.remove(pos0);
        match z.iter().position(|&i| i == Index::Neg(1)) {
            Some(pos1) if pos1 >= pos0 => {
                left = m0 * left;
                q.insert(0, Index::Pos(0));
            }
            _ => {
                right *= m0;
                q.push(Index::Pos(0));
            }
        }
    }
    if let Some(posk) = q.iter().position(|&i| i == Index::Pos(k)) {
        let mk = factor(Index::Neg(k))?;
        q.remove(posk);
        match q.iter().position(|&i| i == Index::Pos(k - 1)) {
            Some(pos1) if pos1 >= posk => {
                left = mk * left;
                z.insert(0, Index::Neg(k));
            }
            _ => {
                right *= mk;
                z.push(Index::Neg(k));
            }
        }
    }
    let target = gfp(p, &q, &z)?;
    ensure(target.is_proper, "normalized GFP is not proper")?;
    let b1 = &left * &original.pencil.b1 * &right;
    let b0 = &left * &original.pencil.b0 * &right;
    ensure(
        approx_eq(&b1, &target.pencil.b1, tol) && approx_eq(&b0, &target.pencil.b0, tol),
        "scaled pencil differs from the proper GFP",
    )?;
    Ok(Normalization { left, right, q, z })
}

/// Predicted pure wing rows and columns of the `q`-side GFPR `M_lq (lambda M_{-k} - M_q) M_rq`.
pub fn q_side_wing_positions(lq: &[i64], q: &[i64], rq: &[i64], k: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let rows = positions(k, |j| sip(&[&rev(rq), &rev(q), &rev(lq), &[j]]));
    let cols = positions(k, |j| sip(&[lq, q, rq, &[j]]));
    (rows, cols)
}

fn q_side_view(l: &BlockPencil, poly: &MatrixPolynomial, lq: &[i64], q: &[i64], rq: &[i64], tol: f64) -> Result<EbkView> {
    let k = poly.grade();
    let want_p = h_count(q)? - 1;
    let want_q = h_count(&rev(q))? - 1;
    let (rows, cols) = q_side_wing_positions(lq, q, rq, k);
    let accept = |v: &EbkView| {
        v.check_as(poly, tol)
            && v.body_rows()[0] == 1
            && v.body_cols()[0] == 1
            && block_is(&v.body(), 0, 0, poly.coeff(k), poly.coeff(k - 1), tol)
            && rows.is_subset(&v.pure_wing_rows(tol))
            && cols.is_subset(&v.pure_wing_cols(tol))
    };
    search(l, want_p, want_q, tol, &accept).map_err(to_derivation)
}

fn require_q_side(spec: &GfprSpec, k: usize) -> Result<()> {
    if spec.z != [-(k as i64)] || !spec.lz.is_empty() || !spec.rz.is_empty() {
        return Err(err!(InvalidSpec, "a q-side GFPR needs z = (-k) and empty lz, rz"));
    }
    Ok(())
}

fn require_z_side(spec: &GfprSpec) -> Result<()> {
    if spec.q != [0] || !spec.lq.is_empty() || !spec.rq.is_empty() {
        return Err(err!(InvalidSpec, "a z-side GFPR needs q = (0) and empty lq, rq"));
    }
    Ok(())
}

/// Extended view of `M_lq(X) (lambda M_{-k} - M_q) M_rq(Y)` with partition `(h(q)-1, h(rev q)-1)`.
///
/// The body's `(1,1)` block is `lambda A_k + A_{k-1}` and the predicted positions hold pure wings.
pub fn gfpr_q_side_ebk(p: &MatrixPolynomial, spec: &GfprSpec, tol: f64) -> Result<EbkView> {
    require_q_side(spec, p.grade())?;
    let l = gfpr(p, spec)?;
    q_side_view(&l, p, &spec.lq, &spec.q, &spec.rq, tol)
}

/// `R_k rev(-L) R_k`, the reduction of a `z`-side pencil to a `q`-side one.
pub fn reduce_z_side(l: &BlockPencil) -> BlockPencil {
    let r = BlockPermutation::reversal(l.grid_rows());
    l.rev().neg().permute(&r, &r)
}

/// `rev(-P)`, whose coefficient `i` is `-A_{k-i}`.
pub fn reduce_polynomial(p: &MatrixPolynomial) -> MatrixPolynomial {
    let k = p.grade();
    p.map(|i, _| -p.coeff(k - i)).expect("same shapes")
}

fn z_side_view(l: &BlockPencil, poly: &MatrixPolynomial, lz: &[i64], z: &[i64], rz: &[i64], tol: f64) -> Result<ReversedEbkView> {
    let k = poly.grade();
    let ki = k as i64;
    let reduced = q_side_view(&reduce_z_side(l), &reduce_polynomial(poly), &shift(lz, ki), &shift(z, ki), &shift(rz, ki), tol)?;
    let view = ReversedEbkView::from_reduced(&reduced);
    ensure(view.pencil == l.permute(&view.perm_l, &view.perm_r), "reversed view does not come from the source")?;
    ensure(check_as(&view.body(), poly, tol), "body fails the AS condition")?;
    ensure(view.perm_l.as_slice()[k - 1] == k && view.perm_r.as_slice()[k - 1] == k, "last row or column is not body")?;
    ensure(block_is(&view.body(), view.left, view.top, poly.coeff(1), poly.coeff(0), tol), "last body block differs from lambda A_1 + A_0")?;
    Ok(view)
}

/// Reversed view `[[0, L1], [L2^B, N]]` of `M_lz(Z) (lambda M_z - M_0) M_rz(W)`.
///
/// The zero block has `h(k+z)-1` rows and `h(rev(k+z))-1` columns, and `N` satisfies AS for `p`.
pub fn gfpr_z_side_ebk(p: &MatrixPolynomial, spec: &GfprSpec, tol: f64) -> Result<ReversedEbkView> {
    require_z_side(spec)?;
    let l = gfpr(p, spec)?;
    z_side_view(&l, p, &spec.lz, &spec.z, &spec.rz, tol)
}

/// Partition sizes `(h(q)+h(k+z)-2, h(rev q)+h(rev(k+z))-2)` of a GFPR.
pub fn gfpr_partition(spec: &GfprSpec, k: usize) -> Result<(usize, usize)> {
    let kz = shift(&spec.z, k as i64);
    Ok((h_count(&spec.q)? + h_count(&kz)? - 2, h_count(&rev(&spec.q))? + h_count(&rev(&kz))? - 2))
}

/// Extended block Kronecker view of a GFPR with the partition of [`gfpr_partition`].
///
/// The wing positions are those of the `z`-side view of the top-left part `G` together with
/// those of the `q`-side view of the bottom-right part `F`.
pub fn gfpr_ebk(p: &MatrixPolynomial, spec: &GfprSpec, tol: f64) -> Result<EbkView> {
    let l = gfpr(p, spec)?;
    let (k, h) = (p.grade(), spec.h());
    let split = gfpr_split(p, spec, &l)?;
    let hi = h as i64;
    let g = z_side_view(&split.g, &split.z_poly, &shift(&spec.lz, hi), &shift(&spec.z, hi), &shift(&spec.rz, hi), tol)?;
    let f = q_side_view(&split.f, &split.q_poly, &spec.lq, &spec.q, &spec.rq, tol)?;
    let off = k - h - 1;
    let rows: BTreeSet<usize> = g.wing_rows().iter().copied().chain(f.wing_rows().iter().map(|i| i + off)).collect();
    let cols: BTreeSet<usize> = g.wing_cols().iter().copied().chain(f.wing_cols().iter().map(|j| j + off)).collect();
    let (want_p, want_q) = gfpr_partition(spec, k)?;
    ensure((rows.len(), cols.len()) == (want_p, want_q), "assembled wing counts differ from the predicted partition")?;
    let view = view_from_sets(&l, &rows, &cols, tol).map_err(to_derivation)?;
    ensure(view.check_as(p, tol), "body fails the AS condition")?;
    Ok(view)
}
