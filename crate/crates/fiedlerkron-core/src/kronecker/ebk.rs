//! Extended block Kronecker views `[[M, K2^B], [K1, 0]]` of block pencils and their recognition.
//!
//! A view is stored as the permuted pencil `C = P_l^T L P_r` together with the permutations and
//! the partition sizes. Body rows and columns keep their original relative order. Wing rows are
//! ordered by the first body column on which they are nonzero (ties by position), and wing
//! columns by the first body row; this staircase order makes wing factors block triangular.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::err;
use crate::error::Result;
use crate::matrix::{approx_eq, block, block_transpose, identity, BlockPermutation, Mat};
use crate::poly::{BlockPencil, MatrixPolynomial};

use super::antidiag::check_as;
use super::wing::{l_pencil, row_is_wing, scale_of, small, wing_factor};

/// Extended `(p, n, q, n)`-block Kronecker view of a source pencil.
#[derive(Debug, Clone, PartialEq)]
pub struct EbkView {
    /// The permuted pencil `C = P_l^T L P_r`.
    pub pencil: BlockPencil,
    /// Row permutation `l`: block row `i` of `C` is block row `l_i` of the source.
    pub perm_l: BlockPermutation,
    /// Column permutation `r`: block column `j` of `C` is block column `r_j` of the source.
    pub perm_r: BlockPermutation,
    /// Number of wing rows, the row count of `K1`.
    pub p: usize,
    /// Number of wing columns, the row count of `K2`.
    pub q: usize,
}

fn range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..hi).collect()
}

impl EbkView {
    /// Grid size `k = p + q + 1`.
    pub fn k(&self) -> usize {
        self.p + self.q + 1
    }

    /// Block size.
    pub fn n(&self) -> usize {
        self.pencil.n
    }

    /// Body `M`, a `(q+1) x (p+1)` grid.
    pub fn body(&self) -> BlockPencil {
        self.pencil.select(&range(0, self.q + 1), &range(0, self.p + 1))
    }

    /// Wing `K1`, a `p x (p+1)` grid.
    pub fn k1(&self) -> BlockPencil {
        self.pencil.select(&range(self.q + 1, self.k()), &range(0, self.p + 1))
    }

    /// Wing `K2`, a `q x (q+1)` grid; the view holds its block transpose in the top-right corner.
    pub fn k2(&self) -> BlockPencil {
        self.pencil.select(&range(0, self.q + 1), &range(self.p + 1, self.k())).block_transpose()
    }

    /// Bottom-right `p x q` corner, which must vanish.
    pub fn corner(&self) -> BlockPencil {
        self.pencil.select(&range(self.q + 1, self.k()), &range(self.p + 1, self.k()))
    }

    /// Factor `B1` with `K1 = B1 (L_p (x) I_n)`.
    pub fn factor_b1(&self, tol: f64) -> Result<Mat> {
        wing_factor(&self.k1(), tol)
    }

    /// Factor `B2` with `K2^B = (L_q^B (x) I_n) B2`, the block transpose of the factor of `K2`.
    pub fn factor_b2(&self, tol: f64) -> Result<Mat> {
        block_transpose(&wing_factor(&self.k2(), tol)?, self.n())
    }

    /// Minimal-basis flags of `K1` and `K2`.
    pub fn minimal_basis_flags(&self, tol: f64) -> [bool; 2] {
        let flag = |f: Result<Mat>| f.is_ok_and(|b| crate::matrix::is_nonsingular(&b));
        [flag(self.factor_b1(tol)), flag(self.factor_b2(tol))]
    }

    /// True when both wings are minimal bases, so an AS-verified view is a strong linearization.
    pub fn is_eligible(&self, tol: f64) -> bool {
        self.minimal_basis_flags(tol) == [true, true]
    }

    /// True when the wings are exactly `L_p (x) I_n` and `L_q (x) I_n`.
    pub fn is_block_kronecker(&self, tol: f64) -> bool {
        let n = self.n();
        self.k1().approx_eq(&l_pencil(self.p, n), tol) && self.k2().approx_eq(&l_pencil(self.q, n), tol)
    }

    /// Source positions (1-based) of the body rows, in view order.
    pub fn body_rows(&self) -> &[usize] {
        &self.perm_l.as_slice()[..=self.q]
    }

    /// Source positions (1-based) of the body columns, in view order.
    pub fn body_cols(&self) -> &[usize] {
        &self.perm_r.as_slice()[..=self.p]
    }

    /// Source positions (1-based) of the wing rows, in view order.
    pub fn wing_rows(&self) -> &[usize] {
        &self.perm_l.as_slice()[self.q + 1..]
    }

    /// Source positions (1-based) of the wing columns, in view order.
    pub fn wing_cols(&self) -> &[usize] {
        &self.perm_r.as_slice()[self.p + 1..]
    }

    /// Source pencil `P_l C P_r^T`.
    pub fn reassemble(&self) -> BlockPencil {
        self.pencil.permute(&self.perm_l.inverse(), &self.perm_r.inverse())
    }

    /// AS condition of the body for `poly`.
    pub fn check_as(&self, poly: &MatrixPolynomial, tol: f64) -> bool {
        check_as(&self.body(), poly, tol)
    }

    /// Structural validation: zero corner and both wings satisfy the wing equations.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let bound = tol * scale_of(&self.pencil);
        let corner = self.corner();
        if !(small(&corner.b1, bound) && small(&corner.b0, bound)) {
            return Err(err!(NoPermutation, "bottom-right corner is nonzero"));
        }
        let body_cols = range(0, self.p + 1);
        if !(self.q + 1..self.k()).all(|i| row_is_wing(&self.pencil, i, &body_cols, bound)) {
            return Err(err!(NoPermutation, "K1 violates the wing equations"));
        }
        let t = self.pencil.block_transpose();
        let body_rows = range(0, self.q + 1);
        if !(self.p + 1..self.k()).all(|j| row_is_wing(&t, j, &body_rows, bound)) {
            return Err(err!(NoPermutation, "K2 violates the wing equations"));
        }
        Ok(())
    }

    /// Source positions of wing rows equal to `-e_i^T (x) I + lambda e_{i+1}^T (x) I` over the body.
    pub fn pure_wing_rows(&self, tol: f64) -> BTreeSet<usize> {
        let k1 = self.k1();
        (0..self.p).filter(|&i| is_pure_row(&k1, i, tol)).map(|i| self.wing_rows()[i]).collect()
    }

    /// Source positions of wing columns equal to `-e_i (x) I + lambda e_{i+1} (x) I` over the body.
    pub fn pure_wing_cols(&self, tol: f64) -> BTreeSet<usize> {
        let k2 = self.k2();
        (0..self.q).filter(|&i| is_pure_row(&k2, i, tol)).map(|i| self.wing_cols()[i]).collect()
    }
}

fn is_pure_row(k: &BlockPencil, i: usize, tol: f64) -> bool {
    let n = k.n;
    let id = identity(n);
    (0..k.grid_cols() - 1).any(|a| {
        (0..k.grid_cols()).all(|j| {
            let (want1, want0) = match j {
                _ if j == a => (Mat::zeros(n, n), -&id),
                _ if j == a + 1 => (id.clone(), Mat::zeros(n, n)),
                _ => (Mat::zeros(n, n), Mat::zeros(n, n)),
            };
            approx_eq(&block(&k.b1, n, i, j), &want1, tol) && approx_eq(&block(&k.b0, n, i, j), &want0, tol)
        })
    })
}

fn first_nonzero(l: &BlockPencil, line: usize, over: &[usize], bound: f64) -> usize {
    over.iter()
        .position(|&j| {
            let (a, b) = l.block(line, j);
            !(small(&a, bound) && small(&b, bound))
        })
        .unwrap_or(over.len())
}

/// The canonical view of `l` with the given wing rows and wing columns (1-based positions).
///
/// Only structure is checked; AS is left to the caller.
pub fn view_from_sets(l: &BlockPencil, wing_rows: &BTreeSet<usize>, wing_cols: &BTreeSet<usize>, tol: f64) -> Result<EbkView> {
    let k = l.grid_rows();
    if l.grid_cols() != k {
        return Err(err!(Dimension, "pencil grid must be square"));
    }
    let (p, q) = (wing_rows.len(), wing_cols.len());
    if p + q + 1 != k || wing_rows.iter().chain(wing_cols).any(|&i| i == 0 || i > k) {
        return Err(err!(InvalidSpec, "wing sets of sizes {p} and {q} do not fit a grid of {k}"));
    }
    let bound = tol * scale_of(l);
    let body_rows: Vec<usize> = (0..k).filter(|i| !wing_rows.contains(&(i + 1))).collect();
    let body_cols: Vec<usize> = (0..k).filter(|j| !wing_cols.contains(&(j + 1))).collect();
    let mut wr: Vec<usize> = wing_rows.iter().map(|i| i - 1).collect();
    wr.sort_by_key(|&i| (first_nonzero(l, i, &body_cols, bound), i));
    let t = l.block_transpose();
    let mut wc: Vec<usize> = wing_cols.iter().map(|j| j - 1).collect();
    wc.sort_by_key(|&j| (first_nonzero(&t, j, &body_rows, bound), j));
    let perm_l = BlockPermutation::new(body_rows.iter().chain(&wr).map(|i| i + 1).collect())?;
    let perm_r = BlockPermutation::new(body_cols.iter().chain(&wc).map(|j| j + 1).collect())?;
    let view = EbkView { pencil: l.permute(&perm_l, &perm_r), perm_l, perm_r, p, q };
    view.validate(tol)?;
    Ok(view)
}

/// Checks that `c` itself is an extended block Kronecker pencil with partition `(p, q)`.
pub fn recognize_ebk(c: &BlockPencil, p: usize, q: usize, tol: f64) -> Result<EbkView> {
    let k = c.grid_rows();
    if c.grid_cols() != k || p + q + 1 != k {
        return Err(err!(Dimension, "partition ({p}, {q}) does not fit a {k} x {} grid", c.grid_cols()));
    }
    let view = EbkView {
        pencil: c.clone(),
        perm_l: BlockPermutation::identity(k),
        perm_r: BlockPermutation::identity(k),
        p,
        q,
    };
    view.validate(tol)?;
    Ok(view)
}

/// All partitions `(p, q)` under which `c` itself is an extended block Kronecker pencil.
pub fn recognize_all(c: &BlockPencil, tol: f64) -> Vec<EbkView> {
    let k = c.grid_rows();
    (0..k).filter_map(|p| recognize_ebk(c, p, k - 1 - p, tol).ok()).collect()
}

/// Lexicographic `r`-subsets of `items`.
fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..r).rev().find(|&i| idx[i] != i + items.len() - r) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// First view at `(p, q)` in lexicographic order of (wing columns, wing rows) accepted by `accept`.
pub(crate) fn search(l: &BlockPencil, p: usize, q: usize, tol: f64, accept: &dyn Fn(&EbkView) -> bool) -> Result<EbkView> {
    let k = l.grid_rows();
    if l.grid_cols() != k || p + q + 1 != k {
        return Err(err!(Dimension, "partition ({p}, {q}) does not fit a {k} x {} grid", l.grid_cols()));
    }
    let bound = tol * scale_of(l);
    let t = l.block_transpose();
    let all: Vec<usize> = (0..k).collect();
    for wc in combinations(&all, q) {
        let bc: Vec<usize> = all.iter().copied().filter(|j| !wc.contains(j)).collect();
        let candidates: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&i| {
                wc.iter().all(|&j| {
                    let (a, b) = l.block(i, j);
                    small(&a, bound) && small(&b, bound)
                }) && row_is_wing(l, i, &bc, bound)
            })
            .collect();
        for wr in combinations(&candidates, p) {
            let br: Vec<usize> = all.iter().copied().filter(|i| !wr.contains(i)).collect();
            if !wc.iter().all(|&j| row_is_wing(&t, j, &br, bound)) {
                continue;
            }
            let rows = wr.iter().map(|i| i + 1).collect();
            let cols = wc.iter().map(|j| j + 1).collect();
            if let Ok(view) = view_from_sets(l, &rows, &cols, tol) {
                if accept(&view) {
                    return Ok(view);
                }
            }
        }
    }
    Err(err!(NoPermutation, "no block permutation gives an extended ({p}, {q}) block Kronecker pencil"))
}

/// Block permutations turning `l` into an extended `(p, n, q, n)`-block Kronecker pencil.
///
/// When `poly` is given the body must also satisfy the AS condition for it.
pub fn permute_to_ebk(l: &BlockPencil, p: usize, q: usize, poly: Option<&MatrixPolynomial>, tol: f64) -> Result<EbkView> {
    search(l, p, q, tol, &|v| poly.is_none_or(|pp| v.check_as(pp, tol)))
}

/// One view for every partition `(p, q)` reachable by block permutations, in increasing `p`.
pub fn enumerate_ebk(l: &BlockPencil, poly: Option<&MatrixPolynomial>, tol: f64) -> Vec<EbkView> {
    let k = l.grid_rows();
    (0..k).filter_map(|p| permute_to_ebk(l, p, k - 1 - p, poly, tol).ok()).collect()
}

/// Reversed view `[[0, L1], [L2^B, N]]` with a `top x left` zero block.
#[derive(Debug, Clone, PartialEq)]
pub struct ReversedEbkView {
    /// The permuted pencil `C = P_l^T L P_r`.
    pub pencil: BlockPencil,
    /// Row permutation.
    pub perm_l: BlockPermutation,
    /// Column permutation.
    pub perm_r: BlockPermutation,
    /// Block rows of the zero block.
    pub top: usize,
    /// Block columns of the zero block.
    pub left: usize,
}

impl ReversedEbkView {
    /// Grid size.
    pub fn k(&self) -> usize {
        self.top + self.left + 1
    }

    /// Body `N`, the bottom-right `(left+1) x (top+1)` grid.
    pub fn body(&self) -> BlockPencil {
        self.pencil.select(&range(self.top, self.k()), &range(self.left, self.k()))
    }

    /// Top-right `L1`.
    pub fn l1(&self) -> BlockPencil {
        self.pencil.select(&range(0, self.top), &range(self.left, self.k()))
    }

    /// Bottom-left `L2^B`, returned block transposed as `L2`.
    pub fn l2(&self) -> BlockPencil {
        self.pencil.select(&range(self.top, self.k()), &range(0, self.left)).block_transpose()
    }

    /// Top-left zero block.
    pub fn corner(&self) -> BlockPencil {
        self.pencil.select(&range(0, self.top), &range(0, self.left))
    }

    /// Source positions of the zero-block rows.
    pub fn wing_rows(&self) -> &[usize] {
        &self.perm_l.as_slice()[..self.top]
    }

    /// Source positions of the zero-block columns.
    pub fn wing_cols(&self) -> &[usize] {
        &self.perm_r.as_slice()[..self.left]
    }

    /// Source pencil `P_l C P_r^T`.
    pub fn reassemble(&self) -> BlockPencil {
        self.pencil.permute(&self.perm_l.inverse(), &self.perm_r.inverse())
    }

    /// `-rev(R C R)` with conjugated permutations: the ordinary view of the reduced problem maps here.
    pub fn from_reduced(v: &EbkView) -> Self {
        let k = v.k();
        let r = BlockPermutation::reversal(k);
        let c = v.pencil.permute(&r, &r).rev().neg();
        Self {
            pencil: c,
            perm_l: v.perm_l.conjugate_by_reversal(),
            perm_r: v.perm_r.conjugate_by_reversal(),
            top: v.p,
            left: v.q,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{from_real_rows, re};

    /// Block Kronecker pencil `[[M, L_q^T], [L_p, 0]]` for `n = 1` and a body of given entries.
    fn kronecker(p: usize, q: usize, body1: &[f64], body0: &[f64]) -> BlockPencil {
        let k = p + q + 1;
        let mut c = BlockPencil::zeros(k, k, 1);
        for i in 0..=q {
            for j in 0..=p {
                c.b1[(i, j)] = re(body1[i * (p + 1) + j]);
                c.b0[(i, j)] = re(body0[i * (p + 1) + j]);
            }
        }
        let lp = l_pencil(p, 1);
        c.b1.view_mut((q + 1, 0), (p, p + 1)).copy_from(&lp.b1);
        c.b0.view_mut((q + 1, 0), (p, p + 1)).copy_from(&lp.b0);
        let lq = l_pencil(q, 1).block_transpose();
        c.b1.view_mut((0, p + 1), (q + 1, q)).copy_from(&lq.b1);
        c.b0.view_mut((0, p + 1), (q + 1, q)).copy_from(&lq.b0);
        c
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(&[1, 2, 3], 2), alloc::vec![alloc::vec![1, 2], alloc::vec![1, 3], alloc::vec![2, 3]]);
        assert_eq!(combinations(&[4, 5], 0), alloc::vec![Vec::<usize>::new()]);
        assert!(combinations(&[1], 2).is_empty());
    }

    #[test]
    fn block_kronecker_pencil_is_recognized_with_identity_factors() {
        let c = kronecker(2, 1, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[7.0, 8.0, 9.0, 1.0, 2.0, 3.0]);
        let v = recognize_ebk(&c, 2, 1, 0.0).unwrap();
        assert!(v.is_block_kronecker(0.0));
        assert_eq!(v.factor_b1(0.0).unwrap(), identity(2));
        assert_eq!(v.factor_b2(0.0).unwrap(), identity(1));
        assert_eq!(v.reassemble(), c);
        assert!(recognize_ebk(&c, 1, 2, 0.0).is_err());
    }

    #[test]
    fn permuted_kronecker_pencil_is_found_again() {
        let c = kronecker(1, 2, &[1.0, 0.0, 2.0, 1.0, 0.0, 3.0], &[4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        // Wing lines move between body lines; the body keeps its relative order.
        let shuffle_l = BlockPermutation::new(alloc::vec![1, 4, 2, 3]).unwrap();
        let shuffle_r = BlockPermutation::new(alloc::vec![3, 1, 4, 2]).unwrap();
        let l = c.permute(&shuffle_l, &shuffle_r);
        let poly = crate::kronecker::body_polynomial(&c.select(&[0, 1, 2], &[0, 1])).unwrap();
        let v = permute_to_ebk(&l, 1, 2, Some(&poly), 0.0).unwrap();
        assert_eq!(v.reassemble(), l);
        assert!(v.check_as(&poly, 0.0));
        assert!(v.is_eligible(0.0));
        assert!(enumerate_ebk(&l, Some(&poly), 0.0).iter().any(|w| (w.p, w.q) == (1, 2)));
    }

    #[test]
    fn wing_rows_follow_the_staircase() {
        // Source rows: K1 row 2, K1 row 1, body; K1 = [[3, 7], [0, 3]] (L_2 (x) I).
        let c = BlockPencil::new(
            from_real_rows(3, 3, &[0.0, 0.0, 3.0, 0.0, 3.0, 7.0, 0.0, 0.0, 0.0]),
            from_real_rows(3, 3, &[0.0, -3.0, 0.0, -3.0, -7.0, 0.0, 1.0, 0.0, 0.0]),
            1,
        )
        .unwrap();
        let rows = [1, 2].into_iter().collect();
        let v = view_from_sets(&c, &rows, &BTreeSet::new(), 0.0).unwrap();
        assert_eq!(v.wing_rows(), &[2, 1]);
        assert_eq!(v.factor_b1(0.0).unwrap(), from_real_rows(2, 2, &[3.0, 7.0, 0.0, 3.0]));
        assert_eq!(v.body().b0, from_real_rows(1, 3, &[1.0, 0.0, 0.0]));
        assert_eq!(v.reassemble(), c);
    }

    #[test]
    fn reversed_view_maps_back() {
        let c = kronecker(1, 1, &[1.0, 2.0, 3.0, 4.0], &[5.0, 6.0, 7.0, 8.0]);
        let v = recognize_ebk(&c, 1, 1, 0.0).unwrap();
        let r = ReversedEbkView::from_reduced(&v);
        assert!(r.corner().b1.iter().chain(r.corner().b0.iter()).all(|z| z.norm() == 0.0));
        let rr = BlockPermutation::reversal(3);
        assert_eq!(r.reassemble(), c.permute(&rr, &rr).rev().neg());
    }
}
