//! Fiedler pencils, generalized Fiedler pencils (GFP) and GFP with repetition (GFPR).

use alloc::vec::Vec;

use crate::elementary::{product, trivial_assignment, Assignment};
use crate::err;
use crate::error::Result;
use crate::matrix::Mat;
use crate::poly::{BlockPencil, MatrixPolynomial};
use crate::tuples::{concat, csf, format_indices, format_tuple, negate, rev, satisfies_sip, to_indices, Index};

fn require_square(p: &MatrixPolynomial) -> Result<()> {
    if !p.is_square() {
        return Err(err!(Dimension, "polynomial must be square, got {}x{}", p.rows(), p.cols()));
    }
    if p.grade() == 0 {
        return Err(err!(InvalidSpec, "polynomial grade must be at least one"));
    }
    Ok(())
}

fn is_permutation_of(t: &[i64], lo: i64, hi: i64) -> bool {
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    sorted == (lo..=hi).collect::<Vec<_>>()
}

/// `lambda M_z(Z) - M_q(Q)` with trivial assignments, as a block pencil.
fn pencil_from_factors(p: &MatrixPolynomial, z: &[Index], q: &[Index]) -> Result<BlockPencil> {
    let (k, n) = (p.grade(), p.rows());
    let b1 = product(k, n, z, &trivial_assignment(p, z)?)?;
    let b0 = -product(k, n, q, &trivial_assignment(p, q)?)?;
    BlockPencil::new(b1, b0, n)
}

/// Fiedler pencil `lambda M_{-k}^P - M_q^P` for a permutation `q` of `0:k-1`.
pub fn fiedler(p: &MatrixPolynomial, q: &[i64]) -> Result<BlockPencil> {
    require_square(p)?;
    let k = p.grade();
    if !is_permutation_of(q, 0, k as i64 - 1) {
        return Err(err!(InvalidSpec, "({}) is not a permutation of 0:{}", format_tuple(q), k - 1));
    }
    pencil_from_factors(p, &[Index::Neg(k)], &to_indices(q))
}

/// A generalized Fiedler pencil together with its properness flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Gfp {
    /// The pencil `lambda M_z^P - M_q^P`.
    pub pencil: BlockPencil,
    /// True when `0` belongs to `q` and `-k` to `z`.
    pub is_proper: bool,
}

/// Generalized Fiedler pencil `lambda M_z^P - M_q^P`.
///
/// `q` holds nonnegative indices and `z` negative ones (`-0` allowed); their magnitudes must
/// partition `0:k`.
pub fn gfp(p: &MatrixPolynomial, q: &[Index], z: &[Index]) -> Result<Gfp> {
    require_square(p)?;
    let k = p.grade();
    if q.iter().any(|i| i.is_negative()) || z.iter().any(|i| !i.is_negative()) {
        return Err(err!(InvalidSpec, "q must be nonnegative and z negative"));
    }
    let mags: Vec<i64> = q.iter().chain(z).map(|i| i.magnitude() as i64).collect();
    if !is_permutation_of(&mags, 0, k as i64) {
        return Err(err!(
            InvalidSpec,
            "q = ({}) and z = ({}) do not partition 0:{k}",
            format_indices(q),
            format_indices(z)
        ));
    }
    let is_proper = q.contains(&Index::Pos(0)) && z.contains(&Index::Neg(k));
    Ok(Gfp { pencil: pencil_from_factors(p, z, q)?, is_proper })
}

/// Decomposition `z ~ (m, -k:-h-1)` of a proper GFP with `qhat = (-rev(m), q)` a permutation of `0:h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePair {
    /// Split point.
    pub h: usize,
    /// Entries of `z` outside the block `-k:-h-1`, in their original order.
    pub m: Vec<i64>,
    /// `(-rev(m), q)`.
    pub qhat: Vec<i64>,
}

/// Simple pair of a proper GFP with grade `k`; the largest admissible `h` is returned.
pub fn simple_pair(q: &[i64], z: &[i64], k: usize) -> Result<SimplePair> {
    let k_i = k as i64;
    if !q.contains(&0) || !z.contains(&-k_i) || q.iter().any(|&i| i < 0 || i >= k_i) {
        return Err(err!(InvalidSpec, "the GFP is not proper"));
    }
    if z.iter().any(|&i| i >= 0) {
        return Err(err!(InvalidSpec, "z must be negative"));
    }
    let z_form = csf(z)?;
    for h in (0..k).rev() {
        let tail: Vec<i64> = (-k_i..=-(h as i64) - 1).collect();
        if !tail.iter().all(|i| z.contains(i)) {
            continue;
        }
        let m: Vec<i64> = z.iter().copied().filter(|i| !tail.contains(i)).collect();
        if csf(&concat(&[&m, &tail]))? != z_form {
            continue;
        }
        let qhat = concat(&[&negate(&rev(&m)), q]);
        if is_permutation_of(&qhat, 0, h as i64) {
            return Ok(SimplePair { h, m, qhat });
        }
    }
    Err(err!(InvalidSpec, "no simple pair for q = ({}), z = ({})", format_tuple(q), format_tuple(z)))
}

/// Index tuples and assignments of a GFPR `M_{lq,lz}(X,Z) (lambda M_z^P - M_q^P) M_{rz,rq}(W,Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GfprSpec {
    /// Permutation of `0:h`.
    pub q: Vec<i64>,
    /// Permutation of `-k:-h-1`.
    pub z: Vec<i64>,
    /// Left tuple on the `q` side, indices in `0:h-1`.
    pub lq: Vec<i64>,
    /// Right tuple on the `q` side, indices in `0:h-1`.
    pub rq: Vec<i64>,
    /// Left tuple on the `z` side, indices in `-k:-h-2`.
    pub lz: Vec<i64>,
    /// Right tuple on the `z` side, indices in `-k:-h-2`.
    pub rz: Vec<i64>,
    /// Assignment for `lq`.
    pub x: Assignment,
    /// Assignment for `rq`.
    pub y: Assignment,
    /// Assignment for `lz`.
    pub zs: Assignment,
    /// Assignment for `rz`.
    pub w: Assignment,
}

impl GfprSpec {
    /// Spec with empty outer tuples.
    pub fn new(q: Vec<i64>, z: Vec<i64>) -> Self {
        Self {
            q,
            z,
            lq: Vec::new(),
            rq: Vec::new(),
            lz: Vec::new(),
            rz: Vec::new(),
            x: Assignment::Trivial,
            y: Assignment::Trivial,
            zs: Assignment::Trivial,
            w: Assignment::Trivial,
        }
    }

    /// Replaces the outer tuples, keeping trivial assignments.
    pub fn with_outer(mut self, lq: Vec<i64>, rq: Vec<i64>, lz: Vec<i64>, rz: Vec<i64>) -> Self {
        self.lq = lq;
        self.rq = rq;
        self.lz = lz;
        self.rz = rz;
        self
    }

    /// `h = len(q) - 1`.
    pub fn h(&self) -> usize {
        self.q.len().saturating_sub(1)
    }

    /// Checks index ranges and the two SIP conditions for grade `k`.
    pub fn validate(&self, k: usize) -> Result<()> {
        if self.q.is_empty() || self.q.len() > k {
            return Err(err!(InvalidSpec, "q must have between 1 and k = {k} entries"));
        }
        let (h, k) = (self.h() as i64, k as i64);
        if !is_permutation_of(&self.q, 0, h) {
            return Err(err!(InvalidSpec, "q = ({}) is not a permutation of 0:{h}", format_tuple(&self.q)));
        }
        if !is_permutation_of(&self.z, -k, -h - 1) {
            return Err(err!(InvalidSpec, "z = ({}) is not a permutation of -{k}:{}", format_tuple(&self.z), -h - 1));
        }
        let in_range = |t: &[i64], lo: i64, hi: i64| t.iter().all(|&i| lo <= i && i <= hi);
        if !in_range(&self.lq, 0, h - 1) || !in_range(&self.rq, 0, h - 1) {
            return Err(err!(OutOfRange, "lq and rq must lie in 0:{}", h - 1));
        }
        if !in_range(&self.lz, -k, -h - 2) || !in_range(&self.rz, -k, -h - 2) {
            return Err(err!(OutOfRange, "lz and rz must lie in -{k}:{}", -h - 2));
        }
        let qside = concat(&[&self.lq, &self.q, &self.rq]);
        if !satisfies_sip(&qside)? {
            return Err(err!(NotSip, "(lq, q, rq) = ({}) violates SIP", format_tuple(&qside)));
        }
        let zside = concat(&[&self.lz, &self.z, &self.rz]);
        if !satisfies_sip(&zside)? {
            return Err(err!(NotSip, "(lz, z, rz) = ({}) violates SIP", format_tuple(&zside)));
        }
        Ok(())
    }
}

fn outer_factor(p: &MatrixPolynomial, t: &[i64], a: &Assignment) -> Result<Mat> {
    let idx = to_indices(t);
    product(p.grade(), p.rows(), &idx, &a.resolve(p, &idx)?)
}

/// The GFPR of `spec` for `p`.
pub fn gfpr(p: &MatrixPolynomial, spec: &GfprSpec) -> Result<BlockPencil> {
    require_square(p)?;
    spec.validate(p.grade())?;
    let core = pencil_from_factors(p, &to_indices(&spec.z), &to_indices(&spec.q))?;
    let left = outer_factor(p, &spec.lq, &spec.x)? * outer_factor(p, &spec.lz, &spec.zs)?;
    let right = outer_factor(p, &spec.rz, &spec.w)? * outer_factor(p, &spec.rq, &spec.y)?;
    BlockPencil::new(&left * &core.b1 * &right, &left * &core.b0 * &right, p.rows())
}

/// Partition of a GFPR into its `z`-part `G`, its `q`-part `F` and the shared block `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct GfprSplit {
    /// Split point `h`.
    pub h: usize,
    /// Top-left `(k-h-1) x (k-h-1)` blocks.
    pub dz: BlockPencil,
    /// Block column above `c`.
    pub yz: BlockPencil,
    /// Block row left of `c`.
    pub xz: BlockPencil,
    /// Shared block `lambda A_{h+1} + A_h`.
    pub c: BlockPencil,
    /// Block row right of `c`.
    pub xq: BlockPencil,
    /// Block column below `c`.
    pub yq: BlockPencil,
    /// Bottom-right `h x h` blocks.
    pub dq: BlockPencil,
    /// GFPR of grade `h + 1` for `Q = A_0 + ... + lambda^{h+1} A_{h+1}`.
    pub f: BlockPencil,
    /// GFPR of grade `k - h` for `Z = A_h + ... + lambda^{k-h} A_k`.
    pub g: BlockPencil,
    /// `Q`.
    pub q_poly: MatrixPolynomial,
    /// `Z`.
    pub z_poly: MatrixPolynomial,
}

fn explicit_for(p: &MatrixPolynomial, t: &[i64], a: &Assignment) -> Result<Assignment> {
    Ok(Assignment::Explicit(a.resolve(p, &to_indices(t))?))
}

/// Splits the GFPR `pencil = gfpr(p, spec)` and rebuilds `F` and `G` from their own formulas.
///
/// Fails when a corner block is nonzero or when either sub-pencil disagrees with its formula.
pub fn gfpr_split(p: &MatrixPolynomial, spec: &GfprSpec, pencil: &BlockPencil) -> Result<GfprSplit> {
    spec.validate(p.grade())?;
    let (k, h) = (p.grade(), spec.h());
    let zr: Vec<usize> = (0..k - h - 1).collect();
    let cr = [k - h - 1];
    let qr: Vec<usize> = (k - h..k).collect();
    for &i in &zr {
        for &j in &qr {
            if !pencil.block_is_zero(i, j) || !pencil.block_is_zero(j, i) {
                return Err(err!(Derivation, "corner block ({}, {}) is nonzero", i + 1, j + 1));
            }
        }
    }
    let g_idx: Vec<usize> = (0..k - h).collect();
    let f_idx: Vec<usize> = (k - h - 1..k).collect();
    let q_poly = p.slice(0, h + 1)?;
    let z_poly = p.slice(h, k)?;

    // Q-part: trivial assignments of Q coincide with those of P on indices 0:h+1.
    let mut fspec = GfprSpec::new(spec.q.clone(), alloc::vec![-(h as i64) - 1]);
    fspec.lq = spec.lq.clone();
    fspec.rq = spec.rq.clone();
    fspec.x = explicit_for(p, &spec.lq, &spec.x)?;
    fspec.y = explicit_for(p, &spec.rq, &spec.y)?;
    let f = gfpr(&q_poly, &fspec)?;

    // Z-part: indices shift by h, and the zero index of Z carries A_h.
    let shift = |t: &[i64]| -> Vec<i64> { t.iter().map(|&i| i + h as i64).collect() };
    let mut gspec = GfprSpec::new(alloc::vec![0], shift(&spec.z));
    gspec.lz = shift(&spec.lz);
    gspec.rz = shift(&spec.rz);
    gspec.zs = explicit_for(p, &spec.lz, &spec.zs)?;
    gspec.w = explicit_for(p, &spec.rz, &spec.w)?;
    let g = gfpr(&z_poly, &gspec)?;

    if f != pencil.select(&f_idx, &f_idx) {
        return Err(err!(Derivation, "bottom-right part differs from the Q-part formula"));
    }
    if g != pencil.select(&g_idx, &g_idx) {
        return Err(err!(Derivation, "top-left part differs from the Z-part formula"));
    }
    Ok(GfprSplit {
        h,
        dz: pencil.select(&zr, &zr),
        yz: pencil.select(&zr, &cr),
        xz: pencil.select(&cr, &zr),
        c: pencil.select(&cr, &cr),
        xq: pencil.select(&cr, &qr),
        yq: pencil.select(&qr, &cr),
        dq: pencil.select(&qr, &qr),
        f,
        g,
        q_poly,
        z_poly,
    })
}

/// Reassembles a pencil from the `G` and `F` parts of a split.
pub fn gfpr_reassemble(split: &GfprSplit) -> BlockPencil {
    let (n, gk, fk) = (split.f.n, split.g.grid_rows(), split.f.grid_rows());
    let k = gk + fk - 1;
    let mut out = BlockPencil::zeros(k, k, n);
    out.b1.view_mut((0, 0), (gk * n, gk * n)).copy_from(&split.g.b1);
    out.b0.view_mut((0, 0), (gk * n, gk * n)).copy_from(&split.g.b0);
    let off = (gk - 1) * n;
    let mut v1 = out.b1.view_mut((off, off), (fk * n, fk * n));
    v1 += &split.f.b1;
    let mut v0 = out.b0.view_mut((off, off), (fk * n, fk * n));
    v0 += &split.f.b0;
    let mut c1 = out.b1.view_mut((off, off), (n, n));
    c1 -= &split.c.b1;
    let mut c0 = out.b0.view_mut((off, off), (n, n));
    c0 -= &split.c.b0;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{block, identity, is_zero, re};
    use crate::tuples::parse_tuple;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(k: usize, n: usize, seed: u64) -> MatrixPolynomial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        MatrixPolynomial::new(
            (0..=k)
                .map(|_| Mat::from_fn(n, n, |_, _| re(rng.random_range(-5..=5) as f64)))
                .collect(),
        )
        .unwrap()
    }

    fn t(s: &str) -> Vec<i64> {
        parse_tuple(s).unwrap()
    }

    #[test]
    fn fiedler_small_case_matches_product() {
        let p = poly(2, 2, 1);
        let f = fiedler(&p, &[0, 1]).unwrap();
        let m0 = crate::elementary::elementary(2, 2, Index::Pos(0), &-p.coeff(0)).unwrap();
        let m1 = crate::elementary::elementary(2, 2, Index::Pos(1), &-p.coeff(1)).unwrap();
        assert_eq!(f.b0, -(m0 * m1));
        assert_eq!(block(&f.b1, 2, 0, 0), p.coeff(2).clone());
        assert!(fiedler(&p, &[0, 0]).is_err());
    }

    #[test]
    fn fiedler_is_gfp_and_gfpr() {
        let p = poly(4, 2, 2);
        let q = t("2,0,3,1");
        let f = fiedler(&p, &q).unwrap();
        let g = gfp(&p, &to_indices(&q), &[Index::Neg(4)]).unwrap();
        assert!(g.is_proper);
        assert_eq!(g.pencil, f);
        assert_eq!(gfpr(&p, &GfprSpec::new(q, vec![-4])).unwrap(), f);
    }

    #[test]
    fn fiedler_respects_tuple_equivalence() {
        let p = poly(5, 1, 3);
        assert_eq!(fiedler(&p, &t("0,2,4,1,3")).unwrap(), fiedler(&p, &t("4,2,0,3,1")).unwrap());
    }

    #[test]
    fn gfp_partition_and_properness() {
        let p = poly(6, 1, 4);
        let g = gfp(&p, &to_indices(&t("3,4,2,0")), &to_indices(&t("-1,-6,-5"))).unwrap();
        assert!(g.is_proper);
        let fixed = MatrixPolynomial::new((0..=6).map(|i| identity(1) * re(i as f64 + 1.0)).collect()).unwrap();
        let np = gfp(&fixed, &[Index::Pos(6), Index::Pos(1)], &parse_z("-5,-4,-3,-2,-0")).unwrap();
        assert!(!np.is_proper);
        assert!(gfp(&p, &to_indices(&t("3,4,2")), &to_indices(&t("-1,-6,-5"))).is_err());
    }

    fn parse_z(s: &str) -> Vec<Index> {
        crate::tuples::parse_indices(s).unwrap()
    }

    #[test]
    fn simple_pair_examples_and_reconstruction() {
        let sp = simple_pair(&t("3,4,2,0"), &t("-1,-6,-5"), 6).unwrap();
        assert_eq!(sp, SimplePair { h: 4, m: vec![-1], qhat: t("1,3,4,2,0") });
        let p = poly(6, 2, 5);
        let g = gfp(&p, &to_indices(&t("3,4,2,0")), &to_indices(&t("-1,-6,-5"))).unwrap();
        let (k, n) = (6, 2);
        let mm = product(k, n, &to_indices(&sp.m), &trivial_assignment(&p, &to_indices(&sp.m)).unwrap()).unwrap();
        let inner = pencil_from_factors(&p, &to_indices(&t("-6:-5")), &to_indices(&sp.qhat)).unwrap();
        assert_eq!(BlockPencil::new(&mm * &inner.b1, &mm * &inner.b0, n).unwrap(), g.pencil);

        let sp = simple_pair(&t("2,0,1"), &[-3], 3).unwrap();
        assert_eq!((sp.h, sp.m.is_empty(), sp.qhat), (2, true, t("2,0,1")));
        let sp = simple_pair(&t("1,0"), &t("-4:-2"), 4).unwrap();
        assert_eq!((sp.h, sp.m.is_empty()), (1, true));
        assert!(simple_pair(&t("1,2"), &t("-4,-3"), 4).is_err());
    }

    #[test]
    fn gfpr_rejects_bad_specs() {
        let p = poly(3, 1, 6);
        assert!(gfpr(&p, &GfprSpec::new(t("0,1"), t("-3"))).is_err());
        let bad = GfprSpec::new(t("0,1"), t("-3,-2")).with_outer(vec![], t("0,0"), vec![], vec![]);
        assert!(gfpr(&p, &bad).is_err());
    }

    fn random_spec(rng: &mut ChaCha8Rng, k: usize) -> GfprSpec {
        let h = rng.random_range(0..k);
        let mut q: Vec<i64> = (0..=h as i64).collect();
        let mut z: Vec<i64> = (-(k as i64)..=-(h as i64) - 1).collect();
        for i in (1..q.len()).rev() {
            q.swap(i, rng.random_range(0..=i));
        }
        for i in (1..z.len()).rev() {
            z.swap(i, rng.random_range(0..=i));
        }
        let grow = |rng: &mut ChaCha8Rng, base: &[i64], lo: i64, hi: i64, front: bool| -> Vec<i64> {
            let mut out: Vec<i64> = Vec::new();
            if lo > hi {
                return out;
            }
            for _ in 0..rng.random_range(0..5) {
                let x = rng.random_range(lo..=hi);
                let cand = if front { concat(&[&[x], &out]) } else { concat(&[&out, &[x]]) };
                let full = if front { concat(&[&cand, base]) } else { concat(&[base, &cand]) };
                if satisfies_sip(&full).unwrap() {
                    out = cand;
                }
            }
            out
        };
        let (hi_q, lo_z, hi_z) = (h as i64 - 1, -(k as i64), -(h as i64) - 2);
        let lq = grow(rng, &q, 0, hi_q, true);
        let rq = grow(rng, &concat(&[&lq, &q]), 0, hi_q, false);
        let lz = grow(rng, &z, lo_z, hi_z, true);
        let rz = grow(rng, &concat(&[&lz, &z]), lo_z, hi_z, false);
        GfprSpec::new(q, z).with_outer(lq, rq, lz, rz)
    }

    #[test]
    fn random_gfpr_split_reassembles_and_has_block_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let k = rng.random_range(1..8);
            let n = rng.random_range(1..3);
            let p = poly(k, n, rng.random());
            let mut spec = random_spec(&mut rng, k);
            spec.x = Assignment::Explicit(
                (0..spec.lq.len()).map(|_| Mat::from_fn(n, n, |_, _| re(rng.random_range(-3..=3) as f64))).collect(),
            );
            let l = gfpr(&p, &spec).unwrap();
            let split = gfpr_split(&p, &spec, &l).unwrap();
            assert_eq!(gfpr_reassemble(&split), l);
            let h = spec.h();
            assert_eq!(split.c.b1, p.coeff(h + 1).clone());
            assert_eq!(split.c.b0, p.coeff(h).clone());
            // Each factor only touches its own diagonal window.
            let lq = outer_factor(&p, &spec.lq, &spec.x).unwrap();
            let lz = outer_factor(&p, &spec.lz, &spec.zs).unwrap();
            let (top_q, top_z) = ((k - h) * n, (k - h - 1) * n);
            assert_eq!(lq.view((0, 0), (top_q, top_q)).into_owned(), identity(top_q));
            assert!(is_zero(&lq.view((0, top_q), (top_q, k * n - top_q)).into_owned()));
            let tail = (h + 1) * n;
            assert_eq!(lz.view((top_z, top_z), (tail, tail)).into_owned(), identity(tail));
            assert!(is_zero(&lz.view((0, top_z), (top_z, tail)).into_owned()));
        }
    }
}
