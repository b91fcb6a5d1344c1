//! Index tuples: the successor infix property, column standard form, heads and index types.
//!
//! Tuples used combinatorially are `i64` slices. Factor indices, which may include the
//! special index `-0`, are [`Index`] values.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::err;
use crate::error::Result;

/// Index of an elementary matrix: `Pos(i)` is `i`, `Neg(i)` is `-i` and `Neg(0)` is `-0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Index {
    /// Nonnegative index `i`.
    Pos(usize),
    /// Negative index `-i`, including `-0`.
    Neg(usize),
}

impl Index {
    /// Index for a signed integer; zero maps to `Pos(0)`.
    pub fn from_signed(i: i64) -> Self {
        if i < 0 {
            Index::Neg(i.unsigned_abs() as usize)
        } else {
            Index::Pos(i as usize)
        }
    }

    /// Signed value; `-0` maps to `0`.
    pub fn value(self) -> i64 {
        match self {
            Index::Pos(i) => i as i64,
            Index::Neg(i) => -(i as i64),
        }
    }

    /// Absolute value of the index.
    pub fn magnitude(self) -> usize {
        match self {
            Index::Pos(i) | Index::Neg(i) => i,
        }
    }

    /// True for `Neg(_)`, including `-0`.
    pub fn is_negative(self) -> bool {
        matches!(self, Index::Neg(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Pos(i) => write!(f, "{i}"),
            Index::Neg(i) => write!(f, "-{i}"),
        }
    }
}

/// Converts a signed tuple into factor indices.
pub fn to_indices(t: &[i64]) -> Vec<Index> {
    t.iter().map(|&i| Index::from_signed(i)).collect()
}

/// Parses tuple syntax such as `3:5,2,0:1`, `-6:-1` or `-4,-2,-0`.
///
/// Surrounding parentheses and whitespace are ignored; `a:b` expands to `a, a+1, ..., b`.
pub fn parse_indices(s: &str) -> Result<Vec<Index>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    let mut out = Vec::new();
    if s.is_empty() {
        return Ok(out);
    }
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once(':') {
            let a = parse_int(a)?;
            let b = parse_int(b)?;
            if a > b {
                return Err(err!(Parse, "string {part} is decreasing"));
            }
            out.extend((a..=b).map(Index::from_signed));
        } else if part == "-0" {
            out.push(Index::Neg(0));
        } else {
            out.push(Index::from_signed(parse_int(part)?));
        }
    }
    Ok(out)
}

/// Parses a tuple of signed integers; `-0` is rejected.
pub fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    let idx = parse_indices(s)?;
    if idx.contains(&Index::Neg(0)) {
        return Err(err!(Parse, "-0 is only meaningful as a factor index"));
    }
    Ok(idx.into_iter().map(Index::value).collect())
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| err!(Parse, "{s:?} is not an integer"))
}

/// Formats a tuple, compressing increasing runs of consecutive integers into `a:b`.
pub fn format_tuple(t: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < t.len() {
        let mut j = i;
        while j + 1 < t.len() && t[j + 1] == t[j] + 1 {
            j += 1;
        }
        if j > i {
            parts.push(alloc::format!("{}:{}", t[i], t[j]));
        } else {
            parts.push(t[i].to_string());
        }
        i = j + 1;
    }
    parts.join(",")
}

/// Formats factor indices separated by commas.
pub fn format_indices(t: &[Index]) -> String {
    t.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn check_sign_homogeneous(t: &[i64]) -> Result<()> {
    let neg = t.iter().any(|&i| i < 0);
    let nonneg = t.iter().any(|&i| i >= 0);
    if neg && nonneg {
        return Err(err!(InvalidSpec, "tuple ({}) mixes signs", format_tuple(t)));
    }
    Ok(())
}

/// Successor infix property: between any two equal entries `c` lies an entry `c + 1`.
///
/// Mixed-sign tuples are rejected.
pub fn satisfies_sip(t: &[i64]) -> Result<bool> {
    check_sign_homogeneous(t)?;
    Ok(sip_unchecked(t))
}

fn sip_unchecked(t: &[i64]) -> bool {
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            if t[a] == t[b] {
                if !t[a + 1..b].contains(&(t[a] + 1)) {
                    return false;
                }
                break;
            }
        }
    }
    true
}

/// Tuple in column standard form: strings `(a_1:b_1, ..., a_r:b_r)` with strictly decreasing heads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Csf {
    strings: Vec<(i64, i64)>,
}

impl Csf {
    /// The strings `(a_j, b_j)` in order.
    pub fn strings(&self) -> &[(i64, i64)] {
        &self.strings
    }

    /// The expanded tuple.
    pub fn tuple(&self) -> Vec<i64> {
        self.strings.iter().flat_map(|&(a, b)| a..=b).collect()
    }

    /// String heads `b_j`, in decreasing order.
    pub fn heads(&self) -> Vec<i64> {
        self.strings.iter().map(|&(_, b)| b).collect()
    }
}

impl fmt::Display for Csf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tuple(&self.tuple()))
    }
}

#[inline]
fn commute(x: i64, y: i64) -> bool {
    (x - y).abs() > 1
}

/// Column standard form together with the reordering that produces it.
///
/// `positions[i]` is the position in `t` of the `i`-th entry of the canonical tuple. The
/// reordering is a sequence of swaps of adjacent commuting entries, so a payload attached to
/// `t` follows the same permutation.
pub fn csf_with_positions(t: &[i64]) -> Result<(Csf, Vec<usize>)> {
    if !satisfies_sip(t)? {
        return Err(err!(NotSip, "({}) has no column standard form", format_tuple(t)));
    }
    // Repeatedly extract the largest entry that commutes with everything before it.
    let mut remaining: Vec<usize> = (0..t.len()).collect();
    let mut positions = Vec::with_capacity(t.len());
    while !remaining.is_empty() {
        let mut best: Option<usize> = None;
        for (r, &p) in remaining.iter().enumerate() {
            let free = remaining[..r].iter().all(|&q| commute(t[q], t[p]));
            if free && best.is_none_or(|b| t[p] > t[remaining[b]]) {
                best = Some(r);
            }
        }
        let r = best.expect("the first remaining entry is always free");
        positions.push(remaining.remove(r));
    }
    let ordered: Vec<i64> = positions.iter().map(|&p| t[p]).collect();
    let mut strings: Vec<(i64, i64)> = Vec::new();
    for &x in &ordered {
        match strings.last_mut() {
            Some((_, b)) if *b + 1 == x => *b = x,
            _ => strings.push((x, x)),
        }
    }
    if strings.windows(2).any(|w| w[0].1 <= w[1].1) {
        return Err(err!(Derivation, "canonical form of ({}) has non-decreasing heads", format_tuple(t)));
    }
    Ok((Csf { strings }, positions))
}

/// Column standard form of a SIP tuple.
pub fn csf(t: &[i64]) -> Result<Csf> {
    Ok(csf_with_positions(t)?.0)
}

/// Heads of the column standard form, in decreasing order.
pub fn heads(t: &[i64]) -> Result<Vec<i64>> {
    Ok(csf(t)?.heads())
}

/// Number of strings of the column standard form.
pub fn h_count(t: &[i64]) -> Result<usize> {
    Ok(csf(t)?.strings.len())
}

/// Classification of an index appended to a tuple in column standard form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexType {
    /// Appending keeps the number of strings.
    TypeI,
    /// Appending adds a string.
    TypeII,
}

/// Type of `x` relative to `t` together with `heads((t, x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeResult {
    /// The classification.
    pub kind: IndexType,
    /// Heads of `(t, x)`, in decreasing order.
    pub heads: Vec<i64>,
}

/// Classifies `x` relative to a nonnegative tuple `t`.
///
/// Requires `(t, x)` to satisfy SIP and `0 <= x < max(heads(t))`. The index is of Type I
/// exactly when `x - 1` is a head of `t`.
pub fn index_type(t: &[i64], x: i64) -> Result<TypeResult> {
    let hs = heads(t)?;
    let top = hs.first().copied().unwrap_or(0);
    if x < 0 || x >= top {
        return Err(err!(OutOfRange, "x = {x} outside 0:{}", top - 1));
    }
    let mut tx = t.to_vec();
    tx.push(x);
    if !satisfies_sip(&tx)? {
        return Err(err!(NotSip, "({}, {x}) violates SIP", format_tuple(t)));
    }
    let kind = if hs.contains(&(x - 1)) { IndexType::TypeI } else { IndexType::TypeII };
    let mut new: BTreeSet<i64> = hs.iter().copied().collect();
    if kind == IndexType::TypeI {
        new.remove(&(x - 1));
    }
    new.insert(x);
    Ok(TypeResult { kind, heads: new.into_iter().rev().collect() })
}

/// Reversed tuple.
pub fn rev(t: &[i64]) -> Vec<i64> {
    t.iter().rev().copied().collect()
}

/// `a + t`.
pub fn shift(t: &[i64], a: i64) -> Vec<i64> {
    t.iter().map(|&i| i + a).collect()
}

/// `-t`.
pub fn negate(t: &[i64]) -> Vec<i64> {
    t.iter().map(|&i| -i).collect()
}

/// Concatenation in order.
pub fn concat(parts: &[&[i64]]) -> Vec<i64> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// The string `(a:b)`, empty when `a > b`.
pub fn string(a: i64, b: i64) -> Vec<i64> {
    (a..=b).collect()
}

/// Equivalence of SIP tuples, decided by comparing column standard forms.
pub fn tuple_equivalent(t1: &[i64], t2: &[i64]) -> Result<bool> {
    Ok(csf(t1)? == csf(t2)?)
}

/// Fast test for `(t, a:b)` satisfying SIP: no index of `a:b` is a head of `t`.
pub fn sip_append_check(t: &[i64], a: i64, b: i64) -> Result<bool> {
    let hs = heads(t)?;
    Ok((a..=b).all(|c| !hs.contains(&c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn t(s: &str) -> Vec<i64> {
        parse_tuple(s).unwrap()
    }

    /// Trace-monoid equivalence oracle: projections onto every dependent pair agree.
    fn projection_equivalent(x: &[i64], y: &[i64]) -> bool {
        let letters: BTreeSet<i64> = x.iter().chain(y).copied().collect();
        letters.iter().all(|&a| {
            let proj = |s: &[i64]| -> Vec<i64> { s.iter().copied().filter(|&c| c == a || c == a + 1).collect() };
            proj(x) == proj(y)
        })
    }

    #[test]
    fn parse_and_format_roundtrip() {
        assert_eq!(t("3:5,2,0:1"), vec![3, 4, 5, 2, 0, 1]);
        assert_eq!(t("(-6:-1)"), vec![-6, -5, -4, -3, -2, -1]);
        assert_eq!(t(""), Vec::<i64>::new());
        assert_eq!(format_tuple(&t("3:5,2,0:1")), "3:5,2,0:1");
        assert_eq!(parse_indices("-4,-2,-0").unwrap(), vec![Index::Neg(4), Index::Neg(2), Index::Neg(0)]);
        assert!(parse_tuple("-0").is_err());
        assert!(parse_tuple("5:3").is_err());
        assert!(parse_tuple("a").is_err());
    }

    #[test]
    fn sip_examples() {
        let zr = concat(&[&t("-6:-1"), &t("-6:-2,-6:-3,-6:-4,-6:-5,-6")]);
        assert!(satisfies_sip(&zr).unwrap());
        assert!(satisfies_sip(&[4, 2, 7]).unwrap());
        assert!(!satisfies_sip(&[0, 0]).unwrap());
        assert!(satisfies_sip(&[-1, 2]).is_err());
    }

    #[test]
    fn csf_examples() {
        assert_eq!(csf(&t("3:5,2,0:1,3")).unwrap().tuple(), t("3:5,2:3,0:1"));
        assert_eq!(csf(&t("3:5,2,0:1,4")).unwrap().tuple(), t("3:5,4,2,0:1"));
        let fixed = t("3:5,2:3,0:1");
        assert_eq!(csf(&fixed).unwrap().tuple(), fixed);
        assert!(csf(&[1, 1]).is_err());
        assert_eq!(csf(&t("-6:-4,-1")).unwrap().tuple(), t("-1,-6:-4"));
    }

    #[test]
    fn heads_examples() {
        assert_eq!(heads(&t("3:4,0:2")).unwrap(), vec![4, 2]);
        assert_eq!(h_count(&t("1:4,0:3,0:2,1,0")).unwrap(), 5);
        assert_eq!(heads(&t("1:4,0:3,0:2,1,0")).unwrap(), vec![4, 3, 2, 1, 0]);
        assert_eq!(heads(&t("2:6")).unwrap(), vec![6]);
        assert_eq!(h_count(&[]).unwrap(), 0);
    }

    #[test]
    fn type_examples() {
        let base = t("3:5,2,0:1");
        let r = index_type(&base, 3).unwrap();
        assert_eq!(r.kind, IndexType::TypeI);
        assert_eq!(r.heads, vec![5, 3, 1]);
        assert_eq!(index_type(&base, 4).unwrap().kind, IndexType::TypeII);
        assert_eq!(index_type(&base, 0).unwrap().kind, IndexType::TypeII);
        assert!(index_type(&base, 2).is_err());
    }

    #[test]
    fn utils_and_equivalence() {
        assert_eq!(rev(&[1, 2, 3]), vec![3, 2, 1]);
        assert_eq!(shift(&t("-6:-1"), 6), t("0:5"));
        assert!(tuple_equivalent(&t("3:5,2,0:1,3"), &t("3:5,2:3,0:1")).unwrap());
        assert!(!tuple_equivalent(&[0, 1], &[1, 0]).unwrap());
        assert!(sip_append_check(&t("3:5,2,0:1"), 3, 3).unwrap());
        assert!(!sip_append_check(&t("3:4,0:2"), 2, 2).unwrap());
        assert!(sip_append_check(&[], 0, 3).unwrap());
    }

    fn sip_tuple(max: i64, len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0..=max, 0..=len).prop_map(|raw| {
            let mut out: Vec<i64> = Vec::new();
            for x in raw {
                out.push(x);
                if !sip_unchecked(&out) {
                    out.pop();
                }
            }
            out
        })
    }

    proptest! {
        #[test]
        fn csf_is_equivalent_canonical_form(s in sip_tuple(9, 24)) {
            let (c, pos) = csf_with_positions(&s).unwrap();
            let ct = c.tuple();
            prop_assert!(satisfies_sip(&ct).unwrap());
            prop_assert!(projection_equivalent(&s, &ct));
            prop_assert_eq!(csf(&ct).unwrap(), c.clone());
            prop_assert!(c.strings().iter().all(|&(a, b)| a <= b));
            let via_pos: Vec<i64> = pos.iter().map(|&p| s[p]).collect();
            prop_assert_eq!(via_pos, ct);
        }

        #[test]
        fn contiguous_and_reversed_subtuples_keep_sip(s in sip_tuple(7, 16), a in 0usize..16, b in 0usize..16) {
            let (a, b) = (a.min(s.len()), b.min(s.len()));
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assert!(satisfies_sip(&s[lo..hi]).unwrap());
            prop_assert!(satisfies_sip(&rev(&s)).unwrap());
        }

        #[test]
        fn append_check_matches_direct_scan(s in sip_tuple(8, 20), a in 0i64..9, len in 0i64..4) {
            let b = a + len;
            let direct = satisfies_sip(&concat(&[&s, &string(a, b)])).unwrap();
            prop_assert_eq!(sip_append_check(&s, a, b).unwrap(), direct);
        }

        #[test]
        fn negative_tuples_follow_shift(s in sip_tuple(6, 16)) {
            let neg = shift(&s, -7);
            let c = csf(&neg).unwrap().tuple();
            prop_assert_eq!(c, shift(&csf(&s).unwrap().tuple(), -7));
        }
    }
}
