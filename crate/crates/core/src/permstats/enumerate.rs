//! Exhaustive enumeration of `S_n`, `B_n` and `Z_r wr S_n`.
//!
//! The parallel tallies split `S_n` into blocks by the first two letters of
//! the one-line word, walk each block in lexicographic order, and merge
//! per-block monomial counts. Merging is a sum of counts, so the resulting
//! polynomial is the same for any block schedule.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{ColoredPerm, ColoredStat, EnumError, Perm, PermStat, SignedPerm, SignedStat};
use crate::exactalg::{Monomial, MultiPoly, Var};

pub const ELEMENT_CAP_ENV: &str = "GAMMAKIT_MAX_ELEMENTS";

/// Resource limits for the exhaustive enumerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_symmetric: usize,
    pub max_signed: usize,
    pub max_colored: usize,
    /// Optional cap on the number of elements visited in one enumeration.
    pub max_elements: Option<u128>,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { max_symmetric: 9, max_signed: 7, max_colored: 6, max_elements: None }
    }
}

impl Bounds {
    /// Default rank limits, with the element cap read from
    /// `GAMMAKIT_MAX_ELEMENTS` when it is set to an integer.
    pub fn from_env() -> Self {
        let max_elements = std::env::var(ELEMENT_CAP_ENV).ok().and_then(|s| s.trim().parse().ok());
        Self { max_elements, ..Self::default() }
    }

    /// Drops the rank limits; the element cap still applies.
    pub fn without_rank_limits(self) -> Self {
        Self { max_symmetric: usize::MAX, max_signed: usize::MAX, max_colored: usize::MAX, ..self }
    }

    fn check(&self, group: &str, n: usize, limit: usize, count: u128) -> Result<(), EnumError> {
        if n > limit {
            return Err(EnumError::BoundExceeded { group: group.to_string(), n, limit });
        }
        if let Some(cap) = self.max_elements {
            if count > cap {
                return Err(EnumError::ElementCap { group: group.to_string(), n, count, cap });
            }
        }
        Ok(())
    }

    pub fn check_symmetric(&self, n: usize) -> Result<(), EnumError> {
        self.check("S_n", n, self.max_symmetric, factorial_u128(n))
    }

    pub fn check_signed(&self, n: usize) -> Result<(), EnumError> {
        let count = factorial_u128(n).saturating_mul(1u128.checked_shl(n as u32).unwrap_or(u128::MAX));
        self.check("B_n", n, self.max_signed, count)
    }

    pub fn check_colored(&self, n: usize, r: u8) -> Result<(), EnumError> {
        let count = factorial_u128(n).saturating_mul((r as u128).saturating_pow(n as u32));
        self.check("Z_r wr S_n", n, self.max_colored, count)
    }
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// Restricted classes of ordinary permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermClass {
    All,
    Derangements,
    /// No cycle double ascents.
    CdaFree,
    Simsun,
    SimsunSecondKind,
    /// No successions.
    SuccessionFree,
    /// No successions and `pi(1) > 1`.
    PStar,
    /// Cda-free derangements with exactly `k` excedances.
    CdaFreeDerangements(u32),
}

impl PermClass {
    pub fn contains(&self, p: &Perm) -> bool {
        match *self {
            PermClass::All => true,
            PermClass::Derangements => p.stat(PermStat::Fix) == 0,
            PermClass::CdaFree => p.stat(PermStat::Cda) == 0,
            PermClass::Simsun => p.is_simsun(),
            PermClass::SimsunSecondKind => p.is_simsun_second_kind(),
            PermClass::SuccessionFree => p.stat(PermStat::Suc) == 0,
            PermClass::PStar => p.stat(PermStat::Suc) == 0 && p.one_line().first().is_some_and(|&a| a > 1),
            PermClass::CdaFreeDerangements(k) => {
                p.stat(PermStat::Fix) == 0 && p.stat(PermStat::Cda) == 0 && p.stat(PermStat::Exc) == k
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignedClass {
    All,
    Derangements,
    /// Derangements whose negative entries are exactly `-n, .., -(n-i+1)`.
    NegativeTail(usize),
}

impl SignedClass {
    pub fn contains(&self, s: &SignedPerm) -> bool {
        match *self {
            SignedClass::All => true,
            SignedClass::Derangements => s.stat(SignedStat::Fix) == 0,
            SignedClass::NegativeTail(i) => {
                let n = s.len();
                s.stat(SignedStat::Fix) == 0
                    && i <= n
                    && s.images().iter().all(|&v| (v < 0) == (v.unsigned_abs() as usize > n - i))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColoredClass {
    All,
    Derangements,
}

impl ColoredClass {
    pub fn contains(&self, c: &ColoredPerm) -> bool {
        match self {
            ColoredClass::All => true,
            ColoredClass::Derangements => c.stat(ColoredStat::Fix) == 0,
        }
    }
}

fn next_permutation(w: &mut [u8]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order of one-line words.
pub struct Perms {
    cur: Vec<u8>,
    done: bool,
}

impl Iterator for Perms {
    type Item = Perm;
    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let out = Perm { w: self.cur.clone() };
        self.done = !next_permutation(&mut self.cur);
        Some(out)
    }
}

pub fn perms(n: usize) -> Perms {
    Perms { cur: (1..=n as u8).collect(), done: false }
}

/// All of `B_n`: each permutation of `S_n` with every sign pattern.
pub fn signed_perms(n: usize) -> impl Iterator<Item = SignedPerm> {
    perms(n).flat_map(move |p| (0u32..1 << n).map(move |mask| apply_signs(&p, mask)))
}

pub fn colored_perms(n: usize, r: u8) -> impl Iterator<Item = ColoredPerm> {
    perms(n).flat_map(move |p| colorings(n, r).map(move |c| ColoredPerm::new(p.clone(), c, r).expect("colors < r")))
}

fn apply_signs(p: &Perm, mask: u32) -> SignedPerm {
    let images = p
        .one_line()
        .iter()
        .enumerate()
        .map(|(k, &x)| if mask >> k & 1 == 1 { -(x as i8) } else { x as i8 })
        .collect();
    SignedPerm { images }
}

fn colorings(n: usize, r: u8) -> impl Iterator<Item = Vec<u8>> {
    let total = (r as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let c = (code % r as u64) as u8;
                code /= r as u64;
                c
            })
            .collect()
    })
}

fn prefixes(n: usize) -> Vec<Vec<u8>> {
    if n < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::with_capacity(n * (n - 1));
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            if a != b {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

fn for_each_in_block<F: FnMut(&Perm)>(n: usize, prefix: &[u8], mut f: F) {
    let mut suffix: Vec<u8> = (1..=n as u8).filter(|x| !prefix.contains(x)).collect();
    let mut p = Perm { w: Vec::with_capacity(n) };
    loop {
        p.w.clear();
        p.w.extend_from_slice(prefix);
        p.w.extend_from_slice(&suffix);
        f(&p);
        if !next_permutation(&mut suffix) {
            break;
        }
    }
}

type Counts = HashMap<Monomial, u64>;

fn merge(mut a: Counts, b: Counts) -> Counts {
    for (m, c) in b {
        *a.entry(m).or_insert(0) += c;
    }
    a
}

fn finish(counts: Counts) -> MultiPoly {
    MultiPoly::from_counts(counts.into_iter().map(|(m, c)| (m, BigInt::from(c))))
}

fn par_blocks<G>(n: usize, visit: G) -> MultiPoly
where
    G: Fn(&Perm, &mut Counts) + Sync,
{
    let counts = prefixes(n)
        .into_par_iter()
        .map(|pre| {
            let mut h = Counts::new();
            for_each_in_block(n, &pre, |p| visit(p, &mut h));
            h
        })
        .reduce(Counts::new, merge);
    finish(counts)
}

/// Sums `f(pi)` over `S_n`, skipping elements where `f` returns `None`.
pub fn tally_perms<F>(n: usize, bounds: &Bounds, f: F) -> Result<MultiPoly, EnumError>
where
    F: Fn(&Perm) -> Option<Monomial> + Sync,
{
    bounds.check_symmetric(n)?;
    Ok(par_blocks(n, |p, h| {
        if let Some(m) = f(p) {
            *h.entry(m).or_insert(0) += 1;
        }
    }))
}

pub fn tally_signed<F>(n: usize, bounds: &Bounds, f: F) -> Result<MultiPoly, EnumError>
where
    F: Fn(&SignedPerm) -> Option<Monomial> + Sync,
{
    bounds.check_signed(n)?;
    Ok(par_blocks(n, |p, h| {
        for mask in 0u32..1 << n {
            if let Some(m) = f(&apply_signs(p, mask)) {
                *h.entry(m).or_insert(0) += 1;
            }
        }
    }))
}

pub fn tally_colored<F>(n: usize, r: u8, bounds: &Bounds, f: F) -> Result<MultiPoly, EnumError>
where
    F: Fn(&ColoredPerm) -> Option<Monomial> + Sync,
{
    bounds.check_colored(n, r)?;
    Ok(par_blocks(n, |p, h| {
        for c in colorings(n, r) {
            let cp = ColoredPerm::new(p.clone(), c, r).expect("colors < r");
            if let Some(m) = f(&cp) {
                *h.entry(m).or_insert(0) += 1;
            }
        }
    }))
}

/// `sum over the class of prod var^stat`.
pub fn perm_distribution(
    n: usize,
    class: PermClass,
    stats: &[(PermStat, Var)],
    bounds: &Bounds,
) -> Result<MultiPoly, EnumError> {
    tally_perms(n, bounds, |p| {
        class.contains(p).then(|| {
            let pairs: Vec<(Var, u32)> = stats.iter().map(|&(s, v)| (v, p.stat(s))).collect();
            Monomial::from_pairs(&pairs)
        })
    })
}

pub fn signed_distribution(
    n: usize,
    class: SignedClass,
    stats: &[(SignedStat, Var)],
    bounds: &Bounds,
) -> Result<MultiPoly, EnumError> {
    tally_signed(n, bounds, |s| {
        class.contains(s).then(|| {
            let pairs: Vec<(Var, u32)> = stats.iter().map(|&(st, v)| (v, s.stat(st))).collect();
            Monomial::from_pairs(&pairs)
        })
    })
}

pub fn colored_distribution(
    n: usize,
    r: u8,
    class: ColoredClass,
    stats: &[(ColoredStat, Var)],
    bounds: &Bounds,
) -> Result<MultiPoly, EnumError> {
    tally_colored(n, r, bounds, |c| {
        class.contains(c).then(|| {
            let pairs: Vec<(Var, u32)> = stats.iter().map(|&(st, v)| (v, c.stat(st))).collect();
            Monomial::from_pairs(&pairs)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, v};

    fn count(p: &MultiPoly) -> BigInt {
        p.terms().map(|(_, c)| c.to_integer()).sum()
    }

    #[test]
    fn cardinalities() {
        let b = Bounds::default();
        assert_eq!(count(&perm_distribution(4, PermClass::All, &[], &b).unwrap()), 24.into());
        assert_eq!(count(&signed_distribution(3, SignedClass::All, &[], &b).unwrap()), 48.into());
        assert_eq!(count(&perm_distribution(4, PermClass::Derangements, &[], &b).unwrap()), 9.into());
        assert_eq!(perms(0).count(), 1);
        assert_eq!(signed_perms(2).count(), 8);
        assert_eq!(colored_perms(2, 3).count(), 18);
    }

    #[test]
    fn lexicographic_and_unique() {
        let all: Vec<Perm> = perms(5).collect();
        assert_eq!(all.len(), 120);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn eulerian_three() {
        let b = Bounds::default();
        let d = perm_distribution(3, PermClass::All, &[(PermStat::Des, Var::X)], &b).unwrap();
        assert_eq!(d, parse_poly("1 + 4x + x^2").unwrap());
    }

    #[test]
    fn basc_des_suc_over_s3() {
        let b = Bounds::default();
        let stats = [(PermStat::Basc, Var::X), (PermStat::Des, Var::Y), (PermStat::Suc, Var::S)];
        let d = perm_distribution(3, PermClass::All, &stats, &b).unwrap();
        assert_eq!(d, parse_poly("(s+y)^2 + 2x y").unwrap());
    }

    #[test]
    fn six_statistics_over_b2() {
        let b = Bounds::default();
        let stats = [
            (SignedStat::Exc, Var::X),
            (SignedStat::Aexc, Var::Y),
            (SignedStat::Fix, Var::S),
            (SignedStat::St, Var::T),
            (SignedStat::Cyc, Var::P),
            (SignedStat::Neg, Var::Q),
        ];
        let d = signed_distribution(2, SignedClass::All, &stats, &b).unwrap();
        assert_eq!(d, parse_poly("p^2(s+q t)^2 + p(1+q)^2 x y").unwrap());
    }

    #[test]
    fn colored_derangements_of_order_two() {
        let b = Bounds::default();
        let d = colored_distribution(2, 2, ColoredClass::Derangements, &[(ColoredStat::Exc, Var::X)], &b)
            .unwrap();
        // Five of the eight elements are derangements.
        assert_eq!(count(&d), 5.into());
        assert_eq!(d, &v(Var::X).pow(2) + &v(Var::X).scale_int(4));
    }

    #[test]
    fn bounds_are_enforced() {
        let b = Bounds { max_symmetric: 3, ..Bounds::default() };
        assert!(matches!(
            perm_distribution(4, PermClass::All, &[], &b),
            Err(EnumError::BoundExceeded { n: 4, limit: 3, .. })
        ));
        let capped = Bounds { max_elements: Some(100), ..Bounds::default() };
        assert!(matches!(tally_perms(5, &capped, |_| None), Err(EnumError::ElementCap { .. })));
        assert!(tally_perms(5, &capped.without_rank_limits(), |_| None).is_err());
        assert!(tally_perms(4, &capped, |_| None).is_ok());
    }

    #[test]
    fn negative_tail_class() {
        let tail = SignedClass::NegativeTail(1);
        assert!(tail.contains(&SignedPerm::new(vec![2, 1, -3]).unwrap()));
        assert!(!tail.contains(&SignedPerm::new(vec![-2, 1, 3]).unwrap()));
        assert!(!tail.contains(&SignedPerm::new(vec![1, 3, -2]).unwrap()));
    }

    proptest::proptest! {
        #[test]
        fn parallel_tally_matches_sequential(n in 0usize..7) {
            let b = Bounds::default();
            let par = perm_distribution(n, PermClass::All, &[(PermStat::Exc, Var::X), (PermStat::Cyc, Var::Q)], &b).unwrap();
            let mut seq = MultiPoly::zero();
            for p in perms(n) {
                let m = Monomial::from_pairs(&[(Var::X, p.stat(PermStat::Exc)), (Var::Q, p.stat(PermStat::Cyc))]);
                seq += &MultiPoly::monomial(m);
            }
            proptest::prop_assert_eq!(par, seq);
        }
    }
}
