//! Constructive maps on signed derangements with a prescribed negative set,
//! and the modified Foata-Strehl relocation on cycle forms.
//!
//! `D~_{n,i}` is the set of type B derangements of `[n]` whose negative
//! entries are exactly `-n, .., -(n-i+1)`. For `i >= 1` it splits into
//! [`TildePart::B1`] (`-n` is a singleton), [`TildePart::B2`] (no
//! singletons) and [`TildePart::B3`] (the rest), and
//!
//! * [`phi1`] maps `B1` of `D~_{n,i}` onto `D~_{n-1,i-1}`,
//! * [`phi2`] maps `B2` of `D~_{n,i}` onto `B2` of `D~_{n,i-1}`,
//! * [`phi3`] maps `B3` of `D~_{n,i}` onto the part of `D~_{n,i-1}` with singletons,
//!
//! all preserving `exc`.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{binomial, MultiPoly, Monomial, Var};
use crate::families::{family_sequence, Family, FamilySpec};
use crate::permstats::{perms, Bounds, CycleForm, EnumError, Perm, PermStat, SignedPerm, SignedStat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("{map}: {perm} is outside the domain ({reason})")]
    Domain { map: &'static str, perm: String, reason: &'static str },
    #[error("letter {x} is not in [{n}]")]
    Letter { x: u8, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TildePart {
    /// `-n` is a singleton.
    B1,
    /// No singletons.
    B2,
    /// Some singleton, but `-n` is not one.
    B3,
}

/// `i` such that `sigma` lies in `D~_{n,i}`, if any.
pub fn tilde_index(sigma: &SignedPerm) -> Option<usize> {
    let n = sigma.len();
    let i = sigma.stat(SignedStat::Neg) as usize;
    let tail_ok = sigma.images().iter().all(|&v| (v < 0) == (v.unsigned_abs() as usize > n - i));
    (tail_ok && sigma.stat(SignedStat::Fix) == 0).then_some(i)
}

pub fn tilde_part(sigma: &SignedPerm) -> TildePart {
    let n = sigma.len();
    if n > 0 && sigma.apply(n) == -(n as i32) {
        TildePart::B1
    } else if sigma.stat(SignedStat::St) == 0 {
        TildePart::B2
    } else {
        TildePart::B3
    }
}

/// The elements of `D~_{n,i}` with their parts.
#[derive(Clone, Debug)]
pub struct TildeDClass {
    pub n: usize,
    pub i: usize,
    pub elements: Vec<(SignedPerm, TildePart)>,
}

impl TildeDClass {
    /// Builds the class from `S_n` by negating the `i` largest values, which
    /// needs `n!` steps rather than `2^n n!`.
    pub fn enumerate(n: usize, i: usize, bounds: &Bounds) -> Result<Self, EnumError> {
        bounds.check_signed(n)?;
        assert!(i <= n, "i = {i} exceeds n = {n}");
        let elements = perms(n)
            .filter_map(|p| {
                let images: Vec<i8> = p
                    .one_line()
                    .iter()
                    .map(|&a| if a as usize > n - i { -(a as i8) } else { a as i8 })
                    .collect();
                let s = SignedPerm::new(images).expect("valid signed permutation");
                (s.stat(SignedStat::Fix) == 0).then(|| {
                    let part = tilde_part(&s);
                    (s, part)
                })
            })
            .collect();
        Ok(Self { n, i, elements })
    }

    pub fn part(&self, part: TildePart) -> impl Iterator<Item = &SignedPerm> {
        self.elements.iter().filter(move |(_, p)| *p == part).map(|(s, _)| s)
    }

    /// `sum x^exc` over the class.
    pub fn exc_polynomial(&self) -> MultiPoly {
        exc_polynomial(self.elements.iter().map(|(s, _)| s))
    }
}

fn exc_polynomial<'a, I: Iterator<Item = &'a SignedPerm>>(it: I) -> MultiPoly {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for s in it {
        *counts.entry(s.stat(SignedStat::Exc)).or_default() += 1;
    }
    MultiPoly::from_counts(counts.into_iter().map(|(e, c)| (Monomial::from_pairs(&[(Var::X, e)]), c.into())))
}

/// Relabels every entry of a cycle form.
fn relabel(cf: &CycleForm, f: impl Fn(i32) -> i32) -> CycleForm {
    CycleForm { cycles: cf.cycles.iter().map(|c| c.iter().map(|&v| f(v)).collect()).collect() }
}

fn domain_err(map: &'static str, sigma: &SignedPerm, reason: &'static str) -> BijectionError {
    BijectionError::Domain { map, perm: sigma.to_string(), reason }
}

fn to_signed(cf: &CycleForm, n: usize) -> SignedPerm {
    let s = cf.to_signed().expect("relabeling keeps a valid cycle form");
    debug_assert_eq!(s.len(), n);
    s
}

/// Deletes the singleton `(-n)`.
pub fn phi1(sigma: &SignedPerm) -> Result<SignedPerm, BijectionError> {
    let i = tilde_index(sigma).ok_or_else(|| domain_err("phi1", sigma, "not in a D~ class"))?;
    if i == 0 || tilde_part(sigma) != TildePart::B1 {
        return Err(domain_err("phi1", sigma, "-n is not a singleton"));
    }
    let n = sigma.len();
    Ok(SignedPerm::new(sigma.images()[..n - 1].to_vec()).expect("dropping a singleton"))
}

/// Appends the singleton `(-(n+1))`.
pub fn phi1_inverse(sigma: &SignedPerm) -> Result<SignedPerm, BijectionError> {
    tilde_index(sigma).ok_or_else(|| domain_err("phi1_inverse", sigma, "not in a D~ class"))?;
    let mut images = sigma.images().to_vec();
    images.push(-((sigma.len() + 1) as i8));
    Ok(SignedPerm::new(images).expect("adding a singleton"))
}

/// `k -> k+1` for `1 <= k <= n-i`, `-(n-i+1) -> 1`, other entries fixed.
pub fn phi2(sigma: &SignedPerm) -> Result<SignedPerm, BijectionError> {
    let i = tilde_index(sigma).ok_or_else(|| domain_err("phi2", sigma, "not in a D~ class"))?;
    if i == 0 || tilde_part(sigma) != TildePart::B2 {
        return Err(domain_err("phi2", sigma, "needs i >= 1 and no singletons"));
    }
    let m = (sigma.len() - i) as i32;
    let cf = relabel(&sigma.to_cycles(), |v| match v {
        v if (1..=m).contains(&v) => v + 1,
        v if v == -(m + 1) => 1,
        v => v,
    });
    Ok(to_signed(&cf, sigma.len()))
}

/// The inverse of [`phi2`] from `B2` of `D~_{n,i-1}`.
pub fn phi2_inverse(sigma: &SignedPerm) -> Result<SignedPerm, BijectionError> {
    let i_prev = tilde_index(sigma).ok_or_else(|| domain_err("phi2_inverse", sigma, "not in a D~ class"))?;
    let n = sigma.len();
    if i_prev >= n || sigma.stat(SignedStat::St) != 0 {
        return Err(domain_err("phi2_inverse", sigma, "needs i < n and no singletons"));
    }
    let m = (n - i_prev - 1) as i32;
    let cf = relabel(&sigma.to_cycles(), |v| match v {
        1 => -(m + 1),
        v if (2..=m + 1).contains(&v) => v - 1,
        v => v,
    });
    Ok(to_signed(&cf, n))
}

fn singletons(sigma: &SignedPerm) -> Vec<i32> {
    (1..=sigma.len()).filter(|&k| sigma.apply(k) == -(k as i32)).map(|k| -(k as i32)).collect()
}

/// Increasing list of `{-n, .., -(n-neg+1)} u {1, .., n-neg}` without `skip`.
fn value_set(n: usize, neg: usize, skip: &[i32]) -> Vec<i32> {
    let n = n as i32;
    let neg = neg as i32;
    (-n..=-(n - neg + 1)).chain(1..=n - neg).filter(|v| !skip.contains(v)).collect()
}

fn transport(cf: &CycleForm, singles: &[i32], shift: i32, from: &[i32], to: &[i32]) -> CycleForm {
    let rank: HashMap<i32, usize> = from.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    relabel(cf, |v| if singles.contains(&v) { v - shift } else { to[rank[&v]] })
}

/// Singletons `-k -> -(k+1)`; the other entries are carried order-preservingly
/// from `A(sigma)` to `B(sigma)`.
pub fn phi3(sigma: &SignedPerm) -> Result<SignedPerm, BijectionError> {
    let i = tilde_index(sigma).ok_or_else(|| domain_err("phi3", sigma, "not in a D~ class"))?;
    if i == 0 || tilde_part(sigma) != TildePart::B3 {
        return Err(domain_err("phi3", sigma, "needs a singleton other than -n"));
    }
    Ok(to_signed(&phi3_cycles(&sigma.to_cycles(), sigma.len(), i), sigma.len()))
}

/// [`phi3`] acting directly on a cycle form, keeping its layout.
pub fn phi3_cycles(cf: &CycleForm, n: usize, i: usize) -> CycleForm {
    let st: Vec<i32> = cf.cycles.iter().filter(|c| c.len() == 1 && c[0] < 0).map(|c| c[0]).collect();
    let st_image: Vec<i32> = st.iter().map(|v| v - 1).collect();
    let a = value_set(n, i, &st);
    let b = value_set(n, i - 1, &st_image);
    transport(cf, &st, 1, &a, &b)
}

/// The inverse of [`phi3`] from the part of `D~_{n,i-1}` with singletons.
pub fn phi3_inverse(sigma: &SignedPerm) -> Result<SignedPerm, BijectionError> {
    let i_prev = tilde_index(sigma).ok_or_else(|| domain_err("phi3_inverse", sigma, "not in a D~ class"))?;
    let n = sigma.len();
    if i_prev >= n || sigma.stat(SignedStat::St) == 0 {
        return Err(domain_err("phi3_inverse", sigma, "needs i < n and a singleton"));
    }
    let st_image = singletons(sigma);
    let st: Vec<i32> = st_image.iter().map(|v| v + 1).collect();
    let a = value_set(n, i_prev + 1, &st);
    let b = value_set(n, i_prev, &st_image);
    Ok(to_signed(&transport(&sigma.to_cycles(), &st_image, -1, &b, &a), n))
}

/// Outcome of one batch claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: &'static str,
    /// Number of elements or instances examined.
    pub checked: u64,
    pub failure: Option<String>,
}

impl ClaimReport {
    fn new(claim: &'static str) -> Self {
        Self { claim, checked: 0, failure: None }
    }

    fn fail(&mut self, msg: String) {
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks one map `f` from `domain` onto `target`, with `exc` preserved and
/// `inverse` undoing it.
fn check_map<F, G>(
    report: &mut ClaimReport,
    domain: Vec<&SignedPerm>,
    target: HashSet<&SignedPerm>,
    f: F,
    inverse: G,
) where
    F: Fn(&SignedPerm) -> Result<SignedPerm, BijectionError>,
    G: Fn(&SignedPerm) -> Result<SignedPerm, BijectionError>,
{
    let mut seen = HashSet::new();
    for s in &domain {
        report.checked += 1;
        let img = match f(s) {
            Ok(img) => img,
            Err(e) => return report.fail(e.to_string()),
        };
        if !target.contains(&img) {
            return report.fail(format!("{s} maps to {img}, outside the codomain"));
        }
        if img.stat(SignedStat::Exc) != s.stat(SignedStat::Exc) {
            return report.fail(format!("{s} -> {img} changes exc"));
        }
        match inverse(&img) {
            Ok(back) if &back == *s => {}
            Ok(back) => return report.fail(format!("{s} -> {img} -> {back} does not round-trip")),
            Err(e) => return report.fail(e.to_string()),
        }
        seen.insert(img);
    }
    if seen.len() != target.len() {
        report.fail(format!("image has {} elements, codomain {}", seen.len(), target.len()));
    }
}

/// Runs every claim behind the `d~` recurrence for `1 <= i <= n <= n_max`,
/// plus the worked example of `phi3`.
pub fn derangement_maps_claims(n_max: usize, bounds: &Bounds) -> Result<Vec<ClaimReport>, EnumError> {
    let classes: Vec<Vec<TildeDClass>> = (0..=n_max)
        .into_par_iter()
        .map(|n| (0..=n).map(|i| TildeDClass::enumerate(n, i, bounds)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let d = family_sequence(&FamilySpec::new(Family::DX), n_max).expect("d_x has no parameters");

    let mut partition = ClaimReport::new("partition");
    let mut r1 = ClaimReport::new("phi1");
    let mut r2 = ClaimReport::new("phi2");
    let mut r3 = ClaimReport::new("phi3");
    let mut rec = ClaimReport::new("dniBx");
    let mut binom = ClaimReport::new("double_binomial");
    for n in 1..=n_max {
        for i in 1..=n {
            let cls = &classes[n][i];
            let prev = &classes[n][i - 1];
            let smaller = &classes[n - 1][i - 1];
            for (s, part) in &cls.elements {
                partition.checked += 1;
                let singles = singletons(s);
                let in1 = singles.contains(&-(n as i32));
                let in2 = singles.is_empty();
                let in3 = !singles.is_empty() && !in1;
                let expected = match (in1, in2, in3) {
                    (true, false, false) => TildePart::B1,
                    (false, true, false) => TildePart::B2,
                    (false, false, true) => TildePart::B3,
                    _ => {
                        partition.fail(format!("{s} lies in {} parts", in1 as u8 + in2 as u8 + in3 as u8));
                        continue;
                    }
                };
                if expected != *part {
                    partition.fail(format!("{s} tagged {part:?}, expected {expected:?}"));
                }
            }
            check_map(
                &mut r1,
                cls.part(TildePart::B1).collect(),
                smaller.elements.iter().map(|(s, _)| s).collect(),
                phi1,
                phi1_inverse,
            );
            check_map(&mut r2, cls.part(TildePart::B2).collect(), prev.part(TildePart::B2).collect(), phi2, phi2_inverse);
            check_map(
                &mut r3,
                cls.part(TildePart::B3).collect(),
                prev.elements.iter().filter(|(_, p)| *p != TildePart::B2).map(|(s, _)| s).collect(),
                phi3,
                phi3_inverse,
            );

            rec.checked += 1;
            let lhs = cls.exc_polynomial();
            let rhs = &prev.exc_polynomial() + &smaller.exc_polynomial();
            if lhs != rhs {
                rec.fail(format!("n = {n}, i = {i}: {lhs} vs {rhs}"));
            }
            // Through the maps: images of the three parts.
            let via: Vec<SignedPerm> = cls
                .elements
                .iter()
                .filter_map(|(s, p)| match p {
                    TildePart::B1 => None,
                    TildePart::B2 => phi2(s).ok(),
                    TildePart::B3 => phi3(s).ok(),
                })
                .collect();
            if exc_polynomial(via.iter()) != prev.exc_polynomial() {
                rec.fail(format!("n = {n}, i = {i}: phi2/phi3 images do not cover D~_(n,i-1)"));
            }
        }
        for (i, class) in classes[n].iter().enumerate().take(n + 1) {
            binom.checked += 1;
            let lhs = class.exc_polynomial();
            let rhs: MultiPoly =
                (0..=i).map(|j| d[n - j].scale_int(binomial(i as u32, j as u32))).sum();
            if lhs != rhs {
                binom.fail(format!("n = {n}, i = {i}: {lhs} vs {rhs}"));
            }
        }
    }

    let mut example = ClaimReport::new("phi3_example");
    example.checked = 1;
    let sigma: CycleForm = "(1,4,3,-9,-8)(2,5)(-6)(-7)".parse().expect("literal");
    let got = phi3_cycles(&sigma, 9, 4).to_string();
    if got != "(2,5,4,-9,1)(3,6)(-7)(-8)" {
        example.fail(format!("got {got}"));
    }
    Ok(vec![partition, r1, r2, r3, rec, binom, example])
}

/// Position of a letter inside its cycle, with cycles written from their
/// minimum and `c_{len+1} = c_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CyclePosition {
    DoubleAscent,
    DoubleDescent,
    Peak,
    Valley,
    /// First letter of its cycle, including fixed points.
    Minimum,
}

/// A letter of a permutation with its classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfsOrbitPoint {
    pub perm: Perm,
    pub letter: u8,
    pub class: CyclePosition,
}

impl MfsOrbitPoint {
    pub fn new(perm: &Perm, letter: u8) -> Result<Self, BijectionError> {
        Ok(Self { perm: perm.clone(), letter, class: classify(perm, letter)? })
    }
}

fn locate(cycles: &[Vec<u8>], x: u8) -> (usize, usize) {
    for (ci, c) in cycles.iter().enumerate() {
        if let Some(k) = c.iter().position(|&a| a == x) {
            return (ci, k);
        }
    }
    unreachable!("every letter lies in some cycle")
}

pub fn classify(pi: &Perm, x: u8) -> Result<CyclePosition, BijectionError> {
    if x == 0 || x as usize > pi.len() {
        return Err(BijectionError::Letter { x, n: pi.len() });
    }
    let cycles = pi.cycles();
    let (ci, k) = locate(&cycles, x);
    let c = &cycles[ci];
    if k == 0 {
        return Ok(CyclePosition::Minimum);
    }
    let prev = c[k - 1];
    let next = c[(k + 1) % c.len()];
    Ok(match (prev < x, x < next) {
        (true, true) => CyclePosition::DoubleAscent,
        (false, false) => CyclePosition::DoubleDescent,
        (true, false) => CyclePosition::Peak,
        (false, true) => CyclePosition::Valley,
    })
}

/// The modified Foata-Strehl move of letter `x`: a cycle double ascent
/// moves forward to the first gap `c_j > x > c_{j+1}`, a cycle double
/// descent back to the last gap `c_j < x < c_{j+1}`; anything else is fixed.
pub fn mfs_action(pi: &Perm, x: u8) -> Result<Perm, BijectionError> {
    let class = classify(pi, x)?;
    let mut cycles = pi.cycles();
    let (ci, k) = locate(&cycles, x);
    let c = &mut cycles[ci];
    let len = c.len();
    let at = |c: &[u8], j: usize| c[j % len];
    let slot = match class {
        CyclePosition::DoubleAscent => (k + 1..len).find(|&j| at(c, j) > x && x > at(c, j + 1)),
        CyclePosition::DoubleDescent => (0..k).rev().find(|&j| at(c, j) < x && x < at(c, j + 1)),
        _ => return Ok(pi.clone()),
    }
    .expect("a gap always exists for double ascents and descents");
    c.remove(k);
    // After removal, indices past k shift left by one.
    let insert_at = if slot > k { slot } else { slot + 1 };
    c.insert(insert_at, x);
    Ok(Perm::from_cycles(pi.len(), &cycles).expect("relocation keeps a permutation"))
}

/// Checks the worked example, that double moves return to the start, and
/// the cardinality relation between cda-free permutations and those with
/// one cycle double ascent, for `n <= n_max`.
pub fn mfs_claims(n_max: usize, bounds: &Bounds) -> Result<Vec<ClaimReport>, EnumError> {
    for n in 0..=n_max {
        bounds.check_symmetric(n)?;
    }
    let mut example = ClaimReport::new("mfs_example");
    let pi = Perm::from_cycles(10, &[vec![1, 10, 6, 5, 7, 3, 2, 8], vec![4, 9]]).expect("literal");
    for (x, want) in [(3u8, vec![1u8, 3, 10, 6, 5, 7, 2, 8]), (6, vec![1, 6, 10, 5, 7, 3, 2, 8])] {
        example.checked += 1;
        let got = mfs_action(&pi, x).expect("letter in range");
        let want = Perm::from_cycles(10, &[want, vec![4, 9]]).expect("literal");
        if got != want {
            example.fail(format!("x = {x}: got {got}, expected {want}"));
        }
    }

    type Tally = (u64, Option<String>);
    let per_n: Vec<(Tally, Tally, Tally)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut inv = (0u64, None::<String>);
            let mut map = (0u64, None::<String>);
            // (fix, exc, cyc) -> count for cda = 0 and cda = 1.
            let mut s1: HashMap<(u32, u32, u32), u64> = HashMap::new();
            let mut s2: HashMap<(u32, u32, u32), u64> = HashMap::new();
            let mut images: HashSet<Perm> = HashSet::new();
            for p in perms(n) {
                let key = (p.stat(PermStat::Fix), p.stat(PermStat::Exc), p.stat(PermStat::Cyc));
                let cda = p.stat(PermStat::Cda);
                match cda {
                    0 => *s1.entry(key).or_default() += 1,
                    1 => *s2.entry(key).or_default() += 1,
                    _ => {}
                }
                for x in 1..=n as u8 {
                    let class = classify(&p, x).expect("letter in range");
                    if !matches!(class, CyclePosition::DoubleAscent | CyclePosition::DoubleDescent) {
                        continue;
                    }
                    inv.0 += 1;
                    let q = mfs_action(&p, x).expect("letter in range");
                    let back = mfs_action(&q, x).expect("letter in range");
                    if back != p && inv.1.is_none() {
                        inv.1 = Some(format!("{p} -> {q} -> {back} for x = {x}"));
                    }
                    if cda == 0 {
                        map.0 += 1;
                        let ok = q.stat(PermStat::Cda) == 1
                            && classify(&q, x) == Ok(CyclePosition::DoubleAscent)
                            && q.stat(PermStat::Exc) == key.1 + 1
                            && q.stat(PermStat::Fix) == key.0
                            && q.stat(PermStat::Cyc) == key.2;
                        if !ok && map.1.is_none() {
                            map.1 = Some(format!("{p} -> {q} for x = {x} leaves the expected class"));
                        }
                        images.insert(q);
                    }
                }
            }
            let total2: u64 = s2.values().sum();
            if images.len() as u64 != total2 && map.1.is_none() {
                map.1 = Some(format!("n = {n}: {} images but {total2} permutations with one cda", images.len()));
            }
            let mut card = (0u64, None::<String>);
            for (&(i, j, k), &count1) in &s1 {
                card.0 += 1;
                let count2 = s2.get(&(i, j + 1, k)).copied().unwrap_or(0);
                let factor = n as i64 - i as i64 - 2 * j as i64;
                if count2 as i64 != factor * count1 as i64 && card.1.is_none() {
                    card.1 = Some(format!("n = {n}, (i, j, k) = ({i}, {j}, {k}): {count2} vs {factor} * {count1}"));
                }
            }
            for (&(i, j, k), &count2) in &s2 {
                if j >= 1 && !s1.contains_key(&(i, j - 1, k)) && count2 > 0 && card.1.is_none() {
                    card.1 = Some(format!("n = {n}: one-cda class ({i}, {j}, {k}) has no cda-free partner"));
                }
            }
            (inv, map, card)
        })
        .collect();

    let mut involution = ClaimReport::new("mfs_involution");
    let mut onto = ClaimReport::new("mfs_cdd_to_cda");
    let mut card = ClaimReport::new("mfs_cardinality");
    for ((a, af), (b, bf), (c, cf)) in per_n {
        involution.checked += a;
        onto.checked += b;
        card.checked += c;
        if let Some(f) = af {
            involution.fail(f);
        }
        if let Some(f) = bf {
            onto.fail(f);
        }
        if let Some(f) = cf {
            card.fail(f);
        }
    }
    Ok(vec![example, involution, onto, card])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::strategy::Strategy;

    fn sp(s: &str) -> SignedPerm {
        s.parse::<CycleForm>().unwrap().to_signed().unwrap()
    }

    #[test]
    fn phi1_smallest_case() {
        let s = sp("(1,2)(-3)");
        assert_eq!(tilde_part(&s), TildePart::B1);
        assert_eq!(phi1(&s).unwrap(), sp("(1,2)"));
        assert_eq!(phi1_inverse(&sp("(1,2)")).unwrap(), s);
        assert!(phi1(&sp("(1,2,-3)")).is_err());
    }

    #[test]
    fn phi3_worked_example() {
        let s = sp("(1,4,3,-9,-8)(2,5)(-6)(-7)");
        assert_eq!(tilde_index(&s), Some(4));
        assert_eq!(tilde_part(&s), TildePart::B3);
        let img = phi3(&s).unwrap();
        assert_eq!(img, sp("(2,5,4,-9,1)(3,6)(-7)(-8)"));
        assert_eq!(phi3_inverse(&img).unwrap(), s);
    }

    #[test]
    fn phi2_shifts_values() {
        // n = 3, i = 1: negatives {-3}; 1 -> 2, 2 -> 3, -3 -> 1.
        let s = sp("(1,2,-3)");
        let img = phi2(&s).unwrap();
        assert_eq!(img, sp("(2,3,1)"));
        assert_eq!(phi2_inverse(&img).unwrap(), s);
    }

    #[test]
    fn all_claims_small() {
        for r in derangement_maps_claims(5, &Bounds::default()).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.claim, r.failure);
            assert!(r.checked > 0, "{}", r.claim);
        }
        for r in mfs_claims(6, &Bounds::default()).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.claim, r.failure);
        }
    }

    #[test]
    fn mfs_worked_example_and_fixed_letters() {
        let pi = Perm::from_cycles(10, &[vec![1, 10, 6, 5, 7, 3, 2, 8], vec![4, 9]]).unwrap();
        assert_eq!(classify(&pi, 3), Ok(CyclePosition::DoubleDescent));
        assert_eq!(classify(&pi, 10), Ok(CyclePosition::Peak));
        assert_eq!(classify(&pi, 1), Ok(CyclePosition::Minimum));
        assert_eq!(mfs_action(&pi, 10).unwrap(), pi);
        assert_eq!(mfs_action(&pi, 5).unwrap(), pi);
        let moved = mfs_action(&pi, 3).unwrap();
        assert_eq!(moved, Perm::from_cycles(10, &[vec![1, 3, 10, 6, 5, 7, 2, 8], vec![4, 9]]).unwrap());
        assert_eq!(classify(&moved, 3), Ok(CyclePosition::DoubleAscent));
        assert!(mfs_action(&pi, 11).is_err());
    }

    proptest::proptest! {
        #[test]
        fn mfs_moves_undo(w in proptest::sample::subsequence((1u8..=8).collect::<Vec<_>>(), 8).prop_shuffle(), x in 1u8..=8) {
            let pi = Perm::new(w).unwrap();
            let once = mfs_action(&pi, x).unwrap();
            proptest::prop_assert_eq!(mfs_action(&once, x).unwrap(), pi);
        }
    }
}
