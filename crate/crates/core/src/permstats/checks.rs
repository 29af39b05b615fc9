//! Classical counting triangles and the succession/fixed-point identities.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::enumerate::{perms, Bounds};
use super::{EnumError, Perm, PermStat};
use crate::exactalg::binomial;

/// `(n, i)` or `(n, i, j)`.
pub type TriangleKey = (usize, usize, Option<usize>);

/// A table of nonnegative counts indexed by `(n, i[, j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatTriangle {
    pub name: String,
    pub entries: BTreeMap<TriangleKey, BigInt>,
}

impl StatTriangle {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), entries: BTreeMap::new() }
    }

    /// Entry `(n, i)`; absent keys are zero.
    pub fn get(&self, n: usize, i: usize) -> BigInt {
        self.entries.get(&(n, i, None)).cloned().unwrap_or_default()
    }

    pub fn get3(&self, n: usize, i: usize, j: usize) -> BigInt {
        self.entries.get(&(n, i, Some(j))).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> Vec<BigInt> {
        let width = self.entries.keys().filter(|k| k.0 == n).map(|k| k.1 + 1).max().unwrap_or(0);
        (0..width).map(|i| self.get(n, i)).collect()
    }
}

/// Counts over `S_n` by a key that is a function of the permutation.
/// Keys with zero count are not stored.
fn count_by<K, F>(n: usize, bounds: &Bounds, key: F) -> Result<BTreeMap<K, u64>, EnumError>
where
    K: Ord + std::hash::Hash + Send + Copy,
    F: Fn(&Perm) -> Option<K> + Sync,
{
    bounds.check_symmetric(n)?;
    let firsts: Vec<u8> = if n == 0 { vec![0] } else { (1..=n as u8).collect() };
    let counts = firsts
        .into_par_iter()
        .map(|a| {
            let mut h: HashMap<K, u64> = HashMap::new();
            for p in perms(n).filter(|p| a == 0 || p.one_line()[0] == a) {
                if let Some(k) = key(&p) {
                    *h.entry(k).or_insert(0) += 1;
                }
            }
            h
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    Ok(counts.into_iter().collect())
}

fn two_index<F>(name: &str, n_max: usize, bounds: &Bounds, stat: F) -> Result<StatTriangle, EnumError>
where
    F: Fn(&Perm) -> Option<u32> + Sync,
{
    let mut t = StatTriangle::new(name);
    for n in 0..=n_max {
        for (i, c) in count_by(n, bounds, |p| stat(p))? {
            t.entries.insert((n, i as usize, None), BigInt::from(c));
        }
    }
    Ok(t)
}

/// `W(n, i)`: permutations of `[n]` with `i` interior peaks.
pub fn w_triangle(n_max: usize, bounds: &Bounds) -> Result<StatTriangle, EnumError> {
    two_index("W", n_max, bounds, |p| Some(p.stat(PermStat::Ipk)))
}

/// `S(n, i)`: simsun permutations of `[n]` with `i` descents.
pub fn s_triangle(n_max: usize, bounds: &Bounds) -> Result<StatTriangle, EnumError> {
    two_index("S", n_max, bounds, |p| p.is_simsun().then(|| p.stat(PermStat::Des)))
}

/// `Q(n, i)`: permutations of `[n]` with `i` left peaks.
pub fn q_triangle(n_max: usize, bounds: &Bounds) -> Result<StatTriangle, EnumError> {
    two_index("Q", n_max, bounds, |p| Some(p.stat(PermStat::Lpk)))
}

/// `P*(n, r)`: no successions and `pi(1) > 1`, with `r` ascents counted
/// under the convention `pi(0) = 0`, i.e. `asc + 1`. Row 0 is the empty
/// permutation with `r = 0`.
pub fn pstar_triangle(n_max: usize, bounds: &Bounds) -> Result<StatTriangle, EnumError> {
    let mut t = two_index("Pstar", n_max, bounds, |p| {
        (p.stat(PermStat::Suc) == 0 && p.one_line().first().is_some_and(|&a| a > 1))
            .then(|| p.stat(PermStat::Asc) + 1)
    })?;
    t.entries.insert((0, 0, None), BigInt::from(1));
    Ok(t)
}

/// `P(n, r, s)`: permutations with `r` ascents and `s` successions.
pub fn p_triangle(n_max: usize, bounds: &Bounds) -> Result<StatTriangle, EnumError> {
    let mut t = StatTriangle::new("P");
    for n in 0..=n_max {
        let counts = count_by(n, bounds, |p| Some((p.stat(PermStat::Asc), p.stat(PermStat::Suc))))?;
        for ((r, s), c) in counts {
            t.entries.insert((n, r as usize, Some(s as usize)), BigInt::from(c));
        }
    }
    Ok(t)
}

/// For every `I` in `[n-1]`, as many permutations have succession set `I`
/// as have `{k in [n-1] : pi(k) = k} = I`.
pub fn fixed_set_vs_succession_set(n: usize, bounds: &Bounds) -> Result<bool, EnumError> {
    if n <= 1 {
        return Ok(true);
    }
    let masks = count_by(n, bounds, |p| {
        let w = p.one_line();
        let mut suc = 0u32;
        let mut fix = 0u32;
        for k in 0..n - 1 {
            if w[k + 1] == w[k] + 1 {
                suc |= 1 << k;
            }
            if w[k] as usize == k + 1 {
                fix |= 1 << k;
            }
        }
        Some((suc, fix))
    })?;
    let mut by_suc: BTreeMap<u32, u64> = BTreeMap::new();
    let mut by_fix: BTreeMap<u32, u64> = BTreeMap::new();
    for ((s, f), c) in masks {
        *by_suc.entry(s).or_default() += c;
        *by_fix.entry(f).or_default() += c;
    }
    Ok(by_suc == by_fix)
}

/// `P(n,r,s) = C(n-1,s) P(n-s,r-s,0)` and `x P_n(x) = P*_n(x) + x P*_{n-1}(x)`
/// for all `1 <= n <= n_max`.
pub fn roselle_checks(n_max: usize, bounds: &Bounds) -> Result<bool, EnumError> {
    let p = p_triangle(n_max, bounds)?;
    let pstar = pstar_triangle(n_max, bounds)?;
    for n in 1..=n_max {
        for r in 0..n {
            for s in 0..n {
                let lhs = p.get3(n, r, s);
                let rhs = if s > r {
                    BigInt::zero()
                } else {
                    binomial(n as u32 - 1, s as u32) * p.get3(n - s, r - s, 0)
                };
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        // Coefficient of x^r on both sides.
        for r in 0..=n {
            let lhs = if r == 0 { BigInt::zero() } else { p.get3(n, r - 1, 0) };
            let rhs = pstar.get(n, r) + if r == 0 { BigInt::zero() } else { pstar.get(n - 1, r - 1) };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn small_triangles() {
        let w = w_triangle(4, &b()).unwrap();
        assert_eq!(w.row(4), vec![BigInt::from(8), BigInt::from(16)]);
        let s = s_triangle(3, &b()).unwrap();
        assert_eq!(s.get(3, 1), BigInt::from(4));
        let q = q_triangle(3, &b()).unwrap();
        assert_eq!(q.row(3), vec![BigInt::from(1), BigInt::from(5)]);
    }

    #[test]
    fn pstar_rows_are_derangement_numbers() {
        let t = pstar_triangle(4, &b()).unwrap();
        assert_eq!(t.row(2), vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(t.row(3), vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)]);
        let total: BigInt = t.row(4).into_iter().sum();
        assert_eq!(total, BigInt::from(9));
    }

    #[test]
    fn roselle_n2_by_hand() {
        let p = p_triangle(2, &b()).unwrap();
        assert_eq!(p.get3(2, 1, 1), BigInt::from(1));
        assert_eq!(p.get3(1, 0, 0), BigInt::from(1));
        assert!(roselle_checks(6, &b()).unwrap());
    }

    #[test]
    fn unseparated_pairs() {
        for n in 0..=6 {
            assert!(fixed_set_vs_succession_set(n, &b()).unwrap(), "n = {n}");
        }
    }
}
