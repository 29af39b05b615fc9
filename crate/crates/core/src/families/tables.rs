use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::exactalg::{c, v, MultiPoly, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaKind {
    /// Integer `gamma_{n,i,j}`.
    Gamma,
    /// `b_{n,i,j}(p)`, polynomials in `p`.
    BOfP,
    /// `f+_{n,j}(q)`, stored at `(n, 0, j)`.
    FPlus,
    /// `f-_{n,j}(q)`, stored at `(n, 0, j)`.
    FMinus,
}

impl GammaKind {
    pub const ALL: [GammaKind; 4] = [GammaKind::Gamma, GammaKind::BOfP, GammaKind::FPlus, GammaKind::FMinus];

    pub fn name(self) -> &'static str {
        match self {
            GammaKind::Gamma => "gamma",
            GammaKind::BOfP => "b_of_p",
            GammaKind::FPlus => "f_plus",
            GammaKind::FMinus => "f_minus",
        }
    }
}

impl FromStr for GammaKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GammaKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown table '{s}'"))
    }
}

impl fmt::Display for GammaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Three-index table of polynomial coefficients. Missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    pub kind: GammaKind,
    pub max_n: usize,
    pub entries: BTreeMap<(usize, usize, usize), MultiPoly>,
}

impl GammaTable {
    fn new(kind: GammaKind, max_n: usize) -> Self {
        Self { kind, max_n, entries: BTreeMap::new() }
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> MultiPoly {
        self.entries.get(&(n, i, j)).cloned().unwrap_or_default()
    }

    /// Like [`get`](Self::get) but zero for negative indices.
    fn at(&self, n: usize, i: isize, j: isize) -> MultiPoly {
        if i < 0 || j < 0 {
            MultiPoly::zero()
        } else {
            self.get(n, i as usize, j as usize)
        }
    }

    fn set(&mut self, n: usize, i: usize, j: usize, value: MultiPoly) {
        if !value.is_zero() {
            self.entries.insert((n, i, j), value);
        }
    }

    /// Every entry has nonnegative integer coefficients.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|p| p.is_integral() && p.has_nonnegative_coefficients())
    }

    /// First entry violating [`is_nonnegative`](Self::is_nonnegative).
    pub fn first_negative(&self) -> Option<((usize, usize, usize), MultiPoly)> {
        self.entries
            .iter()
            .find(|(_, p)| !(p.is_integral() && p.has_nonnegative_coefficients()))
            .map(|(&k, p)| (k, p.clone()))
    }
}

/// `gamma_{n+1,i,j} = gamma_{n,i-1,j} + (1+i) gamma_{n,i+1,j-1} + j gamma_{n,i,j}`
/// `+ (n-i-2j+2) gamma_{n,i,j-1}`, or the `b(p)` variant with `p` on the
/// first term and a factor 2 on the last.
fn fill_ij(kind: GammaKind, max_n: usize) -> GammaTable {
    let (first, last_factor) = match kind {
        GammaKind::Gamma => (c(1), 1),
        _ => (v(Var::P), 2),
    };
    let mut t = GammaTable::new(kind, max_n);
    t.set(0, 0, 0, c(1));
    for n in 0..max_n {
        let m = n + 1;
        for i in 0..=m {
            for j in 0..=(m - i) / 2 {
                let (ii, jj) = (i as isize, j as isize);
                let mut val = &first * &t.at(n, ii - 1, jj);
                val += &t.at(n, ii + 1, jj - 1).scale_int(1 + i as i64);
                val += &t.at(n, ii, jj).scale_int(j as i64);
                let w = n as i64 - i as i64 - 2 * j as i64 + 2;
                val += &t.at(n, ii, jj - 1).scale_int(last_factor * w);
                t.set(m, i, j, val);
            }
        }
    }
    t
}

/// Both halves of the `f+/f-` coefficient system.
pub fn f_pm_tables(max_n: usize) -> (GammaTable, GammaTable) {
    let q = v(Var::Q);
    let one_q = &c(1) + &q;
    let mut fp = GammaTable::new(GammaKind::FPlus, max_n);
    let mut fm = GammaTable::new(GammaKind::FMinus, max_n);
    fp.set(0, 0, 0, c(1));
    for n in 0..max_n {
        let m = n + 1;
        let prev = |t: &GammaTable, j: isize| if n == 0 { MultiPoly::zero() } else { t.at(n - 1, 0, j) };
        for j in 0..=m / 2 {
            let jj = j as isize;
            let mut val = &prev(&fp, jj - 1).scale_int(n as i64) * &one_q;
            val += &(&fp.at(n, 0, jj).scale_int(j as i64) * &one_q);
            val += &(&fp.at(n, 0, jj - 1).scale_int(2 * (n as i64 - 2 * j as i64 + 2)) * &one_q);
            val += &fm.at(n, 0, jj - 1);
            fp.set(m, 0, j, val);
        }
        for j in 0..=(m - 1) / 2 {
            let jj = j as isize;
            let mut val = &q * &(&fp.at(n, 0, jj) + &fm.at(n, 0, jj));
            val += &(&prev(&fm, jj - 1).scale_int(n as i64) * &one_q);
            val += &(&fm.at(n, 0, jj).scale_int(j as i64) * &one_q);
            val += &(&fm.at(n, 0, jj - 1).scale_int(2 * (n as i64 - 2 * j as i64 + 1)) * &one_q);
            fm.set(m, 0, j, val);
        }
    }
    (fp, fm)
}

pub fn gamma_table(kind: GammaKind, max_n: usize) -> GammaTable {
    match kind {
        GammaKind::Gamma | GammaKind::BOfP => fill_ij(kind, max_n),
        GammaKind::FPlus => f_pm_tables(max_n).0,
        GammaKind::FMinus => f_pm_tables(max_n).1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    #[test]
    fn gamma_second_row() {
        let t = gamma_table(GammaKind::Gamma, 2);
        assert_eq!(t.get(2, 0, 1), c(1));
        assert_eq!(t.get(2, 2, 0), c(1));
        assert_eq!(t.get(2, 1, 0), c(0));
    }

    #[test]
    fn b_first_row() {
        let t = gamma_table(GammaKind::BOfP, 1);
        assert_eq!(t.get(1, 1, 0), v(Var::P));
        assert_eq!(t.entries.len(), 2);
    }

    #[test]
    fn f_pm_second_row() {
        let (fp, fm) = f_pm_tables(3);
        assert_eq!(fp.get(2, 0, 1), parse_poly("1 + 2q").unwrap());
        assert_eq!(fp.get(2, 0, 0), c(0));
        assert_eq!(fm.get(2, 0, 0), parse_poly("q^2").unwrap());
        assert_eq!(fm.get(1, 0, 0), v(Var::Q));
        assert_eq!(fp.get(3, 0, 1), parse_poly("1 + 3q + 3q^2").unwrap());
    }

    #[test]
    fn positivity_through_ten() {
        assert!(gamma_table(GammaKind::Gamma, 10).is_nonnegative());
        assert!(gamma_table(GammaKind::BOfP, 10).is_nonnegative());
        let (fp, fm) = f_pm_tables(10);
        assert!(fp.is_nonnegative() && fm.is_nonnegative());
    }
}
