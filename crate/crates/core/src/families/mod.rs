//! Named polynomial families: fast computation and brute-force oracles.
//!
//! [`family`] evaluates a family through recurrences, grammars or gamma
//! tables. [`oracle`] computes the same polynomial by enumerating the
//! underlying permutation class, so the two can be compared.

mod expand;
mod tables;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactalg::{bind, binomial, c, v, Monomial, MultiPoly, PolyError, Var};
use crate::grammarcalc::Grammar;
use crate::permstats::{
    colored_distribution, perm_distribution, signed_distribution, tally_perms, Bounds, ColoredClass,
    ColoredStat, EnumError, PermClass, PermStat, SignedClass, SignedStat,
};

pub use expand::{expand_gamma_basis, f_pm_split, gamma_vector, GammaStyle, SpanError};
pub use tables::{f_pm_tables, gamma_table, GammaKind, GammaTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    Unknown(String),
    #[error("family {0} needs the parameter r >= 1")]
    MissingR(Family),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The group an oracle enumerates, used for resource bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Symmetric,
    Signed,
    Colored,
    /// Checked through a closed-form identity instead of enumeration.
    None,
}

macro_rules! families {
    ($($variant:ident => $name:literal, $group:ident;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Family { $($variant),* }

        impl Family {
            pub const ALL: &'static [Family] = &[$(Family::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Family::$variant => $name),* }
            }

            pub fn group(self) -> Group {
                match self { $(Family::$variant => Group::$group),* }
            }
        }
    };
}

families! {
    AXys => "A_xys", Symmetric;
    AtildeXy => "Atilde_xy", Symmetric;
    BXystpq => "B_xystpq", Signed;
    BXystq => "B_xystq", Signed;
    BX => "B_x", Signed;
    AX => "A_x", Symmetric;
    DX => "d_x", Symmetric;
    DXy => "d_xy", Symmetric;
    DXys => "d_xys", Symmetric;
    DbXq => "dB_xq", Signed;
    DbX => "dB_x", Signed;
    DbTildeX => "dBtilde_x", Signed;
    DNr => "d_nr", Colored;
    FPlus => "f_plus", Signed;
    FMinus => "f_minus", Signed;
    Phi => "Phi", None;
    Stellahedron => "stellahedron", Symmetric;
    BLpk => "b_lpk", Symmetric;
    SX => "S_x", Symmetric;
    PX => "P_x", Symmetric;
    PstarX => "Pstar_x", Symmetric;
    MSx => "M_sx", Symmetric;
    CSx => "C_sx", Symmetric;
}

impl FromStr for Family {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.iter().copied().find(|f| f.name() == s).ok_or_else(|| FamilyError::Unknown(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with its parameter, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    /// Number of colors; only `d_nr` uses it.
    pub r: Option<u8>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        Self { family, r: None }
    }

    pub fn with_r(family: Family, r: u8) -> Self {
        Self { family, r: Some(r) }
    }

    pub fn parse(name: &str, r: Option<u8>) -> Result<Self, FamilyError> {
        Ok(Self { family: name.parse()?, r })
    }

    fn colors(&self) -> Result<u8, FamilyError> {
        match self.r {
            Some(r) if r >= 1 => Ok(r),
            _ => Err(FamilyError::MissingR(self.family)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r {
            Some(r) if self.family == Family::DNr => write!(f, "{}(r={r})", self.family),
            _ => write!(f, "{}", self.family),
        }
    }
}

fn x() -> MultiPoly {
    v(Var::X)
}
fn y() -> MultiPoly {
    v(Var::Y)
}

fn binom(n: usize, k: usize) -> MultiPoly {
    MultiPoly::int(binomial(n as u32, k as u32))
}

/// `Phi_n(x, y) = xy (x^(n-2) + x^(n-3) y + .. + y^(n-2))` for `n >= 2`, else 0.
pub fn phi(n: usize) -> MultiPoly {
    if n < 2 {
        return MultiPoly::zero();
    }
    let xy = &x() * &y();
    let s: MultiPoly = (0..=n - 2).map(|k| &x().pow(k as u32) * &y().pow((n - 2 - k) as u32)).sum();
    &xy * &s
}

/// `F_n = lead^n + sum_{k=0}^{n-2} C(n,k) F_k Phi_{n-k}(x, yv) c^(n-k)`.
fn phi_recurrence(n_max: usize, lead: &MultiPoly, c_: &MultiPoly, yv: &MultiPoly) -> Vec<MultiPoly> {
    let phis: Vec<MultiPoly> = (0..=n_max).map(|k| phi(k).subs(Var::Y, yv)).collect();
    let mut out: Vec<MultiPoly> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut f = lead.pow(n as u32);
        for k in 0..n.saturating_sub(1) {
            let term = &(&binom(n, k) * &out[k]) * &(&phis[n - k] * &c_.pow((n - k) as u32));
            f += &term;
        }
        out.push(f);
    }
    out
}

fn a_xys_seq(n_max: usize) -> Vec<MultiPoly> {
    let s_plus_y = &v(Var::S) + &y();
    let xy = &x() * &y();
    let mut out = vec![c(1)];
    for n in 1..=n_max {
        if n == 1 {
            out.push(c(1));
            continue;
        }
        let a = &out[n - 1];
        let d = &(&a.partial_derivative(Var::X) + &a.partial_derivative(Var::Y)) + &a.partial_derivative(Var::S);
        out.push(&(&s_plus_y * a) + &(&xy * &d));
    }
    out
}

fn d_xy_seq(n_max: usize) -> Vec<MultiPoly> {
    phi_recurrence(n_max, &c(0), &c(1), &y())
}

fn d_x_seq(n_max: usize) -> Vec<MultiPoly> {
    phi_recurrence(n_max, &c(0), &c(1), &c(1))
}

/// Sum over the gamma table: `sum_{i,j} weight(n, i, j) * entry`.
fn from_table<F>(t: &GammaTable, n: usize, weight: F) -> MultiPoly
where
    F: Fn(usize, usize) -> MultiPoly,
{
    t.entries.range((n, 0, 0)..(n + 1, 0, 0)).map(|(&(_, i, j), val)| val * &weight(i, j)).sum()
}

/// `sum_{j} entry_j x^j (1+x)^(m-2j)`.
fn from_f_table(t: &GammaTable, n: usize, m: usize) -> MultiPoly {
    let one_x = &c(1) + &x();
    from_table(t, n, |_, j| &x().pow(j as u32) * &one_x.pow((m - 2 * j) as u32))
}

/// `d^B_n(x, q) = sum_{i,j} C(n,i) C(i,j) d_{n-j}(x) q^i`.
pub fn d_b_xq_formula(n: usize) -> MultiPoly {
    let d = d_x_seq(n);
    let q = v(Var::Q);
    let mut out = MultiPoly::zero();
    for i in 0..=n {
        for j in 0..=i {
            out += &(&(&binom(n, i) * &binom(i, j)) * &(&d[n - j] * &q.pow(i as u32)));
        }
    }
    out
}

/// `d_{n,r}(x) = sum_i C(n,i) (r-1)^i x^i r^(n-i) d_{n-i}(x)`.
pub fn d_nr_formula(n: usize, r: u8) -> MultiPoly {
    let d = d_x_seq(n);
    let r = r as i64;
    (0..=n)
        .map(|i| {
            let k = MultiPoly::int((r - 1).pow(i as u32) * r.pow((n - i) as u32));
            &(&binom(n, i) * &k) * &(&x().pow(i as u32) * &d[n - i])
        })
        .sum()
}

/// `F_0, .., F_{n_max}` for the given family.
pub fn family_sequence(spec: &FamilySpec, n_max: usize) -> Result<Vec<MultiPoly>, FamilyError> {
    let xv = x();
    let yv = y();
    let q = v(Var::Q);
    let out = match spec.family {
        Family::AXys => a_xys_seq(n_max),
        Family::AtildeXy => {
            let a = a_xys_seq(n_max);
            let b = bind([(Var::S, xv.clone())]);
            a.iter()
                .enumerate()
                .map(|(n, p)| if n == 0 { c(1) } else { &yv * &p.substitute(&b) })
                .collect()
        }
        Family::BXystpq => {
            let g2 = Grammar::builtin("G2").expect("G2");
            let j = Monomial::var(Var::J);
            g2.derivation(&v(Var::J), n_max)
                .powers
                .iter()
                .map(|p| p.div_monomial(&j).expect("every iterate carries J"))
                .collect()
        }
        Family::BXystq => {
            let lead = &v(Var::S) + &(&q * &v(Var::T));
            phi_recurrence(n_max, &lead, &(&c(1) + &q), &yv)
        }
        Family::BX => phi_recurrence(n_max, &(&xv + &c(1)), &c(2), &c(1)),
        Family::AX => phi_recurrence(n_max, &c(1), &c(1), &c(1)),
        Family::DX | Family::PstarX => d_x_seq(n_max),
        Family::DXy => d_xy_seq(n_max),
        Family::DXys => {
            let d = d_xy_seq(n_max);
            let s = v(Var::S);
            (0..=n_max)
                .map(|n| (0..=n).map(|i| &(&binom(n, i) * &s.pow(i as u32)) * &d[n - i]).sum())
                .collect()
        }
        Family::DbXq => (0..=n_max).map(d_b_xq_formula).collect(),
        Family::DbX => phi_recurrence(n_max, &c(1), &c(2), &c(1)),
        Family::DbTildeX => phi_recurrence(n_max, &xv, &c(2), &c(1)),
        Family::DNr => {
            let r = spec.colors()?;
            (0..=n_max).map(|n| d_nr_formula(n, r)).collect()
        }
        Family::FPlus | Family::FMinus => {
            let (fp, fm) = f_pm_tables(n_max);
            (0..=n_max)
                .map(|n| match spec.family {
                    Family::FPlus => from_f_table(&fp, n, n),
                    _ if n == 0 => MultiPoly::zero(),
                    _ => from_f_table(&fm, n, n - 1),
                })
                .collect()
        }
        Family::Phi => (0..=n_max).map(phi).collect(),
        Family::Stellahedron => {
            let t = gamma_table(GammaKind::BOfP, n_max).substitute_p(1);
            let one_x = &c(1) + &xv;
            (0..=n_max)
                .map(|n| from_table(&t, n, |_, j| &xv.pow(j as u32) * &one_x.pow((n - 2 * j) as u32)))
                .collect()
        }
        Family::BLpk => {
            let t = gamma_table(GammaKind::BOfP, n_max).substitute_p(1);
            (0..=n_max)
                .map(|n| from_table(&t, n, |i, j| xv.pow(j as u32).scale_int(1i64 << (n - i))))
                .collect()
        }
        Family::SX => {
            let t = gamma_table(GammaKind::Gamma, n_max);
            (0..=n_max).map(|n| from_table(&t, n, |_, j| xv.pow(j as u32))).collect()
        }
        Family::PX => {
            let b = bind([(Var::Y, c(1)), (Var::S, c(0))]);
            a_xys_seq(n_max).iter().map(|p| p.substitute(&b)).collect()
        }
        Family::MSx | Family::CSx => {
            let kind = if spec.family == Family::MSx { GammaKind::Gamma } else { GammaKind::BOfP };
            let t = gamma_table(kind, n_max).substitute_p(1);
            let s = v(Var::S);
            (0..=n_max).map(|n| from_table(&t, n, |i, j| &s.pow(i as u32) * &xv.pow(j as u32))).collect()
        }
    };
    Ok(out)
}

/// `F_n` for the given family.
pub fn family(spec: &FamilySpec, n: usize) -> Result<MultiPoly, FamilyError> {
    Ok(family_sequence(spec, n)?.pop().expect("nonempty"))
}

/// Divides `poly` by `y - x`, treating it as a polynomial in `y`.
fn div_y_minus_x(poly: &MultiPoly) -> Option<MultiPoly> {
    let Some(d) = poly.degree_in(Var::Y) else { return Some(MultiPoly::zero()) };
    let mut quotient = MultiPoly::zero();
    let mut carry = MultiPoly::zero();
    // Synthetic division with root y = x, from the top coefficient down.
    for k in (1..=d).rev() {
        carry = &poly.coefficient_in(Var::Y, k) + &(&x() * &carry);
        quotient += &(&carry * &y().pow(k - 1));
    }
    (&poly.coefficient_in(Var::Y, 0) + &(&x() * &carry)).is_zero().then_some(quotient)
}

/// `F_n` computed by enumeration (or, for `Phi`, from its generating
/// function identity `(y - x)(1 - Phi) = y e^(xz) - x e^(yz)`).
pub fn oracle(spec: &FamilySpec, n: usize, bounds: &Bounds) -> Result<MultiPoly, FamilyError> {
    let (xv, yv, sv, tv, pv, qv) = (Var::X, Var::Y, Var::S, Var::T, Var::P, Var::Q);
    let out = match spec.family {
        Family::AXys => perm_distribution(
            n,
            PermClass::All,
            &[(PermStat::Basc, xv), (PermStat::Des, yv), (PermStat::Suc, sv)],
            bounds,
        )?,
        Family::AtildeXy if n == 0 => c(1),
        Family::AtildeXy => tally_perms(n, bounds, |p| {
            Some(Monomial::from_pairs(&[(xv, p.stat(PermStat::Asc)), (yv, p.stat(PermStat::Des) + 1)]))
        })?,
        Family::BXystpq => signed_distribution(
            n,
            SignedClass::All,
            &[
                (SignedStat::Exc, xv),
                (SignedStat::Aexc, yv),
                (SignedStat::Fix, sv),
                (SignedStat::St, tv),
                (SignedStat::Cyc, pv),
                (SignedStat::Neg, qv),
            ],
            bounds,
        )?,
        Family::BXystq => signed_distribution(
            n,
            SignedClass::All,
            &[
                (SignedStat::Exc, xv),
                (SignedStat::Aexc, yv),
                (SignedStat::Fix, sv),
                (SignedStat::St, tv),
                (SignedStat::Neg, qv),
            ],
            bounds,
        )?,
        Family::BX => signed_distribution(n, SignedClass::All, &[(SignedStat::DesB, xv)], bounds)?,
        Family::AX => perm_distribution(n, PermClass::All, &[(PermStat::Des, xv)], bounds)?,
        Family::DX => perm_distribution(n, PermClass::Derangements, &[(PermStat::Exc, xv)], bounds)?,
        Family::DXy => perm_distribution(
            n,
            PermClass::Derangements,
            &[(PermStat::Exc, xv), (PermStat::Aexc, yv)],
            bounds,
        )?,
        Family::DXys => perm_distribution(
            n,
            PermClass::All,
            &[(PermStat::Exc, xv), (PermStat::Aexc, yv), (PermStat::Fix, sv)],
            bounds,
        )?,
        Family::DbXq => signed_distribution(
            n,
            SignedClass::Derangements,
            &[(SignedStat::Exc, xv), (SignedStat::Neg, qv)],
            bounds,
        )?,
        Family::DbX => signed_distribution(n, SignedClass::Derangements, &[(SignedStat::Exc, xv)], bounds)?,
        Family::DbTildeX => {
            signed_distribution(n, SignedClass::Derangements, &[(SignedStat::ExcB, xv)], bounds)?
        }
        Family::DNr => colored_distribution(
            n,
            spec.colors()?,
            ColoredClass::Derangements,
            &[(ColoredStat::Exc, xv)],
            bounds,
        )?,
        Family::FPlus | Family::FMinus => {
            let d = oracle(&FamilySpec::new(Family::DbXq), n, bounds)?;
            let (fp, fm) = f_pm_split(&d, xv, n)?;
            if spec.family == Family::FPlus {
                fp
            } else {
                fm
            }
        }
        Family::Phi => {
            // (y - x) Phi_n = [n = 0](y - x) - y x^n + x y^n
            let delta = if n == 0 { &y() - &x() } else { MultiPoly::zero() };
            let rhs = &(&delta - &(&y() * &x().pow(n as u32))) + &(&x() * &y().pow(n as u32));
            div_y_minus_x(&rhs).ok_or_else(|| PolyError::NotDivisible {
                divisor: "y - x".into(),
                remainder: rhs.to_string(),
            })?
        }
        Family::Stellahedron => {
            // sum_i C(n,i) A_i(x) x^(n-i)
            let mut total = MultiPoly::zero();
            for i in 0..=n {
                let a = perm_distribution(i, PermClass::All, &[(PermStat::Des, xv)], bounds)?;
                total += &(&(&binom(n, i) * &a) * &x().pow((n - i) as u32));
            }
            total
        }
        Family::BLpk => perm_distribution(n, PermClass::All, &[(PermStat::Lpk, xv)], bounds)?
            .subs(xv, &x().scale_int(4)),
        Family::SX => perm_distribution(n, PermClass::Simsun, &[(PermStat::Des, xv)], bounds)?,
        Family::PX => perm_distribution(n, PermClass::SuccessionFree, &[(PermStat::Asc, xv)], bounds)?,
        Family::PstarX if n == 0 => c(1),
        Family::PstarX => tally_perms(n, bounds, |p| {
            PermClass::PStar.contains(p).then(|| Monomial::from_pairs(&[(xv, p.stat(PermStat::Asc) + 1)]))
        })?,
        Family::MSx => perm_distribution(
            n,
            PermClass::SimsunSecondKind,
            &[(PermStat::Fix, sv), (PermStat::Exc, xv)],
            bounds,
        )?,
        Family::CSx => perm_distribution(
            n,
            PermClass::CdaFree,
            &[(PermStat::Fix, sv), (PermStat::Exc, xv)],
            bounds,
        )?,
    };
    Ok(out)
}

impl GammaTable {
    /// Evaluates every entry at `p = value`.
    pub fn substitute_p(&self, value: i64) -> GammaTable {
        let b = bind([(Var::P, c(value))]);
        let mut t = self.clone();
        for e in t.entries.values_mut() {
            *e = e.substitute(&b);
        }
        t.entries.retain(|_, e| !e.is_zero());
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn fam(name: &str, n: usize) -> MultiPoly {
        family(&FamilySpec::parse(name, None).unwrap(), n).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(fam("A_xys", 2), p("s + y"));
        assert_eq!(fam("A_xys", 3), p("(s+y)^2 + 2 x y"));
        assert_eq!(fam("dB_xq", 1), p("q"));
        assert_eq!(fam("Phi", 0), c(0));
        assert_eq!(fam("Phi", 3), p("x^2 y + x y^2"));
        assert_eq!(fam("A_x", 3), p("1 + 4x + x^2"));
        assert_eq!(fam("d_x", 3), p("x + x^2"));
        assert_eq!(fam("B_x", 2), p("1 + 6x + x^2"));
        assert_eq!(fam("Atilde_xy", 1), p("y"));
        assert_eq!(fam("b_lpk", 0), c(1));
        assert_eq!(fam("B_xystq", 1), p("s + q t"));
        assert_eq!(fam("B_xystpq", 1), p("p (s + q t)"));
    }

    #[test]
    fn names_round_trip() {
        for &f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("nope".parse::<Family>(), Err(FamilyError::Unknown(_))));
        assert!(matches!(family(&FamilySpec::new(Family::DNr), 2), Err(FamilyError::MissingR(_))));
    }

    #[test]
    fn every_family_matches_its_oracle_small() {
        let bounds = Bounds::default();
        for &f in Family::ALL {
            let spec = FamilySpec { family: f, r: Some(2) };
            let seq = family_sequence(&spec, 5).unwrap();
            for (n, fast) in seq.iter().enumerate() {
                assert_eq!(fast, &oracle(&spec, n, &bounds).unwrap(), "{f} at n = {n}");
            }
        }
    }
}
