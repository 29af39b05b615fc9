use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::var::{Var, NVARS};
use super::{PolyError, Rational};

/// A product of powers of registry variables.
///
/// Stored densely over the fixed alphabet; an exponent of zero means the
/// variable is absent. `Ord` is lexicographic over registry order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: [u16; NVARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::default().with(v, 1)
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated
    /// variables accumulate.
    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = Self::default();
        for &(v, e) in pairs {
            m.exps[v.index()] += e as u16;
        }
        m
    }

    pub fn with(mut self, v: Var, e: u32) -> Self {
        self.exps[v.index()] = e as u16;
        self
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps[v.index()] as u32
    }

    pub(crate) fn set_exponent(&mut self, v: Var, e: u32) {
        self.exps[v.index()] = e as u16;
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Nonzero `(variable, exponent)` pairs in registry order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        Var::all()
            .map(move |v| (v, self.exponent(v)))
            .filter(|&(_, e)| e > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..NVARS {
            out.exps[i] += other.exps[i];
        }
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..NVARS {
            out.exps[i] = out.exps[i].checked_sub(other.exps[i])?;
        }
        Some(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Simultaneous substitution map.
pub type Bindings = BTreeMap<Var, MultiPoly>;

/// Builds a [`Bindings`] map from pairs.
pub fn bind<I: IntoIterator<Item = (Var, MultiPoly)>>(pairs: I) -> Bindings {
    pairs.into_iter().collect()
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int<T: Into<BigInt>>(c: T) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Collects `(monomial, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Collects integer-weighted monomials, the shape produced by
    /// enumeration tallies.
    pub fn from_counts<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        Self::from_terms(iter.into_iter().map(|(m, c)| (m, Rational::from_integer(c))))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient_of(&Monomial::one())
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.factors().map(|(v, _)| v)).collect()
    }

    /// Degree in `v`, or `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// The polynomial multiplying `v^k` when `self` is viewed as a
    /// polynomial in `v`.
    pub fn coefficient_in(&self, v: Var, k: u32) -> MultiPoly {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| (m.with(v, 0), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_int<T: Into<BigInt>>(&self, c: T) -> MultiPoly {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Self { terms })
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, v: Var) -> MultiPoly {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let mut dm = *m;
                dm.set_exponent(v, e - 1);
                out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Simultaneous substitution; unbound variables are left in place.
    pub fn substitute(&self, bindings: &Bindings) -> MultiPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), MultiPoly> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = Self::constant(c.clone());
            for (v, e) in m.factors() {
                match bindings.get(&v) {
                    Some(b) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| b.pow(e));
                        factor = &factor * &*pw;
                    }
                    None => kept.set_exponent(v, e),
                }
            }
            out += &factor.mul_monomial(&kept);
        }
        out
    }

    /// Substitutes a single variable.
    pub fn subs(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        self.substitute(&bind([(v, value.clone())]))
    }

    /// `v^n * self(v -> 1/v)`; fails if `self` has degree above `n` in `v`.
    pub fn reciprocal_in(&self, v: Var, n: u32) -> Result<MultiPoly, PolyError> {
        let deg = self.degree_in(v).unwrap_or(0);
        if deg > n {
            return Err(PolyError::ReciprocalDegree { var: v, degree: deg, bound: n });
        }
        Ok(Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with(v, n - m.exponent(v)), c.clone()))
                .collect(),
        })
    }

    /// Exact division by `(v - root)` using synthetic division in `v`.
    pub fn div_linear(&self, v: Var, root: &Rational) -> Result<MultiPoly, PolyError> {
        let Some(deg) = self.degree_in(v) else {
            return Ok(Self::zero());
        };
        let root_poly = Self::constant(root.clone());
        // Horner from the top: q_{k-1} = a_k + root * q_k.
        let mut quotient = Self::zero();
        let mut carry = Self::zero();
        for k in (0..=deg).rev() {
            let current = &self.coefficient_in(v, k) + &(&carry * &root_poly);
            if k == 0 {
                if !current.is_zero() {
                    return Err(PolyError::NotDivisible {
                        divisor: format!("{v} - ({root})"),
                        remainder: current.to_string(),
                    });
                }
            } else {
                quotient += &current.mul_monomial(&Monomial::var(v).with(v, k - 1));
            }
            carry = current;
        }
        Ok(quotient)
    }

    /// Exact division by `(v - root)^k`.
    pub fn div_linear_pow(&self, v: Var, root: &Rational, k: u32) -> Result<MultiPoly, PolyError> {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.div_linear(v, root)?;
        }
        Ok(p)
    }

    /// Evaluates to a rational when every variable is bound to a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical rendering: terms in descending lexicographic order over the
/// registry, coefficient first, `*` between factors, `^` for exponents.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> AddAssign<&'a MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &'a MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &'a MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        iter.fold(MultiPoly::one(), |acc, p| &acc * &p)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::int(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn s() -> MultiPoly {
        MultiPoly::var(Var::S)
    }

    #[test]
    fn add_identity_and_doubling() {
        let a = &x() + &y();
        assert_eq!(&a + &MultiPoly::zero(), a);
        let sy = &s() + &y();
        assert_eq!((&sy + &sy).to_string(), "2*s + 2*y");
        // A_2 + y*A_1
        assert_eq!((&sy + &y()).to_string(), "s + 2*y");
    }

    #[test]
    fn square_and_phi3() {
        let a = &x() + &y();
        assert_eq!((&a * &a).to_string(), "x^2 + 2*x*y + y^2");
        let xy = &x() * &y();
        assert_eq!((&xy * &a).to_string(), "x^2*y + x*y^2");
        let sy = &s() + &y();
        let a3 = &sy.pow(2) + &xy.scale_int(2);
        assert_eq!(a3.to_string(), "s^2 + 2*s*y + 2*x*y + y^2");
    }

    #[test]
    fn substitution_examples() {
        let u = MultiPoly::var(Var::U);
        let v = MultiPoly::var(Var::V);
        let uv = &u * &v;
        let b = bind([(Var::U, &x() * &y()), (Var::V, &x() + &y())]);
        assert_eq!(uv.substitute(&b).to_string(), "x^2*y + x*y^2");

        let a3 = &(&s() + &y()).pow(2) + &(&x() * &y()).scale_int(2);
        let b = bind([(Var::Y, MultiPoly::one()), (Var::S, x())]);
        assert_eq!(a3.substitute(&b).to_string(), "x^2 + 4*x + 1");

        let t = MultiPoly::var(Var::T);
        assert_eq!(t.subs(Var::T, &(&s() + &y())).to_string(), "s + y");
    }

    #[test]
    fn substitution_is_simultaneous() {
        // x -> y, y -> x swaps rather than collapsing.
        let p = &x() + &y().pow(2);
        let b = bind([(Var::X, y()), (Var::Y, x())]);
        assert_eq!(p.substitute(&b).to_string(), "x^2 + y");
    }

    #[test]
    fn derivatives() {
        let p = &x().pow(2) * &y();
        assert_eq!(p.partial_derivative(Var::X).to_string(), "2*x*y");
        let a2 = &s() + &y();
        assert_eq!(a2.partial_derivative(Var::S), MultiPoly::one());
        let xy = &x() * &y();
        let d = &(&a2.partial_derivative(Var::X) + &a2.partial_derivative(Var::Y))
            + &a2.partial_derivative(Var::S);
        let a3 = &(&a2 * &a2) + &(&xy * &d);
        assert_eq!(a3, &(&s() + &y()).pow(2) + &xy.scale_int(2));
    }

    #[test]
    fn coefficients() {
        let p = (&x() + &y()).pow(2);
        assert_eq!(
            p.coefficient_of(&Monomial::from_pairs(&[(Var::X, 1), (Var::Y, 1)])),
            Rational::from_integer(2.into())
        );
        assert!(p.coefficient_of(&Monomial::var(Var::S)).is_zero());
    }

    #[test]
    fn reciprocal() {
        let p = MultiPoly::from(1) + x().scale_int(4) + x().pow(2);
        assert_eq!(p.reciprocal_in(Var::X, 2).unwrap(), p);
        let d3 = &x() + &x().pow(2);
        assert_eq!(d3.reciprocal_in(Var::X, 3).unwrap(), d3);
        assert!(matches!(
            x().pow(3).reciprocal_in(Var::X, 2),
            Err(PolyError::ReciprocalDegree { .. })
        ));
    }

    #[test]
    fn linear_division() {
        let one = Rational::one();
        let p = &(&x() - &MultiPoly::one()) * &(&x() + &y());
        assert_eq!(p.div_linear(Var::X, &one).unwrap(), &x() + &y());
        assert!(matches!(
            (&x() + &y()).div_linear(Var::X, &one),
            Err(PolyError::NotDivisible { .. })
        ));
        let q1 = &MultiPoly::var(Var::Q) + &MultiPoly::one();
        let p = &q1.pow(3) * &x();
        assert_eq!(p.div_linear_pow(Var::Q, &-one, 3).unwrap(), x());
    }

    #[test]
    fn rendering() {
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((&y() - &x()).to_string(), "-x + y");
        assert_eq!(
            x().scale(&Rational::new(1.into(), 2.into())).to_string(),
            "1/2*x"
        );
        assert_eq!((&MultiPoly::int(-3) + &x()).to_string(), "x - 3");
    }

    #[test]
    fn negation_cancels() {
        let p = (&x() + &y()).pow(3);
        assert!((&p + &(-&p)).is_zero());
    }
}
