//! Truncated exponential generating functions with polynomial coefficients.
//!
//! Entry `n` of a [`TruncatedEgf`] is the coefficient of `z^n / n!`. Every
//! rational-exponential identity is checked after clearing denominators, so
//! the algebra only needs products of series, never quotients.

use thiserror::Error;

use crate::exactalg::{binomial, Bindings, MultiPoly, PolyError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EgfError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedEgf {
    coeffs: Vec<MultiPoly>,
}

impl TruncatedEgf {
    /// Series with `coeffs[n] = family(n)` for `n <= order`.
    pub fn from_family<F: FnMut(usize) -> MultiPoly>(order: usize, family: F) -> Self {
        Self { coeffs: (0..=order).map(family).collect() }
    }

    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        Self { coeffs }
    }

    pub fn constant(c: MultiPoly, order: usize) -> Self {
        Self::from_family(order, |n| if n == 0 { c.clone() } else { MultiPoly::zero() })
    }

    /// `e^{m z}`: entry `n` is `m^n`.
    pub fn exp_linear(m: &MultiPoly, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pw = MultiPoly::one();
        for _ in 0..=order {
            coeffs.push(pw.clone());
            pw = &pw * m;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<(), EgfError> {
        if self.order() != other.order() {
            return Err(EgfError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, EgfError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EgfError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Binomial convolution: `(ab)[n] = sum_k C(n,k) a[k] b[n-k]`.
    pub fn mul(&self, other: &Self) -> Result<Self, EgfError> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        (&self.coeffs[k] * &other.coeffs[n - k]).scale_int(binomial(n as u32, k as u32))
                    })
                    .sum()
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(MultiPoly::one(), self.order());
        for _ in 0..e {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// `d/dz`; the result loses one order of truncation.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::constant(MultiPoly::zero(), 0);
        }
        Self { coeffs: self.coeffs[1..].to_vec() }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// `z -> c z`: entry `n` is multiplied by `c^n`.
    pub fn rescale(&self, c: &MultiPoly) -> Self {
        let mut pw = MultiPoly::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pw);
            pw = &pw * c;
        }
        Self { coeffs }
    }

    /// Applies a substitution to every coefficient.
    pub fn substitute(&self, bindings: &Bindings) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.substitute(bindings)).collect() }
    }

    /// Substitutes `var -> num/den` coefficient-wise and clears the
    /// denominator: entry `n` becomes `den^(clear_exp(n)) * a_n(var -> num/den)`.
    ///
    /// Each `a_n` must have degree at most `clear_exp(n)` in `var`, otherwise
    /// the result would not be a polynomial.
    pub fn substitute_cleared<F: Fn(usize) -> u32>(
        &self,
        var: Var,
        num: &MultiPoly,
        den: &MultiPoly,
        clear_exp: F,
    ) -> Result<Self, EgfError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, a) in self.coeffs.iter().enumerate() {
            let e = clear_exp(n);
            let deg = a.degree_in(var).unwrap_or(0);
            if deg > e {
                return Err(PolyError::ReciprocalDegree { var, degree: deg, bound: e }.into());
            }
            let mut out = MultiPoly::zero();
            for k in 0..=deg {
                let slice = a.coefficient_in(var, k);
                if slice.is_zero() {
                    continue;
                }
                out += &(&(&slice * &num.pow(k)) * &den.pow(e - k));
            }
            coeffs.push(out);
        }
        Ok(Self { coeffs })
    }

    /// The first index where two series differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<usize>, EgfError> {
        self.check_order(other)?;
        Ok((0..=self.order()).find(|&n| self.coeffs[n] != other.coeffs[n]))
    }
}

/// Checks `rhs * den == num` coefficient-wise, the cleared form of
/// `rhs == num / den`.
pub fn verify_cross_multiplied(
    num: &TruncatedEgf,
    den: &TruncatedEgf,
    rhs: &TruncatedEgf,
) -> Result<bool, EgfError> {
    Ok(cross_multiplied_mismatch(num, den, rhs)?.is_none())
}

/// Like [`verify_cross_multiplied`] but reports the first failing order and
/// both sides there.
pub fn cross_multiplied_mismatch(
    num: &TruncatedEgf,
    den: &TruncatedEgf,
    rhs: &TruncatedEgf,
) -> Result<Option<(usize, MultiPoly, MultiPoly)>, EgfError> {
    num.check_order(den)?;
    let lhs = rhs.mul(den)?;
    Ok(lhs
        .first_difference(num)?
        .map(|n| (n, lhs.coeffs[n].clone(), num.coeffs[n].clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{c, v, Var};

    #[test]
    fn from_family_constant_one() {
        let e = TruncatedEgf::from_family(2, |_| MultiPoly::one());
        assert_eq!(e, TruncatedEgf::exp_linear(&MultiPoly::one(), 2));
    }

    #[test]
    fn exp_linear_examples() {
        let z = TruncatedEgf::exp_linear(&MultiPoly::zero(), 3);
        assert_eq!(z, TruncatedEgf::constant(MultiPoly::one(), 3));
        let ys = &v(Var::Y) + &v(Var::S);
        let e = TruncatedEgf::exp_linear(&ys, 2);
        assert_eq!(e.coeff(2), &ys.pow(2));
        let qx = &(&c(1) + &v(Var::Q)) * &v(Var::X);
        assert_eq!(TruncatedEgf::exp_linear(&qx, 2).coeff(1), &qx);
    }

    #[test]
    fn product_of_exponentials() {
        let ex = TruncatedEgf::exp_linear(&v(Var::X), 5);
        let ey = TruncatedEgf::exp_linear(&v(Var::Y), 5);
        let exy = TruncatedEgf::exp_linear(&(&v(Var::X) + &v(Var::Y)), 5);
        assert_eq!(ex.mul(&ey).unwrap(), exy);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = TruncatedEgf::exp_linear(&v(Var::X), 3);
        let b = TruncatedEgf::exp_linear(&v(Var::X), 4);
        assert_eq!(a.mul(&b), Err(EgfError::OrderMismatch(3, 4)));
        assert!(verify_cross_multiplied(&a, &b, &a).is_err());
    }

    #[test]
    fn cross_multiplication_of_geometric_like_series() {
        // e^{xz} * e^{-xz} = 1
        let n = 6;
        let ex = TruncatedEgf::exp_linear(&v(Var::X), n);
        let emx = TruncatedEgf::exp_linear(&-v(Var::X), n);
        let one = TruncatedEgf::constant(MultiPoly::one(), n);
        assert!(verify_cross_multiplied(&one, &ex, &emx).unwrap());
        assert!(!verify_cross_multiplied(&one, &ex, &ex).unwrap());
    }

    #[test]
    fn rescale_and_clear() {
        let ex = TruncatedEgf::exp_linear(&v(Var::X), 4);
        // e^{x (2z)} = e^{(2x) z}
        assert_eq!(ex.rescale(&c(2)), TruncatedEgf::exp_linear(&v(Var::X).scale_int(2), 4));
        // x -> 1/(1+x), cleared by (1+x)^n, gives 1 in every slot.
        let one_x = &c(1) + &v(Var::X);
        let cleared = ex.substitute_cleared(Var::X, &c(1), &one_x, |n| n as u32).unwrap();
        assert!(cleared.coeffs().iter().all(|p| *p == MultiPoly::one()));
        assert!(ex.substitute_cleared(Var::X, &c(1), &one_x, |_| 0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn exp_linear_is_a_homomorphism(a in -4i64..5, b in -4i64..5, order in 0usize..7) {
            let pa = &v(Var::X).scale_int(a) + &c(b);
            let pb = &v(Var::Y).scale_int(b) - &c(a);
            let lhs = TruncatedEgf::exp_linear(&pa, order).mul(&TruncatedEgf::exp_linear(&pb, order)).unwrap();
            proptest::prop_assert_eq!(lhs, TruncatedEgf::exp_linear(&(&pa + &pb), order));
        }

        #[test]
        fn series_product_commutes_and_associates(seed in 0u64..500) {
            let order = 4;
            let mk = |k: u64| TruncatedEgf::from_family(order, |n| {
                let a = ((seed + k * 7 + n as u64 * 3) % 5) as i64 - 2;
                &v(Var::X).scale_int(a) + &c((k as i64 + n as i64) % 3)
            });
            let (a, b, d) = (mk(1), mk(2), mk(3));
            proptest::prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            proptest::prop_assert_eq!(
                a.mul(&b).unwrap().mul(&d).unwrap(),
                a.mul(&b.mul(&d).unwrap()).unwrap()
            );
        }
    }
}
