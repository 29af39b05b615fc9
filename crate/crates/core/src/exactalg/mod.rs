//! Exact sparse multivariate polynomials over the rationals.

mod parse;
mod poly;
mod var;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

pub use parse::parse_poly;
pub use poly::{bind, Bindings, Monomial, MultiPoly};
pub use var::{Var, NVARS};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("degree {degree} in {var} exceeds reciprocal bound {bound}")]
    ReciprocalDegree { var: Var, degree: u32, bound: u32 },
    #[error("division by {divisor} leaves remainder {remainder}")]
    NotDivisible { divisor: String, remainder: String },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Shorthand for the polynomial of a single registry variable.
pub fn v(var: Var) -> MultiPoly {
    MultiPoly::var(var)
}

/// Shorthand for an integer constant polynomial.
pub fn c(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(factorial(6), BigInt::from(720));
    }

    #[test]
    fn rationals_are_reduced() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }
}
