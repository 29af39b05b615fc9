//! Coefficient extraction in gamma-type bases.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactalg::{bind, c, rat, v, MultiPoly, PolyError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error("not in the span of the basis: remainder {remainder} at h-degree {i}")]
    NotInSpan { i: usize, remainder: MultiPoly },
    #[error("coefficient at ({i}, {j}) is not divisible by {divisor}")]
    NotDivisible { i: usize, j: usize, divisor: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which basis [`expand_gamma_basis`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaStyle {
    /// `sum_i (s+y)^i sum_j 2^j c_{i,j} (xy)^j (x+y)^(n-i-2j)`.
    A,
    /// `sum_i (s+qt)^i (1+q)^(n-i) sum_j c_{i,j} (xy)^j (x+y)^(n-i-2j)`.
    B,
}

/// Writes a homogeneous symmetric `Q(x, y)` of degree `m` (coefficients may
/// involve other variables) as `sum_j c_j (xy)^j (x+y)^(m-2j)`.
/// Returns `None` when it is not of that shape.
fn peel_symmetric(q: &MultiPoly, m: usize) -> Option<Vec<MultiPoly>> {
    let xy = &v(Var::X) * &v(Var::Y);
    let x_plus_y = &v(Var::X) + &v(Var::Y);
    let mut rest = q.clone();
    let mut out = Vec::new();
    for j in 0..=m / 2 {
        // Only the j-th basis element reaches x^(m-j) y^j once lower ones are gone.
        let cj = rest.coefficient_in(Var::X, (m - j) as u32).coefficient_in(Var::Y, j as u32);
        if !cj.is_zero() {
            rest -= &(&(&cj * &xy.pow(j as u32)) * &x_plus_y.pow((m - 2 * j) as u32));
        }
        out.push(cj);
    }
    rest.is_zero().then_some(out)
}

/// Coefficients `c_{i,j}` of `poly` in the basis chosen by `style`, with
/// zero entries omitted.
///
/// The first variable of the basis (`s + y` or `s + qt`) is isolated by
/// substituting `s -> h - y` (resp. `h - qt`) and slicing by degree in `h`.
/// Divisions by `2^j` and `(1+q)^(n-i)` must be exact.
pub fn expand_gamma_basis(
    poly: &MultiPoly,
    n: usize,
    style: GammaStyle,
) -> Result<BTreeMap<(usize, usize), MultiPoly>, SpanError> {
    let h = v(Var::LOWER_H);
    let shift = match style {
        GammaStyle::A => &h - &v(Var::Y),
        GammaStyle::B => &h - &(&v(Var::Q) * &v(Var::T)),
    };
    let shifted = poly.substitute(&bind([(Var::S, shift)]));
    let deg = shifted.degree_in(Var::LOWER_H).unwrap_or(0) as usize;
    let mut out = BTreeMap::new();
    for i in 0..=deg {
        let slice = shifted.coefficient_in(Var::LOWER_H, i as u32);
        if slice.is_zero() {
            continue;
        }
        if i > n {
            return Err(SpanError::NotInSpan { i, remainder: slice });
        }
        let m = n - i;
        let cs = peel_symmetric(&slice, m).ok_or(SpanError::NotInSpan { i, remainder: slice.clone() })?;
        for (j, cj) in cs.into_iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let value = match style {
                GammaStyle::A => {
                    let val = cj.scale(&rat(1, 1 << j));
                    if !val.is_integral() {
                        return Err(SpanError::NotDivisible { i, j, divisor: format!("2^{j}") });
                    }
                    val
                }
                GammaStyle::B => cj
                    .div_linear_pow(Var::Q, &rat(-1, 1), m as u32)
                    .map_err(|_| SpanError::NotDivisible { i, j, divisor: format!("(1+q)^{m}") })?,
            };
            out.insert((i, j), value);
        }
    }
    Ok(out)
}

/// Writes `poly` (a polynomial in `var`, coefficients in other variables) as
/// `sum_k g_k var^k (1+var)^(m-2k)`.
pub fn gamma_vector(poly: &MultiPoly, var: Var, m: usize) -> Result<Vec<MultiPoly>, SpanError> {
    let x = v(var);
    let one_x = &c(1) + &x;
    let mut rest = poly.clone();
    let mut out = Vec::new();
    for k in 0..=m / 2 {
        let gk = rest.coefficient_in(var, k as u32);
        if !gk.is_zero() {
            rest -= &(&(&gk * &x.pow(k as u32)) * &one_x.pow((m - 2 * k) as u32));
        }
        out.push(gk);
    }
    if rest.is_zero() {
        Ok(out)
    } else {
        Err(SpanError::NotInSpan { i: 0, remainder: rest })
    }
}

/// Splits `poly` of degree at most `n` in `var` as `f+ + f-` with
/// `var^n f+(1/var) = f+` and `var^(n-1) f-(1/var) = f-`, so
/// `f- = (var^n poly(1/var) - poly) / (var - 1)`.
pub fn f_pm_split(poly: &MultiPoly, var: Var, n: usize) -> Result<(MultiPoly, MultiPoly), PolyError> {
    let rev = poly.reciprocal_in(var, n as u32)?;
    let minus = (&rev - poly).div_linear(var, &rat(1, 1))?;
    let plus = poly - &minus;
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn a_style_small() {
        // (s+y)^2 + 2xy
        let e = expand_gamma_basis(&p("(s+y)^2 + 2 x y"), 2, GammaStyle::A).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[&(2, 0)], c(1));
        assert_eq!(e[&(0, 1)], c(1));
    }

    #[test]
    fn b_style_small() {
        let poly = p("p^2 (s + q t)^2 + p (1+q)^2 x y");
        let e = expand_gamma_basis(&poly, 2, GammaStyle::B).unwrap();
        assert_eq!(e[&(2, 0)], p("p^2"));
        assert_eq!(e[&(0, 1)], p("p"));
    }

    #[test]
    fn rejects_outside_span() {
        assert!(expand_gamma_basis(&p("x^2"), 2, GammaStyle::A).is_err());
        assert!(expand_gamma_basis(&p("x y"), 2, GammaStyle::A).is_err());
        assert!(matches!(
            expand_gamma_basis(&p("x y"), 2, GammaStyle::B),
            Err(SpanError::NotDivisible { .. })
        ));
    }

    #[test]
    fn univariate_gamma() {
        let g = gamma_vector(&p("1 + 11x + 11x^2 + x^3"), Var::X, 3).unwrap();
        assert_eq!(g, vec![c(1), c(8)]);
        assert_eq!(gamma_vector(&p("1 + x^2"), Var::X, 2).unwrap(), vec![c(1), c(-2)]);
        assert!(gamma_vector(&p("x^3"), Var::X, 2).is_err());
    }

    #[test]
    fn split_small() {
        let poly = p("q^2 + (1 + 2q + q^2) x");
        let (fp, fm) = f_pm_split(&poly, Var::X, 2).unwrap();
        assert_eq!(fp, p("(1 + 2q) x"));
        assert_eq!(fm, p("q^2 (1 + x)"));
        let d3 = p("q^3 + (1 + 6q + 9q^2 + 4q^3) x + (1 + 3q + 3q^2 + q^3) x^2");
        let (fp, fm) = f_pm_split(&d3, Var::X, 3).unwrap();
        assert_eq!(fp, p("(1 + 3q + 3q^2) (x + x^2)"));
        assert_eq!(fm, p("q^3 + (3q + 6q^2 + 4q^3) x + q^3 x^2"));
        let (fp, fm) = f_pm_split(&c(1), Var::X, 0).unwrap();
        assert_eq!((fp, fm), (c(1), c(0)));
    }
}
