//! Formal derivatives defined by context-free substitution rules.
//!
//! A [`Grammar`] maps variables to polynomials. Its derivative `D` is the
//! derivation of the polynomial ring with `D(v) = rule(v)` (and `D(v) = 0`
//! for variables without a rule), so
//! `D(w) = sum_v dw/dv * rule(v)`, which is linear and Leibniz on products.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::egfseries::TruncatedEgf;
use crate::exactalg::{parse_poly, Bindings, MultiPoly, PolyError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("rule {index}: {msg}")]
    Rule { index: usize, msg: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Grammar {
    rules: BTreeMap<Var, MultiPoly>,
}

pub const BUILTIN_GRAMMARS: [&str; 9] = ["G", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "dumont"];

impl Grammar {
    pub fn new<I: IntoIterator<Item = (Var, MultiPoly)>>(rules: I) -> Self {
        Self { rules: rules.into_iter().collect() }
    }

    /// Reads `var -> polynomial; var -> polynomial; ...`.
    pub fn parse(text: &str) -> Result<Self, GrammarError> {
        let mut rules = BTreeMap::new();
        for (index, rule) in text.split(';').map(str::trim).filter(|r| !r.is_empty()).enumerate() {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| GrammarError::Rule { index, msg: "missing '->'".into() })?;
            let lhs = lhs.trim();
            let mut chars = lhs.chars();
            let var = match (chars.next().and_then(Var::from_char), chars.next()) {
                (Some(v), None) => v,
                _ => return Err(GrammarError::Rule { index, msg: format!("'{lhs}' is not a variable") }),
            };
            if rules.insert(var, parse_poly(rhs)?).is_some() {
                return Err(GrammarError::Rule { index, msg: format!("second rule for {var}") });
            }
        }
        Ok(Self { rules })
    }

    pub fn builtin(name: &str) -> Option<Self> {
        let text = match name {
            "G" => "L -> L*y; M -> M*s; s -> x*y; x -> x*y; y -> x*y",
            "G1" => "I -> I*t; t -> 2*u; u -> u*v; v -> 2*u",
            "G2" => "J -> p*J*(s + q*t); s -> (1+q)*x*y; t -> (1+q)*x*y; x -> (1+q)*x*y; y -> (1+q)*x*y",
            "G3" => "J -> p*J*h; h -> (1+q)^2*u; u -> (1+q)*u*v; v -> 2*(1+q)*u",
            "G4" => "a -> q*a*t; t -> 2*u; u -> u*v; v -> 2*u",
            "G5" => "J -> J*h; h -> u; u -> u*v; v -> 2*u",
            "G6" => "J -> J*(s + q*y); s -> (1+q)*x*y; x -> (1+q)*x*y; y -> (1+q)*x*y",
            "G7" => "J -> J*s + q*H; s -> (1+q)*u; H -> H*s + q*H*v + J*u; u -> (1+q)*u*v; v -> 2*(1+q)*u",
            "dumont" => "x -> x*y; y -> x*y",
            _ => return None,
        };
        Some(Self::parse(text).expect("built-in grammars parse"))
    }

    pub fn rule(&self, v: Var) -> Option<&MultiPoly> {
        self.rules.get(&v)
    }

    pub fn rules(&self) -> impl Iterator<Item = (Var, &MultiPoly)> {
        self.rules.iter().map(|(&v, p)| (v, p))
    }

    /// Applies `bindings` to every right-hand side, e.g. to fix `q = 1`.
    pub fn specialize(&self, bindings: &Bindings) -> Self {
        Self { rules: self.rules.iter().map(|(&v, p)| (v, p.substitute(bindings))).collect() }
    }

    /// Renames a variable throughout, both as a rule head and inside rules.
    pub fn rename(&self, from: Var, to: Var) -> Self {
        let b: Bindings = [(from, MultiPoly::var(to))].into_iter().collect();
        Self {
            rules: self
                .rules
                .iter()
                .map(|(&v, p)| (if v == from { to } else { v }, p.substitute(&b)))
                .collect(),
        }
    }

    pub fn derive(&self, w: &MultiPoly) -> MultiPoly {
        let vars = w.variables();
        let mut out = MultiPoly::zero();
        for (v, rhs) in &self.rules {
            if vars.contains(v) {
                out += &(&w.partial_derivative(*v) * rhs);
            }
        }
        out
    }

    pub fn derive_n(&self, w: &MultiPoly, n: usize) -> MultiPoly {
        (0..n).fold(w.clone(), |acc, _| self.derive(&acc))
    }

    pub fn derivation(&self, seed: &MultiPoly, n: usize) -> Derivation {
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(seed.clone());
        for k in 0..n {
            let next = self.derive(&powers[k]);
            powers.push(next);
        }
        Derivation { seed: seed.clone(), powers }
    }

    /// `Gen(w; z) = sum_n D^n(w) z^n / n!`, truncated at `order`.
    pub fn gen_series(&self, w: &MultiPoly, order: usize) -> TruncatedEgf {
        TruncatedEgf::from_coeffs(self.derivation(w, order).powers)
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.rules.iter().map(|(v, p)| format!("{v} -> {p}")).collect();
        write!(f, "{}", body.join("; "))
    }
}

impl fmt::Debug for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// The iterates `D^0(seed), .., D^n(seed)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub seed: MultiPoly,
    pub powers: Vec<MultiPoly>,
}

/// First `(n, substituted h-side, g-side)` where the change of grammar
/// fails, if any.
pub fn change_of_grammar_mismatch(
    g: &Grammar,
    h: &Grammar,
    bindings: &Bindings,
    seeds: &[(MultiPoly, MultiPoly)],
    n_max: usize,
) -> Option<(usize, MultiPoly, MultiPoly)> {
    for (seed_g, seed_h) in seeds {
        let dg = g.derivation(seed_g, n_max);
        let dh = h.derivation(seed_h, n_max);
        for n in 0..=n_max {
            let lhs = dh.powers[n].substitute(bindings);
            if lhs != dg.powers[n] {
                return Some((n, lhs, dg.powers[n].clone()));
            }
        }
    }
    None
}

/// `substitute(D_h^n(seed_h), bindings) = D_g^n(seed_g)` for every seed pair
/// and every `n <= n_max`.
pub fn check_change_of_grammar(
    g: &Grammar,
    h: &Grammar,
    bindings: &Bindings,
    seeds: &[(MultiPoly, MultiPoly)],
    n_max: usize,
) -> bool {
    change_of_grammar_mismatch(g, h, bindings, seeds, n_max).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{bind, c, v};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn derive_lm() {
        let g = Grammar::builtin("G").unwrap();
        assert_eq!(g.derive(&p("L M")), p("L M (s + y)"));
        assert_eq!(g.derive(&c(1)), MultiPoly::zero());
        assert_eq!(g.derive_n(&p("L M"), 2), p("L M ((s+y)^2 + 2 x y)"));
    }

    #[test]
    fn g3_second_derivative() {
        let g3 = Grammar::builtin("G3").unwrap();
        assert_eq!(g3.derive_n(&v(Var::J), 2), p("J (p^2 h^2 + p (1+q)^2 u)"));
        assert_eq!(g3.derive_n(&v(Var::J), 3), p("J (p^3 h^3 + 3 p^2 (1+q)^2 h u + p (1+q)^3 u v)"));
    }

    #[test]
    fn g1_and_g7_small_iterates() {
        let g1 = Grammar::builtin("G1").unwrap();
        assert_eq!(g1.derive_n(&v(Var::I), 3), p("I (t^3 + 6 t u + 2 u v)"));
        let g7 = Grammar::builtin("G7").unwrap();
        assert_eq!(g7.derive_n(&v(Var::J), 2), p("J (s^2 + (1+2q) u) + H (2 q s + q^2 v)"));
    }

    #[test]
    fn parse_errors() {
        assert!(Grammar::parse("x -> x*y; x -> y").is_err());
        assert!(Grammar::parse("xy -> x").is_err());
        assert!(Grammar::parse("x x*y").is_err());
        assert!(Grammar::parse("x -> z").is_err());
        let g = Grammar::parse("x -> x*y; y -> x*y;").unwrap();
        assert_eq!(g, Grammar::builtin("dumont").unwrap());
        assert_eq!(Grammar::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn gen_series_shifts_under_derivative() {
        let g = Grammar::builtin("G2").unwrap();
        let w = p("s + q t");
        let gen = g.gen_series(&w, 5);
        assert_eq!(gen.derivative(), g.gen_series(&g.derive(&w), 4));
    }

    #[test]
    fn g_to_g1() {
        let g = Grammar::builtin("G").unwrap();
        let g1 = Grammar::builtin("G1").unwrap();
        let b = bind([
            (Var::U, p("x y")),
            (Var::V, p("x + y")),
            (Var::T, p("s + y")),
            (Var::I, p("L M")),
        ]);
        assert!(check_change_of_grammar(&g, &g1, &b, &[(p("L M"), v(Var::I))], 5));
        // A wrong binding is caught.
        let bad = bind([(Var::U, p("x y")), (Var::V, p("x + y")), (Var::T, p("s")), (Var::I, p("L M"))]);
        assert!(!check_change_of_grammar(&g, &g1, &bad, &[(p("L M"), v(Var::I))], 2));
    }

    #[test]
    fn g4_specializations() {
        let g4 = Grammar::builtin("G4").unwrap();
        let g1 = Grammar::builtin("G1").unwrap();
        assert_eq!(g4.specialize(&bind([(Var::Q, c(1))])).rename(Var::A, Var::I), g1);
    }

    proptest::proptest! {
        #[test]
        fn derivative_is_linear_and_leibniz(a in -3i64..4, b in -3i64..4, e in 0u32..3) {
            let g = Grammar::builtin("G2").unwrap();
            let f1 = &p("x y + s").scale_int(a) + &p("J t").pow(e);
            let f2 = &p("q x + y^2").scale_int(b) + &c(a - b);
            proptest::prop_assert_eq!(g.derive(&(&f1 + &f2)), &g.derive(&f1) + &g.derive(&f2));
            proptest::prop_assert_eq!(
                g.derive(&(&f1 * &f2)),
                &(&g.derive(&f1) * &f2) + &(&f1 * &g.derive(&f2))
            );
        }
    }
}
