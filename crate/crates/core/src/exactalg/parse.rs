//! Reader for the canonical polynomial syntax.
//!
//! Accepts everything [`MultiPoly`]'s `Display` produces, plus parentheses,
//! implicit multiplication between adjacent factors and division by nonzero
//! constants: `p*J*(s + q*t)`, `(1+q)^2 u`, `1/2*x`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::MultiPoly;
use super::var::Var;
use super::{PolyError, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Token::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c => match Var::from_char(c) {
                Some(v) => Token::Ident(v),
                None => {
                    return Err(PolyError::Parse {
                        pos: i,
                        msg: format!("unexpected character '{c}'"),
                    })
                }
            },
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::from_integer(1.into()) / c)),
                        _ => return self.err("division only by a nonzero constant"),
                    }
                }
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Token::Num(n)) => {
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.bump() {
            Some(Token::Num(n)) => Ok(MultiPoly::int(n)),
            Some(Token::Ident(v)) => Ok(MultiPoly::var(v)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.err("expected ')'")
                    }
                }
            }
            _ => {
                self.pos -= 1;
                self.err("expected a number, variable or '('")
            }
        }
    }
}

/// Parses a polynomial in canonical syntax.
pub fn parse_poly(src: &str) -> Result<MultiPoly, PolyError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(PolyError::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, len: src.chars().count() };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl std::str::FromStr for MultiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_rendering() {
        let src = "p^2*q^2*t^2 + 2*p^2*q*s*t + p^2*s^2 + p*q^2*x*y + 2*p*q*x*y + p*x*y";
        let p = parse_poly(src).unwrap();
        assert_eq!(p.to_string(), src);
    }

    #[test]
    fn parses_factored_forms() {
        let b2 = parse_poly("p^2(s+q*t)^2 + p(1+q)^2 x y").unwrap();
        assert_eq!(
            b2.to_string(),
            "p^2*q^2*t^2 + 2*p^2*q*s*t + p^2*s^2 + p*q^2*x*y + 2*p*q*x*y + p*x*y"
        );
        assert_eq!(parse_poly("1/2*x - -y").unwrap().to_string(), "1/2*x + y");
        assert_eq!(parse_poly("0").unwrap(), MultiPoly::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("x + ").is_err());
        assert!(parse_poly("x / y").is_err());
        assert!(parse_poly("z").is_err());
        assert!(parse_poly("(x + y").is_err());
        assert!(parse_poly("").is_err());
    }
}
