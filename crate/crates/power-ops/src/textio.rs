//! Canonical text form for polynomials and fractions, plus the expression
//! grammar used by golden records and the command line.
//!
//! Rendering rules: terms run from the highest monomial to the lowest in the
//! degree-lexicographic order, coefficients print as integers or `p/q`,
//! factors join with `*`, exponents with `^` (negative exponents allowed).
//! A fraction prints as `(num) / (den)`. Every string this module emits
//! parses back to the value it came from.

use std::fmt;

use num::{BigInt, BigRational, One, Signed};

use crate::error::{Error, Result};
use crate::poly::ratfunc::RatPoly;
use crate::poly::{Monomial, MultiPoly, Var, ALL_VARS};

/// Body of one term, sign excluded.
fn term_body(m: &Monomial, abs: &BigRational) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !abs.is_one() || m.is_unit() {
        factors.push(abs.to_string());
    }
    for v in ALL_VARS {
        let e = m.exp(v);
        if e != 0 {
            if e == 1 {
                factors.push(v.name().to_string());
            } else {
                factors.push(format!("{}^{}", v.name(), e));
            }
        }
    }
    factors.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            let body = term_body(m, &abs);
            if idx == 0 {
                if neg {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
            } else if neg {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{}", p),
            None => write!(f, "({}) / ({})", self.num(), self.den()),
        }
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Render `coeff * var^k` for series output, with `k = 0` collapsing to the
/// bare coefficient. The sign of single-term coefficients migrates out so
/// the caller can join terms with ` + `/` - `.
pub fn series_term(coeff: &RatPoly, var: Var, k: i64) -> (bool, String) {
    let power = if k == 0 {
        String::new()
    } else if k == 1 {
        var.name().to_string()
    } else {
        format!("{}^{}", var.name(), k)
    };
    if let Some(p) = coeff.as_poly() {
        if p.num_terms() == 1 {
            let (m, c) = p.terms().next().unwrap();
            let body = term_body(m, &c.abs());
            let joined = if power.is_empty() {
                body
            } else if body == "1" {
                power
            } else {
                format!("{}*{}", body, power)
            };
            return (c.is_negative(), joined);
        }
        let body = format!("({})", p);
        let joined = if power.is_empty() {
            body
        } else {
            format!("{}*{}", body, power)
        };
        return (false, joined);
    }
    let body = format!("(({}) / ({}))", coeff.num(), coeff.den());
    let joined = if power.is_empty() {
        body
    } else {
        format!("{}*{}", body, power)
    };
    (false, joined)
}

/// Join (sign, body) pairs produced by [`series_term`].
pub fn join_terms(parts: &[(bool, String)]) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in parts.iter().enumerate() {
        if idx == 0 {
            if *neg {
                out.push('-');
            }
            out.push_str(body);
        } else {
            out.push_str(if *neg { " - " } else { " + " });
            out.push_str(body);
        }
    }
    out
}

/// Recursive-descent parser for the expression grammar:
///
/// ```text
/// expr  := term (('+' | '-') term)*
/// term  := unary (('*' | '/') unary)*
/// unary := '-' unary | power
/// power := atom ('^' exponent)?
/// atom  := integer | identifier | '(' expr ')'
/// ```
///
/// Exponents are (possibly negative, possibly parenthesized) integers.
/// Whitespace, including newlines, separates nothing and is skipped.
pub struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TextParser<'a> {
    pub fn new(src: &'a str) -> TextParser<'a> {
        TextParser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn parse_expr(&mut self) -> Result<RatPoly> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<RatPoly> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.parse_unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.div(&self.parse_unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<RatPoly> {
        if self.eat(b'-') {
            return Ok(self.parse_unary()?.neg());
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<RatPoly> {
        let base = self.parse_atom()?;
        if self.eat(b'^') {
            let e = self.parse_exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn parse_exponent(&mut self) -> Result<i32> {
        let parens = self.eat(b'(');
        let neg = self.eat(b'-');
        let n = self.parse_integer()?;
        if parens && !self.eat(b')') {
            return Err(self.err("expected ')' after exponent"));
        }
        let v: i32 = n
            .to_string()
            .parse()
            .map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn parse_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn parse_atom(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_integer()?;
                Ok(RatPoly::constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.parse_identifier();
                match Var::from_name(&name) {
                    Some(v) => Ok(RatPoly::var(v)),
                    None => Err(Error::UnknownIdentifier(name)),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string()
    }

    pub fn expect_end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(())
    }
}

/// Parse a full expression into a reduced fraction.
pub fn parse_ratpoly(src: &str) -> Result<RatPoly> {
    let mut p = TextParser::new(src);
    let e = p.parse_expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parse an expression that must reduce to a polynomial.
pub fn parse_poly(src: &str) -> Result<MultiPoly> {
    let r = parse_ratpoly(src)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::Parse {
            pos: 0,
            msg: format!("expected a polynomial, found denominator {}", r.den()),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_simple() {
        let cases = [
            "a^2*b - 16*b^2",
            "3*a*b^3*u^7 + b^4*u^8",
            "-a + 1/2",
            "(a^3*b + 7*a*b^2) / (a^2 - 16*b)",
            "c^-1",
            "h^3 - 27*h^2 + 183*h - 180 + 186*h^-1 + 1674*h^-2",
        ];
        for src in cases {
            let v = parse_ratpoly(src).unwrap();
            let text = v.to_string();
            let v2 = parse_ratpoly(&text).unwrap();
            assert_eq!(v, v2, "case {}", src);
        }
    }

    #[test]
    fn paper_layout_parses() {
        // grouped layout with an outer prefactor, as printed formulas use
        let src = "-(1/(a*(a^2 - 16*b))) * (b^3*d^7 + 2*a*b^2*d^6 - 18)";
        let v = parse_ratpoly(src).unwrap();
        let d = v.den();
        assert!(d.contains_var(Var::A));
        // canonical text reparses to the same value
        assert_eq!(parse_ratpoly(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn i_arithmetic_in_grammar() {
        let v = parse_ratpoly("(1 + i)*(1 - i)").unwrap();
        assert_eq!(v, RatPoly::int(2));
        let w = parse_ratpoly("i^2").unwrap();
        assert_eq!(w, RatPoly::int(-1));
    }

    #[test]
    fn errors_carry_position() {
        assert!(parse_ratpoly("a + ").is_err());
        assert!(parse_ratpoly("zz + 1").is_err());
        assert!(parse_ratpoly("(a").is_err());
        assert!(parse_ratpoly("1/0").is_err());
    }

    #[test]
    fn exponent_forms() {
        assert_eq!(
            parse_ratpoly("h^-2").unwrap(),
            parse_ratpoly("h^(-2)").unwrap()
        );
        assert_eq!(
            parse_ratpoly("(a + b)^2").unwrap(),
            parse_ratpoly("a^2 + 2*a*b + b^2").unwrap()
        );
    }
}
