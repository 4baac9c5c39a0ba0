//! Element expressions: integers, named variables, `+ - * ^`, parentheses.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | name | '(' expr ')'
//! ```
//!
//! A negative exponent is allowed on a monomial with coefficient ±1 and
//! rewrites Laurent variables through their inverse partners.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use super::{IntPolynomial, Monomial, Ring};

/// Largest exponent accepted on a base with more than one term.
const MAX_EXPANSION_EXPONENT: u32 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at offset {position}")]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }

    /// The source line with a caret under the offending offset.
    pub fn caret(&self, src: &str) -> String {
        let col = src[..self.position.min(src.len())].chars().count();
        format!("{src}\n{}^", " ".repeat(col))
    }
}

pub fn parse_element(src: &str, ring: &Ring) -> Result<IntPolynomial, ParseError> {
    let mut p = Parser { src, pos: 0, ring };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(ParseError::new(p.pos, format!("unexpected '{}'", p.peek().unwrap_or(' '))));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expected(&mut self, what: &str) -> ParseError {
        self.skip_ws();
        match self.peek() {
            Some(c) => ParseError::new(self.pos, format!("expected {what}, found '{c}'")),
            None => ParseError::new(self.pos, format!("expected {what}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<IntPolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<IntPolynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let rhs = self.unary()?;
            acc = self.ring.canonical(&acc.mul(&rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPolynomial, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn digits(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, &self.src[start..self.pos]))
    }

    fn power(&mut self) -> Result<IntPolynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Some((at, text)) = self.digits() else {
            return Err(self.expected("an exponent"));
        };
        let e: u32 = text.parse().map_err(|_| ParseError::new(at, "exponent overflow"))?;
        if negative {
            return self.invert(&base, at).and_then(|inv| self.monomial_power(&inv, e, at));
        }
        if base.len() == 1 {
            return self.monomial_power(&base, e, at);
        }
        if e > MAX_EXPANSION_EXPONENT {
            return Err(ParseError::new(at, format!("exponent {e} too large to expand")));
        }
        let mut out = IntPolynomial::one();
        for _ in 0..e {
            out = self.ring.canonical(&out.mul(&base));
        }
        Ok(out)
    }

    fn monomial_power(&self, base: &IntPolynomial, e: u32, at: usize) -> Result<IntPolynomial, ParseError> {
        let (m, c) = base.terms().next().map(|(m, c)| (m.clone(), c.clone())).expect("one term");
        let mut pairs = Vec::new();
        for &(v, f) in m.exponents() {
            let p = match self.ring.unit_order_of(v) {
                Some(o) => ((u64::from(f) * u64::from(e)) % o) as u32,
                None => f.checked_mul(e).ok_or_else(|| ParseError::new(at, "exponent overflow"))?,
            };
            pairs.push((v, p));
        }
        Ok(IntPolynomial::term(c.pow(e), Monomial::from_exponents(pairs)))
    }

    fn invert(&self, base: &IntPolynomial, at: usize) -> Result<IntPolynomial, ParseError> {
        let single = (base.len() == 1).then(|| base.terms().next().expect("one term"));
        let Some((m, c)) = single.filter(|(_, c)| c.abs().is_one()) else {
            return Err(ParseError::new(at, "negative exponents need a monomial with coefficient 1 or -1"));
        };
        match self.ring.inverse_monomial(m) {
            Some(inv) => Ok(IntPolynomial::term(c.clone(), inv)),
            None => Err(ParseError::new(at, "negative exponent in a ring without inverses")),
        }
    }

    fn atom(&mut self) -> Result<IntPolynomial, ParseError> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.expected("')'"));
            }
            return Ok(inner);
        }
        if let Some((_, text)) = self.digits() {
            let c: BigInt = text.parse().expect("digits");
            return Ok(IntPolynomial::constant(c));
        }
        let start = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                self.pos += 1;
            }
            let name = &self.src[start..self.pos];
            return match self.ring.lookup(name) {
                Some(v) => Ok(IntPolynomial::from_monomial(Monomial::var(v, 1))),
                None => Err(ParseError::new(start, format!("unknown variable '{name}'"))),
            };
        }
        Err(self.expected("a number, variable or '('"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_products() {
        let r = Ring::laurent(1);
        let f = parse_element("x1*(1-x1)^2", &r).unwrap();
        let x = |e| Monomial::var(0, e);
        let expected = IntPolynomial::from_terms([(x(1), 1.into()), (x(2), (-2).into()), (x(3), 1.into())]);
        assert_eq!(f, expected);
    }

    #[test]
    fn negative_exponent_uses_partner() {
        let r = Ring::laurent(1);
        assert_eq!(parse_element("x1^-2", &r).unwrap(), IntPolynomial::from_monomial(Monomial::var(r.y(0), 2)));
        assert_eq!(parse_element("(-x1)^-1", &r).unwrap(), IntPolynomial::term((-1).into(), Monomial::var(r.y(0), 1)));
        assert!(parse_element("(1+x1)^-1", &r).is_err());
        assert!(parse_element("x1^-1", &Ring::polynomial(1)).is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = Ring::laurent(1);
        let e = parse_element("(1+)", &r).unwrap_err();
        assert_eq!(e.position, 3);
        assert_eq!(e.caret("(1+)"), "(1+)\n   ^");
        assert_eq!(parse_element("x7+1", &r).unwrap_err().position, 0);
        assert!(parse_element("x7+1", &r).unwrap_err().message.contains("unknown variable"));
        assert_eq!(parse_element("2 x1", &r).unwrap_err().position, 2);
        assert!(parse_element("x1^99999999999", &r).unwrap_err().message.contains("overflow"));
        assert!(parse_element("", &r).is_err());
    }

    #[test]
    fn precedence() {
        let r = Ring::laurent(1);
        let a = parse_element("1 + 2*x1^2 - -3", &r).unwrap();
        let b = parse_element("4 + 2*(x1*x1)", &r).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_element("-x1^2", &r).unwrap(), parse_element("-(x1^2)", &r).unwrap());
    }

    #[test]
    fn unit_exponents_reduce() {
        let r = Ring::new(0, &[3]).unwrap();
        assert_eq!(parse_element("u1^7", &r).unwrap(), parse_element("u1", &r).unwrap());
        assert_eq!(parse_element("u1^-1", &r).unwrap(), parse_element("u1^2", &r).unwrap());
        assert_eq!(parse_element("u1*u1*u1", &r).unwrap(), IntPolynomial::one());
    }
}
