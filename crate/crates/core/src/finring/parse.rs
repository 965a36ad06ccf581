//! Text syntax for polynomials with integer coefficients.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! Integers are mapped into the base ring through ℤ → k. Identifiers must be
//! declared variables.

use crate::error::{Error, Result};

use super::poly::Polynomial;
use super::ring::FiniteRing;

pub const MAX_EXPONENT: u32 = 64;
const MAX_DEPTH: usize = 64;
const MAX_INPUT: usize = 4096;

/// Parses `text` as a polynomial in `variables` over `base`.
pub fn parse_polynomial(text: &str, variables: &[String], base: &FiniteRing) -> Result<Polynomial> {
    if text.len() > MAX_INPUT {
        return Err(Error::Parse {
            pos: MAX_INPUT,
            msg: format!("input longer than {MAX_INPUT} bytes"),
        });
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
        variables,
        base,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
    variables: &'a [String],
    base: &'a FiniteRing,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
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

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, self.base)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t, self.base)?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.unary()?;
            acc = acc.mul(&f, self.base)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.enter()?;
                let inner = self.unary()?;
                self.depth -= 1;
                Ok(inner.neg(self.base))
            }
            Some(b'+') => {
                self.pos += 1;
                self.enter()?;
                let inner = self.unary();
                self.depth -= 1;
                inner
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let exp = self.small_integer()?;
            if exp > MAX_EXPONENT as u64 {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("exponent exceeds {MAX_EXPONENT}"),
                });
            }
            return atom.pow(exp as u32, self.base);
        }
        Ok(atom)
    }

    fn small_integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = value.saturating_mul(10).saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let base = self.base;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                // reduce digit by digit so arbitrarily long literals stay in range
                let ten = base.from_integer(10);
                let mut value = base.zero();
                while let Some(&c) = self.src.get(self.pos) {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    value = base.add(base.mul(value, ten), base.from_integer((c - b'0') as i128));
                    self.pos += 1;
                }
                Ok(Polynomial::constant(self.variables, value, base))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while let Some(&c) = self.src.get(self.pos) {
                    if !(c.is_ascii_alphanumeric() || c == b'_') {
                        break;
                    }
                    self.pos += 1;
                }
                let name =
                    std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match self.variables.iter().position(|v| v == name) {
                    Some(i) => Polynomial::variable(self.variables, i, base),
                    None => Err(Error::Definition(format!("undeclared variable `{name}`"))),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::RingHom;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_evaluates() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let id = RingHom::identity(&z6);
        let v = vars(&["x", "y"]);
        let p = parse_polynomial("x*y - 1", &v, &z6).unwrap();
        assert_eq!(p.eval(&[5, 5], &id).unwrap(), 0);
        let q = parse_polynomial("-(x+2)^2 + 3*y", &v, &z6).unwrap();
        for (x, y) in [(0, 0), (1, 2), (5, 4)] {
            let expect = (6 * 10 - (x + 2) * (x + 2) + 3 * y) % 6;
            assert_eq!(q.eval(&[x, y], &id).unwrap(), expect);
        }
    }

    #[test]
    fn coefficients_reduce_in_base() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let v = vars(&["t"]);
        let p = parse_polynomial("4*t + 123456789012345678901234567890", &v, &z4).unwrap();
        assert_eq!(p, Polynomial::constant(&v, 2, &z4));
    }

    #[test]
    fn rejects_bad_input() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let v = vars(&["t"]);
        assert!(matches!(
            parse_polynomial("t +", &v, &z4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("s", &v, &z4),
            Err(Error::Definition(_))
        ));
        assert!(matches!(
            parse_polynomial("t^65", &v, &z4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("(t", &v, &z4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("t t", &v, &z4),
            Err(Error::Parse { .. })
        ));
        let deep = "(".repeat(200) + "t" + &")".repeat(200);
        assert!(matches!(
            parse_polynomial(&deep, &v, &z4),
            Err(Error::Parse { .. })
        ));
        let minus = "-".repeat(500) + "t";
        assert!(parse_polynomial(&minus, &v, &z4).is_err());
    }

    #[test]
    fn empty_variable_list_constants() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let p = parse_polynomial("3*4 - 1", &[], &z6).unwrap();
        assert_eq!(p, Polynomial::constant(&[], 5, &z6));
    }
}
