//! Recursive-descent parser for the textual polynomial syntax.
//!
//! Grammar ( `{}` = repetition, `[]` = optional ):
//!
//! ```text
//! expr   := [sign] term { sign term }
//! sign   := '+' | '-'
//! term   := factor { '*' factor }
//! factor := base [ '^' nonneg-integer ]
//! base   := rational | variable | '(' expr ')'
//! rational := integer [ '/' positive-integer ]
//! variable := 'x' positive-integer      (bounded by the ambient ring)
//! ```
//!
//! Whitespace is insignificant. Errors carry the byte offset of the offending
//! token. The printer in [`crate::poly`] emits this same syntax, and
//! `parse(print(p)) == p` holds for every polynomial (there is a property
//! test pinning that down).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::VarIndex;
use crate::poly::{Poly, RationalScalar};

/// Parse `text` as a polynomial in `x1..x{ambient}`.
pub fn parse_poly(text: &str, ambient: usize) -> Result<Poly> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        ambient,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty input"));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected character '{}'", p.peek_char()),
        ));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ambient: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.bytes.get(self.pos).map(|&b| b as char).unwrap_or(' ')
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    /// Consume `b` if it is next (after whitespace).
    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        // Optional leading sign.
        if self.eat(b'-') {
            negate = true;
        } else {
            let _ = self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            let sub = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                break;
            };
            let t = self.term()?;
            acc = if sub { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            if self.peek() == Some(b'-') {
                return Err(Error::parse(self.pos, "negative exponent"));
            }
            let at = self.pos;
            let e = self.integer_literal()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::parse(at, "exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                let idx = self.integer_literal().map_err(|_| {
                    Error::parse(at, "expected variable index after 'x'")
                })?;
                if idx == 0 || idx > self.ambient as u64 {
                    return Err(Error::parse(
                        at,
                        format!("variable x{idx} out of range: ring has {} variable(s)", self.ambient),
                    ));
                }
                Poly::var(self.ambient, VarIndex::new(idx as usize)?)
            }
            Some(b) if b.is_ascii_digit() => {
                let numer = self.integer_literal()?;
                let mut denom: u64 = 1;
                // A '/' here is part of a rational literal, never a general
                // division operator.
                if self.eat(b'/') {
                    let at = self.pos;
                    denom = self.integer_literal()?;
                    if denom == 0 {
                        return Err(Error::parse(at, "zero denominator"));
                    }
                }
                let c = RationalScalar::new(BigInt::from(numer), BigInt::from(denom));
                Ok(Poly::constant(self.ambient, c))
            }
            Some(_) => Err(Error::parse(
                self.pos,
                format!("unexpected character '{}'", self.peek_char()),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn integer_literal(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| Error::parse(start, "integer literal too large"))?;
            self.pos += 1;
        }
        if !any {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_usual_shapes() {
        assert_eq!(parse_poly("x1 + x2", 2).unwrap().to_string(), "x1 + x2");
        assert_eq!(parse_poly("-x1^2", 2).unwrap().to_string(), "-x1^2");
        assert_eq!(
            parse_poly("(x1 + x2)^2", 2).unwrap().to_string(),
            "x1^2 + 2*x1*x2 + x2^2"
        );
        assert_eq!(parse_poly("3/2", 1).unwrap().to_string(), "3/2");
        assert_eq!(
            parse_poly("2*x1*x2^3 - 1/2*x2", 2).unwrap().to_string(),
            "2*x1*x2^3 - 1/2*x2"
        );
        // Like terms collapse; cancellation to zero is fine.
        assert_eq!(parse_poly("x1 - x1", 1).unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_bad_syntax_with_positions() {
        let err = parse_poly("x1 + ", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 5, .. }), "{err}");
        let err = parse_poly("x3", 2).unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");
        let err = parse_poly("x1^-2", 2).unwrap_err();
        assert!(err.to_string().contains("negative exponent"), "{err}");
        let err = parse_poly("x1 ++ x2", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = parse_poly("1/0", 1).unwrap_err();
        assert!(err.to_string().contains("zero denominator"), "{err}");
        assert!(parse_poly("", 1).is_err());
        assert!(parse_poly("x", 1).is_err());
        assert!(parse_poly("x0", 1).is_err());
    }
}
