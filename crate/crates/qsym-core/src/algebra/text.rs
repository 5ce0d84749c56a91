//! Parser for the polynomial grammar:
//!
//! ```text
//! poly  := ['+'|'-'] term (('+'|'-') term)*
//! term  := [coeff '*'] word | coeff
//! coeff := int ['/' posint]
//! word  := var ('*' var)*
//! var   := 'u[' int ',' int ']'
//! ```
//!
//! Whitespace is insignificant everywhere.

use super::{AlgebraError, Coefficient, Monomial, Polynomial, Size, Variable};
use num::BigInt;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), AlgebraError> {
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected '{}'", b as char))),
        }
    }

    fn err(&self, msg: String) -> AlgebraError {
        AlgebraError::Syntax { pos: self.pos, msg }
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a digit".into()));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn small_integer(&mut self) -> Result<u16, AlgebraError> {
        let v = self.integer()?;
        u16::try_from(v).map_err(|_| self.err("index too large".into()))
    }

    fn variable(&mut self, n: Size) -> Result<Variable, AlgebraError> {
        self.eat(b'u')?;
        self.eat(b'[')?;
        let row = self.small_integer()?;
        self.eat(b',')?;
        let col = self.small_integer()?;
        self.eat(b']')?;
        Variable::new(row, col, n)
    }

    fn coefficient(&mut self) -> Result<Coefficient, AlgebraError> {
        let numer = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.integer()?;
            if denom == BigInt::from(0) {
                return Err(self.err("zero denominator".into()));
            }
            Ok(Coefficient::new(numer, denom))
        } else {
            Ok(Coefficient::from(numer))
        }
    }

    /// One term without its sign; the caller has consumed any '+'/'-'.
    fn term(&mut self, n: Size) -> Result<(Coefficient, Monomial), AlgebraError> {
        let mut coeff = Coefficient::from(BigInt::from(1));
        let mut have_coeff = false;
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                coeff = self.coefficient()?;
                have_coeff = true;
            }
            Some(b'u') => {}
            _ => return Err(self.err("expected a coefficient or a variable".into())),
        }
        let mut ranks = Vec::new();
        if have_coeff {
            // A following '*' continues into a word; otherwise the term is
            // the bare constant.
            if self.peek() == Some(b'*') {
                self.pos += 1;
                loop {
                    ranks.push(self.variable(n)?.rank(n));
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
        } else {
            loop {
                ranks.push(self.variable(n)?.rank(n));
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok((coeff, Monomial::from_ranks(ranks)))
    }
}

pub fn parse_polynomial(text: &str, n: Size) -> Result<Polynomial, AlgebraError> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut negate = false;
    match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            negate = true;
        }
        Some(b'+') => {
            cur.pos += 1;
        }
        _ => {}
    }
    loop {
        let (c, m) = cur.term(n)?;
        terms.push((if negate { -c } else { c }, m));
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negate = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negate = true;
            }
            _ => return Err(cur.err("expected '+', '-' or end of input".into())),
        }
    }
    Ok(Polynomial::from_terms(n, terms))
}
