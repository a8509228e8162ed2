//! Text grammar for polynomials.
//!
//! ```text
//! poly     := [sign] term (sign term)*
//! term     := rational ['*' factor ('*' factor)*]
//!           | [rational ['*']] factor ('*' factor)*
//! factor   := 'x' index ['^' exponent]
//! rational := integer ['/' integer]
//! ```
//!
//! Whitespace is allowed between tokens. Variables are 1-indexed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Exponent, Polynomial};
use crate::error::{Error, Result};
use crate::rational::Rational;

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
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

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        // ASCII digits only
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| Error::Syntax {
            position: at,
            message: format!("{what} too large"),
        })
    }

    fn rational(&mut self) -> Result<Rational> {
        let p: BigInt = self.digits()?.parse().unwrap();
        if self.eat(b'/') {
            let at = self.pos;
            let q: BigInt = self.digits()?.parse().unwrap();
            if q.is_zero() {
                return Err(Error::Syntax {
                    position: at,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(p, q))
        } else {
            Ok(Rational::from_integer(p))
        }
    }

    fn factor(&mut self, entries: &mut [u32]) -> Result<()> {
        if !self.eat(b'x') {
            return self.err("expected variable x<index>");
        }
        let idx = self.small_int("variable index")? as usize;
        if idx == 0 || idx > entries.len() {
            return Err(Error::VariableIndex {
                index: idx,
                nvars: entries.len(),
            });
        }
        let power = if self.eat(b'^') {
            self.small_int("exponent")?
        } else {
            1
        };
        entries[idx - 1] += power;
        Ok(())
    }

    fn term(&mut self, nvars: usize) -> Result<(Exponent, Rational)> {
        let mut entries = vec![0u32; nvars];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        self.factor(&mut entries)?;
                    }
                    Some(b'x') => self.factor(&mut entries)?,
                    _ => return Ok((Exponent::new(entries), r)),
                }
                r
            }
            Some(b'x') => {
                self.factor(&mut entries)?;
                Rational::one()
            }
            Some(_) => return self.err("expected a term"),
            None => return self.err("unexpected end of input"),
        };
        while self.eat(b'*') {
            self.factor(&mut entries)?;
        }
        Ok((Exponent::new(entries), coeff))
    }
}

/// Parses `text` into a polynomial in `nvars` variables.
///
/// With `half_degree = None` the declared `d` is `ceil(deg/2)` (at least 1).
pub fn parse(text: &str, nvars: usize, half_degree: Option<u32>) -> Result<Polynomial> {
    let mut sc = Scanner {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negative = if sc.eat(b'-') {
        true
    } else {
        sc.eat(b'+');
        false
    };
    loop {
        let (alpha, c) = sc.term(nvars)?;
        terms.push((alpha, if negative { -c } else { c }));
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                sc.pos += 1;
                negative = true;
            }
            Some(_) => return sc.err("expected '+', '-' or end of input"),
        }
    }
    match half_degree {
        Some(d) => Polynomial::from_terms(nvars, d, terms),
        None => Polynomial::with_default_degree(nvars, terms),
    }
}
