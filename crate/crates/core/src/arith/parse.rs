//! Polynomial text grammar.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*' factor) | ('/' uint))*
//! factor  := ['-'] primary ['^' uint]
//! primary := uint | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1..xn`; `x, y, z, w` alias the first four and `t`
//! aliases `x1` in one variable.

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Rational;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str, nvars: usize) -> Result<MultiPoly> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, nvars };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let den = self.uint()?;
                if den.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc.scale(&Rational::new(1.into(), den));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            if self.peek() == Some(b'-') {
                return Err(Error::NegativeExponent { pos: self.pos });
            }
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a nonnegative integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                Ok(MultiPoly::constant(self.nvars, Rational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let idx = self.resolve(name)?;
                Ok(MultiPoly::var(self.nvars, idx))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }

    fn resolve(&self, name: &str) -> Result<usize> {
        let alias = match name {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            "w" => Some(3),
            "t" if self.nvars == 1 => Some(0),
            _ => None,
        };
        let idx = match alias {
            Some(i) if self.nvars <= 4 => Some(i),
            Some(_) => None,
            None => name
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(|i| i - 1),
        };
        match idx {
            Some(i) if i < self.nvars => Ok(i),
            _ => Err(Error::UnknownVariable(name.to_string())),
        }
    }
}

/// Number of variables a text mentions, by the highest index it uses.
pub fn infer_nvars(text: &str) -> usize {
    let mut n = 1;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_alphabetic() && (i == 0 || !bytes[i - 1].is_ascii_alphanumeric()) {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let name = &text[start..i];
            let k = match name {
                "x" | "t" => 1,
                "y" => 2,
                "z" => 3,
                "w" => 4,
                _ => name.strip_prefix('x').and_then(|d| d.parse().ok()).unwrap_or(1),
            };
            n = n.max(k);
        } else {
            i += 1;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};

    #[test]
    fn reads_terms() {
        let p = parse_polynomial("x^2+y^3", 2).unwrap();
        assert_eq!(p.coeff(&[2, 0]), int(1));
        assert_eq!(p.coeff(&[0, 3]), int(1));
        assert_eq!(p.len(), 2);
        let q = parse_polynomial("3/2*x*y", 2).unwrap();
        assert_eq!(q.coeff(&[1, 1]), rat(3, 2));
        assert_eq!(q.len(), 1);
        assert_eq!(parse_polynomial("(x^2-2)/3", 1).unwrap().coeff(&[0]), rat(-2, 3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_polynomial("x^-1", 1), Err(Error::NegativeExponent { .. })));
        assert!(matches!(parse_polynomial("x+q", 2), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_polynomial("x+", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("z", 2), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_polynomial("x/0", 1), Err(Error::Syntax { .. })));
    }

    #[test]
    fn aliases_and_parentheses() {
        let p = parse_polynomial("(x1 - 1)*(x1 + 1)", 1).unwrap();
        assert_eq!(p, parse_polynomial("t^2-1", 1).unwrap());
        assert_eq!(p.to_string(), "x^2-1");
        assert_eq!(parse_polynomial("-x*-y", 2).unwrap(), parse_polynomial("x*y", 2).unwrap());
    }

    #[test]
    fn infers_variable_count() {
        assert_eq!(infer_nvars("x^2+y^3"), 2);
        assert_eq!(infer_nvars("x^2+y^2+z^2"), 3);
        assert_eq!(infer_nvars("t^3-3*t"), 1);
        assert_eq!(infer_nvars("x1*x5"), 5);
    }
}
