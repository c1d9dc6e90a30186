//! Deterministic infix serialization of scalars, plus the matching parser.
//!
//! Grammar: integers, parameter names, `+ - * / ^`, parentheses. Printing is
//! canonical (terms in descending graded order), and `parse(print(s)) == s`
//! for every canonical scalar.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Mono, ParamId, Poly, Scalar, ScalarError};

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator().is_one() {
            write_poly(f, self.numerator())
        } else {
            f.write_str("(")?;
            write_poly(f, self.numerator())?;
            f.write_str(")/(")?;
            write_poly(f, self.denominator())?;
            f.write_str(")")
        }
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (mono, coeff) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let neg = coeff.is_negative();
        if first {
            if neg {
                f.write_str("-")?;
            }
            first = false;
        } else if neg {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        write_term(f, mono, &coeff.abs())?;
    }
    Ok(())
}

fn write_term(f: &mut fmt::Formatter<'_>, mono: &Mono, coeff: &BigInt) -> fmt::Result {
    let mut wrote = false;
    if !coeff.is_one() || mono.is_unit() {
        write!(f, "{coeff}")?;
        wrote = true;
    }
    for id in ParamId::all() {
        let e = mono.exp(id);
        if e == 0 {
            continue;
        }
        if wrote {
            f.write_str("*")?;
        }
        f.write_str(id.name())?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
        wrote = true;
    }
    Ok(())
}

/// Parse the infix grammar back into a canonical scalar.
pub fn parse_scalar(input: &str) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(ScalarError::Parse(format!(
            "trailing input at offset {}",
            p.pos
        )));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
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

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e32 =
                i32::try_from(e).map_err(|_| ScalarError::Parse("exponent out of range".into()))?;
            return base.pow(e32);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(ScalarError::Parse("expected ')'".into()));
                }
                Ok(inner)
            }
            Some('-') => {
                // Negation binds looser than '^': -x^2 is -(x^2).
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                ParamId::by_name(&name)
                    .map(Scalar::param)
                    .ok_or_else(|| ScalarError::Parse(format!("unknown parameter '{name}'")))
            }
            other => Err(ScalarError::Parse(format!(
                "unexpected input {other:?} at offset {}",
                self.pos
            ))),
        }
    }

    fn integer(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ScalarError::Parse("expected integer".into()));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<i64>()
            .map_err(|e| ScalarError::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParamId;

    fn sp(id: ParamId) -> Scalar {
        Scalar::param(id)
    }

    #[test]
    fn print_forms() {
        let k = sp(ParamId::U).sub(&sp(ParamId::V));
        let s = sp(ParamId::P).div(&Scalar::int(2).mul(&k)).unwrap();
        assert_eq!(s.to_string(), "(p)/(2*u - 2*v)");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::rational(-1, 2).to_string(), "(-1)/(2)");
        let sq = sp(ParamId::HBAR).mul(&sp(ParamId::HBAR)).neg();
        assert_eq!(sq.to_string(), "-hbar^2");
    }

    #[test]
    fn roundtrip_handpicked() {
        let cases = [
            Scalar::zero(),
            Scalar::int(42),
            Scalar::rational(-7, 8),
            sp(ParamId::P)
                .div(&sp(ParamId::U).sub(&sp(ParamId::V)))
                .unwrap(),
            sp(ParamId::HBAR)
                .mul(&sp(ParamId::HBAR))
                .add(&Scalar::rational(1, 3))
                .div(&sp(ParamId::T).pow(3).unwrap())
                .unwrap(),
        ];
        for s in cases {
            let back = parse_scalar(&s.to_string()).unwrap();
            assert_eq!(back, s, "roundtrip failed for {s}");
        }
    }

    #[test]
    fn rejects_unknown_symbols() {
        assert!(parse_scalar("q + 1").is_err());
        assert!(parse_scalar("1 +").is_err());
    }
}
