//! Text form of polynomials: `3/4*x^2*y - (t + 1)*y + 2`.
//!
//! Grammar: sums of products of powers; atoms are integers, `x`, `y`, the
//! field generator `t`, or parenthesized expressions. Juxtaposition
//! multiplies, and division is allowed by nonzero constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{BiPoly, Monomial};
use crate::error::{Error, Result};
use crate::numfield::{FieldMode, FieldRef, Rational};

pub fn parse_poly(src: &str, field: &FieldRef) -> Result<BiPoly> {
    let mut p = Parser::new(src, field);
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses `(f, g)`.
pub fn parse_pair(src: &str, field: &FieldRef) -> Result<(BiPoly, BiPoly)> {
    let mut p = Parser::new(src, field);
    p.expect('(')?;
    let f = p.expr()?;
    p.expect(',')?;
    let g = p.expr()?;
    p.expect(')')?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok((f, g))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a FieldRef,
}

impl<'a> Parser<'a> {
    fn new(src: &str, field: &'a FieldRef) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, field }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { column: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c)))
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    let c = match d.leading_term() {
                        Some((m, c)) if m == Monomial::ONE => c.clone(),
                        Some(_) => {
                            return Err(Error::Parse { column: at + 1, message: "division by a non-constant".into() })
                        }
                        None => return Err(Error::Parse { column: at + 1, message: "division by zero".into() }),
                    };
                    acc = acc.scale(&c.inv()?);
                }
                Some(c) if c.is_ascii_digit() || c.is_ascii_alphabetic() || c == '(' => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let n = self.integer()?;
            let e: u32 = n
                .try_into()
                .ok()
                .filter(|e| *e <= 1_000_000)
                .ok_or(Error::Parse { column: at + 1, message: "exponent out of range".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let f = self.field;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(BiPoly::constant(f.rational(Rational::from_integer(n))))
            }
            Some('x') => {
                self.pos += 1;
                Ok(BiPoly::x(f))
            }
            Some('y') => {
                self.pos += 1;
                Ok(BiPoly::y(f))
            }
            Some('t') => {
                if matches!(f.mode(), FieldMode::Rationals) {
                    return Err(self.error("the generator t is not available over the rationals"));
                }
                self.pos += 1;
                Ok(BiPoly::constant(f.generator()))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut parts = Vec::new();
    for (v, e) in [('x', m.x), ('y', m.y)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{}^{}", v, e)),
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for BiPoly {
    /// Highest term first; the output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let is_one = *m == Monomial::ONE;
            match c.as_rational() {
                Some(q) => {
                    let sep = match (i, q.is_negative()) {
                        (0, true) => "-",
                        (0, false) => "",
                        (_, true) => " - ",
                        (_, false) => " + ",
                    };
                    write!(f, "{}", sep)?;
                    let a: Rational = q.abs();
                    if is_one {
                        write!(f, "{}", a)?;
                        continue;
                    }
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                }
                None => {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}", c)?;
                    if is_one {
                        continue;
                    }
                    write!(f, "*")?;
                }
            }
            write_monomial(f, m)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat, Field};
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints() {
        let q = Field::rationals();
        let f = parse_poly("3/4*x^2*y - y + 2", &q).unwrap();
        assert_eq!(f.to_string(), "3/4*x^2*y - y + 2");
        assert_eq!(parse_poly("2x(y+1)", &q).unwrap().to_string(), "2*x*y + 2*x");
        assert_eq!(parse_poly("-(x - 1)^2", &q).unwrap().to_string(), "-x^2 + 2*x - 1");
        assert_eq!(parse_poly("x/2", &q).unwrap().to_string(), "1/2*x");
        assert_eq!(parse_poly("0*x", &q).unwrap().to_string(), "0");
        let (a, b) = parse_pair(" ( x + y^2 , y ) ", &q).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("y^2 + x".into(), "y".into()));
    }

    #[test]
    fn parse_errors_carry_columns() {
        let q = Field::rationals();
        assert!(matches!(parse_poly("x + t", &q), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_poly("x +", &q), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_poly("x / y", &q), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_poly("x ? 1", &q), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_pair("(x, y", &q), Err(Error::Parse { .. })));
    }

    #[test]
    fn prints_extension_coefficients() {
        let k = Field::cyclotomic(4).unwrap();
        let f = parse_poly("t*x - (t + 1/2)*y - 3", &k).unwrap();
        assert_eq!(f.to_string(), "(t)*x + (-t - 1/2)*y - 3");
        assert_eq!(parse_poly(&f.to_string(), &k).unwrap(), f);
        assert_eq!(parse_poly("t^2", &k).unwrap().to_string(), "-1");
    }

    fn arb_poly(field: FieldRef) -> impl Strategy<Value = BiPoly> {
        let deg = field.degree();
        proptest::collection::vec(
            (0u32..5, 0u32..5, proptest::collection::vec((-9i64..9, 1i64..5), deg)),
            0..7,
        )
        .prop_map(move |ts| {
            BiPoly::from_terms(
                &field,
                ts.into_iter().map(|(a, b, cs)| {
                    let c = crate::numfield::FieldElement::from_coeffs(
                        &field,
                        cs.into_iter().map(|(n, d)| rat(n, d)).collect(),
                    );
                    (Monomial::new(a, b), c)
                }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn round_trip_rationals(f in arb_poly(Field::rationals())) {
            let q = Field::rationals();
            prop_assert_eq!(parse_poly(&f.to_string(), &q).unwrap(), f);
        }

        #[test]
        fn round_trip_cyclotomic(f in arb_poly(Field::cyclotomic(5).unwrap())) {
            let k = f.field().clone();
            let s = f.to_string();
            let back = parse_poly(&s, &k).unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, f);
        }
    }
}
