//! Scalar grammar: a sum of signed terms `c*v1^e1*...*vk^ek`, where
//! coefficients are integers or fractions `p/q`, `1*` and `^1` may be
//! omitted, and whitespace is insignificant.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Ring, RingElement, RingError, RingSpec};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { chars: text.char_indices().collect(), pos: 0, text }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |c| c.0)
    }

    fn error(&self, message: &str) -> RingError {
        RingError::Parse { position: self.offset(), message: message.to_string() }
    }

    fn number(&mut self) -> Result<BigInt, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        s.parse::<BigInt>().map_err(|_| self.error("bad number"))
    }

    fn ident(&mut self) -> (usize, String) {
        self.skip_ws();
        let at = self.offset();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos].1;
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        (at, self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

pub(super) fn parse_scalar(ring: &Ring, text: &str) -> Result<RingElement, RingError> {
    let names: &[String] = match ring.spec() {
        RingSpec::Polynomials(vs) => vs,
        _ => &[],
    };
    let nvars = names.len();
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
    if cur.peek().is_none() {
        return Err(cur.error("empty scalar"));
    }
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            Some('+') if !first => cur.pos += 1,
            Some(c) if is_minus(c) => {
                negative = true;
                cur.pos += 1;
            }
            None => break,
            _ if first => {}
            _ => return Err(cur.error("expected '+' or '-'")),
        }
        first = false;
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one(nvars);
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let p = cur.number()?;
                    if cur.peek() == Some('/') {
                        cur.pos += 1;
                        let q = cur.number()?;
                        if q.is_zero() {
                            return Err(cur.error("zero denominator"));
                        }
                        coeff *= BigRational::new(p, q);
                    } else {
                        coeff *= BigRational::from_integer(p);
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (at, name) = cur.ident();
                    let idx = names
                        .iter()
                        .position(|n| *n == name)
                        .ok_or(RingError::UnknownIndeterminate { name, position: at })?;
                    let mut e = 1u32;
                    if cur.peek() == Some('^') {
                        cur.pos += 1;
                        let n = cur.number()?;
                        e = u32::try_from(&n).map_err(|_| cur.error("exponent too large"))?;
                    }
                    mono.0[idx] += e;
                }
                _ => return Err(cur.error("expected a number or an indeterminate")),
            }
            if cur.peek() == Some('*') {
                cur.pos += 1;
            } else {
                break;
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((mono, coeff));
    }

    let whole = || RingError::NotInRing { value: text.trim().to_string(), ring: ring.to_string() };
    if nvars > 0 {
        let mut ints = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if !c.is_integer() {
                return Err(whole());
            }
            ints.push((m, c.to_integer()));
        }
        return ring.from_polynomial(Polynomial::from_terms(nvars, ints));
    }
    let total = terms.into_iter().fold(BigRational::zero(), |acc, (_, c)| acc + c);
    ring.from_rational(&total).map_err(|_| whole())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn gl2() -> Ring {
        Ring::new(RingSpec::polynomials(&["x11", "x12", "x21", "x22"]).unwrap())
    }

    #[test]
    fn integer_literal() {
        let z = Ring::integers();
        assert_eq!(z.parse("-42").unwrap(), z.from_int(-42));
        assert_eq!(z.parse("  7 ").unwrap().to_string(), "7");
    }

    #[test]
    fn polynomial_literal() {
        let r = gl2();
        let p = r.parse("3*x11^2*x22 - 1").unwrap();
        let expected = &(&r.from_int(3) * &r.var("x11").unwrap().pow(2)) * &r.var("x22").unwrap();
        assert_eq!(p, &expected - &r.one());
        assert_eq!(p.to_string(), "3*x11^2*x22 - 1");
        assert_eq!(r.parse("x12*1*x21").unwrap().to_string(), "x12*x21");
        assert_eq!(r.parse("0").unwrap().to_string(), "0");
        assert_eq!(r.parse("x11 - x11").unwrap(), r.zero());
    }

    #[test]
    fn unknown_indeterminate() {
        let err = gl2().parse("x13").unwrap_err();
        assert_eq!(err, RingError::UnknownIndeterminate { name: "x13".to_string(), position: 0 });
        assert!(matches!(Ring::integers().parse("x"), Err(RingError::UnknownIndeterminate { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(Ring::integers().parse("3 +"), Err(RingError::Parse { position: 3, .. })));
        assert!(matches!(Ring::integers().parse(""), Err(RingError::Parse { .. })));
        assert!(matches!(Ring::integers().parse("1 2"), Err(RingError::Parse { position: 2, .. })));
        assert!(matches!(Ring::rationals().parse("1/0"), Err(RingError::Parse { .. })));
    }

    #[test]
    fn fractions_respect_the_ring() {
        assert!(matches!(Ring::integers().parse("1/2"), Err(RingError::NotInRing { .. })));
        assert_eq!(Ring::integers().parse("4/2").unwrap(), Ring::integers().from_int(2));
        let l = Ring::parse_spec("Z[1/3]").unwrap();
        assert!(l.parse("1/6").is_err());
        assert_eq!(l.parse("5/9").unwrap().to_string(), "5/9");
        assert_eq!(l.parse("6/9").unwrap().to_string(), "2/3");
        assert_eq!(Ring::rationals().parse("-6/4").unwrap().to_string(), "-3/2");
    }
}
