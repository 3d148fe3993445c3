//! Exact scalar domains.
//!
//! Every scalar lives in one of four commutative integral domains: the
//! integers, the rationals, the integers with a finite set of primes
//! inverted, or integer-coefficient polynomials in a fixed, ordered list of
//! indeterminates. Elements carry a shared handle to their [`RingSpec`] and
//! are always kept in a unique canonical form, so structural equality is
//! ring equality.

mod localized;
mod parse;
mod poly;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use localized::Localized;
pub use poly::{Monomial, Polynomial};

/// The scalar domain of a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// `Z[1/p1, ..., 1/pk]`; primes sorted and distinct.
    Localized(Vec<u64>),
    /// `Z[v1, ..., vk]` with lexicographic monomial order on the listed variables.
    Polynomials(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    SpecMismatch { left: String, right: String },
    DivisionByZero,
    NotDivisible { dividend: String, divisor: String },
    NotInRing { value: String, ring: String },
    Parse { position: usize, message: String },
    UnknownIndeterminate { name: String, position: usize },
    InvalidSpec(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::SpecMismatch { left, right } => {
                write!(f, "ring mismatch: {} vs {}", left, right)
            }
            RingError::DivisionByZero => write!(f, "division by zero"),
            RingError::NotDivisible { dividend, divisor } => {
                write!(f, "{} is not divisible by {}", dividend, divisor)
            }
            RingError::NotInRing { value, ring } => write!(f, "{} is not an element of {}", value, ring),
            RingError::Parse { position, message } => {
                write!(f, "syntax error at position {}: {}", position, message)
            }
            RingError::UnknownIndeterminate { name, position } => {
                write!(f, "unknown indeterminate '{}' at position {}", name, position)
            }
            RingError::InvalidSpec(s) => write!(f, "invalid ring spec: {}", s),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn localized(primes: &[u64]) -> Result<RingSpec, RingError> {
        let mut ps: Vec<u64> = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        if let Some(bad) = ps.iter().find(|p| !is_prime(**p)) {
            return Err(RingError::InvalidSpec(alloc::format!("{} is not prime", bad)));
        }
        Ok(RingSpec::Localized(ps))
    }

    pub fn polynomials<S: AsRef<str>>(names: &[S]) -> Result<RingSpec, RingError> {
        let mut seen: Vec<&str> = Vec::new();
        for n in names {
            let n = n.as_ref();
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(RingError::InvalidSpec(alloc::format!("bad indeterminate name '{}'", n)));
            }
            if seen.contains(&n) {
                return Err(RingError::InvalidSpec(alloc::format!("duplicate indeterminate '{}'", n)));
            }
            seen.push(n);
        }
        Ok(RingSpec::Polynomials(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    /// Parses `Z`, `Q`, `Z[1/3]`, `Z[1/2,1/5]` or `Z[x11,x12,...]`.
    pub fn parse(text: &str) -> Result<RingSpec, RingError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "Z" => return Ok(RingSpec::Integers),
            "Q" => return Ok(RingSpec::Rationals),
            _ => {}
        }
        let inner = t
            .strip_prefix("Z[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| RingError::InvalidSpec(text.to_string()))?;
        if inner.is_empty() {
            return Err(RingError::InvalidSpec(text.to_string()));
        }
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.iter().all(|p| p.starts_with("1/")) {
            let mut primes = Vec::new();
            for p in parts {
                let v: u64 = p[2..].parse().map_err(|_| RingError::InvalidSpec(text.to_string()))?;
                primes.push(v);
            }
            RingSpec::localized(&primes)
        } else {
            RingSpec::polynomials(&parts)
        }
    }

    /// The generic-matrix ring `Z[x11, ..., xnn]` (row-major order).
    pub fn generic_matrix(n: usize) -> RingSpec {
        let mut names = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                names.push(generic_name(n, i, j));
            }
        }
        RingSpec::Polynomials(names)
    }

    /// Whether elements of this ring embed in the rationals.
    pub fn embeds_in_rationals(&self) -> bool {
        !matches!(self, RingSpec::Polynomials(_))
    }
}

/// Name of the `(i, j)` indeterminate of the generic `n x n` matrix.
pub fn generic_name(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        alloc::format!("x{}{}", i, j)
    } else {
        alloc::format!("x{}_{}", i, j)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Localized(ps) => {
                write!(f, "Z[")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "1/{}", p)?;
                }
                write!(f, "]")
            }
            RingSpec::Polynomials(vs) => write!(f, "Z[{}]", vs.join(",")),
        }
    }
}

/// Shared handle to a ring; cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingSpec>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Int(BigInt),
    Rat(BigRational),
    Loc(Localized),
    Poly(Polynomial),
}

/// An element of a [`Ring`], in canonical form.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.value == other.value
    }
}
impl Eq for RingElement {}

impl Ring {
    pub fn new(spec: RingSpec) -> Ring {
        Ring(Arc::new(spec))
    }

    pub fn integers() -> Ring {
        Ring::new(RingSpec::Integers)
    }

    pub fn rationals() -> Ring {
        Ring::new(RingSpec::Rationals)
    }

    pub fn parse_spec(text: &str) -> Result<Ring, RingError> {
        RingSpec::parse(text).map(Ring::new)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    fn wrap(&self, value: Value) -> RingElement {
        RingElement { ring: self.clone(), value }
    }

    pub fn zero(&self) -> RingElement {
        self.from_bigint(BigInt::zero())
    }

    pub fn one(&self) -> RingElement {
        self.from_bigint(BigInt::one())
    }

    pub fn from_int(&self, v: i64) -> RingElement {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(&self, v: BigInt) -> RingElement {
        let value = match self.spec() {
            RingSpec::Integers => Value::Int(v),
            RingSpec::Rationals => Value::Rat(BigRational::from_integer(v)),
            RingSpec::Localized(ps) => Value::Loc(Localized::from_integer(v, ps.len())),
            RingSpec::Polynomials(vs) => Value::Poly(Polynomial::constant(v, vs.len())),
        };
        self.wrap(value)
    }

    /// Embeds a rational number, failing when it is not in the ring.
    pub fn from_rational(&self, q: &BigRational) -> Result<RingElement, RingError> {
        let not_in = || RingError::NotInRing { value: q.to_string(), ring: self.to_string() };
        match self.spec() {
            RingSpec::Rationals => Ok(self.wrap(Value::Rat(q.clone()))),
            RingSpec::Localized(ps) => {
                Localized::from_rational(q, ps).map(|l| self.wrap(Value::Loc(l))).ok_or_else(not_in)
            }
            _ => {
                if q.is_integer() {
                    Ok(self.from_bigint(q.to_integer()))
                } else {
                    Err(not_in())
                }
            }
        }
    }

    /// The indeterminate with the given name.
    pub fn var(&self, name: &str) -> Result<RingElement, RingError> {
        match self.spec() {
            RingSpec::Polynomials(vs) => match vs.iter().position(|v| v == name) {
                Some(i) => Ok(self.wrap(Value::Poly(Polynomial::variable(i, vs.len())))),
                None => Err(RingError::UnknownIndeterminate { name: name.to_string(), position: 0 }),
            },
            _ => Err(RingError::UnknownIndeterminate { name: name.to_string(), position: 0 }),
        }
    }

    pub fn from_polynomial(&self, p: Polynomial) -> Result<RingElement, RingError> {
        match self.spec() {
            RingSpec::Polynomials(vs) if vs.len() == p.nvars() => Ok(self.wrap(Value::Poly(p))),
            _ => Err(RingError::SpecMismatch {
                left: self.to_string(),
                right: alloc::format!("polynomial in {} variables", p.nvars()),
            }),
        }
    }

    /// Parses a scalar in the exact-ring grammar.
    pub fn parse(&self, text: &str) -> Result<RingElement, RingError> {
        parse::parse_scalar(self, text)
    }
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn check(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::SpecMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    fn primes(&self) -> &[u64] {
        match self.ring.spec() {
            RingSpec::Localized(ps) => ps,
            _ => &[],
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(v) => v.is_zero(),
            Value::Rat(v) => v.is_zero(),
            Value::Loc(v) => v.is_zero(),
            Value::Poly(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Loc(a), Value::Loc(b)) => Value::Loc(a.add(b, self.primes())),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.add(b)),
            _ => unreachable!("payload does not match ring"),
        };
        Ok(self.ring.wrap(value))
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Loc(a), Value::Loc(b)) => Value::Loc(a.mul(b, self.primes())),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.mul(b)),
            _ => unreachable!("payload does not match ring"),
        };
        Ok(self.ring.wrap(value))
    }

    /// Returns `q` with `q * divisor == self`, or an error if no such `q`
    /// exists in the ring.
    pub fn exact_div(&self, divisor: &RingElement) -> Result<RingElement, RingError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let not_div = || RingError::NotDivisible { dividend: self.to_string(), divisor: divisor.to_string() };
        let value = match (&self.value, &divisor.value) {
            (Value::Int(a), Value::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if !r.is_zero() {
                    return Err(not_div());
                }
                Value::Int(q)
            }
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a / b),
            (Value::Loc(a), Value::Loc(b)) => Value::Loc(a.exact_div(b, self.primes()).ok_or_else(not_div)?),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.exact_div(b).ok_or_else(not_div)?),
            _ => unreachable!("payload does not match ring"),
        };
        Ok(self.ring.wrap(value))
    }

    pub fn is_unit(&self) -> bool {
        match &self.value {
            Value::Int(v) => v.abs().is_one(),
            Value::Rat(v) => !v.is_zero(),
            Value::Loc(v) => v.is_unit(self.primes()),
            Value::Poly(v) => v.as_constant().is_some_and(|c| c.abs().is_one()),
        }
    }

    pub fn pow(&self, exp: u64) -> RingElement {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The element as a rational number, when the ring embeds in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Int(v) => Some(BigRational::from_integer(v.clone())),
            Value::Rat(v) => Some(v.clone()),
            Value::Loc(v) => Some(v.to_rational(self.primes())),
            Value::Poly(v) => v.as_constant().map(|c| BigRational::from_integer(c.clone())),
        }
    }

    /// The element as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match &self.value {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Evaluates a polynomial at integer values of its indeterminates;
    /// constants of the other rings evaluate to themselves.
    pub fn evaluate(&self, point: &[BigInt]) -> Option<BigRational> {
        match &self.value {
            Value::Poly(p) => Some(BigRational::from_integer(p.evaluate(point))),
            _ => self.to_rational(),
        }
    }
}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    /// Panics when the operands live in different rings; use
    /// [`RingElement::try_add`] to handle that case.
    fn add(self, rhs: &'a RingElement) -> RingElement {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{}", e))
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &'a RingElement) -> RingElement {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{}", e))
    }
}

impl<'a> Mul<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &'a RingElement) -> RingElement {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{}", e))
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let value = match &self.value {
            Value::Int(v) => Value::Int(-v),
            Value::Rat(v) => Value::Rat(-v),
            Value::Loc(v) => Value::Loc(v.neg()),
            Value::Poly(v) => Value::Poly(v.neg()),
        };
        self.ring.wrap(value)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.value, self.ring.spec()) {
            (Value::Int(v), _) => write!(f, "{}", v),
            (Value::Rat(v), _) => write!(f, "{}", v),
            (Value::Loc(v), RingSpec::Localized(ps)) => v.fmt_with(f, ps),
            (Value::Poly(v), RingSpec::Polynomials(names)) => v.fmt_with(f, names),
            _ => unreachable!("payload does not match ring"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_ring() -> Ring {
        Ring::new(RingSpec::polynomials(&["a", "b", "c", "d"]).unwrap())
    }

    #[test]
    fn integer_product() {
        let z = Ring::integers();
        assert_eq!(&z.from_int(2) * &z.from_int(3), z.from_int(6));
    }

    #[test]
    fn localized_thirds_sum_to_one() {
        let r = Ring::parse_spec("Z[1/3]").unwrap();
        let third = r.parse("1/3").unwrap();
        let two_thirds = r.parse("2/3").unwrap();
        assert_eq!(&third + &two_thirds, r.one());
    }

    #[test]
    fn determinant_squared_matches_schoolbook() {
        let r = poly_ring();
        let det = r.parse("a*d - b*c").unwrap();
        let sq = &det * &det;
        assert_eq!(sq, r.parse("a^2*d^2 - 2*a*b*c*d + b^2*c^2").unwrap());
    }

    #[test]
    fn exact_division_examples() {
        let z = Ring::integers();
        assert_eq!(z.from_int(12).exact_div(&z.from_int(4)).unwrap(), z.from_int(3));
        assert!(matches!(z.from_int(12).exact_div(&z.from_int(5)), Err(RingError::NotDivisible { .. })));
        assert_eq!(z.from_int(1).exact_div(&z.zero()), Err(RingError::DivisionByZero));

        let r = poly_ring();
        let det = r.parse("a*d - b*c").unwrap();
        let sq = r.parse("a^2*d^2 - 2*a*b*c*d + b^2*c^2").unwrap();
        let q = sq.exact_div(&det).unwrap();
        assert_eq!(&q * &det, sq);
        assert_eq!(q, det);
        assert!(det.exact_div(&r.parse("a").unwrap()).is_err());

        let l = Ring::parse_spec("Z[1/3]").unwrap();
        assert_eq!(l.one().exact_div(&l.from_int(9)).unwrap(), l.parse("1/9").unwrap());
        assert!(l.one().exact_div(&l.from_int(2)).is_err());
    }

    #[test]
    fn units() {
        let z = Ring::integers();
        assert!(!z.from_int(3).is_unit());
        assert!(z.from_int(-1).is_unit());
        let l = Ring::parse_spec("Z[1/3]").unwrap();
        assert!(l.from_int(9).is_unit());
        assert!(l.parse("-1/27").unwrap().is_unit());
        assert!(!l.from_int(6).is_unit());
        assert!(!l.zero().is_unit());
        let r = poly_ring();
        assert!(!r.parse("a*d - b*c").unwrap().is_unit());
        assert!(r.parse("-1").unwrap().is_unit());
        assert!(Ring::rationals().parse("2/7").unwrap().is_unit());
    }

    #[test]
    fn spec_mismatch_is_reported() {
        let a = Ring::integers().one();
        let b = Ring::rationals().one();
        assert!(matches!(a.try_add(&b), Err(RingError::SpecMismatch { .. })));
        // equal specs behind distinct handles are the same ring
        assert_eq!(Ring::integers().one(), a);
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["Z", "Q", "Z[1/3]", "Z[1/2,1/3]", "Z[x11,x12,x21,x22]"] {
            assert_eq!(RingSpec::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(RingSpec::parse("Z[1/3, 1/2]").unwrap(), RingSpec::Localized(alloc::vec![2, 3]));
        assert!(RingSpec::parse("Z[1/4]").is_err());
        assert!(RingSpec::parse("R").is_err());
        assert!(RingSpec::parse("Z[x,x]").is_err());
        assert_eq!(RingSpec::generic_matrix(2).to_string(), "Z[x11,x12,x21,x22]");
    }

    #[test]
    fn powers() {
        let z = Ring::integers();
        assert_eq!(z.from_int(-2).pow(5), z.from_int(-32));
        assert_eq!(z.from_int(7).pow(0), z.one());
    }
}
