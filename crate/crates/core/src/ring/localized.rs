use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `num / prod(p_i ^ exps[i])` over the ring's inverted primes.
///
/// Canonical form: whenever `exps[i] > 0`, `p_i` does not divide `num`;
/// zero has all exponents zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localized {
    num: BigInt,
    exps: Vec<u32>,
}

fn prime_power(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

impl Localized {
    pub(crate) fn from_integer(num: BigInt, nprimes: usize) -> Localized {
        Localized { num, exps: vec![0; nprimes] }
    }

    fn reduced(mut num: BigInt, mut exps: Vec<u32>, primes: &[u64]) -> Localized {
        if num.is_zero() {
            exps.iter_mut().for_each(|e| *e = 0);
            return Localized { num, exps };
        }
        for (i, &p) in primes.iter().enumerate() {
            let p = BigInt::from(p);
            while exps[i] > 0 {
                let (q, r) = num.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                num = q;
                exps[i] -= 1;
            }
        }
        Localized { num, exps }
    }

    pub(crate) fn from_rational(q: &BigRational, primes: &[u64]) -> Option<Localized> {
        let mut den = q.denom().clone();
        let mut exps = vec![0u32; primes.len()];
        for (i, &p) in primes.iter().enumerate() {
            let pb = BigInt::from(p);
            loop {
                let (qq, r) = den.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                den = qq;
                exps[i] += 1;
            }
        }
        if !den.is_one() {
            return None;
        }
        Some(Localized::reduced(q.numer().clone(), exps, primes))
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self, primes: &[u64]) -> BigInt {
        primes.iter().zip(&self.exps).fold(BigInt::one(), |acc, (&p, &e)| acc * prime_power(p, e))
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn to_rational(&self, primes: &[u64]) -> BigRational {
        BigRational::new(self.num.clone(), self.denominator(primes))
    }

    pub(crate) fn neg(&self) -> Localized {
        Localized { num: -&self.num, exps: self.exps.clone() }
    }

    pub(crate) fn add(&self, other: &Localized, primes: &[u64]) -> Localized {
        let mut exps = vec![0u32; primes.len()];
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        for (i, &p) in primes.iter().enumerate() {
            let e = self.exps[i].max(other.exps[i]);
            exps[i] = e;
            a *= prime_power(p, e - self.exps[i]);
            b *= prime_power(p, e - other.exps[i]);
        }
        Localized::reduced(a + b, exps, primes)
    }

    pub(crate) fn mul(&self, other: &Localized, primes: &[u64]) -> Localized {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Localized::reduced(&self.num * &other.num, exps, primes)
    }

    /// Splits `n = unit * rest` with `unit` a signed product of inverted
    /// primes (returned as exponents) and `rest` coprime to them.
    fn split_unit(n: &BigInt, primes: &[u64]) -> (Vec<u32>, BigInt) {
        let mut rest = n.clone();
        let mut exps = vec![0u32; primes.len()];
        if rest.is_zero() {
            return (exps, rest);
        }
        for (i, &p) in primes.iter().enumerate() {
            let pb = BigInt::from(p);
            loop {
                let (q, r) = rest.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                exps[i] += 1;
            }
        }
        (exps, rest)
    }

    pub(crate) fn exact_div(&self, other: &Localized, primes: &[u64]) -> Option<Localized> {
        // a/da divided by (u*w)/db = (a*db) / (da*u*w) with w coprime to the primes
        let (unit_exps, w) = Localized::split_unit(&other.num, primes);
        let (q, r) = self.num.div_rem(&w);
        if !r.is_zero() {
            return None;
        }
        let mut num = q;
        let mut exps = vec![0u32; primes.len()];
        for (i, &p) in primes.iter().enumerate() {
            // denominator exponent: self.exps + unit_exps - other.exps
            let up = self.exps[i] + unit_exps[i];
            let down = other.exps[i];
            if up >= down {
                exps[i] = up - down;
            } else {
                num *= prime_power(p, down - up);
            }
        }
        Some(Localized::reduced(num, exps, primes))
    }

    pub(crate) fn is_unit(&self, primes: &[u64]) -> bool {
        if self.num.is_zero() {
            return false;
        }
        let (_, rest) = Localized::split_unit(&self.num, primes);
        rest.abs().is_one()
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, primes: &[u64]) -> fmt::Result {
        let den = self.denominator(primes);
        if den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, den)
        }
    }
}
