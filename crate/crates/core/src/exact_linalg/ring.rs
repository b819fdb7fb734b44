//! Base coefficient rings: the integers, the rationals and prime fields,
//! each carrying the (trivial) involution used for dualization.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring tag. The involution is the identity on all three;
/// it is still routed through [`BaseRing::involute`] so that matrix
/// dualization has a single entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

/// An exact element of one of the base rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Fp(u64),
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl BaseRing {
    pub fn prime_field(p: u64) -> Result<BaseRing> {
        if is_prime_u64(p) {
            Ok(BaseRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            BaseRing::Integers => Scalar::Int(BigInt::zero()),
            BaseRing::Rationals => Scalar::Rat(BigRational::zero()),
            BaseRing::PrimeField(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            BaseRing::Integers => Scalar::Int(BigInt::one()),
            BaseRing::Rationals => Scalar::Rat(BigRational::one()),
            BaseRing::PrimeField(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            BaseRing::Integers => Scalar::Int(BigInt::from(v)),
            BaseRing::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            BaseRing::PrimeField(p) => {
                let m = v.rem_euclid(*p as i64);
                Scalar::Fp(m as u64)
            }
        }
    }

    fn pair<'a>(&self, a: &'a Scalar, b: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
        debug_assert!(self.contains(a) && self.contains(b), "scalar from wrong ring");
        (a, b)
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        matches!(
            (self, a),
            (BaseRing::Integers, Scalar::Int(_))
                | (BaseRing::Rationals, Scalar::Rat(_))
                | (BaseRing::PrimeField(_), Scalar::Fp(_))
        )
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self.pair(a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Fp(x), Scalar::Fp(y)) => {
                let p = self.prime();
                Scalar::Fp((x + y) % p)
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self.pair(a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(mulmod(*x, *y, self.prime())),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Int(x) => Scalar::Int(-x),
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Fp(x) => {
                let p = self.prime();
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    /// The ring involution. Identity on all instantiated rings; kept as a
    /// hook so conjugate-transposition is the single dualization primitive.
    pub fn involute(&self, a: &Scalar) -> Scalar {
        a.clone()
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_one(),
            Scalar::Rat(x) => x.is_one(),
            Scalar::Fp(x) => *x == 1,
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.abs().is_one(),
            Scalar::Rat(x) => !x.is_zero(),
            Scalar::Fp(x) => *x != 0,
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Int(x) => {
                if x.abs().is_one() {
                    Some(Scalar::Int(x.clone()))
                } else {
                    None
                }
            }
            Scalar::Rat(x) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            Scalar::Fp(x) => {
                if *x == 0 {
                    None
                } else {
                    let p = self.prime();
                    Some(Scalar::Fp(powmod(*x, p - 2, p)))
                }
            }
        }
    }

    /// Exact division a / b, when b divides a in the ring.
    pub fn exact_div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        match self.pair(a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => {
                if y.is_zero() {
                    return None;
                }
                let (q, r) = num_integer::Integer::div_rem(x, y);
                if r.is_zero() {
                    Some(Scalar::Int(q))
                } else {
                    None
                }
            }
            _ => self.inv(b).map(|bi| self.mul(a, &bi)),
        }
    }

    fn prime(&self) -> u64 {
        match self {
            BaseRing::PrimeField(p) => *p,
            _ => unreachable!("prime() on non prime field"),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, BaseRing::Integers)
    }

    /// Parse a decimal-string scalar ("12", "-3", "2/5" over the rationals).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::BadScalar(s.to_string());
        match self {
            BaseRing::Integers => {
                let v: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Scalar::Int(v))
            }
            BaseRing::Rationals => {
                if let Some((n, d)) = s.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let v: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(Scalar::Rat(BigRational::from_integer(v)))
                }
            }
            BaseRing::PrimeField(p) => {
                let v: i128 = s.parse().map_err(|_| bad())?;
                Ok(Scalar::Fp(v.rem_euclid(*p as i128) as u64))
            }
        }
    }

    /// Promote an integer scalar into this ring (used when moving matrices
    /// over Z into Q for field-side computations).
    pub fn promote_int(&self, x: &BigInt) -> Scalar {
        match self {
            BaseRing::Integers => Scalar::Int(x.clone()),
            BaseRing::Rationals => Scalar::Rat(BigRational::from_integer(x.clone())),
            BaseRing::PrimeField(p) => {
                let m = num_integer::Integer::mod_floor(x, &BigInt::from(*p));
                let digits = m.to_u64_digits().1;
                Scalar::Fp(if digits.is_empty() { 0 } else { digits[0] })
            }
        }
    }
}

impl Scalar {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(x) => Some(x),
            _ => None,
        }
    }

    /// Integer value of a rational scalar in lowest terms with denominator 1.
    pub fn rat_to_int(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    Some(x.numer().clone())
                } else {
                    None
                }
            }
            Scalar::Int(x) => Some(x.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_requires_prime() {
        assert!(BaseRing::prime_field(7).is_ok());
        assert!(BaseRing::prime_field(1).is_err());
        assert!(BaseRing::prime_field(91).is_err()); // 7 * 13
        assert!(BaseRing::prime_field(2u64.pow(61) - 1).is_ok());
    }

    #[test]
    fn rational_canonical_form() {
        let q = BaseRing::Rationals;
        let half = q.parse("2/4").unwrap();
        assert_eq!(half, q.parse("1/2").unwrap());
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn fp_arithmetic_wraps() {
        let f5 = BaseRing::prime_field(5).unwrap();
        let a = f5.from_i64(-3);
        assert_eq!(a, Scalar::Fp(2));
        assert_eq!(f5.mul(&a, &Scalar::Fp(3)), Scalar::Fp(1));
        assert_eq!(f5.inv(&Scalar::Fp(2)), Some(Scalar::Fp(3)));
    }

    #[test]
    fn involution_is_identity() {
        let z = BaseRing::Integers;
        let a = z.from_i64(-7);
        assert_eq!(z.involute(&a), a);
    }

    #[test]
    fn exact_division_over_z() {
        let z = BaseRing::Integers;
        assert_eq!(
            z.exact_div(&z.from_i64(6), &z.from_i64(-3)),
            Some(z.from_i64(-2))
        );
        assert_eq!(z.exact_div(&z.from_i64(5), &z.from_i64(2)), None);
    }
}
