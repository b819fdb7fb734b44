//! Laurent polynomials over a base ring, with augmentation z -> 1 and the
//! involution z -> 1/z.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_linalg::{BaseRing, Scalar};

/// Finite support map degree -> nonzero coefficient; the empty map is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: BaseRing,
    coeffs: BTreeMap<i64, Scalar>,
}

pub const DEFAULT_DEGREE_CAP: i64 = 512;

impl LaurentPoly {
    pub fn zero(ring: BaseRing) -> Self {
        LaurentPoly { ring, coeffs: BTreeMap::new() }
    }

    pub fn constant(ring: BaseRing, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(0, c);
        p
    }

    pub fn one(ring: BaseRing) -> Self {
        Self::constant(ring, ring.one())
    }

    /// c * z^d
    pub fn monomial(ring: BaseRing, d: i64, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(d, c);
        p
    }

    pub fn from_coeffs(ring: BaseRing, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(ring);
        for &(d, c) in terms {
            p.add_term(d, ring.from_i64(c));
        }
        p
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, d: i64) -> Scalar {
        self.coeffs.get(&d).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, d: i64, c: Scalar) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.coeffs.remove(&d) {
            None => {
                self.coeffs.insert(d, c);
            }
            Some(old) => {
                let s = self.ring.add(&old, &c);
                if !self.ring.is_zero(&s) {
                    self.coeffs.insert(d, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(d, c)| (*d, self.ring.neg(c))).collect();
        LaurentPoly { ring: self.ring, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.ring);
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                out.add_term(d1 + d2, self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.ring);
        for (d, v) in &self.coeffs {
            out.add_term(*d, self.ring.mul(v, c));
        }
        out
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect();
        LaurentPoly { ring: self.ring, coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Degree span of the support, 0 for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn check_span(&self, cap: i64) -> Result<()> {
        if self.span() > cap {
            Err(Error::DegreeCapExceeded { cap, span: self.span() })
        } else {
            Ok(())
        }
    }

    /// Augmentation z -> 1.
    pub fn augment(&self) -> Scalar {
        let mut acc = self.ring.zero();
        for c in self.coeffs.values() {
            acc = self.ring.add(&acc, c);
        }
        acc
    }

    /// Evaluate at an arbitrary unit of the base ring.
    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        let ring = self.ring;
        let xinv = ring.inv(x)?;
        let mut acc = ring.zero();
        for (d, c) in &self.coeffs {
            let mut term = c.clone();
            let (base, times) = if *d >= 0 { (x, *d as u64) } else { (&xinv, (-d) as u64) };
            for _ in 0..times {
                term = ring.mul(&term, base);
            }
            acc = ring.add(&acc, &term);
        }
        Some(acc)
    }

    /// The involution sending z to 1/z and conjugating coefficients.
    pub fn involute(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(d, c)| (-d, self.ring.involute(c)))
            .collect();
        LaurentPoly { ring: self.ring, coeffs }
    }

    /// Units of A[z,1/z]: a single term with a unit coefficient
    /// (so +-z^m over Z, c z^m over a field).
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_unit(self.coeffs.values().next().unwrap())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0) == self.ring.one()
    }

    /// Exact division, None when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.ring));
        }
        let ring = self.ring;
        // shift so the divisor is an honest polynomial with nonzero constant
        let ds = other.min_degree().unwrap();
        let div = other.shift(-ds);
        let mut rem = self.shift(-self.min_degree().unwrap());
        let shift_back = self.min_degree().unwrap() - ds;
        let dl = div.max_degree().unwrap();
        let dlc = div.coeff(dl);
        let mut quot = Self::zero(ring);
        while !rem.is_zero() {
            let rl = rem.max_degree().unwrap();
            if rl < dl {
                return None;
            }
            let q = ring.exact_div(&rem.coeff(rl), &dlc)?;
            let qm = Self::monomial(ring, rl - dl, q);
            rem = rem.sub(&qm.mul(&div));
            quot = quot.add(&qm);
        }
        Some(quot.shift(shift_back))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> BaseRing {
        BaseRing::Integers
    }

    #[test]
    fn hand_expansion() {
        // (1 - z)(1 - 1/z) = 2 - z - 1/z
        let a = LaurentPoly::from_coeffs(z(), &[(0, 1), (1, -1)]);
        let b = LaurentPoly::from_coeffs(z(), &[(0, 1), (-1, -1)]);
        let expect = LaurentPoly::from_coeffs(z(), &[(0, 2), (1, -1), (-1, -1)]);
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn times_zero() {
        let a = LaurentPoly::from_coeffs(z(), &[(2, 3), (-1, 1)]);
        assert!(a.mul(&LaurentPoly::zero(z())).is_zero());
    }

    #[test]
    fn augment_examples() {
        let a = LaurentPoly::from_coeffs(z(), &[(0, 2), (1, -1)]);
        assert_eq!(a.augment(), z().one());
        let zk = LaurentPoly::monomial(z(), -7, z().one());
        assert_eq!(zk.augment(), z().one());
    }

    #[test]
    fn augment_is_multiplicative() {
        let mut seed = 5u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for _ in 0..100 {
            let p = LaurentPoly::from_coeffs(z(), &[(-1, next()), (0, next()), (2, next())]);
            let q = LaurentPoly::from_coeffs(z(), &[(0, next()), (1, next())]);
            let lhs = p.mul(&q).augment();
            let rhs = z().mul(&p.augment(), &q.augment());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn involute_examples() {
        let a = LaurentPoly::from_coeffs(z(), &[(0, 1), (1, -1)]);
        let expect = LaurentPoly::from_coeffs(z(), &[(0, 1), (-1, -1)]);
        assert_eq!(a.involute(), expect);
        let c = LaurentPoly::constant(z(), z().from_i64(5));
        assert_eq!(c.involute(), c);
        let b = LaurentPoly::from_coeffs(z(), &[(-1, 2), (2, 3)]);
        let expect = LaurentPoly::from_coeffs(z(), &[(1, 2), (-2, 3)]);
        assert_eq!(b.involute(), expect);
    }

    #[test]
    fn involute_is_ring_antiautomorphism_of_order_two() {
        let mut seed = 9u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for _ in 0..100 {
            let p = LaurentPoly::from_coeffs(z(), &[(-2, next()), (0, next()), (1, next())]);
            let q = LaurentPoly::from_coeffs(z(), &[(-1, next()), (3, next())]);
            assert_eq!(p.mul(&q).involute(), q.involute().mul(&p.involute()));
            assert_eq!(p.involute().involute(), p);
        }
    }

    #[test]
    fn unit_test_over_z() {
        assert!(LaurentPoly::monomial(z(), 3, z().from_i64(-1)).is_unit());
        assert!(!LaurentPoly::monomial(z(), 3, z().from_i64(2)).is_unit());
        assert!(!LaurentPoly::from_coeffs(z(), &[(0, 1), (1, 1)]).is_unit());
        let q = BaseRing::Rationals;
        assert!(LaurentPoly::monomial(q, -2, q.from_i64(3)).is_unit());
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_coeffs(z(), &[(0, 1), (1, -1)]); // 1 - z
        let b = LaurentPoly::from_coeffs(z(), &[(0, 1), (1, -2), (2, 1)]); // (1-z)^2
        let q = b.exact_div(&a).unwrap();
        assert_eq!(q, a);
        assert!(a.exact_div(&b).is_none());
        let c = LaurentPoly::from_coeffs(z(), &[(0, 2), (1, 1)]);
        assert!(c.exact_div(&LaurentPoly::from_coeffs(z(), &[(0, 2)])).is_none());
        // shifted divisors work
        let shifted = b.shift(-3);
        assert_eq!(shifted.exact_div(&a.shift(2)).unwrap(), a.shift(-5));
    }

    #[test]
    fn degree_cap_check() {
        let big = LaurentPoly::from_coeffs(z(), &[(0, 1), (600, 1)]);
        assert!(matches!(
            big.check_span(DEFAULT_DEGREE_CAP),
            Err(Error::DegreeCapExceeded { .. })
        ));
        assert!(big.check_span(1000).is_ok());
    }
}
