//! The commutative localization A[z,1/z,1/(1-z)] and its presentation
//! A[s,1/t] under s = 1/(1-z), t = s(1-s) = -z/(1-z)^2.

use std::fmt;

use crate::exact_linalg::{BaseRing, Scalar};

use super::poly::LaurentPoly;

/// numerator / (z^a (1-z)^b) in canonical form: a nonzero numerator has
/// lowest degree 0 (the z-content lives in `a`, which may be negative since
/// z is a unit), and is not divisible by 1-z unless b = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedElement {
    num: LaurentPoly,
    a: i64,
    b: u32,
}

fn one_minus_z(ring: BaseRing) -> LaurentPoly {
    LaurentPoly::from_coeffs(ring, &[(0, 1), (1, -1)])
}

impl LocalizedElement {
    pub fn new(num: LaurentPoly, a: i64, b: u32) -> Self {
        let mut x = LocalizedElement { num, a, b };
        x.normalize();
        x
    }

    pub fn zero(ring: BaseRing) -> Self {
        LocalizedElement { num: LaurentPoly::zero(ring), a: 0, b: 0 }
    }

    pub fn one(ring: BaseRing) -> Self {
        LocalizedElement { num: LaurentPoly::one(ring), a: 0, b: 0 }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::new(p, 0, 0)
    }

    pub fn ring(&self) -> BaseRing {
        self.num.ring()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn z_exponent(&self) -> i64 {
        self.a
    }

    pub fn one_minus_z_exponent(&self) -> u32 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        let ring = self.ring();
        if self.num.is_zero() {
            self.a = 0;
            self.b = 0;
            return;
        }
        // absorb the z-content of the numerator into a
        let low = self.num.min_degree().unwrap();
        if low != 0 {
            self.num = self.num.shift(-low);
            self.a -= low;
        }
        // cancel common 1-z factors
        let omz = one_minus_z(ring);
        while self.b > 0 {
            if !ring.is_zero(&self.num.augment()) {
                break;
            }
            match self.num.exact_div(&omz) {
                Some(q) => {
                    self.num = q;
                    self.b -= 1;
                }
                None => break,
            }
        }
        // dividing by 1-z can reintroduce z-content
        if !self.num.is_zero() {
            let low = self.num.min_degree().unwrap();
            if low != 0 {
                self.num = self.num.shift(-low);
                self.a -= low;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let ring = self.ring();
        let a = self.a.max(other.a);
        let b = self.b.max(other.b);
        let omz = one_minus_z(ring);
        let lift = |x: &Self| {
            x.num
                .shift(a - x.a)
                .mul(&omz.pow(b - x.b))
        };
        LocalizedElement::new(lift(self).add(&lift(other)), a, b)
    }

    pub fn neg(&self) -> Self {
        LocalizedElement { num: self.num.neg(), a: self.a, b: self.b }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        LocalizedElement::new(self.num.mul(&other.num), self.a + other.a, self.b + other.b)
    }

    /// Cross-multiplication equality (canonical forms are unique, so this
    /// is structural equality after normalization).
    pub fn eq_localized(&self, other: &Self) -> bool {
        self == other
    }

    /// The involution z -> 1/z extended to the localization:
    /// 1/(1-z) conjugates to -z/(1-z).
    pub fn involute(&self) -> Self {
        // conj(num/(z^a (1-z)^b)) = conj(num) * z^{a+b} * (-1)^b / (1-z)^b
        let mut num = self.num.involute().shift(self.a + self.b as i64);
        if self.b % 2 == 1 {
            num = num.neg();
        }
        LocalizedElement::new(num, 0, self.b)
    }

}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 && self.b == 0 {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        if self.a != 0 {
            write!(f, "z^{}", self.a)?;
        }
        if self.b != 0 {
            if self.a != 0 {
                write!(f, " ")?;
            }
            write!(f, "(1-z)^{}", self.b)?;
        }
        write!(f, ")")
    }
}

/// Element of A[s, 1/t]: t^{-k} * sum_j coeff_j s^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STElement {
    pub k: u32,
    /// coefficients of the polynomial in s, index j >= 0
    pub coeffs: Vec<Scalar>,
    ring: BaseRing,
}

impl STElement {
    pub fn new(ring: BaseRing, k: u32, coeffs: Vec<Scalar>) -> Self {
        let mut x = STElement { k, coeffs, ring };
        x.trim();
        x.reduce();
        x
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    fn eval_at(&self, x: i64) -> Scalar {
        let ring = self.ring;
        let xv = ring.from_i64(x);
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, &xv), c);
        }
        acc
    }

    /// Cancel t = s(1-s) from numerator and denominator while possible.
    fn reduce(&mut self) {
        let ring = self.ring;
        if self.coeffs.is_empty() {
            self.k = 0;
            return;
        }
        while self.k > 0
            && ring.is_zero(&self.coeffs[0])
            && ring.is_zero(&self.eval_at(1))
        {
            // divide by s
            self.coeffs.remove(0);
            // divide by 1 - s: synthetic division, exact since value at 1 is 0
            let mut out = Vec::with_capacity(self.coeffs.len());
            let mut carry = ring.zero();
            for c in &self.coeffs {
                let v = ring.add(c, &carry);
                out.push(v.clone());
                carry = v;
            }
            debug_assert!(out.last().is_none_or(|c| ring.is_zero(c)));
            out.pop();
            self.coeffs = out;
            self.k -= 1;
            self.trim();
            if self.coeffs.is_empty() {
                self.k = 0;
                return;
            }
        }
    }
}

impl fmt::Display for STElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        if self.k > 0 {
            write!(f, "t^-{} * (", self.k)?;
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*s")?,
                _ => write!(f, "{c}*s^{j}")?,
            }
        }
        if self.k > 0 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Polynomials in s with signed powers of s and s-1 tracked separately:
/// value = p(s) / (s^g (s-1)^d).
struct SFraction {
    p: Vec<Scalar>,
    g: i64,
    d: i64,
    ring: BaseRing,
}

fn poly_mul(ring: BaseRing, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

fn poly_add(ring: BaseRing, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| ring.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.push(ring.add(&x, &y));
    }
    out
}

/// (s-1)^n for n >= 0
fn s_minus_one_pow(ring: BaseRing, n: u32) -> Vec<Scalar> {
    let mut acc = vec![ring.one()];
    for _ in 0..n {
        acc = poly_mul(ring, &acc, &[ring.neg(&ring.one()), ring.one()]);
    }
    acc
}

fn s_pow(ring: BaseRing, n: u32) -> Vec<Scalar> {
    let mut out = vec![ring.zero(); n as usize + 1];
    out[n as usize] = ring.one();
    out
}

impl SFraction {
    fn add(&self, other: &Self) -> Self {
        let ring = self.ring;
        let g = self.g.max(other.g);
        let d = self.d.max(other.d);
        let lift = |x: &Self| {
            let mut p = x.p.clone();
            p = poly_mul(ring, &p, &s_pow(ring, (g - x.g) as u32));
            p = poly_mul(ring, &p, &s_minus_one_pow(ring, (d - x.d) as u32));
            p
        };
        SFraction { p: poly_add(ring, &lift(self), &lift(other)), g, d, ring }
    }
}

/// Change of variables into A[s,1/t]; inverse of [`st_to_z`].
pub fn z_to_st(x: &LocalizedElement) -> STElement {
    let ring = x.ring();
    if x.is_zero() {
        return STElement::new(ring, 0, Vec::new());
    }
    // each monomial c z^d becomes c (s-1)^d s^{-d}
    let mut acc: Option<SFraction> = None;
    for (d, c) in x.numerator().coeffs() {
        let term = if *d >= 0 {
            SFraction {
                p: poly_mul(ring, &[c.clone()], &s_minus_one_pow(ring, *d as u32)),
                g: *d,
                d: 0,
                ring,
            }
        } else {
            SFraction {
                p: poly_mul(ring, &[c.clone()], &s_pow(ring, (-d) as u32)),
                g: 0,
                d: -d,
                ring,
            }
        };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    let mut frac = acc.unwrap();
    // divide by z^a = (s-1)^a s^{-a}, i.e. multiply by s^a (s-1)^{-a}
    if x.z_exponent() >= 0 {
        frac.p = poly_mul(ring, &frac.p, &s_pow(ring, x.z_exponent() as u32));
        frac.d += x.z_exponent();
    } else {
        frac.p = poly_mul(ring, &frac.p, &s_minus_one_pow(ring, (-x.z_exponent()) as u32));
        frac.g += -x.z_exponent();
    }
    // divide by (1-z)^b = s^{-b}
    frac.g -= x.one_minus_z_exponent() as i64;
    // eliminate denominators via s^{-1} = (1-s)/t and (s-1)^{-1} = -s/t
    let mut p = frac.p;
    let mut k: i64 = 0;
    if frac.g > 0 {
        let mut one_minus_s = s_minus_one_pow(ring, frac.g as u32);
        if frac.g % 2 == 1 {
            one_minus_s = one_minus_s.iter().map(|c| ring.neg(c)).collect();
        }
        p = poly_mul(ring, &p, &one_minus_s);
        k += frac.g;
    } else if frac.g < 0 {
        p = poly_mul(ring, &p, &s_pow(ring, (-frac.g) as u32));
    }
    if frac.d > 0 {
        let mut minus_s = s_pow(ring, frac.d as u32);
        if frac.d % 2 == 1 {
            minus_s = minus_s.iter().map(|c| ring.neg(c)).collect();
        }
        p = poly_mul(ring, &p, &minus_s);
        k += frac.d;
    } else if frac.d < 0 {
        p = poly_mul(ring, &p, &s_minus_one_pow(ring, (-frac.d) as u32));
    }
    STElement::new(ring, k as u32, p)
}

/// Change of variables back: s = 1/(1-z), t^{-1} = -z^{-1}(1-z)^2.
pub fn st_to_z(x: &STElement) -> LocalizedElement {
    let ring = x.ring();
    if x.coeffs.is_empty() {
        return LocalizedElement::zero(ring);
    }
    let big_j = x.coeffs.len() as i64 - 1;
    // sum_j c_j s^j = [sum_j c_j (1-z)^{J-j}] / (1-z)^J
    let omz = one_minus_z(ring);
    let mut num = LaurentPoly::zero(ring);
    for (j, c) in x.coeffs.iter().enumerate() {
        let term = omz.pow((big_j - j as i64) as u32).scale(c);
        num = num.add(&term);
    }
    // t^{-k} = (-1)^k z^{-k} (1-z)^{2k}
    if x.k % 2 == 1 {
        num = num.neg();
    }
    let b = big_j - 2 * x.k as i64;
    if b >= 0 {
        LocalizedElement::new(num, x.k as i64, b as u32)
    } else {
        LocalizedElement::new(num.mul(&omz.pow((-b) as u32)), x.k as i64, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> BaseRing {
        BaseRing::Integers
    }

    fn s_elem() -> LocalizedElement {
        // s = 1/(1-z)
        LocalizedElement::new(LaurentPoly::one(z()), 0, 1)
    }

    #[test]
    fn s_plus_one_minus_s() {
        // s + (1-s) = 1 with 1-s = -z/(1-z)
        let s = s_elem();
        let one_minus_s = LocalizedElement::new(
            LaurentPoly::monomial(z(), 1, z().from_i64(-1)),
            0,
            1,
        );
        assert!(s.add(&one_minus_s).eq_localized(&LocalizedElement::one(z())));
    }

    #[test]
    fn t_as_product() {
        // s(1-s) = -z/(1-z)^2
        let s = s_elem();
        let one_minus_s = LocalizedElement::new(
            LaurentPoly::monomial(z(), 1, z().from_i64(-1)),
            0,
            1,
        );
        let t = s.mul(&one_minus_s);
        let expect = LocalizedElement::new(LaurentPoly::monomial(z(), 1, z().from_i64(-1)), 0, 2);
        assert!(t.eq_localized(&expect));
        assert_eq!(t.z_exponent(), -1); // numerator content -z absorbed as -1
    }

    #[test]
    fn normalize_cancels_common_factors() {
        // z(1-z) / (z^2 (1-z)^2) = 1/(z(1-z))
        let num = LaurentPoly::from_coeffs(z(), &[(1, 1), (2, -1)]);
        let x = LocalizedElement::new(num, 2, 2);
        let expect = LocalizedElement::new(LaurentPoly::one(z()), 1, 1);
        assert_eq!(x, expect);
    }

    #[test]
    fn z_to_st_basics() {
        let s = z_to_st(&s_elem());
        assert_eq!(s, STElement::new(z(), 0, vec![z().zero(), z().one()]));
        // t = -z/(1-z)^2 -> s(1-s) = s - s^2 at k = 0
        let t = LocalizedElement::new(LaurentPoly::monomial(z(), 1, z().from_i64(-1)), 0, 2);
        let st = z_to_st(&t);
        assert_eq!(
            st,
            STElement::new(z(), 0, vec![z().zero(), z().one(), z().from_i64(-1)])
        );
    }

    #[test]
    fn st_to_z_example() {
        // s - 1 = z/(1-z)
        let sm1 = STElement::new(z(), 0, vec![z().from_i64(-1), z().one()]);
        let back = st_to_z(&sm1);
        let expect = LocalizedElement::new(LaurentPoly::monomial(z(), 1, z().one()), 0, 1);
        assert!(back.eq_localized(&expect));
    }

    #[test]
    fn involute_of_s() {
        // conj(s) = 1/(1-1/z) = -z/(1-z) = 1 - s
        let s = s_elem();
        let conj = s.involute();
        let expect = LocalizedElement::new(LaurentPoly::monomial(z(), 1, z().from_i64(-1)), 0, 1);
        assert_eq!(conj, expect);
        // and s + conj(s) = 1
        assert!(s.add(&conj).eq_localized(&LocalizedElement::one(z())));
    }

    #[test]
    fn roundtrip_500_random() {
        let mut seed = 31u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as i64
        };
        for _ in 0..500 {
            let mut num = LaurentPoly::zero(z());
            for _ in 0..3 {
                let d = next() % 5 - 2;
                let c = next() % 7 - 3;
                num.add_term(d, z().from_i64(c));
            }
            let a = next() % 5 - 2;
            let b = (next() % 3) as u32;
            let x = LocalizedElement::new(num, a, b);
            let rt = st_to_z(&z_to_st(&x));
            assert!(rt.eq_localized(&x), "x = {x}, rt = {rt}");
        }
    }
}
