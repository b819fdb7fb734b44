//! Dense exact matrices over a base ring.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::ring::{BaseRing, Scalar};

/// Dense row-major matrix with exact entries, all from `ring`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: BaseRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(ring: BaseRing, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !ring.contains(e)) {
            return Err(Error::RingMismatch(ring.to_string(), format!("{bad}")));
        }
        Ok(ExactMatrix { ring, rows, cols, entries })
    }

    pub fn zero(ring: BaseRing, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: BaseRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Convenience constructor from signed integer rows.
    pub fn from_i64(ring: BaseRing, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &v in *row {
                entries.push(ring.from_i64(v));
            }
        }
        ExactMatrix { ring, rows: r, cols: c, entries }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| self.ring.neg(a)).collect();
        ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.ring;
        let mut out = ExactMatrix::zero(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let entries = self.entries.iter().map(|a| self.ring.mul(a, s)).collect();
        ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries }
    }

    /// Entrywise involution followed by transposition; with the trivial
    /// involution this is the plain transpose, but all dualization goes
    /// through here.
    pub fn transpose_conjugate(&self) -> Self {
        let mut out = ExactMatrix::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.ring.involute(self.get(i, j)));
            }
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { self.ring.is_one(e) } else { self.ring.is_zero(e) };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut acc = ExactMatrix::identity(self.ring, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        let mut out = ExactMatrix::zero(self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Assemble a matrix from a 2x2 grid of blocks with consistent shapes.
    pub fn from_blocks(b00: &Self, b01: &Self, b10: &Self, b11: &Self) -> Result<Self> {
        if b00.rows != b01.rows || b10.rows != b11.rows || b00.cols != b10.cols || b01.cols != b11.cols
        {
            return Err(Error::ShapeMismatch("block grid".into()));
        }
        let rows = b00.rows + b10.rows;
        let cols = b00.cols + b01.cols;
        let mut out = ExactMatrix::zero(b00.ring, rows, cols);
        let mut put = |m: &Self, r0: usize, c0: usize| {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
        };
        put(b00, 0, 0);
        put(b01, 0, b00.cols);
        put(b10, b00.rows, 0);
        put(b11, b00.rows, b00.cols);
        Ok(out)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = ExactMatrix::zero(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Kronecker product, used to flatten matrix equations into vector ones.
    pub fn kron(&self, other: &Self) -> Self {
        let ring = self.ring;
        let mut out = ExactMatrix::zero(ring, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if ring.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = ring.mul(a, other.get(k, l));
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }

    /// Exact determinant: Bareiss fraction-free elimination over Z,
    /// ordinary Gaussian elimination over fields.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        match self.ring {
            BaseRing::Integers => self.det_bareiss(),
            _ => self.det_gauss(),
        }
    }

    fn det_bareiss(&self) -> Result<Scalar> {
        let n = self.rows;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.get(i, j).as_int().expect("integer ring").clone())
                    .collect()
            })
            .collect();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Scalar::Int(BigInt::zero())),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let mut det = m[n - 1][n - 1].clone();
        if sign < 0 {
            det = -det;
        }
        Ok(Scalar::Int(det))
    }

    fn det_gauss(&self) -> Result<Scalar> {
        let ring = self.ring;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = ring.one();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !ring.is_zero(m.get(i, k)));
            let Some(pi) = pivot else {
                return Ok(ring.zero());
            };
            if pi != k {
                for j in 0..n {
                    let a = m.get(k, j).clone();
                    let b = m.get(pi, j).clone();
                    m.set(k, j, b);
                    m.set(pi, j, a);
                }
                det = ring.neg(&det);
            }
            let pv = m.get(k, k).clone();
            det = ring.mul(&det, &pv);
            let pinv = ring.inv(&pv).expect("field pivot invertible");
            for i in k + 1..n {
                let factor = ring.mul(m.get(i, k), &pinv);
                if ring.is_zero(&factor) {
                    continue;
                }
                for j in k..n {
                    let v = ring.sub(m.get(i, j), &ring.mul(&factor, m.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse. Over Z this succeeds exactly when det = +-1.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        match self.ring {
            BaseRing::Integers => {
                let det = self.determinant()?;
                if !self.ring.is_unit(&det) {
                    return Err(Error::NotInvertible);
                }
                let over_q = self.promote(BaseRing::Rationals);
                let inv_q = over_q.invert_field()?;
                inv_q.demote_to_int()
            }
            _ => self.invert_field(),
        }
    }

    fn invert_field(&self) -> Result<Self> {
        let ring = self.ring;
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = ExactMatrix::identity(ring, n);
        for k in 0..n {
            let Some(pi) = (k..n).find(|&i| !ring.is_zero(m.get(i, k))) else {
                return Err(Error::NotInvertible);
            };
            if pi != k {
                for j in 0..n {
                    let (a, b) = (m.get(k, j).clone(), m.get(pi, j).clone());
                    m.set(k, j, b);
                    m.set(pi, j, a);
                    let (a, b) = (inv.get(k, j).clone(), inv.get(pi, j).clone());
                    inv.set(k, j, b);
                    inv.set(pi, j, a);
                }
            }
            let pinv = ring.inv(m.get(k, k)).ok_or(Error::NotInvertible)?;
            for j in 0..n {
                m.set(k, j, ring.mul(m.get(k, j), &pinv));
                inv.set(k, j, ring.mul(inv.get(k, j), &pinv));
            }
            for i in 0..n {
                if i == k || ring.is_zero(m.get(i, k)) {
                    continue;
                }
                let factor = m.get(i, k).clone();
                for j in 0..n {
                    let v = ring.sub(m.get(i, j), &ring.mul(&factor, m.get(k, j)));
                    m.set(i, j, v);
                    let v = ring.sub(inv.get(i, j), &ring.mul(&factor, inv.get(k, j)));
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Reinterpret integer entries in another ring.
    pub fn promote(&self, target: BaseRing) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| match e {
                Scalar::Int(x) => target.promote_int(x),
                _ => panic!("promote expects an integer matrix"),
            })
            .collect();
        ExactMatrix { ring: target, rows: self.rows, cols: self.cols, entries }
    }

    /// Demote a rational matrix with integral entries back to Z.
    pub fn demote_to_int(&self) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let v = e.rat_to_int().ok_or(Error::NotInvertible)?;
            entries.push(Scalar::Int(v));
        }
        Ok(ExactMatrix {
            ring: BaseRing::Integers,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Least k <= n with m^k = 0, if m is nilpotent. A size-n matrix over a
    /// commutative domain is nilpotent iff m^n = 0, so the scan is complete.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut acc = ExactMatrix::identity(self.ring, n);
        for k in 0..=n {
            if acc.is_zero_matrix() {
                return Ok(Some(k));
            }
            if k < n {
                acc = acc.mul(self)?;
            }
        }
        Ok(None)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> BaseRing {
        BaseRing::Integers
    }

    /// Independent cofactor-expansion oracle, small sizes only.
    pub(crate) fn det_cofactor(m: &ExactMatrix) -> Scalar {
        let ring = m.ring();
        let n = m.rows();
        assert!(m.is_square() && n <= 5);
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let mut minor = ExactMatrix::zero(ring, n - 1, n - 1);
            for i in 1..n {
                let mut cc = 0;
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    minor.set(i - 1, cc, m.get(i, k).clone());
                    cc += 1;
                }
            }
            let term = ring.mul(m.get(0, j), &det_cofactor(&minor));
            if j % 2 == 0 {
                acc = ring.add(&acc, &term);
            } else {
                acc = ring.sub(&acc, &term);
            }
        }
        acc
    }

    #[test]
    fn mul_identity() {
        let a = ExactMatrix::from_i64(z(), &[&[1, 2], &[3, 4]]);
        let id = ExactMatrix::identity(z(), 2);
        assert_eq!(a.mul(&id).unwrap(), a);
    }

    #[test]
    fn mul_hand_example() {
        let a = ExactMatrix::from_i64(z(), &[&[1, 1], &[0, 1]]);
        let expect = ExactMatrix::from_i64(z(), &[&[1, 2], &[0, 1]]);
        assert_eq!(a.mul(&a).unwrap(), expect);
    }

    #[test]
    fn transpose_conjugate_is_transpose() {
        let a = ExactMatrix::from_i64(z(), &[&[0, 1], &[-1, 0]]);
        let expect = ExactMatrix::from_i64(z(), &[&[0, -1], &[1, 0]]);
        assert_eq!(a.transpose_conjugate(), expect);
    }

    #[test]
    fn shape_and_ring_mismatch() {
        let a = ExactMatrix::from_i64(z(), &[&[1, 2]]);
        let b = ExactMatrix::from_i64(z(), &[&[1], &[2], &[3]]);
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch(_))));
        let q = ExactMatrix::from_i64(BaseRing::Rationals, &[&[1, 2]]);
        assert!(matches!(a.add(&q), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn determinant_examples() {
        let a = ExactMatrix::from_i64(z(), &[&[-2, 1], &[1, -2]]);
        assert_eq!(a.determinant().unwrap(), z().from_i64(3));
        assert_eq!(det_cofactor(&a), z().from_i64(3));
        let id3 = ExactMatrix::identity(z(), 3);
        assert_eq!(id3.determinant().unwrap(), z().from_i64(1));
        let rot = ExactMatrix::from_i64(z(), &[&[0, 1], &[-1, 0]]);
        assert_eq!(rot.determinant().unwrap(), z().from_i64(1));
    }

    #[test]
    fn determinant_matches_cofactor_oracle_small_sizes() {
        // all matrices of size <= 4 from a deterministic sweep
        let mut seed = 1u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for n in 0..=4usize {
            for _ in 0..40 {
                let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let slices: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                let m = ExactMatrix::from_i64(z(), &slices);
                assert_eq!(m.determinant().unwrap(), det_cofactor(&m), "n={n} m={m}");
                let mq = m.promote(BaseRing::Rationals);
                assert_eq!(mq.determinant().unwrap(), det_cofactor(&mq));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let rot = ExactMatrix::from_i64(z(), &[&[0, 1], &[-1, 0]]);
        let inv = rot.inverse().unwrap();
        assert_eq!(inv, ExactMatrix::from_i64(z(), &[&[0, -1], &[1, 0]]));
        assert!(inv.mul(&rot).unwrap().is_identity());

        let idn = ExactMatrix::identity(z(), 4);
        assert_eq!(idn.inverse().unwrap(), idn);

        let two = ExactMatrix::from_i64(z(), &[&[2]]);
        assert!(matches!(two.inverse(), Err(Error::NotInvertible)));
        let two_q = two.promote(BaseRing::Rationals);
        let half = two_q.inverse().unwrap();
        assert_eq!(half.get(0, 0), &BaseRing::Rationals.parse("1/2").unwrap());
    }

    #[test]
    fn inverse_iff_unit_determinant_over_z() {
        let mut seed = 7u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 5) as i64 - 2
        };
        for n in 1..=4usize {
            for _ in 0..60 {
                let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let slices: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                let m = ExactMatrix::from_i64(z(), &slices);
                let det = m.determinant().unwrap();
                let unit = z().is_unit(&det);
                match m.inverse() {
                    Ok(inv) => {
                        assert!(unit);
                        assert!(inv.mul(&m).unwrap().is_identity());
                        assert!(m.mul(&inv).unwrap().is_identity());
                    }
                    Err(Error::NotInvertible) => assert!(!unit),
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn nilpotency_examples() {
        let strict = ExactMatrix::from_i64(z(), &[&[0, 1], &[0, 0]]);
        assert_eq!(strict.nilpotency_index().unwrap(), Some(2));
        let id1 = ExactMatrix::identity(z(), 1);
        assert_eq!(id1.nilpotency_index().unwrap(), None);
        let m = ExactMatrix::from_i64(z(), &[&[1, -1], &[1, -1]]);
        assert_eq!(m.nilpotency_index().unwrap(), Some(2));
        assert!(m.pow(2).unwrap().is_zero_matrix());
        let empty = ExactMatrix::zero(z(), 0, 0);
        assert_eq!(empty.nilpotency_index().unwrap(), Some(0));
    }

    #[test]
    fn nilpotency_index_is_minimal() {
        let m = ExactMatrix::from_i64(z(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let k = m.nilpotency_index().unwrap().unwrap();
        assert_eq!(k, 3);
        assert!(m.pow(k).unwrap().is_zero_matrix());
        assert!(!m.pow(k - 1).unwrap().is_zero_matrix());
    }
}
