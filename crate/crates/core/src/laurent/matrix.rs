//! Matrices over the Laurent polynomial ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_linalg::{BaseRing, ExactMatrix};

use super::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    ring: BaseRing,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn new(ring: BaseRing, rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} Laurent matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(ring.to_string(), e.ring().to_string()));
        }
        Ok(LaurentMatrix { ring, rows, cols, entries })
    }

    pub fn zero(ring: BaseRing, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            ring,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: BaseRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(ring));
        }
        m
    }

    /// Lift a constant matrix into degree-zero Laurent entries.
    pub fn from_exact(m: &ExactMatrix) -> Self {
        let mut out = Self::zero(m.ring(), m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, LaurentPoly::constant(m.ring(), m.get(i, j).clone()));
            }
        }
        out
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

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols || self.ring != other.ring {
            return Err(Error::ShapeMismatch("Laurent add".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(LaurentMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.ring != other.ring {
            return Err(Error::ShapeMismatch("Laurent mul".into()));
        }
        let mut out = Self::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        let entries = self.entries.iter().map(|e| e.mul(p)).collect();
        LaurentMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries }
    }

    /// Substitute z := 1 entrywise.
    pub fn augment(&self) -> ExactMatrix {
        let entries = self.entries.iter().map(|p| p.augment()).collect();
        ExactMatrix::new(self.ring, self.rows, self.cols, entries).expect("shape preserved")
    }

    /// Entrywise involution (z -> 1/z) followed by transposition.
    pub fn transpose_involute(&self) -> Self {
        let mut out = Self::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).involute());
            }
        }
        out
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.entries.iter().filter_map(|p| p.min_degree()).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.iter().filter_map(|p| p.max_degree()).max()
    }

    /// The coefficient matrix of z^d.
    pub fn coefficient_matrix(&self, d: i64) -> ExactMatrix {
        let entries = self.entries.iter().map(|p| p.coeff(d)).collect();
        ExactMatrix::new(self.ring, self.rows, self.cols, entries).expect("shape preserved")
    }

    pub fn shift(&self, k: i64) -> Self {
        let entries = self.entries.iter().map(|p| p.shift(k)).collect();
        LaurentMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries }
    }

    /// Exact determinant over the Laurent ring. Subset-expansion dynamic
    /// programming up to size 8, fraction-free elimination beyond.
    pub fn determinant(&self, degree_cap: i64) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.ring));
        }
        let det = if n <= 8 { self.det_subset_dp() } else { self.det_bareiss()? };
        det.check_span(degree_cap)?;
        Ok(det)
    }

    /// Laplace expansion with memoization over column subsets.
    fn det_subset_dp(&self) -> LaurentPoly {
        let n = self.rows;
        let full: u32 = (1 << n) - 1;
        // dp[mask] = determinant of the top-|mask| rows on columns in mask
        let mut dp: Vec<Option<LaurentPoly>> = vec![None; 1 << n];
        dp[0] = Some(LaurentPoly::one(self.ring));
        for mask in 1..=full {
            let row = (mask.count_ones() - 1) as usize;
            let mut acc = LaurentPoly::zero(self.ring);
            // expanding along row `row`: term sign is (-1)^(row + position)
            let mut sign_flip = row % 2 == 1;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let e = self.get(row, j);
                if !e.is_zero() {
                    let sub = dp[(mask & !(1 << j)) as usize]
                        .as_ref()
                        .expect("smaller masks filled")
                        .clone();
                    let term = e.mul(&sub);
                    acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
                }
                sign_flip = !sign_flip;
            }
            dp[mask as usize] = Some(acc);
        }
        dp[full as usize].take().expect("full mask computed")
    }

    /// Bareiss elimination over the Laurent ring (an integral domain with
    /// exact division for the base rings in use).
    fn det_bareiss(&self) -> Result<LaurentPoly> {
        let n = self.rows;
        let mut m: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(self.ring);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero(self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    let q = num.exact_div(&prev).ok_or_else(|| {
                        Error::InternalAssertion("Bareiss division over Laurent ring failed".into())
                    })?;
                    m[i][j] = q;
                }
                m[i][k] = LaurentPoly::zero(self.ring);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
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
    use crate::laurent::poly::DEFAULT_DEGREE_CAP;

    fn z() -> BaseRing {
        BaseRing::Integers
    }

    fn trefoil_presentation() -> LaurentMatrix {
        // [[1, z-1], [1-z, z]]
        LaurentMatrix::new(
            z(),
            2,
            2,
            vec![
                LaurentPoly::one(z()),
                LaurentPoly::from_coeffs(z(), &[(1, 1), (0, -1)]),
                LaurentPoly::from_coeffs(z(), &[(0, 1), (1, -1)]),
                LaurentPoly::monomial(z(), 1, z().one()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trefoil_determinant() {
        let d = trefoil_presentation();
        let det = d.determinant(DEFAULT_DEGREE_CAP).unwrap();
        let expect = LaurentPoly::from_coeffs(z(), &[(2, 1), (1, -1), (0, 1)]);
        assert_eq!(det, expect);
    }

    #[test]
    fn augment_examples() {
        let d = trefoil_presentation();
        assert!(d.augment().is_identity());
        let m = LaurentMatrix::new(
            z(),
            1,
            1,
            vec![LaurentPoly::from_coeffs(z(), &[(0, 2), (1, -1)])],
        )
        .unwrap();
        assert_eq!(m.augment(), ExactMatrix::from_i64(z(), &[&[1]]));
    }

    #[test]
    fn det_multiplicative_on_random_3x3() {
        let mut seed = 17u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 5) as i64 - 2
        };
        for _ in 0..40 {
            let mut mk = |_: ()| {
                let mut m = LaurentMatrix::zero(z(), 3, 3);
                for i in 0..3 {
                    for j in 0..3 {
                        m.set(
                            i,
                            j,
                            LaurentPoly::from_coeffs(z(), &[(-2, next()), (0, next()), (2, next())]),
                        );
                    }
                }
                m
            };
            let a = mk(());
            let b = mk(());
            let lhs = a.mul(&b).unwrap().determinant(DEFAULT_DEGREE_CAP).unwrap();
            let rhs = a
                .determinant(DEFAULT_DEGREE_CAP)
                .unwrap()
                .mul(&b.determinant(DEFAULT_DEGREE_CAP).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bareiss_matches_dp_on_larger_sizes() {
        let mut seed = 23u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 3) as i64 - 1
        };
        for n in [9usize, 10] {
            let mut m = LaurentMatrix::zero(z(), n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, LaurentPoly::from_coeffs(z(), &[(0, next()), (1, next())]));
                }
            }
            let via_bareiss = m.det_bareiss().unwrap();
            // block expansion: compare against DP on a padded identity trick
            // (embed m in a block-diagonal with 1s so the DP path is exercised
            //  only on sizes <= 8 is not possible; instead compare Bareiss
            //  against the augmentation identity det(eps(m)) = eps(det m))
            assert_eq!(via_bareiss.augment(), m.augment().determinant().unwrap());
        }
        // and on small sizes both paths agree exactly
        for n in 2..=5usize {
            let mut m = LaurentMatrix::zero(z(), n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, LaurentPoly::from_coeffs(z(), &[(-1, next()), (1, next())]));
                }
            }
            assert_eq!(m.det_subset_dp(), m.det_bareiss().unwrap());
        }
    }

    #[test]
    fn degree_cap_is_enforced() {
        let mut m = LaurentMatrix::identity(z(), 2);
        m.set(0, 0, LaurentPoly::monomial(z(), 40, z().one()));
        m.set(1, 1, LaurentPoly::from_coeffs(z(), &[(0, 1), (40, 1)]));
        assert!(matches!(
            m.determinant(30),
            Err(Error::DegreeCapExceeded { .. })
        ));
    }
}
