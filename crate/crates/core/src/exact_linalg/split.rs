//! Splitting an idempotent into a free direct summand with an explicit
//! basis and section.

use crate::error::{Error, Result};

use super::matrix::ExactMatrix;
use super::solve::diagonalize;

/// Image of an idempotent, rebased as a free summand.
///
/// `image_basis` (n x r) has columns spanning im(projector) as a direct
/// summand, `section` (r x n) satisfies
/// `image_basis * section = projector` and `section * image_basis = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSplit {
    pub projector: ExactMatrix,
    pub image_basis: ExactMatrix,
    pub section: ExactMatrix,
}

impl IdempotentSplit {
    pub fn rank(&self) -> usize {
        self.image_basis.cols()
    }
}

/// Split a square idempotent `p` as `image_basis * section` with
/// `section * image_basis = 1_r`. Over Z this uses the fact that the image
/// of an idempotent is a direct summand, so every elementary divisor is 1.
pub fn split_idempotent(p: &ExactMatrix) -> Result<IdempotentSplit> {
    if !p.is_square() {
        return Err(Error::NotSquare(p.rows(), p.cols()));
    }
    if p.mul(p)? != *p {
        return Err(Error::NotIdempotent);
    }
    let ring = p.ring();
    let n = p.rows();
    let diag = diagonalize(p);
    let r = diag.rank;
    // p = row_inv * d * col_inv with unit diagonal entries d_0..d_{r-1}
    let mut basis = ExactMatrix::zero(ring, n, r);
    let mut section = ExactMatrix::zero(ring, r, n);
    for t in 0..r {
        let dt = diag.d.get(t, t).clone();
        debug_assert!(
            ring.is_unit(&dt),
            "idempotent image must be a free summand (elementary divisor {dt})"
        );
        for i in 0..n {
            basis.set(i, t, diag.row_inv.get(i, t).clone());
        }
        for j in 0..n {
            section.set(t, j, ring.mul(&dt, diag.col_inv.get(t, j)));
        }
    }
    let split = IdempotentSplit { projector: p.clone(), image_basis: basis, section };
    debug_assert_eq!(split.image_basis.mul(&split.section)?, *p);
    debug_assert!(split.section.mul(&split.image_basis)?.is_identity());
    Ok(split)
}
