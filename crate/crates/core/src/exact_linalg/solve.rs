//! Exact linear system solving: Gaussian elimination over fields,
//! Smith-style diagonalization over Z.

use num_traits::Signed;

use crate::error::{Error, Result};

use super::matrix::ExactMatrix;
use super::ring::{BaseRing, Scalar};

/// Diagonalization `d = row * a * col` with all four transforms tracked,
/// so callers never need to invert anything.
pub struct Diagonalization {
    pub d: ExactMatrix,
    pub row: ExactMatrix,
    pub row_inv: ExactMatrix,
    pub col: ExactMatrix,
    pub col_inv: ExactMatrix,
    pub rank: usize,
}

struct Work {
    ring: BaseRing,
    a: ExactMatrix,
    row: ExactMatrix,
    row_inv: ExactMatrix,
    col: ExactMatrix,
    col_inv: ExactMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.row] {
            for c in 0..m.cols() {
                let (x, y) = (m.get(i, c).clone(), m.get(j, c).clone());
                m.set(i, c, y);
                m.set(j, c, x);
            }
        }
        // inverse of a swap is the swap: column swap on row_inv
        let m = &mut self.row_inv;
        for r in 0..m.rows() {
            let (x, y) = (m.get(r, i).clone(), m.get(r, j).clone());
            m.set(r, i, y);
            m.set(r, j, x);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.col] {
            for r in 0..m.rows() {
                let (x, y) = (m.get(r, i).clone(), m.get(r, j).clone());
                m.set(r, i, y);
                m.set(r, j, x);
            }
        }
        let m = &mut self.col_inv;
        for c in 0..m.cols() {
            let (x, y) = (m.get(i, c).clone(), m.get(j, c).clone());
            m.set(i, c, y);
            m.set(j, c, x);
        }
    }

    /// row i -= f * row j  (and the matching updates to the transforms)
    fn add_row(&mut self, i: usize, j: usize, f: &Scalar) {
        let ring = self.ring;
        if ring.is_zero(f) {
            return;
        }
        for m in [&mut self.a, &mut self.row] {
            for c in 0..m.cols() {
                let v = ring.sub(m.get(i, c), &ring.mul(f, m.get(j, c)));
                m.set(i, c, v);
            }
        }
        // (L a)^-1 tracking: row_inv gets column j += f * column i
        let m = &mut self.row_inv;
        for r in 0..m.rows() {
            let v = ring.add(m.get(r, j), &ring.mul(f, m.get(r, i)));
            m.set(r, j, v);
        }
    }

    /// col i -= f * col j
    fn add_col(&mut self, i: usize, j: usize, f: &Scalar) {
        let ring = self.ring;
        if ring.is_zero(f) {
            return;
        }
        for m in [&mut self.a, &mut self.col] {
            for r in 0..m.rows() {
                let v = ring.sub(m.get(r, i), &ring.mul(f, m.get(r, j)));
                m.set(r, i, v);
            }
        }
        let m = &mut self.col_inv;
        for c in 0..m.cols() {
            let v = ring.add(m.get(j, c), &ring.mul(f, m.get(i, c)));
            m.set(j, c, v);
        }
    }

    fn scale_row(&mut self, i: usize, u: &Scalar) {
        let ring = self.ring;
        let uinv = ring.inv(u).expect("scale by unit");
        for m in [&mut self.a, &mut self.row] {
            for c in 0..m.cols() {
                m.set(i, c, ring.mul(u, m.get(i, c)));
            }
        }
        let m = &mut self.row_inv;
        for r in 0..m.rows() {
            m.set(r, i, ring.mul(&uinv, m.get(r, i)));
        }
    }
}

/// Diagonalize over the matrix ring: Euclidean pivoting over Z,
/// Gauss-Jordan over fields. Unit diagonal entries are normalized to 1.
pub fn diagonalize(a: &ExactMatrix) -> Diagonalization {
    let ring = a.ring();
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        ring,
        a: a.clone(),
        row: ExactMatrix::identity(ring, rows),
        row_inv: ExactMatrix::identity(ring, rows),
        col: ExactMatrix::identity(ring, cols),
        col_inv: ExactMatrix::identity(ring, cols),
    };
    let mut t = 0usize;
    while t < rows.min(cols) {
        // locate a pivot in the remaining block, smallest |value| over Z
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if ring.is_zero(w.a.get(i, j)) {
                    continue;
                }
                pivot = match (pivot, ring) {
                    (None, _) => Some((i, j)),
                    (Some((pi, pj)), BaseRing::Integers) => {
                        let cur = w.a.get(pi, pj).as_int().unwrap().abs();
                        let cand = w.a.get(i, j).as_int().unwrap().abs();
                        if cand < cur {
                            Some((i, j))
                        } else {
                            Some((pi, pj))
                        }
                    }
                    (some, _) => some,
                };
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        if ring.is_field() {
            let u = ring.inv(w.a.get(t, t)).unwrap();
            w.scale_row(t, &u);
            for i in t + 1..rows {
                let f = w.a.get(i, t).clone();
                w.add_row(i, t, &f);
            }
            for j in t + 1..cols {
                let f = w.a.get(t, j).clone();
                w.add_col(j, t, &f);
            }
            t += 1;
            continue;
        }
        // integer case: reduce until the pivot divides its row and column
        loop {
            let p = w.a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let v = w.a.get(i, t).clone();
                if ring.is_zero(&v) {
                    continue;
                }
                let q = int_quotient(&v, &p);
                w.add_row(i, t, &q);
                if !ring.is_zero(w.a.get(i, t)) {
                    // remainder strictly smaller: promote it to the pivot slot
                    w.swap_rows(t, i);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..cols {
                let v = w.a.get(t, j).clone();
                if ring.is_zero(&v) {
                    continue;
                }
                let q = int_quotient(&v, &p);
                w.add_col(j, t, &q);
                if !ring.is_zero(w.a.get(t, j)) {
                    w.swap_cols(t, j);
                    dirty = true;
                    break;
                }
            }
            if !dirty {
                break;
            }
        }
        // pivot now divides everything in its row/column; clear them
        let p = w.a.get(t, t).clone();
        for i in t + 1..rows {
            let v = w.a.get(i, t).clone();
            if let Some(q) = ring.exact_div(&v, &p) {
                w.add_row(i, t, &q);
            }
        }
        for j in t + 1..cols {
            let v = w.a.get(t, j).clone();
            if let Some(q) = ring.exact_div(&v, &p) {
                w.add_col(j, t, &q);
            }
        }
        if ring.is_unit(&p) && !ring.is_one(&p) {
            w.scale_row(t, &ring.inv(&p).unwrap());
        }
        t += 1;
    }
    Diagonalization {
        rank: t,
        d: w.a,
        row: w.row,
        row_inv: w.row_inv,
        col: w.col,
        col_inv: w.col_inv,
    }
}

/// Rounded quotient of integer scalars: the remainder magnitude is at most
/// half the pivot, which keeps the Euclidean loop from amplifying entries.
fn int_quotient(a: &Scalar, b: &Scalar) -> Scalar {
    let (x, y) = (a.as_int().unwrap(), b.as_int().unwrap());
    let (mut q, r) = num_integer::Integer::div_rem(x, y);
    let two_r = r.abs() * 2;
    if two_r > y.abs() {
        if (r >= num_bigint::BigInt::ZERO) == (y >= &num_bigint::BigInt::ZERO) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    Scalar::Int(q)
}

/// One exact solution X of `a * x = b` over the ring of `a`, or None when
/// the system has no solution over that ring.
pub fn solve_right(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "solve: {}x{} X = {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.ring() == BaseRing::Integers {
        // Rational elimination first: it settles inconsistency outright and,
        // when the solution is unique, integrality. Only genuinely
        // underdetermined systems reach the integer diagonalization.
        match solve_unique_rational(a, b)? {
            RationalOutcome::Inconsistent => return Ok(None),
            RationalOutcome::Unique(x) => return Ok(x.demote_to_int().ok()),
            RationalOutcome::Underdetermined => {}
        }
    }
    let ring = a.ring();
    let diag = diagonalize(a);
    // a x = b  <=>  d (col^-1 x) = row b
    let rb = diag.row.mul(b)?;
    let mut y = ExactMatrix::zero(ring, a.cols(), b.cols());
    for i in 0..a.rows() {
        let di = if i < diag.rank { diag.d.get(i, i).clone() } else { ring.zero() };
        for j in 0..b.cols() {
            let rhs = rb.get(i, j);
            if ring.is_zero(&di) {
                if !ring.is_zero(rhs) {
                    return Ok(None);
                }
            } else if i < y.rows() {
                match ring.exact_div(rhs, &di) {
                    Some(q) => y.set(i, j, q),
                    None => return Ok(None),
                }
            } else if !ring.is_zero(rhs) {
                return Ok(None);
            }
        }
    }
    Ok(Some(diag.col.mul(&y)?))
}

enum RationalOutcome {
    Inconsistent,
    Unique(ExactMatrix),
    Underdetermined,
}

/// Gaussian elimination of an integer system over the rationals.
fn solve_unique_rational(a: &ExactMatrix, b: &ExactMatrix) -> Result<RationalOutcome> {
    let q = BaseRing::Rationals;
    let mut m = a.promote(q);
    let mut rhs = b.promote(q);
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| !q.is_zero(m.get(r, col))) else {
            return Ok(RationalOutcome::Underdetermined);
        };
        if pr != row {
            for c in 0..cols {
                let (x, y) = (m.get(row, c).clone(), m.get(pr, c).clone());
                m.set(row, c, y);
                m.set(pr, c, x);
            }
            for c in 0..rhs.cols() {
                let (x, y) = (rhs.get(row, c).clone(), rhs.get(pr, c).clone());
                rhs.set(row, c, y);
                rhs.set(pr, c, x);
            }
        }
        let pinv = q.inv(m.get(row, col)).expect("nonzero pivot");
        for c in col..cols {
            m.set(row, c, q.mul(m.get(row, c), &pinv));
        }
        for c in 0..rhs.cols() {
            rhs.set(row, c, q.mul(rhs.get(row, c), &pinv));
        }
        for r in 0..rows {
            if r == row || q.is_zero(m.get(r, col)) {
                continue;
            }
            let f = m.get(r, col).clone();
            for c in col..cols {
                let v = q.sub(m.get(r, c), &q.mul(&f, m.get(row, c)));
                m.set(r, c, v);
            }
            for c in 0..rhs.cols() {
                let v = q.sub(rhs.get(r, c), &q.mul(&f, rhs.get(row, c)));
                rhs.set(r, c, v);
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if pivot_col_of_row.len() < cols {
        return Ok(RationalOutcome::Underdetermined);
    }
    // full column rank: remaining rows must have zero right-hand side
    for r in row..rows {
        for c in 0..rhs.cols() {
            if !q.is_zero(rhs.get(r, c)) {
                return Ok(RationalOutcome::Inconsistent);
            }
        }
    }
    let mut x = ExactMatrix::zero(q, cols, rhs.cols());
    for (r, &col) in pivot_col_of_row.iter().enumerate() {
        for c in 0..rhs.cols() {
            x.set(col, c, rhs.get(r, c).clone());
        }
    }
    Ok(RationalOutcome::Unique(x))
}

/// One exact solution of `x * a = b`.
pub fn solve_left(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    let at = a.transpose_conjugate();
    let bt = b.transpose_conjugate();
    Ok(solve_right(&at, &bt)?.map(|x| x.transpose_conjugate()))
}

/// One term `l * X * r` of a linear matrix constraint.
pub struct MatTerm<'a> {
    pub left: &'a ExactMatrix,
    pub right: &'a ExactMatrix,
}

/// A single constraint `sum_i l_i X r_i = rhs`.
pub struct MatConstraint<'a> {
    pub terms: Vec<MatTerm<'a>>,
    pub rhs: &'a ExactMatrix,
}

/// Solve a system of linear matrix constraints for an unknown `X` of shape
/// `x_rows x x_cols`, by Kronecker flattening (column-major vectorization:
/// vec(l X r) = (r^T (x) l) vec(X)).
pub fn solve_matrix_system(
    x_rows: usize,
    x_cols: usize,
    constraints: &[MatConstraint<'_>],
) -> Result<Option<ExactMatrix>> {
    let ring = constraints
        .first()
        .map(|c| c.rhs.ring())
        .expect("at least one constraint");
    let unknowns = x_rows * x_cols;
    let mut blocks: Vec<ExactMatrix> = Vec::new();
    let mut rhs_blocks: Vec<ExactMatrix> = Vec::new();
    for c in constraints {
        let mut block: Option<ExactMatrix> = None;
        for term in &c.terms {
            debug_assert_eq!(term.left.cols(), x_rows);
            debug_assert_eq!(term.right.rows(), x_cols);
            let k = term.right.transpose_conjugate().kron(term.left);
            block = Some(match block {
                None => k,
                Some(acc) => acc.add(&k)?,
            });
        }
        let block = block.expect("constraint with no terms");
        debug_assert_eq!(block.cols(), unknowns);
        blocks.push(block);
        rhs_blocks.push(vectorize(c.rhs));
    }
    let total_rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut a = ExactMatrix::zero(ring, total_rows, unknowns);
    let mut b = ExactMatrix::zero(ring, total_rows, 1);
    let mut r0 = 0;
    for (blk, rb) in blocks.iter().zip(&rhs_blocks) {
        for i in 0..blk.rows() {
            for j in 0..blk.cols() {
                a.set(r0 + i, j, blk.get(i, j).clone());
            }
            b.set(r0 + i, 0, rb.get(i, 0).clone());
        }
        r0 += blk.rows();
    }
    Ok(solve_right(&a, &b)?.map(|v| unvectorize(&v, x_rows, x_cols)))
}

/// Column-major vectorization.
fn vectorize(m: &ExactMatrix) -> ExactMatrix {
    let mut out = ExactMatrix::zero(m.ring(), m.rows() * m.cols(), 1);
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            out.set(j * m.rows() + i, 0, m.get(i, j).clone());
        }
    }
    out
}

fn unvectorize(v: &ExactMatrix, rows: usize, cols: usize) -> ExactMatrix {
    let mut out = ExactMatrix::zero(v.ring(), rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            out.set(i, j, v.get(j * rows + i, 0).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> BaseRing {
        BaseRing::Integers
    }

    #[test]
    fn diagonalize_tracks_transforms() {
        let a = ExactMatrix::from_i64(z(), &[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let d = diagonalize(&a);
        assert_eq!(d.row.mul(&a).unwrap().mul(&d.col).unwrap(), d.d);
        assert!(d.row.mul(&d.row_inv).unwrap().is_identity());
        assert!(d.col.mul(&d.col_inv).unwrap().is_identity());
        // transforms unimodular
        assert!(z().is_unit(&d.row.determinant().unwrap()));
        assert!(z().is_unit(&d.col.determinant().unwrap()));
    }

    #[test]
    fn solve_left_inverse_example() {
        let a = ExactMatrix::from_i64(z(), &[&[0, 1], &[-1, 0]]);
        let id = ExactMatrix::identity(z(), 2);
        let x = solve_left(&a, &id).unwrap().unwrap();
        assert_eq!(x, ExactMatrix::from_i64(z(), &[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn solve_scalar_divisibility() {
        let two = ExactMatrix::from_i64(z(), &[&[2]]);
        let b2 = ExactMatrix::from_i64(z(), &[&[2]]);
        let x = solve_right(&two, &b2).unwrap().unwrap();
        assert_eq!(x, ExactMatrix::from_i64(z(), &[&[1]]));
        let b1 = ExactMatrix::from_i64(z(), &[&[1]]);
        assert!(solve_right(&two, &b1).unwrap().is_none());
        let over_q = solve_right(&two.promote(BaseRing::Rationals), &b1.promote(BaseRing::Rationals))
            .unwrap()
            .unwrap();
        assert_eq!(over_q.get(0, 0), &BaseRing::Rationals.parse("1/2").unwrap());
    }

    #[test]
    fn solve_random_consistent_systems() {
        let mut seed = 3u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 5) as i64 - 2
        };
        for _ in 0..50 {
            let a_rows: Vec<Vec<i64>> = (0..3).map(|_| (0..2).map(|_| next()).collect()).collect();
            let x_rows: Vec<Vec<i64>> = (0..2).map(|_| (0..2).map(|_| next()).collect()).collect();
            let slices: Vec<&[i64]> = a_rows.iter().map(|r| r.as_slice()).collect();
            let a = ExactMatrix::from_i64(z(), &slices);
            let slices: Vec<&[i64]> = x_rows.iter().map(|r| r.as_slice()).collect();
            let x = ExactMatrix::from_i64(z(), &slices);
            let b = a.mul(&x).unwrap();
            let got = solve_right(&a, &b).unwrap().expect("consistent by construction");
            assert_eq!(a.mul(&got).unwrap(), b);
        }
    }

    #[test]
    fn matrix_system_intertwiner() {
        // solve e1 X = X e0 with a known solution space
        let e0 = ExactMatrix::from_i64(z(), &[&[0, 1], &[0, 0]]);
        let e1 = e0.clone();
        let zero = ExactMatrix::zero(z(), 2, 2);
        let sol = solve_matrix_system(
            2,
            2,
            &[MatConstraint {
                terms: vec![
                    MatTerm { left: &e1, right: &ExactMatrix::identity(z(), 2) },
                    MatTerm { left: &ExactMatrix::identity(z(), 2).neg(), right: &e0 },
                ],
                rhs: &zero,
            }],
        )
        .unwrap()
        .unwrap();
        assert_eq!(e1.mul(&sol).unwrap(), sol.mul(&e0).unwrap());
    }
}
