//! Seifert modules (P,e), their morphisms and duals, near-projection
//! detection, and the unipotent/nilpotent splitting.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_linalg::{split_idempotent, BaseRing, ExactMatrix, IdempotentSplit, Scalar};
use crate::laurent::{LaurentMatrix, LaurentPoly};

/// A free module of the given rank together with an endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertModule {
    ring: BaseRing,
    rank: usize,
    e: ExactMatrix,
}

impl SeifertModule {
    pub fn new(ring: BaseRing, e: ExactMatrix) -> Result<Self> {
        if !e.is_square() {
            return Err(Error::NotSquare(e.rows(), e.cols()));
        }
        if e.ring() != ring {
            return Err(Error::RingMismatch(ring.to_string(), e.ring().to_string()));
        }
        Ok(SeifertModule { ring, rank: e.rows(), e })
    }

    pub fn zero_module(ring: BaseRing) -> Self {
        SeifertModule { ring, rank: 0, e: ExactMatrix::zero(ring, 0, 0) }
    }

    pub fn from_i64(ring: BaseRing, e: &[&[i64]]) -> Self {
        Self::new(ring, ExactMatrix::from_i64(ring, e)).expect("square input")
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn endomorphism(&self) -> &ExactMatrix {
        &self.e
    }

    /// 1 - e
    pub fn complement(&self) -> ExactMatrix {
        ExactMatrix::identity(self.ring, self.rank).sub(&self.e).expect("same shape")
    }

    /// e(1 - e), the kernel-detecting endomorphism.
    pub fn e_one_minus_e(&self) -> ExactMatrix {
        self.e.mul(&self.complement()).expect("square")
    }

    /// The dual module (P*, 1 - e*).
    pub fn dual(&self) -> SeifertModule {
        let et = self.e.transpose_conjugate();
        let e = ExactMatrix::identity(self.ring, self.rank).sub(&et).expect("same shape");
        SeifertModule { ring: self.ring, rank: self.rank, e }
    }

    /// Block direct sum.
    pub fn direct_sum(&self, other: &SeifertModule) -> Result<SeifertModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(SeifertModule {
            ring: self.ring,
            rank: self.rank + other.rank,
            e: self.e.block_diag(&other.e)?,
        })
    }

    /// The covering presentation 1 - e + z e over the Laurent ring.
    pub fn covering_matrix(&self) -> LaurentMatrix {
        let mut d = LaurentMatrix::zero(self.ring, self.rank, self.rank);
        let one_minus_e = self.complement();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let mut p = LaurentPoly::constant(self.ring, one_minus_e.get(i, j).clone());
                p.add_term(1, self.e.get(i, j).clone());
                d.set(i, j, p);
            }
        }
        d
    }

    /// Least k <= rank with (e(1-e))^k = 0, i.e. the exponent certifying
    /// that the covering Blanchfield module vanishes.
    pub fn near_projection_index(&self) -> Option<usize> {
        self.e_one_minus_e()
            .nilpotency_index()
            .expect("square by construction")
    }

    pub fn is_near_projection(&self) -> bool {
        self.near_projection_index().is_some()
    }
}

/// A module map g with e' g = g e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMorphism {
    source: SeifertModule,
    target: SeifertModule,
    g: ExactMatrix,
}

impl SeifertMorphism {
    pub fn new(source: SeifertModule, target: SeifertModule, g: ExactMatrix) -> Result<Self> {
        if g.rows() != target.rank() || g.cols() != source.rank() || g.ring() != source.ring() {
            return Err(Error::ShapeMismatch(format!(
                "morphism matrix {}x{} between rank {} and rank {}",
                g.rows(),
                g.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let lhs = target.endomorphism().mul(&g)?;
        let rhs = g.mul(source.endomorphism())?;
        if lhs != rhs {
            return Err(Error::NotIntertwining);
        }
        Ok(SeifertMorphism { source, target, g })
    }

    pub fn identity(m: &SeifertModule) -> Self {
        SeifertMorphism {
            source: m.clone(),
            target: m.clone(),
            g: ExactMatrix::identity(m.ring(), m.rank()),
        }
    }

    pub fn source(&self) -> &SeifertModule {
        &self.source
    }

    pub fn target(&self) -> &SeifertModule {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.g
    }

    pub fn compose(&self, first: &SeifertMorphism) -> Result<SeifertMorphism> {
        if first.target != self.source {
            return Err(Error::SourceTargetMismatch);
        }
        Ok(SeifertMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            g: self.g.mul(&first.g)?,
        })
    }

    /// The dual morphism g*: (P'*, 1-e'*) -> (P*, 1-e*).
    pub fn dual(&self) -> SeifertMorphism {
        SeifertMorphism {
            source: self.target.dual(),
            target: self.source.dual(),
            g: self.g.transpose_conjugate(),
        }
    }
}

/// The coefficients of pi_k with x^k + (1-x)^k = 1 + x(1-x) pi_k(x).
pub fn pi_k_coefficients(k: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    if k < 2 {
        return out;
    }
    // binomial row C(k-1, j)
    let mut binom = BigInt::from(1);
    for j in 1..k {
        binom = &binom * BigInt::from((k - j) as i64) / BigInt::from(j as i64);
        let signed = if j % 2 == 1 { -&binom } else { binom.clone() };
        out.push(signed - BigInt::from(1));
    }
    out
}

/// Evaluate pi_k at a square matrix.
pub fn pi_k_at(k: usize, m: &ExactMatrix) -> ExactMatrix {
    let ring = m.ring();
    let n = m.rows();
    let mut acc = ExactMatrix::zero(ring, n, n);
    let mut power = ExactMatrix::identity(ring, n);
    for (j, c) in pi_k_coefficients(k).iter().enumerate() {
        if j > 0 {
            power = power.mul(m).expect("square");
        }
        let coeff = match ring {
            BaseRing::Integers => Scalar::Int(c.clone()),
            _ => ring.promote_int(c),
        };
        acc = acc.add(&power.scale(&coeff)).expect("same shape");
    }
    acc
}

/// The unipotent (+) and nilpotent (-) pieces of a split near-projection.
#[derive(Debug, Clone)]
pub struct NearProjectionSplit {
    pub k: usize,
    /// pi_k(e)
    pub pi_k: ExactMatrix,
    /// the projection (e^k + (1-e)^k)^{-1} e^k
    pub projector: ExactMatrix,
    pub plus: SeifertModule,
    pub plus_split: IdempotentSplit,
    pub minus: SeifertModule,
    pub minus_split: IdempotentSplit,
}

/// Split a near-projection (P,e) as (P+,e+) (+) (P-,e-) with 1-e+ and e-
/// nilpotent.
pub fn split_near_projection(m: &SeifertModule) -> Result<NearProjectionSplit> {
    let Some(k) = m.near_projection_index() else {
        return Err(Error::NotNearProjection);
    };
    let ring = m.ring();
    let n = m.rank();
    if n == 0 || k == 0 {
        let split = split_idempotent(&ExactMatrix::identity(ring, n))?;
        return Ok(NearProjectionSplit {
            k,
            pi_k: ExactMatrix::zero(ring, n, n),
            projector: ExactMatrix::identity(ring, n),
            plus: m.clone(),
            plus_split: split.clone(),
            minus: SeifertModule::zero_module(ring),
            minus_split: split_idempotent(&ExactMatrix::zero(ring, n, n))?,
        });
    }
    let e = m.endomorphism();
    let one_minus_e = m.complement();
    let ek = e.pow(k)?;
    let cek = one_minus_e.pow(k)?;
    let a = ek.add(&cek)?;
    let pi = pi_k_at(k, e);
    // self-check of the binomial identity e^k + (1-e)^k = 1 + e(1-e) pi_k(e)
    let check = ExactMatrix::identity(ring, n).add(&m.e_one_minus_e().mul(&pi)?)?;
    if check != a {
        return Err(Error::InternalAssertion(
            "binomial identity for pi_k failed".into(),
        ));
    }
    let p = a.inverse()?.mul(&ek)?;
    if p.mul(&p)? != p {
        return Err(Error::InternalAssertion("near-projection p is not idempotent".into()));
    }
    if p.mul(e)? != e.mul(&p)? {
        return Err(Error::InternalAssertion("p does not commute with e".into()));
    }
    let plus_split = split_idempotent(&p)?;
    let comp = ExactMatrix::identity(ring, n).sub(&p)?;
    let minus_split = split_idempotent(&comp)?;
    let restrict = |s: &IdempotentSplit| -> Result<SeifertModule> {
        let e_res = s.section.mul(e)?.mul(&s.image_basis)?;
        SeifertModule::new(ring, e_res)
    };
    let plus = restrict(&plus_split)?;
    let minus = restrict(&minus_split)?;
    // exponent checks from the splitting
    let one_minus_eplus = plus.complement();
    if !one_minus_eplus.pow(k)?.is_zero_matrix() {
        return Err(Error::InternalAssertion("(1 - e+)^k != 0".into()));
    }
    if !minus.endomorphism().pow(k)?.is_zero_matrix() {
        return Err(Error::InternalAssertion("(e-)^k != 0".into()));
    }
    if plus.rank() + minus.rank() != n {
        return Err(Error::InternalAssertion("rank additivity failed".into()));
    }
    Ok(NearProjectionSplit {
        k,
        pi_k: pi,
        projector: p,
        plus,
        plus_split,
        minus,
        minus_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::DEFAULT_DEGREE_CAP;

    fn z() -> BaseRing {
        BaseRing::Integers
    }

    pub(crate) fn trefoil_module() -> SeifertModule {
        SeifertModule::from_i64(z(), &[&[0, 1], &[-1, 1]])
    }

    #[test]
    fn pi_k_small_values() {
        assert!(pi_k_coefficients(1).is_empty());
        assert_eq!(pi_k_coefficients(2), vec![BigInt::from(-2)]);
        assert_eq!(pi_k_coefficients(3), vec![BigInt::from(-3), BigInt::from(0)]);
        assert_eq!(
            pi_k_coefficients(4),
            vec![BigInt::from(-4), BigInt::from(2), BigInt::from(-2)]
        );
    }

    #[test]
    fn morphism_validation() {
        let m = trefoil_module();
        let e = m.endomorphism().clone();
        assert!(SeifertMorphism::new(m.clone(), m.clone(), e).is_ok());
        let other = SeifertModule::from_i64(z(), &[&[1, 0], &[0, 0]]);
        let id = ExactMatrix::identity(z(), 2);
        assert!(matches!(
            SeifertMorphism::new(m.clone(), other, id),
            Err(Error::NotIntertwining)
        ));
        let one_minus_e = m.complement();
        assert!(SeifertMorphism::new(m.clone(), m.clone(), one_minus_e).is_ok());
    }

    #[test]
    fn dual_module_examples() {
        let zero_endo = SeifertModule::from_i64(z(), &[&[0, 0], &[0, 0]]);
        assert_eq!(
            zero_endo.dual().endomorphism(),
            &ExactMatrix::identity(z(), 2)
        );
        let tref = trefoil_module();
        let expect = ExactMatrix::from_i64(z(), &[&[1, 1], &[-1, 0]]);
        assert_eq!(tref.dual().endomorphism(), &expect);
        assert_eq!(tref.dual().dual(), tref);
    }

    #[test]
    fn dual_morphism_reverses_composition() {
        let m = trefoil_module();
        let f = SeifertMorphism::new(m.clone(), m.clone(), m.endomorphism().clone()).unwrap();
        let g = SeifertMorphism::new(m.clone(), m.clone(), m.complement()).unwrap();
        let fg = f.compose(&g).unwrap();
        let dual_fg = fg.dual();
        let expect = g.dual().compose(&f.dual()).unwrap();
        assert_eq!(dual_fg, expect);
        let id = SeifertMorphism::identity(&m);
        assert_eq!(id.dual(), SeifertMorphism::identity(&m.dual()));
    }

    #[test]
    fn near_projection_examples() {
        let strict = SeifertModule::from_i64(z(), &[&[0, 1], &[0, 0]]);
        assert_eq!(strict.near_projection_index(), Some(2));
        let idem = SeifertModule::from_i64(z(), &[&[1, 0], &[0, 0]]);
        assert_eq!(idem.near_projection_index(), Some(1));
        assert_eq!(trefoil_module().near_projection_index(), None);
        assert!(trefoil_module().e_one_minus_e().is_identity());
    }

    #[test]
    fn split_examples() {
        let ring = z();
        let nil = SeifertModule::new(ring, ExactMatrix::zero(ring, 2, 2)).unwrap();
        let s = split_near_projection(&nil).unwrap();
        assert_eq!(s.plus.rank(), 0);
        assert_eq!(s.minus.rank(), 2);

        let uni = SeifertModule::new(ring, ExactMatrix::identity(ring, 2)).unwrap();
        let s = split_near_projection(&uni).unwrap();
        assert_eq!(s.plus.rank(), 2);
        assert_eq!(s.minus.rank(), 0);

        let proj = SeifertModule::from_i64(ring, &[&[1, 0], &[0, 0]]);
        let s = split_near_projection(&proj).unwrap();
        assert_eq!(s.plus.rank(), 1);
        assert_eq!(s.minus.rank(), 1);
        assert_eq!(s.projector, proj.endomorphism().clone());

        assert!(matches!(
            split_near_projection(&trefoil_module()),
            Err(Error::NotNearProjection)
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let a = trefoil_module();
        let zero = SeifertModule::zero_module(z());
        assert_eq!(a.direct_sum(&zero).unwrap(), a);
        let b = SeifertModule::from_i64(z(), &[&[0]]);
        let c = SeifertModule::from_i64(z(), &[&[1]]);
        let sum = b.direct_sum(&c).unwrap();
        assert_eq!(sum.endomorphism(), &ExactMatrix::from_i64(z(), &[&[0, 0], &[0, 1]]));
        let tt = a.direct_sum(&a).unwrap();
        assert_eq!(tt.rank(), 4);
    }

    #[test]
    fn near_projection_iff_unit_covering_determinant() {
        // Random modules: vanishing covering <=> det(1-e+ze) = +-z^m.
        let mut seed = 41u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as i64
        };
        let mut near = 0usize;
        for _ in 0..500 {
            let n = 1 + (next() as usize % 4);
            let rows: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| next() % 5 - 2).collect()).collect();
            let slices: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = SeifertModule::from_i64(z(), &slices);
            let det = m.covering_matrix().determinant(DEFAULT_DEGREE_CAP).unwrap();
            let is_np = m.is_near_projection();
            assert_eq!(is_np, det.is_unit(), "e = {}", m.endomorphism());
            if is_np {
                near += 1;
                let s = split_near_projection(&m).unwrap();
                assert_eq!(s.plus.rank() + s.minus.rank(), n);
            }
        }
        // the corpus must actually contain some near-projections
        assert!(near > 0);
    }
}
