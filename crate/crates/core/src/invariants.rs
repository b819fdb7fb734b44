//! Witt-class invariants computed from Seifert forms, and the built-in
//! table of classical knots.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact_linalg::{BaseRing, ExactMatrix, Scalar};
use crate::forms::{Eta, SeifertForm};
use crate::laurent::{LaurentPoly, DEFAULT_DEGREE_CAP};

/// Normalize a presentation determinant to the Alexander convention:
/// lowest degree 0 and value 1 at z = 1 (achieved by the unique unit
/// +-z^m over Z whenever p(1) is a unit; over other rings the value at 1
/// is scaled away when invertible).
pub fn normalize_alexander(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let ring = p.ring();
    let shifted = p.shift(-p.min_degree().unwrap());
    let at_one = shifted.augment();
    match ring.inv(&at_one) {
        Some(u) => shifted.scale(&u),
        None => shifted,
    }
}

/// The Alexander polynomial det(1 - e + z e) of a nonsingular form,
/// normalized so that p(1) = 1 and the lowest degree is 0.
pub fn alexander(f: &SeifertForm) -> Result<LaurentPoly> {
    alexander_capped(f, DEFAULT_DEGREE_CAP)
}

pub fn alexander_capped(f: &SeifertForm, cap: i64) -> Result<LaurentPoly> {
    if !f.is_nonsingular() {
        return Err(Error::SingularForm("alexander requires a nonsingular form".into()));
    }
    let det = f.module().covering_matrix().determinant(cap)?;
    Ok(normalize_alexander(&det))
}

/// Signature of theta + theta^T for eta = +1 forms, by exact congruence
/// diagonalization over the rationals.
pub fn signature(f: &SeifertForm) -> Result<i64> {
    if f.eta() != Eta::Plus {
        return Err(Error::WrongEta);
    }
    let sym = f.pairing().add(&f.pairing().transpose_conjugate())?;
    symmetric_signature(&sym)
}

/// Signature of a symmetric matrix over Z or Q (degenerate part counts 0).
pub fn symmetric_signature(sym: &ExactMatrix) -> Result<i64> {
    if !sym.is_square() {
        return Err(Error::NotSquare(sym.rows(), sym.cols()));
    }
    if sym != &sym.transpose_conjugate() {
        return Err(Error::ShapeMismatch("signature of a non-symmetric matrix".into()));
    }
    let q = BaseRing::Rationals;
    let mut m = match sym.ring() {
        BaseRing::Integers => sym.promote(q),
        BaseRing::Rationals => sym.clone(),
        BaseRing::PrimeField(_) => {
            return Err(Error::ShapeMismatch("signature needs an ordered ring".into()))
        }
    };
    let n = m.rows();
    let mut sig = 0i64;
    let mut used = vec![false; n];
    for _ in 0..n {
        // pick a nonzero diagonal pivot, creating one if necessary
        let mut pivot = (0..n).find(|&i| !used[i] && !q.is_zero(m.get(i, i)));
        if pivot.is_none() {
            'outer: for i in 0..n {
                if used[i] {
                    continue;
                }
                for j in 0..n {
                    if used[j] || j == i {
                        continue;
                    }
                    if !q.is_zero(m.get(i, j)) {
                        // row/col i += row/col j turns 2 m_ij into the diagonal
                        for c in 0..n {
                            let v = q.add(m.get(i, c), m.get(j, c));
                            m.set(i, c, v);
                        }
                        for r in 0..n {
                            let v = q.add(m.get(r, i), m.get(r, j));
                            m.set(r, i, v);
                        }
                        pivot = Some(i);
                        break 'outer;
                    }
                }
            }
        }
        let Some(pi) = pivot else { break };
        used[pi] = true;
        let d = m.get(pi, pi).clone();
        match &d {
            Scalar::Rat(x) => {
                if x.is_positive() {
                    sig += 1;
                } else {
                    sig -= 1;
                }
            }
            _ => unreachable!("promoted to rationals"),
        }
        // clear row/column pi against the pivot
        let dinv = q.inv(&d).expect("nonzero pivot");
        for r in 0..n {
            if used[r] || q.is_zero(m.get(r, pi)) {
                continue;
            }
            let factor = q.mul(m.get(r, pi), &dinv);
            for c in 0..n {
                let v = q.sub(m.get(r, c), &q.mul(&factor, m.get(pi, c)));
                m.set(r, c, v);
            }
            for c in 0..n {
                let v = q.sub(m.get(c, r), &q.mul(&factor, m.get(c, pi)));
                m.set(c, r, v);
            }
        }
    }
    Ok(sig)
}

/// |Delta(-1)|, the determinant invariant of the form.
pub fn determinant_invariant(f: &SeifertForm) -> Result<BigInt> {
    determinant_invariant_capped(f, DEFAULT_DEGREE_CAP)
}

pub fn determinant_invariant_capped(f: &SeifertForm, cap: i64) -> Result<BigInt> {
    let alex = alexander_capped(f, cap)?;
    let at_minus_one = alex
        .eval(&f.ring().from_i64(-1))
        .expect("-1 is a unit in all base rings");
    match at_minus_one {
        Scalar::Int(v) => Ok(v.abs()),
        Scalar::Rat(v) => Ok((v.numer() / v.denom()).abs()),
        Scalar::Fp(v) => Ok(BigInt::from(v)),
    }
}

/// A named Seifert matrix from the built-in table.
#[derive(Debug, Clone)]
pub struct KnotRecord {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    seifert_rows: &'static [&'static [i64]],
    pub eta: Eta,
}

impl KnotRecord {
    pub fn seifert_matrix(&self, ring: BaseRing) -> ExactMatrix {
        ExactMatrix::from_i64(ring, self.seifert_rows)
    }

    pub fn form(&self, ring: BaseRing) -> Result<SeifertForm> {
        SeifertForm::from_pairing(ring, self.seifert_matrix(ring), self.eta)
    }
}

const TABLE: &[KnotRecord] = &[
    KnotRecord {
        name: "unknot",
        aliases: &["0_1"],
        seifert_rows: &[],
        eta: Eta::Plus,
    },
    KnotRecord {
        name: "trefoil",
        aliases: &["3_1"],
        seifert_rows: &[&[-1, 1], &[0, -1]],
        eta: Eta::Plus,
    },
    KnotRecord {
        name: "figure_eight",
        aliases: &["4_1", "figure-eight"],
        seifert_rows: &[&[1, 1], &[0, -1]],
        eta: Eta::Plus,
    },
];

pub fn knot_table() -> &'static [KnotRecord] {
    TABLE
}

pub fn lookup_knot(name: &str) -> Option<&'static KnotRecord> {
    let lower = name.to_ascii_lowercase();
    TABLE
        .iter()
        .find(|k| k.name == lower || k.aliases.iter().any(|a| *a == lower))
}

/// Invariants of one form, with size and timing metadata.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub alexander: LaurentPoly,
    pub signature: Option<i64>,
    pub determinant: BigInt,
    pub rank: usize,
    pub elapsed_micros: u128,
}

pub fn invariant_report(f: &SeifertForm) -> Result<InvariantReport> {
    invariant_report_capped(f, DEFAULT_DEGREE_CAP)
}

pub fn invariant_report_capped(f: &SeifertForm, cap: i64) -> Result<InvariantReport> {
    let start = std::time::Instant::now();
    let alexander = alexander_capped(f, cap)?;
    // the signature needs an ordered coefficient ring and eta = +1
    let signature = match (f.eta(), f.ring()) {
        (Eta::Plus, BaseRing::Integers | BaseRing::Rationals) => Some(signature(f)?),
        _ => None,
    };
    let determinant = determinant_invariant(f)?;
    Ok(InvariantReport {
        alexander,
        signature,
        determinant,
        rank: f.rank(),
        elapsed_micros: start.elapsed().as_micros(),
    })
}

/// Independent oracle for the Alexander polynomial: det(theta^T - z theta),
/// agreeing with det(1 - e + ze) up to a unit.
pub fn alexander_oracle(f: &SeifertForm) -> Result<LaurentPoly> {
    let ring = f.ring();
    let n = f.rank();
    let mut m = crate::laurent::LaurentMatrix::zero(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let mut p = LaurentPoly::constant(ring, ring.involute(f.pairing().get(j, i)));
            p.add_term(1, ring.neg(f.pairing().get(i, j)));
            m.set(i, j, p);
        }
    }
    Ok(normalize_alexander(&m.determinant(DEFAULT_DEGREE_CAP)?))
}
