//! Deterministic seeded generator for the randomized campaigns. A fixed
//! splitmix64 keeps every corpus reproducible from the command-line seed.

use crate::exact_linalg::{BaseRing, ExactMatrix};
use crate::forms::{Eta, SeifertForm};
use crate::seifert::SeifertModule;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, n).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform integer in [lo, hi] inclusive.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// Random matrix with entries in [lo, hi].
pub fn random_matrix(rng: &mut SplitMix64, ring: BaseRing, rows: usize, cols: usize, lo: i64, hi: i64) -> ExactMatrix {
    let mut m = ExactMatrix::zero(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, ring.from_i64(rng.range(lo, hi)));
        }
    }
    m
}

/// Unimodular matrix built from elementary shears.
pub fn random_unimodular(rng: &mut SplitMix64, ring: BaseRing, n: usize, shears: usize) -> ExactMatrix {
    let mut u = ExactMatrix::identity(ring, n);
    if n < 2 {
        return u;
    }
    for _ in 0..shears {
        let i = rng.below(n as u64) as usize;
        let mut j = rng.below(n as u64) as usize;
        if i == j {
            j = (j + 1) % n;
        }
        let mut el = ExactMatrix::identity(ring, n);
        el.set(i, j, ring.from_i64(rng.range(-2, 2)));
        u = u.mul(&el).expect("square");
    }
    u
}

/// Random Seifert module with entries in [-2, 2].
pub fn random_module(rng: &mut SplitMix64, ring: BaseRing, rank: usize) -> SeifertModule {
    SeifertModule::new(ring, random_matrix(rng, ring, rank, rank, -2, 2)).expect("square")
}

/// Random nonsingular Seifert form over Z: draw theta until the defect is
/// unimodular. Only even ranks occur (odd-size skew matrices are singular
/// for eta = +1, and even symmetric matrices have even determinant in odd
/// size for eta = -1).
pub fn random_nonsingular_form(
    rng: &mut SplitMix64,
    max_rank: usize,
    eta: Eta,
) -> SeifertForm {
    let ring = BaseRing::Integers;
    let even_choices: Vec<usize> = (1..=max_rank / 2).map(|k| 2 * k).collect();
    let rank = if even_choices.is_empty() {
        2
    } else {
        even_choices[rng.below(even_choices.len() as u64) as usize]
    };
    loop {
        let theta = random_matrix(rng, ring, rank, rank, -2, 2);
        if let Ok(f) = SeifertForm::from_pairing(ring, theta, eta) {
            return f;
        }
    }
}

/// A singular near-projection pad (zero pairing) with balanced nilpotent
/// and unipotent halves, optionally conjugated to hide the block shape.
pub fn random_balanced_pad(rng: &mut SplitMix64, eta: Eta, half_rank: usize) -> SeifertForm {
    let ring = BaseRing::Integers;
    let r = half_rank;
    let mut nil = ExactMatrix::zero(ring, r, r);
    for i in 0..r {
        for j in i + 1..r {
            nil.set(i, j, ring.from_i64(rng.range(-2, 2)));
        }
    }
    let mut uni = ExactMatrix::identity(ring, r);
    for i in 0..r {
        for j in i + 1..r {
            uni.set(i, j, ring.from_i64(rng.range(-2, 2)));
        }
    }
    let e = nil.block_diag(&uni).expect("same ring");
    // a light change of basis hides the block shape without inflating entries
    let mut u = ExactMatrix::identity(ring, 2 * r);
    for _ in 0..2 {
        let i = rng.below(2 * r as u64) as usize;
        let mut j = rng.below(2 * r as u64) as usize;
        if i == j {
            j = (j + 1) % (2 * r);
        }
        let mut el = ExactMatrix::identity(ring, 2 * r);
        el.set(i, j, ring.from_i64(rng.range(-1, 1)));
        u = u.mul(&el).unwrap();
    }
    let e = u.mul(&e).unwrap().mul(&u.inverse().unwrap()).unwrap();
    let module = SeifertModule::new(ring, e).expect("square");
    SeifertForm::new(module, ExactMatrix::zero(ring, 2 * r, 2 * r), eta).expect("zero pairing")
}

/// Base change of a form by a unimodular matrix:
/// theta -> u* theta u, e -> u^{-1} e u.
pub fn conjugate_form(f: &SeifertForm, u: &ExactMatrix) -> SeifertForm {
    let uinv = u.inverse().expect("unimodular");
    let e = uinv
        .mul(f.module().endomorphism())
        .unwrap()
        .mul(u)
        .unwrap();
    let theta = u
        .transpose_conjugate()
        .mul(f.pairing())
        .unwrap()
        .mul(u)
        .unwrap();
    let module = SeifertModule::new(f.ring(), e).expect("square");
    SeifertForm::new(module, theta, f.eta()).expect("base change preserves the form axioms")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SplitMix64::new(43);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn generated_forms_are_nonsingular() {
        let mut rng = SplitMix64::new(7);
        for eta in [Eta::Plus, Eta::Minus] {
            for _ in 0..20 {
                let f = random_nonsingular_form(&mut rng, 4, eta);
                assert!(f.is_nonsingular());
                assert!(f.rank() % 2 == 0);
            }
        }
    }

    #[test]
    fn pads_are_singular_near_projections() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..20 {
            let half = 1 + rng.below(2) as usize;
            let pad = random_balanced_pad(&mut rng, Eta::Plus, half);
            assert!(!pad.is_nonsingular() || pad.rank() == 0);
            assert!(pad.module().is_near_projection());
        }
    }

    #[test]
    fn conjugation_preserves_form_axioms() {
        let mut rng = SplitMix64::new(11);
        let f = random_nonsingular_form(&mut rng, 4, Eta::Plus);
        let u = random_unimodular(&mut rng, BaseRing::Integers, f.rank(), 6);
        let g = conjugate_form(&f, &u);
        assert!(g.is_nonsingular());
        assert_eq!(g.rank(), f.rank());
    }
}
