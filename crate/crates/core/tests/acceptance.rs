//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with its measured runtime. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see every line).

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use seiblan::exact_linalg::ExactMatrix;
use seiblan::forms::{Eta, RankCertificate, SeifertForm};
use seiblan::invariants::{
    alexander, alexander_oracle, determinant_invariant, lookup_knot, signature,
};
use seiblan::laurent::{LaurentMatrix, LaurentPoly, LocalizedElement, DEFAULT_DEGREE_CAP};
use seiblan::selftest::{
    duality_campaign, kernel_characterization_campaign, morphism_calculus_campaign,
    roundtrip_campaign,
};
use seiblan::{BaseRing, BlanchfieldPresentation, SeifertModule};

const SEED: u64 = 0x5e1f_b1a0;

fn z() -> BaseRing {
    BaseRing::Integers
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn begin(name: &'static str, budget: Duration) -> Self {
        Criterion { name, budget, start: Instant::now() }
    }

    fn pass(self, detail: &str) {
        let elapsed = self.start.elapsed();
        println!(
            "criterion {:<28} PASS  ({:>8.1?})  {}",
            self.name, elapsed, detail
        );
        assert!(
            elapsed <= self.budget,
            "{} exceeded its time budget: {:?} > {:?}",
            self.name,
            elapsed,
            self.budget
        );
    }
}

/// 1. Trefoil pipeline, bit-exact, under a second.
#[test]
fn criterion_01_trefoil_pipeline() {
    let c = Criterion::begin("1-trefoil", Duration::from_secs(1));
    let f = lookup_knot("trefoil").unwrap().form(z()).unwrap();
    let alex = alexander(&f).unwrap();
    assert_eq!(
        alex,
        LaurentPoly::from_coeffs(z(), &[(0, 1), (1, -1), (2, 1)])
    );
    assert_eq!(alex.augment(), z().one());
    assert_eq!(alexander_oracle(&f).unwrap(), alex);
    assert_eq!(signature(&f).unwrap(), -2);
    assert_eq!(determinant_invariant(&f).unwrap(), BigInt::from(3));
    c.pass("alexander = z^2 - z + 1, signature = -2, determinant = 3");
}

/// 2. Figure-eight pipeline, bit-exact, under a second.
#[test]
fn criterion_02_figure_eight_pipeline() {
    let c = Criterion::begin("2-figure-eight", Duration::from_secs(1));
    let f = lookup_knot("figure_eight").unwrap().form(z()).unwrap();
    let alex = alexander(&f).unwrap();
    assert_eq!(
        alex,
        LaurentPoly::from_coeffs(z(), &[(0, -1), (1, 3), (2, -1)])
    );
    assert_eq!(alex.augment(), z().one());
    assert_eq!(alexander_oracle(&f).unwrap(), alex);
    assert_eq!(signature(&f).unwrap(), 0);
    assert_eq!(determinant_invariant(&f).unwrap(), BigInt::from(5));
    c.pass("alexander = -z^2 + 3z - 1, signature = 0, determinant = 5");
}

/// 3. Seifertization of d = [2 - z] gives (Z, e = -1) exactly, and the
/// covering of the result re-presents the same module.
#[test]
fn criterion_03_seifertization_unit_case() {
    let c = Criterion::begin("3-seifertize", Duration::from_secs(1));
    let d = LaurentMatrix::new(
        z(),
        1,
        1,
        vec![LaurentPoly::from_coeffs(z(), &[(0, 2), (1, -1)])],
    )
    .unwrap();
    let pres = BlanchfieldPresentation::new(d.clone()).unwrap();
    let m = pres.seifertize().unwrap();
    assert_eq!(m.rank(), 1);
    assert_eq!(m.endomorphism(), &ExactMatrix::from_i64(z(), &[&[-1]]));
    let det_in = d.determinant(DEFAULT_DEGREE_CAP).unwrap();
    let det_out = m
        .covering_matrix()
        .determinant(DEFAULT_DEGREE_CAP)
        .unwrap();
    let ratio_is_unit = det_out
        .exact_div(&det_in)
        .map(|u| u.is_unit())
        .unwrap_or(false);
    assert!(ratio_is_unit, "dets {det_in} vs {det_out} differ by a non-unit");
    c.pass("d = [2 - z] -> (Z, e = -1); determinants agree up to a unit");
}

/// 4. Near-projection detection agrees with the Laurent-unit oracle on
/// 500 random modules of rank <= 4.
#[test]
fn criterion_04_kernel_characterization() {
    let c = Criterion::begin("4-kernel", Duration::from_secs(10));
    let (count, detail) = kernel_characterization_campaign(SEED, 500, 4).unwrap();
    assert_eq!(count, 500);
    c.pass(&format!("500/500 agree; {detail}"));
}

/// 5. Splitting exactness on every near-projection found by criterion 4's
/// corpus (the campaign asserts p^2 = p, pe = ep, the exponent identities
/// and rank additivity on each one).
#[test]
fn criterion_05_splitting_exactness() {
    let c = Criterion::begin("5-splitting", Duration::from_secs(10));
    let (_, detail) = kernel_characterization_campaign(SEED, 500, 4).unwrap();
    assert!(
        detail
            .split_whitespace()
            .next()
            .and_then(|n| n.parse::<usize>().ok())
            .map(|n| n > 0)
            .unwrap_or(false),
        "corpus contained no near-projections: {detail}"
    );
    c.pass(&format!("0 failures; {detail}"));
}

/// 6. Inverse certificates compose to the identity for 200 random
/// invertible morphisms (unimodular intertwiners times t-powers).
#[test]
fn criterion_06_morphism_calculus() {
    let c = Criterion::begin("6-morphisms", Duration::from_secs(30));
    let (count, _) = morphism_calculus_campaign(SEED, 200, 4).unwrap();
    assert_eq!(count, 200);
    c.pass("200/200 inverse certificates verified");
}

/// 7. Duality is an involution and covering forms are eta-symmetric, for
/// 100 random nonsingular forms of both signs.
#[test]
fn criterion_07_duality() {
    let c = Criterion::begin("7-duality", Duration::from_secs(30));
    let (count, _) = duality_campaign(SEED, 100, 4).unwrap();
    assert_eq!(count, 100);
    c.pass("100/100 duality and symmetry checks");
}

/// 8. uncover(cover(F)) reproduces the invariants for 100 random
/// nonsingular forms, both signs, with at least 30 padded runs forcing the
/// full path; every internal identity is asserted inside uncover.
#[test]
fn criterion_08_roundtrip() {
    let c = Criterion::begin("8-roundtrip", Duration::from_secs(120));
    let report = roundtrip_campaign(SEED, 100, 4, None, 30);
    let failures: Vec<String> = report
        .instances
        .iter()
        .filter(|i| !i.passed)
        .map(|i| format!("#{} ({:?}): {}", i.index, i.eta, i.detail))
        .collect();
    assert!(failures.is_empty(), "roundtrip failures: {}", failures.join("; "));
    assert!(report.padded_runs >= 30, "only {} padded runs", report.padded_runs);
    assert!(report.full_path_runs >= 30, "only {} full-path runs", report.full_path_runs);
    c.pass(&format!(
        "100/100 matched; {} padded, {} full-path",
        report.padded_runs, report.full_path_runs
    ));
}

/// 9. The rank certificate holds on every full-path run of criterion 8's
/// corpus.
#[test]
fn criterion_09_rank_certificate() {
    let c = Criterion::begin("9-rank-certificate", Duration::from_secs(120));
    let report = roundtrip_campaign(SEED, 100, 4, None, 30);
    let mut full = 0usize;
    for inst in &report.instances {
        assert!(inst.passed, "#{}: {}", inst.index, inst.detail);
        if !inst.shortcut {
            full += 1;
            assert_eq!(
                inst.certificate,
                RankCertificate::Holds,
                "#{}: rank certificate {:?} (input rank {}, result rank {})",
                inst.index,
                inst.certificate,
                inst.padded_rank,
                inst.result_rank
            );
        } else {
            assert_eq!(inst.certificate, RankCertificate::SkippedShortcut);
        }
    }
    assert!(full >= 30);
    c.pass(&format!("{full}/{full} full-path certificates hold"));
}

/// 10. The localized trefoil form is (1-z) theta entrywise, and the
/// hermitian-defect identity is asserted exactly inside the constructor.
#[test]
fn criterion_10_localized_form() {
    let c = Criterion::begin("10-localized", Duration::from_secs(1));
    let tref = lookup_knot("trefoil").unwrap().form(z()).unwrap();
    let loc = tref.localize().unwrap();
    let omz = LaurentPoly::from_coeffs(z(), &[(0, 1), (1, -1)]);
    for i in 0..2 {
        for j in 0..2 {
            let expect = LocalizedElement::from_poly(omz.scale(tref.pairing().get(i, j)));
            assert!(
                loc.entry(i, j).eq_localized(&expect),
                "entry ({i},{j}): {} != {}",
                loc.entry(i, j),
                expect
            );
        }
    }
    // the defect determinant factors as
    // (1-z)^n z^{-n} eta^n det(theta^T + eta z theta): an explicit unit
    // z^a (1-z)^b times an Alexander-type polynomial
    let det = loc.det_defect().clone();
    assert!(!det.is_zero());
    let n = tref.rank();
    let mut residual = LaurentMatrix::zero(z(), n, n);
    for i in 0..n {
        for j in 0..n {
            let mut p = LaurentPoly::constant(z(), tref.pairing().get(j, i).clone());
            p.add_term(1, tref.pairing().get(i, j).clone());
            residual.set(i, j, p);
        }
    }
    let residual = residual.determinant(DEFAULT_DEGREE_CAP).unwrap();
    let expect = omz.pow(n as u32).mul(&residual).shift(-(n as i64));
    assert_eq!(det, expect, "det_defect = {det}, expected {expect}");
    // and that residual is the Alexander polynomial evaluated at -z, up to
    // normalization: for the trefoil, z^2 + z + 1
    assert_eq!(
        residual,
        LaurentPoly::from_coeffs(z(), &[(0, 1), (1, 1), (2, 1)])
    );
    // a singular form is rejected
    let pad = SeifertForm::new(
        SeifertModule::from_i64(z(), &[&[0]]),
        ExactMatrix::zero(z(), 1, 1),
        Eta::Plus,
    )
    .unwrap();
    assert!(pad.localize().is_err());
    c.pass("localized trefoil matches (1-z) theta; defect identity exact");
}
