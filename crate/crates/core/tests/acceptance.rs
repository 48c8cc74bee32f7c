//! Acceptance gate for the toolkit: eleven criteria, one test (and one
//! pass/fail line) each, at the tolerances the artifact promises.
//!
//! Run with `--nocapture` to see the per-criterion summary lines; the
//! test names themselves double as the pass/fail report.

use aluthge_core::aluthge::{aluthge, aluthge_rank_one, AluthgeParams};
use aluthge_core::laws::ensemble::{
    constructed_normal, gaussian_matrix, haar_unitary, invertible_gaussian,
    nonzero_gaussian_vector, normal_inside_range, projection_onto_columns,
};
use aluthge_core::laws::{gallery, EnsembleSpec, MatrixFamily};
use aluthge_core::mapanalysis::{
    check_condition, default_alpha_grid, eval_map, extract_h, extract_unitary, ConditionVerdict,
    MapDescription, SymbolClassification,
};
use aluthge_core::matcore::{inner, is_psd, outer, vec_norm, CMatrix, ToleranceConfig};
use aluthge_core::oppred::{is_normal, is_quasinormal};
use aluthge_core::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn lam(v: f64) -> AluthgeParams {
    AluthgeParams::new(v).unwrap()
}

/// Closed rank-one formula versus the general kernel: 1000 draws of
/// (x, y, interior weight), disagreement within 1e-10 * ‖x‖ * ‖y‖.
#[test]
fn a01_rank_one_closed_form() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA001);
    let mut worst = 0.0f64;
    for trial in 0..1000u32 {
        let n = 1 + (trial as usize % 8);
        let x = nonzero_gaussian_vector(n, &mut rng);
        let y = nonzero_gaussian_vector(n, &mut rng);
        let lambda = lam(rng.gen_range(0.001..0.999));
        let general = aluthge(&outer(&x, &y).unwrap(), lambda, &cfg).unwrap();
        let closed = aluthge_rank_one(&x, &y, lambda).unwrap();
        let err = (&general - &closed).frobenius_norm() / (vec_norm(&x) * vec_norm(&y));
        worst = worst.max(err);
        assert!(
            err <= 1e-10,
            "trial {trial}, dim {n}: disagreement {err:.3e}"
        );
    }
    println!("A01 rank-one closed form: PASS (1000 trials, worst {worst:.3e})");
}

/// Unitary covariance: 500 trials at dimensions up to 8, relative
/// residual of Delta(U T U*) against U Delta(T) U* within 1e-9.
#[test]
fn a02_unitary_covariance() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA002);
    let weights = [0.25, 0.5, 0.75];
    let mut worst = 0.0f64;
    for trial in 0..500u32 {
        let n = 1 + (trial as usize % 8);
        let t = gaussian_matrix(n, &mut rng);
        let u = haar_unitary(n, &mut rng);
        let lambda = lam(weights[trial as usize % weights.len()]);
        let residual =
            aluthge_core::laws::covariance_residual(&t, &u, lambda, &cfg).unwrap();
        worst = worst.max(residual);
        assert!(
            residual <= 1e-9,
            "trial {trial}, dim {n}: covariance residual {residual:.3e}"
        );
    }
    println!("A02 unitary covariance: PASS (500 trials, worst {worst:.3e})");
}

/// Spectrum invariance: 500 trials, matched eigenvalue multiset
/// distance within 1e-6 * max(1, ‖T‖_2).
#[test]
fn a03_spectrum_invariance() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA003);
    let weights = [0.3, 0.5, 0.8];
    let mut worst = 0.0f64;
    for trial in 0..500u32 {
        let n = 1 + (trial as usize % 8);
        let t = gaussian_matrix(n, &mut rng);
        let lambda = lam(weights[trial as usize % weights.len()]);
        let defect = aluthge_core::laws::spectrum_defect(&t, lambda, &cfg).unwrap();
        worst = worst.max(defect);
        assert!(
            defect <= 1e-6,
            "trial {trial}, dim {n}: spectrum defect {defect:.3e}"
        );
    }
    println!("A03 spectrum invariance: PASS (500 trials, worst {worst:.3e})");
}

/// Fixed points: constructed quasi-normal matrices are fixed to 1e-8,
/// the 2x2 shift block moves while its square is fixed, and the
/// quasi-normality and normality predicates coincide on every draw.
#[test]
fn a04_fixed_point_characterization() {
    let cfg = cfg();
    let lambda = lam(0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(0xA004);
    for trial in 0..200u32 {
        let n = 1 + (trial as usize % 6);
        let normal = constructed_normal(n, &mut rng);
        let moved = (&aluthge(&normal, lambda, &cfg).unwrap() - &normal).frobenius_norm();
        assert!(
            moved <= 1e-8 * normal.frobenius_norm().max(1.0),
            "trial {trial}: constructed normal moved {moved:.3e}"
        );
        let t = gaussian_matrix(n, &mut rng);
        assert_eq!(
            is_quasinormal(&t, &cfg).unwrap(),
            is_normal(&t, &cfg).unwrap(),
            "trial {trial}: predicates disagree"
        );
    }

    let nil = gallery::nilpotent2();
    let nil_moved = (&aluthge(&nil, lambda, &cfg).unwrap() - &nil).frobenius_norm();
    assert!(nil_moved > 0.9, "shift block should move by 1, got {nil_moved:.3e}");
    let nil_sq = &nil * &nil;
    let sq_moved = (&aluthge(&nil_sq, lambda, &cfg).unwrap() - &nil_sq).frobenius_norm();
    assert!(sq_moved <= 1e-12, "zero square should be fixed, moved {sq_moved:.3e}");
    println!("A04 fixed-point characterization: PASS (200 trials + shift block)");
}

/// Positivity: on 200 invertible draws the transform is PSD exactly
/// when the input is; the shipped non-invertible rank-one pair shows
/// the equivalence genuinely needs invertibility.
#[test]
fn a05_positivity_needs_invertibility() {
    let cfg = cfg();
    let lambda = lam(0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(0xA005);
    let mut psd_seen = 0u32;
    for trial in 0..200u32 {
        let n = 1 + (trial as usize % 6);
        // Alternate generic invertible draws with invertible PSD ones
        // so both sides of the equivalence are exercised.
        let t = if trial % 2 == 0 {
            let (t, _) = invertible_gaussian(n, &mut rng, &cfg).unwrap();
            t
        } else {
            let g = gaussian_matrix(n, &mut rng);
            &(&g * &g.adjoint()) + &CMatrix::identity(n).scale(Complex64::new(0.5, 0.0))
        };
        let t_psd = is_psd(&t, &cfg).unwrap();
        let d_psd = is_psd(&aluthge(&t, lambda, &cfg).unwrap(), &cfg).unwrap();
        assert_eq!(t_psd, d_psd, "trial {trial}: PSD equivalence broke");
        psd_seen += u32::from(t_psd);
    }
    assert!(psd_seen >= 50, "ensemble failed to exercise the PSD side");

    let witness = gallery::rank_one_positive();
    let transformed = aluthge(&witness, lambda, &cfg).unwrap();
    assert!(
        is_psd(&transformed, &cfg).unwrap() && !is_psd(&witness, &cfg).unwrap(),
        "hypothesis-violation witness lost its pattern"
    );
    println!(
        "A05 positivity criterion: PASS (200 invertible trials, {psd_seen} PSD; \
         witness: transform PSD, input not)"
    );
}

/// Compression: quasi-normal matrices supported inside the range of a
/// projection satisfy Delta(TP) = T to 1e-8; out-of-range controls
/// break the identity.
#[test]
fn a06_projection_compression() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA006);
    let weights = [0.3, 0.5, 0.7];
    for trial in 0..100u32 {
        let n = 2 + (trial as usize % 5);
        let lambda = lam(weights[trial as usize % weights.len()]);
        let u = haar_unitary(n, &mut rng);
        let rank = rng.gen_range(1..n);
        let p = projection_onto_columns(&u, rank);
        let t = normal_inside_range(&u, rank, &mut rng);
        let residual = (&aluthge(&(&t * &p), lambda, &cfg).unwrap() - &t).frobenius_norm();
        assert!(
            residual <= 1e-8 * t.frobenius_norm().max(1.0),
            "trial {trial}: in-range identity residual {residual:.3e}"
        );

        let control = gaussian_matrix(n, &mut rng);
        let control_residual = (&aluthge(&(&control * &p), lambda, &cfg).unwrap() - &control)
            .frobenius_norm()
            / control.frobenius_norm().max(1.0);
        assert!(
            control_residual > 1e-4,
            "trial {trial}: generic control unexpectedly satisfied the identity"
        );
    }
    println!("A06 projection compression: PASS (100 in-range + 100 controls)");
}

/// Forward direction: conjugation by a Haar unitary satisfies the
/// product condition with residual within 1e-9 over 200 sampled pairs,
/// rank-one projection pairs included.
#[test]
fn a07_conjugation_satisfies_condition() {
    let cfg = cfg();
    let mut worst = 0.0f64;
    for (k, n) in [2usize, 3, 4, 6, 8].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA007 + k as u64);
        let desc = MapDescription::conjugation(haar_unitary(n, &mut rng));
        let sampler =
            EnsembleSpec::new(vec![n], 200, 0x7E57 + k as u64, MatrixFamily::ComplexGaussian);
        let report = check_condition(&desc, lam(0.5), &sampler, &cfg).unwrap();
        assert_eq!(report.verdict, ConditionVerdict::Satisfied, "dim {n}");
        assert!(
            report.max_residual <= 1e-9,
            "dim {n}: worst residual {:.3e}",
            report.max_residual
        );
        assert_eq!(report.trials, 200);
        worst = worst.max(report.max_residual);
    }
    println!("A07 conjugation satisfies the condition: PASS (5 dims x 200 pairs, worst {worst:.3e})");
}

/// Converse at desk scale: for 20 Haar conjugations at dimensions 2
/// through 8, the recovered unitary conjugates 50 validation matrices
/// to within 1e-8 and matches the original column by column up to one
/// global phase of modulus 1 within 1e-8.
#[test]
fn a08_unitary_recovery() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA008);
    for run in 0..20u32 {
        let n = 2 + (run as usize % 7);
        let u = haar_unitary(n, &mut rng);
        let desc = MapDescription::conjugation(u.clone());
        let result = extract_unitary(&desc, n, &cfg).unwrap();
        assert!(
            result.conjugation_residual <= 1e-8,
            "run {run}, dim {n}: conjugation residual {:.3e}",
            result.conjugation_residual
        );
        assert!(
            result.unitarity_residual <= 1e-8,
            "run {run}, dim {n}: unitarity residual {:.3e}",
            result.unitarity_residual
        );
        for j in 0..n {
            let got = result.u_hat.column(j);
            let want = u.column(j);
            let overlap = inner(&got, &want).norm();
            assert!(
                (overlap - 1.0).abs() <= 1e-8,
                "run {run}, dim {n}, column {j}: phase modulus {overlap}"
            );
        }
    }
    println!("A08 unitary recovery: PASS (20 runs, dims 2..8, 50 validation matrices each)");
}

/// Rejection: the adjoint-twisted conjugation and the doubled
/// conjugation are refused with residual at least 0.1 within 100
/// sampled pairs.
#[test]
fn a09_counterexamples_are_rejected() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA009);
    for n in [2usize, 3, 5] {
        let u = haar_unitary(n, &mut rng);
        let anti = MapDescription::anti_conjugation(u.clone());
        let doubled =
            MapDescription::scale(Complex64::new(2.0, 0.0), MapDescription::conjugation(u));
        for (name, desc) in [("adjoint-twisted", anti), ("doubled", doubled)] {
            let sampler =
                EnsembleSpec::new(vec![n], 100, 0x9E9E, MatrixFamily::ComplexGaussian);
            let report = check_condition(&desc, lam(0.5), &sampler, &cfg).unwrap();
            assert_eq!(
                report.verdict,
                ConditionVerdict::Violated,
                "{name} at dim {n} was not rejected"
            );
            assert!(
                report.max_residual >= 0.1,
                "{name} at dim {n}: residual {:.3e} below the rejection bar",
                report.max_residual
            );
        }
    }
    println!("A09 counterexample rejection: PASS (2 families x 3 dims, residuals >= 0.1)");
}

/// Dimension-one boundary: the scalar reciprocal map satisfies the
/// condition with residual at roundoff, is flagged as the 1x1 special
/// case, and extraction refuses to run on it.
#[test]
fn a10_dimension_one_boundary() {
    let cfg = cfg();
    let desc = gallery::reciprocal_map();
    let sampler = EnsembleSpec::new(vec![1], 60, 0xA010, MatrixFamily::ComplexGaussian);
    let report = check_condition(&desc, lam(0.5), &sampler, &cfg).unwrap();
    assert_eq!(report.verdict, ConditionVerdict::DimensionOne);
    assert!(
        report.max_residual <= 1e-12,
        "reciprocal residual {:.3e}",
        report.max_residual
    );
    let refusal = extract_unitary(&desc, 1, &cfg);
    assert!(
        matches!(refusal, Err(Error::InvalidParameter(_))),
        "extraction must refuse the 1x1 case, got {refusal:?}"
    );
    println!(
        "A10 dimension-one boundary: PASS (residual {:.1e}, flagged, extraction refused)",
        report.max_residual
    );
}

/// Scalar symbol: for satisfied maps the induced scalar function fixes
/// 0 and 1, is odd, and is multiplicative within 1e-8 on the sample
/// grid; plain conjugations classify as the identity symbol.
#[test]
fn a11_scalar_symbol_identities() {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA011);
    for n in [2usize, 3] {
        let desc = MapDescription::conjugation(haar_unitary(n, &mut rng));
        let h = |z: Complex64| -> Complex64 {
            let image = eval_map(&desc, &CMatrix::identity(n).scale(z)).unwrap();
            image.trace() / n as f64
        };
        let grid = default_alpha_grid(0xA011 + n as u64);
        let table = extract_h(&desc, &grid, &cfg).unwrap();
        assert_eq!(table.classification, SymbolClassification::Identity, "dim {n}");

        assert!(h(Complex64::new(0.0, 0.0)).norm() <= 1e-12, "h(0) != 0");
        assert!(
            (h(Complex64::new(1.0, 0.0)) - Complex64::new(1.0, 0.0)).norm() <= 1e-12,
            "h(1) != 1"
        );
        for &alpha in &grid {
            let odd = (h(-alpha) + h(alpha)).norm();
            assert!(odd <= 1e-8 * alpha.norm().max(1.0), "dim {n}: oddness broke at {alpha}");
            for &beta in &grid {
                let mult = (h(alpha * beta) - h(alpha) * h(beta)).norm();
                assert!(
                    mult <= 1e-8 * (alpha.norm() * beta.norm()).max(1.0),
                    "dim {n}: multiplicativity broke at ({alpha}, {beta})"
                );
            }
        }
    }
    println!("A11 scalar symbol identities: PASS (2 dims, full grid, classified identity)");
}
