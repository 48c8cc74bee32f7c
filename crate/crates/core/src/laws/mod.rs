//! Randomized law checks over seeded ensembles, each returning a
//! reproducible [`LawReport`].
//!
//! Every law samples its trials from an [`EnsembleSpec`], measures a
//! residual per trial, and reports the worst one together with a JSON
//! witness that reproduces it. Boolean sub-checks (a predicate that must
//! hold, or must fail) contribute residual `0.0` or `1.0`, so a logic
//! violation can never hide below `tol_law`.

pub mod ensemble;
pub mod gallery;
mod report;

pub use ensemble::{EnsembleSpec, MatrixFamily};
pub use report::LawReport;

pub(crate) use report::WitnessTracker;

use num_complex::Complex64;
use rand::Rng;

use crate::aluthge::{aluthge, aluthge_rank_one, AluthgeParams};
use crate::codec::{cpx_json, cvec_json};
use crate::error::{Error, Result};
use crate::matcore::{
    inner, is_psd, op_norm_2, outer, vec_norm, CMatrix, ToleranceConfig,
};
use crate::oppred::{bottleneck_distance, is_normal, is_orthogonal_projection, is_quasinormal, spectrum};
use ensemble::{
    constructed_normal, constructed_positive, gaussian_matrix, haar_unitary, invertible_gaussian,
    nonzero_gaussian_vector, normal_inside_range, projection_onto_columns, weyl_unit_vector,
};

/// Relative covariance residual `‖Δ_λ(UTU*) − UΔ_λ(T)U*‖_F / max(1, ‖T‖_F)`.
pub fn covariance_residual(
    t: &CMatrix,
    u: &CMatrix,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    let conjugated = &(u * t) * &u.adjoint();
    let lhs = aluthge(&conjugated, lambda, cfg)?;
    let rhs = &(u * &aluthge(t, lambda, cfg)?) * &u.adjoint();
    Ok((&lhs - &rhs).frobenius_norm() / t.frobenius_norm().max(1.0))
}

/// Matched eigenvalue-multiset distance between `T` and `Δ_λ(T)`,
/// normalized by `max(1, ‖T‖₂)`.
pub fn spectrum_defect(t: &CMatrix, lambda: AluthgeParams, cfg: &ToleranceConfig) -> Result<f64> {
    let transformed = aluthge(t, lambda, cfg)?;
    let before = spectrum(t, cfg)?;
    let after = spectrum(&transformed, cfg)?;
    let distance = bottleneck_distance(&before.eigenvalues, &after.eigenvalues)?;
    Ok(distance / op_norm_2(t)?.max(1.0))
}

fn matrix_json(m: &CMatrix) -> serde_json::Value {
    serde_json::to_value(m).expect("matrix serializes")
}

/// The transform commutes with unitary conjugation and preserves the
/// spectrum. Per trial the residual is the worse of
/// [`covariance_residual`] (against a fresh Haar unitary) and
/// [`spectrum_defect`]; any weight in `[0, 1]` is allowed.
pub fn law_covariance_and_spectrum(
    ens: &EnsembleSpec,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<LawReport> {
    ens.validate()?;
    cfg.validate()?;
    let mut tracker = WitnessTracker::new("covariance_and_spectrum", ens.seed);
    for &n in &ens.dims {
        for trial in 0..ens.trials_per_dim {
            let mut rng = ens.trial_rng(n, trial);
            let t = ens.draw(n, &mut rng);
            let u = haar_unitary(n, &mut rng);
            let cov = covariance_residual(&t, &u, lambda, cfg)?;
            let spec = spectrum_defect(&t, lambda, cfg)?;
            tracker.observe(cov.max(spec), || {
                serde_json::json!({
                    "dim": n,
                    "trial": trial,
                    "lambda": lambda.lambda(),
                    "matrix": matrix_json(&t),
                    "unitary": matrix_json(&u),
                    "covariance_residual": cov,
                    "spectrum_defect": spec,
                })
            });
        }
    }
    Ok(tracker.finish(cfg))
}

/// Quasi-normal matrices are exactly the fixed points of the transform
/// (interior weights only), quasi-normality survives squaring, and in
/// finite dimension quasi-normal coincides with normal. The nilpotent
/// shift block is checked once as the canonical non-fixed point whose
/// square is fixed.
pub fn law_fixed_points(
    ens: &EnsembleSpec,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<LawReport> {
    ens.validate()?;
    cfg.validate()?;
    require_interior(lambda)?;
    let mut tracker = WitnessTracker::new("fixed_points", ens.seed);

    // Canonical member: e1⊗e2 is not fixed (its transform vanishes),
    // its square is fixed, and both predicates agree it is not normal.
    let nil = gallery::nilpotent2();
    let nil_transform = aluthge(&nil, lambda, cfg)?;
    tracker.observe(nil_transform.frobenius_norm(), || {
        serde_json::json!({"component": "nilpotent_transform_vanishes"})
    });
    let moved = (&nil_transform - &nil).frobenius_norm();
    tracker.observe(if moved <= 10.0 * cfg.tol_law { 1.0 } else { 0.0 }, || {
        serde_json::json!({"component": "nilpotent_is_not_fixed", "distance_moved": moved})
    });
    let nil_sq = &nil * &nil;
    tracker.observe(
        (&aluthge(&nil_sq, lambda, cfg)? - &nil_sq).frobenius_norm(),
        || serde_json::json!({"component": "nilpotent_square_is_fixed"}),
    );
    tracker.observe(
        if is_quasinormal(&nil, cfg)? || is_normal(&nil, cfg)? {
            1.0
        } else {
            0.0
        },
        || serde_json::json!({"component": "nilpotent_is_not_quasinormal"}),
    );

    for &n in &ens.dims {
        for trial in 0..ens.trials_per_dim {
            let mut rng = ens.trial_rng(n, trial);

            // (a) constructed quasi-normal matrices are fixed points.
            let normal = constructed_normal(n, &mut rng);
            let scale = normal.frobenius_norm().max(1.0);
            tracker.observe(
                (&aluthge(&normal, lambda, cfg)? - &normal).frobenius_norm() / scale,
                || {
                    serde_json::json!({
                        "component": "quasinormal_is_fixed",
                        "dim": n, "trial": trial,
                        "matrix": matrix_json(&normal),
                    })
                },
            );

            // (c) their squares stay quasi-normal.
            tracker.observe(
                if is_quasinormal(&(&normal * &normal), cfg)? {
                    0.0
                } else {
                    1.0
                },
                || {
                    serde_json::json!({
                        "component": "square_stays_quasinormal",
                        "dim": n, "trial": trial,
                        "matrix": matrix_json(&normal),
                    })
                },
            );

            // (b) fixed points are quasi-normal, sampled on the spec's
            // own family (vacuous for generic draws, binding for the
            // structured families) and on the constructed normal.
            let t = ens.draw(n, &mut rng);
            for (label, m) in [("family_draw", &t), ("constructed_normal", &normal)] {
                let fixed = (&aluthge(m, lambda, cfg)? - m).frobenius_norm()
                    <= cfg.tol_law * m.frobenius_norm().max(1.0);
                if fixed {
                    tracker.observe(
                        if is_quasinormal(m, cfg)? { 0.0 } else { 1.0 },
                        || {
                            serde_json::json!({
                                "component": "fixed_implies_quasinormal",
                                "input": label,
                                "dim": n, "trial": trial,
                                "matrix": matrix_json(m),
                            })
                        },
                    );
                }
            }

            // (d) finite-dimensional coincidence of the predicates.
            tracker.observe(
                if is_quasinormal(&t, cfg)? == is_normal(&t, cfg)? {
                    0.0
                } else {
                    1.0
                },
                || {
                    serde_json::json!({
                        "component": "quasinormal_coincides_with_normal",
                        "dim": n, "trial": trial,
                        "matrix": matrix_json(&t),
                    })
                },
            );
        }
    }
    Ok(tracker.finish(cfg))
}

/// The closed form on rank-one matrices agrees with the general kernel,
/// orthogonal pairings are sent to zero, and a vanishing transform of a
/// rank-one matrix certifies a vanishing square.
pub fn law_rank_one(
    ens: &EnsembleSpec,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<LawReport> {
    ens.validate()?;
    cfg.validate()?;
    require_interior(lambda)?;
    let mut tracker = WitnessTracker::new("rank_one", ens.seed);
    for &n in &ens.dims {
        for trial in 0..ens.trials_per_dim {
            let mut rng = ens.trial_rng(n, trial);
            let x = nonzero_gaussian_vector(n, &mut rng);
            let y = nonzero_gaussian_vector(n, &mut rng);
            let product_norm = vec_norm(&x) * vec_norm(&y);

            // (a) closed form versus the general path.
            let t = outer(&x, &y)?;
            let general = aluthge(&t, lambda, cfg)?;
            let closed = aluthge_rank_one(&x, &y, lambda)?;
            tracker.observe(
                (&general - &closed).frobenius_norm() / product_norm,
                || {
                    serde_json::json!({
                        "component": "closed_form_agreement",
                        "dim": n, "trial": trial,
                        "x": cvec_json(&x), "y": cvec_json(&y),
                        "lambda": lambda.lambda(),
                    })
                },
            );

            // (b) orthogonal pairing: transform vanishes and the square
            // vanishes with it.
            if n >= 2 {
                let overlap = inner(&y, &x);
                let xn2 = inner(&x, &x).re;
                let y_perp: Vec<Complex64> = y
                    .iter()
                    .zip(&x)
                    .map(|(yi, xi)| yi - xi * (overlap / xn2))
                    .collect();
                if vec_norm(&y_perp) > 1e-6 {
                    let t0 = outer(&x, &y_perp)?;
                    let scale0 = vec_norm(&x) * vec_norm(&y_perp);
                    let transformed = aluthge(&t0, lambda, cfg)?;
                    tracker.observe(transformed.frobenius_norm() / scale0, || {
                        serde_json::json!({
                            "component": "orthogonal_pairing_vanishes",
                            "dim": n, "trial": trial,
                            "x": cvec_json(&x), "y_perp": cvec_json(&y_perp),
                        })
                    });
                    if transformed.frobenius_norm() <= cfg.tol_law * scale0 {
                        tracker.observe(
                            (&t0 * &t0).frobenius_norm() / (scale0 * scale0),
                            || {
                                serde_json::json!({
                                    "component": "vanishing_transform_forces_nilpotent",
                                    "dim": n, "trial": trial,
                                    "x": cvec_json(&x), "y_perp": cvec_json(&y_perp),
                                })
                            },
                        );
                    }
                }
            }

            // (c) self-pairing scales a projection and is fixed.
            let p = outer(&x, &x)?;
            tracker.observe(
                (&aluthge(&p, lambda, cfg)? - &p).frobenius_norm() / inner(&x, &x).re,
                || {
                    serde_json::json!({
                        "component": "self_pairing_is_fixed",
                        "dim": n, "trial": trial,
                        "x": cvec_json(&x),
                    })
                },
            );
        }
    }
    Ok(tracker.finish(cfg))
}

/// Scalar detection: `R` commutes with the transform on all rank-one
/// projections `y⊗y` exactly when `R` is scalar. The law searches the
/// standard basis plus a low-discrepancy family of unit vectors for a
/// witness `y` with `Δ_λ(R(y⊗y)) ≠ Δ_λ((y⊗y)R)` and passes when the
/// search outcome matches scalarity.
pub fn law_scalar_detector(
    r: &CMatrix,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<LawReport> {
    cfg.validate()?;
    require_interior(lambda)?;
    r.ensure_finite("scalar detector input")?;
    let n = r.dim();
    let scale = r.frobenius_norm().max(1.0);

    let mean = r.trace() / n as f64;
    let scalar = (r - &CMatrix::identity(n).scale(mean)).frobenius_norm() <= cfg.tol_eq * scale;

    let mut candidates: Vec<Vec<Complex64>> = Vec::with_capacity(n + 64);
    for k in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[k] = Complex64::new(1.0, 0.0);
        candidates.push(e);
    }
    for k in 0..64 {
        candidates.push(weyl_unit_vector(n, k));
    }

    let mut best_strength = 0.0f64;
    let mut best_vector = candidates[0].clone();
    for y in &candidates {
        let projection = outer(y, y)?;
        let left = aluthge(&(r * &projection), lambda, cfg)?;
        let right = aluthge(&(&projection * r), lambda, cfg)?;
        let strength = (&left - &right).frobenius_norm() / scale;
        if strength > best_strength {
            best_strength = strength;
            best_vector = y.clone();
        }
    }

    let mut tracker = WitnessTracker::new("scalar_detector", 0);
    let residual = if scalar {
        // Scalar input: any witness at all is a failure, so the
        // strongest candidate is the residual.
        best_strength
    } else if best_strength > cfg.tol_law {
        0.0
    } else {
        1.0
    };
    tracker.observe(residual, || {
        serde_json::json!({
            "scalar": scalar,
            "diagonal_mean": cpx_json(mean),
            "witness_vector": cvec_json(&best_vector),
            "witness_strength": best_strength,
            "candidates": candidates.len(),
            "matrix": matrix_json(r),
        })
    });
    Ok(tracker.finish(cfg))
}

/// For invertible matrices, positivity of the transform is equivalent to
/// positivity of the matrix; positive matrices are fixed. The shipped
/// rank-one artifact shows the equivalence genuinely needs
/// invertibility: its transform is PSD while the matrix is not, which
/// the law confirms (failure to exhibit that pattern is the violation).
pub fn law_positivity(
    ens: &EnsembleSpec,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<LawReport> {
    ens.validate()?;
    cfg.validate()?;
    let mut tracker = WitnessTracker::new("positivity", ens.seed);

    // Hypothesis-violation witness from the gallery: PSD transform,
    // non-PSD original, off the invertible domain of the law.
    let witness_matrix = gallery::rank_one_positive();
    let witness_transform = aluthge(&witness_matrix, lambda, cfg)?;
    let pattern_holds =
        is_psd(&witness_transform, cfg)? && !is_psd(&witness_matrix, cfg)?;
    tracker.observe(if pattern_holds { 0.0 } else { 1.0 }, || {
        serde_json::json!({
            "component": "hypothesis_violation_gallery",
            "note": "non-invertible rank-one input whose transform is PSD while the input is not; outside the law's invertible hypothesis, recorded as a witness rather than a failure",
            "matrix": matrix_json(&witness_matrix),
        })
    });

    // Deterministic invertible non-normal instance: the unit shear.
    if lambda.is_interior() {
        let shear = CMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])?;
        let shear_transform = aluthge(&shear, lambda, cfg)?;
        tracker.observe(if is_psd(&shear_transform, cfg)? { 1.0 } else { 0.0 }, || {
            serde_json::json!({
                "component": "shear_transform_is_not_psd",
                "matrix": matrix_json(&shear),
            })
        });
    }

    for &n in &ens.dims {
        for trial in 0..ens.trials_per_dim {
            let mut rng = ens.trial_rng(n, trial);

            // (a) equivalence on invertible draws.
            let (t, _redraws) = invertible_gaussian(n, &mut rng, cfg)?;
            let transformed = aluthge(&t, lambda, cfg)?;
            let agree = is_psd(&t, cfg)? == is_psd(&transformed, cfg)?;
            tracker.observe(if agree { 0.0 } else { 1.0 }, || {
                serde_json::json!({
                    "component": "psd_equivalence_on_invertibles",
                    "dim": n, "trial": trial,
                    "matrix": matrix_json(&t),
                })
            });

            // (b) positive matrices are fixed and stay positive.
            let positive = constructed_positive(n, &mut rng);
            let positive_transform = aluthge(&positive, lambda, cfg)?;
            tracker.observe(
                (&positive_transform - &positive).frobenius_norm()
                    / positive.frobenius_norm().max(1.0),
                || {
                    serde_json::json!({
                        "component": "positive_is_fixed",
                        "dim": n, "trial": trial,
                        "matrix": matrix_json(&positive),
                    })
                },
            );
            tracker.observe(
                if is_psd(&positive_transform, cfg)? { 0.0 } else { 1.0 },
                || {
                    serde_json::json!({
                        "component": "positive_stays_psd",
                        "dim": n, "trial": trial,
                        "matrix": matrix_json(&positive),
                    })
                },
            );
        }
    }
    Ok(tracker.finish(cfg))
}

/// Compression law: a quasi-normal matrix supported inside the range of
/// a projection `P` satisfies `Δ_λ(TP) = T`, and whenever that identity
/// holds the pair must satisfy `TP = PT = T` with `T` quasi-normal.
/// Generic pairs without the support property must violate the identity.
pub fn law_projection_compression(
    ens: &EnsembleSpec,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<LawReport> {
    ens.validate()?;
    cfg.validate()?;
    require_interior(lambda)?;
    let mut tracker = WitnessTracker::new("projection_compression", ens.seed);
    for &n in &ens.dims {
        for trial in 0..ens.trials_per_dim {
            let mut rng = ens.trial_rng(n, trial);

            let u = haar_unitary(n, &mut rng);
            let rank = if n == 1 { 1 } else { rng.gen_range(1..n) };
            let p = projection_onto_columns(&u, rank);
            if !is_orthogonal_projection(&p, cfg)? {
                return Err(Error::NotAProjection { which: "sampled" });
            }
            let t = normal_inside_range(&u, rank, &mut rng);
            let scale = t.frobenius_norm().max(1.0);

            // (a) constructed instances satisfy the identity...
            let compressed = aluthge(&(&t * &p), lambda, cfg)?;
            let identity_residual = (&compressed - &t).frobenius_norm() / scale;
            tracker.observe(identity_residual, || {
                serde_json::json!({
                    "component": "in_range_identity",
                    "dim": n, "trial": trial, "rank": rank,
                    "matrix": matrix_json(&t),
                    "projection": matrix_json(&p),
                })
            });

            // ...and whenever the identity holds, the support and
            // quasi-normality conclusions must too.
            if identity_residual <= cfg.tol_law {
                let support = (&(&t * &p) - &t)
                    .frobenius_norm()
                    .max((&(&p * &t) - &t).frobenius_norm())
                    / scale;
                tracker.observe(support, || {
                    serde_json::json!({
                        "component": "identity_forces_support",
                        "dim": n, "trial": trial, "rank": rank,
                        "matrix": matrix_json(&t),
                        "projection": matrix_json(&p),
                    })
                });
                tracker.observe(if is_quasinormal(&t, cfg)? { 0.0 } else { 1.0 }, || {
                    serde_json::json!({
                        "component": "identity_forces_quasinormality",
                        "dim": n, "trial": trial,
                        "matrix": matrix_json(&t),
                    })
                });
            }

            // (b) the projection itself is a trivial instance.
            tracker.observe(
                (&aluthge(&(&p * &p), lambda, cfg)? - &p).frobenius_norm(),
                || {
                    serde_json::json!({
                        "component": "projection_is_its_own_compression",
                        "dim": n, "trial": trial, "rank": rank,
                        "projection": matrix_json(&p),
                    })
                },
            );

            // (c) rejection controls, meaningful only for n ≥ 2: a
            // generic draw and a perturbed in-range instance must both
            // break the identity.
            if n >= 2 {
                let generic = gaussian_matrix(n, &mut rng);
                let generic_residual = (&aluthge(&(&generic * &p), lambda, cfg)? - &generic)
                    .frobenius_norm()
                    / generic.frobenius_norm().max(1.0);
                tracker.observe(
                    if generic_residual <= 10.0 * cfg.tol_law { 1.0 } else { 0.0 },
                    || {
                        serde_json::json!({
                            "component": "generic_pair_violates",
                            "dim": n, "trial": trial,
                            "matrix": matrix_json(&generic),
                            "projection": matrix_json(&p),
                            "identity_residual": generic_residual,
                        })
                    },
                );

                let perturbed = &t + &gaussian_matrix(n, &mut rng).scale(Complex64::new(1e-3, 0.0));
                let perturbed_residual = (&aluthge(&(&perturbed * &p), lambda, cfg)? - &perturbed)
                    .frobenius_norm()
                    / perturbed.frobenius_norm().max(1.0);
                tracker.observe(
                    if perturbed_residual <= 10.0 * cfg.tol_law { 1.0 } else { 0.0 },
                    || {
                        serde_json::json!({
                            "component": "perturbed_pair_violates",
                            "dim": n, "trial": trial,
                            "matrix": matrix_json(&perturbed),
                            "projection": matrix_json(&p),
                            "identity_residual": perturbed_residual,
                        })
                    },
                );
            }
        }
    }
    Ok(tracker.finish(cfg))
}

/// Runs the whole battery with one ensemble. The scalar detector is
/// exercised twice per the first sampled dimension: once on a scalar
/// matrix (no witness may exist) and once on a non-scalar diagonal (a
/// witness must be found). Interior weights are required because the
/// fixed-point, rank-one, and compression laws need them.
pub fn run_all_laws(
    ens: &EnsembleSpec,
    lambda: AluthgeParams,
    cfg: &ToleranceConfig,
) -> Result<Vec<LawReport>> {
    ens.validate()?;
    require_interior(lambda)?;
    let n = ens.dims[0];
    let scalar = CMatrix::identity(n).scale(Complex64::new(3.0, 0.0));
    let diagonal = CMatrix::from_real_diag(&(1..=n).map(|k| k as f64).collect::<Vec<_>>());
    let mut reports = vec![
        law_covariance_and_spectrum(ens, lambda, cfg)?,
        law_fixed_points(ens, lambda, cfg)?,
        law_rank_one(ens, lambda, cfg)?,
        law_scalar_detector(&scalar, lambda, cfg)?,
    ];
    if n >= 2 {
        reports.push(law_scalar_detector(&diagonal, lambda, cfg)?);
    }
    reports.push(law_positivity(ens, lambda, cfg)?);
    reports.push(law_projection_compression(ens, lambda, cfg)?);
    Ok(reports)
}

fn require_interior(lambda: AluthgeParams) -> Result<()> {
    if !lambda.is_interior() {
        return Err(Error::InvalidParameter(format!(
            "this law needs an interior weight, got {}",
            lambda.lambda()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn lam(v: f64) -> AluthgeParams {
        AluthgeParams::new(v).unwrap()
    }

    fn ens(dims: Vec<usize>, trials: usize) -> EnsembleSpec {
        EnsembleSpec::new(dims, trials, 0xA17A, MatrixFamily::ComplexGaussian)
    }

    #[test]
    fn covariance_and_spectrum_law_passes_at_all_weights() {
        for weight in [0.0, 0.5, 1.0] {
            let report =
                law_covariance_and_spectrum(&ens(vec![2, 5], 8), lam(weight), &cfg()).unwrap();
            assert!(report.passed, "weight {weight}: {:.3e}", report.max_residual);
            assert_eq!(report.trials, 16);
        }
    }

    #[test]
    fn fixed_points_law_passes_and_counts_the_gallery_checks() {
        let report = law_fixed_points(&ens(vec![3], 10), lam(0.5), &cfg()).unwrap();
        assert!(report.passed, "residual {:.3e}", report.max_residual);
        assert_eq!(report.law_id, "fixed_points");
        // 4 canonical observations plus at least 4 per trial.
        assert!(report.trials >= 44);
    }

    #[test]
    fn fixed_points_law_needs_interior_weights() {
        assert!(matches!(
            law_fixed_points(&ens(vec![2], 2), lam(0.0), &cfg()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn rank_one_law_passes_across_weights() {
        for weight in [0.2, 0.5, 0.9] {
            let report = law_rank_one(&ens(vec![1, 4], 10), lam(weight), &cfg()).unwrap();
            assert!(report.passed, "weight {weight}: {:.3e}", report.max_residual);
        }
    }

    #[test]
    fn scalar_detector_accepts_scalars_and_finds_witnesses() {
        let cfg = cfg();
        let scalar = CMatrix::identity(3).scale(Complex64::new(3.0, 0.0));
        let report = law_scalar_detector(&scalar, lam(0.5), &cfg).unwrap();
        assert!(report.passed);
        assert_eq!(report.max_residual, 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alpha = ensemble::gaussian_scalar(&mut rng);
        let random_scalar = CMatrix::identity(4).scale(alpha);
        let report = law_scalar_detector(&random_scalar, lam(0.3), &cfg).unwrap();
        assert!(report.passed, "residual {:.3e}", report.max_residual);

        let diagonal = CMatrix::from_real_diag(&[1.0, 2.0]);
        let report = law_scalar_detector(&diagonal, lam(0.5), &cfg).unwrap();
        assert!(report.passed, "witness search failed");
        let strength = report.worst_witness["witness_strength"].as_f64().unwrap();
        // Hand value for y=(1,1)/√2: ‖1.5·y⊗y − 0.6·(Ry)⊗(Ry)/‖Ry‖·…‖,
        // which works out to √0.45; the search may do better, and the
        // report normalizes by ‖R‖_F = √5.
        assert!(strength >= 0.45f64.sqrt() / 5.0f64.sqrt() - 1e-9, "strength {strength}");
    }

    #[test]
    fn scalar_detector_strength_matches_hand_value_on_the_diagonal_pair() {
        // For R = diag(1,2) and y = (1,1)/√2 the two rank-one transforms
        // are 1.5·(y⊗y) and 0.6·(Ry)⊗(Ry), whose difference has norm
        // √0.45. The detector must find at least that much.
        let cfg = cfg();
        let r = CMatrix::from_real_diag(&[1.0, 2.0]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let y = vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)];
        let p = outer(&y, &y).unwrap();
        let left = aluthge(&(&r * &p), lam(0.5), &cfg).unwrap();
        let right = aluthge(&(&p * &r), lam(0.5), &cfg).unwrap();
        let strength = (&left - &right).frobenius_norm();
        assert!((strength - 0.45f64.sqrt()).abs() < 1e-12, "strength {strength}");
    }

    #[test]
    fn positivity_law_passes_and_the_gallery_pattern_holds() {
        let report = law_positivity(&ens(vec![2, 4], 8), lam(0.5), &cfg()).unwrap();
        assert!(report.passed, "residual {:.3e}", report.max_residual);
        // Boundary weights allowed: at λ=0 the transform is the
        // identity map, where the gallery pattern degenerates… the
        // witness matrix is its own transform viewed through polar
        // cleanup, so run it only where the closed form applies.
        let report = law_positivity(&ens(vec![3], 6), lam(0.25), &cfg()).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn compression_law_passes_and_rejects_controls() {
        let report =
            law_projection_compression(&ens(vec![2, 5], 8), lam(0.5), &cfg()).unwrap();
        assert!(report.passed, "residual {:.3e}", report.max_residual);
    }

    #[test]
    fn run_all_returns_the_full_battery() {
        let reports = run_all_laws(&ens(vec![3], 4), lam(0.5), &cfg()).unwrap();
        assert_eq!(reports.len(), 7);
        assert!(reports.iter().all(|r| r.passed));
        let ids: Vec<&str> = reports.iter().map(|r| r.law_id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "covariance_and_spectrum",
                "fixed_points",
                "rank_one",
                "scalar_detector",
                "scalar_detector",
                "positivity",
                "projection_compression"
            ]
        );
    }

    #[test]
    fn reports_are_bitwise_reproducible() {
        let cfg = cfg();
        let spec = ens(vec![4], 6);
        let a = law_covariance_and_spectrum(&spec, lam(0.4), &cfg).unwrap();
        let b = law_covariance_and_spectrum(&spec, lam(0.4), &cfg).unwrap();
        assert_eq!(a.max_residual.to_bits(), b.max_residual.to_bits());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn positivity_gallery_witness_summary() {
        // The shipped rank-one artifact really shows PSD transform with
        // non-PSD input at an interior weight.
        let cfg = cfg();
        let m = gallery::rank_one_positive();
        let transformed = aluthge(&m, lam(0.5), &cfg).unwrap();
        assert!(is_psd(&transformed, &cfg).unwrap());
        assert!(!is_psd(&m, &cfg).unwrap());
    }
}
