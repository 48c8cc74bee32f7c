//! Reconstructs the conjugating unitary of a map that commutes with the
//! transform on products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::aluthge::AluthgeParams;
use crate::error::{Error, Result};
use crate::laws::ensemble::{gaussian_matrix, EnsembleSpec, MatrixFamily};
use crate::matcore::{outer, vec_norm, CMatrix, ToleranceConfig};
use crate::oppred::is_orthogonal_projection;

use super::condition::{check_condition, ConditionVerdict};
use super::symbol::{default_alpha_grid, extract_h, SymbolClassification};
use super::{MapOracle, ANALYSIS_SEED};

/// Reconstructed unitary together with its validation residuals.
///
/// `unitarity_residual` is `‖Û*Û − I‖_F`; `conjugation_residual` is the
/// worst `‖Φ(A) − Û·A·Û*‖_F / max(1, ‖A‖_F)` over the validation
/// sample. The column phases are only determined jointly: `Û` carries an
/// arbitrary global phase that cancels in the conjugation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtractionResult {
    pub u_hat: CMatrix,
    pub unitarity_residual: f64,
    pub conjugation_residual: f64,
    pub phase_note: String,
}

const VALIDATION_TRIALS: usize = 50;
const GATE_PAIRS: usize = 60;

/// Rebuilds the unitary `U` with `Φ(A) = U·A·U*` from black-box
/// evaluations of Φ.
///
/// Preconditions, checked in order: the dimension is at least 2 and
/// matches the map; the product rule holds ([`check_condition`] over an
/// internal sampler, else `ConditionViolated`); the scalar symbol is the
/// identity (else `ConditionViolated` — an adjoint-twisted map cannot be
/// written as a linear conjugation).
///
/// Construction: `Φ(e₁⊗e₁)` must be a rank-one orthogonal projection
/// (else `NotRankOneImage`); a unit vector `u₁` spanning its range is
/// the first column, and column `j` is `Φ(e_j⊗e₁)·u₁`, which shares
/// `u₁`'s phase offset. The result is validated on `Û*Û = I` and on
/// fresh random matrices; failures return `NonUnitaryResult` carrying
/// both residuals.
pub fn extract_unitary(
    oracle: &dyn MapOracle,
    n: usize,
    cfg: &ToleranceConfig,
) -> Result<ExtractionResult> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "unitary extraction needs dimension >= 2, got {n}"
        )));
    }
    let dim = oracle.validate(cfg)?;
    if dim != n {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: n,
        });
    }

    let lambda = AluthgeParams::new(0.5).expect("interior weight");
    let gate = EnsembleSpec::new(
        vec![n],
        GATE_PAIRS,
        ANALYSIS_SEED,
        MatrixFamily::ComplexGaussian,
    );
    let condition = check_condition(oracle, lambda, &gate, cfg)?;
    if condition.verdict != ConditionVerdict::Satisfied {
        return Err(Error::ConditionViolated {
            detail: format!(
                "product rule fails over {} pairs, so no conjugating unitary exists",
                condition.trials
            ),
            max_residual: condition.max_residual,
        });
    }

    let table = extract_h(oracle, &default_alpha_grid(ANALYSIS_SEED), cfg)?;
    if table.classification != SymbolClassification::Identity {
        let deviation = table
            .samples
            .iter()
            .map(|s| (s.value - s.alpha).norm() / s.alpha.norm().max(1.0))
            .fold(0.0f64, f64::max);
        return Err(Error::ConditionViolated {
            detail: format!(
                "scalar symbol classified as {:?}, not identity; a linear conjugation cannot produce it",
                table.classification
            ),
            max_residual: deviation,
        });
    }

    let e = |k: usize| {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k] = Complex64::new(1.0, 0.0);
        v
    };

    let first_image = oracle.apply(&outer(&e(0), &e(0))?)?;
    if !is_orthogonal_projection(&first_image, cfg)? {
        return Err(Error::NotRankOneImage {
            detail: "image of e1⊗e1 is not an orthogonal projection".into(),
        });
    }
    let trace_defect = (first_image.trace() - Complex64::new(1.0, 0.0)).norm();
    if trace_defect > cfg.tol_eq * n as f64 {
        return Err(Error::NotRankOneImage {
            detail: format!(
                "image of e1⊗e1 has trace {:.6}, want 1 (rank one)",
                first_image.trace().re
            ),
        });
    }

    let (_, eigvecs) = crate::matcore::herm_eig(&first_image, cfg)?;
    let mut u1 = eigvecs.column(n - 1);
    let norm = vec_norm(&u1);
    for z in &mut u1 {
        *z /= norm;
    }

    let mut columns = Vec::with_capacity(n);
    columns.push(u1.clone());
    for j in 1..n {
        let shift_image = oracle.apply(&outer(&e(j), &e(0))?)?;
        columns.push(shift_image.matvec(&u1));
    }
    let u_hat = CMatrix::from_columns(&columns)?;

    let unitarity_residual =
        (&(&u_hat.adjoint() * &u_hat) - &CMatrix::identity(n)).frobenius_norm();

    let validation = EnsembleSpec::new(
        vec![n],
        VALIDATION_TRIALS,
        ANALYSIS_SEED,
        MatrixFamily::ComplexGaussian,
    );
    let u_hat_adj = u_hat.adjoint();
    let mut conjugation_residual = 0.0f64;
    for trial in 0..VALIDATION_TRIALS {
        let mut rng = validation.trial_rng(n, trial);
        let a = gaussian_matrix(n, &mut rng);
        let image = oracle.apply(&a)?;
        let rebuilt = &(&u_hat * &a) * &u_hat_adj;
        let residual = (&image - &rebuilt).frobenius_norm() / a.frobenius_norm().max(1.0);
        conjugation_residual = conjugation_residual.max(residual);
    }

    if unitarity_residual > cfg.tol_law || conjugation_residual > cfg.tol_law {
        return Err(Error::NonUnitaryResult {
            unitarity_residual,
            conjugation_residual,
        });
    }

    Ok(ExtractionResult {
        u_hat,
        unitarity_residual,
        conjugation_residual,
        phase_note: "u_hat carries an arbitrary global phase; the conjugation A ↦ u_hat·A·u_hat* is phase-invariant"
            .into(),
    })
}
