//! Operator predicates and spectral objects: normality, quasi-normality,
//! partial isometries, projections and their order, eigenvalue multisets,
//! and numerical range polygons.

mod numrange;
mod spectrum;

pub use numrange::{numerical_range, NumericalRangePolygon};
pub use spectrum::{bottleneck_distance, spectra_match, spectrum, SpectrumResult};

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, ToleranceConfig};

/// True when `‖T*T − TT*‖_F ≤ tol_eq · max(1, ‖T‖_F²)`.
pub fn is_normal(t: &CMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    t.ensure_finite("is_normal input")?;
    cfg.validate()?;
    let adj = t.adjoint();
    let defect = (&(&adj * t) - &(t * &adj)).frobenius_norm();
    let norm = t.frobenius_norm();
    Ok(defect <= cfg.tol_eq * (norm * norm).max(1.0))
}

/// True when `T` commutes with `T*T` within
/// `tol_eq · max(1, ‖T‖_F³)`. Quasi-normal matrices are exactly the
/// fixed points of the transform at any interior parameter, and in
/// finite dimension they coincide with the normal ones.
pub fn is_quasinormal(t: &CMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    t.ensure_finite("is_quasinormal input")?;
    cfg.validate()?;
    let gram = &t.adjoint() * t;
    let defect = (&(t * &gram) - &(&gram * t)).frobenius_norm();
    let norm = t.frobenius_norm();
    Ok(defect <= cfg.tol_eq * (norm * norm * norm).max(1.0))
}

/// True when `T*T` is an orthogonal projection within `tol_eq`.
pub fn is_partial_isometry(t: &CMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    t.ensure_finite("is_partial_isometry input")?;
    cfg.validate()?;
    let gram = &t.adjoint() * t;
    let idem = (&(&gram * &gram) - &gram).frobenius_norm();
    let herm = gram.hermitian_defect();
    Ok(idem <= cfg.tol_eq && herm <= cfg.tol_eq)
}

/// True when `P` is idempotent and self-adjoint within `tol_eq`.
pub fn is_orthogonal_projection(p: &CMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    p.ensure_finite("is_orthogonal_projection input")?;
    cfg.validate()?;
    let idem = (&(p * p) - p).frobenius_norm();
    Ok(idem <= cfg.tol_eq && p.hermitian_defect() <= cfg.tol_eq)
}

/// Order and orthogonality relations between two orthogonal projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ProjectionRelations {
    /// `PQ = QP = 0` within `tol_eq`.
    pub orthogonal: bool,
    /// `P ≤ Q`, i.e. `PQ = QP = P` within `tol_eq`.
    pub leq: bool,
    /// `Q ≤ P`, i.e. `PQ = QP = Q` within `tol_eq`.
    pub geq: bool,
}

/// Compares two orthogonal projections. Errors with `NotAProjection`
/// when either argument fails [`is_orthogonal_projection`].
pub fn projection_relations(
    p: &CMatrix,
    q: &CMatrix,
    cfg: &ToleranceConfig,
) -> Result<ProjectionRelations> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    if !is_orthogonal_projection(p, cfg)? {
        return Err(Error::NotAProjection { which: "first" });
    }
    if !is_orthogonal_projection(q, cfg)? {
        return Err(Error::NotAProjection { which: "second" });
    }
    let pq = p * q;
    let qp = q * p;
    let orthogonal = pq.frobenius_norm() <= cfg.tol_eq && qp.frobenius_norm() <= cfg.tol_eq;
    let leq =
        (&pq - p).frobenius_norm() <= cfg.tol_eq && (&qp - p).frobenius_norm() <= cfg.tol_eq;
    let geq =
        (&pq - q).frobenius_norm() <= cfg.tol_eq && (&qp - q).frobenius_norm() <= cfg.tol_eq;
    Ok(ProjectionRelations {
        orthogonal,
        leq,
        geq,
    })
}
