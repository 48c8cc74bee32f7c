//! The λ-parametrized Aluthge transform.
//!
//! For a square complex matrix with canonical polar decomposition
//! `T = V·P` (see [`polar`]), the transform at parameter `λ ∈ [0, 1]` is
//!
//! ```text
//! Δ_λ(T) = P^λ · V · P^(1−λ)
//! ```
//!
//! The endpoints are degenerate in a useful way: `Δ_0(T) = T` and
//! `Δ_1(T) = P·V`, the Duggal transform. Interior values interpolate
//! between them; `λ = 1/2` is the classical Aluthge transform. The
//! transform preserves eigenvalues, never increases the spectral norm,
//! and fixes exactly the quasi-normal matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{inner, outer, polar, psd_power, vec_norm, CMatrix, ToleranceConfig};

/// Validated transform parameter.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AluthgeParams {
    lambda: f64,
}

impl AluthgeParams {
    /// Accepts `lambda` in the closed interval [0, 1].
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && (0.0..=1.0).contains(&lambda)) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie in [0, 1], got {lambda}"
            )));
        }
        Ok(AluthgeParams { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// True when `lambda` lies strictly between 0 and 1.
    pub fn is_interior(&self) -> bool {
        self.lambda > 0.0 && self.lambda < 1.0
    }
}

impl TryFrom<f64> for AluthgeParams {
    type Error = Error;

    fn try_from(lambda: f64) -> Result<Self> {
        AluthgeParams::new(lambda)
    }
}

impl From<AluthgeParams> for f64 {
    fn from(p: AluthgeParams) -> f64 {
        p.lambda
    }
}

/// Applies the transform: `Δ_λ(T) = P^λ · V · P^(1−λ)` from `T = V·P`.
pub fn aluthge(t: &CMatrix, params: AluthgeParams, cfg: &ToleranceConfig) -> Result<CMatrix> {
    let factors = polar(t, cfg)?;
    let left = psd_power(&factors.p, params.lambda(), cfg)?;
    let right = psd_power(&factors.p, 1.0 - params.lambda(), cfg)?;
    Ok(&(&left * &factors.v) * &right)
}

/// The Duggal transform `P·V`, the `λ = 1` endpoint.
pub fn duggal(t: &CMatrix, cfg: &ToleranceConfig) -> Result<CMatrix> {
    let params = AluthgeParams::new(1.0).expect("1.0 is a valid parameter");
    aluthge(t, params, cfg)
}

/// Closed form of the transform on a rank-one operator `x ⊗ y`:
///
/// ```text
/// Δ_λ(x ⊗ y) = (⟨x, y⟩ / ‖y‖²) · (y ⊗ y)
/// ```
///
/// valid for every interior `λ`; the right side does not depend on `λ`.
/// In particular the result vanishes exactly when `x ⊥ y`.
pub fn aluthge_rank_one(
    x: &[Complex64],
    y: &[Complex64],
    params: AluthgeParams,
) -> Result<CMatrix> {
    if !params.is_interior() {
        return Err(Error::InvalidParameter(format!(
            "rank-one closed form requires lambda in (0, 1), got {}",
            params.lambda()
        )));
    }
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    for (i, z) in x.iter().chain(y.iter()).enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite {
                context: "rank-one vector entry",
                row: i % x.len().max(1),
                col: 0,
            });
        }
    }
    let nx = vec_norm(x);
    let ny = vec_norm(y);
    if nx < f64::MIN_POSITIVE.sqrt() || ny < f64::MIN_POSITIVE.sqrt() {
        return Err(Error::ZeroVector);
    }
    let scale = inner(x, y) / (ny * ny);
    Ok(outer(y, y)?.scale(scale))
}

/// Record of repeated application of the transform.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationTrace {
    /// `iterates[0]` is the input; `iterates[k]` is the k-fold transform.
    pub iterates: Vec<CMatrix>,
    /// `residuals[k] = ‖iterates[k+1] − iterates[k]‖_F / max(1, ‖iterates[k]‖_F)`.
    pub residuals: Vec<f64>,
    /// True when the final residual reached `stop_tol`.
    pub converged: bool,
    /// Number of transform applications performed.
    pub steps: usize,
}

/// Iterates the transform until the relative step size drops to
/// `stop_tol` or `max_steps` applications have been performed.
pub fn aluthge_iterate(
    t: &CMatrix,
    params: AluthgeParams,
    max_steps: usize,
    stop_tol: f64,
    cfg: &ToleranceConfig,
) -> Result<IterationTrace> {
    if max_steps == 0 {
        return Err(Error::InvalidParameter("max_steps must be >= 1".into()));
    }
    if !(stop_tol.is_finite() && stop_tol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "stop_tol must be finite and nonnegative, got {stop_tol}"
        )));
    }
    let mut iterates = vec![t.clone()];
    let mut residuals = Vec::new();
    let mut converged = false;
    for _ in 0..max_steps {
        let prev = iterates.last().expect("nonempty");
        let next = aluthge(prev, params, cfg)?;
        let residual = (&next - prev).frobenius_norm() / prev.frobenius_norm().max(1.0);
        iterates.push(next);
        residuals.push(residual);
        if residual <= stop_tol {
            converged = true;
            break;
        }
    }
    let steps = residuals.len();
    Ok(IterationTrace {
        iterates,
        residuals,
        converged,
        steps,
    })
}
