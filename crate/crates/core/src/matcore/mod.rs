//! Matrix kernel: complex matrices, tolerances, Hermitian eigensolver,
//! PSD fractional powers, and the canonical polar decomposition.

mod cmatrix;
mod jacobi;
mod svd;

pub use cmatrix::{inner, outer, vec_norm, CMatrix, MatrixDoc};
pub use svd::{op_norm_2, svd, Svd};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds used across the toolkit.
///
/// * `tol_rank`: relative singular value cutoff deciding numerical rank.
/// * `tol_eq`: relative Frobenius tolerance for equality of operators.
/// * `tol_psd`: relative allowance for negative eigenvalues of nominally
///   PSD matrices.
/// * `tol_law`: residual threshold for statistical law checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub tol_rank: f64,
    pub tol_eq: f64,
    pub tol_psd: f64,
    pub tol_law: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            tol_rank: 1e-10,
            tol_eq: 1e-9,
            tol_psd: 1e-9,
            tol_law: 1e-7,
        }
    }
}

impl ToleranceConfig {
    /// Errors unless every tolerance is finite and strictly positive.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("tol_rank", self.tol_rank),
            ("tol_eq", self.tol_eq),
            ("tol_psd", self.tol_psd),
            ("tol_law", self.tol_law),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Singular value cutoff for a matrix of side `n` with largest
    /// singular value `sigma_max`. Floored at `n * eps * sigma_max` so the
    /// cutoff never dips below roundoff scale.
    pub fn rank_cutoff(&self, sigma_max: f64, n: usize) -> f64 {
        (self.tol_rank * sigma_max).max(n as f64 * f64::EPSILON * sigma_max)
    }
}

/// Canonical polar decomposition `t = v * p`.
///
/// `p` is PSD and `v` is the partial isometry vanishing on the null space
/// of `t`, so `v` and `t` have the same kernel. For invertible `t` the
/// factor `v` is unitary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolarResult {
    pub v: CMatrix,
    pub p: CMatrix,
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
///
/// Errors with `NonHermitian` when `‖a − a*‖_F > tol_eq · ‖a‖_F`. The
/// factorization itself runs on the Hermitian part of `a`.
pub fn herm_eig(a: &CMatrix, cfg: &ToleranceConfig) -> Result<(Vec<f64>, CMatrix)> {
    a.ensure_finite("herm_eig input")?;
    cfg.validate()?;
    let defect = a.hermitian_defect();
    let allowed = cfg.tol_eq * a.frobenius_norm();
    if defect > allowed {
        return Err(Error::NonHermitian {
            residual: defect,
            allowed,
        });
    }
    let eig = jacobi::hermitian_eigen(&a.hermitian_part())?;
    Ok((eig.values, eig.vectors))
}

/// Fractional power `p^gamma` of a PSD matrix, for `gamma` in [0, 1].
///
/// Eigenvalues in `[-tol_psd · max(1, ‖p‖_F), 0)` are clamped to zero;
/// anything lower is a `NotPsd` error. The zeroth power is the identity
/// (the scalar convention `0^0 = 1`), which keeps `gamma = 0` consistent
/// with an untouched left factor in products like `p^0 · v · p^1`.
///
/// For interior exponents, eigenvalues at or below the rank cutoff are
/// treated as exact zeros. A fractional power inflates sub-cutoff noise
/// by `eps^(gamma-1)` relative to the data, so a factor carrying a
/// numerically null direction (such as the PSD part of a singular polar
/// decomposition) must stay null there; this mirrors the null-space
/// convention of [`polar`]. The endpoint `gamma = 1` keeps every
/// eigenvalue as is, since no amplification occurs.
pub fn psd_power(p: &CMatrix, gamma: f64, cfg: &ToleranceConfig) -> Result<CMatrix> {
    if !(gamma.is_finite() && (0.0..=1.0).contains(&gamma)) {
        return Err(Error::InvalidParameter(format!(
            "power exponent must lie in [0, 1], got {gamma}"
        )));
    }
    let (values, q) = herm_eig(p, cfg)?;
    let allowed = cfg.tol_psd * p.frobenius_norm().max(1.0);
    if let Some(&lo) = values.first() {
        if lo < -allowed {
            return Err(Error::NotPsd {
                eigenvalue: lo,
                allowed,
            });
        }
    }
    if gamma == 0.0 {
        return Ok(CMatrix::identity(p.dim()));
    }
    let top = values.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = cfg.rank_cutoff(top, p.dim());
    let powered: Vec<f64> = values
        .iter()
        .map(|&v| {
            let v = v.max(0.0);
            if gamma == 1.0 {
                v
            } else if v <= cutoff {
                0.0
            } else {
                v.powf(gamma)
            }
        })
        .collect();
    let lambda = CMatrix::from_real_diag(&powered);
    Ok(&(&q * &lambda) * &q.adjoint())
}

/// Canonical polar decomposition via SVD.
///
/// Singular values at or below `cfg.rank_cutoff(sigma_max, n)` are treated
/// as zero: their directions are excluded from `v`, which is what makes
/// `v` vanish on the null space instead of acting arbitrarily there.
pub fn polar(t: &CMatrix, cfg: &ToleranceConfig) -> Result<PolarResult> {
    t.ensure_finite("polar input")?;
    cfg.validate()?;
    let n = t.dim();
    let f = svd::svd(t)?;
    let sigma_max = f.sigma.first().copied().unwrap_or(0.0);
    let cutoff = cfg.rank_cutoff(sigma_max, n);

    let mut v = CMatrix::zeros(n);
    for (k, &s) in f.sigma.iter().enumerate() {
        if s <= cutoff || s == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                v[(i, j)] += f.u[(i, k)] * f.v[(j, k)].conj();
            }
        }
    }

    let sig = CMatrix::from_real_diag(&f.sigma);
    let p = &(&f.v * &sig) * &f.v.adjoint();
    Ok(PolarResult { v, p })
}

/// True when `a` is Hermitian within `tol_eq` (relative) and its smallest
/// eigenvalue is at least `-tol_psd · max(1, ‖a‖_F)`.
pub fn is_psd(a: &CMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    a.ensure_finite("is_psd input")?;
    cfg.validate()?;
    if a.hermitian_defect() > cfg.tol_eq * a.frobenius_norm().max(1.0) {
        return Ok(false);
    }
    let eig = jacobi::hermitian_eigen(&a.hermitian_part())?;
    let lo = eig.values.first().copied().unwrap_or(0.0);
    Ok(lo >= -cfg.tol_psd * a.frobenius_norm().max(1.0))
}
