//! Support-function approximation of the numerical range
//! `W(T) = {⟨Tv, v⟩ : ‖v‖ = 1}`.
//!
//! For each direction θ the top eigenvector of the Hermitian part of
//! `e^{−iθ}T` maximizes `Re(e^{−iθ}⟨Tv, v⟩)`, so its Rayleigh point lies
//! on the boundary of `W(T)`. The polygon through those points is an
//! inner approximation; the support half-planes through the same points
//! are an outer one, which is what containment queries use.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{herm_eig, inner, CMatrix, ToleranceConfig};

/// Boundary sampling of the numerical range at equally spaced support
/// angles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumericalRangePolygon {
    /// Angles `θ_k = 2πk/m` in `[0, 2π)`.
    pub support_angles: Vec<f64>,
    /// Rayleigh points `⟨Tv_k, v_k⟩` for the maximizing unit vectors.
    #[serde(with = "crate::codec::cpx_vec")]
    pub boundary_points: Vec<Complex64>,
    /// Whether the sampled points are in convex position (up to
    /// tolerance); true by construction except for degenerate roundoff.
    pub is_convex: bool,
}

impl NumericalRangePolygon {
    /// True when `z` satisfies every sampled support inequality with the
    /// given slack: `Re(e^{−iθ_k} z) ≤ Re(e^{−iθ_k} p_k) + slack`.
    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        self.support_angles
            .iter()
            .zip(&self.boundary_points)
            .all(|(&theta, &p)| {
                let dir = Complex64::new(0.0, -theta).exp();
                (dir * z).re <= (dir * p).re + slack
            })
    }
}

/// Samples the numerical range boundary at `m ≥ 8` support angles.
pub fn numerical_range(
    t: &CMatrix,
    m: usize,
    cfg: &ToleranceConfig,
) -> Result<NumericalRangePolygon> {
    if m < 8 {
        return Err(Error::InvalidParameter(format!(
            "angle count must be at least 8, got {m}"
        )));
    }
    t.ensure_finite("numerical_range input")?;
    cfg.validate()?;
    let n = t.dim();

    let mut support_angles = Vec::with_capacity(m);
    let mut boundary_points = Vec::with_capacity(m);
    for k in 0..m {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        let dir = Complex64::new(0.0, -theta).exp();
        let rotated = t.scale(dir);
        let herm = rotated.hermitian_part();
        let (_, q) = herm_eig(&herm, cfg)?;
        let v = q.column(n - 1);
        let point = inner(&t.matvec(&v), &v);
        support_angles.push(theta);
        boundary_points.push(point);
    }

    let is_convex = convex_in_order(&boundary_points, cfg.tol_eq);
    Ok(NumericalRangePolygon {
        support_angles,
        boundary_points,
        is_convex,
    })
}

/// Checks that consecutive edge turns never go clockwise beyond a
/// tolerance scaled by the squared diameter.
fn convex_in_order(points: &[Complex64], tol: f64) -> bool {
    let m = points.len();
    let mut spread = 0.0f64;
    for i in 0..m {
        spread = spread.max((points[i] - points[0]).norm());
    }
    let allowance = tol * (spread * spread).max(1.0);
    for i in 0..m {
        let a = points[i];
        let b = points[(i + 1) % m];
        let c = points[(i + 2) % m];
        let u = b - a;
        let w = c - b;
        let cross = u.re * w.im - u.im * w.re;
        if cross < -allowance {
            return false;
        }
    }
    true
}
