//! One-sided Jacobi singular value decomposition.
//!
//! Rotations are applied to the columns of the input until they are
//! mutually orthogonal, which yields singular values with absolute error
//! near machine epsilon times the largest singular value. That accuracy
//! is what lets a rank cutoff at `tol_rank * sigma_max` separate true
//! rank deficiency from roundoff.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::cmatrix::{vec_norm, CMatrix};

const MAX_SWEEPS: usize = 60;

/// Factorization `t = u * diag(sigma) * v.adjoint()` with `sigma` sorted
/// descending. `u` and `v` are unitary; columns of `u` matching zero
/// singular values are an arbitrary orthonormal completion.
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// Computes the SVD of a square complex matrix.
pub fn svd(t: &CMatrix) -> Result<Svd> {
    let n = t.dim();
    let mut w = t.clone();
    let mut v = CMatrix::identity(n);

    // Deflation threshold: a column below this carries no singular
    // value the algorithm could resolve (absolute error is already
    // eps * sigma_max), and ‖W‖_F is invariant under the sweeps. The
    // factor n absorbs accumulated cancellation error, which can sit a
    // small multiple above eps * ‖W‖_F.
    let tiny = n as f64 * f64::EPSILON * w.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                if rotate_pair(&mut w, &mut v, p, q, tiny) {
                    rotated = true;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged && n > 1 {
        return Err(Error::NoConvergence {
            algorithm: "one-sided jacobi svd",
            iterations: MAX_SWEEPS,
        });
    }

    let norms: Vec<f64> = (0..n).map(|j| vec_norm(&w.column(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v_sorted = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);

    let mut u_cols: Vec<Option<Vec<Complex64>>> = Vec::with_capacity(n);
    for &j in &order {
        if norms[j] > 0.0 {
            let col = w.column(j);
            u_cols.push(Some(col.iter().map(|z| z / norms[j]).collect()));
        } else {
            u_cols.push(None);
        }
    }
    let completed = complete_basis(n, u_cols);
    let u = CMatrix::from_columns(&completed)?;

    Ok(Svd {
        u,
        sigma,
        v: v_sorted,
    })
}

/// Largest singular value (spectral norm).
pub fn op_norm_2(t: &CMatrix) -> Result<f64> {
    Ok(svd(t)?.sigma.first().copied().unwrap_or(0.0))
}

/// Orthogonalizes columns p and q of `w`; returns true when the pair
/// was modified (a rotation was applied or a column was deflated).
fn rotate_pair(w: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, tiny: f64) -> bool {
    let n = w.dim();
    let mut a = 0.0f64;
    let mut d = 0.0f64;
    let mut g = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let wp = w[(i, p)];
        let wq = w[(i, q)];
        a += wp.norm_sqr();
        d += wq.norm_sqr();
        g += wp.conj() * wq;
    }

    // A column at roundoff scale relative to the whole matrix is
    // debris from earlier rotations, not a resolvable singular value.
    // Zero it exactly: when such a column stays parallel to a large
    // one, the relative test below compares b against eps * b and the
    // sweep would otherwise never terminate.
    let tiny2 = tiny * tiny;
    let mut deflated = false;
    if a > 0.0 && a <= tiny2 {
        for i in 0..n {
            w[(i, p)] = Complex64::new(0.0, 0.0);
        }
        a = 0.0;
        deflated = true;
    }
    if d > 0.0 && d <= tiny2 {
        for i in 0..n {
            w[(i, q)] = Complex64::new(0.0, 0.0);
        }
        d = 0.0;
        deflated = true;
    }

    let b = g.norm();
    if a == 0.0 || d == 0.0 || b <= f64::EPSILON * (a * d).sqrt() {
        return deflated;
    }
    let phase = g / b;
    let tau = (d - a) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Right-multiply both W and V by the rotation with columns
    //   J[:,p] = ( c, -s·conj(phase) ),  J[:,q] = ( s, c·conj(phase) ).
    let neg = -phase.conj() * s;
    let pos = phase.conj() * c;
    for i in 0..n {
        let wp = w[(i, p)];
        let wq = w[(i, q)];
        w[(i, p)] = wp * c + wq * neg;
        w[(i, q)] = wp * s + wq * pos;
    }
    for i in 0..n {
        let vp = v[(i, p)];
        let vq = v[(i, q)];
        v[(i, p)] = vp * c + vq * neg;
        v[(i, q)] = vp * s + vq * pos;
    }
    true
}

/// Fills the `None` slots with unit vectors orthogonal to every other
/// column, via modified Gram-Schmidt over the standard basis.
fn complete_basis(n: usize, mut cols: Vec<Option<Vec<Complex64>>>) -> Vec<Vec<Complex64>> {
    for slot in 0..n {
        if cols[slot].is_some() {
            continue;
        }
        let mut best: Option<Vec<Complex64>> = None;
        let mut best_norm = -1.0f64;
        for k in 0..n {
            let mut cand: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
                .collect();
            for _pass in 0..2 {
                for other in cols.iter().flatten() {
                    let proj: Complex64 =
                        cand.iter().zip(other).map(|(x, y)| y.conj() * x).sum();
                    for i in 0..n {
                        cand[i] -= proj * other[i];
                    }
                }
            }
            let norm = vec_norm(&cand);
            if norm > best_norm {
                best_norm = norm;
                best = Some(cand.iter().map(|z| z / norm.max(f64::MIN_POSITIVE)).collect());
            }
        }
        cols[slot] = best;
    }
    cols.into_iter().map(|c| c.unwrap()).collect()
}
