//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Works directly on the complex matrix with unitary 2x2 rotations, so
//! eigenvalues come out with componentwise accuracy on the order of
//! machine epsilon times the norm. Input is assumed Hermitian; callers
//! symmetrize first.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::cmatrix::CMatrix;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and a unitary whose columns are the matching
/// eigenvectors: `a = q · diag(values) · q*`.
pub struct HermEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi sweeps.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermEigen> {
    let n = a.dim();
    let mut m = a.clone();
    let mut q = CMatrix::identity(n);

    if n == 1 {
        return Ok(HermEigen {
            values: vec![m[(0, 0)].re],
            vectors: q,
        });
    }

    let norm = m.frobenius_norm();
    let stop = f64::EPSILON * norm.max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for r in (p + 1)..n {
                off = off.max(m[(p, r)].norm());
            }
        }
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                rotate(&mut m, &mut q, p, r);
            }
        }
    }
    if !converged {
        // One final check: sweeps may have finished exactly at the bound.
        let mut off = 0.0f64;
        for p in 0..n {
            for r in (p + 1)..n {
                off = off.max(m[(p, r)].norm());
            }
        }
        if off > stop.max(f64::EPSILON * norm * 8.0) {
            return Err(Error::NoConvergence {
                algorithm: "jacobi eigensolver",
                iterations: MAX_SWEEPS,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, |i, j| q[(i, order[j])]);
    Ok(HermEigen { values, vectors })
}

/// Applies one unitary Jacobi rotation annihilating entry (p, r), p < r.
fn rotate(m: &mut CMatrix, q: &mut CMatrix, p: usize, r: usize) {
    let n = m.dim();
    let apr = m[(p, r)];
    let b = apr.norm();
    if b == 0.0 {
        return;
    }
    let phase = apr / b;
    let app = m[(p, p)].re;
    let arr = m[(r, r)].re;

    let tau = (arr - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Columns of the rotation J (restricted to indices p, r):
    //   J[:,p] = ( c, -s·conj(phase) ),  J[:,r] = ( s, c·conj(phase) ).
    // Update M <- J* M J and Q <- Q J.
    let jp = (Complex64::new(c, 0.0), -phase.conj() * s);
    let jr = (Complex64::new(s, 0.0), phase.conj() * c);

    // Right multiply rows of M by J: M <- M J.
    for i in 0..n {
        let mip = m[(i, p)];
        let mir = m[(i, r)];
        m[(i, p)] = mip * jp.0 + mir * jp.1;
        m[(i, r)] = mip * jr.0 + mir * jr.1;
    }
    // Left multiply by J*: rows p, r of M.
    for j in 0..n {
        let mpj = m[(p, j)];
        let mrj = m[(r, j)];
        m[(p, j)] = jp.0.conj() * mpj + jp.1.conj() * mrj;
        m[(r, j)] = jr.0.conj() * mpj + jr.1.conj() * mrj;
    }
    // Clean the pivot pair so roundoff cannot accumulate there.
    m[(p, r)] = Complex64::new(0.0, 0.0);
    m[(r, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(r, r)] = Complex64::new(m[(r, r)].re, 0.0);

    // Accumulate eigenvectors.
    for i in 0..n {
        let qip = q[(i, p)];
        let qir = q[(i, r)];
        q[(i, p)] = qip * jp.0 + qir * jp.1;
        q[(i, r)] = qip * jr.0 + qir * jr.1;
    }
}
