//! General (non-Hermitian) eigenvalue computation and multiset matching.
//!
//! Eigenvalues come from Householder reduction to Hessenberg form
//! followed by explicitly shifted QR iteration with Givens rotations;
//! 2x2 diagonal blocks are finished by a stable quadratic solve.
//! Multisets are compared with the bottleneck matching distance: the
//! smallest threshold admitting a perfect matching between the two
//! multisets where paired eigenvalues differ by at most the threshold.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, ToleranceConfig};

/// Eigenvalue multiset of a matrix, sorted by real part then imaginary
/// part so equal multisets serialize identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    #[serde(with = "crate::codec::cpx_vec")]
    pub eigenvalues: Vec<Complex64>,
}

/// Computes the eigenvalue multiset of a square complex matrix.
pub fn spectrum(t: &CMatrix, cfg: &ToleranceConfig) -> Result<SpectrumResult> {
    t.ensure_finite("spectrum input")?;
    cfg.validate()?;
    let mut eigenvalues = eigenvalues(t)?;
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(SpectrumResult { eigenvalues })
}

/// True when the bottleneck distance between the multisets is at most
/// `tol`. Errors with `DimensionMismatch` on unequal lengths.
pub fn spectra_match(a: &SpectrumResult, b: &SpectrumResult, tol: f64) -> Result<bool> {
    Ok(bottleneck_distance(&a.eigenvalues, &b.eigenvalues)? <= tol)
}

/// Smallest `d` such that some perfect matching pairs each entry of `a`
/// with a distinct entry of `b` at distance at most `d`.
pub fn bottleneck_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let n = a.len();
    if n == 0 {
        return Ok(0.0);
    }
    let mut costs = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            costs[i * n + j] = (a[i] - b[j]).norm();
        }
    }
    let mut levels: Vec<f64> = costs.clone();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    // Binary search the smallest level at which a perfect matching exists.
    let mut lo = 0usize;
    let mut hi = levels.len() - 1;
    if !has_perfect_matching(&costs, n, levels[hi]) {
        // Cannot happen: at the largest cost every edge is allowed.
        return Ok(levels[hi]);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if has_perfect_matching(&costs, n, levels[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(levels[lo])
}

/// Kuhn's augmenting-path bipartite matching restricted to edges with
/// cost at most `threshold`.
fn has_perfect_matching(costs: &[f64], n: usize, threshold: f64) -> bool {
    let mut match_of_b: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut visited = vec![false; n];
        if !augment(costs, n, threshold, i, &mut visited, &mut match_of_b) {
            return false;
        }
    }
    true
}

fn augment(
    costs: &[f64],
    n: usize,
    threshold: f64,
    i: usize,
    visited: &mut [bool],
    match_of_b: &mut [Option<usize>],
) -> bool {
    for j in 0..n {
        if visited[j] || costs[i * n + j] > threshold {
            continue;
        }
        visited[j] = true;
        if match_of_b[j].is_none()
            || augment(costs, n, threshold, match_of_b[j].unwrap(), visited, match_of_b)
        {
            match_of_b[j] = Some(i);
            return true;
        }
    }
    false
}

const MAX_QR_STEPS_PER_DIM: usize = 60;

/// Eigenvalues in unspecified order.
fn eigenvalues(t: &CMatrix) -> Result<Vec<Complex64>> {
    let n = t.dim();
    if n == 1 {
        return Ok(vec![t[(0, 0)]]);
    }
    let mut h = hessenberg(t);
    let scale = h.frobenius_norm();
    if scale == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }

    let budget = MAX_QR_STEPS_PER_DIM * n;
    let mut steps = 0usize;
    let mut stalled = 0usize;
    let mut prev_active = usize::MAX;
    loop {
        deflate_small_subdiagonals(&mut h, scale);

        // Trim converged 1x1 blocks off the bottom.
        let mut m = n - 1;
        while m > 0 && h[(m, m - 1)] == Complex64::new(0.0, 0.0) {
            m -= 1;
        }
        if m == 0 {
            break;
        }
        let mut l = m;
        while l > 0 && h[(l, l - 1)] != Complex64::new(0.0, 0.0) {
            l -= 1;
        }

        if m == l + 1 {
            // 2x2 block: finish in closed form.
            let (r1, r2) = quadratic_eigenvalues(h[(l, l)], h[(l, m)], h[(m, l)], h[(m, m)]);
            h[(l, l)] = r1;
            h[(m, m)] = r2;
            h[(m, l)] = Complex64::new(0.0, 0.0);
            continue;
        }

        if m != prev_active {
            stalled = 0;
            prev_active = m;
        }
        steps += 1;
        stalled += 1;
        if steps > budget {
            return Err(Error::NoConvergence {
                algorithm: "shifted qr eigensolver",
                iterations: budget,
            });
        }

        let shift = if stalled % 16 == 0 {
            // Exceptional shift to break symmetric stalls.
            h[(m, m)] + Complex64::new(1.5 * h[(m, m - 1)].norm(), 0.5 * h[(m - 1, m - 2)].norm())
        } else {
            wilkinson_shift(h[(m - 1, m - 1)], h[(m - 1, m)], h[(m, m - 1)], h[(m, m)])
        };
        qr_step(&mut h, shift);
    }

    Ok((0..n).map(|i| h[(i, i)]).collect())
}

/// Householder reduction to upper Hessenberg form (similarity).
fn hessenberg(t: &CMatrix) -> CMatrix {
    let n = t.dim();
    let mut h = t.clone();
    for k in 0..n.saturating_sub(2) {
        // Build the reflector for column k below the subdiagonal.
        let mut norm2 = 0.0f64;
        for i in k + 1..n {
            norm2 += h[(i, k)].norm_sqr();
        }
        let alpha = norm2.sqrt();
        if alpha == 0.0 {
            continue;
        }
        let pivot = h[(k + 1, k)];
        let phase = if pivot.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            pivot / pivot.norm()
        };
        // v = x + phase * alpha * e1 over rows k+1..n.
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // H <- (I - beta v v*) H
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in k + 1..n {
                dot += v[i].conj() * h[(i, j)];
            }
            let dot = dot * beta;
            for i in k + 1..n {
                let vi = v[i];
                h[(i, j)] -= vi * dot;
            }
        }
        // H <- H (I - beta v v*)
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in k + 1..n {
                dot += h[(i, j)] * v[j];
            }
            let dot = dot * beta;
            for j in k + 1..n {
                h[(i, j)] -= dot * v[j].conj();
            }
        }
        // Entries below the subdiagonal are now zero by construction.
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    h
}

/// Zeroes subdiagonal entries that are negligible relative to their
/// diagonal neighbors.
fn deflate_small_subdiagonals(h: &mut CMatrix, scale: f64) {
    let n = h.dim();
    for k in 0..n - 1 {
        let sub = h[(k + 1, k)].norm();
        if sub == 0.0 {
            continue;
        }
        let local = h[(k, k)].norm() + h[(k + 1, k + 1)].norm();
        let floor = if local > 0.0 {
            f64::EPSILON * local
        } else {
            f64::EPSILON * scale
        };
        if sub <= floor {
            h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Eigenvalue of the trailing 2x2 block closest to its bottom-right
/// entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let (r1, r2) = quadratic_eigenvalues(a, b, c, d);
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// Roots of `z² − (a+d)z + (ad − bc)`, computed without cancellation.
fn quadratic_eigenvalues(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> (Complex64, Complex64) {
    let tr = a + d;
    let det = a * d - b * c;
    let mut disc = (tr * tr - 4.0 * det).sqrt();
    if (tr.conj() * disc).re < 0.0 {
        disc = -disc;
    }
    let r1 = (tr + disc) * 0.5;
    let r2 = if r1.norm() > 0.0 { det / r1 } else { r1 };
    (r1, r2)
}

/// One explicit QR step with shift `mu` on the full Hessenberg matrix:
/// factor `H − μI = QR` with Givens rotations, then form `RQ + μI`.
/// Rotations at exactly-zero subdiagonals are the identity, so deflated
/// structure is preserved bit-for-bit.
fn qr_step(h: &mut CMatrix, mu: Complex64) {
    let n = h.dim();
    for i in 0..n {
        h[(i, i)] -= mu;
    }
    let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let f = h[(k, k)];
        let g = h[(k + 1, k)];
        let (cs, sn) = givens(f, g);
        rotations.push((cs, sn));
        if cs == 1.0 && sn == Complex64::new(0.0, 0.0) {
            continue;
        }
        // Left-apply G* to rows k, k+1.
        for j in 0..n {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = cs * x + sn * y;
            h[(k + 1, j)] = -sn.conj() * x + cs * y;
        }
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
    }
    for (k, &(cs, sn)) in rotations.iter().enumerate() {
        if cs == 1.0 && sn == Complex64::new(0.0, 0.0) {
            continue;
        }
        // Right-apply G to columns k, k+1.
        for i in 0..n {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * cs + y * sn.conj();
            h[(i, k + 1)] = -x * sn + y * cs;
        }
    }
    for i in 0..n {
        h[(i, i)] += mu;
    }
    // Re-zero anything below the subdiagonal that roundoff resurrected.
    for i in 2..n {
        for j in 0..i - 1 {
            h[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Complex Givens rotation: returns `(c, s)` with `c` real such that
/// `[c s; -s̄ c]* [f; g] = [r; 0]`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if f.norm() == 0.0 {
        // Pure swap with phase.
        return (0.0, g.conj() / g.norm());
    }
    let fn_ = f.norm();
    let r = (fn_ * fn_ + g.norm_sqr()).sqrt();
    let cs = fn_ / r;
    let sn = (f / fn_) * g.conj() / r;
    (cs, sn)
}
