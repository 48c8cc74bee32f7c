//! Seeded random matrix ensembles.
//!
//! Every trial derives its own RNG stream from `(seed, dim, trial)`, so
//! reports are reproducible and trials are independent of evaluation
//! order.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{svd, vec_norm, CMatrix, ToleranceConfig};

/// Families a law can draw its trial matrices from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixFamily {
    ComplexGaussian,
    HaarUnitary,
    ConstructedNormal,
    ConstructedProjections,
    RankOne,
}

/// Dimensions, trial count, seed, and family for a law run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub dims: Vec<usize>,
    pub trials_per_dim: usize,
    pub seed: u64,
    pub family: MatrixFamily,
}

impl EnsembleSpec {
    pub fn new(dims: Vec<usize>, trials_per_dim: usize, seed: u64, family: MatrixFamily) -> Self {
        EnsembleSpec {
            dims,
            trials_per_dim,
            seed,
            family,
        }
    }

    /// Supported dimensions are 1 through 12 and at least one trial is
    /// required.
    pub fn validate(&self) -> Result<()> {
        if self.trials_per_dim == 0 {
            return Err(Error::InvalidParameter("trials_per_dim must be >= 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::InvalidParameter("dims must be nonempty".into()));
        }
        if let Some(&bad) = self.dims.iter().find(|&&n| n == 0 || n > 12) {
            return Err(Error::InvalidParameter(format!(
                "dimension {bad} outside the supported range 1..=12"
            )));
        }
        Ok(())
    }

    /// Total number of trials across all dimensions.
    pub fn total_trials(&self) -> u64 {
        (self.dims.len() * self.trials_per_dim) as u64
    }

    /// Deterministic per-trial RNG.
    pub fn trial_rng(&self, dim: usize, trial: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.seed, dim as u64, trial as u64))
    }

    /// Draws one matrix from this spec's family.
    pub fn draw(&self, dim: usize, rng: &mut impl Rng) -> CMatrix {
        match self.family {
            MatrixFamily::ComplexGaussian => gaussian_matrix(dim, rng),
            MatrixFamily::HaarUnitary => haar_unitary(dim, rng),
            MatrixFamily::ConstructedNormal => constructed_normal(dim, rng),
            MatrixFamily::ConstructedProjections => random_projection(dim, rng).0,
            MatrixFamily::RankOne => {
                let x = gaussian_vector(dim, rng);
                let y = nonzero_gaussian_vector(dim, rng);
                crate::matcore::outer(&x, &y).expect("dimensions agree")
            }
        }
    }
}

/// splitmix64 step, used to mix seed material.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Mixes `(seed, dim, trial)` into a stream seed.
pub fn derive_seed(seed: u64, dim: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(dim.wrapping_mul(0xd6e8feb86659fd93) ^ splitmix64(trial)))
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Complex standard Gaussian scalar.
pub fn gaussian_scalar(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Scalar from the annulus `0.5 ≤ |z| ≤ 2` with uniform phase.
pub fn annulus_scalar(rng: &mut impl Rng) -> Complex64 {
    let magnitude = rng.gen_range(0.5..=2.0);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(magnitude, phase)
}

/// Vector of independent complex Gaussians.
pub fn gaussian_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..n).map(|_| gaussian_scalar(rng)).collect()
}

/// Gaussian vector redrawn until comfortably nonzero.
pub fn nonzero_gaussian_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let v = gaussian_vector(n, rng);
        if vec_norm(&v) > 1e-6 {
            return v;
        }
    }
}

/// Unit vector uniform on the sphere.
pub fn unit_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let v = nonzero_gaussian_vector(n, rng);
    let norm = vec_norm(&v);
    v.into_iter().map(|z| z / norm).collect()
}

/// Matrix of independent complex Gaussians.
pub fn gaussian_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = gaussian_scalar(rng);
        }
    }
    m
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the positive
/// diagonal convention, via twice-iterated modified Gram-Schmidt.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    'redraw: loop {
        let g = gaussian_matrix(n, rng);
        let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
        for j in 0..n {
            for _pass in 0..2 {
                for k in 0..j {
                    let proj: Complex64 = cols[j]
                        .iter()
                        .zip(&cols[k])
                        .map(|(x, q)| q.conj() * x)
                        .sum();
                    for i in 0..n {
                        let correction = proj * cols[k][i];
                        cols[j][i] -= correction;
                    }
                }
            }
            let norm = vec_norm(&cols[j]);
            if norm < 1e-8 {
                continue 'redraw;
            }
            for z in &mut cols[j] {
                *z /= norm;
            }
        }
        return CMatrix::from_columns(&cols).expect("square by construction");
    }
}

/// Normal matrix `U · diag(d) · U*` with Haar `U` and Gaussian diagonal.
pub fn constructed_normal(n: usize, rng: &mut impl Rng) -> CMatrix {
    let u = haar_unitary(n, rng);
    let d = CMatrix::from_diag(&gaussian_vector(n, rng));
    &(&u * &d) * &u.adjoint()
}

/// Positive definite matrix with eigenvalues in `[0.1, 1.1]`.
pub fn constructed_positive(n: usize, rng: &mut impl Rng) -> CMatrix {
    let u = haar_unitary(n, rng);
    let d: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..=1.1)).collect();
    &(&u * &CMatrix::from_real_diag(&d)) * &u.adjoint()
}

/// Random orthogonal projection of rank uniform in `1..=n-1` (or rank 1
/// when `n = 1`); returns the projection and its rank.
pub fn random_projection(n: usize, rng: &mut impl Rng) -> (CMatrix, usize) {
    let rank = if n <= 1 { 1 } else { rng.gen_range(1..n) };
    let u = haar_unitary(n, rng);
    (projection_onto_columns(&u, rank), rank)
}

/// Projection onto the span of the first `rank` columns of `u`.
pub fn projection_onto_columns(u: &CMatrix, rank: usize) -> CMatrix {
    let n = u.dim();
    let mut p = CMatrix::zeros(n);
    for k in 0..rank {
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += u[(i, k)] * u[(j, k)].conj();
            }
        }
    }
    p
}

/// Gaussian matrix redrawn while numerically singular; returns the draw
/// and the redraw count. Errors with `SingularEnsemble` after 64
/// consecutive singular draws.
pub fn invertible_gaussian(
    n: usize,
    rng: &mut impl Rng,
    cfg: &ToleranceConfig,
) -> Result<(CMatrix, usize)> {
    let mut redraws = 0usize;
    loop {
        let g = gaussian_matrix(n, rng);
        let f = svd(&g)?;
        let top = f.sigma.first().copied().unwrap_or(0.0);
        let cutoff = cfg.rank_cutoff(top, n);
        if f.sigma.last().copied().unwrap_or(0.0) > cutoff {
            return Ok((g, redraws));
        }
        redraws += 1;
        if redraws >= 64 {
            return Err(Error::SingularEnsemble { redraws });
        }
    }
}

/// Quasi-normal (hence normal) matrix supported inside the range of the
/// projection onto the first `rank` columns of `u`: a normal block in
/// that subspace, zero on its complement.
pub fn normal_inside_range(u: &CMatrix, rank: usize, rng: &mut impl Rng) -> CMatrix {
    let n = u.dim();
    let mut t = CMatrix::zeros(n);
    // Random normal on the r-dimensional coordinate block.
    let w = haar_unitary(rank, rng);
    let d = gaussian_vector(rank, rng);
    let block = &(&w * &CMatrix::from_diag(&d)) * &w.adjoint();
    // Conjugate the block into the span of the first `rank` columns.
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..rank {
                for b in 0..rank {
                    acc += u[(i, a)] * block[(a, b)] * u[(j, b)].conj();
                }
            }
            t[(i, j)] = acc;
        }
    }
    t
}

/// Deterministic low-discrepancy unit vector: entries with Weyl-sequence
/// phases and magnitudes, normalized. Index 0, 1, 2, ... walks the
/// sequence; no two indices give parallel vectors in practice.
pub fn weyl_unit_vector(n: usize, index: usize) -> Vec<Complex64> {
    // Square roots of primes are irrational and rationally independent.
    const ALPHAS: [f64; 12] = [
        1.4142135623730951,  // sqrt 2
        1.7320508075688772,  // sqrt 3
        2.23606797749979,    // sqrt 5
        2.6457513110645907,  // sqrt 7
        3.3166247903554,     // sqrt 11
        3.605551275463989,   // sqrt 13
        4.123105625617661,   // sqrt 17
        4.358898943540674,   // sqrt 19
        4.795831523312719,   // sqrt 23
        5.385164807134504,   // sqrt 29
        5.5677643628300215,  // sqrt 31
        6.082762530298219,   // sqrt 37
    ];
    let k = (index + 1) as f64;
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| {
            let phase = (k * ALPHAS[i % ALPHAS.len()]).fract() * std::f64::consts::TAU;
            let magnitude = 0.5 + (k * ALPHAS[(i + 5) % ALPHAS.len()] * 0.61803398874989485).fract();
            Complex64::from_polar(magnitude, phase)
        })
        .collect();
    let norm = vec_norm(&v);
    for z in &mut v {
        *z /= norm;
    }
    v
}
