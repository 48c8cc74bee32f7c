//! Reads off the scalar symbol h of a map from its action on scalar
//! matrices: `Φ(αI) = h(α)·I`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, ToleranceConfig};

use super::MapOracle;

/// How the sampled symbol compares to the two admissible forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolClassification {
    /// `h(α) = α` on every sample.
    Identity,
    /// `h(α) = conj(α)` on every sample.
    Conjugation,
    /// Anything else (includes symbols failing `h(0)=0` or `h(1)=1`).
    Other,
}

/// One grid point and the scalar the map sent it to.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SymbolSample {
    #[serde(with = "crate::codec::cpx")]
    pub alpha: Complex64,
    #[serde(with = "crate::codec::cpx")]
    pub value: Complex64,
}

/// Sampled symbol together with its functional-equation residuals.
///
/// `additivity_residual` is the worst `|h(α+β) − h(α) − h(β)|` and
/// `multiplicativity_residual` the worst `|h(αβ) − h(α)h(β)|` over grid
/// pairs; both are reported, not asserted, so non-additive symbols (the
/// scalar reciprocal is the canonical one) surface as data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarSymbolTable {
    pub samples: Vec<SymbolSample>,
    pub classification: SymbolClassification,
    pub additivity_residual: f64,
    pub multiplicativity_residual: f64,
}

/// Default sample grid: the four anchors 0, 1, −1, i, eight points
/// inside the unit disk, and four of magnitude 10.
pub fn default_alpha_grid(seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
    ];
    for _ in 0..8 {
        let radius = rng.gen_range(0.05f64..0.95).sqrt();
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        grid.push(Complex64::from_polar(radius, phase));
    }
    for _ in 0..4 {
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        grid.push(Complex64::from_polar(10.0, phase));
    }
    grid
}

/// Evaluates `h(α)` as `trace(Φ(αI))/n`, erroring unless the image is a
/// scalar matrix within `tol_eq` (relative to its size).
pub(crate) fn symbol_at(
    oracle: &dyn MapOracle,
    n: usize,
    alpha: Complex64,
    cfg: &ToleranceConfig,
) -> Result<Complex64> {
    let image = oracle.apply(&CMatrix::identity(n).scale(alpha))?;
    image.ensure_finite("scalar image")?;
    let h = image.trace() / n as f64;
    let defect = (&image - &CMatrix::identity(n).scale(h)).frobenius_norm();
    if defect > cfg.tol_eq * image.frobenius_norm().max(1.0) {
        return Err(Error::NotScalarValued {
            re: alpha.re,
            im: alpha.im,
        });
    }
    Ok(h)
}

/// Samples the symbol on `alphas` and classifies it.
///
/// The grid must contain 0, 1, −1, and i exactly, at least one point
/// strictly inside the punctured unit disk, and at least one point of
/// magnitude ≥ 5; [`default_alpha_grid`] satisfies this. Classification
/// compares every sample against `α` and against `conj(α)` with a
/// relative tolerance of `tol_law`; symbols matching neither (a scaled
/// symbol `h(α) = 2α` fails at `α = 1` already) come back `Other`.
pub fn extract_h(
    oracle: &dyn MapOracle,
    alphas: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<ScalarSymbolTable> {
    let n = oracle.validate(cfg)?;
    validate_grid(alphas)?;

    let mut samples = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let value = symbol_at(oracle, n, alpha, cfg)?;
        samples.push(SymbolSample { alpha, value });
    }

    let mut id_dev = 0.0f64;
    let mut conj_dev = 0.0f64;
    for s in &samples {
        let scale = s.alpha.norm().max(1.0);
        id_dev = id_dev.max((s.value - s.alpha).norm() / scale);
        conj_dev = conj_dev.max((s.value - s.alpha.conj()).norm() / scale);
    }
    let classification = if id_dev <= cfg.tol_law {
        SymbolClassification::Identity
    } else if conj_dev <= cfg.tol_law {
        SymbolClassification::Conjugation
    } else {
        SymbolClassification::Other
    };

    // Functional equations probed on all unordered grid pairs; the h
    // values at sums and products are fresh evaluations of the map.
    let mut additivity_residual = 0.0f64;
    let mut multiplicativity_residual = 0.0f64;
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i..] {
            let at_sum = symbol_at(oracle, n, a.alpha + b.alpha, cfg)?;
            let at_product = symbol_at(oracle, n, a.alpha * b.alpha, cfg)?;
            additivity_residual = additivity_residual.max((at_sum - a.value - b.value).norm());
            multiplicativity_residual =
                multiplicativity_residual.max((at_product - a.value * b.value).norm());
        }
    }

    Ok(ScalarSymbolTable {
        samples,
        classification,
        additivity_residual,
        multiplicativity_residual,
    })
}

fn validate_grid(alphas: &[Complex64]) -> Result<()> {
    let has = |z: Complex64| alphas.iter().any(|&a| a == z);
    if !has(Complex64::new(0.0, 0.0))
        || !has(Complex64::new(1.0, 0.0))
        || !has(Complex64::new(-1.0, 0.0))
        || !has(Complex64::new(0.0, 1.0))
    {
        return Err(Error::InvalidParameter(
            "symbol grid must contain 0, 1, -1, and i".into(),
        ));
    }
    if !alphas.iter().any(|a| a.norm() > 0.0 && a.norm() < 1.0) {
        return Err(Error::InvalidParameter(
            "symbol grid needs a point inside the punctured unit disk".into(),
        ));
    }
    if !alphas.iter().any(|a| a.norm() >= 5.0) {
        return Err(Error::InvalidParameter(
            "symbol grid needs a point of magnitude at least 5".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::ensemble::haar_unitary;
    use crate::mapanalysis::MapDescription;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn grid() -> Vec<Complex64> {
        default_alpha_grid(0xA17A)
    }

    #[test]
    fn default_grid_passes_its_own_contract() {
        let g = grid();
        assert_eq!(g.len(), 16);
        assert!(validate_grid(&g).is_ok());
        assert!(g.iter().filter(|a| a.norm() >= 5.0).count() == 4);
    }

    #[test]
    fn conjugation_symbol_is_the_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let desc = MapDescription::conjugation(haar_unitary(4, &mut rng));
        let table = extract_h(&desc, &grid(), &cfg()).unwrap();
        assert_eq!(table.classification, SymbolClassification::Identity);
        assert!(table.additivity_residual <= 1e-12);
        assert!(table.multiplicativity_residual <= 1e-11);
        let at_zero = table.samples.iter().find(|s| s.alpha.norm() == 0.0).unwrap();
        assert_eq!(at_zero.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn adjoint_twist_symbol_is_complex_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let desc = MapDescription::anti_conjugation(haar_unitary(3, &mut rng));
        let table = extract_h(&desc, &grid(), &cfg()).unwrap();
        assert_eq!(table.classification, SymbolClassification::Conjugation);
        assert!(table.additivity_residual <= 1e-11);
        assert!(table.multiplicativity_residual <= 1e-10);
        let at_i = table
            .samples
            .iter()
            .find(|s| s.alpha == Complex64::new(0.0, 1.0))
            .unwrap();
        assert!((at_i.value - Complex64::new(0.0, -1.0)).norm() <= 1e-13);
    }

    #[test]
    fn scaled_symbol_is_other_but_not_an_error() {
        let desc = MapDescription::scale(
            Complex64::new(2.0, 0.0),
            MapDescription::conjugation(CMatrix::identity(2)),
        );
        let table = extract_h(&desc, &grid(), &cfg()).unwrap();
        assert_eq!(table.classification, SymbolClassification::Other);
        // h(α) = 2α is additive but far from multiplicative.
        assert!(table.additivity_residual <= 1e-12);
        assert!(table.multiplicativity_residual >= 100.0);
    }

    #[test]
    fn reciprocal_symbol_is_multiplicative_but_not_additive() {
        let table = extract_h(&MapDescription::ScalarReciprocal, &grid(), &cfg()).unwrap();
        assert_eq!(table.classification, SymbolClassification::Other);
        assert!(table.multiplicativity_residual <= 1e-12);
        assert!(table.additivity_residual > 0.1);
        let at_one = table
            .samples
            .iter()
            .find(|s| s.alpha == Complex64::new(1.0, 0.0))
            .unwrap();
        assert!((at_one.value - Complex64::new(1.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn incomplete_grids_are_rejected() {
        let desc = MapDescription::conjugation(CMatrix::identity(2));
        let missing_anchor: Vec<Complex64> = grid()
            .into_iter()
            .filter(|a| *a != Complex64::new(0.0, 1.0))
            .collect();
        assert!(matches!(
            extract_h(&desc, &missing_anchor, &cfg()),
            Err(Error::InvalidParameter(_))
        ));
        let no_large: Vec<Complex64> = grid().into_iter().filter(|a| a.norm() < 5.0).collect();
        assert!(matches!(
            extract_h(&desc, &no_large, &cfg()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn non_scalar_images_raise_not_scalar_valued() {
        struct Shear;
        impl MapOracle for Shear {
            fn dim(&self) -> usize {
                2
            }
            fn validate(&self, _cfg: &ToleranceConfig) -> crate::error::Result<usize> {
                Ok(2)
            }
            fn apply(&self, a: &CMatrix) -> crate::error::Result<CMatrix> {
                let mut out = a.clone();
                out[(0, 1)] += a[(0, 0)];
                Ok(out)
            }
        }
        let err = extract_h(&Shear, &grid(), &cfg()).unwrap_err();
        assert!(matches!(err, Error::NotScalarValued { .. }));
    }

    #[test]
    fn tables_round_trip_through_json() {
        let desc = MapDescription::conjugation(CMatrix::identity(3));
        let table = extract_h(&desc, &grid(), &cfg()).unwrap();
        let text = serde_json::to_string(&table).unwrap();
        assert!(text.contains(r#""classification":"identity""#));
        let back: ScalarSymbolTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back.samples.len(), table.samples.len());
    }
}
