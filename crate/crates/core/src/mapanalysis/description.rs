//! Symbolic descriptions of matrix maps and their evaluation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, ToleranceConfig};

/// A matrix map Φ given structurally.
///
/// * `Conjugation{U}`: `A ↦ U A U*`.
/// * `AntiConjugation{U}`: `A ↦ U A* U*` (anti-linear).
/// * `Scale{c, inner}`: `A ↦ c · inner(A)`.
/// * `Compose{outer, inner}`: `A ↦ outer(inner(A))`.
/// * `ScalarReciprocal`: the 1x1 map `z ↦ 1/z` with `0 ↦ 0`, which is
///   multiplicative and bijective but not additive.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapDescription {
    Conjugation {
        unitary: CMatrix,
    },
    AntiConjugation {
        unitary: CMatrix,
    },
    Scale {
        #[serde(with = "crate::codec::cpx")]
        factor: Complex64,
        inner: Box<MapDescription>,
    },
    Compose {
        outer: Box<MapDescription>,
        inner: Box<MapDescription>,
    },
    ScalarReciprocal,
}

impl MapDescription {
    pub fn conjugation(unitary: CMatrix) -> Self {
        MapDescription::Conjugation { unitary }
    }

    pub fn anti_conjugation(unitary: CMatrix) -> Self {
        MapDescription::AntiConjugation { unitary }
    }

    pub fn scale(factor: Complex64, inner: MapDescription) -> Self {
        MapDescription::Scale {
            factor,
            inner: Box::new(inner),
        }
    }

    /// Dimension the map acts on.
    pub fn dim(&self) -> usize {
        match self {
            MapDescription::Conjugation { unitary } | MapDescription::AntiConjugation { unitary } => {
                unitary.dim()
            }
            MapDescription::Scale { inner, .. } => inner.dim(),
            MapDescription::Compose { inner, .. } => inner.dim(),
            MapDescription::ScalarReciprocal => 1,
        }
    }

    /// Validates carriers, scale factors, and dimension consistency;
    /// returns the dimension.
    pub fn validate(&self, cfg: &ToleranceConfig) -> Result<usize> {
        cfg.validate()?;
        match self {
            MapDescription::Conjugation { unitary } | MapDescription::AntiConjugation { unitary } => {
                unitary.ensure_finite("map carrier")?;
                let n = unitary.dim();
                let residual =
                    (&(&unitary.adjoint() * unitary) - &CMatrix::identity(n)).frobenius_norm();
                if residual > cfg.tol_eq {
                    return Err(Error::NonUnitaryCarrier { residual });
                }
                Ok(n)
            }
            MapDescription::Scale { factor, inner } => {
                if !factor.re.is_finite() || !factor.im.is_finite() {
                    return Err(Error::NonFinite {
                        context: "scale factor",
                        row: 0,
                        col: 0,
                    });
                }
                inner.validate(cfg)
            }
            MapDescription::Compose { outer, inner } => {
                let n_inner = inner.validate(cfg)?;
                let n_outer = outer.validate(cfg)?;
                if n_inner != n_outer {
                    return Err(Error::DimensionMismatch {
                        expected: n_inner,
                        found: n_outer,
                    });
                }
                Ok(n_inner)
            }
            MapDescription::ScalarReciprocal => Ok(1),
        }
    }
}

/// Applies the map to a matrix. Carriers are checked against the default
/// unitarity tolerance; dimensions must match the description.
pub fn eval_map(desc: &MapDescription, a: &CMatrix) -> Result<CMatrix> {
    let cfg = ToleranceConfig::default();
    let n = desc.validate(&cfg)?;
    if a.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.dim(),
        });
    }
    eval_unchecked(desc, a)
}

/// Evaluation after validation; used internally to avoid re-validating
/// inside trial loops.
pub(crate) fn eval_unchecked(desc: &MapDescription, a: &CMatrix) -> Result<CMatrix> {
    match desc {
        MapDescription::Conjugation { unitary } => Ok(&(unitary * a) * &unitary.adjoint()),
        MapDescription::AntiConjugation { unitary } => {
            Ok(&(unitary * &a.adjoint()) * &unitary.adjoint())
        }
        MapDescription::Scale { factor, inner } => Ok(eval_unchecked(inner, a)?.scale(*factor)),
        MapDescription::Compose { outer, inner } => {
            eval_unchecked(outer, &eval_unchecked(inner, a)?)
        }
        MapDescription::ScalarReciprocal => {
            let z = a[(0, 0)];
            let w = if z.norm() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                z.finv()
            };
            Ok(CMatrix::from_diag(&[w]))
        }
    }
}
