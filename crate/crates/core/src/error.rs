//! Error type shared by every module of the toolkit.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or vector entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col}) in {context}")]
    NonFinite {
        context: &'static str,
        row: usize,
        col: usize,
    },

    /// Input to a Hermitian factorization was too far from self-adjoint.
    #[error("matrix is not Hermitian: asymmetry residual {residual:.3e} exceeds {allowed:.3e}")]
    NonHermitian { residual: f64, allowed: f64 },

    /// Input to a positive-semidefinite operation has a significantly
    /// negative eigenvalue.
    #[error("matrix is not PSD: eigenvalue {eigenvalue:.3e} below allowance {allowed:.3e}")]
    NotPsd { eigenvalue: f64, allowed: f64 },

    /// A rank-one construction received a (numerically) zero vector.
    #[error("expected a nonzero vector")]
    ZeroVector,

    /// Two operands do not share the required dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// An operand required to be an orthogonal projection is not one.
    #[error("{which} is not an orthogonal projection")]
    NotAProjection { which: &'static str },

    /// A parameter violated its documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An iterative kernel failed to converge within its sweep budget.
    /// Not expected to occur on finite input at the supported sizes.
    #[error("{algorithm} did not converge within {iterations} iterations")]
    NoConvergence {
        algorithm: &'static str,
        iterations: usize,
    },

    /// An ensemble that must produce invertible draws kept producing
    /// numerically singular ones.
    #[error("ensemble kept drawing singular matrices ({redraws} redraws)")]
    SingularEnsemble { redraws: usize },

    /// A conjugation carrier inside a map description is not unitary.
    #[error("map carrier is not unitary: residual {residual:.3e}")]
    NonUnitaryCarrier { residual: f64 },

    /// The map sent a scalar matrix to something that is not scalar.
    #[error("map image of ({re}+{im}i)I is not a scalar matrix")]
    NotScalarValued { re: f64, im: f64 },

    /// A precondition requiring the product-commuting condition failed.
    #[error("map does not satisfy the product-commuting condition: {detail}")]
    ConditionViolated { detail: String, max_residual: f64 },

    /// The image of an orthogonal projection failed the projection
    /// predicate.
    #[error("map image of a projection is not a projection: {detail}")]
    NotAProjectionImage { detail: String },

    /// The image of a rank-one projection was not a rank-one projection.
    #[error("map image of a rank-one projection is not one: {detail}")]
    NotRankOneImage { detail: String },

    /// Unitary reconstruction produced a candidate that fails validation.
    #[error(
        "reconstructed operator failed validation: unitarity residual \
         {unitarity_residual:.3e}, conjugation residual {conjugation_residual:.3e}"
    )]
    NonUnitaryResult {
        unitarity_residual: f64,
        conjugation_residual: f64,
    },

    /// A matrix or map document failed to parse.
    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
