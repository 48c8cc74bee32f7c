//! Finite-dimensional operator toolkit centered on the parametrized
//! Aluthge transform.
//!
//! The crate provides:
//!
//! * [`matcore`]: complex matrices, tolerances, Hermitian eigensolver,
//!   PSD powers, and the canonical polar decomposition;
//! * [`aluthge`]: the transform family `T ↦ |T|^λ V |T|^(1−λ)`, its
//!   rank-one closed form, and the iteration;
//! * [`oppred`]: operator predicates (normal, quasi-normal, partial
//!   isometry, projection), spectra, and numerical range polygons;
//! * [`laws`]: randomized law checks over seeded matrix ensembles, with
//!   reproducible reports and a gallery of canonical witnesses;
//! * [`mapanalysis`]: tools for bijective maps on matrix space that
//!   commute with the transform on products, including scalar symbol
//!   extraction and reconstruction of the conjugating unitary.
//!
//! Everything is deterministic: randomized checks derive per-trial RNG
//! streams from explicit seeds, and all reports serialize to stable JSON.

pub mod aluthge;
pub(crate) mod codec;
pub mod error;
pub mod laws;
pub mod mapanalysis;
pub mod matcore;
pub mod oppred;

pub use error::{Error, Result};
