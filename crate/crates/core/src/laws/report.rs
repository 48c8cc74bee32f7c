//! Report type shared by every law, plus the aggregation helper.

use serde::{Deserialize, Serialize};

use crate::matcore::ToleranceConfig;

/// Outcome of one law run. `passed` holds exactly when
/// `max_residual ≤ tol_law`, and `worst_witness` serializes the inputs
/// that achieved `max_residual` so the run can be replayed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: String,
    pub trials: u64,
    pub max_residual: f64,
    pub worst_witness: serde_json::Value,
    pub passed: bool,
    pub seed: u64,
}

/// Tracks the running maximum residual and its witness.
pub(crate) struct WitnessTracker {
    law_id: &'static str,
    seed: u64,
    trials: u64,
    max_residual: f64,
    witness: serde_json::Value,
}

impl WitnessTracker {
    pub(crate) fn new(law_id: &'static str, seed: u64) -> Self {
        WitnessTracker {
            law_id,
            seed,
            trials: 0,
            max_residual: 0.0,
            witness: serde_json::Value::Null,
        }
    }

    /// Records one trial. The witness closure runs only when this trial
    /// sets a new maximum (or is the first).
    pub(crate) fn observe(
        &mut self,
        residual: f64,
        witness: impl FnOnce() -> serde_json::Value,
    ) {
        let residual = if residual.is_finite() {
            residual
        } else {
            f64::INFINITY
        };
        if self.trials == 0 || residual > self.max_residual {
            self.max_residual = residual;
            self.witness = witness();
        }
        self.trials += 1;
    }

    pub(crate) fn finish(self, cfg: &ToleranceConfig) -> LawReport {
        LawReport {
            law_id: self.law_id.to_string(),
            trials: self.trials,
            max_residual: self.max_residual,
            passed: self.max_residual <= cfg.tol_law,
            worst_witness: self.witness,
            seed: self.seed,
        }
    }
}
