//! Serializable mirror of a [`RunResult`](crate::RunResult).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::RunResult;
use crate::engine::BlochVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub qubits: usize,
    /// `|a_i|²` indexed by basis index.
    pub distribution: Vec<f64>,
    pub bloch: Vec<BlochVector>,
    /// Classical bits after the last shot, `c_0` first.
    pub cbits: Vec<u8>,
    pub shot_records: Vec<String>,
    pub shot_histogram: BTreeMap<String, u64>,
    pub seed: u64,
    pub rng_id: String,
    /// Final amplitudes as `[re, im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[f64; 2]>>,
}

impl RunReport {
    pub fn new(result: &RunResult, name: Option<&str>, include_state: bool) -> Self {
        Self {
            name: name.map(str::to_owned),
            qubits: result.final_state.num_qubits(),
            distribution: result.distribution.clone(),
            bloch: result.bloch.clone(),
            cbits: result.cbits.clone(),
            shot_records: result.shot_records.clone(),
            shot_histogram: result.histogram(),
            seed: result.seed,
            rng_id: result.rng_id.clone(),
            state: include_state.then(|| {
                result
                    .final_state
                    .amplitudes()
                    .iter()
                    .map(|a| [a.re, a.im])
                    .collect()
            }),
        }
    }

    /// Structural consistency of a report, e.g. one read back from JSON.
    pub fn check(&self) -> Result<(), String> {
        if self.distribution.len() != 1usize << self.qubits {
            return Err(format!(
                "distribution has {} entries for {} qubits",
                self.distribution.len(),
                self.qubits
            ));
        }
        let total: f64 = self.distribution.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(format!("distribution sums to {total}"));
        }
        if self.bloch.len() != self.qubits {
            return Err(format!("{} Bloch vectors for {} qubits", self.bloch.len(), self.qubits));
        }
        let counted: u64 = self.shot_histogram.values().sum();
        if counted != self.shot_records.len() as u64 {
            return Err("histogram does not cover the shot records".to_owned());
        }
        if let Some(state) = &self.state {
            if state.len() != self.distribution.len() {
                return Err("state length does not match distribution".to_owned());
            }
        }
        Ok(())
    }
}
