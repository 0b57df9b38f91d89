//! Per-element state-vector kernels, measurement and state inspection.

mod apply;
mod kernel;
mod measure;
mod state;

pub use apply::{apply_1q_gate, apply_1q_gate_with, apply_swap, apply_swap_with, Engine, ExecPolicy};
pub use kernel::{ControlSpec, GateKernel, UNITARITY_TOLERANCE};
pub use measure::{collapse, measure_qubit, outcome_probabilities, pick_outcome};
pub use state::{basis_label, bloch_vector, probabilities, BlochVector, StateVector};

use thiserror::Error;

/// Largest register the engine will address. Masks are `u64`, and the top bit
/// is kept clear so `1 << n` never overflows.
pub const MAX_ENGINE_QUBITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("qubit count must be between 1 and {MAX_ENGINE_QUBITS}, got {0}")]
    QubitCount(usize),
    #[error("amplitude count {0} is not a power of two >= 2")]
    AmplitudeCount(usize),
    #[error("qubit index {qubit} out of range for a {n}-qubit state")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("target qubit {0} is also part of the control mask")]
    TargetInControls(usize),
    #[error("qubit {0} is listed as both control and anti-control")]
    ControlOverlap(usize),
    #[error("value mask {m_val:#b} has bits outside inclusion mask {m_inc:#b}")]
    MalformedControls { m_inc: u64, m_val: u64 },
    #[error("control mask {m_inc:#b} addresses qubits beyond a {n}-qubit state")]
    ControlsOutOfRange { m_inc: u64, n: usize },
    #[error("swap needs two distinct qubits, got {0} twice")]
    SwapSameQubit(usize),
    #[error("matrix is not unitary: max |U^dagger U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("state norm {norm} deviates from 1")]
    NotNormalized { norm: f64 },
    #[error("measurement outcome {outcome} on qubit {qubit} has zero probability")]
    ImpossibleOutcome { qubit: usize, outcome: u8 },
}
