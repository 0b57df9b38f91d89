//! State-vector quantum circuit simulation built on per-element update kernels.
//!
//! The engine never materializes an operator matrix. A single-qubit gate is a
//! 2×2 kernel applied to every amplitude pair `(i, i ^ 2^k)`, optionally
//! conditioned on a pair of bitmasks (inclusion and value) that encode any mix
//! of controls and anti-controls. SWAP is a pure index permutation under the
//! same masks. Every output amplitude has exactly one writer, so a kernel can
//! be split across any number of workers with bit-identical results.
//!
//! # Qubit ordering
//!
//! Qubit `q_k` lives in bit `k` of the amplitude index (little-endian). Basis
//! state labels in all text I/O are written `q_0` first, so the label `0110`
//! means `q_1 = q_2 = 1` and refers to amplitude index 6.
//!
//! On top of the engine sit a gate library ([`gates`]), a hybrid circuit IR
//! with measurement, classical conditionals and repetition ([`circuit`]), and a
//! brute-force Kronecker-product reference simulator used for verification
//! ([`dense`]).

pub mod circuit;
pub mod dense;
pub mod engine;
pub mod gates;
pub mod report;
pub mod rng;

pub use circuit::{
    build_grover, build_teleportation, parse, run, run_with, serialize, Circuit, CircuitOp,
    RunError, RunOptions, RunResult,
};
pub use engine::{
    apply_1q_gate, apply_swap, bloch_vector, measure_qubit, probabilities, BlochVector,
    ControlSpec, Engine, EngineError, ExecPolicy, GateKernel, StateVector,
};
pub use gates::{catalog, resolve, GateName, GateSpec, Param};
pub use report::RunReport;

pub use num_complex::Complex64;
