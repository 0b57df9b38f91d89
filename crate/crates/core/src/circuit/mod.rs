//! Hybrid circuit IR: gates and swaps with control/anti-control sets,
//! measurement into classical bits, classical conditionals and repetition.

mod builders;
mod format;
mod interp;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::engine::{ControlSpec, MAX_ENGINE_QUBITS};
use crate::gates::{resolve, GateError, GateName, GateSpec};

pub use builders::{build_grover, build_teleportation, default_grover_iterations, BuildError};
pub use format::{from_value, parse, serialize, to_value, FormatError, FORMAT_VERSION};
pub use interp::{
    run, run_with, ForcedOutcomes, OutcomeSource, RunError, RunOptions, RunResult,
    SampledOutcomes, ShotOutcome, DEFAULT_MAX_QUBITS,
};

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitOp {
    Gate {
        spec: GateSpec,
        target: usize,
        controls: BTreeSet<usize>,
        anticontrols: BTreeSet<usize>,
    },
    Swap {
        qa: usize,
        qb: usize,
        controls: BTreeSet<usize>,
        anticontrols: BTreeSet<usize>,
    },
    Measure {
        qubit: usize,
        cbit: usize,
    },
    /// Runs `body` iff classical bit `cbit` currently equals `value`.
    If {
        cbit: usize,
        value: u8,
        body: Vec<CircuitOp>,
    },
    Repeat {
        count: u32,
        body: Vec<CircuitOp>,
    },
}

impl CircuitOp {
    /// Uncontrolled fixed gate.
    pub fn gate(name: GateName, target: usize) -> Self {
        Self::controlled(GateSpec::fixed(name), target, [], [])
    }

    pub fn controlled(
        spec: GateSpec,
        target: usize,
        controls: impl IntoIterator<Item = usize>,
        anticontrols: impl IntoIterator<Item = usize>,
    ) -> Self {
        CircuitOp::Gate {
            spec,
            target,
            controls: controls.into_iter().collect(),
            anticontrols: anticontrols.into_iter().collect(),
        }
    }

    pub fn swap(qa: usize, qb: usize) -> Self {
        CircuitOp::Swap {
            qa,
            qb,
            controls: BTreeSet::new(),
            anticontrols: BTreeSet::new(),
        }
    }

    pub fn measure(qubit: usize, cbit: usize) -> Self {
        CircuitOp::Measure { qubit, cbit }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub num_cbits: usize,
    pub ops: Vec<CircuitOp>,
    pub name: Option<String>,
}

impl Circuit {
    /// Empty circuit; every run starts from `|0…0⟩` with all classical bits 0.
    pub fn new(num_qubits: usize, num_cbits: usize) -> Self {
        Self {
            num_qubits,
            num_cbits,
            ops: Vec::new(),
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn push(&mut self, op: CircuitOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    /// Checks every op, recursively, against the register sizes.
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.num_qubits == 0 {
            return Err(ValidationError::new("qubits", ValidationKind::NoQubits));
        }
        validate_ops(&self.ops, "ops", self.num_qubits, self.num_cbits)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationKind {
    #[error("circuit needs at least one qubit")]
    NoQubits,
    #[error("qubit {qubit} out of range for {n} qubit(s)")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("classical bit {cbit} out of range for {c} classical bit(s)")]
    CbitOutOfRange { cbit: usize, c: usize },
    #[error("qubit {0} is both a control and an anti-control")]
    ControlOverlap(usize),
    #[error("qubit {0} is acted on and also used as a control")]
    TargetInControls(usize),
    #[error("swap needs two distinct qubits, got {0} twice")]
    SwapSameQubit(usize),
    #[error("condition value must be 0 or 1, got {0}")]
    ConditionValue(u8),
    #[error("repeat count must be positive")]
    ZeroRepeat,
    #[error(transparent)]
    Gate(#[from] GateError),
}

/// A validation failure located by its path in the document, e.g.
/// `ops[3].body[0].controls`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{path}: {kind}")]
pub struct ValidationError {
    pub path: String,
    pub kind: ValidationKind,
}

impl ValidationError {
    fn new(path: impl fmt::Display, kind: ValidationKind) -> Self {
        Self {
            path: path.to_string(),
            kind,
        }
    }
}

/// Encodes control and anti-control sets as inclusion/value masks for an
/// `n`-qubit register.
pub fn to_control_spec(
    controls: &BTreeSet<usize>,
    anticontrols: &BTreeSet<usize>,
    n: usize,
) -> Result<ControlSpec, ValidationKind> {
    for &q in controls.iter().chain(anticontrols) {
        if q >= n || q >= MAX_ENGINE_QUBITS {
            return Err(ValidationKind::QubitOutOfRange { qubit: q, n });
        }
    }
    if let Some(&q) = controls.intersection(anticontrols).next() {
        return Err(ValidationKind::ControlOverlap(q));
    }
    let m_val = controls.iter().fold(0u64, |m, &q| m | (1 << q));
    let m_inc = anticontrols.iter().fold(m_val, |m, &q| m | (1 << q));
    Ok(ControlSpec::new(m_inc, m_val).expect("value bits are a subset of inclusion bits"))
}

fn check_qubit(q: usize, n: usize, path: &str, field: &str) -> Result<(), ValidationError> {
    if q >= n {
        return Err(ValidationError::new(
            format!("{path}.{field}"),
            ValidationKind::QubitOutOfRange { qubit: q, n },
        ));
    }
    Ok(())
}

fn check_cbit(cbit: usize, c: usize, path: &str) -> Result<(), ValidationError> {
    if cbit >= c {
        return Err(ValidationError::new(
            format!("{path}.cbit"),
            ValidationKind::CbitOutOfRange { cbit, c },
        ));
    }
    Ok(())
}

fn check_masks(
    acted_on: &[usize],
    controls: &BTreeSet<usize>,
    anticontrols: &BTreeSet<usize>,
    n: usize,
    path: &str,
) -> Result<(), ValidationError> {
    to_control_spec(controls, anticontrols, n)
        .map_err(|kind| ValidationError::new(format!("{path}.controls"), kind))?;
    for &q in acted_on {
        if controls.contains(&q) || anticontrols.contains(&q) {
            return Err(ValidationError::new(
                path,
                ValidationKind::TargetInControls(q),
            ));
        }
    }
    Ok(())
}

fn validate_ops(ops: &[CircuitOp], prefix: &str, n: usize, c: usize) -> Result<(), ValidationError> {
    for (idx, op) in ops.iter().enumerate() {
        let path = format!("{prefix}[{idx}]");
        match op {
            CircuitOp::Gate {
                spec,
                target,
                controls,
                anticontrols,
            } => {
                check_qubit(*target, n, &path, "target")?;
                check_masks(&[*target], controls, anticontrols, n, &path)?;
                resolve(spec).map_err(|e| {
                    ValidationError::new(format!("{path}.name"), ValidationKind::Gate(e))
                })?;
            }
            CircuitOp::Swap {
                qa,
                qb,
                controls,
                anticontrols,
            } => {
                check_qubit(*qa, n, &path, "qa")?;
                check_qubit(*qb, n, &path, "qb")?;
                if qa == qb {
                    return Err(ValidationError::new(&path, ValidationKind::SwapSameQubit(*qa)));
                }
                check_masks(&[*qa, *qb], controls, anticontrols, n, &path)?;
            }
            CircuitOp::Measure { qubit, cbit } => {
                check_qubit(*qubit, n, &path, "qubit")?;
                check_cbit(*cbit, c, &path)?;
            }
            CircuitOp::If { cbit, value, body } => {
                check_cbit(*cbit, c, &path)?;
                if *value > 1 {
                    return Err(ValidationError::new(
                        format!("{path}.value"),
                        ValidationKind::ConditionValue(*value),
                    ));
                }
                validate_ops(body, &format!("{path}.body"), n, c)?;
            }
            CircuitOp::Repeat { count, body } => {
                if *count == 0 {
                    return Err(ValidationError::new(
                        format!("{path}.count"),
                        ValidationKind::ZeroRepeat,
                    ));
                }
                validate_ops(body, &format!("{path}.body"), n, c)?;
            }
        }
    }
    Ok(())
}
