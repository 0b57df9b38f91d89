//! Versioned JSON circuit documents.
//!
//! ```json
//! { "version": 1, "name": "bell", "qubits": 2, "cbits": 0, "ops": [
//!   {"type": "gate", "name": "h", "target": 0, "controls": [], "anticontrols": [], "params": []},
//!   {"type": "gate", "name": "x", "target": 1, "controls": [0], "anticontrols": [], "params": []}
//! ] }
//! ```
//!
//! Unknown op types and unknown fields are rejected.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Circuit, CircuitOp, ValidationError};
use crate::gates::{GateName, GateSpec, Param};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("invalid circuit at {0}")]
    Invalid(#[from] ValidationError),
}

impl FormatError {
    /// Document path of the offending element, when known.
    pub fn path(&self) -> Option<&str> {
        match self {
            FormatError::Schema { path, .. } => Some(path),
            FormatError::Invalid(v) => Some(&v.path),
            FormatError::Version(_) => Some("version"),
            FormatError::Syntax { .. } => None,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    qubits: usize,
    #[serde(default)]
    cbits: usize,
    ops: Vec<OpDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum OpDoc {
    Gate {
        name: GateName,
        target: usize,
        #[serde(default)]
        controls: BTreeSet<usize>,
        #[serde(default)]
        anticontrols: BTreeSet<usize>,
        #[serde(default)]
        params: Vec<Param>,
    },
    Swap {
        qa: usize,
        qb: usize,
        #[serde(default)]
        controls: BTreeSet<usize>,
        #[serde(default)]
        anticontrols: BTreeSet<usize>,
    },
    Measure {
        qubit: usize,
        cbit: usize,
    },
    If {
        cbit: usize,
        value: u8,
        body: Vec<OpDoc>,
    },
    Repeat {
        count: u32,
        body: Vec<OpDoc>,
    },
}

impl From<OpDoc> for CircuitOp {
    fn from(doc: OpDoc) -> Self {
        match doc {
            OpDoc::Gate {
                name,
                target,
                controls,
                anticontrols,
                params,
            } => CircuitOp::Gate {
                spec: GateSpec::new(name, params),
                target,
                controls,
                anticontrols,
            },
            OpDoc::Swap {
                qa,
                qb,
                controls,
                anticontrols,
            } => CircuitOp::Swap {
                qa,
                qb,
                controls,
                anticontrols,
            },
            OpDoc::Measure { qubit, cbit } => CircuitOp::Measure { qubit, cbit },
            OpDoc::If { cbit, value, body } => CircuitOp::If {
                cbit,
                value,
                body: body.into_iter().map(Into::into).collect(),
            },
            OpDoc::Repeat { count, body } => CircuitOp::Repeat {
                count,
                body: body.into_iter().map(Into::into).collect(),
            },
        }
    }
}

impl From<&CircuitOp> for OpDoc {
    fn from(op: &CircuitOp) -> Self {
        match op {
            CircuitOp::Gate {
                spec,
                target,
                controls,
                anticontrols,
            } => OpDoc::Gate {
                name: spec.name,
                target: *target,
                controls: controls.clone(),
                anticontrols: anticontrols.clone(),
                params: spec.params.clone(),
            },
            CircuitOp::Swap {
                qa,
                qb,
                controls,
                anticontrols,
            } => OpDoc::Swap {
                qa: *qa,
                qb: *qb,
                controls: controls.clone(),
                anticontrols: anticontrols.clone(),
            },
            CircuitOp::Measure { qubit, cbit } => OpDoc::Measure {
                qubit: *qubit,
                cbit: *cbit,
            },
            CircuitOp::If { cbit, value, body } => OpDoc::If {
                cbit: *cbit,
                value: *value,
                body: body.iter().map(Into::into).collect(),
            },
            CircuitOp::Repeat { count, body } => OpDoc::Repeat {
                count: *count,
                body: body.iter().map(Into::into).collect(),
            },
        }
    }
}

fn into_circuit(doc: Document) -> Result<Circuit, FormatError> {
    if doc.version != FORMAT_VERSION {
        return Err(FormatError::Version(doc.version));
    }
    let circuit = Circuit {
        num_qubits: doc.qubits,
        num_cbits: doc.cbits,
        ops: doc.ops.into_iter().map(Into::into).collect(),
        name: doc.name,
    };
    circuit.validate()?;
    Ok(circuit)
}

fn schema_error(path: &serde_path_to_error::Path, message: String) -> FormatError {
    let path = path.to_string();
    FormatError::Schema {
        path: if path == "." { "(root)".to_owned() } else { path },
        message,
    }
}

/// Parses and validates a circuit document.
pub fn parse(text: &str) -> Result<Circuit, FormatError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: Document = match serde_path_to_error::deserialize(&mut de) {
        Ok(doc) => doc,
        Err(err) => {
            let inner = err.inner();
            if inner.is_syntax() || inner.is_eof() {
                return Err(FormatError::Syntax {
                    line: inner.line(),
                    column: inner.column(),
                    message: inner.to_string(),
                });
            }
            return Err(schema_error(err.path(), inner.to_string()));
        }
    };
    de.end().map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    into_circuit(doc)
}

/// Parses a document that has already been read as a JSON value.
pub fn from_value(value: serde_json::Value) -> Result<Circuit, FormatError> {
    let doc: Document = serde_path_to_error::deserialize(value)
        .map_err(|err| schema_error(err.path(), err.inner().to_string()))?;
    into_circuit(doc)
}

fn document(circuit: &Circuit) -> Document {
    Document {
        version: FORMAT_VERSION,
        name: circuit.name.clone(),
        qubits: circuit.num_qubits,
        cbits: circuit.num_cbits,
        ops: circuit.ops.iter().map(Into::into).collect(),
    }
}

/// Pretty-printed document text.
pub fn serialize(circuit: &Circuit) -> String {
    let mut text = serde_json::to_string_pretty(&document(circuit)).expect("document is serializable");
    text.push('\n');
    text
}

pub fn to_value(circuit: &Circuit) -> serde_json::Value {
    serde_json::to_value(document(circuit)).expect("document is serializable")
}
