use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use thiserror::Error;

use super::{Circuit, CircuitOp};
use crate::engine::MAX_ENGINE_QUBITS;
use crate::gates::{GateName, GateSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("|alpha|^2 + |beta|^2 = {0}, expected 1")]
    NotNormalized(f64),
    #[error("target '{target}' must be {n} characters of '0'/'1'")]
    BadTarget { target: String, n: usize },
    #[error("unsupported qubit count {0}")]
    QubitCount(usize),
}

/// Teleports `α|0⟩ + β|1⟩` from `q_0` to `q_2`.
///
/// `q_0` is prepared with a `u2x2` gate, `q_1`/`q_2` hold a Bell pair, and
/// Alice's Bell measurement lands in `c_0` (from `q_0`) and `c_1` (from `q_1`).
/// Bob applies X if `c_1 = 1`, then Z if `c_0 = 1`.
pub fn build_teleportation(alpha: Complex64, beta: Complex64) -> Result<Circuit, BuildError> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if norm.is_nan() || (norm - 1.0).abs() > 1e-10 {
        return Err(BuildError::NotNormalized(norm));
    }
    let x = || GateSpec::fixed(GateName::X);
    let prep = GateSpec::matrix([[alpha, -beta.conj()], [beta, alpha.conj()]]);

    let mut c = Circuit::new(3, 2).named("teleportation");
    c.push(CircuitOp::controlled(prep, 0, [], []))
        .push(CircuitOp::gate(GateName::H, 1))
        .push(CircuitOp::controlled(x(), 2, [1], []))
        .push(CircuitOp::controlled(x(), 1, [0], []))
        .push(CircuitOp::gate(GateName::H, 0))
        .push(CircuitOp::measure(0, 0))
        .push(CircuitOp::measure(1, 1))
        .push(CircuitOp::If {
            cbit: 1,
            value: 1,
            body: vec![CircuitOp::gate(GateName::X, 2)],
        })
        .push(CircuitOp::If {
            cbit: 0,
            value: 1,
            body: vec![CircuitOp::gate(GateName::Z, 2)],
        });
    Ok(c)
}

/// `floor(π/4 · √(2^n))`.
pub fn default_grover_iterations(n: usize) -> u32 {
    (FRAC_PI_4 * (2f64).powi(n as i32).sqrt()).floor() as u32
}

fn parse_target(target: &str, n: usize) -> Result<Vec<bool>, BuildError> {
    let bad = || BuildError::BadTarget {
        target: target.to_owned(),
        n,
    };
    if target.chars().count() != n {
        return Err(bad());
    }
    target
        .chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(bad()),
        })
        .collect()
}

/// Grover search for the basis state `target` (written `q_0` first).
///
/// Uniform superposition, then `iterations` rounds of phase oracle plus
/// diffusion inside one `repeat` op. The oracle is a Z on the highest qubit
/// with controls where the target bit is 1 and anti-controls where it is 0;
/// the highest qubit itself is X-conjugated when its target bit is 0.
/// `iterations = None` uses [`default_grover_iterations`]; zero iterations
/// leaves just the superposition.
pub fn build_grover(
    n: usize,
    target: &str,
    iterations: Option<u32>,
) -> Result<Circuit, BuildError> {
    if n == 0 || n >= MAX_ENGINE_QUBITS {
        return Err(BuildError::QubitCount(n));
    }
    let bits = parse_target(target, n)?;
    let rounds = iterations.unwrap_or_else(|| default_grover_iterations(n));
    let top = n - 1;
    let z = || GateSpec::fixed(GateName::Z);
    let layer = |name: GateName| (0..n).map(move |q| CircuitOp::gate(name, q));

    let mut body = Vec::new();
    let controls: Vec<usize> = (0..top).filter(|&q| bits[q]).collect();
    let anticontrols: Vec<usize> = (0..top).filter(|&q| !bits[q]).collect();
    if !bits[top] {
        body.push(CircuitOp::gate(GateName::X, top));
    }
    body.push(CircuitOp::controlled(z(), top, controls, anticontrols));
    if !bits[top] {
        body.push(CircuitOp::gate(GateName::X, top));
    }

    body.extend(layer(GateName::H));
    body.extend(layer(GateName::X));
    body.push(CircuitOp::controlled(z(), top, 0..top, []));
    body.extend(layer(GateName::X));
    body.extend(layer(GateName::H));

    let mut c = Circuit::new(n, 0).named(format!("grover_{target}"));
    c.ops.extend(layer(GateName::H));
    if rounds > 0 {
        c.push(CircuitOp::Repeat {
            count: rounds,
            body,
        });
    }
    Ok(c)
}
