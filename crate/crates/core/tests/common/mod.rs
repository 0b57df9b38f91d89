#![allow(dead_code)]

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::Rng;
use strideq_core::circuit::CircuitOp;
use strideq_core::dense::{apply_dense, dense_1q, dense_swap};
use strideq_core::{resolve, Circuit, ControlSpec, GateKernel, StateVector};

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> StateVector {
    let mut amps: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(amps).unwrap()
}

/// `e^{iφ} [[cos θ, -e^{iλ} sin θ], [e^{iμ} sin θ, e^{i(μ+λ)} cos θ]]`.
pub fn random_unitary<R: Rng>(rng: &mut R) -> GateKernel {
    let tau = std::f64::consts::TAU;
    let (theta, phi, lam, mu): (f64, f64, f64, f64) = (
        rng.random_range(0.0..tau),
        rng.random_range(0.0..tau),
        rng.random_range(0.0..tau),
        rng.random_range(0.0..tau),
    );
    let g = Complex64::from_polar(1.0, phi);
    let (s, c) = theta.sin_cos();
    GateKernel::new(
        g * c,
        -g * Complex64::from_polar(s, lam),
        g * Complex64::from_polar(s, mu),
        g * Complex64::from_polar(c, mu + lam),
    )
    .unwrap()
}

/// Random inclusion/value masks over qubits other than `exclude`.
pub fn random_controls<R: Rng>(rng: &mut R, n: usize, exclude: &[usize]) -> ControlSpec {
    let mut m_inc = 0u64;
    let mut m_val = 0u64;
    for q in 0..n {
        if exclude.contains(&q) || !rng.random_bool(0.4) {
            continue;
        }
        m_inc |= 1 << q;
        if rng.random_bool(0.5) {
            m_val |= 1 << q;
        }
    }
    ControlSpec::new(m_inc, m_val).unwrap()
}

pub fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn bit_identical(a: &[Complex64], b: &[Complex64]) -> bool {
    a.len() == b.len()
        && a
            .iter()
            .zip(b)
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits())
}

fn mask(controls: &BTreeSet<usize>, anticontrols: &BTreeSet<usize>) -> ControlSpec {
    let m_val = controls.iter().fold(0u64, |m, q| m | (1 << q));
    let m_inc = anticontrols.iter().fold(m_val, |m, q| m | (1 << q));
    ControlSpec::new(m_inc, m_val).unwrap()
}

/// Evaluates a measurement-free circuit with full dense operators.
pub fn dense_run(circuit: &Circuit) -> StateVector {
    let mut state = StateVector::zero(circuit.num_qubits).unwrap();
    dense_ops(&circuit.ops, circuit.num_qubits, &mut state);
    state
}

fn dense_ops(ops: &[CircuitOp], n: usize, state: &mut StateVector) {
    for op in ops {
        match op {
            CircuitOp::Gate {
                spec,
                target,
                controls,
                anticontrols,
            } => {
                let op = dense_1q(n, &resolve(spec).unwrap(), *target, mask(controls, anticontrols))
                    .unwrap();
                *state = apply_dense(&op, state).unwrap();
            }
            CircuitOp::Swap {
                qa,
                qb,
                controls,
                anticontrols,
            } => {
                let op = dense_swap(n, *qa, *qb, mask(controls, anticontrols)).unwrap();
                *state = apply_dense(&op, state).unwrap();
            }
            CircuitOp::Repeat { count, body } => {
                for _ in 0..*count {
                    dense_ops(body, n, state);
                }
            }
            CircuitOp::Measure { .. } | CircuitOp::If { .. } => {
                panic!("dense_run handles unitary circuits only")
            }
        }
    }
}

/// Random measurement-free circuit of masked gates and swaps.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, ops: usize) -> Circuit {
    use strideq_core::gates::{GateSpec};
    let mut c = Circuit::new(n, 0);
    for _ in 0..ops {
        let swap = n >= 2 && rng.random_bool(0.25);
        if swap {
            let qa = rng.random_range(0..n);
            let mut qb = rng.random_range(0..n - 1);
            if qb >= qa {
                qb += 1;
            }
            let ctrl = random_controls(rng, n, &[qa, qb]);
            let (controls, anticontrols) = split(ctrl, n);
            c.push(CircuitOp::Swap {
                qa,
                qb,
                controls,
                anticontrols,
            });
        } else {
            let target = rng.random_range(0..n);
            let ctrl = random_controls(rng, n, &[target]);
            let (controls, anticontrols) = split(ctrl, n);
            let u = random_unitary(rng);
            c.push(CircuitOp::Gate {
                spec: GateSpec::matrix(u.rows()),
                target,
                controls,
                anticontrols,
            });
        }
    }
    c
}

fn split(ctrl: ControlSpec, n: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let controls = (0..n).filter(|q| ctrl.m_val() & (1 << q) != 0).collect();
    let anticontrols = (0..n)
        .filter(|q| ctrl.m_inc() & (1 << q) != 0 && ctrl.m_val() & (1 << q) == 0)
        .collect();
    (controls, anticontrols)
}
