//! Brute-force reference simulator for verification at small `n`.
//!
//! Operators are built as full `2^n × 2^n` matrices from Kronecker products of
//! per-qubit factors. Qubit `k` is tensor factor `k` counted from the right,
//! matching the engine's little-endian index layout. This is deliberately the
//! `O(4^n)` construction the kernel engine avoids.

use num_complex::Complex64;
use thiserror::Error;

use crate::engine::{ControlSpec, GateKernel, StateVector};

/// Largest register the oracle will materialize (a 4096 × 4096 matrix).
pub const MAX_ORACLE_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DenseError {
    #[error("dense oracle is limited to {MAX_ORACLE_QUBITS} qubits, got {0}")]
    TooLarge(usize),
    #[error("dense oracle needs at least one qubit")]
    Empty,
    #[error("qubit {qubit} out of range for {n} qubit(s)")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} is both acted on and a control")]
    TargetInControls(usize),
    #[error("swap needs two distinct qubits")]
    SwapSameQubit,
    #[error("control masks address qubits beyond the register or are malformed")]
    BadControls,
    #[error("dimension mismatch: operator {op}, state {state}")]
    Dimension { op: usize, state: usize },
}

/// Row-major square complex matrix acting on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    n: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseOperator {
    pub fn identity(n: usize) -> Result<Self, DenseError> {
        check_size(n)?;
        let dim = 1 << n;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(Self { n, dim, entries })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &DenseOperator) -> Result<DenseOperator, DenseError> {
        if self.dim != rhs.dim {
            return Err(DenseError::Dimension {
                op: self.dim,
                state: rhs.dim,
            });
        }
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * rhs.entries[k * d + c];
                }
            }
        }
        Ok(DenseOperator {
            n: self.n,
            dim: d,
            entries,
        })
    }

    /// Max elementwise `|O†O − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..d {
            for c in 0..d {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    dot += self.get(k, r).conj() * self.get(k, c);
                }
                let expected = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((dot - Complex64::new(expected, 0.0)).norm());
            }
        }
        worst
    }
}

fn check_size(n: usize) -> Result<(), DenseError> {
    if n == 0 {
        return Err(DenseError::Empty);
    }
    if n > MAX_ORACLE_QUBITS {
        return Err(DenseError::TooLarge(n));
    }
    Ok(())
}

/// Small dense matrix used for building operators factor by factor.
#[derive(Debug, Clone)]
struct Matrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Matrix {
    fn from_2x2(m: [[Complex64; 2]; 2]) -> Self {
        Self {
            dim: 2,
            entries: vec![m[0][0], m[0][1], m[1][0], m[1][1]],
        }
    }

    fn scalar(v: Complex64) -> Self {
        Self {
            dim: 1,
            entries: vec![v],
        }
    }

    /// Kronecker product `self ⊗ rhs`.
    fn kron(&self, rhs: &Matrix) -> Matrix {
        let (a, b) = (self.dim, rhs.dim);
        let dim = a * b;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..a {
            for j in 0..a {
                let s = self.entries[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        entries[(i * b + k) * dim + (j * b + l)] = s * rhs.entries[k * b + l];
                    }
                }
            }
        }
        Matrix { dim, entries }
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn eye2() -> [[Complex64; 2]; 2] {
    [[one(), zero()], [zero(), one()]]
}

/// `F_{n-1} ⊗ … ⊗ F_1 ⊗ F_0`, so that factor `k` acts on bit `k`.
fn tensor_over_qubits(n: usize, factor: impl Fn(usize) -> [[Complex64; 2]; 2]) -> Matrix {
    (0..n)
        .rev()
        .fold(Matrix::scalar(one()), |acc, q| acc.kron(&Matrix::from_2x2(factor(q))))
}

/// Projector onto basis states whose masked bits equal the value mask.
fn control_projector(n: usize, ctrl: &ControlSpec) -> Matrix {
    tensor_over_qubits(n, |q| {
        let bit = 1u64 << q;
        if ctrl.m_inc() & bit == 0 {
            eye2()
        } else if ctrl.m_val() & bit != 0 {
            [[zero(), zero()], [zero(), one()]]
        } else {
            [[one(), zero()], [zero(), zero()]]
        }
    })
}

fn check_ctrl(n: usize, ctrl: &ControlSpec, acted_on: &[usize]) -> Result<(), DenseError> {
    ctrl.check(n).map_err(|_| DenseError::BadControls)?;
    for &q in acted_on {
        if q >= n {
            return Err(DenseError::QubitOutOfRange { qubit: q, n });
        }
        if ctrl.contains(q) {
            return Err(DenseError::TargetInControls(q));
        }
    }
    Ok(())
}

/// Full operator `P·(I ⊗ … ⊗ U ⊗ … ⊗ I) + (I − P)` where `P` projects onto
/// control-satisfying basis states.
pub fn dense_1q(
    n: usize,
    u: &GateKernel,
    k: usize,
    ctrl: ControlSpec,
) -> Result<DenseOperator, DenseError> {
    check_size(n)?;
    check_ctrl(n, &ctrl, &[k])?;
    let full_u = tensor_over_qubits(n, |q| if q == k { u.rows() } else { eye2() });
    let proj = control_projector(n, &ctrl);
    let dim = full_u.dim;
    let mut entries = vec![zero(); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            // P is diagonal, so (P·U)[r][c] = P[r][r]·U[r][c]
            let p = proj.entries[r * dim + r];
            let mut v = p * full_u.entries[r * dim + c];
            if r == c {
                v += one() - p;
            }
            entries[r * dim + c] = v;
        }
    }
    Ok(DenseOperator { n, dim, entries })
}

/// Controlled SWAP built as three controlled-X operators:
/// `CX(a→b) · CX(b→a) · CX(a→b)`, each also conditioned on `ctrl`.
pub fn dense_swap(
    n: usize,
    qa: usize,
    qb: usize,
    ctrl: ControlSpec,
) -> Result<DenseOperator, DenseError> {
    check_size(n)?;
    if qa == qb {
        return Err(DenseError::SwapSameQubit);
    }
    check_ctrl(n, &ctrl, &[qa, qb])?;
    let x = GateKernel::from_rows([[zero(), one()], [one(), zero()]]).expect("X is unitary");
    let with = |extra: usize| {
        let bit = 1u64 << extra;
        ControlSpec::new(ctrl.m_inc() | bit, ctrl.m_val() | bit).expect("consistent masks")
    };
    let ab = dense_1q(n, &x, qb, with(qa))?;
    let ba = dense_1q(n, &x, qa, with(qb))?;
    ab.compose(&ba)?.compose(&ab)
}

/// Matrix-vector product.
pub fn apply_dense(op: &DenseOperator, state: &StateVector) -> Result<StateVector, DenseError> {
    if op.dim != state.len() {
        return Err(DenseError::Dimension {
            op: op.dim,
            state: state.len(),
        });
    }
    let a = state.amplitudes();
    let amps: Vec<Complex64> = (0..op.dim)
        .map(|r| {
            op.entries[r * op.dim..(r + 1) * op.dim]
                .iter()
                .zip(a)
                .map(|(m, v)| m * v)
                .sum()
        })
        .collect();
    Ok(StateVector::from_raw(state.num_qubits(), amps))
}
