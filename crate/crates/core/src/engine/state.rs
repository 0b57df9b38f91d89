use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{EngineError, MAX_ENGINE_QUBITS};

/// Pure state of an `n`-qubit register: `2^n` amplitudes, qubit `q_k` in bit
/// `k` of the index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros basis state `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self, EngineError> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self, EngineError> {
        if num_qubits == 0 || num_qubits >= MAX_ENGINE_QUBITS {
            return Err(EngineError::QubitCount(num_qubits));
        }
        let len = 1usize
            .checked_shl(num_qubits as u32)
            .ok_or(EngineError::QubitCount(num_qubits))?;
        if index >= len {
            return Err(EngineError::QubitOutOfRange {
                qubit: index,
                n: num_qubits,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Wraps raw amplitudes. The length must be a power of two and the vector
    /// must be normalized to within `1e-10`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, EngineError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(EngineError::AmplitudeCount(len));
        }
        let state = Self {
            num_qubits: len.trailing_zeros() as usize,
            amps,
        };
        let norm = state.norm_sqr();
        if norm.is_nan() || (norm - 1.0).abs() > 1e-10 {
            return Err(EngineError::NotNormalized { norm });
        }
        Ok(state)
    }

    pub(crate) fn from_raw(num_qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << num_qubits);
        Self { num_qubits, amps }
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut Vec<Complex64> {
        &mut self.amps
    }

    /// `Σ |a_i|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub(crate) fn check_qubit(&self, qubit: usize) -> Result<(), EngineError> {
        if qubit >= self.num_qubits {
            return Err(EngineError::QubitOutOfRange {
                qubit,
                n: self.num_qubits,
            });
        }
        Ok(())
    }
}

/// `|a_i|²` for every basis index.
pub fn probabilities(state: &StateVector) -> Vec<f64> {
    state.amps.iter().map(|a| a.norm_sqr()).collect()
}

/// Label of basis index `index` in an `n`-qubit register, `q_0` first.
///
/// ```
/// assert_eq!(strideq_core::engine::basis_label(6, 4), "0110");
/// ```
pub fn basis_label(index: usize, n: usize) -> String {
    (0..n)
        .map(|k| if (index >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Pauli expectations `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Largest componentwise difference to `other`.
    pub fn max_diff(&self, other: &BlochVector) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// Bloch vector of qubit `k`, from one pass over the amplitude pairs
/// `(i, i | 2^k)` with bit `k` of `i` clear.
pub fn bloch_vector(state: &StateVector, k: usize) -> Result<BlochVector, EngineError> {
    state.check_qubit(k)?;
    let stride = 1usize << k;
    let mut coherence = Complex64::new(0.0, 0.0);
    let mut z = 0.0;
    for (i, a0) in state.amps.iter().enumerate() {
        if i & stride != 0 {
            continue;
        }
        let a1 = state.amps[i | stride];
        coherence += a0.conj() * a1;
        z += a0.norm_sqr() - a1.norm_sqr();
    }
    Ok(BlochVector {
        x: 2.0 * coherence.re,
        y: 2.0 * coherence.im,
        z,
    })
}
