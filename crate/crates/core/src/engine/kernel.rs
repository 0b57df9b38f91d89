use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{EngineError, MAX_ENGINE_QUBITS};

/// Max elementwise deviation of `U^dagger U` from the identity accepted when a
/// kernel is built.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum KernelShape {
    Identity,
    /// Exactly `[[0, 1], [1, 0]]`; executed as an amplitude move.
    Flip,
    General,
}

/// A validated 2×2 unitary. This is the only operator storage the engine uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateKernel {
    m: [[Complex64; 2]; 2],
    shape: KernelShape,
}

impl GateKernel {
    pub fn new(
        u00: Complex64,
        u01: Complex64,
        u10: Complex64,
        u11: Complex64,
    ) -> Result<Self, EngineError> {
        let m = [[u00, u01], [u10, u11]];
        let deviation = unitarity_deviation(&m);
        if deviation.is_nan() || deviation > UNITARITY_TOLERANCE {
            return Err(EngineError::NotUnitary { deviation });
        }
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let shape = if u00 == one && u11 == one && u01 == zero && u10 == zero {
            KernelShape::Identity
        } else if u01 == one && u10 == one && u00 == zero && u11 == zero {
            KernelShape::Flip
        } else {
            KernelShape::General
        };
        Ok(Self { m, shape })
    }

    pub fn from_rows(rows: [[Complex64; 2]; 2]) -> Result<Self, EngineError> {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn rows(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub(crate) fn shape(&self) -> KernelShape {
        self.shape
    }
}

fn unitarity_deviation(m: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let dot = m[0][r].conj() * m[0][c] + m[1][r].conj() * m[1][c];
            let expected = if r == c { 1.0 } else { 0.0 };
            let d = (dot - Complex64::new(expected, 0.0)).norm();
            // NaN entries must fail the check
            if d.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(d);
        }
    }
    worst
}

/// Control condition for a kernel: amplitude `i` is updated iff
/// `i & m_inc == m_val`. A set bit in `m_val` is a control, a clear bit at an
/// included position is an anti-control.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ControlSpec {
    m_inc: u64,
    m_val: u64,
}

impl ControlSpec {
    pub const NONE: ControlSpec = ControlSpec { m_inc: 0, m_val: 0 };

    pub fn new(m_inc: u64, m_val: u64) -> Result<Self, EngineError> {
        if m_val & !m_inc != 0 {
            return Err(EngineError::MalformedControls { m_inc, m_val });
        }
        Ok(Self { m_inc, m_val })
    }

    /// Builds the masks from explicit control and anti-control qubit lists.
    pub fn from_qubits(
        controls: impl IntoIterator<Item = usize>,
        anticontrols: impl IntoIterator<Item = usize>,
    ) -> Result<Self, EngineError> {
        let mut m_inc = 0u64;
        let mut m_val = 0u64;
        for q in controls {
            let bit = qubit_bit(q)?;
            m_inc |= bit;
            m_val |= bit;
        }
        for q in anticontrols {
            let bit = qubit_bit(q)?;
            if m_val & bit != 0 {
                return Err(EngineError::ControlOverlap(q));
            }
            m_inc |= bit;
        }
        Ok(Self { m_inc, m_val })
    }

    #[inline]
    pub fn m_inc(&self) -> u64 {
        self.m_inc
    }

    #[inline]
    pub fn m_val(&self) -> u64 {
        self.m_val
    }

    #[inline]
    pub fn is_satisfied(&self, index: usize) -> bool {
        (index as u64) & self.m_inc == self.m_val
    }

    pub fn contains(&self, qubit: usize) -> bool {
        qubit < 64 && self.m_inc & (1 << qubit) != 0
    }

    /// Checks the masks against an `n`-qubit register.
    pub fn check(&self, n: usize) -> Result<(), EngineError> {
        if self.m_val & !self.m_inc != 0 {
            return Err(EngineError::MalformedControls {
                m_inc: self.m_inc,
                m_val: self.m_val,
            });
        }
        if n < 64 && self.m_inc >> n != 0 {
            return Err(EngineError::ControlsOutOfRange { m_inc: self.m_inc, n });
        }
        Ok(())
    }
}

fn qubit_bit(q: usize) -> Result<u64, EngineError> {
    if q >= MAX_ENGINE_QUBITS {
        return Err(EngineError::QubitOutOfRange {
            qubit: q,
            n: MAX_ENGINE_QUBITS,
        });
    }
    Ok(1u64 << q)
}
