//! Named single-qubit gates and their 2×2 kernels.
//!
//! Matrices are the conventional ones with no global-phase normalization.
//! Angles are in radians.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{EngineError, GateKernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateName {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    P,
    Rx,
    Ry,
    Rz,
    U2x2,
}

impl GateName {
    pub const ALL: [GateName; 14] = [
        GateName::I,
        GateName::X,
        GateName::Y,
        GateName::Z,
        GateName::H,
        GateName::S,
        GateName::Sdg,
        GateName::T,
        GateName::Tdg,
        GateName::P,
        GateName::Rx,
        GateName::Ry,
        GateName::Rz,
        GateName::U2x2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GateName::I => "i",
            GateName::X => "x",
            GateName::Y => "y",
            GateName::Z => "z",
            GateName::H => "h",
            GateName::S => "s",
            GateName::Sdg => "sdg",
            GateName::T => "t",
            GateName::Tdg => "tdg",
            GateName::P => "p",
            GateName::Rx => "rx",
            GateName::Ry => "ry",
            GateName::Rz => "rz",
            GateName::U2x2 => "u2x2",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateName::P | GateName::Rx | GateName::Ry | GateName::Rz => 1,
            GateName::U2x2 => 4,
            _ => 0,
        }
    }

    fn display_name(self) -> &'static str {
        match self {
            GateName::I => "Identity",
            GateName::X => "Pauli-X",
            GateName::Y => "Pauli-Y",
            GateName::Z => "Pauli-Z",
            GateName::H => "Hadamard",
            GateName::S => "S (phase π/2)",
            GateName::Sdg => "S†",
            GateName::T => "T (phase π/4)",
            GateName::Tdg => "T†",
            GateName::P => "Phase",
            GateName::Rx => "X rotation",
            GateName::Ry => "Y rotation",
            GateName::Rz => "Z rotation",
            GateName::U2x2 => "Custom 2×2 unitary",
        }
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GateName {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| GateError::UnknownGate(s.to_owned()))
    }
}

/// A gate parameter: a real angle, or a complex matrix entry written `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Real(f64),
    Complex([f64; 2]),
}

impl Param {
    pub fn complex(z: Complex64) -> Self {
        Param::Complex([z.re, z.im])
    }

    fn as_complex(self) -> Complex64 {
        match self {
            Param::Real(v) => Complex64::new(v, 0.0),
            Param::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    pub name: GateName,
    pub params: Vec<Param>,
}

impl GateSpec {
    pub fn new(name: GateName, params: Vec<Param>) -> Self {
        Self { name, params }
    }

    pub fn fixed(name: GateName) -> Self {
        Self::new(name, Vec::new())
    }

    pub fn angle(name: GateName, theta: f64) -> Self {
        Self::new(name, vec![Param::Real(theta)])
    }

    /// A `u2x2` gate from its rows.
    pub fn matrix(rows: [[Complex64; 2]; 2]) -> Self {
        Self::new(
            GateName::U2x2,
            rows.iter().flatten().copied().map(Param::complex).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("unknown gate '{0}'")]
    UnknownGate(String),
    #[error("gate '{name}' takes {expected} parameter(s), got {got}")]
    Arity {
        name: GateName,
        expected: usize,
        got: usize,
    },
    #[error("gate '{name}' parameter {index} must be a real angle")]
    ExpectedReal { name: GateName, index: usize },
    #[error("gate '{name}': {source}")]
    Kernel {
        name: GateName,
        #[source]
        source: EngineError,
    },
}

/// Resolves a gate spec to its validated kernel.
pub fn resolve(spec: &GateSpec) -> Result<GateKernel, GateError> {
    let name = spec.name;
    if spec.params.len() != name.arity() {
        return Err(GateError::Arity {
            name,
            expected: name.arity(),
            got: spec.params.len(),
        });
    }
    let angle = || match spec.params[0] {
        Param::Real(v) => Ok(v),
        Param::Complex(_) => Err(GateError::ExpectedReal { name, index: 0 }),
    };
    let c = Complex64::new;
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let rows = match name {
        GateName::I => [[one, zero], [zero, one]],
        GateName::X => [[zero, one], [one, zero]],
        GateName::Y => [[zero, c(0.0, -1.0)], [c(0.0, 1.0), zero]],
        GateName::Z => [[one, zero], [zero, -one]],
        GateName::H => {
            let s = c(FRAC_1_SQRT_2, 0.0);
            [[s, s], [s, -s]]
        }
        GateName::S => [[one, zero], [zero, c(0.0, 1.0)]],
        GateName::Sdg => [[one, zero], [zero, c(0.0, -1.0)]],
        GateName::T => [[one, zero], [zero, Complex64::from_polar(1.0, FRAC_PI_4)]],
        GateName::Tdg => [[one, zero], [zero, Complex64::from_polar(1.0, -FRAC_PI_4)]],
        GateName::P => [[one, zero], [zero, Complex64::from_polar(1.0, angle()?)]],
        GateName::Rx => {
            let (s, co) = (angle()? / 2.0).sin_cos();
            [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
        }
        GateName::Ry => {
            let (s, co) = (angle()? / 2.0).sin_cos();
            [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
        }
        GateName::Rz => {
            let half = angle()? / 2.0;
            [
                [Complex64::from_polar(1.0, -half), zero],
                [zero, Complex64::from_polar(1.0, half)],
            ]
        }
        GateName::U2x2 => {
            let p: Vec<Complex64> = spec.params.iter().map(|p| p.as_complex()).collect();
            [[p[0], p[1]], [p[2], p[3]]]
        }
    };
    GateKernel::from_rows(rows).map_err(|source| GateError::Kernel { name, source })
}

/// Palette entry describing one gate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateInfo {
    pub name: String,
    pub display_name: String,
    pub params: usize,
    /// `"none"`, `"angle"` (radians) or `"complex"` (`[re, im]` matrix entries).
    pub param_kind: String,
}

/// Every supported gate, in a fixed order.
pub fn catalog() -> Vec<GateInfo> {
    GateName::ALL
        .into_iter()
        .map(|g| GateInfo {
            name: g.as_str().to_owned(),
            display_name: g.display_name().to_owned(),
            params: g.arity(),
            param_kind: match g {
                GateName::U2x2 => "complex",
                _ if g.arity() == 1 => "angle",
                _ => "none",
            }
            .to_owned(),
        })
        .collect()
}
