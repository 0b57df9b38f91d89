use num_complex::Complex64;
use rand::Rng;

use super::state::StateVector;
use super::EngineError;

/// Outcome probabilities below this are treated as exactly zero.
const CERTAINTY_CUTOFF: f64 = 1e-15;

/// Norm drift beyond this before a measurement signals upstream corruption.
const NORM_GUARD: f64 = 1e-6;

/// `(p0, p1)` for a computational-basis measurement of qubit `k`.
pub fn outcome_probabilities(state: &StateVector, k: usize) -> Result<(f64, f64), EngineError> {
    state.check_qubit(k)?;
    let stride = 1usize << k;
    let (mut p0, mut p1) = (0.0, 0.0);
    for (i, a) in state.amplitudes().iter().enumerate() {
        if i & stride == 0 {
            p0 += a.norm_sqr();
        } else {
            p1 += a.norm_sqr();
        }
    }
    let norm = p0 + p1;
    if norm.is_nan() || (norm - 1.0).abs() > NORM_GUARD {
        return Err(EngineError::NotNormalized { norm });
    }
    Ok((p0, p1))
}

/// Maps one uniform draw in `[0, 1)` to an outcome. Near-certain outcomes are
/// forced so collapse never divides by a vanishing probability.
pub fn pick_outcome(p0: f64, p1: f64, draw: f64) -> u8 {
    if p1 < CERTAINTY_CUTOFF {
        0
    } else if p0 < CERTAINTY_CUTOFF {
        1
    } else {
        u8::from(draw < p1)
    }
}

/// Projects qubit `k` onto `outcome` and rescales by `1/√p`.
pub fn collapse(state: &StateVector, k: usize, outcome: u8) -> Result<StateVector, EngineError> {
    let (p0, p1) = outcome_probabilities(state, k)?;
    let p = if outcome == 0 { p0 } else { p1 };
    if p < CERTAINTY_CUTOFF {
        return Err(EngineError::ImpossibleOutcome { qubit: k, outcome });
    }
    let stride = 1usize << k;
    let want = if outcome == 0 { 0 } else { stride };
    let scale = p.sqrt().recip();
    let zero = Complex64::new(0.0, 0.0);
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| if i & stride == want { a * scale } else { zero })
        .collect();
    Ok(StateVector::from_raw(state.num_qubits(), amps))
}

/// Samples qubit `k` with a single draw from `rng`, returning the outcome and
/// the collapsed state. The qubit stays in the register.
pub fn measure_qubit<R: Rng + ?Sized>(
    state: &StateVector,
    k: usize,
    rng: &mut R,
) -> Result<(u8, StateVector), EngineError> {
    let (p0, p1) = outcome_probabilities(state, k)?;
    let draw: f64 = rng.random();
    let outcome = pick_outcome(p0, p1, draw);
    Ok((outcome, collapse(state, k, outcome)?))
}
