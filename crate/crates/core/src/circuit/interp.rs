use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use thiserror::Error;

use super::{to_control_spec, Circuit, CircuitOp, ValidationError};
use crate::engine::{
    bloch_vector, collapse, outcome_probabilities, pick_outcome, probabilities, BlochVector,
    ControlSpec, Engine, EngineError, ExecPolicy, GateKernel, StateVector,
};
use crate::gates::resolve;
use crate::rng::{shot_rng, RNG_ID};

pub const DEFAULT_MAX_QUBITS: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Largest register a run will allocate.
    pub max_qubits: usize,
    pub policy: ExecPolicy,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_MAX_QUBITS,
            policy: ExecPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("invalid circuit at {0}")]
    Invalid(#[from] ValidationError),
    #[error("circuit has {n} qubits, above the ceiling of {max}")]
    QubitCeiling { n: usize, max: usize },
    #[error("shot count must be positive")]
    NoShots,
    #[error("no forced outcome left for measurement of qubit {0}")]
    OutcomesExhausted(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Decides measurement outcomes during a shot.
pub trait OutcomeSource {
    fn next_outcome(&mut self, qubit: usize, p0: f64, p1: f64) -> Result<u8, RunError>;
}

/// Samples outcomes with one uniform draw per measurement.
#[derive(Debug)]
pub struct SampledOutcomes<R>(pub R);

impl<R: Rng> OutcomeSource for SampledOutcomes<R> {
    fn next_outcome(&mut self, _qubit: usize, p0: f64, p1: f64) -> Result<u8, RunError> {
        Ok(pick_outcome(p0, p1, self.0.random()))
    }
}

/// Replays a fixed outcome sequence, for enumerating measurement branches.
#[derive(Debug, Clone, Default)]
pub struct ForcedOutcomes(VecDeque<u8>);

impl ForcedOutcomes {
    pub fn new(outcomes: impl IntoIterator<Item = u8>) -> Self {
        Self(outcomes.into_iter().collect())
    }
}

impl OutcomeSource for ForcedOutcomes {
    fn next_outcome(&mut self, qubit: usize, _p0: f64, _p1: f64) -> Result<u8, RunError> {
        self.0.pop_front().ok_or(RunError::OutcomesExhausted(qubit))
    }
}

/// Final quantum and classical state of one shot.
#[derive(Debug, Clone, PartialEq)]
pub struct ShotOutcome {
    pub state: StateVector,
    pub cbits: Vec<u8>,
}

impl ShotOutcome {
    /// Classical bits as a string, `c_0` first.
    pub fn record(&self) -> String {
        self.cbits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// State at the end of the last shot.
    pub final_state: StateVector,
    /// Classical bits at the end of the last shot.
    pub cbits: Vec<u8>,
    /// `|a_i|²` of `final_state`. If the circuit ends in a measurement this is
    /// the collapsed distribution; `shot_records` carries the statistics.
    pub distribution: Vec<f64>,
    pub bloch: Vec<BlochVector>,
    /// One classical record per shot, `c_0` first.
    pub shot_records: Vec<String>,
    pub seed: u64,
    pub rng_id: String,
}

impl RunResult {
    /// Counts per distinct classical record, ordered by record.
    pub fn histogram(&self) -> BTreeMap<String, u64> {
        let mut counts = BTreeMap::new();
        for r in &self.shot_records {
            *counts.entry(r.clone()).or_insert(0) += 1;
        }
        counts
    }
}

#[derive(Debug, Clone)]
enum Step {
    Gate {
        kernel: GateKernel,
        target: usize,
        ctrl: ControlSpec,
    },
    Swap {
        qa: usize,
        qb: usize,
        ctrl: ControlSpec,
    },
    Measure {
        qubit: usize,
        cbit: usize,
    },
    If {
        cbit: usize,
        value: u8,
        body: Vec<Step>,
    },
    Repeat {
        count: u32,
        body: Vec<Step>,
    },
}

// Only called on validated circuits.
fn compile(ops: &[CircuitOp], n: usize) -> Vec<Step> {
    ops.iter()
        .map(|op| match op {
            CircuitOp::Gate {
                spec,
                target,
                controls,
                anticontrols,
            } => Step::Gate {
                kernel: resolve(spec).expect("validated gate"),
                target: *target,
                ctrl: to_control_spec(controls, anticontrols, n).expect("validated masks"),
            },
            CircuitOp::Swap {
                qa,
                qb,
                controls,
                anticontrols,
            } => Step::Swap {
                qa: *qa,
                qb: *qb,
                ctrl: to_control_spec(controls, anticontrols, n).expect("validated masks"),
            },
            CircuitOp::Measure { qubit, cbit } => Step::Measure {
                qubit: *qubit,
                cbit: *cbit,
            },
            CircuitOp::If { cbit, value, body } => Step::If {
                cbit: *cbit,
                value: *value,
                body: compile(body, n),
            },
            CircuitOp::Repeat { count, body } => Step::Repeat {
                count: *count,
                body: compile(body, n),
            },
        })
        .collect()
}

struct Shot<'a, S> {
    engine: &'a mut Engine,
    source: &'a mut S,
    state: StateVector,
    cbits: Vec<u8>,
}

impl<S: OutcomeSource> Shot<'_, S> {
    fn exec(&mut self, steps: &[Step]) -> Result<(), RunError> {
        for step in steps {
            match step {
                Step::Gate {
                    kernel,
                    target,
                    ctrl,
                } => self
                    .engine
                    .apply_1q_gate(&mut self.state, kernel, *target, *ctrl)?,
                Step::Swap { qa, qb, ctrl } => {
                    self.engine.apply_swap(&mut self.state, *qa, *qb, *ctrl)?
                }
                Step::Measure { qubit, cbit } => {
                    let (p0, p1) = outcome_probabilities(&self.state, *qubit)?;
                    let outcome = self.source.next_outcome(*qubit, p0, p1)?;
                    self.state = collapse(&self.state, *qubit, outcome)?;
                    self.cbits[*cbit] = outcome;
                }
                Step::If { cbit, value, body } => {
                    if self.cbits[*cbit] == *value {
                        self.exec(body)?;
                    }
                }
                Step::Repeat { count, body } => {
                    for _ in 0..*count {
                        self.exec(body)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_ceiling(circuit: &Circuit, max_qubits: usize) -> Result<(), RunError> {
    if circuit.num_qubits > max_qubits {
        return Err(RunError::QubitCeiling {
            n: circuit.num_qubits,
            max: max_qubits,
        });
    }
    Ok(())
}

fn run_steps<S: OutcomeSource>(
    steps: &[Step],
    circuit: &Circuit,
    engine: &mut Engine,
    source: &mut S,
) -> Result<ShotOutcome, RunError> {
    let mut shot = Shot {
        engine,
        source,
        state: StateVector::zero(circuit.num_qubits)?,
        cbits: vec![0; circuit.num_cbits],
    };
    shot.exec(steps)?;
    Ok(ShotOutcome {
        state: shot.state,
        cbits: shot.cbits,
    })
}

impl Circuit {
    /// Runs one shot from `|0…0⟩`, taking measurement outcomes from `source`.
    pub fn execute<S: OutcomeSource>(
        &self,
        source: &mut S,
        options: &RunOptions,
    ) -> Result<ShotOutcome, RunError> {
        self.validate()?;
        check_ceiling(self, options.max_qubits)?;
        let steps = compile(&self.ops, self.num_qubits);
        let mut engine = Engine::new(options.policy);
        run_steps(&steps, self, &mut engine, source)
    }
}

/// Runs `shots` independent shots with default options.
pub fn run(circuit: &Circuit, seed: u64, shots: u64) -> Result<RunResult, RunError> {
    run_with(circuit, seed, shots, &RunOptions::default())
}

pub fn run_with(
    circuit: &Circuit,
    seed: u64,
    shots: u64,
    options: &RunOptions,
) -> Result<RunResult, RunError> {
    if shots == 0 {
        return Err(RunError::NoShots);
    }
    circuit.validate()?;
    check_ceiling(circuit, options.max_qubits)?;
    let steps = compile(&circuit.ops, circuit.num_qubits);
    let mut engine = Engine::new(options.policy);

    let mut shot_records = Vec::with_capacity(shots.min(1 << 20) as usize);
    let mut last = None;
    for s in 0..shots {
        let mut source = SampledOutcomes(shot_rng(seed, s));
        let outcome = run_steps(&steps, circuit, &mut engine, &mut source)?;
        shot_records.push(outcome.record());
        last = Some(outcome);
    }
    let last = last.expect("at least one shot");

    let bloch = (0..circuit.num_qubits)
        .map(|k| bloch_vector(&last.state, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RunResult {
        distribution: probabilities(&last.state),
        final_state: last.state,
        cbits: last.cbits,
        bloch,
        shot_records,
        seed,
        rng_id: RNG_ID.to_owned(),
    })
}
