use num_complex::Complex64;
use rayon::prelude::*;

use super::kernel::{ControlSpec, GateKernel, KernelShape};
use super::state::StateVector;
use super::EngineError;

/// How a kernel application is spread over worker threads.
///
/// The index range `[0, N)` is cut into `workers` contiguous chunks. Below
/// `parallel_threshold` amplitudes the loop runs serially on the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExecPolicy {
    pub parallel_threshold: usize,
    pub workers: usize,
}

impl ExecPolicy {
    pub const DEFAULT_THRESHOLD: usize = 1 << 12;

    pub fn serial() -> Self {
        Self {
            parallel_threshold: usize::MAX,
            workers: 1,
        }
    }

    pub fn with_workers(workers: usize) -> Self {
        Self {
            parallel_threshold: Self::DEFAULT_THRESHOLD,
            workers: workers.max(1),
        }
    }
}

impl Default for ExecPolicy {
    fn default() -> Self {
        Self::with_workers(rayon::current_num_threads())
    }
}

/// Writes `out[i] = f(i)` for every index. Each slot has exactly one writer,
/// so the result does not depend on how the range is partitioned.
fn fill<F>(out: &mut [Complex64], policy: &ExecPolicy, f: F)
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let len = out.len();
    let workers = policy.workers.max(1);
    if workers == 1 || len < policy.parallel_threshold {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f(i);
        }
        return;
    }
    let chunk = len.div_ceil(workers);
    out.par_chunks_mut(chunk).enumerate().for_each(|(c, part)| {
        let base = c * chunk;
        for (off, slot) in part.iter_mut().enumerate() {
            *slot = f(base + off);
        }
    });
}

fn check_1q(state: &StateVector, k: usize, ctrl: &ControlSpec) -> Result<(), EngineError> {
    state.check_qubit(k)?;
    if ctrl.contains(k) {
        return Err(EngineError::TargetInControls(k));
    }
    ctrl.check(state.num_qubits())
}

fn check_swap(
    state: &StateVector,
    qa: usize,
    qb: usize,
    ctrl: &ControlSpec,
) -> Result<(), EngineError> {
    if qa == qb {
        return Err(EngineError::SwapSameQubit(qa));
    }
    state.check_qubit(qa)?;
    state.check_qubit(qb)?;
    for q in [qa, qb] {
        if ctrl.contains(q) {
            return Err(EngineError::TargetInControls(q));
        }
    }
    ctrl.check(state.num_qubits())
}

fn kernel_1q(
    input: &[Complex64],
    out: &mut [Complex64],
    u: &GateKernel,
    k: usize,
    ctrl: ControlSpec,
    policy: &ExecPolicy,
) {
    let stride = 1usize << k;
    match u.shape() {
        KernelShape::Identity => out.copy_from_slice(input),
        KernelShape::Flip => fill(out, policy, |i| {
            if ctrl.is_satisfied(i) {
                input[i ^ stride]
            } else {
                input[i]
            }
        }),
        KernelShape::General => {
            let (u00, u01) = (u.entry(0, 0), u.entry(0, 1));
            let (u10, u11) = (u.entry(1, 0), u.entry(1, 1));
            fill(out, policy, |i| {
                if !ctrl.is_satisfied(i) {
                    return input[i];
                }
                let partner = input[i ^ stride];
                if i & stride == 0 {
                    u00 * input[i] + u01 * partner
                } else {
                    u10 * partner + u11 * input[i]
                }
            })
        }
    }
}

fn kernel_swap(
    input: &[Complex64],
    out: &mut [Complex64],
    qa: usize,
    qb: usize,
    ctrl: ControlSpec,
    policy: &ExecPolicy,
) {
    let mask_a = 1usize << qa;
    let mask_b = 1usize << qb;
    let swap_mask = mask_a | mask_b;
    fill(out, policy, |i| {
        if ctrl.is_satisfied(i) && ((i & mask_a) != 0) != ((i & mask_b) != 0) {
            input[i ^ swap_mask]
        } else {
            input[i]
        }
    });
}

/// Applies a (possibly controlled) single-qubit kernel to target `k`,
/// returning the updated state in a fresh buffer.
pub fn apply_1q_gate(
    state: &StateVector,
    u: &GateKernel,
    k: usize,
    ctrl: ControlSpec,
) -> Result<StateVector, EngineError> {
    apply_1q_gate_with(state, u, k, ctrl, &ExecPolicy::default())
}

pub fn apply_1q_gate_with(
    state: &StateVector,
    u: &GateKernel,
    k: usize,
    ctrl: ControlSpec,
    policy: &ExecPolicy,
) -> Result<StateVector, EngineError> {
    check_1q(state, k, &ctrl)?;
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    kernel_1q(state.amplitudes(), &mut out, u, k, ctrl, policy);
    Ok(StateVector::from_raw(state.num_qubits(), out))
}

/// Exchanges qubits `qa` and `qb` on every control-satisfying index.
pub fn apply_swap(
    state: &StateVector,
    qa: usize,
    qb: usize,
    ctrl: ControlSpec,
) -> Result<StateVector, EngineError> {
    apply_swap_with(state, qa, qb, ctrl, &ExecPolicy::default())
}

pub fn apply_swap_with(
    state: &StateVector,
    qa: usize,
    qb: usize,
    ctrl: ControlSpec,
    policy: &ExecPolicy,
) -> Result<StateVector, EngineError> {
    check_swap(state, qa, qb, &ctrl)?;
    let mut out = vec![Complex64::new(0.0, 0.0); state.len()];
    kernel_swap(state.amplitudes(), &mut out, qa, qb, ctrl, policy);
    Ok(StateVector::from_raw(state.num_qubits(), out))
}

/// Applies kernels in place by ping-ponging between the state's buffer and a
/// pooled scratch buffer of the same length.
#[derive(Debug, Default)]
pub struct Engine {
    policy: ExecPolicy,
    scratch: Vec<Complex64>,
}

impl Engine {
    pub fn new(policy: ExecPolicy) -> Self {
        Self {
            policy,
            scratch: Vec::new(),
        }
    }

    pub fn policy(&self) -> &ExecPolicy {
        &self.policy
    }

    fn scratch_for(&mut self, len: usize) -> Vec<Complex64> {
        let mut buf = std::mem::take(&mut self.scratch);
        buf.resize(len, Complex64::new(0.0, 0.0));
        buf
    }

    pub fn apply_1q_gate(
        &mut self,
        state: &mut StateVector,
        u: &GateKernel,
        k: usize,
        ctrl: ControlSpec,
    ) -> Result<(), EngineError> {
        check_1q(state, k, &ctrl)?;
        let mut out = self.scratch_for(state.len());
        kernel_1q(state.amplitudes(), &mut out, u, k, ctrl, &self.policy);
        std::mem::swap(state.amps_mut(), &mut out);
        self.scratch = out;
        Ok(())
    }

    pub fn apply_swap(
        &mut self,
        state: &mut StateVector,
        qa: usize,
        qb: usize,
        ctrl: ControlSpec,
    ) -> Result<(), EngineError> {
        check_swap(state, qa, qb, &ctrl)?;
        let mut out = self.scratch_for(state.len());
        kernel_swap(state.amplitudes(), &mut out, qa, qb, ctrl, &self.policy);
        std::mem::swap(state.amps_mut(), &mut out);
        self.scratch = out;
        Ok(())
    }
}
