//! Acceptance suite. Each test checks one criterion at its stated tolerance
//! and writes a single `PASS`/`FAIL` line to stderr (uncaptured), then
//! asserts. Tests hold a shared lock so timings are not disturbed by each
//! other.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::alloc::{GlobalAlloc, Layout, System};
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use common::{bit_identical, dense_run, max_diff, random_circuit, random_controls, random_state, random_unitary};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strideq_core::circuit::{ForcedOutcomes, RunOptions};
use strideq_core::engine::{apply_1q_gate_with, apply_swap_with};
use strideq_core::gates::{GateName, GateSpec};
use strideq_core::{
    apply_1q_gate, bloch_vector, build_teleportation, resolve, run, BlochVector, Circuit,
    CircuitOp, ControlSpec, Engine, ExecPolicy, RunReport, StateVector,
};

struct Counting;

static TRACKING: AtomicBool = AtomicBool::new(false);
static LARGEST: AtomicUsize = AtomicUsize::new(0);
static TOTAL: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        if TRACKING.load(Ordering::Relaxed) {
            LARGEST.fetch_max(layout.size(), Ordering::Relaxed);
            TOTAL.fetch_add(layout.size(), Ordering::Relaxed);
        }
        unsafe { System.alloc(layout) }
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        if TRACKING.load(Ordering::Relaxed) {
            LARGEST.fetch_max(layout.size(), Ordering::Relaxed);
            TOTAL.fetch_add(layout.size(), Ordering::Relaxed);
        }
        unsafe { System.alloc_zeroed(layout) }
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        unsafe { System.dealloc(ptr, layout) }
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        if TRACKING.load(Ordering::Relaxed) {
            LARGEST.fetch_max(new_size, Ordering::Relaxed);
            TOTAL.fetch_add(new_size, Ordering::Relaxed);
        }
        unsafe { System.realloc(ptr, layout, new_size) }
    }
}

#[global_allocator]
static ALLOC: Counting = Counting;

static SERIAL: Mutex<()> = Mutex::new(());

fn exclusive() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn verdict(name: &str, pass: bool, detail: String) {
    let line = format!("acceptance {} {name}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "{name}: {detail}");
}

fn example(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli_json(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_strideq"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn expected_bloch(alpha: Complex64, beta: Complex64) -> BlochVector {
    let cross = alpha.conj() * beta;
    BlochVector {
        x: 2.0 * cross.re,
        y: 2.0 * cross.im,
        z: alpha.norm_sqr() - beta.norm_sqr(),
    }
}

#[test]
fn grover_reproduction() {
    let _guard = exclusive();
    let start = Instant::now();
    let stdout = cli_json(&["run", &example("grover_0110.json")]);
    let elapsed = start.elapsed();
    let report: RunReport = serde_json::from_slice(&stdout).unwrap();
    let p = report.distribution[6];
    let closed = (7.0 * 0.25f64.asin()).sin().powi(2);
    let pass = report.qubits == 4
        && p >= 0.96
        && (p - closed).abs() < 1e-12
        && elapsed < Duration::from_secs(1);
    verdict(
        "grover_reproduction",
        pass,
        format!("P(0110)={p:.15} closed_form={closed:.15} |diff|={:.1e} time={elapsed:?}", (p - closed).abs()),
    );
}

#[test]
fn teleportation_reproduction() {
    let _guard = exclusive();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1e);
    let mut worst: f64 = 0.0;
    let mut sampled_branches = std::collections::BTreeSet::new();
    for trial in 0..100u64 {
        let input = random_state(&mut rng, 1);
        let (alpha, beta) = (input.amplitudes()[0], input.amplitudes()[1]);
        let want = expected_bloch(alpha, beta);
        let circuit = build_teleportation(alpha, beta).unwrap();

        let sampled = run(&circuit, trial, 1).unwrap();
        sampled_branches.insert(sampled.shot_records[0].clone());
        worst = worst.max(bloch_vector(&sampled.final_state, 2).unwrap().max_diff(&want));

        for outcomes in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let shot = circuit
                .execute(&mut ForcedOutcomes::new(outcomes), &RunOptions::default())
                .unwrap();
            worst = worst.max(bloch_vector(&shot.state, 2).unwrap().max_diff(&want));
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-12 && sampled_branches.len() == 4 && elapsed < Duration::from_secs(1);
    verdict(
        "teleportation_reproduction",
        pass,
        format!(
            "100 inputs x 4 branches, max Bloch deviation={worst:.1e}, sampled branches={}, time={elapsed:?}",
            sampled_branches.len()
        ),
    );
}

#[test]
fn oracle_equivalence() {
    let _guard = exclusive();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    let (mut gates, mut swaps) = (0usize, 0usize);
    let circuits = 500;
    for _ in 0..circuits {
        let n = rng.random_range(1..=6);
        let ops = rng.random_range(1..=30);
        let c = random_circuit(&mut rng, n, ops);
        for op in &c.ops {
            match op {
                CircuitOp::Swap { .. } => swaps += 1,
                _ => gates += 1,
            }
        }
        let engine = run(&c, 0, 1).unwrap().final_state;
        worst = worst.max(max_diff(&engine, &dense_run(&c)));
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-12 && swaps > 0 && elapsed < Duration::from_secs(30);
    verdict(
        "oracle_equivalence",
        pass,
        format!("{circuits} circuits ({gates} gates, {swaps} swaps), max deviation={worst:.1e}, time={elapsed:?}"),
    );
}

#[test]
fn control_failing_amplitudes_untouched() {
    let _guard = exclusive();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    let mut applications = 0usize;
    while applications < 100 {
        let n = rng.random_range(2..=8);
        let target = rng.random_range(0..n);
        let ctrl = random_controls(&mut rng, n, &[target]);
        if ctrl.m_inc() == 0 {
            continue;
        }
        applications += 1;
        let input = random_state(&mut rng, n);
        let out = apply_1q_gate(&input, &random_unitary(&mut rng), target, ctrl).unwrap();
        for i in (0..input.len()).filter(|&i| !ctrl.is_satisfied(i)) {
            checked += 1;
            if !bit_identical(&input.amplitudes()[i..=i], &out.amplitudes()[i..=i]) {
                mismatches += 1;
            }
        }
    }
    verdict(
        "control_failing_amplitudes_untouched",
        mismatches == 0 && checked > 0,
        format!("{applications} masked applications, {checked} control-failing amplitudes, {mismatches} changed"),
    );
}

#[test]
fn partition_independence() {
    let _guard = exclusive();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let state = random_state(&mut rng, 16);
    let mut cases: Vec<(usize, ControlSpec, Option<usize>)> = Vec::new();
    for target in [0, 7, 15] {
        cases.push((target, ControlSpec::NONE, None));
        cases.push((target, random_controls(&mut rng, 16, &[target]), None));
    }
    cases.push((3, ControlSpec::NONE, Some(12)));
    cases.push((1, random_controls(&mut rng, 16, &[1, 14]), Some(14)));
    let u = random_unitary(&mut rng);

    let mut differing = 0usize;
    for (a, ctrl, b) in &cases {
        let outputs: Vec<StateVector> = [1usize, 2, 4, 8]
            .iter()
            .map(|&w| {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build().unwrap();
                let policy = ExecPolicy {
                    parallel_threshold: 0,
                    workers: w,
                };
                pool.install(|| match b {
                    None => apply_1q_gate_with(&state, &u, *a, *ctrl, &policy).unwrap(),
                    Some(b) => apply_swap_with(&state, *a, *b, *ctrl, &policy).unwrap(),
                })
            })
            .collect();
        differing += outputs[1..]
            .iter()
            .filter(|o| !bit_identical(o.amplitudes(), outputs[0].amplitudes()))
            .count();
    }
    verdict(
        "partition_independence",
        differing == 0,
        format!("{} kernels on 16 qubits x workers 1/2/4/8, {differing} outputs differ from serial", cases.len()),
    );
}

fn time_h(engine: &mut Engine, state: &mut StateVector, reps: usize) -> Duration {
    let h = resolve(&GateSpec::fixed(GateName::H)).unwrap();
    let target = state.num_qubits() / 2;
    engine.apply_1q_gate(state, &h, target, ControlSpec::NONE).unwrap();
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            engine.apply_1q_gate(state, &h, target, ControlSpec::NONE).unwrap();
            t.elapsed()
        })
        .min()
        .unwrap()
}

#[test]
fn memory_and_scaling() {
    let _guard = exclusive();
    let n = 22;
    let amp_bytes = std::mem::size_of::<Complex64>();
    let state = StateVector::zero(n).unwrap();
    let h = resolve(&GateSpec::fixed(GateName::H)).unwrap();

    LARGEST.store(0, Ordering::SeqCst);
    TOTAL.store(0, Ordering::SeqCst);
    TRACKING.store(true, Ordering::SeqCst);
    let start = Instant::now();
    let out = apply_1q_gate(&state, &h, 0, ControlSpec::NONE).unwrap();
    let cold = start.elapsed();
    TRACKING.store(false, Ordering::SeqCst);
    let (largest, total) = (LARGEST.load(Ordering::SeqCst), TOTAL.load(Ordering::SeqCst));
    assert!((out.amplitudes()[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    drop((state, out));

    let buffer = (1usize << n) * amp_bytes;
    let memory_ok = largest <= buffer && total <= 2 * buffer;

    let mut engine = Engine::new(ExecPolicy::default());
    let timings: Vec<(usize, Duration)> = (20..=23)
        .map(|n| {
            let mut s = StateVector::zero(n).unwrap();
            (n, time_h(&mut engine, &mut s, 5))
        })
        .collect();
    let ratios: Vec<f64> = timings
        .windows(2)
        .map(|w| w[1].1.as_secs_f64() / w[0].1.as_secs_f64())
        .collect();
    let scaling_ok = ratios.iter().all(|r| (1.6..=2.8).contains(r));

    verdict(
        "memory_and_scaling",
        memory_ok && cold < Duration::from_secs(2) && scaling_ok,
        format!(
            "n=22: largest allocation={largest} B (2^22 amplitudes={buffer} B), total={total} B, time={cold:?}; \
             per-gate min times {:?}; ratios {:?}",
            timings.iter().map(|(n, t)| format!("n={n}:{t:?}")).collect::<Vec<_>>(),
            ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn cli_determinism() {
    let _guard = exclusive();
    let mut distinct = 0usize;
    let cases: [&[&str]; 2] = [
        &["run", &example("teleportation.json"), "--seed", "7", "--shots", "200", "--state"],
        &["run", &example("grover_0110.json"), "--seed", "3", "--shots", "5"],
    ];
    for args in cases {
        let first = cli_json(args);
        serde_json::from_slice::<RunReport>(&first).unwrap().check().unwrap();
        distinct += (1..5).filter(|_| cli_json(args) != first).count();
    }
    verdict(
        "cli_determinism",
        distinct == 0,
        format!("2 circuits x 5 runs of --format json, {distinct} runs differ from the first"),
    );
}

#[test]
fn measurement_statistics() {
    let _guard = exclusive();
    let mut c = Circuit::new(1, 1);
    c.push(CircuitOp::gate(GateName::H, 0)).push(CircuitOp::measure(0, 0));
    let shots = 10_000u64;
    let result = run(&c, 2024, shots).unwrap();
    let ones = result.shot_records.iter().filter(|r| *r == "1").count();
    let freq = ones as f64 / shots as f64;
    verdict(
        "measurement_statistics",
        result.shot_records.len() == shots as usize && (0.48..=0.52).contains(&freq),
        format!("seed 2024, {shots} shots, outcome-1 frequency={freq:.4}"),
    );
}
