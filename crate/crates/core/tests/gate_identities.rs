mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strideq_core::gates::{GateName, GateSpec, Param};
use strideq_core::{
    apply_1q_gate, bloch_vector, probabilities, resolve, ControlSpec, GateKernel, StateVector,
};

fn apply(state: &StateVector, spec: &GateSpec, k: usize) -> StateVector {
    apply_1q_gate(state, &resolve(spec).unwrap(), k, ControlSpec::NONE).unwrap()
}

/// Global-phase-safe comparison: probabilities and every qubit's Bloch vector.
fn assert_same_observables(a: &StateVector, b: &StateVector, tol: f64) {
    let (pa, pb) = (probabilities(a), probabilities(b));
    for (x, y) in pa.iter().zip(&pb) {
        assert!((x - y).abs() < tol, "probabilities differ: {x} vs {y}");
    }
    for k in 0..a.num_qubits() {
        let d = bloch_vector(a, k).unwrap().max_diff(&bloch_vector(b, k).unwrap());
        assert!(d < tol, "bloch of q{k} differs by {d}");
    }
}

fn unitarity(k: &GateKernel) -> f64 {
    let m = k.rows();
    let mut worst: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            let dot = m[0][r].conj() * m[0][c] + m[1][r].conj() * m[1][c];
            let e = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((dot.re - e).abs().max(dot.im.abs()));
        }
    }
    worst
}

#[test]
fn fixed_gates_are_unitary() {
    for name in GateName::ALL {
        if name.arity() == 0 {
            let k = resolve(&GateSpec::fixed(name)).unwrap();
            assert!(unitarity(&k) <= 1e-10, "{name}");
        }
    }
}

#[test]
fn h_x_h_equals_z() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=4 {
        let a = random_state(&mut rng, n);
        for k in 0..n {
            let hxh = apply(
                &apply(&apply(&a, &GateSpec::fixed(GateName::H), k), &GateSpec::fixed(GateName::X), k),
                &GateSpec::fixed(GateName::H),
                k,
            );
            let z = apply(&a, &GateSpec::fixed(GateName::Z), k);
            assert_same_observables(&hxh, &z, 1e-12);
        }
    }
}

#[test]
fn s_and_t_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let a = random_state(&mut rng, 2);
    let tt = apply(&apply(&a, &GateSpec::fixed(GateName::T), 1), &GateSpec::fixed(GateName::T), 1);
    let s = apply(&a, &GateSpec::fixed(GateName::S), 1);
    assert!(max_diff(&tt, &s) < 1e-12);
    let ssdg = apply(&s, &GateSpec::fixed(GateName::Sdg), 1);
    assert!(max_diff(&ssdg, &a) < 1e-12);
    let ttdg = apply(&apply(&a, &GateSpec::fixed(GateName::T), 0), &GateSpec::fixed(GateName::Tdg), 0);
    assert!(max_diff(&ttdg, &a) < 1e-12);
}

proptest! {
    #[test]
    fn parameterized_gates_are_unitary(theta in -20.0f64..20.0) {
        for name in [GateName::P, GateName::Rx, GateName::Ry, GateName::Rz] {
            let k = resolve(&GateSpec::angle(name, theta)).unwrap();
            prop_assert!(unitarity(&k) <= 1e-10);
        }
    }

    #[test]
    fn rz_angles_add(seed in any::<u64>(), t1 in -7.0f64..7.0, t2 in -7.0f64..7.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_state(&mut rng, 3);
        let two = apply(&apply(&a, &GateSpec::angle(GateName::Rz, t1), 1), &GateSpec::angle(GateName::Rz, t2), 1);
        let one = apply(&a, &GateSpec::angle(GateName::Rz, t1 + t2), 1);
        assert_same_observables(&two, &one, 1e-12);
    }

    #[test]
    fn u2x2_from_rotation_is_accepted(theta in -7.0f64..7.0, phi in -7.0f64..7.0) {
        let (s, c) = (theta / 2.0).sin_cos();
        let e = num_complex::Complex64::from_polar(1.0, phi);
        let spec = GateSpec::new(GateName::U2x2, vec![
            Param::Real(c), Param::complex(-e * s),
            Param::Real(s), Param::complex(e * c),
        ]);
        prop_assert!(resolve(&spec).is_ok());
    }
}
