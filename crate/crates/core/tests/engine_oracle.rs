mod common;

use common::dense::{self, Mat};
use num_complex::Complex64;
use proptest::prelude::*;
use wigner_ghz::quantum::{
    dense_commutator_norm, GateMatrix, Observable, Pauli, PauliString, StateVector,
};
use wigner_ghz::seed::shot_rng;
use wigner_ghz::wigner::{lift, premeasure, reverse, FactLabel, Premeasurement};

const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

fn all_strings(n: usize) -> Vec<String> {
    (0..4usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let ch = LETTERS[code % 4];
                    code /= 4;
                    ch
                })
                .collect()
        })
        .collect()
}

fn ps(text: &str) -> PauliString {
    text.parse().unwrap()
}

fn state_from(seed: u64, n: usize) -> StateVector {
    use rand::Rng;
    let mut rng = shot_rng(seed, "oracle/state", 0);
    let amps = (0..1 << n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(amps).unwrap()
}

fn close_vec(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
}

#[test]
fn ghz_preparation_matches_gate_matrices() {
    let mut s = StateVector::zero(5).unwrap();
    s.prepare_ghz([1, 3, 4]).unwrap();
    assert!(close_vec(s.amplitudes(), &dense::ghz(5, [1, 3, 4]), 1e-12));
}

#[test]
fn every_three_qubit_string_acts_like_its_matrix() {
    let psi = state_from(11, 3);
    for text in all_strings(3) {
        for sign in ["", "-"] {
            let label = format!("{sign}{text}");
            let m = Mat::pauli(&label);
            let mut engine = psi.clone();
            engine.apply_pauli(&ps(&label)).unwrap();
            assert!(
                close_vec(engine.amplitudes(), &m.apply(psi.amplitudes()), 1e-12),
                "{label}"
            );
            let e = psi.expectation(&ps(&label)).unwrap();
            assert!(
                (e - dense::expectation(&m, psi.amplitudes())).abs() < 1e-12,
                "{label}"
            );
        }
    }
}

#[test]
fn commutation_exhaustive_up_to_three_qubits() {
    for n in 1..=3 {
        let strings = all_strings(n);
        let mats: Vec<Mat> = strings.iter().map(|s| Mat::pauli(s)).collect();
        for (i, a) in strings.iter().enumerate() {
            for (j, b) in strings.iter().enumerate() {
                let norm = mats[i].commutator_norm(&mats[j]);
                let engine = ps(a).commutes(&ps(b)).unwrap();
                assert_eq!(engine, norm < 1e-12, "{a} {b}");
            }
        }
    }
}

#[test]
fn products_match_matrix_products() {
    let strings = all_strings(2);
    for a in &strings {
        for b in &strings {
            let (phase, p) = ps(a).product(&ps(b)).unwrap();
            let engine = Mat::pauli(&p.to_string()).scale(phase);
            let oracle = Mat::pauli(a).mul(&Mat::pauli(b));
            assert!(engine.distance(&oracle) < 1e-12, "{a} * {b}");
        }
    }
}

#[test]
fn dense_commutator_norm_matches_oracle() {
    for (a, b) in [
        ("XYZ", "ZZI"),
        ("XXI", "YYI"),
        ("IIZ", "IXI"),
        ("YIY", "XIX"),
    ] {
        let engine = dense_commutator_norm(&ps(a), &ps(b)).unwrap();
        let oracle = Mat::pauli(a).commutator_norm(&Mat::pauli(b));
        assert!(
            (engine - oracle).abs() < 1e-10,
            "{a} {b}: {engine} vs {oracle}"
        );
    }
}

#[test]
fn gates_match_kronecker_matrices() {
    let psi = state_from(3, 3);
    let (s, co) = (0.35f64).sin_cos();
    let axis = [0.6, 0.0, 0.8];
    let rot: dense::Block = [
        [
            Complex64::new(co, -axis[2] * s),
            Complex64::new(-axis[1] * s, -axis[0] * s),
        ],
        [
            Complex64::new(axis[1] * s, -axis[0] * s),
            Complex64::new(co, axis[2] * s),
        ],
    ];
    let id = dense::block('I');
    let mut engine = psi.clone();
    engine
        .apply_gate(&GateMatrix::rotation(axis, 0.7).unwrap(), &[1])
        .unwrap();
    let oracle = Mat::kron(&[id, rot, id]).apply(psi.amplitudes());
    assert!(close_vec(engine.amplitudes(), &oracle, 1e-12));

    let mut engine = psi.clone();
    engine.apply_gate(&GateMatrix::cnot(), &[2, 0]).unwrap();
    assert!(close_vec(
        engine.amplitudes(),
        &dense::cnot(3, 2, 0).apply(psi.amplitudes()),
        1e-12
    ));
}

#[test]
fn reduced_density_matches_partial_trace() {
    let psi = state_from(21, 4);
    let keep = [2, 0];
    let engine = psi.reduced_density(&keep).unwrap();
    let oracle = dense::reduced(psi.amplitudes(), 4, &keep);
    for r in 0..4 {
        for c in 0..4 {
            assert!((engine.entry(r, c) - oracle.at(r, c)).norm() < 1e-12);
        }
    }
}

#[test]
fn premeasurement_and_lift_match_dense_unitary() {
    let n = 4;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    let sys = state_from(5, 3);
    amps[..8].copy_from_slice(sys.amplitudes());
    let psi = StateVector::from_amplitudes(amps).unwrap();
    for obs in ["YIII", "XZII", "-ZYXI"] {
        let pm = Premeasurement::new(Observable::from(ps(obs)), 3, "Alice", FactLabel::A1).unwrap();
        let u = dense::premeasure_unitary(&Mat::pauli(obs), n, 3);
        let engine = premeasure(&psi, &pm).unwrap();
        assert!(
            close_vec(engine.amplitudes(), &u.apply(psi.amplitudes()), 1e-12),
            "{obs}"
        );
        for q in ["XIII", "IZII", "YYII"] {
            let lifted = lift(&Observable::from(ps(q)), &pm).unwrap();
            let oracle = u.mul(&Mat::pauli(q)).mul(&u.adjoint());
            let p = lifted.as_pauli_string().expect("single string");
            assert!(
                Mat::pauli(&p.to_string()).distance(&oracle) < 1e-12,
                "lift {q} through {obs}"
            );
        }
    }
}

fn pauli_letter() -> impl Strategy<Value = Pauli> {
    prop_oneof![
        Just(Pauli::I),
        Just(Pauli::X),
        Just(Pauli::Y),
        Just(Pauli::Z)
    ]
}

/// A random system state on `n - 1` qubits with the memory (top qubit) in |0>,
/// plus a non-identity observable on the system.
fn premeasure_case() -> impl Strategy<Value = (StateVector, PauliString, usize)> {
    (2usize..=6).prop_flat_map(|n| {
        let amps = prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << (n - 1));
        let letters = prop::collection::vec(pauli_letter(), n - 1);
        (amps, letters, any::<bool>()).prop_filter_map(
            "needs a state and a non-identity observable",
            move |(amps, letters, neg)| {
                if letters.iter().all(|&p| p == Pauli::I) {
                    return None;
                }
                let mut full: Vec<Complex64> = amps
                    .into_iter()
                    .map(|(r, i)| Complex64::new(r, i))
                    .collect();
                if full.iter().map(|a| a.norm_sqr()).sum::<f64>() < 1e-6 {
                    return None;
                }
                full.resize(1 << n, Complex64::new(0.0, 0.0));
                let state = StateVector::normalized(full).ok()?;
                let factors: Vec<(usize, Pauli)> = letters.into_iter().enumerate().collect();
                let mut p = PauliString::from_factors(n, &factors).ok()?;
                if neg {
                    p = p.negated();
                }
                Some((state, p, n - 1))
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reversal_is_exact((psi, p, m) in premeasure_case()) {
        let pm = Premeasurement::new(Observable::from(p), m, "Alice", FactLabel::A1).unwrap();
        let after = premeasure(&psi, &pm).unwrap();
        prop_assert!((after.norm_sqr() - 1.0).abs() < 1e-10);
        let back = reverse(&after, &pm).unwrap();
        prop_assert!(back.fidelity(&psi).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn record_copies_the_observable((psi, p, m) in premeasure_case()) {
        let pm = Premeasurement::new(Observable::from(p.clone()), m, "Alice", FactLabel::A1).unwrap();
        let after = premeasure(&psi, &pm).unwrap();
        let zm = PauliString::single(p.num_qubits(), m, Pauli::Z).unwrap();
        let (_, unsigned) = p.product(&zm).unwrap();
        let joint = if p.is_negative() { unsigned.negated() } else { unsigned };
        prop_assert!((after.expectation(&joint).unwrap() - 1.0).abs() < 1e-10);
        let before = psi.expectation(&p).unwrap();
        prop_assert!((after.expectation(&zm).unwrap() - before).abs() < 1e-10);
    }

    #[test]
    fn lift_fixes_its_own_observable((_psi, p, m) in premeasure_case()) {
        let o = Observable::from(p.clone());
        let pm = Premeasurement::new(o.clone(), m, "Alice", FactLabel::A1).unwrap();
        let lifted = lift(&o, &pm).unwrap();
        let n = p.num_qubits();
        for j in 0..1usize << n {
            let basis = StateVector::basis(n, j).unwrap();
            let mut a = basis.clone();
            a.apply_operator(&lifted).unwrap();
            let mut b = basis;
            b.apply_operator(&o).unwrap();
            prop_assert!(close_vec(a.amplitudes(), b.amplitudes(), 1e-12));
        }
    }

    #[test]
    fn pauli_strings_are_involutions(letters in prop::collection::vec(pauli_letter(), 1..=8), neg in any::<bool>()) {
        let factors: Vec<(usize, Pauli)> = letters.iter().copied().enumerate().collect();
        let mut p = PauliString::from_factors(letters.len(), &factors).unwrap();
        if neg {
            p = p.negated();
        }
        let (phase, sq) = p.product(&p).unwrap();
        prop_assert!(sq.is_identity());
        prop_assert!((phase - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn born_weights_are_consistent(seed in any::<u64>(), letters in prop::collection::vec(pauli_letter(), 4)) {
        let psi = state_from(seed, 4);
        let factors: Vec<(usize, Pauli)> = letters.iter().copied().enumerate().collect();
        let p = PauliString::from_factors(4, &factors).unwrap();
        let (plus, minus) = psi.branch_probabilities(&p).unwrap();
        let e = psi.expectation(&p).unwrap();
        prop_assert!((plus + minus - 1.0).abs() < 1e-10);
        prop_assert!((plus - (1.0 + e) / 2.0).abs() < 1e-10);
        let out = psi.measure(&p, &mut shot_rng(seed, "born", 0)).unwrap();
        prop_assert!((out.post_state.norm_sqr() - 1.0).abs() < 1e-10);
        prop_assert!((out.post_state.expectation(&p).unwrap() - f64::from(out.value)).abs() < 1e-10);
    }

    #[test]
    fn gates_preserve_norm(seed in any::<u64>(), theta in -6.3f64..6.3, q in 0usize..4, t in 0usize..4) {
        let mut psi = state_from(seed, 4);
        psi.apply_gate(&GateMatrix::rotation([0.3, -0.4, 0.5], theta).unwrap(), &[q]).unwrap();
        if q != t {
            psi.apply_gate(&GateMatrix::cnot(), &[q, t]).unwrap();
        }
        psi.apply_gate(&GateMatrix::hadamard(), &[t]).unwrap();
        prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-10);
    }
}
