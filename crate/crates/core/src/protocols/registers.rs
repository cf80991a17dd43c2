//! Fixed nine-qubit layout shared by every scenario.
//!
//! | qubits | role |
//! |--------|------|
//! | 0, 1, 2 | system `s1..s3` (GHZ) |
//! | 3, 4, 5 | Alice's memory `a1..a3` |
//! | 6, 7, 8 | Bob's memory `b1..b3` |

use crate::quantum::{Observable, Pauli, PauliString};
use crate::wigner::Observer;

pub const NUM_QUBITS: usize = 9;
pub const SYSTEM: [usize; 3] = [0, 1, 2];
pub const ALICE: [usize; 3] = [3, 4, 5];
pub const BOB: [usize; 3] = [6, 7, 8];

/// System qubit of pair `k` (1-based).
pub fn s(k: usize) -> usize {
    SYSTEM[k - 1]
}

pub fn a(k: usize) -> usize {
    ALICE[k - 1]
}

pub fn b(k: usize) -> usize {
    BOB[k - 1]
}

pub fn qubit_name(q: usize) -> String {
    match q {
        0..=2 => format!("s{}", q + 1),
        3..=5 => format!("a{}", q - 2),
        6..=8 => format!("b{}", q - 5),
        _ => format!("q{q}"),
    }
}

pub fn observers() -> Vec<Observer> {
    vec![
        Observer::new("Alice", ALICE.to_vec()),
        Observer::new("Bob", BOB.to_vec()),
    ]
}

pub fn single(q: usize, p: Pauli) -> PauliString {
    PauliString::single(NUM_QUBITS, q, p).expect("qubit in layout")
}

pub fn z(q: usize) -> Observable {
    Observable::from(single(q, Pauli::Z))
}

/// `X(s1) X(a1)`-style rendering with register names; multi-term sums fall
/// back to the dense form.
pub fn describe(o: &Observable) -> String {
    let Some(p) = o.as_pauli_string() else {
        return o.to_string();
    };
    if p.is_identity() {
        return format!("{}I", if p.is_negative() { "-" } else { "" });
    }
    let body: Vec<String> = (0..p.num_qubits())
        .filter(|&q| p.factor(q) != Pauli::I)
        .map(|q| format!("{:?}({})", p.factor(q), qubit_name(q)))
        .collect();
    format!(
        "{}{}",
        if p.is_negative() { "-" } else { "" },
        body.join(" ")
    )
}
