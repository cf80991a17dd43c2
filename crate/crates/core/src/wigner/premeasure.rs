use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{Measurable, Observable, Pauli, PauliString, PauliSum, StateVector};
use crate::wigner::observer::FactLabel;

/// Record-writing interaction: the eigenvalue of `observable` is copied into
/// the `memory` qubit by the controlled flip
/// `U = P+ (x) I_mem + P- (x) X_mem`, with `P± = (I ± O)/2`.
///
/// A record `+1` (memory `|0>`, Z = +1) corresponds to eigenvalue `+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Premeasurement {
    observable: Observable,
    memory: usize,
    owner: String,
    label: FactLabel,
}

impl Premeasurement {
    pub fn new(
        observable: impl Into<Observable>,
        memory: usize,
        owner: impl Into<String>,
        label: FactLabel,
    ) -> Result<Self> {
        let observable = observable.into();
        let n = observable.num_qubits();
        if memory >= n {
            return Err(Error::argument(format!(
                "memory qubit {memory} out of range for {n} qubits"
            )));
        }
        if observable.support() >> memory & 1 == 1 {
            return Err(Error::argument(format!(
                "memory qubit {memory} lies in the support of {observable}"
            )));
        }
        Ok(Premeasurement {
            observable,
            memory,
            owner: owner.into(),
            label,
        })
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn owner(&self) -> &str {
        &self.owner
    }

    pub fn label(&self) -> FactLabel {
        self.label
    }

    pub fn num_qubits(&self) -> usize {
        self.observable.num_qubits()
    }

    fn memory_x(&self) -> PauliString {
        PauliString::single(self.num_qubits(), self.memory, Pauli::X).expect("memory in range")
    }

    /// Pauli expansion of the premeasurement unitary,
    /// `U = (I + O + X_m - O X_m) / 2`. `U` is Hermitian, hence self-inverse.
    pub fn unitary(&self) -> PauliSum {
        let n = self.num_qubits();
        let o = self.observable.as_sum();
        let xm = PauliSum::from(self.memory_x());
        let oxm = o.mul(&xm).expect("same size");
        PauliSum::identity(n)
            .expect("valid size")
            .add(o)
            .and_then(|s| s.add(&xm))
            .and_then(|s| s.add(&oxm.scale(Complex64::new(-1.0, 0.0))))
            .expect("same size")
            .scale(Complex64::new(0.5, 0.0))
    }

    /// Applies `U` without any precondition on the memory.
    fn apply_unitary(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_qubits() != self.num_qubits() {
            return Err(Error::argument(format!(
                "premeasurement over {} qubits applied to a {}-qubit state",
                self.num_qubits(),
                state.num_qubits()
            )));
        }
        let psi = state.amplitudes();
        let o_psi = self.observable.act(psi);
        let flip = 1usize << self.memory;
        let out = (0..psi.len())
            .map(|i| {
                let plus = (psi[i] + o_psi[i]) * 0.5;
                let minus = (psi[i ^ flip] - o_psi[i ^ flip]) * 0.5;
                plus + minus
            })
            .collect();
        StateVector::from_amplitudes(out)
    }
}

/// Entangles the memory with the observable. The memory must be in `|0>`.
pub fn premeasure(state: &StateVector, pm: &Premeasurement) -> Result<StateVector> {
    if state.num_qubits() == pm.num_qubits() && !state.qubit_is_zero(pm.memory)? {
        return Err(Error::Protocol(format!(
            "memory qubit {} of {} is not in |0>",
            pm.memory, pm.owner
        )));
    }
    pm.apply_unitary(state)
}

/// Undoes a premeasurement by applying the same (self-inverse) unitary.
///
/// Only an uncollapsed record can be undone this way: if the memory was read
/// projectively in between, the result differs from the pre-interaction state.
pub fn reverse(state: &StateVector, pm: &Premeasurement) -> Result<StateVector> {
    pm.apply_unitary(state)
}

/// Z on the memory qubit: the operator whose value is the stored outcome.
pub fn record_observable(pm: &Premeasurement) -> PauliString {
    PauliString::single(pm.num_qubits(), pm.memory, Pauli::Z).expect("memory in range")
}

/// `U Q U†` for an arbitrary ±1 observable `Q`.
pub fn conjugate(q: &Observable, pm: &Premeasurement) -> Result<Observable> {
    if q.num_qubits() != pm.num_qubits() {
        return Err(Error::argument(
            "observable and premeasurement differ in size",
        ));
    }
    let u = pm.unitary();
    Observable::new(u.mul(q.as_sum())?.mul(&u)?)
}

/// Addresses a pre-interaction system observable after `pm` has entangled the
/// memory: returns `U O U†`, supported on the system qubits plus the memory.
pub fn lift(o: &Observable, pm: &Premeasurement) -> Result<Observable> {
    if o.support() >> pm.memory & 1 == 1 {
        return Err(Error::argument(format!(
            "{o} acts on memory qubit {}; lift expects a system observable",
            pm.memory
        )));
    }
    conjugate(o, pm)
}
