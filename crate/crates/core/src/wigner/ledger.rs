use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::quantum::{Observable, Pauli, PauliString, PauliSum, StateVector};
use crate::wigner::observer::FactLabel;
use crate::wigner::premeasure::{record_observable, Premeasurement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactValue {
    Plus,
    Minus,
    /// A unitary record exists but nobody has read it.
    Unknown,
}

impl FactValue {
    pub fn from_sign(v: i8) -> Self {
        if v >= 0 {
            FactValue::Plus
        } else {
            FactValue::Minus
        }
    }

    pub fn sign(&self) -> Option<i8> {
        match self {
            FactValue::Plus => Some(1),
            FactValue::Minus => Some(-1),
            FactValue::Unknown => None,
        }
    }
}

impl fmt::Display for FactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactValue::Plus => "+1",
            FactValue::Minus => "-1",
            FactValue::Unknown => "unknown",
        })
    }
}

impl Serialize for FactValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactStatus {
    Current,
    /// A later operation that does not commute with the record touched it.
    Disturbed,
    /// The premeasurement that wrote the record was reversed.
    Erased,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageId {
    pub ordinal: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelativeFact {
    pub owner: String,
    pub label: FactLabel,
    pub memory: usize,
    pub value: FactValue,
    pub stage: StageId,
    pub status: FactStatus,
}

/// An operation applied after some facts were recorded.
#[derive(Clone, Copy, Debug)]
pub enum LaterAction<'a> {
    Premeasure(&'a Premeasurement),
    Reverse(&'a Premeasurement),
    /// Projective Z readout of a qubit.
    Readout(usize),
}

impl LaterAction<'_> {
    /// Pauli expansion of the operator that generates the action.
    fn generator(&self, num_qubits: usize) -> PauliSum {
        match self {
            LaterAction::Premeasure(pm) | LaterAction::Reverse(pm) => pm.unitary(),
            LaterAction::Readout(q) => PauliSum::from(
                PauliString::single(num_qubits, *q, Pauli::Z).expect("qubit in range"),
            ),
        }
    }
}

/// Per-observer, per-stage history of relative facts, in recording order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Ledger {
    facts: Vec<RelativeFact>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn facts(&self) -> &[RelativeFact] {
        &self.facts
    }

    pub fn push(&mut self, fact: RelativeFact) {
        self.facts.push(fact);
    }

    /// Most recent entry for `label`.
    pub fn latest(&self, label: FactLabel) -> Option<&RelativeFact> {
        self.facts.iter().rev().find(|f| f.label == label)
    }

    pub fn status(&self, label: FactLabel) -> Option<FactStatus> {
        self.latest(label).map(|f| f.status)
    }

    /// Labels whose latest entry is a current record, in label order.
    pub fn coexisting(&self) -> Vec<FactLabel> {
        FactLabel::ALL
            .into_iter()
            .filter(|&l| self.status(l) == Some(FactStatus::Current))
            .collect()
    }

    /// Stores the value obtained by a projective readout.
    ///
    /// An unread current record takes the value in place. A record that
    /// already holds a value is never overwritten; the readout is appended as
    /// a new entry instead.
    pub fn record_readout(&mut self, fact: RelativeFact) {
        let slot = self.facts.iter_mut().rev().find(|f| {
            f.label == fact.label
                && f.memory == fact.memory
                && f.status == FactStatus::Current
                && f.value == FactValue::Unknown
        });
        match slot {
            Some(f) => f.value = fact.value,
            None => self.facts.push(fact),
        }
    }
}

/// Updates statuses after `action`.
///
/// A current fact becomes `erased` when `action` reverses the premeasurement
/// that wrote it, and `disturbed` when its record observable fails to commute
/// with the action's generator.
pub fn mark_disturbed(
    ledger: &mut Ledger,
    action: LaterAction<'_>,
    num_qubits: usize,
) -> Result<()> {
    let generator = action.generator(num_qubits);
    for fact in ledger
        .facts
        .iter_mut()
        .filter(|f| f.status == FactStatus::Current)
    {
        if let LaterAction::Reverse(pm) = action {
            if pm.memory() == fact.memory && pm.label() == fact.label {
                fact.status = FactStatus::Erased;
                continue;
            }
        }
        let record = PauliSum::from(
            PauliString::single(num_qubits, fact.memory, Pauli::Z).expect("qubit in range"),
        );
        if !record.commutator(&generator)?.is_empty() {
            fact.status = FactStatus::Disturbed;
        }
    }
    Ok(())
}

/// Projective Z readout of the record written by `pm`.
pub fn readout<R: Rng + ?Sized>(
    state: &StateVector,
    pm: &Premeasurement,
    stage: StageId,
    rng: &mut R,
) -> Result<(RelativeFact, StateVector)> {
    let record = Observable::from(record_observable(pm));
    let out = state.measure(&record, rng)?;
    let fact = RelativeFact {
        owner: pm.owner().to_string(),
        label: pm.label(),
        memory: pm.memory(),
        value: FactValue::from_sign(out.value),
        stage,
        status: FactStatus::Current,
    };
    Ok((fact, out.post_state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::GateMatrix;
    use crate::seed::shot_rng;
    use crate::wigner::premeasure::premeasure;

    fn stage(n: usize) -> StageId {
        StageId {
            ordinal: n,
            label: format!("s{n}"),
        }
    }

    fn plus_then_record() -> (StateVector, Premeasurement) {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_gate(&GateMatrix::hadamard(), &[0]).unwrap();
        let pm = Premeasurement::new(
            "ZI".parse::<PauliString>().unwrap(),
            1,
            "Alice",
            FactLabel::A1,
        )
        .unwrap();
        (premeasure(&s, &pm).unwrap(), pm)
    }

    #[test]
    fn readout_of_maximally_mixed_record() {
        let (s, pm) = plus_then_record();
        let mut counts = [0; 2];
        for shot in 0..200 {
            let (fact, _) = readout(&s, &pm, stage(1), &mut shot_rng(9, "readout", shot)).unwrap();
            counts[usize::from(fact.value == FactValue::Plus)] += 1;
        }
        assert!(counts[0] > 60 && counts[1] > 60, "{counts:?}");
    }

    #[test]
    fn repeated_readout_is_repeatable() {
        let (s, pm) = plus_then_record();
        for shot in 0..20 {
            let mut rng = shot_rng(5, "repeat", shot);
            let (first, post) = readout(&s, &pm, stage(1), &mut rng).unwrap();
            let (second, _) = readout(&post, &pm, stage(1), &mut rng).unwrap();
            assert_eq!(first.value, second.value);
        }
    }

    #[test]
    fn ledger_fills_unknown_value_once() {
        let (s, pm) = plus_then_record();
        let mut ledger = Ledger::new();
        ledger.push(RelativeFact {
            owner: "Alice".into(),
            label: FactLabel::A1,
            memory: 1,
            value: FactValue::Unknown,
            stage: stage(1),
            status: FactStatus::Current,
        });
        let mut rng = shot_rng(1, "ledger", 0);
        let (fact, post) = readout(&s, &pm, stage(2), &mut rng).unwrap();
        ledger.record_readout(fact.clone());
        assert_eq!(ledger.facts().len(), 1);
        assert_eq!(ledger.facts()[0].value, fact.value);
        assert_eq!(ledger.facts()[0].stage, stage(1));
        let (again, _) = readout(&post, &pm, stage(3), &mut rng).unwrap();
        ledger.record_readout(again);
        assert_eq!(ledger.facts().len(), 2);
        assert_eq!(ledger.facts()[0].value, fact.value);
    }

    #[test]
    fn reversal_erases_and_disjoint_action_keeps() {
        let pm1 = Premeasurement::new(
            "ZII".parse::<PauliString>().unwrap(),
            1,
            "Alice",
            FactLabel::A1,
        )
        .unwrap();
        let mut ledger = Ledger::new();
        ledger.push(RelativeFact {
            owner: "Alice".into(),
            label: FactLabel::A1,
            memory: 1,
            value: FactValue::Unknown,
            stage: stage(1),
            status: FactStatus::Current,
        });
        mark_disturbed(&mut ledger, LaterAction::Readout(2), 3).unwrap();
        assert_eq!(ledger.status(FactLabel::A1), Some(FactStatus::Current));
        mark_disturbed(&mut ledger, LaterAction::Reverse(&pm1), 3).unwrap();
        assert_eq!(ledger.status(FactLabel::A1), Some(FactStatus::Erased));
        assert!(ledger.coexisting().is_empty());
    }
}
