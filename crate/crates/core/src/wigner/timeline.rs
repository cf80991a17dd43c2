use rand::Rng;

use crate::error::Result;
use crate::quantum::StateVector;
use crate::wigner::ledger::{
    mark_disturbed, readout, FactStatus, FactValue, LaterAction, Ledger, RelativeFact, StageId,
};
use crate::wigner::premeasure::{premeasure, reverse, Premeasurement};

/// Frozen copy of the state and ledger at the end of a stage.
#[derive(Clone, Debug, PartialEq)]
pub struct StageSnapshot {
    id: StageId,
    state: StateVector,
    ledger: Vec<RelativeFact>,
}

impl StageSnapshot {
    pub fn id(&self) -> &StageId {
        &self.id
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn ledger(&self) -> &[RelativeFact] {
        &self.ledger
    }
}

/// One sequential run: the evolving state, its ledger and the stage history.
///
/// Operations accumulate into the pending stage until [`Timeline::commit_stage`]
/// freezes a snapshot. Stage 0 is the initial state.
#[derive(Clone, Debug)]
pub struct Timeline {
    state: StateVector,
    ledger: Ledger,
    snapshots: Vec<StageSnapshot>,
    pending_label: Option<String>,
}

impl Timeline {
    pub fn new(initial: StateVector, label: impl Into<String>) -> Self {
        let mut t = Timeline {
            state: initial,
            ledger: Ledger::new(),
            snapshots: Vec::new(),
            pending_label: None,
        };
        t.freeze(label.into());
        t
    }

    fn freeze(&mut self, label: String) {
        let id = StageId {
            ordinal: self.snapshots.len(),
            label,
        };
        self.snapshots.push(StageSnapshot {
            id,
            state: self.state.clone(),
            ledger: self.ledger.facts().to_vec(),
        });
    }

    fn pending_stage(&self) -> StageId {
        StageId {
            ordinal: self.snapshots.len(),
            label: self.pending_label.clone().unwrap_or_default(),
        }
    }

    /// Names the stage that the next operations belong to.
    pub fn begin_stage(&mut self, label: impl Into<String>) {
        self.pending_label = Some(label.into());
    }

    pub fn commit_stage(&mut self) -> &StageSnapshot {
        let label = self
            .pending_label
            .take()
            .unwrap_or_else(|| format!("stage {}", self.snapshots.len()));
        self.freeze(label);
        self.snapshots.last().expect("just pushed")
    }

    pub fn premeasure(&mut self, pm: &Premeasurement) -> Result<()> {
        let next = premeasure(&self.state, pm)?;
        mark_disturbed(
            &mut self.ledger,
            LaterAction::Premeasure(pm),
            self.state.num_qubits(),
        )?;
        self.state = next;
        let stage = self.pending_stage();
        self.ledger.push(RelativeFact {
            owner: pm.owner().to_string(),
            label: pm.label(),
            memory: pm.memory(),
            value: FactValue::Unknown,
            stage,
            status: FactStatus::Current,
        });
        Ok(())
    }

    pub fn reverse(&mut self, pm: &Premeasurement) -> Result<()> {
        let next = reverse(&self.state, pm)?;
        mark_disturbed(
            &mut self.ledger,
            LaterAction::Reverse(pm),
            self.state.num_qubits(),
        )?;
        self.state = next;
        Ok(())
    }

    /// Projective readout of `pm`'s record; collapses the state.
    pub fn readout<R: Rng + ?Sized>(
        &mut self,
        pm: &Premeasurement,
        rng: &mut R,
    ) -> Result<RelativeFact> {
        let (fact, post) = readout(&self.state, pm, self.pending_stage(), rng)?;
        mark_disturbed(
            &mut self.ledger,
            LaterAction::Readout(pm.memory()),
            self.state.num_qubits(),
        )?;
        self.state = post;
        self.ledger.record_readout(fact.clone());
        Ok(fact)
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn ledger(&self) -> &Ledger {
        &self.ledger
    }

    pub fn snapshots(&self) -> &[StageSnapshot] {
        &self.snapshots
    }

    pub fn snapshot(&self, ordinal: usize) -> Option<&StageSnapshot> {
        self.snapshots.get(ordinal)
    }
}
