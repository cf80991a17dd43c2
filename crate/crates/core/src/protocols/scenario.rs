use serde::Serialize;

use crate::error::Result;
use crate::protocols::certify::{ConstraintResult, ConstraintSpec, NamedObservable};
use crate::protocols::config::{GhzSign, ScenarioConfig};
use crate::protocols::cpl::CplReport;
use crate::protocols::registers::{self, a, observers, s, single, NUM_QUBITS, SYSTEM};
use crate::protocols::tally::TallyReport;
use crate::quantum::{GateMatrix, Observable, StateVector};
use crate::wigner::{
    check_disjoint, FactLabel, FactStatus, Premeasurement, RelativeFact, StageSnapshot, Timeline,
};

/// Amplitudes below this magnitude are omitted from stage summaries.
const AMPLITUDE_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmplitudeEntry {
    pub index: usize,
    pub amplitude: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageSummary {
    pub ordinal: usize,
    pub label: String,
    pub norm: f64,
    pub nonzero_amplitudes: Vec<AmplitudeEntry>,
    pub facts: Vec<RelativeFact>,
}

impl From<&StageSnapshot> for StageSummary {
    fn from(snap: &StageSnapshot) -> Self {
        let nonzero_amplitudes = snap
            .state()
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, amp)| amp.norm() > AMPLITUDE_FLOOR)
            .map(|(index, amp)| AmplitudeEntry {
                index,
                amplitude: [amp.re, amp.im],
            })
            .collect();
        StageSummary {
            ordinal: snap.id().ordinal,
            label: snap.id().label.clone(),
            norm: snap.state().norm_sqr(),
            nonzero_amplitudes,
            facts: snap.ledger().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutationEntry {
    pub first: String,
    pub second: String,
    pub commute: bool,
    /// Frobenius norm of the commutator over the full register.
    pub commutator_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutationTable {
    /// The four constraint products, pairwise.
    pub products: Vec<CommutationEntry>,
    /// `B_k` against `A_k`; these must anticommute.
    pub complementary: Vec<CommutationEntry>,
    pub alice_interactions_commute: bool,
    pub bob_interactions_commute: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisturbedDiagnostic {
    pub relation: String,
    pub observables: Vec<String>,
    pub stage: String,
    pub expectation: f64,
    pub undisturbed_value: i8,
    pub record_statuses: Vec<(FactLabel, FactStatus)>,
    /// Deviation from the undisturbed value exceeds 0.5 and every listed
    /// record is marked disturbed.
    pub shown: bool,
}

/// Minimum deviation for a record correlation to count as destroyed.
pub const DISTURBANCE_MIN_DEVIATION: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenvalueEntry {
    pub relation: String,
    pub expected: i8,
    pub expectation: f64,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub config: ScenarioConfig,
    pub qubits: Vec<(String, usize)>,
    pub stages: Vec<StageSummary>,
    pub ledger: Vec<RelativeFact>,
    pub constraints: Vec<ConstraintResult>,
    pub record_certifications: Vec<ConstraintResult>,
    pub commutation: Option<CommutationTable>,
    pub restoration_fidelity: Option<f64>,
    pub restoration_certified: Option<bool>,
    pub disturbed: Vec<DisturbedDiagnostic>,
    /// Eigenvalues of the four constraint products, carried to the final state.
    pub final_certificate: Vec<EigenvalueEntry>,
    pub coexisting_records: Vec<FactLabel>,
    pub cpl: Vec<CplReport>,
    pub tally: Option<TallyReport>,
    pub notes: Vec<String>,
}

impl ScenarioReport {
    pub(crate) fn empty(scenario: &str, config: &ScenarioConfig) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            config: config.clone(),
            qubits: (0..NUM_QUBITS)
                .map(|q| (registers::qubit_name(q), q))
                .collect(),
            stages: Vec::new(),
            ledger: Vec::new(),
            constraints: Vec::new(),
            record_certifications: Vec::new(),
            commutation: None,
            restoration_fidelity: None,
            restoration_certified: None,
            disturbed: Vec::new(),
            final_certificate: Vec::new(),
            coexisting_records: Vec::new(),
            cpl: Vec::new(),
            tally: None,
            notes: Vec::new(),
        }
    }

    /// Every certification, check and demonstration in the report succeeded.
    pub fn passed(&self) -> bool {
        self.constraints.iter().all(|c| c.certified)
            && self.record_certifications.iter().all(|c| c.certified)
            && self.commutation.as_ref().is_none_or(|t| t.consistent)
            && self.restoration_certified.unwrap_or(true)
            && self.disturbed.iter().all(|d| d.shown)
            && self.final_certificate.iter().all(|e| e.certified)
            && self.cpl.iter().all(|c| c.demonstrated)
            && self.tally.as_ref().is_none_or(|t| t.consistent)
            && (self.scenario != "cdr" || self.coexisting_records.len() == 3)
    }
}

/// The state after GHZ preparation and Alice's three premeasurements.
pub(crate) struct AliceStage {
    pub timeline: Timeline,
    pub alice: [Premeasurement; 3],
}

pub(crate) fn ghz_reference(sign: GhzSign) -> Result<StateVector> {
    let mut state = StateVector::zero(NUM_QUBITS)?;
    state.prepare_ghz(SYSTEM)?;
    if sign == GhzSign::Minus {
        state.apply_gate(&GateMatrix::pauli_z(), &[SYSTEM[0]])?;
    }
    Ok(state)
}

pub(crate) fn alice_premeasurements(config: &ScenarioConfig) -> Result<[Premeasurement; 3]> {
    let pm = |k: usize| {
        Premeasurement::new(
            single(s(k), config.alice_basis[k - 1]),
            a(k),
            "Alice",
            FactLabel::alice(k),
        )
    };
    Ok([pm(1)?, pm(2)?, pm(3)?])
}

pub(crate) fn alice_stage(config: &ScenarioConfig, order: [usize; 3]) -> Result<AliceStage> {
    config.validate()?;
    check_disjoint(&SYSTEM, &observers())?;
    let mut timeline = Timeline::new(ghz_reference(config.ghz_sign)?, "GHZ prepared on s1,s2,s3");
    let alice = alice_premeasurements(config)?;
    timeline.begin_stage("Alice premeasures s1,s2,s3 into a1,a2,a3");
    for k in order {
        timeline.premeasure(&alice[k - 1])?;
    }
    timeline.commit_stage();
    Ok(AliceStage { timeline, alice })
}

/// Constraint `m` over per-pair observables: pair `m-1` takes Bob's
/// observable, the others Alice's; constraint 1 takes Bob's on every pair.
pub(crate) fn constraint_spec(
    m: u8,
    alice_obs: &dyn Fn(usize) -> NamedObservable,
    bob_obs: &dyn Fn(usize) -> NamedObservable,
) -> ConstraintSpec {
    let bob_pair = |k: usize| m == 1 || usize::from(m) - 1 == k;
    let observables = [1, 2, 3].map(|k| {
        if bob_pair(k) {
            bob_obs(k)
        } else {
            alice_obs(k)
        }
    });
    let relation = [1, 2, 3]
        .map(|k| {
            if bob_pair(k) {
                FactLabel::bob(k)
            } else {
                FactLabel::alice(k)
            }
            .to_string()
        })
        .join("*");
    ConstraintSpec {
        id: m,
        relation,
        observables,
        expected: if m == 1 { 1 } else { -1 },
    }
}

/// The record observables `Z(a_k)` or `Z(b_k)` of a constraint.
pub(crate) fn record_spec(m: u8) -> ConstraintSpec {
    constraint_spec(
        m,
        &|k| NamedObservable::new(format!("Z(a{k})"), registers::z(registers::a(k))),
        &|k| NamedObservable::new(format!("Z(b{k})"), registers::z(registers::b(k))),
    )
}

pub(crate) fn product_of(spec: &ConstraintSpec) -> Result<Observable> {
    let o = &spec.observables;
    o[0].observable
        .product(&o[1].observable)?
        .product(&o[2].observable)
}
