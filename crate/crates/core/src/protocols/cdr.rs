use serde::Serialize;

use crate::error::{Error, Result};
use crate::protocols::certify::{certify_constraint, ConstraintKind, Sampling};
use crate::protocols::config::{BobMode, ScenarioConfig};
use crate::protocols::registers::{b, s, single, ALICE, SYSTEM};
use crate::protocols::scenario::{
    alice_stage, ghz_reference, record_spec, ScenarioReport, StageSummary,
};
use crate::protocols::tally::{tally_records, TallyReport, TallySpec};
use crate::quantum::{Pauli, StateVector, ALGEBRA_TOL};
use crate::wigner::{FactLabel, Premeasurement};

/// All four experiments, each from a fresh GHZ state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CdrSummary {
    pub experiments: Vec<ScenarioReport>,
    pub max_coexisting: usize,
    pub never_six: bool,
    pub passed: bool,
}

/// Pairs whose Alice interaction Bob undoes in experiment `m`.
fn reversed_pairs(m: u8) -> Vec<usize> {
    if m == 1 {
        vec![1, 2, 3]
    } else {
        vec![usize::from(m) - 1]
    }
}

fn bob_direct(k: usize) -> Result<Premeasurement> {
    Premeasurement::new(single(s(k), Pauli::X), b(k), "Bob", FactLabel::bob(k))
}

/// Six-qubit reference for `S (x) A` after full restoration: GHZ on the
/// system, Alice's memories back in `|000>`.
fn restored_reference(config: &ScenarioConfig) -> Result<StateVector> {
    let full = ghz_reference(config.ghz_sign)?;
    let amps = full.amplitudes()[..1 << 6].to_vec();
    StateVector::from_amplitudes(amps)
}

/// Experiment `m`: Bob reverses Alice's premeasurement on the pairs in the
/// B-position of constraint `m`, then premeasures `X(s_k)` into `b_k`.
pub fn run_cdr(config: &ScenarioConfig) -> Result<ScenarioReport> {
    let m = match (config.bob_mode, config.experiment_id) {
        (BobMode::CdrReversal, Some(m)) => m,
        _ => {
            return Err(Error::Usage(
                "run_cdr needs bob_mode cdr-reversal and an experiment id".into(),
            ))
        }
    };
    config.validate()?;
    let mut report = ScenarioReport::empty("cdr", config);
    let stage = alice_stage(config, [1, 2, 3])?;
    let mut timeline = stage.timeline;
    let alice = stage.alice;
    let pairs = reversed_pairs(m);

    let names = |ks: &[usize]| {
        ks.iter()
            .map(|k| format!("{k}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    timeline.begin_stage(format!(
        "Bob reverses Alice's premeasurement on pair {}",
        names(&pairs)
    ));
    for &k in &pairs {
        timeline.reverse(&alice[k - 1])?;
    }
    timeline.commit_stage();

    if m == 1 {
        let subset: Vec<usize> = SYSTEM.iter().chain(ALICE.iter()).copied().collect();
        let rho = timeline.state().reduced_density(&subset)?;
        let fidelity = rho.fidelity_with_pure(&restored_reference(config)?)?;
        report.restoration_fidelity = Some(fidelity);
        report.restoration_certified = Some(fidelity >= 1.0 - ALGEBRA_TOL);
    }

    timeline.begin_stage(format!(
        "Bob premeasures X(s_k) into b_k for pair {}",
        names(&pairs)
    ));
    for &k in &pairs {
        timeline.premeasure(&bob_direct(k)?)?;
    }
    timeline.commit_stage();

    let stage_label = timeline
        .snapshots()
        .last()
        .expect("stage recorded")
        .id()
        .label
        .clone();
    let spec = record_spec(m);
    let stream = format!("cdr/{m}/record");
    report.record_certifications.push(certify_constraint(
        timeline.state(),
        &spec,
        ConstraintKind::Record,
        &stage_label,
        config.tolerance,
        (config.shots > 0).then_some(Sampling {
            shots: config.shots,
            master_seed: config.master_seed,
            stream: &stream,
        }),
    )?);

    if config.shots > 0 {
        let records: Vec<(FactLabel, usize)> = spec
            .observables
            .iter()
            .zip(spec.relation.split('*'))
            .map(|(o, label)| {
                let fact = FactLabel::ALL
                    .into_iter()
                    .find(|l| l.to_string() == label)
                    .expect("relation uses fact labels");
                let qubit = o.observable.support().trailing_zeros() as usize;
                (fact, qubit)
            })
            .collect();
        let group = tally_records(
            timeline.state(),
            TallySpec {
                name: &spec.relation,
                stage: &stage_label,
                records: &records,
                expected_product: Some(spec.expected),
            },
            config.shots,
            config.master_seed,
            &format!("cdr/{m}/tally"),
        )?;
        report.tally = Some(TallyReport::new(
            config.master_seed,
            config.shots,
            vec![group],
        ));
    }

    report.coexisting_records = timeline.ledger().coexisting();
    report.ledger = timeline.ledger().facts().to_vec();
    report.stages = timeline
        .snapshots()
        .iter()
        .map(StageSummary::from)
        .collect();
    Ok(report)
}

pub fn run_cdr_all(config: &ScenarioConfig) -> Result<CdrSummary> {
    let experiments = (1..=4u8)
        .map(|m| {
            run_cdr(&ScenarioConfig {
                experiment_id: Some(m),
                bob_mode: BobMode::CdrReversal,
                ..config.clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_coexisting = experiments
        .iter()
        .map(|r| r.coexisting_records.len())
        .max()
        .unwrap_or(0);
    let never_six = max_coexisting < 6;
    let passed = never_six && experiments.iter().all(ScenarioReport::passed);
    Ok(CdrSummary {
        experiments,
        max_coexisting,
        never_six,
        passed,
    })
}
