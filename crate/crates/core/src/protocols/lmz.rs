use crate::error::{Error, Result};
use crate::protocols::certify::{certify_constraint, ConstraintKind, NamedObservable, Sampling};
use crate::protocols::config::{BobMode, ScenarioConfig};
use crate::protocols::cpl::cpl_check;
use crate::protocols::registers::{a, b, describe, s, single, z, NUM_QUBITS};
use crate::protocols::scenario::{
    alice_stage, constraint_spec, product_of, record_spec, CommutationEntry, CommutationTable,
    DisturbedDiagnostic, EigenvalueEntry, ScenarioReport, StageSummary, DISTURBANCE_MIN_DEVIATION,
};
use crate::protocols::tally::{tally_records, TallyReport, TallySpec};
use crate::quantum::{dense_commutator_norm, Observable, Pauli, StateVector, PHYSICS_TOL};
use crate::wigner::{conjugate, lift, FactLabel, FactStatus, Premeasurement, Timeline};

/// Alice's observables `Â_k = Z(a_k)` and Bob's lifted `B̂_k` for k = 1..3.
pub struct LmzObservables {
    pub alice: [Observable; 3],
    pub bob: [Observable; 3],
}

impl LmzObservables {
    fn named_alice(&self, k: usize) -> NamedObservable {
        NamedObservable::new(format!("A{k}"), self.alice[k - 1].clone())
    }

    fn named_bob(&self, k: usize) -> NamedObservable {
        NamedObservable::new(format!("B{k}"), self.bob[k - 1].clone())
    }
}

pub fn lmz_observables(alice_pms: &[Premeasurement; 3]) -> Result<LmzObservables> {
    let bob = [1, 2, 3].map(|k| lift(&Observable::from(single(s(k), Pauli::X)), &alice_pms[k - 1]));
    let [b1, b2, b3] = bob;
    Ok(LmzObservables {
        alice: [1, 2, 3].map(|k| z(a(k))),
        bob: [b1?, b2?, b3?],
    })
}

fn bob_premeasurements(obs: &LmzObservables) -> Result<[Premeasurement; 3]> {
    let pm = |k: usize| Premeasurement::new(obs.bob[k - 1].clone(), b(k), "Bob", FactLabel::bob(k));
    Ok([pm(1)?, pm(2)?, pm(3)?])
}

/// Final state after Alice's and Bob's premeasurements in the given orders
/// (1-based pair indices).
pub fn lmz_final_state(
    config: &ScenarioConfig,
    alice_order: [usize; 3],
    bob_order: [usize; 3],
) -> Result<StateVector> {
    let mut stage = alice_stage(config, alice_order)?;
    let obs = lmz_observables(&stage.alice)?;
    let bob = bob_premeasurements(&obs)?;
    for k in bob_order {
        stage.timeline.premeasure(&bob[k - 1])?;
    }
    Ok(stage.timeline.state().clone())
}

fn commutation_table(
    obs: &LmzObservables,
    alice: &[Premeasurement; 3],
    bob: &[Premeasurement; 3],
) -> Result<CommutationTable> {
    let specs: Vec<_> = (1..=4)
        .map(|m| constraint_spec(m, &|k| obs.named_alice(k), &|k| obs.named_bob(k)))
        .collect();
    let products = specs.iter().map(product_of).collect::<Result<Vec<_>>>()?;
    let mut product_entries = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let norm = dense_commutator_norm(&products[i], &products[j])?;
            product_entries.push(CommutationEntry {
                first: specs[i].relation.clone(),
                second: specs[j].relation.clone(),
                commute: products[i].commutes(&products[j])?,
                commutator_norm: norm,
            });
        }
    }
    let complementary = (1..=3)
        .map(|k| {
            Ok(CommutationEntry {
                first: format!("B{k}"),
                second: format!("A{k}"),
                commute: obs.bob[k - 1].commutes(&obs.alice[k - 1])?,
                commutator_norm: dense_commutator_norm(&obs.bob[k - 1], &obs.alice[k - 1])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairwise = |pms: &[Premeasurement; 3]| -> Result<bool> {
        for i in 0..3 {
            for j in i + 1..3 {
                if !pms[i].unitary().commutator(&pms[j].unitary())?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let alice_ok = pairwise(alice)?;
    let bob_ok = pairwise(bob)?;
    let consistent = product_entries
        .iter()
        .all(|e| e.commute && e.commutator_norm < PHYSICS_TOL)
        && complementary.iter().all(|e| !e.commute)
        && alice_ok
        && bob_ok;
    Ok(CommutationTable {
        products: product_entries,
        complementary,
        alice_interactions_commute: alice_ok,
        bob_interactions_commute: bob_ok,
        consistent,
    })
}

fn sampling<'a>(config: &ScenarioConfig, stream: &'a str) -> Option<Sampling<'a>> {
    (config.shots > 0).then_some(Sampling {
        shots: config.shots,
        master_seed: config.master_seed,
        stream,
    })
}

fn stage_state(timeline: &Timeline, ordinal: usize) -> &StateVector {
    timeline.snapshot(ordinal).expect("stage recorded").state()
}

fn stage_label(timeline: &Timeline, ordinal: usize) -> String {
    timeline
        .snapshot(ordinal)
        .expect("stage recorded")
        .id()
        .label
        .clone()
}

/// Single-experiment scenario: Alice premeasures `Y(s_k)` into `a_k`, then
/// Bob premeasures the lifted `B̂_k` into `b_k`, one stage per observable.
pub fn run_lmz(config: &ScenarioConfig) -> Result<ScenarioReport> {
    if config.bob_mode != BobMode::LmzLifted {
        return Err(Error::Usage("run_lmz needs bob_mode lmz-lifted".into()));
    }
    let mut report = ScenarioReport::empty("lmz", config);
    let stage = alice_stage(config, [1, 2, 3])?;
    let mut timeline = stage.timeline;
    let alice = stage.alice;
    let obs = lmz_observables(&alice)?;
    let bob = bob_premeasurements(&obs)?;

    let stage1 = stage_state(&timeline, 1).clone();
    let stage1_label = stage_label(&timeline, 1);
    for m in 1..=4u8 {
        let spec = constraint_spec(m, &|k| obs.named_alice(k), &|k| obs.named_bob(k));
        let stream = format!("lmz/operator/{m}");
        report.constraints.push(certify_constraint(
            &stage1,
            &spec,
            ConstraintKind::Operator,
            &stage1_label,
            config.tolerance,
            sampling(config, &stream),
        )?);
    }
    report.commutation = Some(commutation_table(&obs, &alice, &bob)?);

    for (k, pm) in bob.iter().enumerate() {
        timeline.begin_stage(format!(
            "Bob premeasures B{} = {} into b{}",
            k + 1,
            describe(pm.observable()),
            k + 1
        ));
        timeline.premeasure(pm)?;
        timeline.commit_stage();
    }
    let final_ordinal = timeline.snapshots().len() - 1;

    let stage2_label = stage_label(&timeline, 2);
    report.record_certifications.push(certify_constraint(
        stage_state(&timeline, 2),
        &record_spec(2),
        ConstraintKind::Record,
        &stage2_label,
        config.tolerance,
        sampling(config, "lmz/record/2"),
    )?);
    let final_label = stage_label(&timeline, final_ordinal);
    report.record_certifications.push(certify_constraint(
        timeline.state(),
        &record_spec(1),
        ConstraintKind::Record,
        &final_label,
        config.tolerance,
        sampling(config, "lmz/record/1"),
    )?);

    let disturbed_spec = record_spec(2);
    let disturbed_value = timeline
        .state()
        .expectation(&product_of(&disturbed_spec)?)?;
    let statuses: Vec<(FactLabel, FactStatus)> = [FactLabel::A2, FactLabel::A3]
        .into_iter()
        .filter_map(|l| timeline.ledger().status(l).map(|st| (l, st)))
        .collect();
    let shown = (disturbed_value - f64::from(disturbed_spec.expected)).abs()
        > DISTURBANCE_MIN_DEVIATION
        && statuses.len() == 2
        && statuses.iter().all(|(_, st)| *st == FactStatus::Disturbed);
    report.disturbed.push(DisturbedDiagnostic {
        relation: disturbed_spec.relation.clone(),
        observables: disturbed_spec
            .observables
            .iter()
            .map(|o| o.name.clone())
            .collect(),
        stage: final_label.clone(),
        expectation: disturbed_value,
        undisturbed_value: disturbed_spec.expected,
        record_statuses: statuses,
        shown,
    });

    for m in 1..=4u8 {
        let spec = constraint_spec(m, &|k| obs.named_alice(k), &|k| obs.named_bob(k));
        let mut carried = product_of(&spec)?;
        for pm in &bob {
            carried = conjugate(&carried, pm)?;
        }
        let value = timeline.state().expectation(&carried)?;
        report.final_certificate.push(EigenvalueEntry {
            relation: spec.relation,
            expected: spec.expected,
            expectation: value,
            certified: (value - f64::from(spec.expected)).abs() <= config.tolerance,
        });
    }

    for k in 1..=3 {
        report.cpl.push(cpl_check(
            &stage1,
            &alice[k - 1],
            &bob[k - 1],
            k,
            config.shots,
            config.master_seed,
        )?);
    }

    if config.shots > 0 {
        report.tally = Some(lmz_tally(config, &timeline, final_ordinal)?);
    }

    report.coexisting_records = timeline.ledger().coexisting();
    report.ledger = timeline.ledger().facts().to_vec();
    report.stages = timeline
        .snapshots()
        .iter()
        .map(StageSummary::from)
        .collect();
    report.notes.push(format!(
        "Literal <{} {}> after B1: {}",
        describe(alice[0].observable()),
        describe(&z(a(1))),
        fmt_value(lifted_joint(&stage1, &alice[0], &bob[0])?)
    ));
    debug_assert_eq!(timeline.state().num_qubits(), NUM_QUBITS);
    Ok(report)
}

fn lifted_joint(stage1: &StateVector, alice: &Premeasurement, bob: &Premeasurement) -> Result<f64> {
    let after = crate::wigner::premeasure(stage1, bob)?;
    after.expectation(&alice.observable().product(&z(alice.memory()))?)
}

fn fmt_value(v: f64) -> String {
    format!("{v:.12}")
}

fn lmz_tally(
    config: &ScenarioConfig,
    timeline: &Timeline,
    final_ordinal: usize,
) -> Result<TallyReport> {
    let stage2 = stage_label(timeline, 2);
    let final_label = stage_label(timeline, final_ordinal);
    let stage1 = stage_label(timeline, 1);
    let groups = vec![
        tally_records(
            stage_state(timeline, 1),
            TallySpec {
                name: "alice-records",
                stage: &stage1,
                records: &[
                    (FactLabel::A1, a(1)),
                    (FactLabel::A2, a(2)),
                    (FactLabel::A3, a(3)),
                ],
                expected_product: None,
            },
            config.shots,
            config.master_seed,
            "lmz/tally/alice",
        )?,
        tally_records(
            stage_state(timeline, 2),
            TallySpec {
                name: "B1*A2*A3",
                stage: &stage2,
                records: &[
                    (FactLabel::B1, b(1)),
                    (FactLabel::A2, a(2)),
                    (FactLabel::A3, a(3)),
                ],
                expected_product: Some(-1),
            },
            config.shots,
            config.master_seed,
            "lmz/tally/2",
        )?,
        tally_records(
            timeline.state(),
            TallySpec {
                name: "B1*B2*B3",
                stage: &final_label,
                records: &[
                    (FactLabel::B1, b(1)),
                    (FactLabel::B2, b(2)),
                    (FactLabel::B3, b(3)),
                ],
                expected_product: Some(1),
            },
            config.shots,
            config.master_seed,
            "lmz/tally/1",
        )?,
        tally_records(
            timeline.state(),
            TallySpec {
                name: "B1*A2*A3 (final, disturbed)",
                stage: &final_label,
                records: &[
                    (FactLabel::B1, b(1)),
                    (FactLabel::A2, a(2)),
                    (FactLabel::A3, a(3)),
                ],
                expected_product: None,
            },
            config.shots,
            config.master_seed,
            "lmz/tally/disturbed",
        )?,
    ];
    Ok(TallyReport::new(config.master_seed, config.shots, groups))
}
