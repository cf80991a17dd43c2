use serde::Serialize;

use crate::error::Result;
use crate::protocols::registers::{describe, qubit_name};
use crate::quantum::{Observable, StateVector, PHYSICS_TOL};
use crate::seed::shot_rng;
use crate::wigner::{premeasure, record_observable, Premeasurement};

/// Smallest drop in agreement that counts as a broken premise.
pub const CPL_MIN_DROP: f64 = 0.1;

/// One run of the agreement check: read Alice's measured quantity on the
/// system, optionally let another interaction happen, then read Alice's record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CplCase {
    pub first_readout: String,
    pub intervening: Option<String>,
    pub second_readout: String,
    /// `<O (x) Z_a>` on the state just before the record readout, without the
    /// first readout's collapse.
    pub joint_expectation: f64,
    /// Exact Born probability that both readouts agree.
    pub agreement_probability: f64,
    pub shots: u64,
    pub agreements: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CplReport {
    pub pair: usize,
    /// Nothing touches Alice's record between her interaction and the readout.
    pub intact: CplCase,
    /// Bob's lifted premeasurement, which does not commute with the record,
    /// happens in between.
    pub disturbed: CplCase,
    pub premise_holds_agreement_certain: bool,
    pub premise_fails_agreement_drops: bool,
    pub demonstrated: bool,
}

fn exact_agreement(
    state: &StateVector,
    first: &Observable,
    between: Option<&Premeasurement>,
    second: &Observable,
) -> Result<f64> {
    let mut total = 0.0;
    for v in [1i8, -1] {
        let Some((w1, post)) = state.project(first, v)? else {
            continue;
        };
        let post = match between {
            Some(pm) => premeasure(&post, pm)?,
            None => post,
        };
        if let Some((w2, _)) = post.project(second, v)? {
            total += w1 * w2;
        }
    }
    Ok(total)
}

fn sampled_agreement(
    state: &StateVector,
    first: &Observable,
    between: Option<&Premeasurement>,
    second: &Observable,
    shots: u64,
    seed: u64,
    stream: &str,
) -> Result<u64> {
    let mut agreements = 0;
    for shot in 0..shots {
        let mut rng = shot_rng(seed, stream, shot);
        let one = state.measure(first, &mut rng)?;
        let mid = match between {
            Some(pm) => premeasure(&one.post_state, pm)?,
            None => one.post_state,
        };
        let two = mid.measure(second, &mut rng)?;
        if one.value == two.value {
            agreements += 1;
        }
    }
    Ok(agreements)
}

fn run_case(
    state: &StateVector,
    first: &Observable,
    between: Option<&Premeasurement>,
    second: &Observable,
    shots: u64,
    seed: u64,
    stream: &str,
) -> Result<CplCase> {
    let joint_state = match between {
        Some(pm) => premeasure(state, pm)?,
        None => state.clone(),
    };
    let joint = joint_state.expectation(&first.product(second)?)?;
    Ok(CplCase {
        first_readout: describe(first),
        intervening: between.map(|pm| {
            format!(
                "{} premeasures {} into {}",
                pm.owner(),
                describe(pm.observable()),
                qubit_name(pm.memory())
            )
        }),
        second_readout: describe(second),
        joint_expectation: joint,
        agreement_probability: exact_agreement(state, first, between, second)?,
        shots,
        agreements: sampled_agreement(state, first, between, second, shots, seed, stream)?,
    })
}

/// Agreement between the value of Alice's measured quantity and a later
/// readout of her record, with and without Bob's interaction in between.
///
/// `after_alice` is the state right after Alice's premeasurement; `bob` must
/// premeasure an observable that fails to commute with Alice's record.
pub fn cpl_check(
    after_alice: &StateVector,
    alice: &Premeasurement,
    bob: &Premeasurement,
    pair: usize,
    shots: u64,
    seed: u64,
) -> Result<CplReport> {
    let system_obs = alice.observable().clone();
    let record = Observable::from(record_observable(alice));
    let intact = run_case(
        after_alice,
        &system_obs,
        None,
        &record,
        shots,
        seed,
        &format!("cpl/{pair}/intact"),
    )?;
    let disturbed = run_case(
        after_alice,
        &system_obs,
        Some(bob),
        &record,
        shots,
        seed,
        &format!("cpl/{pair}/disturbed"),
    )?;
    let premise_holds = (intact.joint_expectation - 1.0).abs() <= PHYSICS_TOL
        && (intact.agreement_probability - 1.0).abs() <= PHYSICS_TOL
        && intact.agreements == intact.shots;
    let drops = 1.0 - disturbed.agreement_probability > CPL_MIN_DROP
        && (disturbed.shots == 0 || disturbed.agreements < disturbed.shots);
    Ok(CplReport {
        pair,
        intact,
        disturbed,
        premise_holds_agreement_certain: premise_holds,
        premise_fails_agreement_drops: drops,
        demonstrated: premise_holds && drops,
    })
}
