use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::{Observable, StateVector};
use crate::seed::shot_rng;

/// A ±1 observable with a display name such as `B1` or `Z(b1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedObservable {
    pub name: String,
    pub observable: Observable,
}

impl NamedObservable {
    pub fn new(name: impl Into<String>, observable: Observable) -> Self {
        NamedObservable {
            name: name.into(),
            observable,
        }
    }
}

/// The product of three commuting observables is claimed to equal `expected`.
#[derive(Clone, Debug)]
pub struct ConstraintSpec {
    pub id: u8,
    /// Product written over fact labels, e.g. `B1*A2*A3`.
    pub relation: String,
    pub observables: [NamedObservable; 3],
    pub expected: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    /// Expectation of the operator product on one state.
    Operator,
    /// Product of coexisting memory records.
    Record,
}

/// Per-shot sampling parameters for a certification.
#[derive(Clone, Copy, Debug)]
pub struct Sampling<'a> {
    pub shots: u64,
    pub master_seed: u64,
    pub stream: &'a str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintResult {
    pub constraint_id: u8,
    pub relation: String,
    pub kind: ConstraintKind,
    pub observables: Vec<String>,
    pub expected: i8,
    pub measured_expectation: f64,
    pub tolerance: f64,
    pub stage: String,
    pub shots: u64,
    pub shot_violations: u64,
    pub certified: bool,
}

/// Certifies a product constraint on `state`.
///
/// The three observables must commute pairwise; otherwise the product is not
/// a joint observable and the call is rejected as a protocol error. With
/// sampling, each shot measures the three observables one after another on a
/// fresh copy of `state` and checks the product of outcomes. A certainty
/// correlation admits no violating shot.
pub fn certify_constraint(
    state: &StateVector,
    spec: &ConstraintSpec,
    kind: ConstraintKind,
    stage: &str,
    tolerance: f64,
    sampling: Option<Sampling<'_>>,
) -> Result<ConstraintResult> {
    let obs = &spec.observables;
    for i in 0..3 {
        for j in i + 1..3 {
            if !obs[i].observable.commutes(&obs[j].observable)? {
                return Err(Error::Protocol(format!(
                    "{} and {} do not commute; their product is not a joint observable",
                    obs[i].name, obs[j].name
                )));
            }
        }
    }
    let product = obs[0]
        .observable
        .product(&obs[1].observable)?
        .product(&obs[2].observable)?;
    let measured = state.expectation(&product)?;

    let (shots, violations) = match sampling {
        Some(s) if s.shots > 0 => (s.shots, count_violations(state, obs, spec.expected, s)?),
        _ => (0, 0),
    };
    let certified = (measured - f64::from(spec.expected)).abs() <= tolerance && violations == 0;
    Ok(ConstraintResult {
        constraint_id: spec.id,
        relation: spec.relation.clone(),
        kind,
        observables: obs.iter().map(|o| o.name.clone()).collect(),
        expected: spec.expected,
        measured_expectation: measured,
        tolerance,
        stage: stage.to_string(),
        shots,
        shot_violations: violations,
        certified,
    })
}

fn count_violations(
    state: &StateVector,
    obs: &[NamedObservable; 3],
    expected: i8,
    sampling: Sampling<'_>,
) -> Result<u64> {
    let mut violations = 0;
    for shot in 0..sampling.shots {
        let mut rng = shot_rng(sampling.master_seed, sampling.stream, shot);
        let mut current = state.clone();
        let mut product = 1i8;
        for o in obs {
            let out = current.measure(&o.observable, &mut rng)?;
            product *= out.value;
            current = out.post_state;
        }
        if product != expected {
            violations += 1;
        }
    }
    Ok(violations)
}
