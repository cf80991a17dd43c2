//! One-shot reproduction checklist covering every pinned number.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::parity::{enumerate, product_identity, satisfiable, ConstraintSystem, Satisfiability};
use crate::protocols::registers::b;
use crate::protocols::scenario::alice_stage;
use crate::protocols::{
    cpl_check, lmz_observables, run_cdr_all, run_lmz, CplReport, GhzSign, ScenarioConfig,
};
use crate::quantum::{Observable, Pauli, PauliString, StateVector, ALGEBRA_TOL};
use crate::report::{canonical_json, ReportDocument};
use crate::seed::shot_rng;
use crate::wigner::{premeasure, reverse, FactLabel, Premeasurement};

pub const VERIFY_SHOTS: u64 = 10_000;
pub const VERIFY_SEED: u64 = 0;
pub const REVERSAL_CASES: u64 = 100;
pub const DETERMINISM_SHOTS: u64 = 200;
pub const TIME_BUDGET: Duration = Duration::from_secs(5);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub id: String,
    pub check: String,
    /// The claim being reproduced, in constraint or prose form.
    pub anchor: String,
    pub detail: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub ghz_sign: GhzSign,
    pub rows: Vec<VerifyRow>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn row(&self, id: &str) -> Option<&VerifyRow> {
        self.rows.iter().find(|r| r.id == id)
    }
}

fn row(id: &str, check: &str, anchor: &str, detail: String, passed: bool) -> VerifyRow {
    VerifyRow {
        id: id.to_string(),
        check: check.to_string(),
        anchor: anchor.to_string(),
        detail,
        passed,
    }
}

fn v6(x: f64) -> String {
    format!("{:.6}", if x.abs() < 1e-13 { 0.0 } else { x })
}

/// Worst fidelity of `reverse(premeasure(psi))` with `psi` over random
/// states on 2..=6 qubits and random Pauli observables.
pub fn random_reversal_fidelity(cases: u64, seed: u64) -> Result<f64> {
    let mut worst: f64 = 1.0;
    for case in 0..cases {
        let mut rng = shot_rng(seed, "verify/reversal", case);
        let n = rng.random_range(2..=6usize);
        let memory = n - 1;
        let half = 1usize << memory;
        let amps: Vec<Complex64> = (0..1usize << n)
            .map(|i| {
                if i < half {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let psi = StateVector::normalized(amps)?;
        let factors: Vec<(usize, Pauli)> = loop {
            let f: Vec<(usize, Pauli)> = (0..memory)
                .map(|q| {
                    (
                        q,
                        [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..4)],
                    )
                })
                .filter(|(_, p)| *p != Pauli::I)
                .collect();
            if !f.is_empty() {
                break f;
            }
        };
        let mut p = PauliString::from_factors(n, &factors)?;
        if rng.random::<bool>() {
            p = p.negated();
        }
        let pm = Premeasurement::new(Observable::from(p), memory, "Alice", FactLabel::A1)?;
        let back = reverse(&premeasure(&psi, &pm)?, &pm)?;
        worst = worst.min(back.fidelity(&psi)?);
    }
    Ok(worst)
}

/// The record-agreement check on every pair with `VERIFY_SHOTS` shots.
fn record_links(config: &ScenarioConfig) -> Result<Vec<CplReport>> {
    let stage = alice_stage(config, [1, 2, 3])?;
    let after_alice = stage.timeline.state();
    let obs = lmz_observables(&stage.alice)?;
    (1..=3)
        .map(|k| {
            let bob = Premeasurement::new(obs.bob[k - 1].clone(), b(k), "Bob", FactLabel::bob(k))?;
            cpl_check(
                after_alice,
                &stage.alice[k - 1],
                &bob,
                k,
                VERIFY_SHOTS,
                VERIFY_SEED,
            )
        })
        .collect()
}

/// Runs the checklist. `sign` selects the prepared GHZ sign; only `Plus` is
/// physically correct and `Minus` must make the mixed constraints fail.
pub fn verify_all(sign: GhzSign) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut rows = Vec::new();

    let mut lmz_cfg = ScenarioConfig::lmz();
    lmz_cfg.ghz_sign = sign;
    let lmz = run_lmz(&lmz_cfg)?;

    for c in &lmz.constraints {
        rows.push(row(
            &format!("1.{}", c.constraint_id),
            "operator certainty on the post-Alice state",
            &format!("{} = {:+}", c.relation, c.expected),
            format!("<product> = {}", v6(c.measured_expectation)),
            c.certified,
        ));
    }

    let table = lmz.commutation.as_ref().expect("lmz reports commutation");
    let max_norm = table
        .products
        .iter()
        .map(|e| e.commutator_norm)
        .fold(0.0, f64::max);
    let min_anti = table
        .complementary
        .iter()
        .map(|e| e.commutator_norm)
        .fold(f64::INFINITY, f64::min);
    rows.push(row(
        "2",
        "four products commute, B_k anticommutes with A_k",
        "GHZ parity structure",
        format!(
            "max product commutator norm {}, min [B_k, A_k] norm {}",
            v6(max_norm),
            v6(min_anti)
        ),
        table.consistent,
    ));

    let ghz = ConstraintSystem::ghz();
    let count = enumerate(&ghz, false)?;
    let sat = satisfiable(&ghz)?;
    let identity = product_identity(&ghz);
    let certificate = match &sat {
        Satisfiability::Unsat { certificate, .. } => Some(certificate.numbers()),
        Satisfiability::Sat { .. } => None,
    };
    rows.push(row(
        "3",
        "no +-1 assignment satisfies all four",
        "squares = -1",
        format!(
            "{} of {} assignments, certificate {}, contradiction {}",
            count.count,
            count.total,
            certificate
                .as_ref()
                .map_or("none".to_string(), |c| format!("{c:?}")),
            identity.contradiction
        ),
        count.count == 0 && certificate == Some(vec![1, 2, 3, 4]) && identity.contradiction,
    ));

    let mut counts = Vec::new();
    for skip in 0..4 {
        let keep: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
        counts.push(enumerate(&ghz.subsystem(&keep)?, false)?.count);
    }
    rows.push(row(
        "4",
        "every three of the four are satisfiable",
        "contradiction needs all four",
        format!("solution counts {counts:?}"),
        counts.iter().all(|&c| c == 8),
    ));

    let mut cdr_cfg = ScenarioConfig::cdr(1).with_shots(VERIFY_SHOTS, VERIFY_SEED);
    cdr_cfg.ghz_sign = sign;
    let cdr = run_cdr_all(&cdr_cfg)?;
    for (i, exp) in cdr.experiments.iter().enumerate() {
        let c = &exp.record_certifications[0];
        rows.push(row(
            &format!("5.{}", i + 1),
            "experiment with reversal, sampled record product",
            &format!("{} = {:+}", c.relation, c.expected),
            format!(
                "<records> = {}, {}/{} shots violate, coexisting {}",
                v6(c.measured_expectation),
                c.shot_violations,
                c.shots,
                exp.coexisting_records.len()
            ),
            exp.passed() && c.shots >= VERIFY_SHOTS,
        ));
    }

    let worst = random_reversal_fidelity(REVERSAL_CASES, VERIFY_SEED)?;
    let restoration = cdr.experiments[0].restoration_fidelity.unwrap_or(0.0);
    rows.push(row(
        "6",
        "reversal restores the pre-interaction state",
        "reversal undoes the interaction",
        format!(
            "worst random fidelity {}, S(x)A restoration fidelity {}",
            v6(worst),
            v6(restoration)
        ),
        worst >= 1.0 - ALGEBRA_TOL && restoration >= 1.0 - ALGEBRA_TOL,
    ));

    let d = &lmz.disturbed[0];
    rows.push(row(
        "7",
        "Bob's sequence destroys Alice's records",
        "at most three records coexist",
        format!(
            "final <Z(b1) Z(a2) Z(a3)> = {}, {}",
            v6(d.expectation),
            d.record_statuses
                .iter()
                .map(|(l, s)| format!("{l} {}", format!("{s:?}").to_lowercase()))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        d.shown,
    ));

    let links = record_links(&lmz_cfg)?;
    let c = &links[0];
    rows.push(row(
        "8",
        "record agrees with the system only while intact",
        "link holds only if the record survives",
        format!(
            "intact {}/{}, after B1 exact {} sampled {}/{}",
            c.intact.agreements,
            c.intact.shots,
            v6(c.disturbed.agreement_probability),
            c.disturbed.agreements,
            c.disturbed.shots
        ),
        links.iter().all(|c| c.demonstrated) && c.intact.shots >= VERIFY_SHOTS,
    ));

    let render = |cfg: &ScenarioConfig| -> Result<String> {
        let r = run_lmz(cfg)?;
        ReportDocument::new("run lmz", cfg, &r, r.passed())?.to_canonical_json()
    };
    let mut det_cfg = ScenarioConfig::lmz().with_shots(DETERMINISM_SHOTS, 7);
    det_cfg.ghz_sign = sign;
    let same_lmz = render(&det_cfg)? == render(&det_cfg)?;
    let mut det_cdr = ScenarioConfig::cdr(1).with_shots(DETERMINISM_SHOTS, 7);
    det_cdr.ghz_sign = sign;
    let same_cdr =
        canonical_json(&run_cdr_all(&det_cdr)?)? == canonical_json(&run_cdr_all(&det_cdr)?)?;
    rows.push(row(
        "9",
        "same seed, byte-identical report",
        "report is a pure function of the config",
        format!("lmz identical {same_lmz}, cdr identical {same_cdr}"),
        same_lmz && same_cdr,
    ));

    let within = start.elapsed() < TIME_BUDGET;
    rows.push(row(
        "10",
        "checklist completes within the time budget",
        "elapsed under 5 s",
        format!("under {} s: {within}", TIME_BUDGET.as_secs()),
        within,
    ));

    let passed = rows.iter().all(|r| r.passed);
    Ok(VerifyReport {
        ghz_sign: sign,
        rows,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_is_exact_on_random_cases() {
        assert!(random_reversal_fidelity(20, 3).unwrap() >= 1.0 - 1e-12);
    }
}
