use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::protocols::registers::z;
use crate::quantum::StateVector;
use crate::seed::shot_rng;
use crate::wigner::FactLabel;

/// Allowed deviation of a record marginal from 1/2, in binomial standard deviations.
pub const MARGINAL_SIGMAS: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Marginal {
    pub label: FactLabel,
    pub plus_count: u64,
    pub plus_fraction: f64,
    /// `5 * sqrt(1/4 / shots)`.
    pub bound: f64,
    pub consistent: bool,
}

/// Outcome statistics of reading a set of records shot by shot.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TallyGroup {
    pub name: String,
    pub stage: String,
    pub records: Vec<FactLabel>,
    /// Product the records must always show; `None` for diagnostic groups.
    pub expected_product: Option<i8>,
    pub shots: u64,
    /// Outcome tuples in record order, e.g. `+-+`.
    pub tuples: BTreeMap<String, u64>,
    pub product_plus: u64,
    pub product_minus: u64,
    pub violations: u64,
    pub marginals: Vec<Marginal>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TallyReport {
    pub master_seed: u64,
    pub shots: u64,
    pub groups: Vec<TallyGroup>,
    pub consistent: bool,
}

impl TallyReport {
    pub fn new(master_seed: u64, shots: u64, groups: Vec<TallyGroup>) -> Self {
        let consistent = groups.iter().all(|g| g.consistent);
        TallyReport {
            master_seed,
            shots,
            groups,
            consistent,
        }
    }

    pub fn group(&self, name: &str) -> Option<&TallyGroup> {
        self.groups.iter().find(|g| g.name == name)
    }
}

/// Which records to read and what their product must be.
#[derive(Clone, Copy, Debug)]
pub struct TallySpec<'a> {
    pub name: &'a str,
    pub stage: &'a str,
    /// `(label, memory qubit)` in readout order.
    pub records: &'a [(FactLabel, usize)],
    pub expected_product: Option<i8>,
}

/// Reads the records in order from a fresh copy of `state` in every shot.
/// Shot `k` draws from `shot_rng(seed, stream, k)`.
pub fn tally_records(
    state: &StateVector,
    spec: TallySpec<'_>,
    shots: u64,
    seed: u64,
    stream: &str,
) -> Result<TallyGroup> {
    let TallySpec {
        name,
        stage,
        records,
        expected_product,
    } = spec;
    let observables: Vec<_> = records.iter().map(|&(_, q)| z(q)).collect();
    let mut tuples = BTreeMap::new();
    let mut plus_counts = vec![0u64; records.len()];
    let (mut product_plus, mut product_minus, mut violations) = (0, 0, 0);
    for shot in 0..shots {
        let mut rng = shot_rng(seed, stream, shot);
        let mut current = state.clone();
        let mut key = String::with_capacity(records.len());
        let mut product = 1i8;
        for (k, o) in observables.iter().enumerate() {
            let out = current.measure(o, &mut rng)?;
            if out.value == 1 {
                plus_counts[k] += 1;
            }
            key.push(if out.value == 1 { '+' } else { '-' });
            product *= out.value;
            current = out.post_state;
        }
        *tuples.entry(key).or_insert(0) += 1;
        if product == 1 {
            product_plus += 1;
        } else {
            product_minus += 1;
        }
        if expected_product.is_some_and(|e| e != product) {
            violations += 1;
        }
    }
    let bound = if shots > 0 {
        MARGINAL_SIGMAS * (0.25 / shots as f64).sqrt()
    } else {
        0.0
    };
    let marginals: Vec<Marginal> = records
        .iter()
        .zip(&plus_counts)
        .map(|(&(label, _), &plus)| {
            let frac = if shots > 0 {
                plus as f64 / shots as f64
            } else {
                0.5
            };
            Marginal {
                label,
                plus_count: plus,
                plus_fraction: frac,
                bound,
                consistent: (frac - 0.5).abs() <= bound,
            }
        })
        .collect();
    let consistent = violations == 0 && marginals.iter().all(|m| m.consistent);
    Ok(TallyGroup {
        name: name.to_string(),
        stage: stage.to_string(),
        records: records.iter().map(|r| r.0).collect(),
        expected_product,
        shots,
        tuples,
        product_plus,
        product_minus,
        violations,
        marginals,
        consistent,
    })
}
