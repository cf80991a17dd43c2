use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::Pauli;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BobMode {
    /// Bob premeasures the lifted observables on `S (x) A` in one experiment.
    LmzLifted,
    /// Bob reverses Alice's interaction on a pair, then premeasures the qubit.
    CdrReversal,
}

/// Relative sign of the prepared GHZ state. `Minus` exists only as a
/// deliberately wrong fixture for the verification harness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GhzSign {
    #[default]
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioConfig {
    /// Alice's observable on `s1..s3`.
    pub alice_basis: [Pauli; 3],
    pub bob_mode: BobMode,
    /// CDR experiment `1..=4`; experiment `m` tests constraint `m`.
    pub experiment_id: Option<u8>,
    /// Sampled shots; 0 means exact expectations only.
    pub shots: u64,
    pub master_seed: u64,
    pub tolerance: f64,
    pub ghz_sign: GhzSign,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl ScenarioConfig {
    pub fn lmz() -> Self {
        ScenarioConfig {
            alice_basis: [Pauli::Y; 3],
            bob_mode: BobMode::LmzLifted,
            experiment_id: None,
            shots: 0,
            master_seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            ghz_sign: GhzSign::Plus,
        }
    }

    pub fn cdr(experiment: u8) -> Self {
        ScenarioConfig {
            bob_mode: BobMode::CdrReversal,
            experiment_id: Some(experiment),
            ..Self::lmz()
        }
    }

    pub fn with_shots(mut self, shots: u64, seed: u64) -> Self {
        self.shots = shots;
        self.master_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match (self.bob_mode, self.experiment_id) {
            (BobMode::LmzLifted, Some(_)) => {
                return Err(Error::Usage(
                    "experiment id is only meaningful for CDR runs".into(),
                ))
            }
            (BobMode::CdrReversal, None) => {
                return Err(Error::Usage("CDR runs need an experiment id".into()))
            }
            (BobMode::CdrReversal, Some(m)) if !(1..=4).contains(&m) => {
                return Err(Error::Usage(format!("experiment {m} is not in 1..=4")))
            }
            _ => {}
        }
        if self.alice_basis.contains(&Pauli::I) {
            return Err(Error::Usage(
                "Alice's observable cannot be the identity".into(),
            ));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Usage(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        Ok(())
    }
}
