//! End-to-end scenarios on the nine-qubit register.
//!
//! [`run_lmz`] keeps every interaction unitary and certifies the four product
//! constraints in one experiment. [`run_cdr`] splits them into four
//! experiments in which Bob first undoes Alice's interaction.

pub mod cdr;
pub mod certify;
pub mod config;
pub mod cpl;
pub mod lmz;
pub mod registers;
pub mod scenario;
pub mod tally;

pub use cdr::{run_cdr, run_cdr_all, CdrSummary};
pub use certify::{
    certify_constraint, ConstraintKind, ConstraintResult, ConstraintSpec, NamedObservable, Sampling,
};
pub use config::{BobMode, GhzSign, ScenarioConfig, DEFAULT_TOLERANCE};
pub use cpl::{cpl_check, CplCase, CplReport, CPL_MIN_DROP};
pub use lmz::{lmz_final_state, lmz_observables, run_lmz, LmzObservables};
pub use scenario::{
    CommutationEntry, CommutationTable, DisturbedDiagnostic, EigenvalueEntry, ScenarioReport,
    StageSummary,
};
pub use tally::{tally_records, Marginal, TallyGroup, TallyReport, TallySpec};

use crate::error::{Error, Result};

/// Runs the configured scenario with shot sampling and returns its tally.
pub fn sample_runs(config: &ScenarioConfig) -> Result<TallyReport> {
    if config.shots == 0 {
        return Err(Error::Usage("sampling needs at least one shot".into()));
    }
    let report = match config.bob_mode {
        BobMode::LmzLifted => run_lmz(config)?,
        BobMode::CdrReversal => run_cdr(config)?,
    };
    Ok(report.tally.expect("tally present when shots > 0"))
}
