//! Product constraints over ±1 variables, solved as GF(2) linear systems and
//! cross-checked by exhaustive enumeration.

pub mod constraint;
pub mod solve;

pub use constraint::{parse_constraints, ConstraintSystem, ParityConstraint};
pub use solve::{
    enumerate, product_identity, satisfiable, Assignment, Enumeration, ProductIdentity,
    Satisfiability, UnsatCertificate,
};

use serde::Serialize;

use crate::error::Result;

/// Everything the solver can say about a system, as reported by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub universe: Vec<String>,
    pub constraints: Vec<String>,
    pub satisfiability: Satisfiability,
    /// 1-based constraint numbers of the UNSAT certificate.
    pub certificate_numbers: Option<Vec<usize>>,
    /// Present when the universe is small enough to enumerate.
    pub enumeration: Option<Enumeration>,
    pub product_identity: ProductIdentity,
}

pub fn analyze(system: &ConstraintSystem) -> Result<Analysis> {
    let satisfiability = satisfiable(system)?;
    let certificate_numbers = match &satisfiability {
        Satisfiability::Unsat { certificate, .. } => Some(certificate.numbers()),
        Satisfiability::Sat { .. } => None,
    };
    let enumeration = if system.universe().len() <= solve::MAX_ENUMERATION_VARS {
        Some(enumerate(system, false)?)
    } else {
        None
    };
    Ok(Analysis {
        universe: system.universe().to_vec(),
        constraints: system
            .constraints()
            .iter()
            .map(ToString::to_string)
            .collect(),
        satisfiability,
        certificate_numbers,
        enumeration,
        product_identity: product_identity(system),
    })
}
