//! Simulation and verification of sequential Wigner-friend measurements on a
//! three-qubit GHZ state.
//!
//! * [`quantum`]: dense statevector engine and Pauli algebra.
//! * [`wigner`]: observers as memory registers, premeasurement and its reversal,
//!   relative-fact ledger.
//! * [`protocols`]: the single-experiment sequential scenario, the
//!   four-experiment reversal scenario, constraint certification and the
//!   record-agreement check.
//! * [`parity`]: ±1 product constraints as GF(2) systems.
//! * [`report`]: canonical report documents.
//! * [`verify`]: the reproduction checklist behind `verify --all`.

pub mod error;
pub mod parity;
pub mod protocols;
pub mod quantum;
pub mod report;
pub mod seed;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};
