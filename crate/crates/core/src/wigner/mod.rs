//! Observers as memory registers: record-writing premeasurement, its unitary
//! reversal, lifted observables and the relative-fact ledger.
//!
//! A fact is "realized" in two distinct senses that are never conflated here.
//! A premeasurement leaves a perfectly correlated record whose value stays
//! `unknown` in the ledger; only a projective [`readout`] assigns a value.

pub mod ledger;
pub mod observer;
pub mod premeasure;
pub mod timeline;

pub use ledger::{
    mark_disturbed, readout, FactStatus, FactValue, LaterAction, Ledger, RelativeFact, StageId,
};
pub use observer::{check_disjoint, FactLabel, Observer};
pub use premeasure::{conjugate, lift, premeasure, record_observable, reverse, Premeasurement};
pub use timeline::{StageSnapshot, Timeline};
