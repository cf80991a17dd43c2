use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An agent whose memory is a set of qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observer {
    pub name: String,
    pub memory_qubits: Vec<usize>,
}

impl Observer {
    pub fn new(name: impl Into<String>, memory_qubits: Vec<usize>) -> Self {
        Observer {
            name: name.into(),
            memory_qubits,
        }
    }
}

/// Checks that no memory qubit is shared between observers or with the system.
pub fn check_disjoint(system: &[usize], observers: &[Observer]) -> Result<()> {
    let mut used: u64 = 0;
    for &q in system {
        if used >> q & 1 == 1 {
            return Err(Error::argument(format!("system qubit {q} listed twice")));
        }
        used |= 1 << q;
    }
    for o in observers {
        for &q in &o.memory_qubits {
            if used >> q & 1 == 1 {
                return Err(Error::argument(format!(
                    "memory qubit {q} of {} is already in use",
                    o.name
                )));
            }
            used |= 1 << q;
        }
    }
    Ok(())
}

/// Names of the six relative facts: Alice's `A1..A3` and Bob's `B1..B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactLabel {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
}

impl FactLabel {
    pub const ALL: [FactLabel; 6] = [
        FactLabel::A1,
        FactLabel::A2,
        FactLabel::A3,
        FactLabel::B1,
        FactLabel::B2,
        FactLabel::B3,
    ];

    /// Alice's fact on pair `k` (1-based).
    pub fn alice(k: usize) -> Self {
        [FactLabel::A1, FactLabel::A2, FactLabel::A3][k - 1]
    }

    /// Bob's fact on pair `k` (1-based).
    pub fn bob(k: usize) -> Self {
        [FactLabel::B1, FactLabel::B2, FactLabel::B3][k - 1]
    }

    /// 1-based pair index.
    pub fn pair(self) -> usize {
        match self {
            FactLabel::A1 | FactLabel::B1 => 1,
            FactLabel::A2 | FactLabel::B2 => 2,
            FactLabel::A3 | FactLabel::B3 => 3,
        }
    }

    pub fn is_alice(self) -> bool {
        matches!(self, FactLabel::A1 | FactLabel::A2 | FactLabel::A3)
    }
}

impl fmt::Display for FactLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.is_alice() { 'A' } else { 'B' };
        write!(f, "{side}{}", self.pair())
    }
}

impl Serialize for FactLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
