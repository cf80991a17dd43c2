//! Dense statevector engine: states, gates, Pauli algebra, Born-rule measurement.

pub mod density;
pub mod gate;
pub mod observable;
pub mod pauli;
pub mod state;

pub use density::DensityMatrix;
pub use gate::GateMatrix;
pub use observable::{dense_commutator_norm, Measurable, Observable, PauliSum};
pub use pauli::{commutes, Pauli, PauliString};
pub use state::{MeasurementOutcome, StateVector};

/// Largest register the dense engine will allocate.
pub const MAX_QUBITS: usize = 24;

/// Tolerance for physical statements (norms, expectations, probabilities).
pub const PHYSICS_TOL: f64 = 1e-10;

/// Tolerance for algebraic identities (unitarity, involution, self-inverse).
pub const ALGEBRA_TOL: f64 = 1e-12;
