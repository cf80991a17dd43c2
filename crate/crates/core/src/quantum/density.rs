use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::state::StateVector;

/// Density matrix of a subsystem, row-major over `2^k` local basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    qubits: Vec<usize>,
    dim: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    pub(crate) fn from_parts(qubits: Vec<usize>, data: Vec<Complex64>) -> Self {
        let dim = 1 << qubits.len();
        debug_assert_eq!(data.len(), dim * dim);
        DensityMatrix { qubits, dim, data }
    }

    /// Qubits of the parent state, in local bit order.
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entry(i, i).re).sum()
    }

    /// `Tr(rho^2)`; equals `sum |rho_ij|^2` for Hermitian `rho`.
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `<phi|rho|phi>` for a pure state over the same number of qubits.
    pub fn fidelity_with_pure(&self, phi: &StateVector) -> Result<f64> {
        if phi.dim() != self.dim {
            return Err(Error::argument(format!(
                "pure state of dimension {} against density matrix of dimension {}",
                phi.dim(),
                self.dim
            )));
        }
        let a = phi.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..self.dim {
            for c in 0..self.dim {
                acc += a[r].conj() * self.entry(r, c) * a[c];
            }
        }
        Ok(acc.re)
    }
}
