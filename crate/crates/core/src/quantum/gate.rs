use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::ALGEBRA_TOL;

/// A unitary on one or two target qubits, row-major.
///
/// For two-qubit gates the local basis index is `bit(targets[0]) + 2 * bit(targets[1])`,
/// i.e. the first target is the least significant local bit.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    arity: usize,
    entries: Vec<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl GateMatrix {
    /// Validates shape and unitarity (`U†U = I` entrywise within 1e-12).
    pub fn new(arity: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !(1..=2).contains(&arity) {
            return Err(Error::argument(format!("gate arity {arity} not supported")));
        }
        let dim = 1 << arity;
        if entries.len() != dim * dim {
            return Err(Error::argument(format!(
                "{}-qubit gate needs {} entries, got {}",
                arity,
                dim * dim,
                entries.len()
            )));
        }
        let gate = GateMatrix { arity, entries };
        let dev = gate.unitarity_defect();
        if dev > ALGEBRA_TOL {
            return Err(Error::argument(format!(
                "gate is not unitary (max |U†U - I| = {dev:.3e})"
            )));
        }
        Ok(gate)
    }

    fn unitarity_defect(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = c(0.0, 0.0);
                for k in 0..dim {
                    acc += self.entries[k * dim + i].conj() * self.entries[k * dim + j];
                }
                let target = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn identity(arity: usize) -> Result<Self> {
        let dim = 1usize << arity.min(2);
        let entries = (0..dim * dim)
            .map(|k| {
                if k / dim == k % dim {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
            .collect();
        Self::new(arity, entries)
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(1, vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]).expect("unitary")
    }

    pub fn pauli_x() -> Self {
        Self::new(1, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).expect("unitary")
    }

    pub fn pauli_z() -> Self {
        Self::new(1, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).expect("unitary")
    }

    /// Controlled-NOT with `targets[0]` as control and `targets[1]` as target.
    pub fn cnot() -> Self {
        let mut e = vec![c(0.0, 0.0); 16];
        // local index = control + 2 * target; swap |c=1,t=0> (1) with |c=1,t=1> (3)
        for (row, col) in [(0, 0), (3, 1), (2, 2), (1, 3)] {
            e[row * 4 + col] = c(1.0, 0.0);
        }
        Self::new(2, e).expect("unitary")
    }

    /// General single-qubit rotation `exp(-i theta/2 n·sigma)` for a unit axis.
    pub fn rotation(axis: [f64; 3], theta: f64) -> Result<Self> {
        let len = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if len < 1e-12 {
            return Err(Error::argument("rotation axis has zero length"));
        }
        let [nx, ny, nz] = axis.map(|a| a / len);
        let (s, co) = (theta / 2.0).sin_cos();
        Self::new(
            1,
            vec![
                c(co, -nz * s),
                c(-ny * s, -nx * s),
                c(ny * s, -nx * s),
                c(co, nz * s),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unitary() {
        let e = vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(GateMatrix::new(1, e), Err(Error::Argument(_))));
        assert!(GateMatrix::new(3, vec![c(1.0, 0.0); 64]).is_err());
        assert!(GateMatrix::new(1, vec![c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn standard_gates_are_unitary() {
        for g in [
            GateMatrix::hadamard(),
            GateMatrix::pauli_x(),
            GateMatrix::cnot(),
            GateMatrix::identity(2).unwrap(),
        ] {
            assert!(g.unitarity_defect() < 1e-12);
        }
        let r = GateMatrix::rotation([0.3, -1.0, 2.0], 1.234).unwrap();
        assert!(r.unitarity_defect() < 1e-12);
    }
}
