use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::quantum::density::DensityMatrix;
use crate::quantum::gate::GateMatrix;
use crate::quantum::observable::Measurable;
use crate::quantum::pauli::{odd_parity, PauliString};
use crate::quantum::{MAX_QUBITS, PHYSICS_TOL};

/// Branches lighter than this are treated as impossible.
const BRANCH_FLOOR: f64 = 1e-12;

/// Largest subsystem accepted by [`StateVector::reduced_density`].
pub const MAX_REDUCED_QUBITS: usize = 12;

/// Dense pure state over `num_qubits` qubits.
///
/// Qubit `q` is bit `q` of the basis index (qubit 0 is least significant), so
/// applying X to qubit 1 of `|00>` yields basis index 2.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Result of a projective ±1 measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub value: i8,
    pub probability: f64,
    pub post_state: StateVector,
}

impl StateVector {
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::Resource(format!(
                "{num_qubits} qubits requested (allowed 1..={MAX_QUBITS})"
            )));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::argument(format!("basis index {index} >= {dim}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the vector
    /// normalized within 1e-10.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::argument(format!(
                "{dim} amplitudes is not a power of two >= 2"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::Resource(format!("{num_qubits} qubits")));
        }
        let s = StateVector {
            num_qubits,
            amplitudes,
        };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > PHYSICS_TOL {
            return Err(Error::argument(format!("state has squared norm {norm}")));
        }
        Ok(s)
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < BRANCH_FLOOR {
            return Err(Error::argument("cannot normalize a zero vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<a|b>|^2`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::argument(format!(
                "states over {} and {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }

    fn check_qubits(&self, qubits: &[usize]) -> Result<()> {
        let mut seen = 0u64;
        for &q in qubits {
            if q >= self.num_qubits {
                return Err(Error::argument(format!(
                    "qubit {q} out of range for {} qubits",
                    self.num_qubits
                )));
            }
            if seen & (1 << q) != 0 {
                return Err(Error::argument(format!("qubit {q} listed twice")));
            }
            seen |= 1 << q;
        }
        Ok(())
    }

    fn check_operator<M: Measurable>(&self, op: &M) -> Result<()> {
        if op.num_qubits() != self.num_qubits {
            return Err(Error::argument(format!(
                "operator over {} qubits applied to a {}-qubit state",
                op.num_qubits(),
                self.num_qubits
            )));
        }
        Ok(())
    }

    /// Probability that qubit `q` reads 1 in the computational basis.
    pub fn probability_one(&self, q: usize) -> Result<f64> {
        self.check_qubits(&[q])?;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i >> q & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// True when the marginal of `q` is pure `|0>` within 1e-10.
    pub fn qubit_is_zero(&self, q: usize) -> Result<bool> {
        Ok(self.probability_one(q)? <= PHYSICS_TOL)
    }

    pub fn apply_gate(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(Error::argument(format!(
                "{}-qubit gate given {} targets",
                gate.arity(),
                targets.len()
            )));
        }
        self.check_qubits(targets)?;
        let masks: Vec<usize> = targets.iter().map(|&t| 1usize << t).collect();
        let all = masks.iter().fold(0, |a, m| a | m);
        let dim = gate.dim();
        let mut local = vec![Complex64::new(0.0, 0.0); dim];
        let offsets: Vec<usize> = (0..dim)
            .map(|l| {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| l >> b & 1 == 1)
                    .fold(0, |acc, (_, m)| acc | m)
            })
            .collect();
        for base in 0..self.amplitudes.len() {
            if base & all != 0 {
                continue;
            }
            for (l, off) in offsets.iter().enumerate() {
                local[l] = self.amplitudes[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                self.amplitudes[base | off] = (0..dim).map(|k| gate.entry(r, k) * local[k]).sum();
            }
        }
        Ok(())
    }

    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        self.apply_operator(p)
    }

    /// Applies a unitary ±1 observable (a Pauli string or a Pauli sum that
    /// squares to the identity).
    pub fn apply_operator<M: Measurable>(&mut self, op: &M) -> Result<()> {
        self.check_operator(op)?;
        self.amplitudes = op.act(&self.amplitudes);
        Ok(())
    }

    /// Prepares `(|000> + |111>)/sqrt(2)` on three qubits that are each in `|0>`.
    pub fn prepare_ghz(&mut self, qubits: [usize; 3]) -> Result<()> {
        self.check_qubits(&qubits)?;
        for q in qubits {
            if !self.qubit_is_zero(q)? {
                return Err(Error::Protocol(format!(
                    "GHZ preparation needs qubit {q} in |0>"
                )));
            }
        }
        self.apply_gate(&GateMatrix::hadamard(), &[qubits[0]])?;
        self.apply_gate(&GateMatrix::cnot(), &[qubits[0], qubits[1]])?;
        self.apply_gate(&GateMatrix::cnot(), &[qubits[0], qubits[2]])?;
        Ok(())
    }

    /// `<psi|O|psi>` for a Hermitian operator. An imaginary residue above
    /// 1e-10 is reported as a consistency error.
    pub fn expectation<M: Measurable>(&self, op: &M) -> Result<f64> {
        self.check_operator(op)?;
        let image = op.act(&self.amplitudes);
        let value: Complex64 = self
            .amplitudes
            .iter()
            .zip(&image)
            .map(|(a, b)| a.conj() * b)
            .sum();
        if value.im.abs() > PHYSICS_TOL {
            return Err(Error::Consistency(format!(
                "expectation has imaginary part {:.3e}; operator is not Hermitian",
                value.im
            )));
        }
        Ok(value.re)
    }

    /// Unnormalized projection `(I + v O)/2 |psi>` from `image = O|psi>`,
    /// with its squared norm.
    fn project_with(&self, image: &[Complex64], value: i8) -> (Vec<Complex64>, f64) {
        let v = f64::from(value);
        let projected: Vec<Complex64> = self
            .amplitudes
            .iter()
            .zip(image)
            .map(|(a, b)| (a + b * v) * 0.5)
            .collect();
        let weight = projected.iter().map(|a| a.norm_sqr()).sum();
        (projected, weight)
    }

    /// Born weights from `image = O|psi>`: `(|psi|^2 ± <psi|O|psi>) / 2`.
    fn weights_with(&self, image: &[Complex64]) -> (f64, f64) {
        let mut norm = 0.0;
        let mut overlap = 0.0;
        for (a, b) in self.amplitudes.iter().zip(image) {
            norm += a.norm_sqr();
            overlap += (a.conj() * b).re;
        }
        (
            ((norm + overlap) / 2.0).max(0.0),
            ((norm - overlap) / 2.0).max(0.0),
        )
    }

    /// Born weights `(p(+1), p(-1))` of a ±1 observable.
    pub fn branch_probabilities<M: Measurable>(&self, op: &M) -> Result<(f64, f64)> {
        self.check_operator(op)?;
        Ok(self.weights_with(&op.act(&self.amplitudes)))
    }

    fn collapse(&self, mut amps: Vec<Complex64>, weight: f64) -> StateVector {
        let norm = weight.sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector {
            num_qubits: self.num_qubits,
            amplitudes: amps,
        }
    }

    /// Collapses onto the `value` eigenspace. Returns `None` when that branch
    /// has weight below 1e-12.
    pub fn project<M: Measurable>(&self, op: &M, value: i8) -> Result<Option<(f64, StateVector)>> {
        self.check_operator(op)?;
        if value != 1 && value != -1 {
            return Err(Error::argument(format!("eigenvalue {value} is not ±1")));
        }
        let (amps, weight) = self.project_with(&op.act(&self.amplitudes), value);
        if weight < BRANCH_FLOOR {
            return Ok(None);
        }
        Ok(Some((weight, self.collapse(amps, weight))))
    }

    /// Samples a ±1 outcome with Born probability and returns the collapsed state.
    /// The draw is a single uniform `u`; the outcome is `+1` iff `u < p(+1)`.
    pub fn measure<M: Measurable, R: Rng + ?Sized>(
        &self,
        op: &M,
        rng: &mut R,
    ) -> Result<MeasurementOutcome> {
        self.check_operator(op)?;
        if let Some((z, negative)) = op.diagonal() {
            return self.measure_diagonal(z as usize, negative, rng);
        }
        let image = op.act(&self.amplitudes);
        let (plus, minus) = self.weights_with(&image);
        if plus < BRANCH_FLOOR && minus < BRANCH_FLOOR {
            return Err(Error::Consistency(
                "both measurement branches vanish; operator is not a ±1 involution".into(),
            ));
        }
        let u: f64 = rng.random();
        let value = if u < plus / (plus + minus) { 1 } else { -1 };
        let probability = if value == 1 { plus } else { minus };
        if probability < BRANCH_FLOOR {
            return Err(Error::Consistency("sampled a vanishing branch".into()));
        }
        let v = f64::from(value);
        let scale = 0.5 / probability.sqrt();
        let amplitudes = self
            .amplitudes
            .iter()
            .zip(&image)
            .map(|(a, b)| (a + b * v) * scale)
            .collect();
        Ok(MeasurementOutcome {
            value,
            probability,
            post_state: StateVector {
                num_qubits: self.num_qubits,
                amplitudes,
            },
        })
    }

    /// `measure` for a Z-type string: basis state `i` has eigenvalue
    /// `(-1)^{parity(i & z)}`, flipped when `negative`.
    fn measure_diagonal<R: Rng + ?Sized>(
        &self,
        z: usize,
        negative: bool,
        rng: &mut R,
    ) -> Result<MeasurementOutcome> {
        let is_plus = |i: usize| odd_parity(i & z) == negative;
        let (mut plus, mut minus) = (0.0, 0.0);
        for (i, a) in self.amplitudes.iter().enumerate() {
            if is_plus(i) {
                plus += a.norm_sqr();
            } else {
                minus += a.norm_sqr();
            }
        }
        if plus < BRANCH_FLOOR && minus < BRANCH_FLOOR {
            return Err(Error::Consistency(
                "both measurement branches vanish".into(),
            ));
        }
        let u: f64 = rng.random();
        let keep_plus = u < plus / (plus + minus);
        let probability = if keep_plus { plus } else { minus };
        let scale = 1.0 / probability.sqrt();
        let zero = Complex64::new(0.0, 0.0);
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if is_plus(i) == keep_plus {
                    a * scale
                } else {
                    zero
                }
            })
            .collect();
        Ok(MeasurementOutcome {
            value: if keep_plus { 1 } else { -1 },
            probability,
            post_state: StateVector {
                num_qubits: self.num_qubits,
                amplitudes,
            },
        })
    }

    /// Reduced density matrix of `subset`; `subset[k]` becomes bit `k` of the
    /// local index.
    pub fn reduced_density(&self, subset: &[usize]) -> Result<DensityMatrix> {
        if subset.len() > MAX_REDUCED_QUBITS {
            return Err(Error::Resource(format!(
                "reduced density over {} qubits (max {MAX_REDUCED_QUBITS})",
                subset.len()
            )));
        }
        if subset.is_empty() {
            return Err(Error::argument("empty subsystem"));
        }
        self.check_qubits(subset)?;
        let keep: u64 = subset.iter().fold(0, |m, &q| m | 1 << q);
        let env: Vec<usize> = (0..self.num_qubits)
            .filter(|q| keep >> q & 1 == 0)
            .collect();
        let local_dim = 1usize << subset.len();
        let env_dim = 1usize << env.len();
        let mut grid = vec![Complex64::new(0.0, 0.0); local_dim * env_dim];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let l = gather(i, subset);
            let e = gather(i, &env);
            grid[l * env_dim + e] = *a;
        }
        let mut data = vec![Complex64::new(0.0, 0.0); local_dim * local_dim];
        for r in 0..local_dim {
            for c in r..local_dim {
                let v: Complex64 = (0..env_dim)
                    .map(|e| grid[r * env_dim + e] * grid[c * env_dim + e].conj())
                    .sum();
                data[r * local_dim + c] = v;
                data[c * local_dim + r] = v.conj();
            }
        }
        Ok(DensityMatrix::from_parts(subset.to_vec(), data))
    }
}

/// Packs the bits of `index` at positions `qubits` into a dense local index.
fn gather(index: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &q)| acc | ((index >> q & 1) << k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::pauli::Pauli;
    use crate::seed::shot_rng;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-12
    }

    #[test]
    fn diagonal_readout_matches_projector() {
        let amps: Vec<Complex64> = (0..8)
            .map(|i| Complex64::new(1.0 + i as f64, 0.5 * i as f64))
            .collect();
        let psi = StateVector::normalized(amps).unwrap();
        for text in ["ZIZ", "-IZZ", "IIZ"] {
            let op: PauliString = text.parse().unwrap();
            let (plus, _) = psi.branch_probabilities(&op).unwrap();
            for shot in 0..20 {
                let out = psi.measure(&op, &mut shot_rng(5, text, shot)).unwrap();
                let (w, post) = psi.project(&op, out.value).unwrap().unwrap();
                assert!((w - out.probability).abs() < 1e-12);
                assert!(out.post_state.fidelity(&post).unwrap() > 1.0 - 1e-12);
                let u: f64 = shot_rng(5, text, shot).random();
                assert_eq!(out.value == 1, u < plus);
            }
        }
    }

    fn ghz3() -> StateVector {
        let mut s = StateVector::zero(3).unwrap();
        s.prepare_ghz([0, 1, 2]).unwrap();
        s
    }

    #[test]
    fn zero_state_and_guard() {
        let s = StateVector::zero(1).unwrap();
        assert_eq!(
            s.amplitudes(),
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        );
        let s = StateVector::zero(3).unwrap();
        assert!(close(s.amplitude(0), 1.0, 0.0));
        assert!((1..8).all(|i| close(s.amplitude(i), 0.0, 0.0)));
        assert!(matches!(StateVector::zero(25), Err(Error::Resource(_))));
        assert!(matches!(StateVector::zero(0), Err(Error::Resource(_))));
    }

    #[test]
    fn ghz_amplitudes() {
        let s = ghz3();
        for i in 0..8 {
            let want = if i == 0 || i == 7 { H } else { 0.0 };
            assert!(close(s.amplitude(i), want, 0.0), "index {i}");
        }
    }

    #[test]
    fn ghz_argument_and_precondition_errors() {
        let mut s = StateVector::zero(3).unwrap();
        assert!(matches!(s.prepare_ghz([0, 0, 1]), Err(Error::Argument(_))));
        assert!(matches!(s.prepare_ghz([0, 1, 3]), Err(Error::Argument(_))));
        let mut t = StateVector::basis(3, 2).unwrap();
        assert!(matches!(t.prepare_ghz([0, 1, 2]), Err(Error::Protocol(_))));
    }

    #[test]
    fn ghz_leaves_other_qubits_untouched() {
        let mut s = StateVector::zero(5).unwrap();
        s.apply_gate(&GateMatrix::pauli_x(), &[4]).unwrap();
        s.prepare_ghz([0, 2, 3]).unwrap();
        assert!((s.probability_one(4).unwrap() - 1.0).abs() < 1e-12);
        assert!(s.probability_one(1).unwrap() < 1e-12);
        assert!(close(s.amplitude(0b10000), H, 0.0));
        assert!(close(s.amplitude(0b11101), H, 0.0));
    }

    #[test]
    fn gate_examples() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_gate(&GateMatrix::hadamard(), &[0]).unwrap();
        assert!(close(s.amplitude(0), H, 0.0) && close(s.amplitude(1), H, 0.0));

        let before = ghz3();
        let mut after = before.clone();
        after
            .apply_gate(&GateMatrix::identity(1).unwrap(), &[1])
            .unwrap();
        assert!((before.fidelity(&after).unwrap() - 1.0).abs() < 1e-12);

        let mut s = StateVector::zero(2).unwrap();
        s.apply_gate(&GateMatrix::pauli_x(), &[1]).unwrap();
        assert!(close(s.amplitude(2), 1.0, 0.0));
    }

    #[test]
    fn gate_target_errors() {
        let mut s = StateVector::zero(2).unwrap();
        assert!(s.apply_gate(&GateMatrix::cnot(), &[0]).is_err());
        assert!(s.apply_gate(&GateMatrix::cnot(), &[1, 1]).is_err());
        assert!(s.apply_gate(&GateMatrix::hadamard(), &[2]).is_err());
    }

    #[test]
    fn cnot_orientation() {
        // control qubit 1 set, target qubit 0 flips: |10> (index 2) -> |11> (index 3)
        let mut s = StateVector::basis(2, 2).unwrap();
        s.apply_gate(&GateMatrix::cnot(), &[1, 0]).unwrap();
        assert!(close(s.amplitude(3), 1.0, 0.0));
    }

    #[test]
    fn pauli_examples() {
        let z = PauliString::single(1, 0, Pauli::Z).unwrap();
        let mut s = StateVector::zero(1).unwrap();
        s.apply_pauli(&z).unwrap();
        assert_eq!(s, StateVector::zero(1).unwrap());

        let y = PauliString::single(1, 0, Pauli::Y).unwrap();
        let mut s = StateVector::zero(1).unwrap();
        s.apply_pauli(&y).unwrap();
        assert!(close(s.amplitude(1), 0.0, 1.0) && close(s.amplitude(0), 0.0, 0.0));

        let xx: PauliString = "XX".parse().unwrap();
        let mut s = StateVector::normalized(vec![
            Complex64::new(0.1, 0.2),
            Complex64::new(-0.3, 0.0),
            Complex64::new(0.0, 0.7),
            Complex64::new(0.5, -0.1),
        ])
        .unwrap();
        let orig = s.clone();
        s.apply_pauli(&xx).unwrap();
        s.apply_pauli(&xx).unwrap();
        assert!((s.fidelity(&orig).unwrap() - 1.0).abs() < 1e-12);

        assert!(s.apply_pauli(&"XXX".parse().unwrap()).is_err());
    }

    #[test]
    fn expectation_examples() {
        let z: PauliString = "Z".parse().unwrap();
        assert!((StateVector::zero(1).unwrap().expectation(&z).unwrap() - 1.0).abs() < 1e-12);
        let g = ghz3();
        let xxx: PauliString = "XXX".parse().unwrap();
        let xyy: PauliString = "XYY".parse().unwrap();
        let zii: PauliString = "ZII".parse().unwrap();
        assert!((g.expectation(&xxx).unwrap() - 1.0).abs() < 1e-12);
        assert!((g.expectation(&xyy).unwrap() + 1.0).abs() < 1e-12);
        assert!(g.expectation(&zii).unwrap().abs() < 1e-12);
    }

    #[test]
    fn measurement_examples() {
        let mut rng = shot_rng(1, "unit", 0);
        let z: PauliString = "Z".parse().unwrap();
        let out = StateVector::zero(1).unwrap().measure(&z, &mut rng).unwrap();
        assert_eq!(out.value, 1);
        assert!((out.probability - 1.0).abs() < 1e-12);

        let out = ghz3()
            .measure(&"XXX".parse::<PauliString>().unwrap(), &mut rng)
            .unwrap();
        assert_eq!(out.value, 1);
        assert!((out.probability - 1.0).abs() < 1e-12);

        let x: PauliString = "X".parse().unwrap();
        let mut seen = [false, false];
        for shot in 0..64 {
            let out = StateVector::zero(1)
                .unwrap()
                .measure(&x, &mut shot_rng(3, "unit", shot))
                .unwrap();
            assert!((out.probability - 0.5).abs() < 1e-12);
            assert!((out.post_state.norm_sqr() - 1.0).abs() < 1e-12);
            seen[usize::from(out.value == 1)] = true;
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn fidelity_examples() {
        let zero = StateVector::zero(1).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        let plus = StateVector::normalized(vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert!((zero.fidelity(&zero).unwrap() - 1.0).abs() < 1e-12);
        assert!(zero.fidelity(&one).unwrap().abs() < 1e-12);
        assert!((zero.fidelity(&plus).unwrap() - 0.5).abs() < 1e-12);
        assert!(zero.fidelity(&StateVector::zero(2).unwrap()).is_err());
    }

    #[test]
    fn reduced_density_examples() {
        let r = ghz3().reduced_density(&[0]).unwrap();
        assert!(close(r.entry(0, 0), 0.5, 0.0) && close(r.entry(1, 1), 0.5, 0.0));
        assert!(close(r.entry(0, 1), 0.0, 0.0));

        let r = StateVector::zero(2).unwrap().reduced_density(&[1]).unwrap();
        assert!(close(r.entry(0, 0), 1.0, 0.0) && close(r.entry(1, 1), 0.0, 0.0));

        let r = ghz3().reduced_density(&[0, 1]).unwrap();
        assert!((r.purity() - 0.5).abs() < 1e-12);
        assert!((r.trace() - 1.0).abs() < 1e-12);

        let big = StateVector::zero(13).unwrap();
        let all: Vec<usize> = (0..13).collect();
        assert!(matches!(big.reduced_density(&all), Err(Error::Resource(_))));
    }

    #[test]
    fn non_hermitian_expectation_is_flagged() {
        use crate::quantum::observable::PauliSum;
        let iy =
            PauliSum::from("Z".parse::<PauliString>().unwrap()).scale(Complex64::new(0.0, 1.0));
        assert!(matches!(
            StateVector::zero(1).unwrap().expectation(&iy),
            Err(Error::Consistency(_))
        ));
    }
}
