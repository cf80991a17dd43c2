use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::pauli::PauliString;
use crate::quantum::ALGEBRA_TOL;

/// Coefficients below this magnitude are dropped when simplifying.
const PRUNE_TOL: f64 = 1e-14;

/// A Hermitian operator that can act on amplitude vectors.
pub trait Measurable {
    fn num_qubits(&self) -> usize;

    /// Writes `self * input` into `out`.
    fn act_into(&self, input: &[Complex64], out: &mut [Complex64]);

    /// `(z_mask, negative)` when the operator is a single Z-type Pauli
    /// string, diagonal in the computational basis.
    fn diagonal(&self) -> Option<(u64, bool)> {
        None
    }

    fn act(&self, input: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); input.len()];
        self.act_into(input, &mut out);
        out
    }
}

impl Measurable for PauliString {
    fn num_qubits(&self) -> usize {
        PauliString::num_qubits(self)
    }

    fn act_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        PauliString::act_into(self, input, out)
    }

    fn diagonal(&self) -> Option<(u64, bool)> {
        (self.x_mask() == 0).then(|| (self.z_mask(), self.is_negative()))
    }
}

/// Complex linear combination of unsigned Pauli strings.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    num_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(num_qubits: usize) -> Self {
        PauliSum {
            num_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(num_qubits: usize) -> Result<Self> {
        Ok(PauliSum::from(PauliString::identity(num_qubits)?))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, p: PauliString, c: Complex64) {
        let (p, c) = if p.is_negative() {
            (p.unsigned(), -c)
        } else {
            (p, c)
        };
        let entry = self.terms.entry(p).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
    }

    fn pruned(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() > PRUNE_TOL);
        self
    }

    fn check_dims(&self, other: &PauliSum) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::argument(format!(
                "operators over {} and {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), *c);
        }
        Ok(out.pruned())
    }

    pub fn scale(&self, k: Complex64) -> PauliSum {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out.pruned()
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_dims(other)?;
        let mut out = PauliSum::zero(self.num_qubits);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (phase, r) = p.product(q)?;
                out.add_term(r, phase * a * b);
            }
        }
        Ok(out.pruned())
    }

    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.mul(other)?
            .add(&other.mul(self)?.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(p, c)| {
                p.is_identity() && (c - Complex64::new(1.0, 0.0)).norm() < ALGEBRA_TOL
            })
    }

    /// Hermitian iff every coefficient in the Pauli basis is real.
    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im.abs() < ALGEBRA_TOL)
    }

    pub fn support(&self) -> u64 {
        self.terms.keys().fold(0, |acc, p| acc | p.support())
    }
}

impl From<PauliString> for PauliSum {
    fn from(p: PauliString) -> Self {
        let mut s = PauliSum::zero(p.num_qubits());
        s.add_term(p, Complex64::new(1.0, 0.0));
        s
    }
}

impl Measurable for PauliSum {
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn act_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        let mut scratch = vec![Complex64::new(0.0, 0.0); input.len()];
        for (p, c) in &self.terms {
            p.act_into(input, &mut scratch);
            for (o, s) in out.iter_mut().zip(&scratch) {
                *o += c * s;
            }
        }
    }
}

/// A measurable ±1 observable: Hermitian and squaring to the identity.
///
/// Usually a single signed Pauli string, but conjugation through an entangling
/// unitary can in general produce a short sum of strings, so the handle keeps
/// the full Pauli expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    sum: PauliSum,
}

impl Observable {
    pub fn new(sum: PauliSum) -> Result<Self> {
        if !sum.is_hermitian() {
            return Err(Error::argument("observable is not Hermitian"));
        }
        if !sum.mul(&sum)?.is_identity() {
            return Err(Error::argument(
                "observable does not square to the identity",
            ));
        }
        Ok(Observable { sum })
    }

    pub fn as_sum(&self) -> &PauliSum {
        &self.sum
    }

    /// The signed Pauli string if the observable is a single term.
    pub fn as_pauli_string(&self) -> Option<PauliString> {
        if self.sum.len() != 1 {
            return None;
        }
        let (p, c) = self.sum.terms().next()?;
        if (c.re.abs() - 1.0).abs() > ALGEBRA_TOL {
            return None;
        }
        Some(if c.re < 0.0 { p.negated() } else { p.clone() })
    }

    pub fn support(&self) -> u64 {
        self.sum.support()
    }

    /// Exact algebraic commutation check.
    pub fn commutes(&self, other: &Observable) -> Result<bool> {
        if let (Some(p), Some(q)) = (self.as_pauli_string(), other.as_pauli_string()) {
            return p.commutes(&q);
        }
        Ok(self.sum.commutator(&other.sum)?.is_empty())
    }

    /// Product of two commuting observables, itself a ±1 observable.
    pub fn product(&self, other: &Observable) -> Result<Observable> {
        if !self.commutes(other)? {
            return Err(Error::argument(format!(
                "cannot multiply non-commuting observables {self} and {other}"
            )));
        }
        Observable::new(self.sum.mul(&other.sum)?)
    }

    pub fn negated(&self) -> Observable {
        Observable {
            sum: self.sum.scale(Complex64::new(-1.0, 0.0)),
        }
    }
}

impl From<PauliString> for Observable {
    fn from(p: PauliString) -> Self {
        Observable {
            sum: PauliSum::from(p),
        }
    }
}

impl Measurable for Observable {
    fn num_qubits(&self) -> usize {
        self.sum.num_qubits()
    }

    fn act_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        match self.as_pauli_string() {
            Some(p) => p.act_into(input, out),
            None => self.sum.act_into(input, out),
        }
    }

    fn diagonal(&self) -> Option<(u64, bool)> {
        self.as_pauli_string().and_then(|p| p.diagonal())
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_pauli_string() {
            return write!(f, "{p}");
        }
        for (k, (p, c)) in self.sum.terms().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "({:+.6})*{}",
                c.re,
                p.unsigned().to_string().trim_start_matches('+')
            )?;
        }
        Ok(())
    }
}

/// Frobenius norm of `AB - BA`, assembled column by column from the action of
/// both operators on every computational basis vector.
pub fn dense_commutator_norm<A: Measurable, B: Measurable>(a: &A, b: &B) -> Result<f64> {
    let n = a.num_qubits();
    if n != b.num_qubits() {
        return Err(Error::argument(
            "commutator of operators of different sizes",
        ));
    }
    if n > crate::quantum::MAX_QUBITS {
        return Err(Error::Resource(format!("dense commutator over {n} qubits")));
    }
    let dim = 1usize << n;
    let zero = Complex64::new(0.0, 0.0);
    let mut col = vec![zero; dim];
    let (mut tmp, mut ab, mut ba) = (vec![zero; dim], vec![zero; dim], vec![zero; dim]);
    let mut total = 0.0;
    for j in 0..dim {
        col.iter_mut().for_each(|c| *c = zero);
        col[j] = Complex64::new(1.0, 0.0);
        b.act_into(&col, &mut tmp);
        a.act_into(&tmp, &mut ab);
        a.act_into(&col, &mut tmp);
        b.act_into(&tmp, &mut ba);
        total += ab
            .iter()
            .zip(&ba)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>();
    }
    Ok(total.sqrt())
}
