use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register a Pauli string can address (bit masks are `u64`).
pub const MAX_PAULI_QUBITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Single-site product `self * other = i^k * result`, returned as `(k, result)`.
    fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }
}

/// Signed tensor product of single-qubit Paulis.
///
/// Stored as symplectic bit masks: qubit `q` carries X if only bit `q` of `x`
/// is set, Z if only bit `q` of `z` is set, and Y if both are. The operator is
/// always Hermitian, unitary and squares to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    num_qubits: usize,
    x: u64,
    z: u64,
    negative: bool,
}

impl PauliString {
    pub fn identity(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_PAULI_QUBITS {
            return Err(Error::Resource(format!(
                "pauli string over {num_qubits} qubits (allowed 1..={MAX_PAULI_QUBITS})"
            )));
        }
        Ok(PauliString {
            num_qubits,
            x: 0,
            z: 0,
            negative: false,
        })
    }

    /// Builds a string from `(qubit, factor)` pairs; unlisted qubits are identity.
    pub fn from_factors(num_qubits: usize, factors: &[(usize, Pauli)]) -> Result<Self> {
        let mut p = Self::identity(num_qubits)?;
        let mut seen = 0u64;
        for &(q, f) in factors {
            if q >= num_qubits {
                return Err(Error::argument(format!(
                    "qubit {q} out of range for {num_qubits} qubits"
                )));
            }
            if seen & (1 << q) != 0 {
                return Err(Error::argument(format!("qubit {q} listed twice")));
            }
            seen |= 1 << q;
            p.set(q, f);
        }
        Ok(p)
    }

    pub fn single(num_qubits: usize, qubit: usize, factor: Pauli) -> Result<Self> {
        Self::from_factors(num_qubits, &[(qubit, factor)])
    }

    pub(crate) fn from_masks(num_qubits: usize, x: u64, z: u64, negative: bool) -> Self {
        PauliString {
            num_qubits,
            x,
            z,
            negative,
        }
    }

    fn set(&mut self, q: usize, f: Pauli) {
        let (xb, zb) = f.bits();
        let bit = 1u64 << q;
        self.x = if xb { self.x | bit } else { self.x & !bit };
        self.z = if zb { self.z | bit } else { self.z & !bit };
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn factor(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn factors(&self) -> Vec<Pauli> {
        (0..self.num_qubits).map(|q| self.factor(q)).collect()
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn negated(&self) -> Self {
        PauliString {
            negative: !self.negative,
            ..self.clone()
        }
    }

    /// The same factors with sign `+1`.
    pub fn unsigned(&self) -> Self {
        PauliString {
            negative: false,
            ..self.clone()
        }
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Bit mask of qubits carrying a non-identity factor.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    fn check_dims(&self, other: &PauliString) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::argument(format!(
                "pauli strings over {} and {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }

    /// True iff the operators commute. Counts the sites where both factors are
    /// non-identity and differ; an even count means they commute.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_dims(other)?;
        let both = self.support() & other.support();
        let same = !(self.x ^ other.x) & !(self.z ^ other.z);
        Ok((both & !same).count_ones().is_multiple_of(2))
    }

    /// Operator product `self * other`, returned as a phase and an unsigned
    /// string, such that `self * other = phase * result`.
    pub fn product(&self, other: &PauliString) -> Result<(Complex64, PauliString)> {
        self.check_dims(other)?;
        let mut power = 0u8;
        let mut out = PauliString::from_masks(self.num_qubits, 0, 0, false);
        for q in 0..self.num_qubits {
            let (k, f) = self.factor(q).mul(other.factor(q));
            power += k;
            out.set(q, f);
        }
        if self.negative != other.negative {
            power += 2;
        }
        Ok((i_pow(power), out))
    }

    /// Product of two commuting strings, which is again a signed Pauli string.
    pub fn commuting_product(&self, other: &PauliString) -> Result<PauliString> {
        if !self.commutes(other)? {
            return Err(Error::argument(format!(
                "{self} and {other} anticommute; their product is not Hermitian"
            )));
        }
        let (phase, mut out) = self.product(other)?;
        debug_assert!(phase.im.abs() < 1e-12);
        out.negative = phase.re < 0.0;
        Ok(out)
    }

    /// Writes `P * input` into `out`. Both slices have length `2^num_qubits`.
    ///
    /// Per basis index `j` the action is `P|j> = phase(j) |j ^ x>` with
    /// `phase(j) = sign * i^{#Y} * (-1)^{popcount(j & z)}`.
    pub(crate) fn act_into(&self, input: &[Complex64], out: &mut [Complex64]) {
        let (x, z) = (self.x as usize, self.z as usize);
        let sign = |i: usize| if odd_parity((i ^ x) & z) { -1.0 } else { 1.0 };
        let k = (self.x & self.z).count_ones() as u8 + if self.negative { 2 } else { 0 };
        let cells = out.iter_mut().enumerate();
        match k % 4 {
            0 => cells.for_each(|(i, o)| *o = input[i ^ x] * sign(i)),
            1 => cells.for_each(|(i, o)| {
                let a = input[i ^ x] * sign(i);
                *o = Complex64::new(-a.im, a.re);
            }),
            2 => cells.for_each(|(i, o)| *o = input[i ^ x] * -sign(i)),
            _ => cells.for_each(|(i, o)| {
                let a = input[i ^ x] * sign(i);
                *o = Complex64::new(a.im, -a.re);
            }),
        }
    }
}

/// Parity of the set bits of an index below `2^32`.
#[inline]
pub(crate) fn odd_parity(v: usize) -> bool {
    let mut v = v as u32;
    v ^= v >> 16;
    v ^= v >> 8;
    v ^= v >> 4;
    (0x6996u32 >> (v & 0xf)) & 1 == 1
}

/// `i^k`.
pub(crate) fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Symplectic commutation test for two Pauli strings.
pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.commutes(q)
}

impl fmt::Display for PauliString {
    /// Dense form with qubit 0 first, e.g. `+XYY` or `-ZIZ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        for q in 0..self.num_qubits {
            write!(f, "{}", self.factor(q).letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses the dense form written by `Display`; the leading sign is optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let mut p = PauliString::identity(body.len())?;
        for (q, c) in body.chars().enumerate() {
            let f = match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(Error::argument(format!("bad pauli letter {other:?}"))),
            };
            p.set(q, f);
        }
        p.negative = negative;
        Ok(p)
    }
}
