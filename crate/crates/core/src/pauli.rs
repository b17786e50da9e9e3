//! n-qubit Pauli operators in binary `(x | z)` form.
//!
//! A [`PauliOp`] with bits `x`, `z` and phase exponent `k` denotes the
//! operator `i^k · X^x Z^z`, where `X^x Z^z = ⊗_j X^{x_j} Z^{z_j}`. In this
//! ordering `Y = i·XZ`, so the Hermitian `+Y` has phase exponent 1.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub const NON_IDENTITY: [Pauli1; 3] = [Pauli1::X, Pauli1::Y, Pauli1::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    /// Index in `I, X, Y, Z` order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z][i & 3]
    }

    pub fn letter(self) -> char {
        ['I', 'X', 'Y', 'Z'][self.index()]
    }
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Builds `i^phase · X^x Z^z`.
    pub fn from_parts(x: BitVec, z: BitVec, phase: u8) -> Self {
        assert_eq!(x.len(), z.len(), "x and z supports must have equal length");
        Self {
            x,
            z,
            phase: phase & 3,
        }
    }

    /// The Hermitian, positive-sign Pauli with the given support bits.
    pub fn hermitian(x: BitVec, z: BitVec) -> Self {
        let phase = (x.and_count(&z) & 3) as u8;
        Self::from_parts(x, z, phase)
    }

    /// Hermitian Pauli from a concatenated `(x | z)` vector.
    pub fn from_xz(xz: &BitVec) -> Self {
        let n = xz.len() / 2;
        Self::hermitian(xz.slice(0, n), xz.slice(n, n))
    }

    /// Weight-one Hermitian Pauli `p` on qubit `q`.
    pub fn single(n: usize, q: usize, p: Pauli1) -> Self {
        let mut out = Self::identity(n);
        out.set_local(q, p);
        out.phase = u8::from(p == Pauli1::Y);
        out
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    pub fn xz(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn local(&self, q: usize) -> Pauli1 {
        Pauli1::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Overwrites the support bits on qubit `q` without touching the phase.
    pub fn set_local(&mut self, q: usize, p: Pauli1) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    /// True when `x = z = 0`, whatever the phase.
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + self.x.and_count(&self.z)).is_multiple_of(2)
    }

    /// For Hermitian operators: `true` when the operator is `-1` times the
    /// positive Hermitian Pauli with the same support.
    pub fn is_negative(&self) -> bool {
        let base = (self.x.and_count(&self.z) & 3) as u8;
        (self.phase + 4 - base) & 3 == 2
    }

    /// Product `self · other` with exact phase.
    pub fn mul(&self, other: &PauliOp) -> PauliOp {
        assert_eq!(self.num_qubits(), other.num_qubits(), "dimension mismatch");
        let swap = (self.z.and_count(&other.x) & 1) as u8;
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        PauliOp {
            x,
            z,
            phase: (self.phase + other.phase + 2 * swap) & 3,
        }
    }

    /// `self ← self · other`.
    pub fn mul_assign(&mut self, other: &PauliOp) {
        let swap = (self.z.and_count(&other.x) & 1) as u8;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        self.phase = (self.phase + other.phase + 2 * swap) & 3;
    }

    pub fn commutes_with(&self, other: &PauliOp) -> bool {
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)).is_multiple_of(2)
    }

    /// Same support, phases ignored.
    pub fn same_support(&self, other: &PauliOp) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Multiplies in the global factor `i^k`.
    pub fn mul_phase(&mut self, k: u8) {
        self.phase = (self.phase + k) & 3;
    }

    /// Phase exponent relative to the Hermitian positive representative:
    /// the operator equals `i^k` times that representative.
    pub fn relative_phase(&self) -> u8 {
        let base = (self.x.and_count(&self.z) & 3) as u8;
        (self.phase + 4 - base) & 3
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][self.relative_phase() as usize];
        f.write_str(prefix)?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.local(q).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

/// Parses labels such as `XIZ`, `-YY` or `+iZ`; qubit 0 is the leftmost letter.
impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (rel, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1u8, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty Pauli label `{s}`")));
        }
        let n = body.chars().count();
        let mut p = PauliOp::identity(n);
        for (q, c) in body.chars().enumerate() {
            let letter = match c.to_ascii_uppercase() {
                'I' => Pauli1::I,
                'X' => Pauli1::X,
                'Y' => Pauli1::Y,
                'Z' => Pauli1::Z,
                _ => return Err(Error::Parse(format!("bad Pauli letter `{c}` in `{s}`"))),
            };
            p.set_local(q, letter);
        }
        let base = (p.x.and_count(&p.z) & 3) as u8;
        p.phase = (base + rel) & 3;
        Ok(p)
    }
}
