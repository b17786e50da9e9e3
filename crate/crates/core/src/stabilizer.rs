//! Stabilizer states as signed generator tableaux.

use std::fmt;

use crate::bits::{BitMatrix, BitVec};
use crate::clifford::CliffordOp;
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliOp};

/// An `n`-qubit stabilizer state given by `n` commuting, independent,
/// Hermitian generators.
///
/// Equality compares canonical forms, so two tableaux describing the same
/// state are equal.
#[derive(Clone)]
pub struct StabilizerState {
    n: usize,
    generators: Vec<PauliOp>,
    canonical: bool,
}

impl StabilizerState {
    /// `|0…0⟩`, stabilized by `Z_0 … Z_{n-1}`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            generators: (0..n).map(|q| PauliOp::single(n, q, Pauli1::Z)).collect(),
            canonical: true,
        }
    }

    /// The computational basis state `|s⟩`.
    pub fn basis(bits: &BitVec) -> Self {
        let mut s = Self::zero(bits.len());
        for q in bits.iter_ones() {
            s.generators[q].mul_phase(2);
        }
        s
    }

    pub fn from_generators(generators: Vec<PauliOp>) -> Result<Self> {
        let n = generators.len();
        for g in &generators {
            if g.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.num_qubits(),
                });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidState(format!(
                    "generator {g} is not Hermitian"
                )));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            if generators[..i].iter().any(|b| !a.commutes_with(b)) {
                return Err(Error::InvalidState("generators do not commute".into()));
            }
        }
        let m = BitMatrix::from_rows(generators.iter().map(PauliOp::xz).collect());
        if m.rank() != n {
            return Err(Error::InvalidState("generators are not independent".into()));
        }
        let mut s = Self {
            n,
            generators,
            canonical: false,
        };
        s.canonicalize();
        Ok(s)
    }

    /// The state `C|0…0⟩`.
    pub fn from_clifford(c: &CliffordOp) -> Self {
        let n = c.num_qubits();
        let mut s = Self {
            n,
            generators: (0..n).map(|q| c.image_of_z(q).clone()).collect(),
            canonical: false,
        };
        s.canonicalize();
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Reduced row-echelon form over the interleaved column order
    /// `x_0, z_0, x_1, z_1, …`, with signs carried through the products.
    pub fn canonicalize(&mut self) {
        if self.canonical {
            return;
        }
        let n = self.n;
        let mut row = 0;
        for col in 0..2 * n {
            if row == n {
                break;
            }
            let (q, is_z) = (col / 2, col % 2 == 1);
            let bit = |p: &PauliOp| if is_z { p.z().get(q) } else { p.x().get(q) };
            let Some(piv) = (row..n).find(|&r| bit(&self.generators[r])) else {
                continue;
            };
            self.generators.swap(row, piv);
            let pivot = self.generators[row].clone();
            for r in 0..n {
                if r != row && bit(&self.generators[r]) {
                    self.generators[r].mul_assign(&pivot);
                }
            }
            row += 1;
        }
        self.canonical = true;
    }

    /// True iff `±p` lies in the stabilizer group, i.e. `p` commutes with
    /// every generator.
    pub fn is_eigenstate(&self, p: &PauliOp) -> Result<bool> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        Ok(self.generators.iter().all(|g| g.commutes_with(p)))
    }

    /// The tableau of `C|ψ⟩`.
    pub fn apply_clifford(&self, c: &CliffordOp) -> Result<Self> {
        if c.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: c.num_qubits(),
            });
        }
        let mut s = Self {
            n: self.n,
            generators: self
                .generators
                .iter()
                .map(|g| c.conjugate_unchecked(g))
                .collect(),
            canonical: false,
        };
        s.canonicalize();
        Ok(s)
    }

    /// Applies a Pauli: generators anticommuting with it flip sign.
    pub fn apply_pauli(&self, p: &PauliOp) -> Self {
        let mut s = self.clone();
        for g in &mut s.generators {
            if !g.commutes_with(p) {
                g.mul_phase(2);
            }
        }
        s.canonical = false;
        s.canonicalize();
        s
    }

    /// If the state is a computational basis state `|s⟩`, returns `s`.
    pub fn as_basis_state(&self) -> Option<BitVec> {
        let mut s = self.clone();
        s.canonicalize();
        let mut bits = BitVec::zeros(self.n);
        for (q, g) in s.generators.iter().enumerate() {
            if !g.x().is_zero() || g.z().count_ones() != 1 || !g.z().get(q) {
                return None;
            }
            bits.set(q, g.is_negative());
        }
        Some(bits)
    }

    /// A Clifford `C` with `C|0…0⟩` equal to this state.
    pub fn to_clifford(&self) -> CliffordOp {
        let n = self.n;
        let stab = BitMatrix::from_rows(self.generators.iter().map(PauliOp::xz).collect());
        // Rows of `stab · Λ` give symplectic products with the generators.
        let lambda = BitMatrix::symplectic_form(n);
        let a = stab.mul(&lambda);
        let mut destab: Vec<BitVec> = (0..n)
            .map(|j| {
                a.solve(&BitVec::unit(n, j))
                    .expect("independent generators")
            })
            .collect();
        for j in 0..n {
            for i in 0..j {
                if crate::bits::symplectic_inner(&destab[i], &destab[j]) {
                    let s_i = stab.row(i).clone();
                    destab[j].xor_assign(&s_i);
                }
            }
        }
        let mut images: Vec<PauliOp> = destab.iter().map(PauliOp::from_xz).collect();
        images.extend(self.generators.iter().cloned());
        CliffordOp::from_images(images).expect("symplectic completion")
    }
}

impl PartialEq for StabilizerState {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.canonicalize();
        b.canonicalize();
        a.generators == b.generators
    }
}

impl Eq for StabilizerState {}

impl fmt::Debug for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "StabilizerState[{}]", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn bell_state() {
        let mut c = CliffordOp::identity(2);
        c.apply_h(0);
        c.apply_cnot(0, 1);
        let s = StabilizerState::zero(2).apply_clifford(&c).unwrap();
        let bell = StabilizerState::from_generators(vec![p("XX"), p("ZZ")]).unwrap();
        assert_eq!(s, bell);
        assert!(s.is_eigenstate(&p("YY")).unwrap());
        assert!(!s.is_eigenstate(&p("XI")).unwrap());
    }

    #[test]
    fn rejects_invalid_tableaux() {
        assert!(StabilizerState::from_generators(vec![p("XI"), p("ZI")]).is_err());
        assert!(StabilizerState::from_generators(vec![p("XX"), p("XX")]).is_err());
        assert!(StabilizerState::from_generators(vec![p("+iX")]).is_err());
    }

    #[test]
    fn to_clifford_prepares_state() {
        let s = StabilizerState::from_generators(vec![p("-XY"), p("ZX")]).unwrap();
        let c = s.to_clifford();
        assert_eq!(StabilizerState::from_clifford(&c), s);
    }

    #[test]
    fn basis_state_detection() {
        let bits = BitVec::from_bools(&[true, false, true]);
        let s = StabilizerState::basis(&bits);
        assert_eq!(s.as_basis_state(), Some(bits));
        let plus = StabilizerState::from_generators(vec![p("X")]).unwrap();
        assert_eq!(plus.as_basis_state(), None);
    }
}
