//! Clifford operations in the symplectic representation.
//!
//! A [`CliffordOp`] on `n` qubits stores the images of the `2n` generators
//! `X_0 … X_{n-1}, Z_0 … Z_{n-1}` under conjugation, `g ↦ C g C†`. The
//! binary part of the images forms the `2n × 2n` symplectic matrix `s`
//! (row-vector convention: row `j` is the `(x | z)` support of the image of
//! generator `j`, and a Pauli with support `u` maps to support `u·s`). The
//! phase vector `v ∈ Z₄^{2n}` holds the exponent `k` of each image written as
//! `i^k · X^x Z^z`.
//!
//! A pair `(s, v)` is valid iff `s` is symplectic and every image is
//! Hermitian, i.e. `v_j ≡ x_j·z_j (mod 2)` for each row. For every coordinate
//! exactly two of the four values in `Z₄` are admissible.
//!
//! The representation carries no global phase, so `==` is equality up to
//! global phase.

use std::sync::OnceLock;

use crate::bits::{BitMatrix, BitVec};
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliOp};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordOp {
    n: usize,
    images: Vec<PauliOp>,
}

impl std::fmt::Debug for CliffordOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CliffordOp(n={})", self.n)?;
        for (j, img) in self.images.iter().enumerate() {
            let g = if j < self.n { 'X' } else { 'Z' };
            writeln!(f, "  {g}{} -> {img}", j % self.n.max(1))?;
        }
        Ok(())
    }
}

impl CliffordOp {
    pub fn identity(n: usize) -> Self {
        let mut images = Vec::with_capacity(2 * n);
        for q in 0..n {
            images.push(PauliOp::single(n, q, Pauli1::X));
        }
        for q in 0..n {
            images.push(PauliOp::single(n, q, Pauli1::Z));
        }
        Self { n, images }
    }

    /// Builds from generator images; checks Hermiticity and commutation.
    pub fn from_images(images: Vec<PauliOp>) -> Result<Self> {
        if !images.len().is_multiple_of(2) {
            return Err(Error::InvalidClifford("odd number of images".into()));
        }
        let n = images.len() / 2;
        if let Some(bad) = images.iter().find(|p| p.num_qubits() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.num_qubits(),
            });
        }
        let c = Self { n, images };
        c.validate()?;
        Ok(c)
    }

    /// Builds from a symplectic matrix and phase vector.
    pub fn from_parts(s: &BitMatrix, v: &[u8]) -> Result<Self> {
        let dim = s.nrows();
        if !dim.is_multiple_of(2) || s.ncols() != dim || v.len() != dim {
            return Err(Error::InvalidClifford(format!(
                "expected a square even-dimensional matrix and matching phase vector, got {}x{} and {}",
                s.nrows(),
                s.ncols(),
                v.len()
            )));
        }
        let n = dim / 2;
        let images = (0..dim)
            .map(|j| {
                let row = s.row(j);
                PauliOp::from_parts(row.slice(0, n), row.slice(n, n), v[j])
            })
            .collect();
        let c = Self { n, images };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if !is_valid_phase_vector(&self.symplectic(), &self.phases()) {
            return Err(Error::InvalidClifford(
                "phase vector gives a non-Hermitian generator image".into(),
            ));
        }
        if !self.symplectic().is_symplectic() {
            return Err(Error::InvalidClifford("matrix is not symplectic".into()));
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[PauliOp] {
        &self.images
    }

    pub fn image_of_x(&self, q: usize) -> &PauliOp {
        &self.images[q]
    }

    pub fn image_of_z(&self, q: usize) -> &PauliOp {
        &self.images[self.n + q]
    }

    /// The `2n × 2n` symplectic matrix (row-vector convention).
    pub fn symplectic(&self) -> BitMatrix {
        BitMatrix::from_rows(self.images.iter().map(PauliOp::xz).collect())
    }

    /// The length-`2n` phase vector over `Z₄`.
    pub fn phases(&self) -> Vec<u8> {
        self.images.iter().map(PauliOp::phase).collect()
    }

    /// Identity symplectic part with identity phases.
    pub fn acts_trivially(&self) -> bool {
        *self == Self::identity(self.n)
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.n != other {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other,
            });
        }
        Ok(())
    }

    /// `C P C†`, including the phase.
    pub fn conjugate_pauli(&self, p: &PauliOp) -> Result<PauliOp> {
        self.check_dim(p.num_qubits())?;
        Ok(self.conjugate_unchecked(p))
    }

    pub(crate) fn conjugate_unchecked(&self, p: &PauliOp) -> PauliOp {
        let mut out = PauliOp::identity(self.n);
        out.set_phase(p.phase());
        for q in p.x().iter_ones() {
            out.mul_assign(&self.images[q]);
        }
        for q in p.z().iter_ones() {
            out.mul_assign(&self.images[self.n + q]);
        }
        out
    }

    /// The Clifford implementing "`b` then `a`", i.e. the unitary `A·B`.
    pub fn compose(a: &CliffordOp, b: &CliffordOp) -> Result<CliffordOp> {
        a.check_dim(b.n)?;
        Ok(CliffordOp {
            n: a.n,
            images: b.images.iter().map(|g| a.conjugate_unchecked(g)).collect(),
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CliffordOp) -> Result<CliffordOp> {
        CliffordOp::compose(next, self)
    }

    pub fn invert(&self) -> CliffordOp {
        let n = self.n;
        let s = self.symplectic();
        let lambda = BitMatrix::symplectic_form(n);
        let s_inv = lambda.mul(&s.transpose()).mul(&lambda);
        let images = (0..2 * n)
            .map(|j| {
                let mut q = PauliOp::from_xz(s_inv.row(j));
                let r = self.conjugate_unchecked(&q);
                debug_assert_eq!(r.xz(), BitVec::unit(2 * n, j));
                // C q C† = i^t g_j with g_j Hermitian and phase-free.
                let t = r.phase();
                q.mul_phase((4 - t) & 3);
                q
            })
            .collect();
        CliffordOp { n, images }
    }

    /// Applies Hadamard on `q` after this Clifford.
    pub fn apply_h(&mut self, q: usize) {
        for img in &mut self.images {
            conj_h(img, q);
        }
    }

    /// Applies the phase gate `P = diag(1, i)` on `q` after this Clifford.
    pub fn apply_p(&mut self, q: usize) {
        for img in &mut self.images {
            conj_p(img, q);
        }
    }

    /// Applies `CNOT(control → target)` after this Clifford.
    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        for img in &mut self.images {
            conj_cnot(img, control, target);
        }
    }

    /// Applies the one-qubit Clifford with table index `idx` on `q`.
    pub fn apply_one_qubit(&mut self, q: usize, idx: u8) {
        let c = &one_qubit_table().entries[idx as usize];
        for img in &mut self.images {
            c.conjugate_local(img, q);
        }
    }

    /// Applies a Pauli gate (conjugation only flips signs).
    pub fn apply_pauli(&mut self, p: &PauliOp) {
        for img in &mut self.images {
            if !img.commutes_with(p) {
                img.mul_phase(2);
            }
        }
    }
}

/// Per-coordinate validity: each phase has the parity fixed by its row.
pub fn is_valid_phase_vector(s: &BitMatrix, v: &[u8]) -> bool {
    let n = s.ncols() / 2;
    v.len() == s.nrows()
        && (0..s.nrows()).all(|j| {
            let row = s.row(j);
            let xz = row.slice(0, n).and_count(&row.slice(n, n));
            (v[j] as usize + xz).is_multiple_of(2)
        })
}

/// Required parity of each phase coordinate for symplectic matrix `s`.
pub fn phase_parities(s: &BitMatrix) -> Vec<u8> {
    let n = s.ncols() / 2;
    (0..s.nrows())
        .map(|j| {
            let row = s.row(j);
            (row.slice(0, n).and_count(&row.slice(n, n)) % 2) as u8
        })
        .collect()
}

#[inline]
pub(crate) fn conj_h(p: &mut PauliOp, q: usize) {
    let (x, z) = (p.x().get(q), p.z().get(q));
    if x != z {
        p.set_local(q, Pauli1::from_bits(z, x));
    } else if x {
        p.mul_phase(2);
    }
}

#[inline]
pub(crate) fn conj_p(p: &mut PauliOp, q: usize) {
    if p.x().get(q) {
        let z = p.z().get(q);
        p.set_local(q, Pauli1::from_bits(true, !z));
        p.mul_phase(1);
    }
}

#[inline]
pub(crate) fn conj_cnot(p: &mut PauliOp, c: usize, t: usize) {
    let xc = p.x().get(c);
    let zt = p.z().get(t);
    if xc {
        let lt = p.local(t);
        let (x, z) = lt.bits();
        p.set_local(t, Pauli1::from_bits(!x, z));
    }
    if zt {
        let lc = p.local(c);
        let (x, z) = lc.bits();
        p.set_local(c, Pauli1::from_bits(x, !z));
    }
}

/// A one-qubit Clifford, stored as the images of the four local factors
/// `I, X, XZ, Z` (indexed by `x | z << 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneQubitClifford {
    /// `(phase, image)` for each local factor.
    local: [(u8, Pauli1); 4],
}

impl OneQubitClifford {
    fn from_xz_images(x_img: (u8, Pauli1), z_img: (u8, Pauli1)) -> Self {
        // XZ ↦ (i^a X^x1 Z^z1)(i^b X^x2 Z^z2) = i^{a+b+2 z1 x2} X^{x1^x2} Z^{z1^z2}
        let (x1, z1) = x_img.1.bits();
        let (x2, z2) = z_img.1.bits();
        let ph = (x_img.0 + z_img.0 + 2 * u8::from(z1 && x2)) & 3;
        let xz_img = (ph, Pauli1::from_bits(x1 ^ x2, z1 ^ z2));
        Self {
            local: [(0, Pauli1::I), x_img, z_img, xz_img],
        }
    }

    /// Image of `X` as `(phase exponent, support)`.
    pub fn x_image(&self) -> (u8, Pauli1) {
        self.local[1]
    }

    /// Image of `Z` as `(phase exponent, support)`.
    pub fn z_image(&self) -> (u8, Pauli1) {
        self.local[2]
    }

    /// Image of the Hermitian single-qubit Pauli `p`, as `(sign is negative, support)`.
    pub fn map_hermitian(&self, p: Pauli1) -> (bool, Pauli1) {
        let (x, z) = p.bits();
        let (ph, img) = self.local[usize::from(x) | usize::from(z) << 1];
        // Hermitian Y = i·XZ carries one extra factor of i on both sides.
        let ph = (ph + u8::from(x && z)) & 3;
        let (ix, iz) = img.bits();
        let rel = (ph + 4 - u8::from(ix && iz)) & 3;
        debug_assert!(rel % 2 == 0);
        (rel == 2, img)
    }

    #[inline]
    pub(crate) fn conjugate_local(&self, p: &mut PauliOp, q: usize) {
        let (x, z) = (p.x().get(q), p.z().get(q));
        let (ph, img) = self.local[usize::from(x) | usize::from(z) << 1];
        p.set_local(q, img);
        p.mul_phase(ph);
    }

    /// The `(s, v)` pair of this element: `s` row-major `[xX, zX, xZ, zZ]`.
    pub fn sv(&self) -> ([bool; 4], [u8; 2]) {
        let (px, ix) = self.x_image();
        let (pz, iz) = self.z_image();
        let (a, b) = ix.bits();
        let (c, d) = iz.bits();
        ([a, b, c, d], [px, pz])
    }

    pub fn to_clifford(&self) -> CliffordOp {
        let (s, v) = self.sv();
        let m = BitMatrix::from_u8(&[&[s[0] as u8, s[1] as u8], &[s[2] as u8, s[3] as u8]]);
        CliffordOp::from_parts(&m, &v).expect("table entries are valid")
    }
}

/// The 24 one-qubit Cliffords (mod global phase) in canonical order,
/// with multiplication, inverses and shortest words over `{H, P}`.
pub struct OneQubitTable {
    pub entries: Vec<OneQubitClifford>,
    /// `mul[a][b]` is "`b` then `a`".
    pub mul: Vec<[u8; 24]>,
    pub inv: [u8; 24],
    /// Shortest word over `{H, P}` in time order (`false` = H, `true` = P).
    pub hp_words: Vec<Vec<HpLetter>>,
    pub identity: u8,
    pub h: u8,
    pub p: u8,
    pub x: u8,
    pub y: u8,
    pub z: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpLetter {
    H,
    P,
}

impl OneQubitTable {
    fn build() -> Self {
        let mut entries = Vec::new();
        // Enumerate (s, v) lexicographically: s row-major bits, then v.
        for sbits in 0u8..16 {
            let s = [
                sbits & 8 != 0,
                sbits & 4 != 0,
                sbits & 2 != 0,
                sbits & 1 != 0,
            ];
            let m = BitMatrix::from_u8(&[&[s[0] as u8, s[1] as u8], &[s[2] as u8, s[3] as u8]]);
            if !m.is_symplectic() {
                continue;
            }
            for v0 in 0u8..4 {
                for v1 in 0u8..4 {
                    if CliffordOp::from_parts(&m, &[v0, v1]).is_ok() {
                        entries.push(OneQubitClifford::from_xz_images(
                            (v0, Pauli1::from_bits(s[0], s[1])),
                            (v1, Pauli1::from_bits(s[2], s[3])),
                        ));
                    }
                }
            }
        }
        assert_eq!(entries.len(), 24);

        let index_of = |c: &CliffordOp| -> u8 {
            entries
                .iter()
                .position(|e| e.to_clifford() == *c)
                .expect("closed under composition") as u8
        };
        let cliffs: Vec<CliffordOp> = entries.iter().map(OneQubitClifford::to_clifford).collect();
        let mut mul = vec![[0u8; 24]; 24];
        for a in 0..24 {
            for b in 0..24 {
                let ab = CliffordOp::compose(&cliffs[a], &cliffs[b]).unwrap();
                mul[a][b] = index_of(&ab);
            }
        }
        let mut inv = [0u8; 24];
        for a in 0..24 {
            inv[a] = index_of(&cliffs[a].invert());
        }

        let named = |f: &dyn Fn(&mut CliffordOp)| {
            let mut c = CliffordOp::identity(1);
            f(&mut c);
            index_of(&c)
        };
        let identity = named(&|_| {});
        let h = named(&|c| c.apply_h(0));
        let p = named(&|c| c.apply_p(0));
        let pauli = |l: &str| {
            let mut c = CliffordOp::identity(1);
            c.apply_pauli(&l.parse().unwrap());
            index_of(&c)
        };
        let (x, y, z) = (pauli("X"), pauli("Y"), pauli("Z"));

        // Breadth-first search for shortest {H, P} words.
        let mut hp_words: Vec<Option<Vec<HpLetter>>> = vec![None; 24];
        hp_words[identity as usize] = Some(vec![]);
        let mut frontier = vec![identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &c in &frontier {
                for (letter, g) in [(HpLetter::H, h), (HpLetter::P, p)] {
                    // word then letter
                    let d = mul[g as usize][c as usize];
                    if hp_words[d as usize].is_none() {
                        let mut w = hp_words[c as usize].clone().unwrap();
                        w.push(letter);
                        hp_words[d as usize] = Some(w);
                        next.push(d);
                    }
                }
            }
            frontier = next;
        }
        let hp_words = hp_words.into_iter().map(Option::unwrap).collect();

        Self {
            entries,
            mul,
            inv,
            hp_words,
            identity,
            h,
            p,
            x,
            y,
            z,
        }
    }

    /// "`first` then `second`".
    pub fn then(&self, first: u8, second: u8) -> u8 {
        self.mul[second as usize][first as usize]
    }

    pub fn pauli_index(&self, p: Pauli1) -> u8 {
        match p {
            Pauli1::I => self.identity,
            Pauli1::X => self.x,
            Pauli1::Y => self.y,
            Pauli1::Z => self.z,
        }
    }

    /// Cheapest element mapping `from` to `±to` (cost = {H,P} word length).
    pub fn cheapest_mapping(&self, from: Pauli1, to: Pauli1) -> u8 {
        self.cheapest_where(|c| c.map_hermitian(from).1 == to)
    }

    pub fn cheapest_where(&self, pred: impl Fn(&OneQubitClifford) -> bool) -> u8 {
        (0..24u8)
            .filter(|&i| pred(&self.entries[i as usize]))
            .min_by_key(|&i| (self.hp_words[i as usize].len(), i))
            .expect("some element satisfies the predicate")
    }
}

pub fn one_qubit_table() -> &'static OneQubitTable {
    static TABLE: OnceLock<OneQubitTable> = OnceLock::new();
    TABLE.get_or_init(OneQubitTable::build)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_images() {
        let mut c = CliffordOp::identity(1);
        c.apply_h(0);
        assert_eq!(c.symplectic(), BitMatrix::from_u8(&[&[0, 1], &[1, 0]]));
        assert_eq!(c.conjugate_pauli(&p("X")).unwrap(), p("Z"));
        assert_eq!(c.conjugate_pauli(&p("Y")).unwrap(), p("-Y"));
    }

    #[test]
    fn phase_gate_squares_to_z() {
        let mut pp = CliffordOp::identity(1);
        pp.apply_p(0);
        pp.apply_p(0);
        let mut z = CliffordOp::identity(1);
        z.apply_pauli(&p("Z"));
        assert_eq!(pp, z);
    }

    #[test]
    fn cnot_images() {
        let mut c = CliffordOp::identity(2);
        c.apply_cnot(0, 1);
        assert_eq!(c.conjugate_pauli(&p("XI")).unwrap(), p("XX"));
        assert_eq!(c.conjugate_pauli(&p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(c.conjugate_pauli(&p("YI")).unwrap(), p("YX"));
    }

    #[test]
    fn table_has_24_distinct_entries() {
        let t = one_qubit_table();
        assert_eq!(t.entries.len(), 24);
        for a in 0..24u8 {
            assert_eq!(t.then(a, t.inv[a as usize]), t.identity);
        }
        assert!(t.hp_words.iter().all(|w| w.len() <= 6));
        assert_eq!(t.hp_words[t.h as usize], vec![HpLetter::H]);
    }

    #[test]
    fn table_is_lexicographic() {
        let t = one_qubit_table();
        let keys: Vec<_> = t.entries.iter().map(|e| e.sv()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn invalid_phase_is_rejected() {
        let s = BitMatrix::identity(2);
        assert!(CliffordOp::from_parts(&s, &[1, 0]).is_err());
        assert!(CliffordOp::from_parts(&s, &[2, 0]).is_ok());
        let not_symplectic = BitMatrix::from_u8(&[&[1, 1], &[1, 1]]);
        assert!(CliffordOp::from_parts(&not_symplectic, &[1, 1]).is_err());
    }

    #[test]
    fn compose_with_identity() {
        let mut c = CliffordOp::identity(2);
        c.apply_h(0);
        c.apply_cnot(0, 1);
        c.apply_p(1);
        let id = CliffordOp::identity(2);
        assert_eq!(CliffordOp::compose(&c, &id).unwrap(), c);
        assert_eq!(CliffordOp::compose(&id, &c).unwrap(), c);
        assert!(CliffordOp::compose(&c.invert(), &c)
            .unwrap()
            .acts_trivially());
    }

    #[test]
    fn dimension_mismatch() {
        let a = CliffordOp::identity(2);
        let b = CliffordOp::identity(3);
        assert!(matches!(
            CliffordOp::compose(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(a.conjugate_pauli(&p("XYZ")).is_err());
    }
}
