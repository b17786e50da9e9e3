//! Packed GF(2) vectors and matrices.
//!
//! Bits are stored little-endian inside `u64` words; row operations work a
//! word at a time. Everything above this module (Pauli strings, symplectic
//! matrices, CNOT-circuit synthesis) is built on these two types.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Number of positions where both vectors are one.
    pub fn and_count(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        BitVec {
            len: self.len,
            words,
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BitVec {
    type Err = crate::error::Error;

    /// Parses a string of `0`/`1` characters, index 0 first.
    fn from_str(s: &str) -> crate::error::Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(crate::error::Error::Parse(format!(
                    "invalid bit `{c}` in `{s}`"
                ))),
            })
            .collect::<crate::error::Result<Vec<bool>>>()?;
        Ok(BitVec::from_bools(&bits))
    }
}

/// A dense matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows, cols }
    }

    /// Builds a matrix from nested 0/1 literals; handy in tests.
    pub fn from_u8(rows: &[&[u8]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
                .collect(),
        )
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut BitVec {
        &mut self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let (a, b) = if src < dst {
            let (lo, hi) = self.rows.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        b.xor_assign(a);
    }

    /// `col[dst] ^= col[src]`.
    pub fn add_col(&mut self, src: usize, dst: usize) {
        for row in &mut self.rows {
            if row.get(src) {
                row.flip(dst);
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix {
            rows,
            cols: other.cols,
        }
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.nrows());
        let mut acc = BitVec::zeros(self.cols);
        for k in v.iter_ones() {
            acc.xor_assign(&self.rows[k]);
        }
        acc
    }

    /// Matrix times column vector: `self * v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.nrows()).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for r in 0..m.nrows() {
                if r != rank && m.get(r, c) {
                    m.add_row(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let mut m = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| m.get(r, c))?;
            m.swap_rows(c, p);
            inv.swap_rows(c, p);
            for r in 0..n {
                if r != c && m.get(r, c) {
                    m.add_row(c, r);
                    inv.add_row(c, r);
                }
            }
        }
        Some(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.cols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(r, row)| row.count_ones() == 1 && row.get(r))
    }

    /// The standard symplectic form `[[0, I], [I, 0]]` on `2n` coordinates.
    pub fn symplectic_form(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            m.set(i, n + i, true);
            m.set(n + i, i, true);
        }
        m
    }

    /// `Sᵀ Λ S = Λ`.
    pub fn is_symplectic(&self) -> bool {
        if self.nrows() != self.cols || !self.cols.is_multiple_of(2) {
            return false;
        }
        let lambda = BitMatrix::symplectic_form(self.cols / 2);
        self.transpose().mul(&lambda).mul(self) == lambda
    }

    /// One solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.nrows(), "right-hand side length mismatch");
        let mut aug = BitMatrix::zeros(self.nrows(), self.cols + 1);
        for r in 0..self.nrows() {
            for c in self.rows[r].iter_ones() {
                aug.set(r, c, true);
            }
            aug.set(r, self.cols, b.get(r));
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..aug.nrows()).find(|&r| aug.get(r, c)) else {
                continue;
            };
            aug.swap_rows(rank, p);
            for r in 0..aug.nrows() {
                if r != rank && aug.get(r, c) {
                    aug.add_row(rank, r);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        if (rank..aug.nrows()).any(|r| aug.get(r, self.cols)) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, aug.get(r, self.cols));
        }
        Some(x)
    }

    /// Packs the matrix into a single bit string, row-major.
    pub fn to_bitvec(&self) -> BitVec {
        let mut out = BitVec::zeros(self.nrows() * self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.set(r * self.cols + c, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Symplectic inner product of two `(x | z)` vectors of length `2n`.
pub fn symplectic_inner(a: &BitVec, b: &BitVec) -> bool {
    let n = a.len() / 2;
    let mut acc = false;
    for i in 0..n {
        acc ^= (a.get(i) & b.get(n + i)) ^ (a.get(n + i) & b.get(i));
    }
    acc
}
