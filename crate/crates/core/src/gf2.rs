//! Packed bit vectors and matrices over GF(2).

use std::fmt;

const WORD: usize = 64;

/// A fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, first character is index 0.
    pub fn parse_bits(text: &str) -> Option<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()
            .map(Self::from_bools)
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
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the elementwise product, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let tz = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        BitVec::from_bools(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A dense matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; all rows must share the column count `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged GF(2) matrix");
        Self { cols, rows }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    /// Row-vector times matrix: `v · self`.
    pub fn left_mul(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.rows.len(), "dimension mismatch");
        let mut out = BitVec::zeros(self.cols);
        for i in v.ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows.len(), "dimension mismatch");
        BitMatrix {
            cols: other.cols,
            rows: self.rows.iter().map(|r| other.left_mul(r)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut basis = RowBasis::new(self.cols);
        self.rows.iter().filter(|r| basis.insert(r)).count()
    }

    /// Inverse over GF(2), or `None` if the matrix is singular or not square.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.cols;
        let mut a = self.rows.clone();
        let mut inv: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r].get(col))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r].get(col) {
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Some(BitMatrix { cols: n, rows: inv })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.to_string()))
            .finish()
    }
}

/// Incrementally built echelon basis that remembers how each reduced row
/// is composed from the inserted vectors. Used for rank, span membership,
/// and expressing a vector as a combination of previously accepted vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBasis {
    width: usize,
    /// (pivot column, reduced row, combination over accepted inputs)
    entries: Vec<(usize, BitVec, Vec<usize>)>,
    accepted: usize,
}

impl RowBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            entries: Vec::new(),
            accepted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, Vec<usize>) {
        assert_eq!(v.len(), self.width, "dimension mismatch");
        let mut r = v.clone();
        let mut combo: Vec<usize> = Vec::new();
        for (pivot, row, row_combo) in &self.entries {
            if r.get(*pivot) {
                r.xor_assign(row);
                for &c in row_combo {
                    match combo.binary_search(&c) {
                        Ok(pos) => {
                            combo.remove(pos);
                        }
                        Err(pos) => combo.insert(pos, c),
                    }
                }
            }
        }
        (r, combo)
    }

    /// Inserts `v` if it is independent of the current span. Returns whether it was accepted.
    /// Accepted vectors are numbered 0, 1, 2, … in insertion order.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let (r, mut combo) = self.reduce(v);
        let pivot = r.ones().next();
        match pivot {
            None => false,
            Some(pivot) => {
                combo.push(self.accepted);
                combo.sort_unstable();
                self.accepted += 1;
                self.entries.push((pivot, r, combo));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Ascending indices of accepted vectors whose sum is `v`, if `v` is in the span.
    pub fn express(&self, v: &BitVec) -> Option<Vec<usize>> {
        let (r, combo) = self.reduce(v);
        r.is_zero().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let rows: Vec<BitVec> = rows
            .iter()
            .map(|r| BitVec::parse_bits(r).unwrap())
            .collect();
        BitMatrix::from_rows(rows[0].len(), rows)
    }

    #[test]
    fn ones_crosses_word_boundary() {
        let mut v = BitVec::zeros(130);
        for i in [0, 63, 64, 129] {
            v.set(i, true);
        }
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.count_ones(), 4);
    }

    #[test]
    fn inverse_of_identity() {
        let id = BitMatrix::identity(5);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&["110", "011", "001"]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), BitMatrix::identity(3));
        assert_eq!(inv.mul(&a), BitMatrix::identity(3));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(m(&["110", "011", "101"]).inverse().is_none());
        assert_eq!(m(&["110", "011", "101"]).rank(), 2);
    }

    #[test]
    fn express_returns_combination() {
        let mut basis = RowBasis::new(4);
        assert!(basis.insert(&BitVec::parse_bits("1100").unwrap()));
        assert!(basis.insert(&BitVec::parse_bits("0110").unwrap()));
        assert!(!basis.insert(&BitVec::parse_bits("1010").unwrap()));
        assert!(basis.insert(&BitVec::parse_bits("0001").unwrap()));
        let target = BitVec::parse_bits("1011").unwrap();
        let combo = basis.express(&target).unwrap();
        assert_eq!(combo, vec![0, 1, 2]);
        assert!(basis
            .express(&BitVec::parse_bits("1000").unwrap())
            .is_none());
    }
}
