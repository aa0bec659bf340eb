//! Bit-packed vectors and matrices over GF(2).
//!
//! Coordinate `i` of a vector lives in bit `i % 64` of word `i / 64`. Bits past
//! `len` are always zero, which lets weight, equality and hashing work on
//! whole words.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector { len, words: vec![u64::MAX; words_for(len)] };
        v.clear_tail();
        v
    }

    /// Unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut v = BitVector::zeros(0);
        for b in bits {
            v.push(b);
        }
        v
    }

    /// Builds a vector from 0/1 bytes.
    pub fn from_bytes01(bits: &[u8]) -> Self {
        Self::from_bools(bits.iter().map(|&b| b != 0))
    }

    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &p in positions {
            v.set(p, true);
        }
        v
    }

    /// Vector of length `len <= 64` whose coordinate `i` is bit `i` of `word`.
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= WORD, "from_word needs len <= 64");
        let mut v = BitVector { len, words: if len == 0 { vec![] } else { vec![word] } };
        v.clear_tail();
        v
    }

    /// Inverse of [`BitVector::from_word`]; `None` when longer than 64.
    pub fn as_word(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Builds a vector from packed words in the internal layout.
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let mut v = BitVector { len, words: words[..words_for(len)].to_vec() };
        v.clear_tail();
        v
    }

    pub fn words(&self) -> &[u64] {
        &self.words
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
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones & 1 == 1
    }

    pub fn distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "distance between vectors with different lengths");
        self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }

    /// Positions of the set bits, increasing.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.ones_iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bytes01(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        for b in other.iter() {
            out.push(b);
        }
        out
    }

    /// Coordinates `keep` of `self`, in increasing index order.
    ///
    /// `keep` must be strictly increasing.
    pub fn project(&self, keep: &[usize]) -> BitVector {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]), "keep must be strictly increasing");
        let mut out = BitVector::zeros(keep.len());
        for (j, &i) in keep.iter().enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    /// Writes `values` into coordinates `positions` of `self`.
    pub fn scatter(&mut self, positions: &[usize], values: &BitVector) {
        assert_eq!(positions.len(), values.len(), "scatter length mismatch");
        for (j, &i) in positions.iter().enumerate() {
            self.set(i, values.get(j));
        }
    }

    /// Left-to-right lexicographic comparison of the bit strings, `0 < 1`.
    /// Shorter vectors compare first when one is a prefix of the other.
    pub fn lex_cmp(&self, other: &BitVector) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                // lowest differing coordinate decides
                let low = (a ^ b).trailing_zeros();
                return if (a >> low) & 1 == 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        self.len.cmp(&other.len)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses `"0110"`; spaces, commas and underscores are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(0);
        for ch in s.chars() {
            match ch {
                '0' => v.push(false),
                '1' => v.push(true),
                ' ' | ',' | '_' => {}
                _ => return Err(Error::invalid(format!("invalid bit character {ch:?}"))),
            }
        }
        Ok(v)
    }
}

impl std::ops::Add for &BitVector {
    type Output = BitVector;

    fn add(self, rhs: &BitVector) -> BitVector {
        self.xor(rhs)
    }
}

/// Reduced row-echelon form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix { cols: n, rows: (0..n).map(|i| BitVector::unit(n, i)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch { expected: cols, actual: bad.len() });
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Parses rows of `0`/`1` characters. All rows must have the same length.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.parse()).collect::<Result<Vec<BitVector>>>()?;
        let cols = rows.first().map_or(0, BitVector::len);
        Self::from_rows(cols, rows)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.rows[r].set(c, bit)
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (0..self.cols).map(|c| self.column(c)).collect();
        BitMatrix { cols: self.rows.len(), rows }
    }

    /// `v · M^T`: the vector of inner products of `v` with each row.
    pub fn mul_transpose(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, actual: v.len() });
        }
        Ok(BitVector::from_bools(self.rows.iter().map(|r| r.dot(v))))
    }

    /// `u · M`: the sum of the rows selected by `u`.
    pub fn combine_rows(&self, u: &BitVector) -> Result<BitVector> {
        if u.len() != self.rows.len() {
            return Err(Error::LengthMismatch { expected: self.rows.len(), actual: u.len() });
        }
        let mut out = BitVector::zeros(self.cols);
        for i in u.ones_iter() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// `self · other^T`.
    pub fn mul_transpose_matrix(&self, other: &BitMatrix) -> Result<BitMatrix> {
        let rows = self.rows.iter().map(|r| other.mul_transpose(r)).collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix { cols: other.nrows(), rows })
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.rows.len() {
                break;
            }
            let Some(p) = (rank..m.rows.len()).find(|&r| m.rows[r].get(c)) else {
                continue;
            };
            m.rows.swap(rank, p);
            let pivot_row = m.rows[rank].clone();
            for (r, row) in m.rows.iter_mut().enumerate() {
                if r != rank && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : M x^T = 0}` in the order of the free columns.
    pub fn kernel(&self) -> BitMatrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| pivots.binary_search(c).is_err()).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut x = BitVector::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if matrix.get(i, f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        BitMatrix { cols: self.cols, rows }
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        let rows = self.rows.iter().map(|r| r.project_unordered(perm)).collect();
        BitMatrix { cols: perm.len(), rows }
    }

    /// Keeps the listed columns (strictly increasing).
    pub fn select_columns(&self, keep: &[usize]) -> BitMatrix {
        let rows = self.rows.iter().map(|r| r.project(keep)).collect();
        BitMatrix { cols: keep.len(), rows }
    }

    /// Deletes the columns in `remove`, then drops dependent rows so the
    /// result has full row rank. The result is in reduced row-echelon form.
    pub fn delete_columns(&self, remove: &[usize]) -> Result<BitMatrix> {
        let mut gone = vec![false; self.cols];
        for &p in remove {
            if p >= self.cols {
                return Err(Error::IndexOutOfRange { index: p, len: self.cols });
            }
            gone[p] = true;
        }
        let keep: Vec<usize> = (0..self.cols).filter(|&c| !gone[c]).collect();
        let Rref { mut matrix, rank, .. } = self.select_columns(&keep).rref();
        matrix.rows.truncate(rank);
        Ok(matrix)
    }

    /// Systematic form `[I_k | A]` up to a column permutation.
    ///
    /// Returns the matrix together with `perm`, where column `j` of the
    /// systematic matrix is column `perm[j]` of `self`. Pivot columns of the
    /// row-reduced matrix are moved to the front, all other columns keep
    /// their relative order.
    pub fn systematic_form(&self) -> Result<(BitMatrix, Vec<usize>)> {
        let Rref { matrix, pivots, rank } = self.rref();
        if rank < self.rows.len() {
            return Err(Error::RankDeficient { rank, rows: self.rows.len() });
        }
        let mut perm = pivots.clone();
        perm.extend((0..self.cols).filter(|c| pivots.binary_search(c).is_err()));
        Ok((matrix.permute_columns(&perm), perm))
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, actual: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }
}

impl BitVector {
    /// Like [`BitVector::project`] but for an arbitrary index order.
    fn project_unordered(&self, order: &[usize]) -> BitVector {
        BitVector::from_bools(order.iter().map(|&i| self.get(i)))
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        write!(f, "{self}")
    }
}
