//! Linear algebra over GF(2): packed bit vectors, parity-check matrices and
//! coordinate permutations.
//!
//! Bits are packed into `u64` words, bit `i` living in word `i / 64` at
//! position `i % 64`. Padding bits past `len` in the last word are always
//! zero, so word-level equality and popcount are exact.
//!
//! The canonical byte encoding packs bit `i` into byte `i / 8` at position
//! `i % 8`. Matrices encode as the concatenation of their row encodings.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Number of bytes in the canonical encoding of `bits` bits.
pub fn bytes_for(bits: usize) -> usize {
    bits.div_ceil(8)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Uniformly random vector of `len` bits.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let mut v = Self {
            len,
            words: (0..words_for(len)).map(|_| rng.gen()).collect(),
        };
        v.mask_tail();
        v
    }

    /// Decodes `len` bits from the canonical byte encoding. The input must be
    /// exactly `bytes_for(len)` bytes with zero padding bits.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() != bytes_for(len) {
            return Err(Error::Length {
                expected: bytes_for(len),
                actual: bytes.len(),
            });
        }
        let mut v = Self::zeros(len);
        for (i, &b) in bytes.iter().enumerate() {
            v.words[i / 8] |= u64::from(b) << (8 * (i % 8));
        }
        let tail = v.words.last().copied();
        v.mask_tail();
        if v.words.last().copied() != tail {
            return Err(Error::Malformed("nonzero padding bits in bit vector"));
        }
        Ok(v)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(bytes_for(self.len));
        self.write_bytes(&mut out);
        out
    }

    pub(crate) fn write_bytes(&self, out: &mut Vec<u8>) {
        let n = bytes_for(self.len);
        out.extend((0..n).map(|i| (self.words[i / 8] >> (8 * (i % 8))) as u8));
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight: the number of set coordinates.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    pub fn xor_assign(&mut self, other: &Self) -> Result<()> {
        check_dim(self.len, other.len)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> Result<bool> {
        check_dim(self.len, other.len)?;
        let parity = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
        Ok(parity & 1 == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Positions of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter()
            .enumerate()
            .filter_map(|(i, b)| b.then_some(i))
            .collect()
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}

/// Hamming weight of `v`.
pub fn hamming_weight(v: &BitVector) -> usize {
    v.weight()
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        for r in &rows {
            check_dim(cols, r.len())?;
        }
        Ok(Self { cols, rows })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: (0..rows).map(|_| BitVector::random(rng, cols)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    /// Rank by Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut().filter(|r| r.get(col)) {
                for (a, b) in row.words.iter_mut().zip(&pivot_row.words) {
                    *a ^= b;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    pub fn byte_len(&self) -> usize {
        self.rows.len() * bytes_for(self.cols)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.byte_len());
        for r in &self.rows {
            r.write_bytes(&mut out);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], rows: usize, cols: usize) -> Result<Self> {
        let stride = bytes_for(cols);
        if bytes.len() != rows * stride {
            return Err(Error::Length {
                expected: rows * stride,
                actual: bytes.len(),
            });
        }
        let rows = if stride == 0 {
            vec![BitVector::zeros(cols); rows]
        } else {
            bytes
                .chunks(stride)
                .map(|c| BitVector::from_bytes(c, cols))
                .collect::<Result<_>>()?
        };
        Ok(Self { cols, rows })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

/// Syndrome `e·Hᵀ`: bit `i` is the parity of `row_i(H) ∧ e`.
pub fn syndrome(h: &BitMatrix, e: &BitVector) -> Result<BitVector> {
    check_dim(h.cols(), e.len())?;
    let mut s = BitVector::zeros(h.rows());
    for (i, row) in h.rows.iter().enumerate() {
        if row.dot(e)? {
            s.set(i, true);
        }
    }
    Ok(s)
}

/// Uniform matrix among those of rank `rows`, by rejection.
pub fn sample_full_rank_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> Result<BitMatrix> {
    if rows > cols {
        return Err(Error::InvalidParameter(format!(
            "cannot have rank {rows} with {cols} columns"
        )));
    }
    loop {
        let m = BitMatrix::random(rng, rows, cols);
        if m.rank() == rows {
            return Ok(m);
        }
    }
}

/// Uniform vector of length `n` and weight exactly `w`.
pub fn sample_weight_w_vector<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    w: usize,
) -> Result<BitVector> {
    if w > n {
        return Err(Error::InvalidParameter(format!(
            "weight {w} exceeds length {n}"
        )));
    }
    let mut positions: Vec<usize> = (0..n).collect();
    let (chosen, _) = positions.partial_shuffle(rng, w);
    let mut v = BitVector::zeros(n);
    for &p in chosen.iter() {
        v.set(p, true);
    }
    Ok(v)
}

/// A bijection on coordinates `0..n`. Applying it sends input bit `i` to
/// output position `map[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoordPermutation {
    map: Vec<u16>,
}

impl CoordPermutation {
    pub const MAX_LEN: usize = 1 << 16;

    pub fn identity(n: usize) -> Self {
        assert!(n <= Self::MAX_LEN);
        Self {
            map: (0..n).map(|i| i as u16).collect(),
        }
    }

    pub fn from_map(map: Vec<u16>) -> Result<Self> {
        let n = map.len();
        if n > Self::MAX_LEN {
            return Err(Error::InvalidParameter(format!(
                "permutation length {n} too large"
            )));
        }
        let mut seen = vec![false; n];
        for &m in &map {
            let m = m as usize;
            if m >= n || seen[m] {
                return Err(Error::Malformed("not a permutation"));
            }
            seen[m] = true;
        }
        Ok(Self { map })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut p = Self::identity(n);
        p.map.shuffle(rng);
        p
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.map.len()];
        for (i, &m) in self.map.iter().enumerate() {
            inv[m as usize] = i as u16;
        }
        Self { map: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(Self {
            map: other.map.iter().map(|&m| self.map[m as usize]).collect(),
        })
    }

    pub fn apply(&self, v: &BitVector) -> Result<BitVector> {
        check_dim(self.len(), v.len())?;
        let mut out = BitVector::zeros(v.len());
        for i in v.support() {
            out.set(self.map[i] as usize, true);
        }
        Ok(out)
    }

    /// Applies the inverse without materialising it.
    pub fn apply_inverse(&self, v: &BitVector) -> Result<BitVector> {
        check_dim(self.len(), v.len())?;
        let mut out = BitVector::zeros(v.len());
        for (i, &m) in self.map.iter().enumerate() {
            if v.get(m as usize) {
                out.set(i, true);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for CoordPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordPermutation{:?}", self.map)
    }
}

pub fn permute(sigma: &CoordPermutation, v: &BitVector) -> Result<BitVector> {
    sigma.apply(v)
}

pub fn invert_permutation(sigma: &CoordPermutation) -> CoordPermutation {
    sigma.inverse()
}
