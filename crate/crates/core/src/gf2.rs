//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words, bit `i` living in word `i / 64` at
//! position `i % 64`. Bits past `len` are always zero. Row reduction picks the
//! leftmost available pivot, so echelon forms and nullspace bases are fully
//! determined by the input matrix.
//!
//! Codeword enumeration walks the message space in binary-reflected Gray code
//! order: message `i` is `g(i) = i ^ (i >> 1)` and consecutive codewords differ
//! by exactly one basis vector. The first codeword is always zero.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest code dimension accepted by the exhaustive enumerators.
pub const MAX_ENUM_DIM: usize = 28;

const WORD: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from raw words; bits beyond `len` are masked off.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(word_count(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    /// Vector of length `len` with the given positions set.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.set(i, true);
        }
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of the set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    /// Gathers the listed positions into a new vector, in the given order.
    pub fn gather(&self, positions: &[usize]) -> BitVector {
        let mut out = BitVector::zeros(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(j, true);
            }
        }
        out
    }

    /// Contiguous sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for j in 0..len {
            if self.get(start + j) {
                out.set(j, true);
            }
        }
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
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

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character `{other}` in bit string"
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A bit vector read as a sequence of `t`-bit symbols over GF(2^t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QaryView {
    t: usize,
    bits: BitVector,
}

impl QaryView {
    pub fn new(bits: BitVector, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::BadParams("symbol size t must be at least 1".into()));
        }
        if !bits.len().is_multiple_of(t) {
            return Err(Error::LengthMismatch {
                expected: bits.len().div_ceil(t) * t,
                found: bits.len(),
            });
        }
        Ok(Self { t, bits })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn symbols(&self) -> usize {
        self.bits.len() / self.t
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    /// Binary weight of symbol `i`.
    pub fn symbol_weight(&self, i: usize) -> usize {
        (i * self.t..(i + 1) * self.t)
            .filter(|&b| self.bits.get(b))
            .count()
    }

    /// Number of nonzero symbols.
    pub fn qary_weight(&self) -> usize {
        (0..self.symbols())
            .filter(|&i| self.symbol_weight(i) > 0)
            .count()
    }
}

/// Number of nonzero `t`-bit blocks of `v`.
pub fn qary_weight(v: &QaryView) -> usize {
    v.qary_weight()
}

/// Row-major dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks rows; all rows must share the length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.push(row);
        self.rows += 1;
        Ok(())
    }

    /// `M x` over GF(2).
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones_iter() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Sub-matrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: self.rows,
            cols: cols.len(),
            data: self.data.iter().map(|r| r.gather(cols)).collect(),
        }
    }

    /// Reduced row echelon form with leftmost pivots; returns the reduced
    /// matrix (zero rows dropped) and the pivot column of each kept row.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let (above, pivot) = head.split_at_mut(r);
            let pivot = &pivot[0];
            for row in above.iter_mut().chain(tail.iter_mut()) {
                if row.get(c) {
                    row.xor_assign(pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (
            BitMatrix {
                rows: r,
                cols: self.cols,
                data: rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Text form: a `rows cols` header, then one line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in &self.data {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `rows cols` header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad header `{header}`: {e}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!(
                "header must be `rows cols`, got `{header}`"
            )));
        };
        let data: Vec<BitVector> = lines.map(str::parse).collect::<Result<_>>()?;
        if data.len() != rows {
            return Err(Error::Parse(format!(
                "header declares {rows} rows, found {}",
                data.len()
            )));
        }
        BitMatrix::from_rows(cols, data)
    }
}

/// GF(2) row rank.
pub fn rank(m: &BitMatrix) -> usize {
    m.rref().1.len()
}

/// Basis of `{x : M x = 0}`, one vector per free column in increasing order.
pub fn nullspace_basis(m: &BitMatrix) -> Vec<BitVector> {
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = BitVector::zeros(m.cols());
            x.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if reduced.get(i, free) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

fn check_basis(len: usize, basis: &[BitVector]) -> Result<()> {
    if basis.len() > MAX_ENUM_DIM {
        return Err(Error::DimensionTooLarge {
            k: basis.len(),
            cap: MAX_ENUM_DIM,
        });
    }
    if let Some(bad) = basis.iter().find(|b| b.len() != len) {
        return Err(Error::LengthMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    Ok(())
}

/// Gray-code index of message number `i`.
#[inline]
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Walks messages `start..end` in Gray order, handing the packed codeword
/// words to `visit` (together with the message index).
fn walk_gray(
    basis: &[Vec<u64>],
    words: usize,
    start: u64,
    end: u64,
    mut visit: impl FnMut(u64, &[u64]),
) {
    if start >= end {
        return;
    }
    let mut cw = vec![0u64; words];
    let g = gray(start);
    for (j, b) in basis.iter().enumerate() {
        if (g >> j) & 1 == 1 {
            for (c, w) in cw.iter_mut().zip(b) {
                *c ^= w;
            }
        }
    }
    visit(start, &cw);
    for i in start + 1..end {
        let j = i.trailing_zeros() as usize;
        for (c, w) in cw.iter_mut().zip(&basis[j]) {
            *c ^= w;
        }
        visit(i, &cw);
    }
}

/// Splits `0..total` into contiguous chunks for parallel scanning.
fn chunks(total: u64) -> Vec<(u64, u64)> {
    const CHUNK: u64 = 1 << 16;
    let mut out = Vec::new();
    let mut a = 0;
    while a < total {
        let b = (a + CHUNK).min(total);
        out.push((a, b));
        a = b;
    }
    out
}

fn packed(basis: &[BitVector]) -> Vec<Vec<u64>> {
    basis.iter().map(|b| b.words().to_vec()).collect()
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterator over all `2^k` codewords spanned by a basis, in Gray-code order.
pub struct Codewords {
    len: usize,
    basis: Vec<BitVector>,
    current: BitVector,
    next_index: u64,
    total: u64,
}

impl Iterator for Codewords {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.next_index >= self.total {
            return None;
        }
        if self.next_index > 0 {
            let j = self.next_index.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[j]);
        }
        self.next_index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next_index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Codewords {}

impl Codewords {
    pub fn len_bits(&self) -> usize {
        self.len
    }
}

/// All codewords of the span of `basis` (each of length `len`), zero first,
/// then in Gray-code order over the message bits.
pub fn enumerate_codewords(len: usize, basis: &[BitVector]) -> Result<Codewords> {
    check_basis(len, basis)?;
    Ok(Codewords {
        len,
        basis: basis.to_vec(),
        current: BitVector::zeros(len),
        next_index: 0,
        total: 1u64 << basis.len(),
    })
}

/// Visits every codeword of the span in Gray order without allocating a new
/// vector per word. Sequential; the callback sees the zero word first.
pub fn for_each_codeword(
    len: usize,
    basis: &[BitVector],
    mut visit: impl FnMut(&BitVector),
) -> Result<()> {
    check_basis(len, basis)?;
    let mut cw = BitVector::zeros(len);
    visit(&cw);
    for i in 1..(1u64 << basis.len()) {
        cw.xor_assign(&basis[i.trailing_zeros() as usize]);
        visit(&cw);
    }
    Ok(())
}

/// Parallel scan over all codewords. Each contiguous chunk of the message
/// space gets its own accumulator from `init`; `visit` receives the message
/// index and the packed codeword words. Accumulators are returned in chunk
/// order so that any merge the caller performs is deterministic.
pub fn par_scan_codewords<T: Send>(
    len: usize,
    basis: &[BitVector],
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, u64, &[u64]) + Sync,
) -> Result<Vec<T>> {
    check_basis(len, basis)?;
    let pb = packed(basis);
    let words = word_count(len);
    let total = 1u64 << basis.len();
    Ok(chunks(total)
        .into_par_iter()
        .map(|(a, b)| {
            let mut acc = init();
            walk_gray(&pb, words, a, b, |i, cw| visit(&mut acc, i, cw));
            acc
        })
        .collect())
}

/// `A_0..A_len`: number of codewords of each weight.
pub fn weight_enumerator(len: usize, basis: &[BitVector]) -> Result<Vec<u64>> {
    check_basis(len, basis)?;
    let pb = packed(basis);
    let words = word_count(len);
    let total = 1u64 << basis.len();
    let hist = chunks(total)
        .into_par_iter()
        .map(|(a, b)| {
            let mut h = vec![0u64; len + 1];
            walk_gray(&pb, words, a, b, |_, cw| h[popcount(cw)] += 1);
            h
        })
        .reduce(
            || vec![0u64; len + 1],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );
    Ok(hist)
}

/// Minimum weight over the nonzero codewords.
pub fn min_distance(len: usize, basis: &[BitVector]) -> Result<usize> {
    check_basis(len, basis)?;
    if basis.is_empty() {
        return Err(Error::ZeroCode);
    }
    let pb = packed(basis);
    let words = word_count(len);
    let total = 1u64 << basis.len();
    let d = chunks(total)
        .into_par_iter()
        .map(|(a, b)| {
            let mut best = usize::MAX;
            walk_gray(&pb, words, a, b, |i, cw| {
                if i != 0 {
                    best = best.min(popcount(cw));
                }
            });
            best
        })
        .min()
        .unwrap_or(usize::MAX);
    Ok(d)
}

/// Minimum distance together with up to `limit` codewords attaining it,
/// listed in enumeration order.
pub fn min_weight_codewords(
    len: usize,
    basis: &[BitVector],
    limit: usize,
) -> Result<(usize, Vec<BitVector>)> {
    check_basis(len, basis)?;
    if basis.is_empty() {
        return Err(Error::ZeroCode);
    }
    let pb = packed(basis);
    let words = word_count(len);
    let total = 1u64 << basis.len();
    let per_chunk: Vec<(usize, Vec<Vec<u64>>)> = chunks(total)
        .into_par_iter()
        .map(|(a, b)| {
            let mut best = usize::MAX;
            let mut found: Vec<Vec<u64>> = Vec::new();
            walk_gray(&pb, words, a, b, |i, cw| {
                if i == 0 {
                    return;
                }
                let w = popcount(cw);
                if w < best {
                    best = w;
                    found.clear();
                }
                if w == best && found.len() < limit {
                    found.push(cw.to_vec());
                }
            });
            (best, found)
        })
        .collect();
    let d = per_chunk
        .iter()
        .map(|(w, _)| *w)
        .min()
        .unwrap_or(usize::MAX);
    let words_out = per_chunk
        .into_iter()
        .filter(|(w, _)| *w == d)
        .flat_map(|(_, f)| f)
        .take(limit)
        .map(|w| BitVector::from_words(len, w))
        .collect();
    Ok((d, words_out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming_parity() -> BitMatrix {
        "3 7\n1010101\n0110011\n0001111\n".parse().unwrap()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&BitMatrix::identity(5)), 5);
        assert_eq!(rank(&BitMatrix::zeros(3, 7)), 0);
        assert_eq!(rank(&hamming_parity()), 3);
    }

    #[test]
    fn nullspace_of_identity_and_zero() {
        assert!(nullspace_basis(&BitMatrix::identity(6)).is_empty());
        assert_eq!(nullspace_basis(&BitMatrix::zeros(2, 4)).len(), 4);
    }

    #[test]
    fn hamming_nullspace_is_annihilated() {
        let h = hamming_parity();
        let basis = nullspace_basis(&h);
        assert_eq!(basis.len(), 4);
        for v in &basis {
            assert!(h.mul_vec(v).unwrap().is_zero());
        }
        assert_eq!(rank(&BitMatrix::from_rows(7, basis).unwrap()), 4);
    }

    #[test]
    fn enumeration_of_trivial_spans() {
        let words: Vec<_> = enumerate_codewords(5, &[]).unwrap().collect();
        assert_eq!(words, vec![BitVector::zeros(5)]);
        let v: BitVector = "10110".parse().unwrap();
        let words: Vec<_> = enumerate_codewords(5, std::slice::from_ref(&v))
            .unwrap()
            .collect();
        assert_eq!(words, vec![BitVector::zeros(5), v]);
    }

    #[test]
    fn hamming_weight_enumerator() {
        let basis = nullspace_basis(&hamming_parity());
        assert_eq!(
            weight_enumerator(7, &basis).unwrap(),
            vec![1, 0, 0, 7, 7, 0, 0, 1]
        );
        assert_eq!(min_distance(7, &basis).unwrap(), 3);
        let (d, words) = min_weight_codewords(7, &basis, 100).unwrap();
        assert_eq!(d, 3);
        assert_eq!(words.len(), 7);
    }

    #[test]
    fn repetition_code() {
        let basis = vec![BitVector::ones(9)];
        let a = weight_enumerator(9, &basis).unwrap();
        assert_eq!(a[0], 1);
        assert_eq!(a[9], 1);
        assert_eq!(a.iter().sum::<u64>(), 2);
        assert_eq!(min_distance(9, &basis).unwrap(), 9);
    }

    #[test]
    fn dimension_cap_and_zero_code() {
        let basis: Vec<_> = (0..29).map(|i| BitVector::from_support(30, [i])).collect();
        assert!(matches!(
            weight_enumerator(30, &basis),
            Err(Error::DimensionTooLarge { k: 29, cap: 28 })
        ));
        assert!(matches!(min_distance(4, &[]), Err(Error::ZeroCode)));
    }

    #[test]
    fn gray_order_visits_every_message_once() {
        let basis: Vec<_> = (0..6).map(|i| BitVector::from_support(6, [i])).collect();
        let mut all: Vec<_> = enumerate_codewords(6, &basis).unwrap().collect();
        assert!(all[0].is_zero());
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn qary_weights() {
        let z = QaryView::new(BitVector::zeros(9), 3).unwrap();
        assert_eq!(qary_weight(&z), 0);
        let ones = QaryView::new(BitVector::ones(6), 3).unwrap();
        assert_eq!(qary_weight(&ones), 2);
        let v = QaryView::new("000101000".parse().unwrap(), 3).unwrap();
        assert_eq!(qary_weight(&v), 1);
        assert!(QaryView::new(BitVector::zeros(7), 3).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let h = hamming_parity();
        let back: BitMatrix = h.to_text().parse().unwrap();
        assert_eq!(back, h);
        assert!("2 3\n101\n".parse::<BitMatrix>().is_err());
        assert!("1 3\n1x1\n".parse::<BitMatrix>().is_err());
    }

    #[test]
    fn tail_bits_stay_clear() {
        let v = BitVector::from_words(70, vec![u64::MAX, u64::MAX]);
        assert_eq!(v.weight(), 70);
        assert_eq!(BitVector::ones(65).weight(), 65);
    }
}
