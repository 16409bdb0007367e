// SPDX-License-Identifier: Apache-2.0

//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 bits per word; all public access is positional.
//! Row reduction always picks the leftmost pivot column and the topmost
//! available row, so reduced forms are reproducible.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
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
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Unit vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` whose ones sit at the given positions.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.set(i, true);
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
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place addition (XOR).
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "length mismatch");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Size of the common support.
    pub fn overlap(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        self.overlap(other) % 2 == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    /// Reorders positions: bit `i` of `self` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> BitVector {
        assert_eq!(perm.len(), self.len, "permutation length mismatch");
        BitVector::from_support(self.len, self.iter_ones().map(|i| perm[i]))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
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
                        "unexpected character {other:?} in bit row"
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
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
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// An empty (0-row) matrix of the given width.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in matrix of width {cols}",
                bad.len()
            )));
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows written as '0'/'1' strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(cols, parsed)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        self.rows.push(row);
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "width mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// `self · v` for a column vector `v` of length `num_cols`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        BitVector::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    /// `self · otherᵀ`; entry (i, j) is the inner product of row i of self and row j of other.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "width mismatch");
        let rows = self
            .rows
            .iter()
            .map(|a| {
                BitVector::from_bools(&other.rows.iter().map(|b| a.dot(b)).collect::<Vec<_>>())
            })
            .collect();
        BitMatrix {
            cols: other.rows.len(),
            rows,
        }
    }

    /// Linear combination of rows selected by `coeffs`.
    pub fn combine_rows(&self, coeffs: &BitVector) -> BitVector {
        assert_eq!(coeffs.len(), self.rows.len(), "coefficient length mismatch");
        let mut acc = BitVector::zeros(self.cols);
        for i in coeffs.iter_ones() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    /// Column permutation: column `i` moves to `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.permuted(perm)).collect(),
        }
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Reduced row echelon form and its pivot columns.
    ///
    /// Zero rows are dropped, so the result has exactly `rank` rows.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            let Some(found) = (top..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(top, found);
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            top += 1;
            if top == rows.len() {
                break;
            }
        }
        rows.truncate(top);
        (
            BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self · x = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> BitMatrix {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::unit(self.cols, free);
            for (row, &p) in reduced.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(b.len(), self.rows.len(), "right-hand side length mismatch");
        // Reduce the augmented matrix [self | b].
        let width = self.cols + 1;
        let augmented: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = BitVector::zeros(width);
                for c in r.iter_ones() {
                    v.set(c, true);
                }
                v.set(self.cols, b.get(i));
                v
            })
            .collect();
        let (reduced, pivots) = BitMatrix {
            cols: width,
            rows: augmented,
        }
        .rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (row, &p) in reduced.rows.iter().zip(&pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Expresses `v` as a combination of rows: returns coefficients `c`
    /// with `cᵀ · self = v`, or `None` when `v` is outside the row space.
    pub fn row_coefficients(&self, v: &BitVector) -> Option<BitVector> {
        self.transpose().solve(v)
    }

    pub fn row_space_contains_vector(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "width mismatch");
        let (reduced, pivots) = self.rref();
        let mut rest = v.clone();
        for (row, &p) in reduced.rows.iter().zip(&pivots) {
            if rest.get(p) {
                rest.xor_assign(row);
            }
        }
        rest.is_zero()
    }

    /// True iff every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &BitMatrix) -> bool {
        assert_eq!(self.cols, other.cols, "width mismatch");
        let (reduced, pivots) = self.rref();
        other.rows.iter().all(|v| {
            let mut rest = v.clone();
            for (row, &p) in reduced.rows.iter().zip(&pivots) {
                if rest.get(p) {
                    rest.xor_assign(row);
                }
            }
            rest.is_zero()
        })
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.row_space_contains(other) && other.row_space_contains(self)
    }

    /// Rows that together span the row space, chosen greedily top-down.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut picked = Vec::new();
        let mut basis = BitMatrix::empty(self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            if !basis.row_space_contains_vector(row) {
                basis.push_row(row.clone());
                picked.push(i);
            }
        }
        picked
    }

    /// Writes the check-matrix text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("# rows={} cols={}\n", self.rows.len(), self.cols);
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the check-matrix text format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let (rows, cols) = parse_header(header)?;
        let mut parsed = Vec::with_capacity(rows);
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v: BitVector = line.parse()?;
            if v.len() != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} columns, header says {cols}",
                    parsed.len(),
                    v.len()
                )));
            }
            parsed.push(v);
        }
        if parsed.len() != rows {
            return Err(Error::Parse(format!(
                "header says {rows} rows, found {}",
                parsed.len()
            )));
        }
        Self::from_rows(cols, parsed)
    }
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let body = line
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse(format!("bad header {line:?}")))?;
    let mut rows = None;
    let mut cols = None;
    for field in body.split_whitespace() {
        match field.split_once('=') {
            Some(("rows", v)) => rows = v.parse().ok(),
            Some(("cols", v)) => cols = v.parse().ok(),
            _ => return Err(Error::Parse(format!("bad header field {field:?}"))),
        }
    }
    match (rows, cols) {
        (Some(r), Some(c)) => Ok((r, c)),
        _ => Err(Error::Parse(format!("bad header {line:?}"))),
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Visits every element of the row space spanned by `basis` (assumed
/// independent) in Gray-code order, starting from the zero vector.
pub fn for_each_span_element<F: FnMut(&BitVector)>(basis: &BitMatrix, mut visit: F) {
    let k = basis.num_rows();
    assert!(k < 63, "span of dimension {k} is too large to enumerate");
    let mut acc = BitVector::zeros(basis.num_cols());
    visit(&acc);
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        acc.xor_assign(basis.row(flip));
        visit(&acc);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every vector of length `n`, used as a brute-force reference.
    fn all_vectors(n: usize) -> impl Iterator<Item = BitVector> {
        (0u32..(1 << n))
            .map(move |m| BitVector::from_support(n, (0..n).filter(|i| m >> i & 1 == 1)))
    }

    fn brute_rank(m: &BitMatrix) -> usize {
        // |row space| = 2^rank
        let k = m.num_rows();
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << k) {
            let c = BitVector::from_support(k, (0..k).filter(|i| mask >> i & 1 == 1));
            seen.insert(m.combine_rows(&c));
        }
        seen.len().trailing_zeros() as usize
    }

    fn h1() -> BitMatrix {
        BitMatrix::from_strs(&[
            "111111110000000",
            "111100001111000",
            "110011001100110",
            "101010101010101",
        ])
        .unwrap()
    }

    fn h2() -> BitMatrix {
        BitMatrix::from_strs(&[
            "111100000000000",
            "110011000000000",
            "101010100000000",
            "110000001100000",
            "101000001010000",
            "100010001000100",
        ])
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(brute_rank(&h1()), 4);
        assert_eq!(h1().rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(BitMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(5).kernel_basis().num_rows(), 0);

        let ones = BitMatrix::from_strs(&["111"]).unwrap();
        let k = ones.kernel_basis();
        assert_eq!(k.rank(), 2);
        assert!(k.rows().iter().all(|r| r.weight() % 2 == 0));
        // brute force: the kernel has exactly four elements
        let members = all_vectors(3).filter(|v| !ones.row(0).dot(v)).count();
        assert_eq!(members, 1 << k.rank());
    }

    #[test]
    fn solve_examples() {
        let id = BitMatrix::identity(3);
        let b: BitVector = "101".parse().unwrap();
        assert_eq!(id.solve(&b), Some(b.clone()));

        let zero = BitMatrix::zeros(1, 4);
        assert_eq!(zero.solve(&"1".parse().unwrap()), None);
    }

    #[test]
    fn containment_examples() {
        let both = h1().stack(&h2());
        assert!(both.row_space_contains(&h1()));
        assert!(!h1().row_space_contains(&h2()));
        assert!(h2().row_space_contains(&h2()));
        assert_eq!(both.rank(), 10);
    }

    #[test]
    fn text_format() {
        let m = h2();
        let text = m.to_text();
        assert!(text.starts_with("# rows=6 cols=15\n"));
        assert_eq!(BitMatrix::from_text(&text).unwrap(), m);
        assert!(BitMatrix::from_text("# rows=2 cols=3\n101\n").is_err());
        assert!(BitMatrix::from_text("# rows=1 cols=3\n1a1\n").is_err());
        assert_eq!(
            BitMatrix::from_text("# rows=0 cols=4\n")
                .unwrap()
                .num_cols(),
            4
        );
    }

    #[test]
    fn span_enumeration_visits_each_element_once() {
        let mut seen = std::collections::HashSet::new();
        for_each_span_element(&h1(), |v| {
            assert!(seen.insert(v.clone()));
        });
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn iter_ones_crosses_word_boundaries() {
        let v = BitVector::from_support(130, [0, 63, 64, 129]);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.weight(), 4);
    }
}
