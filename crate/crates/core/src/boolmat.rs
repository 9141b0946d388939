//! Dense Boolean matrices with bit-packed rows, and checked integer matrices.
//!
//! [`BoolMatrix`] stores each row as a run of `u64` words. The Boolean
//! product `A © B` is computed row by row as the OR of the rows of `B`
//! selected by the ones of a row of `A`, so its cost scales with the
//! number of ones rather than with the full cube.
//!
//! The text format used for golden files and CLI output is one row per
//! line, entries `0`/`1` separated by single spaces, each line
//! newline-terminated.

use std::fmt;

use crate::error::{Error, Result};
use crate::par;

const WORD: usize = 64;

fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

/// Dense 0/1 matrix. Unused bits in the last word of each row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BoolMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    /// The all-ones `rows x cols` block `I(rows x cols)`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        if cols == 0 {
            return m;
        }
        let tail = cols % WORD;
        let last_mask = if tail == 0 { !0 } else { (1u64 << tail) - 1 };
        for r in 0..rows {
            let row = m.row_words_mut(r);
            let n = row.len();
            row.fill(!0);
            row[n - 1] = last_mask;
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("row has {} entries, expected {cols}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            msg: format!("entry {v} is not 0 or 1"),
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit column count,
    /// so that `0 x c` matrices can be expressed.
    pub fn from_rows_with_cols<R: AsRef<[u8]>>(rows: &[R], cols: usize) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zeros(0, cols));
        }
        let m = Self::from_rows(rows)?;
        if m.cols != cols {
            return Err(Error::Parse {
                line: 1,
                msg: format!("row has {} entries, expected {cols}", m.cols),
            });
        }
        Ok(m)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        let w = &mut self.data[i * self.stride + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + t)
            })
        })
    }

    pub fn row_count_ones(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Whether row `a`'s support is contained in row `b`'s support.
    pub(crate) fn row_subset(&self, a: usize, b: usize) -> bool {
        self.row_words(a)
            .iter()
            .zip(self.row_words(b))
            .all(|(x, y)| x & !y == 0)
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = BoolMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    fn check_same_shape(&self, other: &BoolMatrix, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn zip_words(&self, other: &BoolMatrix, f: impl Fn(u64, u64) -> u64) -> BoolMatrix {
        BoolMatrix {
            rows: self.rows,
            cols: self.cols,
            stride: self.stride,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Elementwise OR.
    pub fn bool_or(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        self.check_same_shape(other, "bool_or")?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    /// Elementwise AND.
    pub fn bool_and(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        self.check_same_shape(other, "bool_and")?;
        Ok(self.zip_words(other, |a, b| a & b))
    }

    /// Elementwise `self AND NOT other`.
    pub fn and_not(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        self.check_same_shape(other, "and_not")?;
        Ok(self.zip_words(other, |a, b| a & !b))
    }

    /// Support inclusion: every one of `self` is a one of `other`.
    pub fn is_subset_of(&self, other: &BoolMatrix) -> Result<bool> {
        self.check_same_shape(other, "is_subset_of")?;
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a & !b == 0))
    }

    fn check_conformable(&self, other: &BoolMatrix) -> Result<()> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "bool_product",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn product_row(&self, other: &BoolMatrix, i: usize) -> Vec<u64> {
        let mut acc = vec![0u64; other.stride];
        for t in self.row_ones(i) {
            for (a, b) in acc.iter_mut().zip(other.row_words(t)) {
                *a |= b;
            }
        }
        acc
    }

    fn from_row_words(rows: usize, cols: usize, row_data: Vec<Vec<u64>>) -> BoolMatrix {
        BoolMatrix {
            rows,
            cols,
            stride: words_for(cols),
            data: row_data.into_iter().flatten().collect(),
        }
    }

    /// Boolean product `(A © B)_ij = OR_t (A_it AND B_tj)`.
    ///
    /// Runs row-parallel when the `parallel` feature is enabled.
    pub fn bool_product(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        self.check_conformable(other)?;
        let rows = par::map_range(self.rows, |i| self.product_row(other, i));
        Ok(Self::from_row_words(self.rows, other.cols, rows))
    }

    /// Single-threaded Boolean product, regardless of features.
    pub fn bool_product_seq(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        self.check_conformable(other)?;
        let rows = (0..self.rows).map(|i| self.product_row(other, i)).collect();
        Ok(Self::from_row_words(self.rows, other.cols, rows))
    }

    /// Boolean power `A^{©k}`; `A^{©0}` is the identity.
    pub fn bool_power(&self, k: u32) -> Result<BoolMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "bool_power",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = BoolMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.bool_product(self)?;
        }
        Ok(acc)
    }

    /// The Boolean geometric series `I ∨ A ∨ A^{©2} ∨ ...` (or without `I`
    /// when `reflexive` is false), summed until the accumulator stops changing.
    ///
    /// The result is the reflexive-transitive (resp. transitive) closure of
    /// the digraph with adjacency matrix `A`.
    pub fn closure_series(&self, reflexive: bool) -> Result<BoolMatrix> {
        self.closure_series_counted(reflexive).map(|(m, _)| m)
    }

    /// [`closure_series`](Self::closure_series) together with the number of
    /// series terms multiplied in before the fixed point was detected.
    pub fn closure_series_counted(&self, reflexive: bool) -> Result<(BoolMatrix, usize)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "closure_series",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut acc = if reflexive {
            BoolMatrix::identity(n).bool_or(self)?
        } else {
            self.clone()
        };
        let mut term = self.clone();
        let mut steps = 0;
        while !term.is_zero() {
            term = term.bool_product(self)?;
            steps += 1;
            let next = acc.bool_or(&term)?;
            if next == acc {
                break;
            }
            acc = next;
        }
        Ok((acc, steps))
    }

    /// Block-diagonal matrix `diag(B_1, ..., B_n)`.
    pub fn direct_sum(blocks: &[BoolMatrix]) -> BoolMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = BoolMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.or_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// ORs `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn or_block(&mut self, r0: usize, c0: usize, block: &BoolMatrix) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block does not fit"
        );
        for i in 0..block.rows {
            for j in block.row_ones(i) {
                self.set(r0 + i, c0 + j, true);
            }
        }
    }

    /// Copies out the `rows x cols` block with top-left corner `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> BoolMatrix {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "submatrix out of bounds"
        );
        let mut m = BoolMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in self.row_ones(r0 + i) {
                if j >= c0 && j < c0 + cols {
                    m.set(i, j - c0, true);
                }
            }
        }
        m
    }

    /// True when every one lies strictly above the diagonal.
    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.row_ones(i).all(|j| j > i))
    }

    /// Renders the bit-exact text format.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (2 * self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    s.push(' ');
                }
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text format. Blank lines are rejected except at the end.
    pub fn parse_text(text: &str) -> Result<BoolMatrix> {
        let lines: Vec<&str> = text.trim_end_matches('\n').split('\n').collect();
        if lines.len() == 1 && lines[0].is_empty() {
            return Ok(BoolMatrix::zeros(0, 0));
        }
        let rows = lines
            .iter()
            .enumerate()
            .map(|(i, line)| {
                line.split(' ')
                    .map(|tok| match tok {
                        "0" => Ok(0u8),
                        "1" => Ok(1u8),
                        other => Err(Error::Parse {
                            line: i + 1,
                            msg: format!("unexpected token {other:?}"),
                        }),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BoolMatrix::from_rows(&rows)
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

/// Dense matrix of nonnegative integers with overflow-checked arithmetic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("row has {} entries, expected {cols}", rows[i].len()),
            });
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Ordinary matrix product with checked arithmetic.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "int_mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let rows = par::map_range(self.rows, |i| other.left_mul_row(self.row(i)));
        let data = rows.into_iter().collect::<Result<Vec<_>>>()?.concat();
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_mul_row(&self, v: &[u64]) -> Result<Vec<u64>> {
        assert_eq!(v.len(), self.rows, "row vector length mismatch");
        let mut out = vec![0u64; self.cols];
        for (t, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(t)) {
                if b != 0 {
                    *o = a
                        .checked_mul(b)
                        .and_then(|p| o.checked_add(p))
                        .ok_or(Error::Overflow("int_mul"))?;
                }
            }
        }
        Ok(out)
    }

    /// `A^k` by repeated multiplication; `A^0` is the identity.
    ///
    /// Intermediate powers never exceed the requested one in exponent, so
    /// overflow is only reported when some `A^j`, `j <= k`, actually overflows.
    pub fn int_power(&self, k: u32) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                op: "int_power",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Nonzero pattern as a Boolean matrix.
    pub fn support(&self) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, &v) in self.row(i).iter().enumerate() {
                if v != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }
}

impl From<&BoolMatrix> for IntMatrix {
    fn from(b: &BoolMatrix) -> Self {
        let mut m = IntMatrix::zeros(b.rows(), b.cols());
        for i in 0..b.rows() {
            for j in b.row_ones(i) {
                m.data[i * b.cols() + j] = 1;
            }
        }
        m
    }
}
