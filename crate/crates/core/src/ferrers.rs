//! Ferrers digraph recognition.
//!
//! A bipartite digraph is Ferrers (Ferrers dimension one) iff the supports of
//! the rows of its biadjacency matrix are linearly ordered by inclusion, iff
//! the matrix has no 2×2 permutation submatrix.

use std::fmt;

use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};
use crate::par;

/// A 2×2 permutation submatrix at rows `r1 < r2`, columns `c1 < c2` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm2x2 {
    pub r1: usize,
    pub r2: usize,
    pub c1: usize,
    pub c2: usize,
    /// True for `[[1,0],[0,1]]`, false for `[[0,1],[1,0]]`.
    pub diagonal: bool,
}

impl fmt::Display for Perm2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows ({},{}) cols ({},{}) pattern {}",
            self.r1 + 1,
            self.r2 + 1,
            self.c1 + 1,
            self.c2 + 1,
            if self.diagonal { "10/01" } else { "01/10" }
        )
    }
}

fn min_bit(words: impl Iterator<Item = u64>) -> Option<usize> {
    words
        .enumerate()
        .find(|(_, w)| *w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Smallest set bit strictly greater than `after`.
fn next_bit(words: &[u64], after: usize) -> Option<usize> {
    let start = after + 1;
    let (w0, b0) = (start / 64, start % 64);
    if w0 >= words.len() {
        return None;
    }
    let first = words[w0] & (!0u64 << b0);
    if first != 0 {
        return Some(w0 * 64 + first.trailing_zeros() as usize);
    }
    min_bit(words[w0 + 1..].iter().copied()).map(|b| b + (w0 + 1) * 64)
}

/// Lexicographically smallest `(c1, c2)` witness for the row pair, if any.
fn pair_witness(b: &BoolMatrix, r1: usize, r2: usize) -> Option<Perm2x2> {
    let (a, c) = (b.row_words(r1), b.row_words(r2));
    let only1: Vec<u64> = a.iter().zip(c).map(|(x, y)| x & !y).collect();
    let only2: Vec<u64> = a.iter().zip(c).map(|(x, y)| y & !x).collect();
    // c1 from one difference set needs a later c2 from the other; the
    // minimum of each set is the best candidate for c1.
    let diag =
        min_bit(only1.iter().copied()).and_then(|c1| next_bit(&only2, c1).map(|c2| (c1, c2)));
    let anti =
        min_bit(only2.iter().copied()).and_then(|c1| next_bit(&only1, c1).map(|c2| (c1, c2)));
    let pick = match (diag, anti) {
        (Some(d), Some(a)) => Some(if d <= a { (d, true) } else { (a, false) }),
        (Some(d), None) => Some((d, true)),
        (None, Some(a)) => Some((a, false)),
        (None, None) => None,
    };
    pick.map(|((c1, c2), diagonal)| Perm2x2 {
        r1,
        r2,
        c1,
        c2,
        diagonal,
    })
}

/// The lexicographically smallest `(r1, r2, c1, c2)` 2×2 permutation
/// submatrix, or `None` if the matrix is Ferrers.
pub fn has_perm2x2(b: &BoolMatrix) -> Option<Perm2x2> {
    let rows = b.rows();
    par::find_map_first(rows, |r1| {
        (r1 + 1..rows).find_map(|r2| pair_witness(b, r1, r2))
    })
}

/// Rows sorted by support size, then checked for consecutive inclusion.
pub fn is_ferrers(b: &BoolMatrix) -> bool {
    let mut order: Vec<usize> = (0..b.rows()).collect();
    order.sort_by_key(|&i| b.row_count_ones(i));
    order.windows(2).all(|w| b.row_subset(w[0], w[1]))
}

/// Per-row staircase boundaries of a cobweb zeta matrix and the level
/// sizes they encode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseProfile {
    /// For each row, the first (0-based) column of its all-ones tail: the
    /// first column past the row's own level.
    pub boundaries: Vec<usize>,
    pub level_sizes: Vec<usize>,
}

/// Reads the level structure off a zeta matrix of cobweb shape: below the
/// diagonal all zeros, the diagonal all ones, and above the diagonal zeros
/// exactly on the rest of the row's level and ones on every later column.
///
/// A trailing level may be partially filled, as in a truncated window.
/// An `n × n` identity is the zeta matrix of a single antichain level.
pub fn staircase_profile(z: &BoolMatrix) -> Result<StaircaseProfile> {
    if !z.is_square() {
        return Err(Error::NotSquare {
            op: "staircase_profile",
            rows: z.rows(),
            cols: z.cols(),
        });
    }
    let n = z.rows();
    let violation = |r: usize, c: usize| Error::Staircase {
        row: r + 1,
        col: c + 1,
    };
    let mut boundaries = Vec::with_capacity(n);
    let mut level_sizes = Vec::new();
    let mut start = 0;
    while start < n {
        let end = (start + 1..n).find(|&c| z.get(start, c)).unwrap_or(n);
        for r in start..end {
            for c in 0..n {
                let expected = c == r || c >= end;
                if z.get(r, c) != expected {
                    return Err(violation(r, c));
                }
            }
            boundaries.push(end);
        }
        level_sizes.push(end - start);
        start = end;
    }
    Ok(StaircaseProfile {
        boundaries,
        level_sizes,
    })
}

/// Outcome of the blockwise Ferrers test on a graded chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainFerrersReport {
    /// `(block index, witness)` for each failing block.
    pub witnesses: Vec<(usize, Perm2x2)>,
}

impl ChainFerrersReport {
    pub fn is_ferrers(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Runs [`is_ferrers`] on every arc block of a graded chain; a chain all of
/// whose blocks pass is of Ferrers dimension one.
pub fn chain_is_ferrers(blocks: &[BoolMatrix]) -> Result<ChainFerrersReport> {
    for w in blocks.windows(2) {
        if w[0].cols() != w[1].rows() {
            return Err(Error::DimensionMismatch {
                op: "chain_is_ferrers",
                left_rows: w[0].rows(),
                left_cols: w[0].cols(),
                right_rows: w[1].rows(),
                right_cols: w[1].cols(),
            });
        }
    }
    let witnesses = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| !is_ferrers(b))
        .map(|(k, b)| (k, has_perm2x2(b).expect("non-Ferrers block has a witness")))
        .collect();
    Ok(ChainFerrersReport { witnesses })
}
