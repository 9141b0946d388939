//! Level-size sequences `F = {F_k}` that denominate cobweb posets.
//!
//! Levels are indexed from 0; level 0 holds the minimal elements.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A sequence of positive level cardinalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSequence {
    /// `F_k = k + 1`: sizes 1, 2, 3, ...
    Naturals,
    /// `F_0 = F_1 = 1`, `F_k = F_{k-1} + F_{k-2}`.
    Fibonacci,
    /// q-integers: `F_0 = 1`, `F_k = 1 + q + ... + q^{k-1}` for `k >= 1`.
    Gaussian(u64),
    /// Every level has the same size.
    Constant(u64),
    /// A finite, explicitly listed sequence.
    Explicit(Vec<u64>),
}

impl FSequence {
    /// The four infinite built-in sequences (Gaussian with `q = 2`, constant 1).
    pub fn builtins() -> [FSequence; 4] {
        [
            FSequence::Naturals,
            FSequence::Fibonacci,
            FSequence::Gaussian(2),
            FSequence::Constant(1),
        ]
    }

    pub fn gaussian(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidSequence(format!(
                "gaussian q must be >= 2, got {q}"
            )));
        }
        Ok(FSequence::Gaussian(q))
    }

    pub fn constant(c: u64) -> Result<Self> {
        if c < 1 {
            return Err(Error::InvalidSequence("constant value must be >= 1".into()));
        }
        Ok(FSequence::Constant(c))
    }

    pub fn explicit(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSequence("explicit list is empty".into()));
        }
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(Error::InvalidSequence(format!(
                "explicit list entry {} is zero; levels must be nonempty",
                pos + 1
            )));
        }
        Ok(FSequence::Explicit(values))
    }

    /// Number of levels the sequence defines, if finite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            FSequence::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// `F_k`.
    pub fn level_size(&self, k: usize) -> Result<u64> {
        match self {
            FSequence::Naturals => (k as u64).checked_add(1).ok_or(Error::Overflow("naturals")),
            FSequence::Fibonacci => {
                let (mut a, mut b) = (1u64, 1u64);
                for _ in 0..k {
                    let next = a.checked_add(b).ok_or(Error::Overflow("fibonacci"))?;
                    a = b;
                    b = next;
                }
                Ok(a)
            }
            FSequence::Gaussian(q) => {
                // 1 + q + ... + q^{k-1}, with F_0 = 1
                let mut value = 1u64;
                for _ in 1..k {
                    value = value
                        .checked_mul(*q)
                        .and_then(|v| v.checked_add(1))
                        .ok_or(Error::Overflow("gaussian"))?;
                }
                Ok(value)
            }
            FSequence::Constant(c) => Ok(*c),
            FSequence::Explicit(v) => v.get(k).copied().ok_or(Error::IndexOutOfRange {
                what: "explicit sequence",
                index: k,
                len: v.len(),
            }),
        }
    }

    /// `[F_0, ..., F_{n-1}]`.
    pub fn level_sizes(&self, n: usize) -> Result<Vec<u64>> {
        if n == 0 {
            return Err(Error::InvalidSequence("level count must be >= 1".into()));
        }
        (0..n).map(|k| self.level_size(k)).collect()
    }
}

impl fmt::Display for FSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSequence::Naturals => write!(f, "naturals"),
            FSequence::Fibonacci => write!(f, "fibonacci"),
            FSequence::Gaussian(q) => write!(f, "gaussian:{q}"),
            FSequence::Constant(c) => write!(f, "constant:{c}"),
            FSequence::Explicit(v) => {
                write!(f, "explicit:")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FSequence {
    type Err = Error;

    /// Parses `naturals`, `fibonacci`, `gaussian:Q`, `constant:C` or `explicit:a,b,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let int = |a: &str| {
            a.trim()
                .parse::<u64>()
                .map_err(|e| Error::InvalidSequence(format!("bad integer {a:?}: {e}")))
        };
        match (head, arg) {
            ("naturals", None) => Ok(FSequence::Naturals),
            ("fibonacci", None) => Ok(FSequence::Fibonacci),
            ("gaussian", Some(a)) => FSequence::gaussian(int(a)?),
            ("constant", Some(a)) => FSequence::constant(int(a)?),
            ("explicit", Some(a)) => {
                FSequence::explicit(a.split(',').map(int).collect::<Result<Vec<_>>>()?)
            }
            _ => Err(Error::InvalidSequence(format!(
                "unrecognized sequence {s:?} (expected naturals | fibonacci | gaussian:Q | constant:C | explicit:a,b,...)"
            ))),
        }
    }
}
