//! Sparse integer vectors used to store kernel elements.

use std::fmt;

use crate::error::{GamaError, Result};

/// A vector in `Z^dim` stored as strictly increasing `(index, value)` pairs
/// with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseIntVector {
    dim: usize,
    entries: Vec<(usize, i64)>,
}

impl SparseIntVector {
    /// Builds a vector from `(index, value)` pairs. Pairs may come in any
    /// order; zero values are dropped, duplicate indices are rejected.
    pub fn new(dim: usize, mut entries: Vec<(usize, i64)>) -> Result<Self> {
        if dim == 0 {
            return Err(GamaError::InvalidDimension("vector dimension must be positive".into()));
        }
        entries.retain(|&(_, v)| v != 0);
        entries.sort_unstable_by_key(|&(i, _)| i);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GamaError::InvalidIndex(format!("duplicate index {}", w[0].0)));
            }
        }
        if let Some(&(i, _)) = entries.last() {
            if i >= dim {
                return Err(GamaError::InvalidIndex(format!("index {i} out of range for dim {dim}")));
            }
        }
        Ok(Self { dim, entries })
    }

    /// Caller guarantees sorted, in-range, nonzero entries.
    pub(crate) fn from_sorted_unchecked(dim: usize, entries: Vec<(usize, i64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(i, v)| i < dim && v != 0));
        Self { dim, entries }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn from_dense(values: &[i64]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, v))
            .collect();
        Self {
            dim: values.len(),
            entries,
        }
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for &(i, v) in &self.entries {
            out[i] = v;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> i64 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&(i, v)| (i, -v)).collect(),
        }
    }

    /// True when the first nonzero entry is positive.
    pub fn is_sign_canonical(&self) -> bool {
        self.entries.first().is_some_and(|&(_, v)| v > 0)
    }

    /// The representative of `{self, -self}` whose first nonzero is positive.
    pub fn canonical(self) -> Self {
        if self.entries.first().is_some_and(|&(_, v)| v < 0) {
            self.negated()
        } else {
            self
        }
    }

    /// Sign-compatible order: `self ⊑ other` iff every coordinate of `self`
    /// agrees in sign with `other` and is no larger in absolute value.
    pub fn conformal_le(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let mut theirs = other.entries.iter().peekable();
        for &(i, v) in &self.entries {
            while theirs.peek().is_some_and(|&&(j, _)| j < i) {
                theirs.next();
            }
            match theirs.peek() {
                Some(&&(j, w)) if j == i => {
                    if (v > 0) != (w > 0) || v.abs() > w.abs() {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Adds `self` into a dense accumulator.
    pub fn add_to(&self, dense: &mut [i64]) {
        for &(i, v) in &self.entries {
            dense[i] += v;
        }
    }

    pub fn l1_norm(&self) -> i64 {
        self.entries.iter().map(|&(_, v)| v.abs()).sum()
    }
}

impl fmt::Display for SparseIntVector {
    /// `index:value` pairs separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(i, v) in &self.entries {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{i}:{v}")?;
            first = false;
        }
        Ok(())
    }
}
