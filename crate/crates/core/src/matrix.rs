//! Dense integer matrices.

use crate::error::{check_dim, GamaError, Result};
use crate::vector::SparseIntVector;

/// Row-major dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(GamaError::InvalidDimension("matrix must be nonempty".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(GamaError::DimensionMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Self {
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

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_dense(&self, x: &[i64]) -> Result<Vec<i64>> {
        check_dim(self.cols, x.len())?;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul_sparse(&self, g: &SparseIntVector) -> Result<Vec<i64>> {
        check_dim(self.cols, g.dim())?;
        let mut out = vec![0; self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = self.row(r);
            *slot = g.entries().iter().map(|&(i, v)| row[i] * v).sum();
        }
        Ok(out)
    }

    /// True when `A·g = 0`.
    pub fn annihilates(&self, g: &SparseIntVector) -> bool {
        self.mul_sparse(g).is_ok_and(|v| v.iter().all(|&x| x == 0))
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &IntMatrix) -> Result<Self> {
        check_dim(self.cols, below.cols)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(Self {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }
}
