use crate::error::{check_dim, GamaError, Result};

/// A `k × n` binary matrix whose column `i` is brick `i` of the flat vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment2D {
    k: usize,
    n: usize,
    /// row-major, `k` rows of length `n`
    cells: Vec<i64>,
}

impl Assignment2D {
    pub fn zeros(k: usize, n: usize) -> Self {
        Self {
            k,
            n,
            cells: vec![0; k * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(GamaError::InvalidDimension("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|&v| v != 0 && v != 1) {
            return Err(GamaError::InvalidDimension("entries must be 0 or 1".into()));
        }
        Ok(Self {
            k,
            n,
            cells: rows.concat(),
        })
    }

    /// Inverse of [`Assignment2D::vec`].
    pub fn from_flat(x: &[i64], n: usize, k: usize) -> Result<Self> {
        check_dim(n * k, x.len())?;
        let mut m = Self::zeros(k, n);
        for brick in 0..n {
            for j in 0..k {
                let v = x[brick * k + j];
                if v != 0 && v != 1 {
                    return Err(GamaError::InvalidDimension("entries must be 0 or 1".into()));
                }
                m.set(j, brick, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.cells[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.cells[row * self.n + col] = value;
    }

    /// Column-stacking vectorization: the flat vector lists column 0, then
    /// column 1, and so on.
    pub fn vec(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.k * self.n);
        for col in 0..self.n {
            out.extend((0..self.k).map(|row| self.get(row, col)));
        }
        out
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.k).map(|r| (0..self.n).map(|c| self.get(r, c)).sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        (0..self.n).map(|c| (0..self.k).map(|r| self.get(r, c)).sum()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.cells
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .take(self.k)
            .collect()
    }
}
