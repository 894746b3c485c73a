use serde::{Deserialize, Serialize};

use crate::error::{GamaError, Result};
use crate::matrix::IntMatrix;

/// The structured constraint families, plus an escape hatch for arbitrary
/// small matrices.
///
/// Flat variables are laid out brick by brick: brick `i` (of `n`) occupies
/// coordinates `[i·k, (i+1)·k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintKind {
    /// `1_n^T x = b`
    Cardinality {
        n: usize,
    },
    /// `(I_n ⊗ 1_k^T) x = b`: one cardinality row per brick.
    BrickCardinality {
        n: usize,
        k: usize,
    },
    /// `(1_n^T ⊗ I_k) x = b`: one cardinality row per in-brick coordinate.
    CoordinateCardinality {
        n: usize,
        k: usize,
    },
    /// Coordinate rows stacked over brick rows.
    Assignment {
        n: usize,
        k: usize,
    },
    Explicit {
        rows: Vec<Vec<i64>>,
    },
}

impl ConstraintKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Cardinality { n } if *n >= 1 => Ok(()),
            Self::BrickCardinality { n, k } | Self::CoordinateCardinality { n, k } | Self::Assignment { n, k }
                if *n >= 1 && *k >= 1 =>
            {
                Ok(())
            }
            Self::Explicit { rows } => IntMatrix::from_rows(rows).map(|_| ()),
            other => Err(GamaError::InvalidDimension(format!(
                "{other:?}: n and k must be at least 1"
            ))),
        }
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        match self {
            Self::Cardinality { n } => *n,
            Self::BrickCardinality { n, k } | Self::CoordinateCardinality { n, k } | Self::Assignment { n, k } => n * k,
            Self::Explicit { rows } => rows.first().map_or(0, Vec::len),
        }
    }

    /// Number of rows of the realized matrix.
    pub fn num_rows(&self) -> usize {
        match self {
            Self::Cardinality { .. } => 1,
            Self::BrickCardinality { n, .. } => *n,
            Self::CoordinateCardinality { k, .. } => *k,
            Self::Assignment { n, k } => n + k,
            Self::Explicit { rows } => rows.len(),
        }
    }

    /// `(n, k)` for the brick-structured kinds; `(n, 1)` for cardinality.
    pub fn shape(&self) -> Option<(usize, usize)> {
        match self {
            Self::Cardinality { n } => Some((*n, 1)),
            Self::BrickCardinality { n, k } | Self::CoordinateCardinality { n, k } | Self::Assignment { n, k } => {
                Some((*n, *k))
            }
            Self::Explicit { .. } => None,
        }
    }
}

/// Materializes the constraint matrix implied by `kind`.
pub fn realize_matrix(kind: &ConstraintKind) -> Result<IntMatrix> {
    kind.validate()?;
    let m = match kind {
        ConstraintKind::Cardinality { n } => IntMatrix::from_rows(&[vec![1; *n]])?,
        ConstraintKind::BrickCardinality { n, k } => {
            let mut m = IntMatrix::zeros(*n, n * k);
            for brick in 0..*n {
                for j in 0..*k {
                    m.set(brick, brick * k + j, 1);
                }
            }
            m
        }
        ConstraintKind::CoordinateCardinality { n, k } => {
            let mut m = IntMatrix::zeros(*k, n * k);
            for brick in 0..*n {
                for j in 0..*k {
                    m.set(j, brick * k + j, 1);
                }
            }
            m
        }
        ConstraintKind::Assignment { n, k } => {
            let coord = realize_matrix(&ConstraintKind::CoordinateCardinality { n: *n, k: *k })?;
            let brick = realize_matrix(&ConstraintKind::BrickCardinality { n: *n, k: *k })?;
            coord.stack(&brick)?
        }
        ConstraintKind::Explicit { rows } => IntMatrix::from_rows(rows)?,
    };
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_is_all_ones() {
        let m = realize_matrix(&ConstraintKind::Cardinality { n: 3 }).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn coordinate_cardinality_repeats_identity() {
        let m = realize_matrix(&ConstraintKind::CoordinateCardinality { n: 2, k: 2 }).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn brick_cardinality_is_block_diagonal() {
        let m = realize_matrix(&ConstraintKind::BrickCardinality { n: 2, k: 3 }).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1, 1, 1, 0, 0, 0], vec![0, 0, 0, 1, 1, 1]]);
    }

    #[test]
    fn assignment_stacks_coordinate_over_brick_rows() {
        let m = realize_matrix(&ConstraintKind::Assignment { n: 2, k: 2 }).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 1, 0, 0], vec![0, 0, 1, 1]]
        );
        // every column of the Lawrence-type matrix has exactly two ones
        for c in 0..4 {
            assert_eq!((0..4).map(|r| m.get(r, c)).sum::<i64>(), 2);
        }
    }

    #[test]
    fn zero_sizes_are_rejected() {
        assert!(realize_matrix(&ConstraintKind::Cardinality { n: 0 }).is_err());
        assert!(realize_matrix(&ConstraintKind::Assignment { n: 2, k: 0 }).is_err());
        assert!(realize_matrix(&ConstraintKind::Explicit { rows: vec![] }).is_err());
        assert!(realize_matrix(&ConstraintKind::Explicit {
            rows: vec![vec![1, 2], vec![1]]
        })
        .is_err());
    }
}
