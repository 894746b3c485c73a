//! On-the-fly random liftings for bases too large to enumerate.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::cycles::lift_unchecked;
use crate::error::{GamaError, Result};
use crate::vector::SparseIntVector;

/// Draws random lifted cycles of length in `[t_min, t_max]` for the
/// assignment matrix with `n` bricks of size `k`. Holds no mutable state;
/// each caller supplies its own random source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingSampler {
    n: usize,
    k: usize,
    t_min: usize,
    t_max: usize,
}

impl LiftingSampler {
    pub fn new(n: usize, k: usize, t_range: RangeInclusive<usize>) -> Result<Self> {
        let (t_min, t_max) = (*t_range.start(), *t_range.end());
        if t_min > t_max {
            return Err(GamaError::InvalidDimension(format!(
                "empty cycle length range {t_min}..={t_max}"
            )));
        }
        if t_min < 2 || t_max > n.min(k) {
            return Err(GamaError::InvalidDimension(format!(
                "cycle lengths {t_min}..={t_max} outside [2, {}]",
                n.min(k)
            )));
        }
        Ok(Self { n, k, t_min, t_max })
    }

    pub fn t_range(&self) -> RangeInclusive<usize> {
        self.t_min..=self.t_max
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.k)
    }

    /// Length uniform in range; ordered node tuple and injective brick list
    /// uniform given the length.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SparseIntVector {
        let t = rng.gen_range(self.t_min..=self.t_max);
        let mut nodes = index::sample(rng, self.k, t).into_vec();
        nodes.shuffle(rng);
        let mut bricks = index::sample(rng, self.n, t).into_vec();
        bricks.shuffle(rng);
        lift_unchecked(&nodes, &bricks, self.n, self.k)
    }
}

/// One random lifting; see [`LiftingSampler::sample`].
pub fn sample_lifting<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    t_range: RangeInclusive<usize>,
) -> Result<SparseIntVector> {
    Ok(LiftingSampler::new(n, k, t_range)?.sample(rng))
}
