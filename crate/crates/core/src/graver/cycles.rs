//! Directed cycles of the bidirected complete graph and their brick liftings.
//!
//! A cycle `j_0 → j_1 → … → j_{t-1} → j_0` on `k` nodes stands for the
//! zero-sum combination `Σ_s (e_{j_s} − e_{j_{s+1}})` of elements of
//! `G(1_k^T)`. Lifting places arc `s` in its own brick, which makes both the
//! brick sums and the coordinate sums vanish.

use itertools::Itertools;

use crate::error::{GamaError, Result};
use crate::vector::SparseIntVector;

/// A directed cycle rotated so that its smallest node leads. Orientation is
/// kept: for `t ≥ 3` the two directions are different cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedCycle {
    nodes: Vec<usize>,
}

impl DirectedCycle {
    /// Accepts any rotation and canonicalizes it.
    pub fn new(mut nodes: Vec<usize>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(GamaError::InvalidDimension("a cycle needs at least two nodes".into()));
        }
        if !nodes.iter().all_unique() {
            return Err(GamaError::InvalidIndex(format!("repeated node in cycle {nodes:?}")));
        }
        let lead = nodes.iter().position_min().expect("nonempty");
        nodes.rotate_left(lead);
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// All directed cycles of length `2..=k` on nodes `0..k`, ordered by length,
/// then node subset (lexicographic), then the order of the trailing nodes.
pub fn hilbert_basis_cycles(k: usize) -> Result<Vec<DirectedCycle>> {
    if k < 2 {
        return Err(GamaError::InvalidDimension(format!("k = {k}, need k ≥ 2")));
    }
    Ok((2..=k).flat_map(|t| cycles_of_length(k, t)).collect())
}

/// Directed cycles of exactly length `t` on `0..k`, in canonical rotation.
pub fn cycles_of_length(k: usize, t: usize) -> impl Iterator<Item = DirectedCycle> {
    (0..k).combinations(t).flat_map(move |subset| {
        let lead = subset[0];
        let rest = subset[1..].to_vec();
        let m = rest.len();
        rest.into_iter().permutations(m).map(move |tail| {
            let mut nodes = Vec::with_capacity(m + 1);
            nodes.push(lead);
            nodes.extend(tail);
            DirectedCycle { nodes }
        })
    })
}

/// Places arc `s` of `cycle` into brick `bricks[s]`: that brick receives
/// `e_{j_s} − e_{j_{s+1}}`. The result lies in the kernel of the assignment
/// matrix for `(n, k)`.
pub fn lift_cycle(cycle: &DirectedCycle, bricks: &[usize], n: usize, k: usize) -> Result<SparseIntVector> {
    if bricks.len() != cycle.len() {
        return Err(GamaError::DimensionMismatch {
            expected: cycle.len(),
            actual: bricks.len(),
        });
    }
    if !bricks.iter().all_unique() {
        return Err(GamaError::InvalidIndex(format!("repeated brick in {bricks:?}")));
    }
    if let Some(&b) = bricks.iter().find(|&&b| b >= n) {
        return Err(GamaError::InvalidIndex(format!("brick {b} out of range for n = {n}")));
    }
    if let Some(&j) = cycle.nodes().iter().find(|&&j| j >= k) {
        return Err(GamaError::InvalidIndex(format!("node {j} out of range for k = {k}")));
    }
    Ok(lift_unchecked(cycle.nodes(), bricks, n, k))
}

/// Lifting without validation; `nodes` need not be in canonical rotation.
pub(crate) fn lift_unchecked(nodes: &[usize], bricks: &[usize], n: usize, k: usize) -> SparseIntVector {
    let t = nodes.len();
    let mut entries = Vec::with_capacity(2 * t);
    for s in 0..t {
        let base = bricks[s] * k;
        entries.push((base + nodes[s], 1));
        entries.push((base + nodes[(s + 1) % t], -1));
    }
    entries.sort_unstable_by_key(|&(i, _)| i);
    SparseIntVector::from_sorted_unchecked(n * k, entries)
}
