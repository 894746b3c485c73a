//! Closed-form Graver bases for the structured constraint families.
//!
//! * `G(1_k^T)` is `{e_i − e_j : i < j}` up to sign.
//! * Block-diagonal copies of `1_k^T` get one copy of that basis per brick.
//! * `1_n^T ⊗ I_k` gets the basis of `1_n^T` spread `k` apart, once per
//!   in-brick coordinate.
//! * The assignment (generalized Lawrence) matrix gets every lifting of every
//!   directed cycle of the complete digraph on `k` nodes into distinct bricks.
//!
//! Every basis stores only sign-canonical elements (first nonzero positive).

pub mod counts;
pub mod cycles;
pub mod io;
mod kind;
pub mod sampler;

use itertools::Itertools;

pub use cycles::{hilbert_basis_cycles, lift_cycle, DirectedCycle};
pub use kind::{realize_matrix, ConstraintKind};
pub use sampler::{sample_lifting, LiftingSampler};

use crate::error::{GamaError, Result};
use crate::oracle::{pottier_graver, PottierBudget};
use crate::vector::SparseIntVector;

/// Default element cap above which assignment bases are truncated.
pub const DEFAULT_ELEMENT_CAP: u128 = 1_000_000;

/// Longest cycle enumerated when a basis has to be truncated.
pub const TRUNCATED_CYCLE_LEN: usize = 4;

/// A finite sign-canonical set of kernel elements, optionally backed by a
/// sampler for the liftings that were not enumerated.
#[derive(Debug, Clone)]
pub struct GraverBasis {
    kind: ConstraintKind,
    dim: usize,
    elements: Vec<SparseIntVector>,
    sampler: Option<LiftingSampler>,
}

impl GraverBasis {
    pub(crate) fn from_parts(
        kind: ConstraintKind,
        elements: Vec<SparseIntVector>,
        sampler: Option<LiftingSampler>,
    ) -> Self {
        let dim = kind.dim();
        debug_assert!(elements.iter().all(|g| g.dim() == dim && g.is_sign_canonical()));
        Self {
            kind,
            dim,
            elements,
            sampler,
        }
    }

    /// Wraps externally supplied elements (e.g. a parsed basis file),
    /// canonicalizing signs and dropping zeros and duplicates.
    pub fn from_elements(kind: ConstraintKind, elements: Vec<SparseIntVector>) -> Result<Self> {
        kind.validate()?;
        let dim = kind.dim();
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(elements.len());
        for g in elements {
            if g.dim() != dim {
                return Err(GamaError::DimensionMismatch {
                    expected: dim,
                    actual: g.dim(),
                });
            }
            if g.is_zero() {
                continue;
            }
            let g = g.canonical();
            if seen.insert(g.clone()) {
                kept.push(g);
            }
        }
        Ok(Self::from_parts(kind, kept, None))
    }

    pub fn kind(&self) -> &ConstraintKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[SparseIntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sampler(&self) -> Option<&LiftingSampler> {
        self.sampler.as_ref()
    }

    pub fn is_truncated(&self) -> bool {
        self.sampler.is_some()
    }

    /// Elements as an ordered set, for order-insensitive comparisons.
    pub fn to_set(&self) -> std::collections::BTreeSet<SparseIntVector> {
        self.elements.iter().cloned().collect()
    }
}

fn ones_pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).tuple_combinations::<(usize, usize)>()
}

/// `{e_i − e_j : i < j}`.
pub fn graver_ones(k: usize) -> Result<GraverBasis> {
    if k < 2 {
        return Err(GamaError::InvalidDimension(format!("k = {k}, need k ≥ 2")));
    }
    let elements = ones_pairs(k)
        .map(|(i, j)| SparseIntVector::from_sorted_unchecked(k, vec![(i, 1), (j, -1)]))
        .collect();
    Ok(GraverBasis::from_parts(
        ConstraintKind::Cardinality { n: k },
        elements,
        None,
    ))
}

/// One copy of `G(1_k^T)` per brick.
pub fn graver_brick_cardinality(n: usize, k: usize) -> Result<GraverBasis> {
    if n < 1 || k < 2 {
        return Err(GamaError::InvalidDimension(format!(
            "n = {n}, k = {k}; need n ≥ 1, k ≥ 2"
        )));
    }
    let elements = (0..n)
        .flat_map(|brick| {
            let base = brick * k;
            ones_pairs(k)
                .map(move |(i, j)| SparseIntVector::from_sorted_unchecked(n * k, vec![(base + i, 1), (base + j, -1)]))
        })
        .collect();
    Ok(GraverBasis::from_parts(
        ConstraintKind::BrickCardinality { n, k },
        elements,
        None,
    ))
}

/// `G(1_n^T) ⊗ I_k`: brick-difference `e_i − e_j` repeated for each
/// coordinate `m`.
pub fn graver_coordinate_cardinality(n: usize, k: usize) -> Result<GraverBasis> {
    if n < 2 || k < 1 {
        return Err(GamaError::InvalidDimension(format!(
            "n = {n}, k = {k}; need n ≥ 2, k ≥ 1"
        )));
    }
    let elements = ones_pairs(n)
        .flat_map(|(i, j)| {
            (0..k).map(move |m| SparseIntVector::from_sorted_unchecked(n * k, vec![(i * k + m, 1), (j * k + m, -1)]))
        })
        .collect();
    Ok(GraverBasis::from_parts(
        ConstraintKind::CoordinateCardinality { n, k },
        elements,
        None,
    ))
}

/// Lifted directed cycles for the assignment matrix.
///
/// With `max_cycle_len = None` every length up to `min(n, k)` is enumerated.
/// A shorter limit enumerates only those lengths and attaches a
/// [`LiftingSampler`] for the rest.
pub fn graver_assignment(n: usize, k: usize, max_cycle_len: Option<usize>) -> Result<GraverBasis> {
    if n < 2 || k < 2 {
        return Err(GamaError::InvalidDimension(format!(
            "n = {n}, k = {k}; need n ≥ 2, k ≥ 2"
        )));
    }
    let full = n.min(k);
    let limit = match max_cycle_len {
        None => full,
        Some(t) if t > full => {
            return Err(GamaError::InvalidDimension(format!(
                "max cycle length {t} exceeds min(n, k) = {full}"
            )))
        }
        Some(t) => t,
    };
    let elements = (2..=limit).flat_map(|t| lifted_cycles_of_length(n, k, t)).collect();
    let sampler = if limit < full {
        Some(LiftingSampler::new(n, k, (limit + 1).max(2)..=full)?)
    } else {
        None
    };
    Ok(GraverBasis::from_parts(
        ConstraintKind::Assignment { n, k },
        elements,
        sampler,
    ))
}

/// Sign-canonical liftings of all `t`-cycles. Each signed lifting arises from
/// exactly one (canonical cycle, brick tuple) pair, so filtering on sign
/// yields each `±g` pair once.
fn lifted_cycles_of_length(n: usize, k: usize, t: usize) -> impl Iterator<Item = SparseIntVector> {
    cycles::cycles_of_length(k, t).flat_map(move |cycle| {
        (0..n)
            .permutations(t)
            .map(move |bricks| cycles::lift_unchecked(cycle.nodes(), &bricks, n, k))
            .filter(SparseIntVector::is_sign_canonical)
            .collect::<Vec<_>>()
    })
}

/// Sign-canonical cardinality of the complete basis, when it is known in
/// closed form. `None` for explicit matrices or on overflow.
pub fn predicted_cardinality(kind: &ConstraintKind) -> Option<u128> {
    match *kind {
        ConstraintKind::Cardinality { n } => counts::binomial(n, 2),
        ConstraintKind::BrickCardinality { n, k } => Some(counts::brick_cardinality_count(n, k)),
        ConstraintKind::CoordinateCardinality { n, k } => Some(counts::coordinate_cardinality_count(n, k)),
        ConstraintKind::Assignment { n, k } => counts::assignment_count(n, k, n.min(k)),
        ConstraintKind::Explicit { .. } => None,
    }
}

/// Controls how [`build_basis`] sizes the enumeration.
#[derive(Debug, Clone)]
pub struct BasisOptions {
    /// Enumerate the full assignment basis only when it has at most this
    /// many elements.
    pub element_cap: u128,
    /// Forces a cycle-length limit for assignment bases.
    pub max_cycle_len: Option<usize>,
    /// Budget for explicit matrices, which go through the completion oracle.
    pub pottier_budget: PottierBudget,
}

impl Default for BasisOptions {
    fn default() -> Self {
        Self {
            element_cap: DEFAULT_ELEMENT_CAP,
            max_cycle_len: None,
            pottier_budget: PottierBudget::default(),
        }
    }
}

/// Picks the cycle-length limit for an assignment basis: everything if the
/// full basis fits under the cap, otherwise the longest length `≤ 4` whose
/// truncated basis fits.
pub fn assignment_cycle_limit(n: usize, k: usize, options: &BasisOptions) -> Result<usize> {
    let full = n.min(k);
    if let Some(t) = options.max_cycle_len {
        return Ok(t.min(full));
    }
    let fits = |t: usize| counts::assignment_count(n, k, t).is_some_and(|c| c <= options.element_cap);
    if fits(full) {
        return Ok(full);
    }
    (2..=TRUNCATED_CYCLE_LEN.min(full))
        .rev()
        .find(|&t| fits(t))
        .ok_or_else(|| {
            GamaError::Resource(format!(
                "assignment basis for n = {n}, k = {k} exceeds the cap of {} elements even for 2-cycles",
                options.element_cap
            ))
        })
}

/// Builds the basis used to augment problems over `kind`. Degenerate shapes
/// with a trivial kernel give an empty basis.
pub fn build_basis(kind: &ConstraintKind, options: &BasisOptions) -> Result<GraverBasis> {
    kind.validate()?;
    let empty = || GraverBasis::from_parts(kind.clone(), Vec::new(), None);
    match *kind {
        ConstraintKind::Cardinality { n } if n < 2 => Ok(empty()),
        ConstraintKind::Cardinality { n } => graver_ones(n),
        ConstraintKind::BrickCardinality { k, .. } if k < 2 => Ok(empty()),
        ConstraintKind::BrickCardinality { n, k } => graver_brick_cardinality(n, k),
        ConstraintKind::CoordinateCardinality { n, .. } if n < 2 => Ok(empty()),
        ConstraintKind::CoordinateCardinality { n, k } => graver_coordinate_cardinality(n, k),
        ConstraintKind::Assignment { n, k } if n < 2 || k < 2 => Ok(empty()),
        ConstraintKind::Assignment { n, k } => {
            let limit = assignment_cycle_limit(n, k, options)?;
            graver_assignment(n, k, Some(limit))
        }
        ConstraintKind::Explicit { .. } => {
            let a = realize_matrix(kind)?;
            let g = pottier_graver(&a, &options.pottier_budget)?;
            Ok(GraverBasis::from_parts(kind.clone(), g.elements().to_vec(), None))
        }
    }
}
