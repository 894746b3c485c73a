//! Augmentation of a single seed along signed basis directions.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GamaError, Result};
use crate::graver::GraverBasis;
use crate::problems::{
    check_feasible, objective, objective_delta, Evaluator, Exact, MoveState, QuadraticInstance, Scalar,
};
use crate::vector::SparseIntVector;

/// How an improving move is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MovePolicy {
    /// Take the first improving move, resuming the cyclic sweep right after it.
    #[default]
    FirstImprovement,
    /// Scan every signed move and take the steepest (first one on ties).
    BestImprovement,
}

/// Arithmetic used while comparing moves. Terminal values are always
/// recomputed exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericMode {
    Exact,
    #[default]
    Double,
}

#[derive(Debug, Clone, Default)]
pub struct AugmentOptions {
    pub policy: MovePolicy,
    /// Random liftings tried after the enumerated sweep stalls, for bases
    /// with a sampler. `None` means `10·N`.
    pub sampler_budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentationResult {
    pub seed_index: usize,
    pub terminal_x: Vec<i64>,
    #[serde(with = "crate::solver::report::exact_serde")]
    pub terminal_f: Exact,
    /// Accepted moves.
    pub steps: usize,
    /// Signed moves evaluated, including sampled ones.
    pub moves_scanned: u64,
    /// At least one accepted move came from the sampler.
    pub sampler_assisted: bool,
}

/// Signed move index `m`: element `m / 2`, sign `+` for even `m`.
fn signed(m: usize) -> (usize, i64) {
    (m / 2, if m.is_multiple_of(2) { 1 } else { -1 })
}

struct Walker<'a, T> {
    state: MoveState<'a, T>,
    lower: &'a [i64],
    upper: &'a [i64],
    steps: usize,
    scanned: u64,
    sampler_assisted: bool,
}

impl<T: Scalar> Walker<'_, T> {
    fn improving(&mut self, g: &SparseIntVector, sign: i64) -> Option<T> {
        self.scanned += 1;
        if !self.state.within_bounds(g, sign, self.lower, self.upper) {
            return None;
        }
        let d = if sign > 0 {
            self.state.delta(g)
        } else {
            self.state.delta_negated(g)
        };
        // strict descent only; zero-delta moves never count
        (d < T::zero()).then_some(d)
    }

    fn first_improvement(&mut self, elements: &[SparseIntVector], cursor: &mut usize) -> bool {
        let total = 2 * elements.len();
        for offset in 0..total {
            let m = (*cursor + offset) % total;
            let (idx, sign) = signed(m);
            if self.improving(&elements[idx], sign).is_some() {
                self.state.apply(&elements[idx], sign);
                self.steps += 1;
                *cursor = (m + 1) % total;
                return true;
            }
        }
        false
    }

    fn best_improvement(&mut self, elements: &[SparseIntVector]) -> bool {
        let mut best: Option<(T, usize)> = None;
        for m in 0..2 * elements.len() {
            let (idx, sign) = signed(m);
            if let Some(d) = self.improving(&elements[idx], sign) {
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, m));
                }
            }
        }
        match best {
            Some((_, m)) => {
                let (idx, sign) = signed(m);
                self.state.apply(&elements[idx], sign);
                self.steps += 1;
                true
            }
            None => false,
        }
    }

    fn sampled<R: Rng + ?Sized>(&mut self, basis: &GraverBasis, budget: usize, rng: &mut R) -> bool {
        let Some(sampler) = basis.sampler() else { return false };
        for _ in 0..budget {
            let g = sampler.sample(rng);
            for sign in [1, -1] {
                if self.improving(&g, sign).is_some() {
                    self.state.apply(&g, sign);
                    self.steps += 1;
                    self.sampler_assisted = true;
                    return true;
                }
            }
        }
        false
    }
}

/// Augments `x0` until no enumerated signed move (and, for truncated bases,
/// no sampled lifting within the budget) is feasible and strictly improving.
pub fn augment<R: Rng + ?Sized>(
    inst: &QuadraticInstance,
    basis: &GraverBasis,
    x0: &[i64],
    options: &AugmentOptions,
    mode: NumericMode,
    rng: &mut R,
) -> Result<AugmentationResult> {
    match mode {
        NumericMode::Exact => augment_with(&Evaluator::<Exact>::new(inst), inst, basis, x0, options, rng),
        NumericMode::Double => augment_with(&Evaluator::<f64>::new(inst), inst, basis, x0, options, rng),
    }
}

/// As [`augment`], reusing a prepared evaluator.
pub fn augment_with<T: Scalar, R: Rng + ?Sized>(
    eval: &Evaluator<T>,
    inst: &QuadraticInstance,
    basis: &GraverBasis,
    x0: &[i64],
    options: &AugmentOptions,
    rng: &mut R,
) -> Result<AugmentationResult> {
    if basis.dim() != inst.dim() {
        return Err(GamaError::DimensionMismatch {
            expected: inst.dim(),
            actual: basis.dim(),
        });
    }
    if !check_feasible(inst, x0) {
        return Err(GamaError::Infeasible(
            "starting point violates Ax = b or the bounds".into(),
        ));
    }
    let budget = options.sampler_budget.unwrap_or(10 * inst.dim());
    let mut walker = Walker {
        state: eval.state(x0.to_vec())?,
        lower: inst.lower(),
        upper: inst.upper(),
        steps: 0,
        scanned: 0,
        sampler_assisted: false,
    };
    let elements = basis.elements();
    let mut cursor = 0;
    loop {
        let moved = match options.policy {
            MovePolicy::FirstImprovement => walker.first_improvement(elements, &mut cursor),
            MovePolicy::BestImprovement => walker.best_improvement(elements),
        };
        if !moved && !walker.sampled(basis, budget, rng) {
            break;
        }
    }
    let Walker {
        state,
        steps,
        scanned,
        sampler_assisted,
        ..
    } = walker;
    let terminal_x = state.into_x();
    let terminal_f = objective(inst, &terminal_x)?;
    Ok(AugmentationResult {
        seed_index: 0,
        terminal_x,
        terminal_f,
        steps,
        moves_scanned: scanned,
        sampler_assisted,
    })
}

/// Independent post-check: evaluates the exact change `f(x ± g) − f(x)`
/// from scratch (no cached gradient) for every enumerated element and both
/// signs. `true` when no such move is feasible and strictly improving.
pub fn is_locally_optimal(inst: &QuadraticInstance, basis: &GraverBasis, x: &[i64]) -> Result<bool> {
    crate::error::check_dim(inst.dim(), x.len())?;
    let zero = Exact::zero();
    for g in basis.elements() {
        let negated = g.negated();
        for step in [g, &negated] {
            let in_bounds = step.entries().iter().all(|&(i, v)| {
                let y = x[i] + v;
                inst.lower()[i] <= y && y <= inst.upper()[i]
            });
            if in_bounds && objective_delta(inst, x, step)? < zero {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
