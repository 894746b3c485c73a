//! Completion procedure for Graver bases of small integer matrices.
//!
//! Starting from a kernel lattice basis and its negatives, every sum of a
//! sign-incompatible pair is reduced by `⊑`-compatible subtraction; each
//! nonzero remainder joins the set and spawns new pairs. When the queue
//! drains, the `⊑`-minimal elements of the set form the Graver basis.

use std::collections::VecDeque;

use crate::error::{GamaError, Result};
use crate::graver::{ConstraintKind, GraverBasis};
use crate::matrix::IntMatrix;
use crate::vector::SparseIntVector;

use super::lattice::integer_kernel;

/// Hard limits for the completion loop. Exceeding either is an error, never
/// a truncated answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PottierBudget {
    pub max_elements: usize,
    pub max_reductions: u64,
}

impl Default for PottierBudget {
    fn default() -> Self {
        Self {
            max_elements: 20_000,
            max_reductions: 200_000_000,
        }
    }
}

fn conformal_le(h: &[i64], g: &[i64]) -> bool {
    h.iter()
        .zip(g)
        .all(|(&x, &y)| x == 0 || ((x > 0) == (y > 0) && x.abs() <= y.abs()))
}

fn sign_compatible(f: &[i64], g: &[i64]) -> bool {
    f.iter().zip(g).all(|(&x, &y)| x * y >= 0)
}

fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

struct Completion<'a> {
    set: Vec<Vec<i64>>,
    queue: VecDeque<Vec<i64>>,
    budget: &'a PottierBudget,
    reductions: u64,
}

impl Completion<'_> {
    fn enqueue_pairs_with(&mut self, f: &[i64]) {
        for g in &self.set {
            if !sign_compatible(f, g) {
                let s: Vec<i64> = f.iter().zip(g).map(|(x, y)| x + y).collect();
                if !is_zero(&s) {
                    self.queue.push_back(s);
                }
            }
        }
    }

    fn normal_form(&mut self, mut s: Vec<i64>) -> Result<Vec<i64>> {
        'outer: loop {
            if is_zero(&s) {
                return Ok(s);
            }
            for g in &self.set {
                if conformal_le(g, &s) {
                    self.reductions += 1;
                    if self.reductions > self.budget.max_reductions {
                        return Err(GamaError::Resource(format!(
                            "completion exceeded {} reductions",
                            self.budget.max_reductions
                        )));
                    }
                    for (x, y) in s.iter_mut().zip(g) {
                        *x -= y;
                    }
                    continue 'outer;
                }
            }
            return Ok(s);
        }
    }

    fn run(&mut self) -> Result<()> {
        while let Some(s) = self.queue.pop_front() {
            let f = self.normal_form(s)?;
            if is_zero(&f) {
                continue;
            }
            self.enqueue_pairs_with(&f);
            self.set.push(f);
            if self.set.len() > self.budget.max_elements {
                return Err(GamaError::Resource(format!(
                    "completion exceeded {} elements",
                    self.budget.max_elements
                )));
            }
        }
        Ok(())
    }
}

/// The complete Graver basis of `a`, sign-canonical and sorted.
pub fn pottier_graver(a: &IntMatrix, budget: &PottierBudget) -> Result<GraverBasis> {
    let kind = ConstraintKind::Explicit { rows: a.to_rows() };
    let lattice = integer_kernel(a)?;

    let mut completion = Completion {
        set: Vec::new(),
        queue: VecDeque::new(),
        budget,
        reductions: 0,
    };
    for v in &lattice {
        completion.set.push(v.clone());
        completion.set.push(v.iter().map(|x| -x).collect());
    }
    let initial = completion.set.clone();
    for (i, f) in initial.iter().enumerate() {
        for g in &initial[i + 1..] {
            if !sign_compatible(f, g) {
                let s: Vec<i64> = f.iter().zip(g).map(|(x, y)| x + y).collect();
                if !is_zero(&s) {
                    completion.queue.push_back(s);
                }
            }
        }
    }
    completion.run()?;

    let set = completion.set;
    let mut minimal: Vec<SparseIntVector> = set
        .iter()
        .enumerate()
        .filter(|&(i, g)| {
            !set.iter()
                .enumerate()
                .any(|(j, h)| j != i && h != g && conformal_le(h, g))
        })
        .map(|(_, g)| SparseIntVector::from_dense(g))
        .filter(SparseIntVector::is_sign_canonical)
        .collect();
    minimal.sort();
    minimal.dedup();
    Ok(GraverBasis::from_parts(kind, minimal, None))
}
