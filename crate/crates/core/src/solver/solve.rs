//! Multi-seed augmentation over a whole instance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::augment::{augment_with, AugmentOptions, AugmentationResult, NumericMode};
use super::report::{LandscapeThresholds, SolveReport};
use crate::error::{GamaError, Result};
use crate::graver::{build_basis, BasisOptions, GraverBasis};
use crate::problems::{Evaluator, Exact, ProblemClass, QuadraticInstance, Scalar};
use crate::seeds::{seeds_for, SeedOptions};

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Number of seeds; `None` uses [`default_seed_count`].
    pub seeds: Option<usize>,
    pub augment: AugmentOptions,
    pub mode: NumericMode,
    /// Worker threads for seed augmentation; `0` or `1` runs inline.
    pub threads: usize,
    pub rng_seed: u64,
    pub basis: BasisOptions,
    pub seed_options: SeedOptions,
    pub thresholds: LandscapeThresholds,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seeds: None,
            augment: AugmentOptions::default(),
            mode: NumericMode::Double,
            threads: 1,
            rng_seed: 0,
            basis: BasisOptions::default(),
            seed_options: SeedOptions::default(),
            thresholds: LandscapeThresholds::default(),
        }
    }
}

/// 50 for CBQP, `k·n` for the brick-structured classes, `N` otherwise.
pub fn default_seed_count(inst: &QuadraticInstance) -> usize {
    match inst.class() {
        ProblemClass::Cbqp => 50,
        _ => inst.dim(),
    }
}

/// Random source for the seed sampler.
pub fn seeding_rng(rng_seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(rng_seed)
}

/// Random source for augmenting seed `index`; independent of scheduling.
pub fn augmentation_rng(rng_seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(index as u64 + 1);
    rng
}

/// Builds the basis, draws seeds and augments each one.
pub fn solve(inst: &QuadraticInstance, config: &SolverConfig) -> Result<SolveReport> {
    let basis = build_basis(inst.kind(), &config.basis)?;
    let seeds = generate_seeds(inst, &basis, config)?;
    solve_from_seeds(inst, &basis, &seeds, config)
}

pub fn generate_seeds(inst: &QuadraticInstance, basis: &GraverBasis, config: &SolverConfig) -> Result<Vec<Vec<i64>>> {
    let l = config.seeds.unwrap_or_else(|| default_seed_count(inst));
    if l == 0 {
        return Err(GamaError::InvalidDimension("at least one seed is required".into()));
    }
    seeds_for(&mut seeding_rng(config.rng_seed), inst, basis, l, &config.seed_options)
}

/// Augments the given seeds. Results are merged by seed index, so the
/// report does not depend on the number of threads.
pub fn solve_from_seeds(
    inst: &QuadraticInstance,
    basis: &GraverBasis,
    seeds: &[Vec<i64>],
    config: &SolverConfig,
) -> Result<SolveReport> {
    if seeds.is_empty() {
        return Err(GamaError::Infeasible("no seeds to augment".into()));
    }
    let terminals = match config.mode {
        NumericMode::Exact => run_seeds(&Evaluator::<Exact>::new(inst), inst, basis, seeds, config)?,
        NumericMode::Double => run_seeds(&Evaluator::<f64>::new(inst), inst, basis, seeds, config)?,
    };
    SolveReport::assemble(
        inst.name(),
        terminals,
        basis.len(),
        basis.is_truncated(),
        &config.thresholds,
    )
    .ok_or_else(|| GamaError::Infeasible("no terminal solutions".into()))
}

fn run_seeds<T: Scalar>(
    eval: &Evaluator<T>,
    inst: &QuadraticInstance,
    basis: &GraverBasis,
    seeds: &[Vec<i64>],
    config: &SolverConfig,
) -> Result<Vec<AugmentationResult>> {
    let one = |(index, x0): (usize, &Vec<i64>)| -> Result<AugmentationResult> {
        let mut rng = augmentation_rng(config.rng_seed, index);
        let mut r = augment_with(eval, inst, basis, x0, &config.augment, &mut rng)?;
        r.seed_index = index;
        Ok(r)
    };
    if config.threads <= 1 {
        return seeds.iter().enumerate().map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| GamaError::Resource(format!("thread pool: {e}")))?;
    pool.install(|| seeds.par_iter().enumerate().map(one).collect())
}
