//! Graver augmentation from many seeds.
//!
//! Each seed is pushed along signed basis directions while a move stays
//! within the bounds and strictly lowers the objective. The terminal points
//! of all seeds are collected, the best one is returned, and the spread of
//! terminal values classifies the landscape.

mod augment;
pub(crate) mod report;
mod solve;

pub use augment::{
    augment, augment_with, is_locally_optimal, AugmentOptions, AugmentationResult, MovePolicy, NumericMode,
};
pub use report::{
    classify_histogram, classify_landscape, format_exact, LandscapeClass, LandscapeThresholds, ResultsFile,
    SolveReport, TerminalValueCount,
};
pub use solve::{
    augmentation_rng, default_seed_count, generate_seeds, seeding_rng, solve, solve_from_seeds, SolverConfig,
};
