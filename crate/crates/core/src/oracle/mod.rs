//! Independent ground truth: a completion procedure for Graver bases of
//! arbitrary small matrices, brute-force minimality checks, and exhaustive
//! search over feasible points.

mod brute;
mod lattice;
mod minimal;
mod pottier;

pub use brute::{brute_force_solve, enumerate_feasible, BruteForceResult, SEARCH_LIMIT};
pub use lattice::integer_kernel;
pub use minimal::{graver_by_enumeration, is_graver_minimal, is_graver_minimal_within, DEFAULT_BOX_LIMIT};
pub use pottier::{pottier_graver, PottierBudget};
