//! Graver-basis augmentation from multiple seeds (GAMA) for quadratic
//! integer programs with structured constraint matrices.
//!
//! * [`graver`]: closed-form Graver bases for cardinality, semi-assignment
//!   and assignment matrices, plus a sampler for large assignment bases.
//! * [`problems`]: the instance model, objective evaluation and generator.
//! * [`seeds`]: feasible starting points for every problem class.
//! * [`solver`]: augmentation, multi-seed solve and landscape reports.
//! * [`oracle`]: completion-procedure Graver bases and brute-force search,
//!   used as independent references.
//! * [`verify`]: the cross-check suite behind `gama verify`.

pub mod cli;
pub mod error;
pub mod graver;
pub mod matrix;
pub mod oracle;
pub mod problems;
pub mod seeds;
pub mod solver;
pub mod vector;
pub mod verify;

pub use error::{GamaError, Result};
pub use vector::SparseIntVector;
