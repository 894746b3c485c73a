//! Quadratic integer programs over the structured constraint families.

mod assignment;
mod eval;
mod generate;
mod instance;

pub use assignment::Assignment2D;
pub use eval::{check_feasible, objective, objective_delta, objective_f64, Evaluator, Exact, MoveState, Scalar};
pub use generate::{generate_instance, Curvature, GeneratorConfig};
pub use instance::{Coeff, ProblemClass, QuadraticInstance};
