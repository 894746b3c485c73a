//! Random instance generation for the four structured problem classes.

use rand::Rng;

use super::assignment::Assignment2D;
use super::instance::{Coeff, ProblemClass, QuadraticInstance};
use crate::error::{check_dim, GamaError, Result};

/// Shape of the quadratic term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    /// Independent entries in the value range; not symmetric, not PSD.
    Indefinite,
    /// `Q = MᵀM` for a random integer matrix `M` with entries in the value
    /// range; positive semidefinite.
    Gram,
    /// Diagonal `Q` with entries in `[0, max(hi, 0)]`: positive semidefinite
    /// and separable.
    SeparableConvex,
}

#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    /// Probability that an entry of `Q` is nonzero.
    pub density: f64,
    /// Inclusive range for entries of `c` and `Q` (of `M` for [`Curvature::Gram`]).
    pub value_range: (i64, i64),
    pub curvature: Curvature,
    /// Explicit right-hand side; drawn at random when `None`.
    pub b: Option<Vec<i64>>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            density: 1.0,
            value_range: (-100, 100),
            curvature: Curvature::Indefinite,
            b: None,
        }
    }
}

fn draw_b<R: Rng + ?Sized>(rng: &mut R, class: ProblemClass, n: usize, k: usize) -> Vec<i64> {
    let mut span = |hi: usize| -> i64 {
        // b in [1, hi - 1] when that is nonempty, else anything in [0, hi]
        if hi >= 2 {
            rng.gen_range(1..hi) as i64
        } else {
            rng.gen_range(0..=hi) as i64
        }
    };
    match class {
        ProblemClass::Cbqp => vec![span(n)],
        ProblemClass::Qsap1 => (0..n).map(|_| rng.gen_range(1..=k.max(1)) as i64).collect(),
        ProblemClass::Qsap2 => (0..k).map(|_| rng.gen_range(1..=n.max(1)) as i64).collect(),
        ProblemClass::Qap => {
            let mut m = Assignment2D::zeros(k, n);
            for r in 0..k {
                for c in 0..n {
                    m.set(r, c, i64::from(rng.gen_bool(0.5)));
                }
            }
            let mut b = m.row_sums();
            b.extend(m.col_sums());
            b
        }
        ProblemClass::Explicit => unreachable!("explicit class rejected earlier"),
    }
}

/// A random binary instance of `class` with `n` bricks of size `k` (`k` is
/// ignored for CBQP). For QAP, `b` is taken from the margins of a random
/// binary matrix, so the instance is always feasible.
pub fn generate_instance<R: Rng + ?Sized>(
    rng: &mut R,
    class: ProblemClass,
    n: usize,
    k: usize,
    config: &GeneratorConfig,
) -> Result<QuadraticInstance> {
    let k = if class == ProblemClass::Cbqp { 1 } else { k };
    let kind = class.kind(n, k)?;
    let dim = kind.dim();
    let (lo, hi) = config.value_range;
    if lo > hi {
        return Err(GamaError::InvalidDimension(format!("empty value range {lo}..={hi}")));
    }
    if !(0.0..=1.0).contains(&config.density) {
        return Err(GamaError::InvalidDimension(format!(
            "density {} outside [0, 1]",
            config.density
        )));
    }

    let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(lo..=hi)).collect();
    let q: Vec<i64> = match config.curvature {
        Curvature::Indefinite => (0..dim * dim)
            .map(|_| {
                if rng.gen_bool(config.density) {
                    rng.gen_range(lo..=hi)
                } else {
                    0
                }
            })
            .collect(),
        Curvature::Gram => {
            let m: Vec<i64> = (0..dim * dim)
                .map(|_| {
                    if rng.gen_bool(config.density) {
                        rng.gen_range(lo..=hi)
                    } else {
                        0
                    }
                })
                .collect();
            let mut q = vec![0; dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    q[i * dim + j] = (0..dim).map(|r| m[r * dim + i] * m[r * dim + j]).sum();
                }
            }
            q
        }
        Curvature::SeparableConvex => {
            let mut q = vec![0; dim * dim];
            for i in 0..dim {
                q[i * dim + i] = rng.gen_range(0..=hi.max(0));
            }
            q
        }
    };
    let b = match &config.b {
        Some(b) => {
            check_dim(kind.num_rows(), b.len())?;
            b.clone()
        }
        None => draw_b(rng, class, n, k),
    };
    let name = match class {
        ProblemClass::Cbqp => format!("{class}_{n}"),
        _ => format!("{class}_{k}x{n}"),
    };
    QuadraticInstance::new(
        name,
        kind,
        c.into_iter().map(Coeff::from_integer).collect(),
        q.into_iter().map(Coeff::from_integer).collect(),
        b,
        vec![0; dim],
        vec![1; dim],
    )
}
