//! Exhaustive search over the feasible lattice points of small instances.

use itertools::Itertools;

use crate::error::{GamaError, Result};
use crate::graver::{counts, realize_matrix, ConstraintKind};
use crate::problems::{objective, Exact, QuadraticInstance};

/// Largest search space [`brute_force_solve`] will walk.
pub const SEARCH_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct BruteForceResult {
    pub best_f: Exact,
    /// A global minimizer (the first one in enumeration order).
    pub best_x: Vec<i64>,
    /// Every global minimizer.
    pub optima: Vec<Vec<i64>>,
    /// Every feasible point with its objective value.
    pub feasible: Vec<(Vec<i64>, Exact)>,
}

/// Global minimum by enumeration. Errors with [`GamaError::Infeasible`] when
/// no feasible point exists and [`GamaError::Resource`] when the search space
/// exceeds [`SEARCH_LIMIT`].
pub fn brute_force_solve(inst: &QuadraticInstance) -> Result<BruteForceResult> {
    let points = enumerate_feasible(inst)?;
    let mut feasible = Vec::with_capacity(points.len());
    for x in points {
        let f = objective(inst, &x)?;
        feasible.push((x, f));
    }
    let best_f = feasible
        .iter()
        .map(|(_, f)| *f)
        .min()
        .ok_or_else(|| GamaError::Infeasible(format!("{} has no feasible point", inst.name())))?;
    let optima: Vec<Vec<i64>> = feasible
        .iter()
        .filter(|(_, f)| *f == best_f)
        .map(|(x, _)| x.clone())
        .collect();
    Ok(BruteForceResult {
        best_f,
        best_x: optima[0].clone(),
        optima,
        feasible,
    })
}

fn too_large(what: impl std::fmt::Display) -> GamaError {
    GamaError::Resource(format!("search space of {what} exceeds {SEARCH_LIMIT} points"))
}

fn checked_product(factors: impl IntoIterator<Item = Option<u128>>) -> Option<u128> {
    factors.into_iter().try_fold(1u128, |acc, f| acc.checked_mul(f?))
}

fn rhs_in(b: i64, hi: usize) -> Option<usize> {
    usize::try_from(b).ok().filter(|&v| v <= hi)
}

/// All `x` with `A x = b` and `l ≤ x ≤ u`. Binary instances of the
/// structured kinds enumerate supports directly; everything else walks the
/// bounding box.
pub fn enumerate_feasible(inst: &QuadraticInstance) -> Result<Vec<Vec<i64>>> {
    if !inst.is_binary() {
        return enumerate_box(inst);
    }
    let b = inst.b();
    let dim = inst.dim();
    let from_supports = |supports: Vec<Vec<usize>>| -> Vec<Vec<i64>> {
        supports
            .into_iter()
            .map(|s| {
                let mut x = vec![0; dim];
                for i in s {
                    x[i] = 1;
                }
                x
            })
            .collect()
    };
    match *inst.kind() {
        ConstraintKind::Cardinality { n } => {
            let Some(b0) = rhs_in(b[0], n) else {
                return Ok(Vec::new());
            };
            if counts::binomial(n, b0).is_none_or(|c| c > SEARCH_LIMIT) {
                return Err(too_large(inst.name()));
            }
            Ok(from_supports((0..n).combinations(b0).collect()))
        }
        ConstraintKind::BrickCardinality { k, .. } => {
            let Some(rhs) = b.iter().map(|&v| rhs_in(v, k)).collect::<Option<Vec<_>>>() else {
                return Ok(Vec::new());
            };
            if checked_product(rhs.iter().map(|&r| counts::binomial(k, r))).is_none_or(|c| c > SEARCH_LIMIT) {
                return Err(too_large(inst.name()));
            }
            let groups: Vec<Vec<Vec<usize>>> = rhs
                .iter()
                .enumerate()
                .map(|(brick, &r)| {
                    (0..k)
                        .combinations(r)
                        .map(|s| s.into_iter().map(|j| brick * k + j).collect())
                        .collect()
                })
                .collect();
            Ok(from_supports(product_of_groups(&groups)))
        }
        ConstraintKind::CoordinateCardinality { n, k } => {
            let Some(rhs) = b.iter().map(|&v| rhs_in(v, n)).collect::<Option<Vec<_>>>() else {
                return Ok(Vec::new());
            };
            if checked_product(rhs.iter().map(|&r| counts::binomial(n, r))).is_none_or(|c| c > SEARCH_LIMIT) {
                return Err(too_large(inst.name()));
            }
            let groups: Vec<Vec<Vec<usize>>> = rhs
                .iter()
                .enumerate()
                .map(|(m, &r)| {
                    (0..n)
                        .combinations(r)
                        .map(|s| s.into_iter().map(|i| i * k + m).collect())
                        .collect()
                })
                .collect();
            Ok(from_supports(product_of_groups(&groups)))
        }
        ConstraintKind::Assignment { n, k } => {
            let (r, c) = b.split_at(k);
            let Some(rows) = r.iter().map(|&v| rhs_in(v, n)).collect::<Option<Vec<_>>>() else {
                return Ok(Vec::new());
            };
            let Some(cols) = c.iter().map(|&v| rhs_in(v, k)).collect::<Option<Vec<_>>>() else {
                return Ok(Vec::new());
            };
            if checked_product(cols.iter().map(|&cj| counts::binomial(k, cj))).is_none_or(|x| x > SEARCH_LIMIT) {
                return Err(too_large(inst.name()));
            }
            let mut out = Vec::new();
            let mut residual: Vec<usize> = rows;
            let mut x = vec![0i64; dim];
            fixed_margins(0, n, k, &cols, &mut residual, &mut x, &mut out);
            Ok(out)
        }
        ConstraintKind::Explicit { .. } => enumerate_box(inst),
    }
}

fn product_of_groups(groups: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    if groups.is_empty() {
        return vec![Vec::new()];
    }
    groups
        .iter()
        .map(|g| g.iter())
        .multi_cartesian_product()
        .map(|choice| choice.into_iter().flatten().copied().collect())
        .collect()
}

/// Column-by-column backtracking over binary `k × n` matrices with the given
/// row residuals and column sums.
fn fixed_margins(
    col: usize,
    n: usize,
    k: usize,
    cols: &[usize],
    residual: &mut [usize],
    x: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    if col == n {
        if residual.iter().all(|&r| r == 0) {
            out.push(x.to_vec());
        }
        return;
    }
    for rows in (0..k).combinations(cols[col]) {
        if rows.iter().any(|&r| residual[r] == 0) {
            continue;
        }
        for &r in &rows {
            residual[r] -= 1;
            x[col * k + r] = 1;
        }
        fixed_margins(col + 1, n, k, cols, residual, x, out);
        for &r in &rows {
            residual[r] += 1;
            x[col * k + r] = 0;
        }
    }
}

fn enumerate_box(inst: &QuadraticInstance) -> Result<Vec<Vec<i64>>> {
    let a = realize_matrix(inst.kind())?;
    let (lower, upper) = (inst.lower(), inst.upper());
    let size = checked_product(lower.iter().zip(upper).map(|(&l, &u)| u128::try_from(u - l + 1).ok()))
        .filter(|&s| s <= SEARCH_LIMIT)
        .ok_or_else(|| too_large(inst.name()))?;
    let mut out = Vec::new();
    let mut x = lower.to_vec();
    for _ in 0..size {
        if a.mul_dense(&x)? == inst.b() {
            out.push(x.clone());
        }
        for (i, xi) in x.iter_mut().enumerate() {
            if *xi < upper[i] {
                *xi += 1;
                break;
            }
            *xi = lower[i];
        }
    }
    Ok(out)
}
