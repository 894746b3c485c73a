//! Feasible starting points for each problem class.
//!
//! The cardinality-type classes are sampled directly (uniform over feasible
//! supports). Assignment instances start from one constructed matrix with
//! the prescribed margins and walk along random Graver moves.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::Rng;

use crate::error::{check_dim, GamaError, Result};
use crate::graver::{ConstraintKind, GraverBasis};
use crate::oracle::enumerate_feasible;
use crate::problems::{Assignment2D, QuadraticInstance};
use crate::vector::SparseIntVector;

fn cardinality(b: i64, max: usize, what: &str) -> Result<usize> {
    usize::try_from(b)
        .ok()
        .filter(|&v| v <= max)
        .ok_or_else(|| GamaError::Infeasible(format!("{what} = {b} outside [0, {max}]")))
}

/// `l` vectors with ones at a uniform random `b`-subset of `0..n`.
pub fn seeds_cbqp<R: Rng + ?Sized>(rng: &mut R, n: usize, b: i64, l: usize) -> Result<Vec<Vec<i64>>> {
    let b = cardinality(b, n, "b")?;
    Ok((0..l)
        .map(|_| {
            let mut x = vec![0; n];
            for i in index::sample(rng, n, b) {
                x[i] = 1;
            }
            x
        })
        .collect())
}

/// Each brick `i` gets `b[i]` ones at uniform random in-brick positions.
pub fn seeds_qsap1<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize, b: &[i64], l: usize) -> Result<Vec<Vec<i64>>> {
    check_dim(n, b.len())?;
    let b: Vec<usize> = b
        .iter()
        .map(|&v| cardinality(v, k, "brick sum"))
        .collect::<Result<_>>()?;
    Ok((0..l)
        .map(|_| {
            let mut x = vec![0; n * k];
            for (brick, &count) in b.iter().enumerate() {
                for j in index::sample(rng, k, count) {
                    x[brick * k + j] = 1;
                }
            }
            x
        })
        .collect())
}

/// Coordinate `m` gets `b[m]` ones spread over uniform random bricks, at
/// positions `m, m + k, m + 2k, …`.
pub fn seeds_qsap2<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize, b: &[i64], l: usize) -> Result<Vec<Vec<i64>>> {
    check_dim(k, b.len())?;
    let b: Vec<usize> = b
        .iter()
        .map(|&v| cardinality(v, n, "coordinate sum"))
        .collect::<Result<_>>()?;
    Ok((0..l)
        .map(|_| {
            let mut x = vec![0; n * k];
            for (m, &count) in b.iter().enumerate() {
                for brick in index::sample(rng, n, count) {
                    x[brick * k + m] = 1;
                }
            }
            x
        })
        .collect())
}

/// A binary `k × n` matrix with row sums `r` and column sums `c`.
///
/// Columns are filled in decreasing order of `c_j`, each placing its ones in
/// the rows with the largest remaining row sum (ties to the lower row). This
/// greedy succeeds exactly when the Gale–Ryser condition holds.
pub fn initial_assignment(r: &[i64], c: &[i64]) -> Result<Assignment2D> {
    let (k, n) = (r.len(), c.len());
    let rows: Vec<usize> = r.iter().map(|&v| cardinality(v, n, "row sum")).collect::<Result<_>>()?;
    let cols: Vec<usize> = c
        .iter()
        .map(|&v| cardinality(v, k, "column sum"))
        .collect::<Result<_>>()?;
    let (sr, sc) = (rows.iter().sum::<usize>(), cols.iter().sum::<usize>());
    if sr != sc {
        return Err(GamaError::Infeasible(format!(
            "row sums total {sr} but column sums total {sc}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| std::cmp::Reverse(cols[j]));

    let mut residual = rows;
    let mut m = Assignment2D::zeros(k, n);
    for j in order {
        let mut by_need: Vec<usize> = (0..k).collect();
        by_need.sort_by_key(|&i| std::cmp::Reverse(residual[i]));
        for &i in by_need.iter().take(cols[j]) {
            if residual[i] == 0 {
                return Err(GamaError::Infeasible("margins violate the Gale–Ryser condition".into()));
            }
            residual[i] -= 1;
            m.set(i, j, 1);
        }
    }
    Ok(m)
}

/// Default walk length bounds: `[1, min(|basis|, 10·nk)]`.
pub fn default_walk_len(basis: &GraverBasis) -> RangeInclusive<usize> {
    let cap = 10 * basis.dim();
    1..=basis.len().min(cap).max(1)
}

/// `l` assignment matrices produced by a random walk on Graver moves.
///
/// The walk starts at [`initial_assignment`]. Each output is reached from the
/// previous one by `n_r` attempted moves, `n_r` uniform in `walk_len`
/// (default [`default_walk_len`]); an attempt draws a uniform basis element
/// and sign and is skipped if it leaves `[0, 1]`.
pub fn seeds_qap<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    b: &[i64],
    l: usize,
    basis: &GraverBasis,
    walk_len: Option<RangeInclusive<usize>>,
) -> Result<Vec<Vec<i64>>> {
    check_dim(n + k, b.len())?;
    if basis.kind() != &(ConstraintKind::Assignment { n, k }) {
        return Err(GamaError::InvalidDimension(format!(
            "basis is for {:?}, not assignment {n}×{k}",
            basis.kind()
        )));
    }
    let (r, c) = b.split_at(k);
    let mut x = initial_assignment(r, c)?.vec();
    let walk_len = walk_len.unwrap_or_else(|| default_walk_len(basis));
    if walk_len.is_empty() {
        return Err(GamaError::InvalidDimension("empty walk length range".into()));
    }
    let mut out = Vec::with_capacity(l);
    for _ in 0..l {
        let steps = rng.gen_range(walk_len.clone());
        for _ in 0..steps {
            let Some(g) = draw_move(rng, basis) else { break };
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            if g.entries().iter().all(|&(i, v)| (0..=1).contains(&(x[i] + sign * v))) {
                for &(i, v) in g.entries() {
                    x[i] += sign * v;
                }
            }
        }
        out.push(x.clone());
    }
    Ok(out)
}

/// Uniform over the enumerated elements; the sampler is only used when
/// nothing was enumerated.
fn draw_move<R: Rng + ?Sized>(rng: &mut R, basis: &GraverBasis) -> Option<SparseIntVector> {
    if !basis.is_empty() {
        Some(basis.elements()[rng.gen_range(0..basis.len())].clone())
    } else {
        basis.sampler().map(|s| s.sample(rng))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SeedOptions {
    pub walk_len: Option<RangeInclusive<usize>>,
    /// Drop repeated seeds, keeping first occurrences.
    pub dedup: bool,
}

/// Class-appropriate seeds for `inst`. Instances that are not binary or use
/// an explicit matrix draw uniformly (with replacement) from the enumerated
/// feasible set, so they must be small.
pub fn seeds_for<R: Rng + ?Sized>(
    rng: &mut R,
    inst: &QuadraticInstance,
    basis: &GraverBasis,
    l: usize,
    options: &SeedOptions,
) -> Result<Vec<Vec<i64>>> {
    let b = inst.b();
    let mut seeds = match (inst.kind(), inst.is_binary()) {
        (&ConstraintKind::Cardinality { n }, true) => seeds_cbqp(rng, n, b[0], l)?,
        (&ConstraintKind::BrickCardinality { n, k }, true) => seeds_qsap1(rng, n, k, b, l)?,
        (&ConstraintKind::CoordinateCardinality { n, k }, true) => seeds_qsap2(rng, n, k, b, l)?,
        (&ConstraintKind::Assignment { n, k }, true) => seeds_qap(rng, n, k, b, l, basis, options.walk_len.clone())?,
        _ => {
            let points = enumerate_feasible(inst)?;
            if points.is_empty() {
                return Err(GamaError::Infeasible(format!("{} has no feasible point", inst.name())));
            }
            (0..l).map(|_| points[rng.gen_range(0..points.len())].clone()).collect()
        }
    };
    if options.dedup {
        let mut seen = std::collections::HashSet::new();
        seeds.retain(|x| seen.insert(x.clone()));
    }
    Ok(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graver::graver_assignment;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cbqp_full_cardinality_is_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = seeds_cbqp(&mut rng, 3, 3, 5).unwrap();
        assert_eq!(s, vec![vec![1, 1, 1]; 5]);
        assert!(seeds_cbqp(&mut rng, 3, 4, 1).is_err());
        assert!(seeds_cbqp(&mut rng, 3, -1, 1).is_err());
        assert_eq!(seeds_cbqp(&mut rng, 3, 0, 2).unwrap(), vec![vec![0, 0, 0]; 2]);
    }

    #[test]
    fn qsap1_two_by_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let allowed = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];
        for x in seeds_qsap1(&mut rng, 2, 2, &[1, 1], 20).unwrap() {
            assert!(allowed.iter().any(|a| a.as_slice() == x.as_slice()));
        }
        assert!(seeds_qsap1(&mut rng, 2, 2, &[3, 1], 1).is_err());
        assert!(seeds_qsap1(&mut rng, 2, 2, &[1], 1).is_err());
    }

    #[test]
    fn qsap2_single_coordinate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for x in seeds_qsap2(&mut rng, 2, 1, &[1], 20).unwrap() {
            assert!(x == vec![1, 0] || x == vec![0, 1]);
        }
        assert!(seeds_qsap2(&mut rng, 2, 1, &[3], 1).is_err());
    }

    #[test]
    fn initial_assignment_examples() {
        let m = initial_assignment(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(m.row_sums(), vec![1, 1]);
        assert_eq!(m.col_sums(), vec![1, 1]);
        assert_eq!(
            initial_assignment(&[2, 0], &[1, 1]).unwrap().to_rows(),
            vec![vec![1, 1], vec![0, 0]]
        );
        assert!(matches!(
            initial_assignment(&[2, 1], &[1, 1]),
            Err(GamaError::Infeasible(_))
        ));
        // equal totals but no matrix: a row needs 3 ones with only 2 columns
        assert!(initial_assignment(&[3, 0], &[2, 1]).is_err());
        // equal totals and within range but fails dominance
        assert!(matches!(
            initial_assignment(&[2, 2, 0], &[3, 1]),
            Err(GamaError::Infeasible(_))
        ));
    }

    #[test]
    fn qap_walk_preserves_margins() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let basis = graver_assignment(4, 3, None).unwrap();
        let b = [2, 1, 2, 1, 1, 2, 1];
        for x in seeds_qap(&mut rng, 4, 3, &b, 50, &basis, None).unwrap() {
            let m = Assignment2D::from_flat(&x, 4, 3).unwrap();
            assert_eq!(m.row_sums(), vec![2, 1, 2]);
            assert_eq!(m.col_sums(), vec![1, 1, 2, 1]);
        }
    }

    #[test]
    fn qap_rejects_wrong_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let basis = graver_assignment(3, 3, None).unwrap();
        assert!(seeds_qap(&mut rng, 2, 2, &[1, 1, 1, 1], 1, &basis, None).is_err());
    }

    #[test]
    fn dedup_keeps_first_occurrences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let inst = QuadraticInstance::binary(
            "d",
            ConstraintKind::Cardinality { n: 3 },
            vec![0; 3],
            vec![0; 9],
            vec![3],
        )
        .unwrap();
        let basis = crate::graver::graver_ones(3).unwrap();
        let s = seeds_for(
            &mut rng,
            &inst,
            &basis,
            4,
            &SeedOptions {
                dedup: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(s, vec![vec![1, 1, 1]]);
    }
}
