//! Direct `⊑`-minimality checks by exhaustive enumeration.

use crate::error::{GamaError, Result};
use crate::matrix::IntMatrix;
use crate::vector::SparseIntVector;

/// Default cap on the number of lattice points a check may visit.
pub const DEFAULT_BOX_LIMIT: u64 = 10_000_000;

/// True iff no nonzero kernel element `h ≠ g` satisfies `h ⊑ g`.
/// The zero vector is not minimal.
pub fn is_graver_minimal(g: &SparseIntVector, a: &IntMatrix) -> Result<bool> {
    is_graver_minimal_within(g, a, DEFAULT_BOX_LIMIT)
}

pub fn is_graver_minimal_within(g: &SparseIntVector, a: &IntMatrix, box_limit: u64) -> Result<bool> {
    if g.dim() != a.cols() {
        return Err(GamaError::DimensionMismatch {
            expected: a.cols(),
            actual: g.dim(),
        });
    }
    if !a.annihilates(g) {
        return Err(GamaError::Infeasible("vector is not in the kernel".into()));
    }
    if g.is_zero() {
        return Ok(false);
    }
    let size = g
        .entries()
        .iter()
        .try_fold(1u64, |acc, &(_, v)| acc.checked_mul(v.unsigned_abs() + 1))
        .filter(|&s| s <= box_limit)
        .ok_or_else(|| GamaError::Resource(format!("dominated box of {g} exceeds {box_limit} points")))?;

    let support: Vec<(usize, i64)> = g.entries().to_vec();
    let mut digits = vec![0i64; support.len()];
    for _ in 0..size {
        // odometer over |h_i| ∈ [0, |g_i|]
        let trivial = digits.iter().all(|&d| d == 0) || digits.iter().zip(&support).all(|(&d, &(_, v))| d == v.abs());
        if !trivial {
            let entries = digits
                .iter()
                .zip(&support)
                .map(|(&d, &(i, v))| (i, d * v.signum()))
                .filter(|&(_, x)| x != 0)
                .collect();
            let h = SparseIntVector::from_sorted_unchecked(g.dim(), entries);
            if a.annihilates(&h) {
                return Ok(false);
            }
        }
        for (d, &(_, v)) in digits.iter_mut().zip(&support) {
            if *d < v.abs() {
                *d += 1;
                break;
            }
            *d = 0;
        }
    }
    Ok(true)
}

/// Graver basis by brute force: every nonzero kernel element with entries in
/// `[-radius, radius]`, filtered to the `⊑`-minimal ones and sign-canonical.
/// Exact whenever `radius` bounds the true basis entries.
pub fn graver_by_enumeration(a: &IntMatrix, radius: i64, max_points: u64) -> Result<Vec<SparseIntVector>> {
    let n = a.cols();
    let side = (2 * radius + 1) as u64;
    let total = (0..n)
        .try_fold(1u64, |acc, _| acc.checked_mul(side))
        .filter(|&t| t <= max_points)
        .ok_or_else(|| GamaError::Resource(format!("box of radius {radius} in dim {n} is too large")))?;
    let mut kernel = Vec::new();
    let mut x = vec![-radius; n];
    for _ in 0..total {
        let v = SparseIntVector::from_dense(&x);
        if v.is_sign_canonical() && a.annihilates(&v) {
            kernel.push(v);
        }
        for xi in x.iter_mut() {
            if *xi < radius {
                *xi += 1;
                break;
            }
            *xi = -radius;
        }
    }
    let dominated = |g: &SparseIntVector| {
        kernel
            .iter()
            .any(|h| h != g && (h.conformal_le(g) || h.negated().conformal_le(g)))
    };
    let mut out: Vec<SparseIntVector> = kernel.iter().filter(|g| !dominated(g)).cloned().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones3() -> IntMatrix {
        IntMatrix::from_rows(&[vec![1, 1, 1]]).unwrap()
    }

    #[test]
    fn elementary_difference_is_minimal() {
        let g = SparseIntVector::from_dense(&[1, -1, 0]);
        assert!(is_graver_minimal(&g, &ones3()).unwrap());
    }

    #[test]
    fn sum_of_two_differences_is_not_minimal() {
        let g = SparseIntVector::from_dense(&[2, -1, -1]);
        assert!(!is_graver_minimal(&g, &ones3()).unwrap());
    }

    #[test]
    fn zero_is_not_minimal() {
        assert!(!is_graver_minimal(&SparseIntVector::zero(3), &ones3()).unwrap());
    }

    #[test]
    fn non_kernel_vector_is_an_error() {
        let g = SparseIntVector::from_dense(&[1, 0, 0]);
        assert!(is_graver_minimal(&g, &ones3()).is_err());
    }

    #[test]
    fn box_limit_is_enforced() {
        let a = IntMatrix::from_rows(&[vec![1, 1]]).unwrap();
        let g = SparseIntVector::from_dense(&[1000, -1000]);
        assert!(matches!(
            is_graver_minimal_within(&g, &a, 1000),
            Err(GamaError::Resource(_))
        ));
    }

    #[test]
    fn enumeration_of_one_two() {
        let a = IntMatrix::from_rows(&[vec![1, 2]]).unwrap();
        let g = graver_by_enumeration(&a, 3, 1000).unwrap();
        assert_eq!(g, vec![SparseIntVector::from_dense(&[2, -1])]);
    }
}
