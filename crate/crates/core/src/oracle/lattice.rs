//! Integer kernel lattice bases by unimodular column elimination.

use crate::error::{GamaError, Result};
use crate::matrix::IntMatrix;

fn overflow() -> GamaError {
    GamaError::Resource("integer overflow during kernel elimination".into())
}

/// `col[dst] -= q * col[src]` on both the working matrix and the transform.
fn axpy(cols: &mut [Vec<i64>], dst: usize, src: usize, q: i64) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for i in 0..cols[dst].len() {
        let delta = q.checked_mul(cols[src][i]).ok_or_else(overflow)?;
        cols[dst][i] = cols[dst][i].checked_sub(delta).ok_or_else(overflow)?;
    }
    Ok(())
}

/// A basis of the lattice `ker(A) ∩ Z^N`.
///
/// Column operations bring `A` to column echelon form `A·U = [H | 0]` with
/// `U` unimodular; the columns of `U` under the zero block span the kernel.
pub fn integer_kernel(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let (m, n) = (a.rows(), a.cols());
    // each column carries its A-part (first m entries) and its U-part (next n)
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut col: Vec<i64> = (0..m).map(|r| a.get(r, j)).collect();
            col.extend((0..n).map(|i| i64::from(i == j)));
            col
        })
        .collect();

    let mut pivot = 0;
    for r in 0..m {
        if pivot == n {
            break;
        }
        while let Some(best) = (pivot..n)
            .filter(|&c| cols[c][r] != 0)
            .min_by_key(|&c| cols[c][r].unsigned_abs())
        {
            cols.swap(pivot, best);
            let mut clean = true;
            for c in pivot + 1..n {
                if cols[c][r] != 0 {
                    let q = num_integer::Integer::div_floor(&cols[c][r], &cols[pivot][r]);
                    axpy(&mut cols, c, pivot, q)?;
                    clean &= cols[c][r] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if cols[pivot][r] != 0 {
            pivot += 1;
        }
    }

    let mut basis: Vec<Vec<i64>> = cols[pivot..].iter().map(|c| c[m..].to_vec()).collect();
    size_reduce(&mut basis)?;
    Ok(basis)
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Greedy pairwise reduction `b_i ← b_i ± b_j` while it shortens `b_i` in
/// the 1-norm. Keeps the lattice unchanged and entries small.
fn size_reduce(basis: &mut [Vec<i64>]) -> Result<()> {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let candidate: Vec<i64> = basis[i].iter().zip(&basis[j]).map(|(x, y)| x + sign * y).collect();
                    if l1(&candidate) < l1(&basis[i]) {
                        basis[i] = candidate;
                        changed = true;
                    }
                }
            }
        }
    }
    Ok(())
}
