//! Closed-form cardinalities of the structured bases.
//!
//! All counts are sign-canonical (one of `±g`). `None` means the value
//! overflows `u128`.

pub fn binomial(n: usize, r: usize) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Falling factorial `P(n, r) = n! / (n - r)!`.
pub fn permutations(n: usize, r: usize) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    (0..r).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128))
}

pub fn graver_ones_count(k: usize) -> u128 {
    binomial(k, 2).expect("C(k,2) fits in u128")
}

pub fn brick_cardinality_count(n: usize, k: usize) -> u128 {
    n as u128 * graver_ones_count(k)
}

pub fn coordinate_cardinality_count(n: usize, k: usize) -> u128 {
    k as u128 * graver_ones_count(n)
}

/// Number of directed `t`-cycles in the complete digraph on `k` nodes:
/// `(t-1)!·C(k,t)`, i.e. `P(k,t)/t`.
pub fn cycles_of_length(k: usize, t: usize) -> Option<u128> {
    if t < 2 {
        return Some(0);
    }
    Some(permutations(k, t)? / t as u128)
}

/// `Σ_{t=2}^{k} (t-1)!·C(k,t)`.
pub fn hilbert_cycles_count(k: usize) -> Option<u128> {
    (2..=k).try_fold(0u128, |acc, t| acc.checked_add(cycles_of_length(k, t)?))
}

/// Sign-canonical liftings of `t`-cycles: `(P(k,t)/t)·P(n,t)/2`.
pub fn assignment_count_for_length(n: usize, k: usize, t: usize) -> Option<u128> {
    if t < 2 || t > n || t > k {
        return Some(0);
    }
    // P(n,t) is even for t ≥ 2
    cycles_of_length(k, t)?.checked_mul(permutations(n, t)? / 2)
}

/// `(1/2)·Σ_{t=2}^{max_len} (P(k,t)/t)·P(n,t)`.
pub fn assignment_count(n: usize, k: usize, max_len: usize) -> Option<u128> {
    let top = max_len.min(n).min(k);
    (2..=top).try_fold(0u128, |acc, t| acc.checked_add(assignment_count_for_length(n, k, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(50, 2), Some(1225));
        assert_eq!(permutations(5, 3), Some(60));
        assert_eq!(hilbert_cycles_count(3), Some(5));
        assert_eq!(hilbert_cycles_count(4), Some(20));
        assert_eq!(assignment_count(2, 2, 2), Some(1));
        assert_eq!(assignment_count(3, 3, 3), Some(15));
        assert_eq!(assignment_count(2, 3, 3), Some(3));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(permutations(60, 60), None);
        assert!(assignment_count(60, 60, 60).is_none());
    }
}
