//! Small counting helpers shared by the hypergraph, checker and design code.

use num_bigint::BigUint;

/// Binomial coefficient `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Exact binomial coefficient as an arbitrary-precision integer.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Colexicographic rank of a strictly increasing tuple among all tuples of
/// the same length.
pub fn colex_rank(members: &[u32]) -> usize {
    members
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(u64::from(c), i as u64 + 1) as usize)
        .sum()
}

/// Returns true if `values` is strictly increasing.
pub fn strictly_increasing(values: &[u32]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(4, 3), 4);
        assert_eq!(binomial(26, 3), 2600);
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial_big(30, 2), BigUint::from(435u32));
    }

    #[test]
    fn binomial_saturates() {
        assert_eq!(binomial(1000, 500), u128::MAX);
    }

    #[test]
    fn colex_rank_is_a_bijection() {
        for k in 1..4 {
            let mut ranks: Vec<usize> = (0u32..7).combinations(k).map(|c| colex_rank(&c)).collect();
            ranks.sort_unstable();
            let expected: Vec<usize> = (0..binomial(7, k as u64) as usize).collect();
            assert_eq!(ranks, expected);
        }
    }
}
