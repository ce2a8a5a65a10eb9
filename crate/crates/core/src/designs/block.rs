//! t-(v,k,λ) block designs: structural checks, brute-force validation, the
//! standard parameter formulas and the block-counting lemma.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::DesignError;
use crate::combinatorics::{binomial, binomial_big, colex_rank};

/// A design: `v` points, blocks of `k` distinct points, claimed to cover
/// every `t`-subset exactly `lambda` times. The claim is only checked by
/// [`validate_design`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    t: usize,
    v: usize,
    k: usize,
    lambda: u64,
    blocks: Vec<Vec<u32>>,
}

impl Design {
    /// Checks structure only: `1 <= t <= k <= v`, each block has `k`
    /// distinct points in `0..v`. Block members are sorted; block order is
    /// kept.
    pub fn new(
        t: usize,
        v: usize,
        k: usize,
        lambda: u64,
        blocks: Vec<Vec<u32>>,
    ) -> Result<Self, DesignError> {
        if t == 0 || t > k || k > v {
            return Err(DesignError::BadParameters(format!(
                "need 1 <= t <= k <= v, got t={t} k={k} v={v}"
            )));
        }
        if v > u32::MAX as usize {
            return Err(DesignError::BadParameters(format!("v = {v} is too large")));
        }
        let mut canonical = Vec::with_capacity(blocks.len());
        for (index, mut block) in blocks.into_iter().enumerate() {
            if let Some(&p) = block.iter().find(|&&p| p as usize >= v) {
                return Err(DesignError::PointOutOfRange { point: p, v });
            }
            block.sort_unstable();
            block.dedup();
            if block.len() != k {
                return Err(DesignError::BlockSize {
                    index,
                    expected: k,
                    found: block.len(),
                });
            }
            canonical.push(block);
        }
        Ok(Design {
            t,
            v,
            k,
            lambda,
            blocks: canonical,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Number of blocks, `b`.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks through each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.v];
        for &p in self.blocks.iter().flatten() {
            r[p as usize] += 1;
        }
        r
    }

    /// `true` if the blocks are every `k`-subset of the points.
    pub fn is_complete(&self) -> bool {
        let mut sorted = self.blocks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == self.blocks.len()
            && sorted.len() as u128 == binomial(self.v as u64, self.k as u64)
    }

    /// Copy of the design with block `index` removed.
    pub fn without_block(&self, index: usize) -> Design {
        let mut d = self.clone();
        d.blocks.remove(index);
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: u64,
    pub b: usize,
    pub min_coverage: u64,
    pub max_coverage: u64,
    /// Lexicographically first `t`-subset whose coverage differs from λ.
    pub first_violation: Option<(Vec<u32>, u64)>,
}

/// Counts the blocks through every `t`-subset of points; valid iff every
/// count equals λ.
pub fn validate_design(d: &Design) -> ValidationReport {
    let subsets = binomial(d.v as u64, d.t as u64) as usize;
    let mut coverage = vec![0u64; subsets];
    for block in &d.blocks {
        for sub in block.iter().copied().combinations(d.t) {
            coverage[colex_rank(&sub)] += 1;
        }
    }
    let min_coverage = coverage.iter().copied().min().unwrap_or(0);
    let max_coverage = coverage.iter().copied().max().unwrap_or(0);
    let valid = min_coverage == d.lambda && max_coverage == d.lambda;
    let first_violation = if valid {
        None
    } else {
        (0..d.v as u32).combinations(d.t).find_map(|sub| {
            let c = coverage[colex_rank(&sub)];
            (c != d.lambda).then_some((sub, c))
        })
    };
    ValidationReport {
        valid,
        t: d.t,
        v: d.v,
        k: d.k,
        lambda: d.lambda,
        b: d.b(),
        min_coverage,
        max_coverage,
        first_violation,
    }
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Formula and observed values of `b` and `r` for a 2-design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignParams {
    /// `λ v (v-1) / (k (k-1))`.
    pub b_formula: BigRational,
    /// `λ (v-1) / (k-1)`.
    pub r_formula: BigRational,
    pub b_observed: usize,
    pub replication: Vec<usize>,
}

impl DesignParams {
    /// Observed `b` and every point's replication equal the formulas.
    pub fn consistent(&self) -> bool {
        self.b_formula == ratio(big(self.b_observed as u64), big(1))
            && self
                .replication
                .iter()
                .all(|&r| self.r_formula == ratio(big(r as u64), big(1)))
    }
}

pub fn design_params(d: &Design) -> Result<DesignParams, DesignError> {
    if d.t != 2 {
        return Err(DesignError::NotPairwise(d.t));
    }
    if d.k < 2 {
        return Err(DesignError::BadParameters("k must be at least 2".into()));
    }
    let (v, k, l) = (d.v as u64, d.k as u64, d.lambda);
    Ok(DesignParams {
        b_formula: ratio(big(l) * big(v) * big(v - 1), big(k) * big(k - 1)),
        r_formula: ratio(big(l) * big(v - 1), big(k - 1)),
        b_observed: d.b(),
        replication: d.replication(),
    })
}

/// `λ_{i,j} = λ C(v-i-j, k-i) / C(v-t, k-t)`: the number of blocks
/// containing a fixed `i`-set and missing a disjoint `j`-set, when
/// `i + j <= t`.
pub fn lambda_ij(d: &Design, i: usize, j: usize) -> Result<BigRational, DesignError> {
    if i + j > d.t {
        return Err(DesignError::LambdaRange { i, j, t: d.t });
    }
    let (v, k, t) = (d.v as u64, d.k as u64, d.t as u64);
    let (i, j) = (i as u64, j as u64);
    let num = big(d.lambda) * BigInt::from(binomial_big(v - i - j, k.saturating_sub(i)));
    let den = BigInt::from(binomial_big(v - t, k - t));
    Ok(ratio(num, den))
}

/// Blocks containing every point of `include` and no point of `exclude`.
pub fn count_blocks_with(
    d: &Design,
    include: &[u32],
    exclude: &[u32],
) -> Result<usize, DesignError> {
    if include.iter().any(|p| exclude.contains(p)) {
        return Err(DesignError::BadParameters(
            "I and J must be disjoint".into(),
        ));
    }
    if let Some(&p) = include.iter().chain(exclude).find(|&&p| p as usize >= d.v) {
        return Err(DesignError::PointOutOfRange { point: p, v: d.v });
    }
    Ok(d.blocks
        .iter()
        .filter(|b| include.iter().all(|p| b.binary_search(p).is_ok()))
        .filter(|b| exclude.iter().all(|p| b.binary_search(p).is_err()))
        .count())
}

/// The Fano plane with its customary block list, relabeled to points 0..7.
pub fn fano() -> Design {
    let blocks = [
        [1, 2, 3],
        [3, 4, 5],
        [1, 5, 6],
        [1, 4, 7],
        [2, 5, 7],
        [3, 6, 7],
        [2, 4, 6],
    ]
    .iter()
    .map(|b| b.iter().map(|p| p - 1).collect())
    .collect();
    Design::new(2, 7, 3, 1, blocks).expect("fano blocks are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn complete(t: usize, v: usize, k: usize) -> Design {
        let lambda = binomial((v - t) as u64, (k - t) as u64) as u64;
        Design::new(t, v, k, lambda, (0..v as u32).combinations(k).collect()).unwrap()
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            Design::new(2, 7, 3, 1, vec![vec![0, 1]]),
            Err(DesignError::BlockSize { found: 2, .. })
        ));
        assert!(matches!(
            Design::new(2, 7, 3, 1, vec![vec![0, 1, 7]]),
            Err(DesignError::PointOutOfRange { point: 7, .. })
        ));
        assert!(Design::new(4, 7, 3, 1, vec![]).is_err());
    }

    #[test]
    fn fano_validates() {
        let d = fano();
        let report = validate_design(&d);
        assert!(report.valid);
        assert_eq!(
            (report.b, report.min_coverage, report.max_coverage),
            (7, 1, 1)
        );
        assert_eq!(d.replication(), vec![3; 7]);
    }

    #[test]
    fn fano_minus_block_fails() {
        let report = validate_design(&fano().without_block(0));
        assert!(!report.valid);
        assert_eq!(report.min_coverage, 0);
        // the removed block was {0,1,2}
        assert_eq!(report.first_violation, Some((vec![0, 1], 0)));
    }

    #[test]
    fn complete_designs_validate() {
        for (v, k) in [(6, 3), (7, 4), (5, 5)] {
            let d = complete(2, v, k);
            assert!(validate_design(&d).valid);
            assert_eq!(d.lambda() as u128, binomial(v as u64 - 2, k as u64 - 2));
            assert!(design_params(&d).unwrap().consistent());
            assert!(d.is_complete());
        }
        assert!(!fano().is_complete());
    }

    #[test]
    fn params() {
        let p = design_params(&fano()).unwrap();
        assert_eq!(p.b_formula, int(7));
        assert_eq!(p.r_formula, int(3));
        assert!(p.consistent());
        let bogus = Design::new(2, 8, 3, 1, vec![]).unwrap();
        let p = design_params(&bogus).unwrap();
        assert_eq!(p.b_formula, ratio(big(56), big(6)));
        assert!(!p.consistent());
        assert_eq!(
            design_params(&complete(3, 6, 4)),
            Err(DesignError::NotPairwise(3))
        );
    }

    #[test]
    fn lambda_table() {
        let d = fano();
        assert_eq!(lambda_ij(&d, 1, 1).unwrap(), int(2));
        assert_eq!(lambda_ij(&d, 2, 0).unwrap(), int(1));
        assert_eq!(lambda_ij(&d, 0, 0).unwrap(), int(7));
        assert_eq!(lambda_ij(&d, 0, 2).unwrap(), int(2));
        assert!(lambda_ij(&d, 2, 1).is_err());
        assert_eq!(count_blocks_with(&d, &[0], &[1]).unwrap(), 2);
        assert!(count_blocks_with(&d, &[0], &[0]).is_err());
    }

    #[test]
    fn lambda_formula_matches_counts_on_fano() {
        let d = fano();
        for i in 0..=2 {
            for j in 0..=2 - i {
                let formula = lambda_ij(&d, i, j).unwrap();
                for points in (0..7u32).permutations(i + j) {
                    let (inc, exc) = points.split_at(i);
                    let n = count_blocks_with(&d, inc, exc).unwrap();
                    assert_eq!(formula, int(n as i64), "i={i} j={j} I={inc:?} J={exc:?}");
                }
            }
        }
    }
}
