//! The random `h`-uniform hypergraph `H_h(m, p)`: every `h`-subset of
//! `m` vertices is an edge independently with probability `p`.
//!
//! # Reproducibility
//!
//! Sampling is pinned to ChaCha8 as implemented by `rand_chacha` 0.3,
//! seeded through `SeedableRng::seed_from_u64`. The `h`-subsets are visited
//! in lexicographic order and each consumes exactly one `next_u64()` draw
//! `u`; the subset is kept iff `(u >> 11) · 2^-53 < p`. Changing any of this
//! changes every sampled hypergraph.
//!
//! Trial `i` of an estimate (0-based) uses the seed
//! `splitmix64(base_seed + 0x9E3779B97F4A7C15 · (i + 1))` with wrapping
//! arithmetic, see [`trial_seed`].

use itertools::Itertools;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::checker::{check, CheckError, CheckOptions};
use crate::combinatorics::binomial;
use crate::hypergraph::{Hypergraph, HypergraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RandomError {
    #[error("edge probability {0} must lie strictly between 0 and 1")]
    Probability(f64),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("union bound needs n >= 1, h >= 2 and m > n (got n={n}, h={h}, m={m})")]
    BoundParameters { n: usize, h: usize, m: usize },
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial` derived from `base`.
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    splitmix64(base.wrapping_add(GOLDEN_GAMMA.wrapping_mul(trial.wrapping_add(1))))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomModel {
    h: usize,
    m: usize,
    p: f64,
    seed: u64,
}

impl RandomModel {
    pub fn new(h: usize, m: usize, p: f64, seed: u64) -> Result<Self, RandomError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(RandomError::Probability(p));
        }
        // shape errors come from the hypergraph constructor
        Hypergraph::empty(h, m)?;
        Ok(RandomModel { h, m, p, seed })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        RandomModel { seed, ..*self }
    }

    pub fn sample(&self) -> Hypergraph {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let edges: Vec<Vec<Vertex>> = (0..self.m as Vertex)
            .combinations(self.h)
            .filter(|_| {
                let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                u < self.p
            })
            .collect();
        Hypergraph::new(self.h, self.m, edges).expect("sampled edges are valid")
    }
}

/// `C(m,n) · 2^n · (1 - p^n)^C(m-n, h-1)`, an upper bound on the probability
/// that `H_h(m, p)` is not n-e.c. Evaluated in the log domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnionBound {
    pub ln_value: f64,
}

impl UnionBound {
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }

    pub fn log10(&self) -> f64 {
        self.ln_value / std::f64::consts::LN_10
    }
}

pub fn union_bound(n: usize, h: usize, m: usize, p: f64) -> Result<UnionBound, RandomError> {
    if n < 1 || h < 2 || m <= n {
        return Err(RandomError::BoundParameters { n, h, m });
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(RandomError::Probability(p));
    }
    let ln_choose: f64 = (0..n).map(|i| ((m - i) as f64 / (i + 1) as f64).ln()).sum();
    let exponent = binomial((m - n) as u64, h as u64 - 1) as f64;
    let ln_miss = (-p.powi(n as i32)).ln_1p();
    Ok(UnionBound {
        ln_value: ln_choose + n as f64 * std::f64::consts::LN_2 + exponent * ln_miss,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub fraction: f64,
    pub verdicts: Vec<bool>,
    pub seeds: Vec<u64>,
}

/// Samples `trials` hypergraphs (trial seeds from [`trial_seed`]) and
/// checks each for n-existential closure. Trials run on `threads` workers;
/// the result does not depend on the thread count.
pub fn estimate_ec_fraction(
    model: &RandomModel,
    n: usize,
    trials: usize,
    threads: usize,
) -> Result<Estimate, RandomError> {
    if trials == 0 {
        return Err(RandomError::NoTrials);
    }
    let seeds: Vec<u64> = (0..trials as u64)
        .map(|i| trial_seed(model.seed, i))
        .collect();
    let run = |seed: &u64| -> Result<bool, CheckError> {
        let hg = model.with_seed(*seed).sample();
        Ok(check(&hg, n, &CheckOptions::default())?.holds)
    };
    let verdicts: Result<Vec<bool>, CheckError> = if threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| RandomError::ThreadPool(e.to_string()))?
            .install(|| seeds.par_iter().map(run).collect())
    } else {
        seeds.iter().map(run).collect()
    };
    let verdicts = verdicts?;
    let successes = verdicts.iter().filter(|&&v| v).count();
    Ok(Estimate {
        fraction: successes as f64 / trials as f64,
        verdicts,
        seeds,
    })
}
