//! Exhaustive n-existential-closure checking.
//!
//! A hypergraph is n-e.c. when for every n-set `S` of vertices and every
//! `T ⊆ S` some `(h-1)`-set `X` disjoint from `S` is *correctly joined*:
//! `X ∪ {z}` is an edge for every `z ∈ T` and `X ∪ {s}` is a non-edge for
//! every `s ∈ S \ T`.
//!
//! Two engines are provided. [`Engine::Naive`] is the literal triple loop
//! over `S`, `T` and `X`. [`Engine::Optimized`] precomputes, for every
//! `(h-1)`-set `X`, the bitset of vertices `z` with `X ∪ {z}` an edge (its
//! *link*). For a fixed `S` one pass over the candidates then classifies each
//! `X` by the pattern of its link restricted to `S`, which settles all `2^n`
//! choices of `T` at once. Both engines scan `S` lexicographically, `T` by
//! subset bitmask (bit `i` is the `i`-th smallest member of `S`) and `X`
//! lexicographically, so they report the same counterexample and the same
//! witnesses. Parallel runs of the optimized engine reduce in `S` order and
//! produce results identical to the single-threaded run.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::{binomial, colex_rank};
use crate::hypergraph::{Hypergraph, HypergraphError, Vertex};

/// Largest `n` the checkers accept.
pub const MAX_N: usize = 16;

/// Cap on the size of the optimized engine's link table, in 64-bit words.
const LINK_TABLE_WORD_LIMIT: u128 = 1 << 28;

/// Number of `S` sets handed to the worker pool per batch.
const S_BATCH: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("n = {0} exceeds the supported maximum of {MAX_N}")]
    NTooLarge(usize),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("link table for {candidates} candidate sets is too large for the optimized engine")]
    TooLarge { candidates: u128 },
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

pub type Result<T> = std::result::Result<T, CheckError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    #[default]
    Optimized,
    Naive,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub engine: Engine,
    /// Worker threads for the optimized engine; 1 runs on the calling thread.
    pub threads: usize,
    /// Record the first witness of every `(S, T)` pair. Exponentially large.
    pub record_witnesses: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            engine: Engine::Optimized,
            threads: 1,
            record_witnesses: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub s: Vec<Vertex>,
    pub t: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub s: Vec<Vertex>,
    pub t: Vec<Vertex>,
    pub x: Vec<Vertex>,
}

#[derive(Clone, Debug, Default)]
pub struct CheckStats {
    /// `S` sets fully processed, up to and including a failing one.
    pub s_sets_examined: u64,
    /// Candidate `X` sets examined over those `S` sets.
    pub candidates_examined: u64,
    /// Set when `n > m - (h-1)`: no `X` can exist, the verdict is false
    /// without search.
    pub too_few_vertices: bool,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub n: usize,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub witness_log: Option<Vec<Witness>>,
    pub stats: CheckStats,
}

/// Returns `Ok(true)` iff `X` is correctly joined to `T` and `S \ T`.
///
/// Violated preconditions (`|X| != h-1`, `X ∩ S ≠ ∅`, `T ⊄ S`, repeated or
/// out-of-range vertices) are reported as [`CheckError::Contract`].
pub fn correctly_joined(hg: &Hypergraph, x: &[Vertex], t: &[Vertex], s: &[Vertex]) -> Result<bool> {
    let x = distinct_in_range(hg, x, "X")?;
    let s = distinct_in_range(hg, s, "S")?;
    let t = distinct_in_range(hg, t, "T")?;
    if x.len() != hg.h() - 1 {
        return Err(CheckError::Contract(format!(
            "|X| = {} but h - 1 = {}",
            x.len(),
            hg.h() - 1
        )));
    }
    if x.iter().any(|v| s.binary_search(v).is_ok()) {
        return Err(CheckError::Contract("X intersects S".into()));
    }
    if t.iter().any(|v| s.binary_search(v).is_err()) {
        return Err(CheckError::Contract("T is not a subset of S".into()));
    }
    let mut buf = Vec::with_capacity(hg.h());
    Ok(s.iter().all(|&z| {
        let in_t = t.binary_search(&z).is_ok();
        forms_edge(hg, &x, z, &mut buf) == in_t
    }))
}

/// The lexicographically first `(h-1)`-subset of `V \ S` correctly joined
/// to `T` and `S \ T`, if any.
pub fn find_witness(hg: &Hypergraph, s: &[Vertex], t: &[Vertex]) -> Result<Option<Vec<Vertex>>> {
    let s = distinct_in_range(hg, s, "S")?;
    let t = distinct_in_range(hg, t, "T")?;
    if t.iter().any(|v| s.binary_search(v).is_err()) {
        return Err(CheckError::Contract("T is not a subset of S".into()));
    }
    let mask = t
        .iter()
        .map(|v| 1u64 << s.binary_search(v).unwrap())
        .fold(0, |a, b| a | b);
    let mut buf = Vec::with_capacity(hg.h());
    Ok(naive_witness(hg, &s, mask, &mut buf).map(|(x, _)| x))
}

fn distinct_in_range(hg: &Hypergraph, set: &[Vertex], name: &str) -> Result<Vec<Vertex>> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != set.len() {
        return Err(CheckError::Contract(format!(
            "{name} has repeated vertices"
        )));
    }
    if let Some(&v) = sorted.last() {
        if v as usize >= hg.m() {
            return Err(CheckError::Contract(format!(
                "{name} contains vertex {v} outside 0..{}",
                hg.m()
            )));
        }
    }
    Ok(sorted)
}

/// Does `X ∪ {z}` form an edge? `x` must be sorted and not contain `z`.
fn forms_edge(hg: &Hypergraph, x: &[Vertex], z: Vertex, buf: &mut Vec<Vertex>) -> bool {
    buf.clear();
    let split = x.partition_point(|&v| v < z);
    buf.extend_from_slice(&x[..split]);
    buf.push(z);
    buf.extend_from_slice(&x[split..]);
    hg.contains_sorted(buf)
}

/// First X (lexicographic) correctly joined for the T given by `mask`,
/// together with the number of candidates tried.
fn naive_witness(
    hg: &Hypergraph,
    s: &[Vertex],
    mask: u64,
    buf: &mut Vec<Vertex>,
) -> Option<(Vec<Vertex>, u64)> {
    let outside: Vec<Vertex> = hg
        .vertices()
        .filter(|v| s.binary_search(v).is_err())
        .collect();
    let mut tried = 0u64;
    for x in outside.into_iter().combinations(hg.h() - 1) {
        tried += 1;
        let joined = s
            .iter()
            .enumerate()
            .all(|(i, &z)| forms_edge(hg, &x, z, buf) == (mask >> i & 1 == 1));
        if joined {
            return Some((x, tried));
        }
    }
    None
}

/// Decides whether `hg` is `n`-e.c. with default options.
pub fn is_nec(hg: &Hypergraph, n: usize) -> Result<CheckResult> {
    check(hg, n, &CheckOptions::default())
}

/// Decides whether `hg` is `n`-e.c.
pub fn check(hg: &Hypergraph, n: usize, opts: &CheckOptions) -> Result<CheckResult> {
    let started = Instant::now();
    if n == 0 {
        return Err(CheckError::ZeroN);
    }
    if n + hg.h() - 1 > hg.m() {
        let counterexample = (n <= hg.m()).then(|| Counterexample {
            s: (0..n as Vertex).collect(),
            t: Vec::new(),
        });
        return Ok(CheckResult {
            n,
            holds: false,
            counterexample,
            witness_log: opts.record_witnesses.then(Vec::new),
            stats: CheckStats {
                too_few_vertices: true,
                elapsed: started.elapsed(),
                ..CheckStats::default()
            },
        });
    }
    if n > MAX_N {
        return Err(CheckError::NTooLarge(n));
    }
    let mut result = match opts.engine {
        Engine::Naive => check_naive(hg, n, opts.record_witnesses),
        Engine::Optimized => check_optimized(hg, n, opts)?,
    };
    result.stats.elapsed = started.elapsed();
    Ok(result)
}

fn subset_of(s: &[Vertex], mask: u64) -> Vec<Vertex> {
    s.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

fn check_naive(hg: &Hypergraph, n: usize, record: bool) -> CheckResult {
    let mut stats = CheckStats::default();
    let mut log = record.then(Vec::new);
    let mut buf = Vec::with_capacity(hg.h());
    for s in (0..hg.m() as Vertex).combinations(n) {
        stats.s_sets_examined += 1;
        for mask in 0..1u64 << n {
            match naive_witness(hg, &s, mask, &mut buf) {
                Some((x, tried)) => {
                    stats.candidates_examined += tried;
                    if let Some(log) = log.as_mut() {
                        log.push(Witness {
                            s: s.clone(),
                            t: subset_of(&s, mask),
                            x,
                        });
                    }
                }
                None => {
                    stats.candidates_examined +=
                        binomial((hg.m() - n) as u64, hg.h() as u64 - 1) as u64;
                    let t = subset_of(&s, mask);
                    return CheckResult {
                        n,
                        holds: false,
                        counterexample: Some(Counterexample { s, t }),
                        witness_log: log,
                        stats,
                    };
                }
            }
        }
    }
    CheckResult {
        n,
        holds: true,
        counterexample: None,
        witness_log: log,
        stats,
    }
}

/// Every `(h-1)`-subset in lexicographic order with its link bitset.
struct LinkTable {
    width: usize,
    words: usize,
    members: Vec<Vertex>,
    links: Vec<u64>,
}

impl LinkTable {
    fn build(hg: &Hypergraph) -> Result<Self> {
        let width = hg.h() - 1;
        let words = hg.m().div_ceil(64);
        let count = binomial(hg.m() as u64, width as u64);
        if count.saturating_mul(words.max(width) as u128) > LINK_TABLE_WORD_LIMIT {
            return Err(CheckError::TooLarge { candidates: count });
        }
        let count = count as usize;
        let mut members = Vec::with_capacity(count * width);
        let mut lex_position = vec![0usize; count];
        for (i, x) in (0..hg.m() as Vertex).combinations(width).enumerate() {
            lex_position[colex_rank(&x)] = i;
            members.extend_from_slice(&x);
        }
        let mut links = vec![0u64; count * words];
        let mut x = Vec::with_capacity(width);
        for e in hg.edges() {
            let e = e.members();
            for (j, &z) in e.iter().enumerate() {
                x.clear();
                x.extend_from_slice(&e[..j]);
                x.extend_from_slice(&e[j + 1..]);
                let pos = lex_position[colex_rank(&x)];
                links[pos * words + z as usize / 64] |= 1u64 << (z % 64);
            }
        }
        Ok(LinkTable {
            width,
            words,
            members,
            links,
        })
    }

    fn len(&self) -> usize {
        self.links.len() / self.words
    }

    fn members(&self, idx: usize) -> &[Vertex] {
        &self.members[idx * self.width..(idx + 1) * self.width]
    }

    fn link_bit(&self, idx: usize, v: Vertex) -> u64 {
        self.links[idx * self.words + v as usize / 64] >> (v % 64) & 1
    }
}

/// Outcome of scanning every candidate X for a single S.
struct SScan {
    candidates: u64,
    /// First candidate index per T mask, `usize::MAX` where none exists.
    first: Vec<usize>,
    missing: Option<u64>,
}

fn scan_s(table: &LinkTable, s: &[Vertex], m: usize) -> SScan {
    let patterns = 1usize << s.len();
    let mut in_s = vec![false; m];
    for &v in s {
        in_s[v as usize] = true;
    }
    let mut first = vec![usize::MAX; patterns];
    let mut found = 0usize;
    let mut candidates = 0u64;
    for idx in 0..table.len() {
        if table.members(idx).iter().any(|&v| in_s[v as usize]) {
            continue;
        }
        candidates += 1;
        let pattern = s.iter().enumerate().fold(0usize, |p, (i, &v)| {
            p | (table.link_bit(idx, v) as usize) << i
        });
        if first[pattern] == usize::MAX {
            first[pattern] = idx;
            found += 1;
            if found == patterns {
                break;
            }
        }
    }
    let missing = first
        .iter()
        .position(|&f| f == usize::MAX)
        .map(|p| p as u64);
    SScan {
        candidates,
        first,
        missing,
    }
}

fn check_optimized(hg: &Hypergraph, n: usize, opts: &CheckOptions) -> Result<CheckResult> {
    let table = LinkTable::build(hg)?;
    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| CheckError::ThreadPool(e.to_string()))?,
        )
    } else {
        None
    };
    let m = hg.m();
    let mut stats = CheckStats::default();
    let mut log = opts.record_witnesses.then(Vec::new);
    let mut sets = (0..m as Vertex).combinations(n).peekable();
    while sets.peek().is_some() {
        let batch: Vec<Vec<Vertex>> = sets.by_ref().take(S_BATCH).collect();
        let scans: Vec<SScan> = match &pool {
            Some(pool) => pool.install(|| batch.par_iter().map(|s| scan_s(&table, s, m)).collect()),
            None => batch.iter().map(|s| scan_s(&table, s, m)).collect(),
        };
        for (s, scan) in batch.into_iter().zip(scans) {
            stats.s_sets_examined += 1;
            stats.candidates_examined += scan.candidates;
            if let Some(log) = log.as_mut() {
                for (mask, &idx) in scan.first.iter().enumerate() {
                    if idx != usize::MAX {
                        log.push(Witness {
                            s: s.clone(),
                            t: subset_of(&s, mask as u64),
                            x: table.members(idx).to_vec(),
                        });
                    }
                }
            }
            if let Some(mask) = scan.missing {
                let t = subset_of(&s, mask);
                return Ok(CheckResult {
                    n,
                    holds: false,
                    counterexample: Some(Counterexample { s, t }),
                    witness_log: log,
                    stats,
                });
            }
        }
    }
    Ok(CheckResult {
        n,
        holds: true,
        counterexample: None,
        witness_log: log,
        stats,
    })
}

/// Result of [`max_ec`]: the largest certified `n` and the failing check at
/// `n + 1`.
#[derive(Clone, Debug)]
pub struct MaxEc {
    pub max: usize,
    pub failure: CheckResult,
}

/// Largest `n` for which `hg` is n-e.c. (0 if not even 1-e.c.). Ascends from
/// `n = 1` and stops at the first failure; closure is monotone in `n`.
pub fn max_ec(hg: &Hypergraph, opts: &CheckOptions) -> Result<MaxEc> {
    let mut n = 1;
    loop {
        let result = check(hg, n, opts)?;
        if !result.holds {
            return Ok(MaxEc {
                max: n - 1,
                failure: result,
            });
        }
        n += 1;
    }
}

/// Lower bound `n·2^(n-1)` on the edge count of an n-e.c. hypergraph.
pub fn min_edges_bound(n: u32) -> u128 {
    assert!((1..120).contains(&n), "n out of range");
    u128::from(n) << (n - 1)
}

/// Lower bound `n + ℓ` on the vertex count of an n-e.c. `h`-uniform
/// hypergraph, `ℓ` the least positive integer with `C(ℓ, h-1) >= 2^n`.
pub fn min_vertices_bound(n: u32, h: u32) -> u64 {
    assert!((1..120).contains(&n) && h >= 2, "parameters out of range");
    let target = 1u128 << n;
    let reaches = |ell: u64| binomial(ell, u64::from(h) - 1) >= target;
    // C(ell, h-1) is nondecreasing in ell: double, then bisect
    let mut hi = 1u64;
    while !reaches(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    u64::from(n) + hi
}
