//! Hypergraphs built from designs.
//!
//! * [`build_from_mols`]: a family of Latin squares of order `h + 1` gives an
//!   `h`-uniform hypergraph on the `(h+1) × (h+1)` array of cells (vertex
//!   `row·(h+1) + col`). Every row, every column and every symbol class of
//!   every square is an `(h+1)`-set; all of its `h`-subsets become edges.
//! * [`build_from_design`]: every `h`-subset of every block of a design.
//!
//! Builders do not enforce the hypotheses under which these constructions
//! are known to be existentially closed. They evaluate them and attach a
//! [`Guarantee`] naming the certified level, so callers can tell a theorem
//! instance from a negative control.

use itertools::Itertools;
use thiserror::Error;

use crate::combinatorics::binomial;
use crate::designs::{validate_design, Design, DesignError, MolsSet};
use crate::hypergraph::{Canonicalization, Hypergraph, HypergraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("Latin squares of order {0} are too small; order must be at least 4")]
    OrderTooSmall(usize),
    #[error("uniformity h = {h} must lie in 3..={k}")]
    UniformityOutOfRange { h: usize, k: usize },
    #[error("design fails validation (coverage {min}..{max}, expected {lambda})")]
    InvalidDesign { min: u64, max: u64, lambda: u64 },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// An existential-closure level that a known result guarantees for the
/// built hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guarantee {
    pub level: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub hypergraph: Hypergraph,
    pub counts: Canonicalization,
    /// Edge count predicted when distinct source sets cannot share an edge.
    pub expected_edges: Option<u128>,
    pub guarantee: Option<Guarantee>,
    /// Short description, e.g. `mols q=4 squares=3`.
    pub provenance: String,
}

impl Built {
    /// `false` only when a prediction exists and the deduplicated count
    /// disagrees with it.
    pub fn counts_match(&self) -> bool {
        self.expected_edges
            .is_none_or(|e| e == self.counts.unique_edges as u128)
    }
}

fn h_subsets(sets: &[Vec<Vertex>], h: usize) -> Vec<Vec<Vertex>> {
    sets.iter()
        .flat_map(|s| s.iter().copied().combinations(h))
        .collect()
}

pub fn build_from_mols(mols: &MolsSet) -> Result<Built, BuildError> {
    let order = mols.order();
    if order < 4 {
        return Err(BuildError::OrderTooSmall(order));
    }
    let h = order - 1;
    let cell = |r: usize, c: usize| (r * order + c) as Vertex;

    let mut groups: Vec<Vec<Vertex>> = Vec::new();
    groups.extend((0..order).map(|r| (0..order).map(|c| cell(r, c)).collect()));
    groups.extend((0..order).map(|c| (0..order).map(|r| cell(r, c)).collect()));
    for square in mols.squares() {
        for symbol in 0..order as u32 {
            groups.push(
                square
                    .positions_of(symbol)
                    .into_iter()
                    .map(|(r, c)| cell(r, c))
                    .collect(),
            );
        }
    }
    let (hypergraph, counts) = Hypergraph::with_report(h, order * order, h_subsets(&groups, h))?;

    let squares = mols.len();
    let guarantee = mols.is_complete().then(|| Guarantee {
        level: 2,
        reason: format!("complete set of {squares} MOLS of order {order} with h = {h} >= 3"),
    });
    Ok(Built {
        hypergraph,
        counts,
        expected_edges: Some(((squares + 2) * order * order) as u128),
        guarantee,
        provenance: format!("mols q={order} squares={squares}"),
    })
}

pub fn build_from_design(design: &Design, h: usize) -> Result<Built, BuildError> {
    let (t, v, k, lambda) = (design.t(), design.v(), design.k(), design.lambda());
    if h < 3 || h > k {
        return Err(BuildError::UniformityOutOfRange { h, k });
    }
    let report = validate_design(design);
    if !report.valid {
        return Err(BuildError::InvalidDesign {
            min: report.min_coverage,
            max: report.max_coverage,
            lambda,
        });
    }
    let (hypergraph, counts) = Hypergraph::with_report(h, v, h_subsets(design.blocks(), h))?;

    let expected_edges =
        (lambda == 1 && h >= t).then(|| design.b() as u128 * binomial(k as u64, h as u64));

    let mut guarantees = Vec::new();
    if lambda == 1 && t == 2 && k >= 4 && v >= k + 2 && (3..=k - 1).contains(&h) {
        guarantees.push(Guarantee {
            level: 2,
            reason: "(v,k,1)-BIBD with k >= 4, v >= k+2 and 3 <= h <= k-1".to_string(),
        });
    }
    if lambda == 1 && k >= 2 * t && v >= k + t && (t + 1..=k + 1 - t).contains(&h) {
        guarantees.push(Guarantee {
            level: t,
            reason: format!("{t}-(v,k,1) design with k >= 2t, v >= k+t and t+1 <= h <= k-t+1"),
        });
    }
    if h == k && v > k && !design.is_complete() {
        guarantees.push(Guarantee {
            level: 1,
            reason: "non-complete design with v > k viewed as a k-uniform hypergraph".into(),
        });
    }
    let guarantee = guarantees.into_iter().max_by_key(|g| g.level);

    Ok(Built {
        hypergraph,
        counts,
        expected_edges,
        guarantee,
        provenance: format!("design {t}-({v},{k},{lambda}) h={h}"),
    })
}
