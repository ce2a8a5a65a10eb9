//! Combinatorial designs consumed by the hypergraph constructions.

mod block;
mod latin;
mod planes;

use thiserror::Error;

use crate::galois::GaloisError;

pub use block::{
    count_blocks_with, design_params, fano, lambda_ij, validate_design, Design, DesignParams,
    ValidationReport,
};
pub use latin::{are_orthogonal, complete_mols, is_latin, LatinSquare, MolsSet};
pub use planes::{inversive_plane, projective_plane};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("row {row} has {len} entries but the grid has {order} rows")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("symbol {symbol} is outside 0..{order}")]
    SymbolOutOfRange { symbol: u32, order: usize },
    #[error("grid is not a Latin square")]
    NotLatin,
    #[error("squares have different orders ({0} and {1})")]
    OrderMismatch(usize, usize),
    #[error("squares {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("{count} squares exceed the maximum of {} for order {order}", order - 1)]
    TooManySquares { count: usize, order: usize },
    #[error("invalid design parameters: {0}")]
    BadParameters(String),
    #[error("point {point} is outside 0..{v}")]
    PointOutOfRange { point: u32, v: usize },
    #[error("block #{index} has {found} distinct points, expected {expected}")]
    BlockSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("b and r formulas apply to 2-designs only (t = {0})")]
    NotPairwise(usize),
    #[error("lambda_{{{i},{j}}} needs i + j <= t = {t}")]
    LambdaRange { i: usize, j: usize, t: usize },
    #[error("generated design is invalid: {0}")]
    GenerationFailed(String),
    #[error(transparent)]
    Field(#[from] GaloisError),
}
