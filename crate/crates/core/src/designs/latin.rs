//! Latin squares and families of mutually orthogonal Latin squares.

use std::collections::HashSet;

use super::DesignError;
use crate::galois::GfField;

/// `true` iff `grid` is a Latin square: each symbol of `0..q` once per row
/// and once per column.
///
/// Errors if the grid is not square or holds a symbol outside `0..q`.
pub fn is_latin(grid: &[Vec<u32>]) -> Result<bool, DesignError> {
    let q = grid.len();
    if let Some((row, r)) = grid.iter().enumerate().find(|(_, r)| r.len() != q) {
        return Err(DesignError::NotSquare {
            row,
            len: r.len(),
            order: q,
        });
    }
    if let Some(&s) = grid.iter().flatten().find(|&&s| s as usize >= q) {
        return Err(DesignError::SymbolOutOfRange {
            symbol: s,
            order: q,
        });
    }
    let rows_ok = grid.iter().all(|r| is_permutation(r.iter().copied(), q));
    let cols_ok = (0..q).all(|c| is_permutation(grid.iter().map(|r| r[c]), q));
    Ok(rows_ok && cols_ok)
}

fn is_permutation(values: impl Iterator<Item = u32>, q: usize) -> bool {
    let mut seen = vec![false; q];
    for v in values {
        if std::mem::replace(&mut seen[v as usize], true) {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u32>,
}

impl LatinSquare {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, DesignError> {
        if !is_latin(&rows)? {
            return Err(DesignError::NotLatin);
        }
        Ok(LatinSquare {
            order: rows.len(),
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.order.max(1))
    }

    /// Cells `(row, col)` holding `symbol`, in row-major order.
    pub fn positions_of(&self, symbol: u32) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == symbol)
            .map(|(i, _)| (i / self.order, i % self.order))
            .collect()
    }
}

/// `true` iff superimposing the squares yields `q²` distinct symbol pairs.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool, DesignError> {
    if a.order != b.order {
        return Err(DesignError::OrderMismatch(a.order, b.order));
    }
    let pairs: HashSet<(u32, u32)> = a
        .cells
        .iter()
        .copied()
        .zip(b.cells.iter().copied())
        .collect();
    Ok(pairs.len() == a.order * a.order)
}

/// A pairwise-orthogonal family of Latin squares of a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolsSet {
    order: usize,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    /// Checks every pair for orthogonality.
    pub fn new(order: usize, squares: Vec<LatinSquare>) -> Result<Self, DesignError> {
        for sq in &squares {
            if sq.order() != order {
                return Err(DesignError::OrderMismatch(order, sq.order()));
            }
        }
        for i in 0..squares.len() {
            for j in i + 1..squares.len() {
                if !are_orthogonal(&squares[i], &squares[j])? {
                    return Err(DesignError::NotOrthogonal(i, j));
                }
            }
        }
        if order >= 2 && squares.len() > order - 1 {
            return Err(DesignError::TooManySquares {
                count: squares.len(),
                order,
            });
        }
        Ok(MolsSet { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// A complete family has `order - 1` squares.
    pub fn is_complete(&self) -> bool {
        self.order >= 2 && self.squares.len() == self.order - 1
    }
}

/// The `q - 1` squares `L_a(x, y) = a·x + y` over GF(q), one per nonzero
/// `a` in canonical order. Rows and columns are indexed by field elements.
pub fn complete_mols(q: u64) -> Result<MolsSet, DesignError> {
    let field = GfField::of_order(q)?;
    let order = field.order();
    let squares = (1..order)
        .map(|a| {
            let rows = (0..order)
                .map(|x| {
                    let ax = field.mul(a, x);
                    (0..order).map(|y| field.add(ax, y)).collect()
                })
                .collect();
            LatinSquare::from_rows(rows)
        })
        .collect::<Result<Vec<_>, _>>()?;
    MolsSet::new(order as usize, squares)
}
