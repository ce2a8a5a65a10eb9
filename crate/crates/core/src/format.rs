//! Plain-text file formats.
//!
//! All three formats are whitespace separated, ignore blank lines and treat
//! lines whose first non-blank character is `#` as comments.
//!
//! * Hypergraph: header `h m`, then one edge per line as `h` vertex indices.
//! * Design: header `t v k lambda`, then one block per line as `k` points.
//! * MOLS: header `q count`, then `count` squares of `q` rows each.
//!
//! Writers emit leading `#` comment lines (provenance), the header, and the
//! body in canonical order, so reading and rewriting a written file
//! reproduces it byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::designs::{Design, DesignError, LatinSquare, MolsSet};
use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>, FormatError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line, format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

fn header<const N: usize>(
    lines: &mut impl Iterator<Item = (usize, impl AsRef<str>)>,
    what: &str,
) -> Result<[u64; N], FormatError> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated(format!("missing `{what}` header")))?;
    let values = numbers(line, text.as_ref())?;
    values.try_into().map_err(|v: Vec<u64>| {
        parse_err(
            line,
            format!("header `{what}` needs {N} values, found {}", v.len()),
        )
    })
}

/// Parses `count` members from one line, each `< bound`, all distinct.
fn member_line(
    line: usize,
    text: &str,
    count: usize,
    bound: u64,
    what: &str,
) -> Result<Vec<u32>, FormatError> {
    let values = numbers(line, text)?;
    if values.len() != count {
        return Err(parse_err(
            line,
            format!("{what} needs {count} entries, found {}", values.len()),
        ));
    }
    if let Some(v) = values.iter().find(|&&v| v >= bound) {
        return Err(parse_err(line, format!("{v} is out of range 0..{bound}")));
    }
    let mut sorted = values.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(parse_err(line, format!("{what} repeats an entry")));
    }
    Ok(values.into_iter().map(|v| v as u32).collect())
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = content_lines(text);
    let [h, m] = header::<2>(&mut lines, "h m")?;
    let (h, m) = (h as usize, m as usize);
    let edges = lines
        .map(|(line, t)| member_line(line, t, h, m as u64, "edge"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Hypergraph::new(h, m, edges)?)
}

fn comment_block(out: &mut String, comments: &[String]) {
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_hypergraph(hg: &Hypergraph, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, comments);
    let _ = writeln!(out, "{} {}", hg.h(), hg.m());
    for e in hg.edges() {
        let _ = writeln!(out, "{}", join(e.members()));
    }
    out
}

/// Reads a design; only structure is checked. Use
/// [`crate::designs::validate_design`] for the coverage property.
pub fn parse_design(text: &str) -> Result<Design, FormatError> {
    let mut lines = content_lines(text);
    let [t, v, k, lambda] = header::<4>(&mut lines, "t v k lambda")?;
    let blocks = lines
        .map(|(line, text)| member_line(line, text, k as usize, v, "block"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Design::new(
        t as usize, v as usize, k as usize, lambda, blocks,
    )?)
}

pub fn write_design(d: &Design, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, comments);
    let _ = writeln!(out, "{} {} {} {}", d.t(), d.v(), d.k(), d.lambda());
    for b in d.blocks() {
        let _ = writeln!(out, "{}", join(b));
    }
    out
}

/// Reads a MOLS file; every square must be Latin and every pair orthogonal.
pub fn parse_mols(text: &str) -> Result<MolsSet, FormatError> {
    let mut lines = content_lines(text);
    let [q, count] = header::<2>(&mut lines, "q count")?;
    let q = q as usize;
    let rows: Vec<(usize, Vec<u32>)> = lines
        .map(|(line, t)| member_line(line, t, q, q as u64, "row").map(|r| (line, r)))
        .collect::<Result<_, _>>()?;
    if rows.len() != q * count as usize {
        return Err(FormatError::Truncated(format!(
            "expected {} rows for {count} squares of order {q}, found {}",
            q * count as usize,
            rows.len()
        )));
    }
    let squares = rows
        .chunks(q.max(1))
        .map(|chunk| {
            let first_line = chunk[0].0;
            LatinSquare::from_rows(chunk.iter().map(|(_, r)| r.clone()).collect())
                .map_err(|e| parse_err(first_line, format!("square starting here: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MolsSet::new(q, squares)?)
}

pub fn write_mols(mols: &MolsSet, comments: &[String]) -> String {
    let mut out = String::new();
    comment_block(&mut out, comments);
    let _ = writeln!(out, "{} {}", mols.order(), mols.len());
    for (i, sq) in mols.squares().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for row in sq.rows() {
            let _ = writeln!(out, "{}", join(row));
        }
    }
    out
}
