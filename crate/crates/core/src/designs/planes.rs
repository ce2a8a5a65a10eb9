//! Classical finite geometries as block designs: the Desarguesian
//! projective plane PG(2, q) and the Miquelian inversive plane over GF(q²).
//!
//! Points are labeled by their canonical projective representative (first
//! nonzero coordinate equal to one), sorted by coordinate indices in the
//! field's canonical element order. Both generators run [`validate_design`]
//! on their output and refuse to return a design that fails it.

use std::collections::HashSet;

use super::block::{validate_design, Design};
use super::DesignError;
use crate::galois::GfField;

fn checked(d: Design) -> Result<Design, DesignError> {
    let report = validate_design(&d);
    if report.valid {
        Ok(d)
    } else {
        Err(DesignError::GenerationFailed(format!(
            "{}-({},{},{}) failed validation: coverage {}..{}",
            report.t, report.v, report.k, report.lambda, report.min_coverage, report.max_coverage
        )))
    }
}

/// Normalized nonzero vectors of GF(q)^3 in canonical order.
fn projective_points(field: &GfField) -> Vec<[u32; 3]> {
    let q = field.order();
    let mut points = vec![[0, 0, 1]];
    points.extend((0..q).map(|z| [0, 1, z]));
    points.extend((0..q).flat_map(|y| (0..q).map(move |z| [1, y, z])));
    points
}

/// PG(2, q) as a 2-(q²+q+1, q+1, 1) design. Blocks are the lines, listed
/// in the canonical order of their normalized dual coordinates.
pub fn projective_plane(q: u64) -> Result<Design, DesignError> {
    let field = GfField::of_order(q)?;
    let points = projective_points(&field);
    let dot =
        |a: &[u32; 3], p: &[u32; 3]| (0..3).fold(0, |acc, i| field.add(acc, field.mul(a[i], p[i])));
    let blocks = points
        .iter()
        .map(|line| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(line, p) == 0)
                .map(|(id, _)| id as u32)
                .collect()
        })
        .collect();
    let order = q as usize;
    checked(Design::new(2, points.len(), order + 1, 1, blocks)?)
}

/// The Miquelian inversive plane as a 3-(q²+1, q+1, 1) design.
///
/// Points are the projective line over GF(q²): `(0:1)` is point 0 and
/// `(1:y)` is point `1 + y`. Blocks are the images of the sub-line over
/// GF(q) under every invertible 2×2 matrix over GF(q²), deduplicated and
/// listed in lexicographic order.
pub fn inversive_plane(q: u64) -> Result<Design, DesignError> {
    GfField::of_order(q)?;
    let field = GfField::of_order(q * q)?;
    let big_q = field.order();
    let point_id = |x0: u32, x1: u32| -> u32 {
        match field.inv(x0) {
            None => 0,
            Some(i) => 1 + field.mul(x1, i),
        }
    };
    let base: Vec<(u32, u32)> = std::iter::once((0, 1))
        .chain(field.subfield(q)?.into_iter().map(|y| (1, y)))
        .collect();

    let mut blocks = HashSet::new();
    let mut image = Vec::with_capacity(base.len());
    for a in 0..big_q {
        for b in 0..big_q {
            for c in 0..big_q {
                for d in 0..big_q {
                    if field.mul(a, d) == field.mul(b, c) {
                        continue;
                    }
                    image.clear();
                    image.extend(base.iter().map(|&(x0, x1)| {
                        point_id(
                            field.add(field.mul(a, x0), field.mul(b, x1)),
                            field.add(field.mul(c, x0), field.mul(d, x1)),
                        )
                    }));
                    image.sort_unstable();
                    if !blocks.contains(image.as_slice()) {
                        blocks.insert(image.clone());
                    }
                }
            }
        }
    }
    let mut blocks: Vec<Vec<u32>> = blocks.into_iter().collect();
    blocks.sort_unstable();
    let qs = q as usize;
    checked(Design::new(3, qs * qs + 1, qs + 1, 1, blocks)?)
}
