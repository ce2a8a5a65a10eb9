//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use echyper::format::parse_hypergraph;
use echyper::Hypergraph;
use itertools::Itertools;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> Hypergraph {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    parse_hypergraph(&text).expect("fixture parses")
}

/// Definitional n-e.c. test on plain sets, sharing no code with the
/// library's checkers.
pub fn brute_is_nec(h: usize, m: usize, edges: &[Vec<u32>], n: usize) -> bool {
    let edge_set: HashSet<Vec<u32>> = edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e
        })
        .collect();
    let is_edge = |x: &[u32], z: u32| {
        let mut e = x.to_vec();
        e.push(z);
        e.sort_unstable();
        edge_set.contains(&e)
    };
    if n > m {
        return false;
    }
    (0..m as u32).combinations(n).all(|s| {
        s.iter().copied().powerset().all(|t| {
            (0..m as u32)
                .filter(|v| !s.contains(v))
                .combinations(h - 1)
                .any(|x| s.iter().all(|&z| is_edge(&x, z) == t.contains(&z)))
        })
    })
}

pub fn edge_lists(hg: &Hypergraph) -> Vec<Vec<u32>> {
    hg.edges().iter().map(|e| e.members().to_vec()).collect()
}
