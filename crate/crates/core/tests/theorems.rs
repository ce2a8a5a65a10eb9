//! Structural consequences of existential closure, checked on random
//! hypergraphs and on the design-built families.

mod common;

use common::{brute_is_nec, edge_lists, fixture};
use echyper::builders::{build_from_design, build_from_mols};
use echyper::checker::{max_ec, min_edges_bound, min_vertices_bound, CheckOptions};
use echyper::designs::{complete_mols, fano, inversive_plane, projective_plane};
use echyper::hypergraph::HypergraphError;
use echyper::random::RandomModel;
use echyper::{is_nec, Hypergraph};
use proptest::prelude::*;

/// `Some(verdict)` for sub-hypergraphs that exist, `None` when the vertex
/// set is smaller than `h`.
fn sub_is_nec(
    sub: Result<(Hypergraph, echyper::hypergraph::Relabeling), HypergraphError>,
    n: usize,
) -> Option<bool> {
    match sub {
        Ok((g, _)) => Some(is_nec(&g, n).unwrap().holds),
        Err(HypergraphError::InducedTooSmall { .. } | HypergraphError::DeletionTooSmall { .. }) => {
            None
        }
        Err(e) => panic!("{e}"),
    }
}

/// Every consequence of `hg` being `n`-e.c. that the checker can observe.
fn assert_consequences(name: &str, hg: &Hypergraph, n: usize) {
    assert!(is_nec(hg, n).unwrap().holds, "{name} should be {n}-e.c.");
    for lower in 1..n {
        assert!(
            is_nec(hg, lower).unwrap().holds,
            "{name}: monotonicity at {lower}"
        );
    }
    assert!(
        is_nec(&hg.complement(), n).unwrap().holds,
        "{name}: complement"
    );
    assert!(
        hg.edge_count() as u128 >= min_edges_bound(n as u32),
        "{name}: edge bound"
    );
    assert!(
        hg.m() as u64 >= min_vertices_bound(n as u32, hg.h() as u32),
        "{name}: vertex bound"
    );
    if n >= 2 {
        for v in hg.vertices() {
            let checks = [
                ("H-v", sub_is_nec(hg.delete_vertex(v), n - 1)),
                (
                    "N(v)",
                    sub_is_nec(hg.induced(&hg.neighbourhood(v).unwrap()), n - 1),
                ),
                (
                    "A(v)",
                    sub_is_nec(hg.induced(&hg.anti_neighbourhood(v).unwrap()), n - 1),
                ),
            ];
            for (what, verdict) in checks {
                assert_ne!(
                    verdict,
                    Some(false),
                    "{name}: {what} for v={v} not {}-e.c.",
                    n - 1
                );
            }
        }
    }
}

#[test]
fn rook_graph() {
    let g = fixture("k3k3.hg");
    assert_consequences("K3xK3", &g, 2);
    assert_eq!(max_ec(&g, &CheckOptions::default()).unwrap().max, 2);
}

#[test]
fn mols_families() {
    for q in [4, 5] {
        let built = build_from_mols(&complete_mols(q).unwrap()).unwrap();
        assert_consequences(&format!("H_L q={q}"), &built.hypergraph, 2);
    }
}

#[test]
fn projective_planes() {
    assert_consequences(
        "PG(3) h=3",
        &build_from_design(&projective_plane(3).unwrap(), 3)
            .unwrap()
            .hypergraph,
        2,
    );
    for h in [3, 4] {
        let hg = build_from_design(&projective_plane(4).unwrap(), h)
            .unwrap()
            .hypergraph;
        assert_consequences(&format!("PG(4) h={h}"), &hg, 2);
    }
}

#[test]
fn inversive_plane_three_closure() {
    let hg = build_from_design(&inversive_plane(5).unwrap(), 4)
        .unwrap()
        .hypergraph;
    assert_consequences("inversive(5) h=4", &hg, 3);
}

#[test]
fn fano_is_exactly_one_closed() {
    let hg = build_from_design(&fano(), 3).unwrap().hypergraph;
    assert_consequences("fano", &hg, 1);
    assert_eq!(max_ec(&hg, &CheckOptions::default()).unwrap().max, 1);
}

#[test]
fn vertex_bound_for_graphs() {
    for n in 1..=20u32 {
        assert_eq!(min_vertices_bound(n, 2), u64::from(n) + (1u64 << n));
    }
}

fn small_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=3, 4usize..=9, 1u64..u64::MAX, 0.2f64..0.9)
        .prop_map(|(h, m, seed, p)| RandomModel::new(h, m, p, seed).unwrap().sample())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn checker_matches_definition(hg in small_hypergraph(), n in 1usize..=2) {
        let expected = brute_is_nec(hg.h(), hg.m(), &edge_lists(&hg), n);
        prop_assert_eq!(is_nec(&hg, n).unwrap().holds, expected);
    }

    #[test]
    fn closure_is_monotone(hg in small_hypergraph()) {
        let top = max_ec(&hg, &CheckOptions::default()).unwrap().max;
        for n in 1..=top + 1 {
            prop_assert_eq!(is_nec(&hg, n).unwrap().holds, n <= top);
        }
    }

    #[test]
    fn complement_preserves_closure(hg in small_hypergraph(), n in 1usize..=2) {
        prop_assert_eq!(is_nec(&hg, n).unwrap().holds, is_nec(&hg.complement(), n).unwrap().holds);
    }

    #[test]
    fn closed_graphs_meet_bounds(hg in small_hypergraph()) {
        let top = max_ec(&hg, &CheckOptions::default()).unwrap().max;
        for n in 1..=top as u32 {
            prop_assert!(hg.edge_count() as u128 >= min_edges_bound(n));
            prop_assert!(hg.m() as u64 >= min_vertices_bound(n, hg.h() as u32));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // larger random hypergraphs are often 2-e.c., so the deletion and
    // neighbourhood consequences are actually exercised
    #[test]
    fn two_closed_random_graphs(seed in any::<u64>(), h in 2usize..=3) {
        let m = if h == 2 { 32 } else { 12 };
        let hg = RandomModel::new(h, m, 0.5, seed).unwrap().sample();
        prop_assume!(is_nec(&hg, 2).unwrap().holds);
        assert_consequences("random", &hg, 2);
    }
}
