//! Immutable `h`-uniform hypergraphs over a dense vertex range `[0, m)`.
//!
//! A [`Hypergraph`] is always stored in canonical form: every edge is a
//! strictly increasing tuple of vertices and the edge list is sorted
//! lexicographically without duplicates. Vertices that appear in no edge are
//! allowed (they simply make the hypergraph fail 1-existential closure).
//!
//! Derived hypergraphs ([`Hypergraph::delete_vertex`], [`Hypergraph::induced`])
//! are relabeled onto a dense range and come with a [`Relabeling`] map.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::combinatorics::binomial;

/// A vertex label, always `< m` of its owning hypergraph.
pub type Vertex = u32;

/// Hypergraphs with at most this many vertices index their edges by `u128`
/// bit masks; larger ones fall back to hashed sorted tuples.
pub const MASK_VERTEX_LIMIT: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("uniformity h = {0} must be at least 2")]
    UniformityTooSmall(usize),
    #[error("vertex count m = {m} is smaller than the uniformity h = {h}")]
    TooFewVertices { h: usize, m: usize },
    #[error("vertex count m = {0} does not fit in a 32-bit label")]
    TooManyVertices(usize),
    #[error("edge #{index} has {found} distinct members, expected {expected}")]
    WrongEdgeSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} is out of range for a hypergraph on {m} vertices")]
    VertexOutOfRange { vertex: u64, m: usize },
    #[error("removing a vertex from a hypergraph on {m} vertices would leave fewer than h = {h}")]
    DeletionTooSmall { h: usize, m: usize },
    #[error("induced vertex set has {size} vertices, fewer than h = {h}")]
    InducedTooSmall { h: usize, size: usize },
}

pub type Result<T> = std::result::Result<T, HypergraphError>;

/// A single hyperedge: a strictly increasing tuple of vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Box<[Vertex]>);

impl Edge {
    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        Edge(members.into_boxed_slice())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// Counts gathered while canonicalizing a raw edge list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Canonicalization {
    pub raw_edges: usize,
    pub unique_edges: usize,
}

impl Canonicalization {
    pub fn duplicates_dropped(&self) -> usize {
        self.raw_edges - self.unique_edges
    }
}

/// Old-label/new-label correspondence produced by vertex deletion and
/// induction. New labels preserve the relative order of the old ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    new_to_old: Vec<Vertex>,
    old_to_new: Vec<Option<Vertex>>,
}

impl Relabeling {
    fn from_kept(kept: Vec<Vertex>, old_m: usize) -> Self {
        let mut old_to_new = vec![None; old_m];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old as usize] = Some(new as Vertex);
        }
        Relabeling {
            new_to_old: kept,
            old_to_new,
        }
    }

    /// New label of an old vertex, or `None` if it was dropped.
    pub fn new_label(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old as usize).copied().flatten()
    }

    pub fn old_label(&self, new: Vertex) -> Vertex {
        self.new_to_old[new as usize]
    }

    /// Old labels in order of their new labels.
    pub fn kept(&self) -> &[Vertex] {
        &self.new_to_old
    }
}

#[derive(Clone, Debug)]
enum EdgeIndex {
    Mask(HashSet<u128>),
    Keys(HashSet<Box<[Vertex]>>),
}

impl EdgeIndex {
    fn build(edges: &[Edge], m: usize, mask_limit: usize) -> Self {
        if m <= mask_limit {
            EdgeIndex::Mask(edges.iter().map(|e| mask_of(e.members())).collect())
        } else {
            EdgeIndex::Keys(edges.iter().map(|e| e.0.clone()).collect())
        }
    }

    fn contains(&self, sorted: &[Vertex]) -> bool {
        match self {
            EdgeIndex::Mask(set) => set.contains(&mask_of(sorted)),
            EdgeIndex::Keys(set) => set.contains(sorted),
        }
    }
}

fn mask_of(members: &[Vertex]) -> u128 {
    members.iter().fold(0u128, |acc, &v| acc | (1u128 << v))
}

/// An immutable simple `h`-uniform hypergraph on vertices `0..m`.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    h: usize,
    m: usize,
    edges: Vec<Edge>,
    index: EdgeIndex,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.m == other.m && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

fn check_shape(h: usize, m: usize) -> Result<()> {
    if h < 2 {
        return Err(HypergraphError::UniformityTooSmall(h));
    }
    if m < h {
        return Err(HypergraphError::TooFewVertices { h, m });
    }
    if m > Vertex::MAX as usize {
        return Err(HypergraphError::TooManyVertices(m));
    }
    Ok(())
}

impl Hypergraph {
    /// Builds a hypergraph from raw edges given in any order, with members
    /// in any order. Repeated edges are collapsed.
    pub fn new<I, E>(h: usize, m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        Self::with_report(h, m, edges).map(|(hg, _)| hg)
    }

    /// Like [`Hypergraph::new`], also reporting raw vs deduplicated counts.
    pub fn with_report<I, E>(h: usize, m: usize, edges: I) -> Result<(Self, Canonicalization)>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        Self::build(h, m, edges, MASK_VERTEX_LIMIT)
    }

    pub(crate) fn build<I, E>(
        h: usize,
        m: usize,
        edges: I,
        mask_limit: usize,
    ) -> Result<(Self, Canonicalization)>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        check_shape(h, m)?;
        let mut canonical = Vec::new();
        for (index, raw) in edges.into_iter().enumerate() {
            let mut members = raw.as_ref().to_vec();
            if let Some(&bad) = members.iter().find(|&&v| v as usize >= m) {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: u64::from(bad),
                    m,
                });
            }
            members.sort_unstable();
            members.dedup();
            if members.len() != h {
                return Err(HypergraphError::WrongEdgeSize {
                    index,
                    expected: h,
                    found: members.len(),
                });
            }
            canonical.push(Edge::from_sorted(members));
        }
        let raw_edges = canonical.len();
        canonical.sort_unstable();
        canonical.dedup();
        let report = Canonicalization {
            raw_edges,
            unique_edges: canonical.len(),
        };
        let index = EdgeIndex::build(&canonical, m, mask_limit);
        Ok((
            Hypergraph {
                h,
                m,
                edges: canonical,
                index,
            },
            report,
        ))
    }

    /// Internal constructor for edge lists that are already canonical.
    fn from_canonical(h: usize, m: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let index = EdgeIndex::build(&edges, m, MASK_VERTEX_LIMIT);
        Hypergraph { h, m, edges, index }
    }

    pub fn empty(h: usize, m: usize) -> Result<Self> {
        check_shape(h, m)?;
        Ok(Self::from_canonical(h, m, Vec::new()))
    }

    /// The complete `h`-uniform hypergraph: every `h`-subset is an edge.
    pub fn complete(h: usize, m: usize) -> Result<Self> {
        check_shape(h, m)?;
        let edges = (0..m as Vertex)
            .combinations(h)
            .map(Edge::from_sorted)
            .collect();
        Ok(Self::from_canonical(h, m, edges))
    }

    /// Uniformity.
    pub fn h(&self) -> usize {
        self.h
    }

    /// Vertex count.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.m as Vertex
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.m {
            Ok(())
        } else {
            Err(HypergraphError::VertexOutOfRange {
                vertex: u64::from(v),
                m: self.m,
            })
        }
    }

    /// Membership test for an arbitrary vertex set (any order).
    pub fn has_edge(&self, e: &[Vertex]) -> Result<bool> {
        for &v in e {
            self.check_vertex(v)?;
        }
        let mut members = e.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.len() != self.h {
            return Err(HypergraphError::WrongEdgeSize {
                index: 0,
                expected: self.h,
                found: members.len(),
            });
        }
        Ok(self.index.contains(&members))
    }

    /// Membership test for a tuple already known to be strictly increasing,
    /// of length `h` and in range. No validation is performed.
    pub fn contains_sorted(&self, sorted: &[Vertex]) -> bool {
        self.index.contains(sorted)
    }

    /// The `h`-uniform complement on the same vertex set.
    pub fn complement(&self) -> Hypergraph {
        let edges = (0..self.m as Vertex)
            .combinations(self.h)
            .filter(|c| !self.index.contains(c))
            .map(Edge::from_sorted)
            .collect();
        Self::from_canonical(self.h, self.m, edges)
    }

    /// `H - v`: drops `v` and every edge through it, relabeling the rest.
    pub fn delete_vertex(&self, v: Vertex) -> Result<(Hypergraph, Relabeling)> {
        self.check_vertex(v)?;
        if self.m < self.h + 1 {
            return Err(HypergraphError::DeletionTooSmall {
                h: self.h,
                m: self.m,
            });
        }
        let kept: Vec<Vertex> = self.vertices().filter(|&u| u != v).collect();
        Ok(self.restrict(kept))
    }

    /// `H[Y]`: the edges lying entirely inside `Y`, relabeled onto `0..|Y|`.
    pub fn induced(&self, y: &[Vertex]) -> Result<(Hypergraph, Relabeling)> {
        for &v in y {
            self.check_vertex(v)?;
        }
        let mut kept = y.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() < self.h {
            return Err(HypergraphError::InducedTooSmall {
                h: self.h,
                size: kept.len(),
            });
        }
        Ok(self.restrict(kept))
    }

    fn restrict(&self, kept: Vec<Vertex>) -> (Hypergraph, Relabeling) {
        let map = Relabeling::from_kept(kept, self.m);
        // relabeling is monotone, so the filtered list stays sorted
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                e.members()
                    .iter()
                    .map(|&u| map.new_label(u))
                    .collect::<Option<Vec<_>>>()
                    .map(Edge::from_sorted)
            })
            .collect();
        let m = map.kept().len();
        (Self::from_canonical(self.h, m, edges), map)
    }

    /// `N(v)`: every vertex sharing at least one edge with `v`, ascending.
    pub fn neighbourhood(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let mut seen = vec![false; self.m];
        for e in self.edges.iter().filter(|e| e.contains(v)) {
            for &u in e.members() {
                seen[u as usize] = true;
            }
        }
        seen[v as usize] = false;
        Ok(collect_marked(&seen))
    }

    /// `A(v)`: every vertex sharing at least one edge of the complement with
    /// `v`. A vertex `u` qualifies exactly when fewer than `C(m-2, h-2)` edges
    /// contain both `u` and `v`, so the complement is never built.
    pub fn anti_neighbourhood(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let mut codegree = vec![0u128; self.m];
        for e in self.edges.iter().filter(|e| e.contains(v)) {
            for &u in e.members() {
                codegree[u as usize] += 1;
            }
        }
        let through_pair = binomial(self.m as u64 - 2, self.h as u64 - 2);
        let marked: Vec<bool> = codegree
            .iter()
            .enumerate()
            .map(|(u, &c)| u != v as usize && c < through_pair)
            .collect();
        Ok(collect_marked(&marked))
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(v)).count())
    }
}

fn collect_marked(marked: &[bool]) -> Vec<Vertex> {
    marked
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(u, _)| u as Vertex)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn smallest_1ec() -> Hypergraph {
        Hypergraph::new(3, 4, [[0, 1, 2], [0, 2, 3]]).unwrap()
    }

    #[test]
    fn construction_and_dedup() {
        assert_eq!(smallest_1ec().edge_count(), 2);
        assert_eq!(
            Hypergraph::new(3, 4, Vec::<Vec<u32>>::new())
                .unwrap()
                .edge_count(),
            0
        );
        let (hg, report) = Hypergraph::with_report(3, 4, [[0, 1, 2], [2, 1, 0]]).unwrap();
        assert_eq!(hg.edge_count(), 1);
        assert_eq!(report.raw_edges, 2);
        assert_eq!(report.duplicates_dropped(), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Hypergraph::new(1, 4, Vec::<Vec<u32>>::new()),
            Err(HypergraphError::UniformityTooSmall(1))
        );
        assert_eq!(
            Hypergraph::new(3, 2, Vec::<Vec<u32>>::new()),
            Err(HypergraphError::TooFewVertices { h: 3, m: 2 })
        );
        assert!(matches!(
            Hypergraph::new(3, 4, [vec![0, 1]]),
            Err(HypergraphError::WrongEdgeSize { found: 2, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 4, [vec![0, 1, 1]]),
            Err(HypergraphError::WrongEdgeSize { found: 2, .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 4, [vec![0, 1, 4]]),
            Err(HypergraphError::VertexOutOfRange { vertex: 4, .. })
        ));
    }

    #[test]
    fn membership() {
        let hg = smallest_1ec();
        assert!(hg.has_edge(&[0, 1, 2]).unwrap());
        assert!(hg.has_edge(&[2, 0, 1]).unwrap());
        assert!(!hg.has_edge(&[1, 2, 3]).unwrap());
        let first = hg.edges()[0].members().to_vec();
        assert!(hg.has_edge(&first).unwrap());
        assert!(hg.has_edge(&[0, 1]).is_err());
        assert!(hg.has_edge(&[0, 1, 9]).is_err());
    }

    #[test]
    fn complement_examples() {
        let hg = smallest_1ec();
        let c = hg.complement();
        assert_eq!(c.edge_count(), 2);
        assert_eq!(c.edges()[0].members(), &[0, 1, 3]);
        assert_eq!(c.edges()[1].members(), &[1, 2, 3]);
        assert_eq!(
            Hypergraph::complete(3, 6)
                .unwrap()
                .complement()
                .edge_count(),
            0
        );
        assert_eq!(c.complement(), hg);
    }

    #[test]
    fn delete_vertex_examples() {
        let (d, map) = smallest_1ec().delete_vertex(3).unwrap();
        assert_eq!((d.h(), d.m()), (3, 3));
        assert_eq!(d.edges().len(), 1);
        assert_eq!(d.edges()[0].members(), &[0, 1, 2]);
        assert_eq!(map.new_label(3), None);
        assert_eq!(map.new_label(2), Some(2));

        let (d, map) = smallest_1ec().delete_vertex(1).unwrap();
        assert_eq!(d.edges()[0].members(), &[0, 1, 2]);
        assert_eq!(map.old_label(1), 2);

        let single = Hypergraph::new(2, 3, [[0, 1]]).unwrap();
        assert_eq!(single.delete_vertex(2).unwrap().0.edge_count(), 1);
        assert_eq!(single.delete_vertex(0).unwrap().0.edge_count(), 0);

        let tight = Hypergraph::new(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(
            tight.delete_vertex(0),
            Err(HypergraphError::DeletionTooSmall { h: 3, m: 3 })
        );
    }

    #[test]
    fn neighbourhoods() {
        let hg = smallest_1ec();
        assert_eq!(hg.neighbourhood(0).unwrap(), vec![1, 2, 3]);
        assert_eq!(hg.neighbourhood(1).unwrap(), vec![0, 2]);
        let isolated = Hypergraph::new(2, 4, [[0, 1]]).unwrap();
        assert!(isolated.neighbourhood(3).unwrap().is_empty());
        let complete = Hypergraph::complete(3, 5).unwrap();
        assert_eq!(complete.neighbourhood(2).unwrap(), vec![0, 1, 3, 4]);
        assert!(complete.anti_neighbourhood(2).unwrap().is_empty());
        let empty = Hypergraph::empty(3, 5).unwrap();
        assert_eq!(empty.anti_neighbourhood(0).unwrap(), vec![1, 2, 3, 4]);
        // complement edges {0,1,3} and {1,2,3}
        assert_eq!(hg.anti_neighbourhood(0).unwrap(), vec![1, 3]);
        assert!(hg.neighbourhood(4).is_err());
    }

    #[test]
    fn induced_examples() {
        let hg = smallest_1ec();
        let all: Vec<u32> = hg.vertices().collect();
        assert_eq!(hg.induced(&all).unwrap().0, hg);
        assert_eq!(hg.induced(&[0, 1, 2]).unwrap().0.edge_count(), 1);
        assert_eq!(hg.induced(&[1, 2, 3]).unwrap().0.edge_count(), 0);
        assert_eq!(
            hg.induced(&[0, 1]),
            Err(HypergraphError::InducedTooSmall { h: 3, size: 2 })
        );
    }

    #[test]
    fn degrees() {
        let hg = smallest_1ec();
        assert_eq!(hg.degree(0).unwrap(), 2);
        assert_eq!(hg.degree(1).unwrap(), 1);
        assert_eq!(Hypergraph::empty(3, 5).unwrap().degree(0).unwrap(), 0);
        let complete = Hypergraph::complete(3, 7).unwrap();
        assert_eq!(complete.degree(4).unwrap() as u128, binomial(6, 2));
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (2usize..=4, 0usize..=4)
            .prop_flat_map(|(h, extra)| {
                let m = h + extra;
                let all: Vec<Vec<u32>> = (0..m as u32).combinations(h).collect();
                let n = all.len();
                (
                    Just((h, m, all)),
                    proptest::collection::vec(any::<bool>(), n),
                )
            })
            .prop_map(|((h, m, all), keep)| {
                let edges: Vec<_> = all
                    .into_iter()
                    .zip(keep)
                    .filter(|(_, k)| *k)
                    .map(|(e, _)| e)
                    .collect();
                Hypergraph::new(h, m, edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn canonicalization_ignores_order(hg in arb_hypergraph(), seed in any::<u64>()) {
            // reverse members, rotate the edge list and repeat an edge
            let mut raw: Vec<Vec<u32>> = hg
                .edges()
                .iter()
                .map(|e| e.members().iter().rev().copied().collect())
                .collect();
            if !raw.is_empty() {
                let k = (seed as usize) % raw.len();
                raw.rotate_left(k);
                raw.push(raw[0].clone());
            }
            let rebuilt = Hypergraph::new(hg.h(), hg.m(), raw).unwrap();
            prop_assert_eq!(rebuilt, hg);
        }

        #[test]
        fn complement_laws(hg in arb_hypergraph()) {
            let c = hg.complement();
            prop_assert_eq!(
                (hg.edge_count() + c.edge_count()) as u128,
                binomial(hg.m() as u64, hg.h() as u64)
            );
            prop_assert_eq!(c.complement(), hg.clone());
            for v in hg.vertices() {
                prop_assert_eq!(hg.anti_neighbourhood(v).unwrap(), c.neighbourhood(v).unwrap());
            }
        }

        #[test]
        fn degree_sum(hg in arb_hypergraph()) {
            let total: usize = hg.vertices().map(|v| hg.degree(v).unwrap()).sum();
            prop_assert_eq!(total, hg.h() * hg.edge_count());
        }

        #[test]
        fn deletion_matches_induction(hg in arb_hypergraph()) {
            prop_assume!(hg.m() > hg.h());
            for v in hg.vertices() {
                let rest: Vec<u32> = hg.vertices().filter(|&u| u != v).collect();
                let (a, map_a) = hg.induced(&rest).unwrap();
                let (b, map_b) = hg.delete_vertex(v).unwrap();
                prop_assert_eq!(a, b);
                prop_assert_eq!(map_a, map_b);
            }
        }

        #[test]
        fn index_representations_agree(hg in arb_hypergraph()) {
            let raw: Vec<Vec<u32>> = hg.edges().iter().map(|e| e.members().to_vec()).collect();
            let (keyed, _) = Hypergraph::build(hg.h(), hg.m(), raw, 0).unwrap();
            prop_assert!(matches!(keyed.index, EdgeIndex::Keys(_)));
            for c in (0..hg.m() as u32).combinations(hg.h()) {
                prop_assert_eq!(keyed.contains_sorted(&c), hg.contains_sorted(&c));
            }
        }
    }

    #[test]
    fn large_vertex_sets_use_keyed_index() {
        let hg = Hypergraph::new(2, 200, [[0, 199], [5, 150]]).unwrap();
        assert!(matches!(hg.index, EdgeIndex::Keys(_)));
        assert!(hg.has_edge(&[199, 0]).unwrap());
        assert!(!hg.has_edge(&[1, 199]).unwrap());
    }
}
