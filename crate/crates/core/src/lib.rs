//! Construction and exhaustive certification of n-existentially-closed
//! uniform hypergraphs.
//!
//! An `h`-uniform hypergraph is *n-existentially closed* (n-e.c.) when for
//! every set `S` of `n` vertices and every `T ⊆ S` there is an `(h-1)`-set
//! `X` outside `S` that forms an edge with each vertex of `T` and with no
//! vertex of `S \ T`.
//!
//! * [`hypergraph`]: the immutable hypergraph value type and its derived
//!   hypergraphs (complement, deletion, induction, neighbourhoods).
//! * [`checker`]: exhaustive n-e.c. decision with witnesses and
//!   counterexamples, plus the edge and vertex lower bounds.
//! * [`galois`], [`designs`]: finite fields, MOLS, block designs and
//!   classical planes.
//! * [`builders`]: hypergraphs built from MOLS and from block designs.
//! * [`random`]: the seeded `H_h(m, p)` model and its union bound.
//! * [`format`], [`report`], [`cli`]: text formats, `key: value` reports and
//!   the `echyper` command line.

pub mod builders;
pub mod checker;
pub mod cli;
pub mod combinatorics;
pub mod designs;
pub mod format;
pub mod galois;
pub mod hypergraph;
pub mod random;
pub mod report;

pub use checker::{check, is_nec, max_ec, CheckOptions, CheckResult, Engine};
pub use hypergraph::{Edge, Hypergraph, Vertex};
