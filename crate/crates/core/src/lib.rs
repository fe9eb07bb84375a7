//! Injective k-edge-coloring toolkit.
//!
//! An injective k-edge-coloring assigns colors `1..=k` to edges so that the
//! first and last edge of every 3-edge walk (triangles included) differ;
//! adjacent edges may share a color when no third edge links their far
//! endpoints. The crate provides:
//!
//! - graph construction, metrics and formats ([`graph`], [`io`]);
//! - the conflict-graph model, verifier and exact coloring engine
//!   ([`coloring`], [`engine`]);
//! - exact, greedy and constructive solvers ([`solvers`]);
//! - tree decompositions and the treewidth dynamic program
//!   ([`treewidth`], [`fpt`]);
//! - hardness gadget generators, reductions and enumeration-based claim
//!   checkers ([`reductions`]);
//! - seeded random instance generators ([`generators`]).

pub mod coloring;
pub mod engine;
pub mod fpt;
pub mod generators;
pub mod graph;
pub mod io;
pub mod reductions;
pub mod solvers;
pub mod treewidth;

pub use coloring::{conflict_graph, verify_injective, Coloring, ConflictGraph, Violation};
pub use graph::{named_fixture, Girth, Graph, GraphMetrics};
pub use solvers::{
    greedy_injective, injective_chromatic, injective_decide, SolveResult, SolveStats,
};
