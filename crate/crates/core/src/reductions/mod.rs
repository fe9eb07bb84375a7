//! Hardness gadget generators, reduction constructions, forward-coloring
//! witnesses, and enumeration-based claim checkers.
//!
//! Every gadget family ships three things: a generator producing a
//! [`GadgetInstance`] with named ports, a claim checker that exhaustively
//! enumerates injective colorings and verifies the forced property the
//! reduction relies on, and a deliberately broken mutant that the checker
//! must refute (negative control). The reduction builders assemble full
//! instances with provenance back to the source graph.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub mod bigk;
pub mod bipartite;
pub mod edge3;
pub mod oracles;
pub mod planar;
pub mod vertex4;

pub use bigk::{bigk_params, build_reduction_bigk, check_claim6, gadget_bigk, BigKParams};
pub use bipartite::{build_reduction_bipartite, check_h_singlecolor, gadget_h};
pub use edge3::{
    build_gdoubleprime_3cubic, build_gprime_3cubic, check_claim1, gadget_edge_3cubic,
};
pub use oracles::{line_graph, proper_edge_color_decide, proper_vertex_color_decide};
pub use planar::{build_reduction_planar, check_claim5, gadget_planar_girth};
pub use vertex4::{build_reduction_4cubic, check_claim2, check_claim3, gadget_vertex_4cubic};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("input graph is not cubic: vertex {0} has degree {1}")]
    NotCubic(usize, usize),
    #[error("input graph is not {0}-regular: vertex {1} has degree {2}")]
    NotRegular(u32, usize, usize),
    #[error("input degree too high: vertex {0} has degree {1}, limit {2}")]
    DegreeTooHigh(usize, usize, usize),
    #[error("k = {0} is too small for the construction (needs k >= 6)")]
    KTooSmall(u32),
    #[error("bad gadget parameters: {0}")]
    BadParams(String),
}

/// A generated gadget: its graph plus named ports (label -> vertex id) and
/// the numeric parameters it was built with.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub ports: BTreeMap<String, usize>,
    pub params: BTreeMap<String, u64>,
}

impl GadgetInstance {
    pub fn port(&self, name: &str) -> usize {
        *self
            .ports
            .get(name)
            .unwrap_or_else(|| panic!("gadget has no port `{name}`"))
    }

    pub fn edge(&self, a: &str, b: &str) -> usize {
        let u = self.port(a);
        let v = self.port(b);
        self.graph
            .edge_id(u, v)
            .unwrap_or_else(|| panic!("gadget has no edge {a}-{b}"))
    }
}

/// Where an output element came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SourceElement {
    Vertex(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ElementOrigin {
    /// Carried over from the source graph.
    SourceVertex(usize),
    /// Created by a gadget for the given source element; `role` names the
    /// position inside the gadget.
    Gadget {
        source: SourceElement,
        role: String,
    },
}

/// A reduction's output graph with total provenance.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub source: Graph,
    /// One entry per output vertex.
    pub vertex_origin: Vec<ElementOrigin>,
    /// One entry per output edge (canonical edge order).
    pub edge_origin: Vec<ElementOrigin>,
}

impl ReductionOutput {
    /// Internal consistency: provenance is total and indexes line up.
    pub fn check_provenance(&self) -> bool {
        self.vertex_origin.len() == self.graph.vertex_count()
            && self.edge_origin.len() == self.graph.edge_count()
    }
}

/// Status of an enumeration-based claim check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClaimStatus {
    Verified,
    Refuted {
        /// A valid injective coloring violating the claimed forced
        /// property, as per-edge colors. Absent for failures without a
        /// single-coloring witness (e.g. a missing extension).
        witness: Option<Vec<u32>>,
        detail: String,
    },
    Capped,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub colorings_examined: u64,
    pub status: ClaimStatus,
}

impl ClaimReport {
    pub fn verified(&self) -> bool {
        self.status == ClaimStatus::Verified
    }

    pub fn refuted(&self) -> bool {
        matches!(self.status, ClaimStatus::Refuted { .. })
    }
}

/// Default enumeration cap for the claim checkers: exceeding it yields
/// [`ClaimStatus::Capped`] instead of silent truncation.
pub const CLAIM_ENUM_CAP: u64 = 20_000_000;

pub(crate) fn cycle_color(base: u32, shift: u32) -> u32 {
    (base - 1 + shift) % 3 + 1
}

/// Shared by the checkers: enumerates all injective `k`-edge-colorings of
/// `g`, feeding each to `per_coloring`, which errors with a detail string
/// on a coloring violating the claim's forced property.
pub(crate) fn enumerate_forced<F>(claim: &str, g: &Graph, k: u32, mut per_coloring: F) -> ClaimReport
where
    F: FnMut(&[u32]) -> Result<(), String>,
{
    let cg = crate::coloring::conflict_graph(g);
    let mut violation: Option<(Vec<u32>, String)> = None;
    let result = crate::engine::for_each_coloring(cg.adjacency(), k, Some(CLAIM_ENUM_CAP), |colors| {
        if violation.is_none() {
            if let Err(detail) = per_coloring(colors) {
                violation = Some((colors.to_vec(), detail));
            }
        }
    });
    let status = match result {
        Err(_) => ClaimStatus::Capped,
        Ok(_) => match violation {
            Some((witness, detail)) => ClaimStatus::Refuted {
                witness: Some(witness),
                detail,
            },
            None => ClaimStatus::Verified,
        },
    };
    let examined = match result {
        Ok(count) => count,
        Err(_) => CLAIM_ENUM_CAP,
    };
    ClaimReport {
        claim: claim.to_string(),
        colorings_examined: examined,
        status,
    }
}

/// Second phase for extension directions quantified across colorings: if
/// the forced-property scan verified, apply `finish`, which may still
/// refute (without a single-coloring witness).
pub(crate) fn and_then_check<G>(mut report: ClaimReport, finish: G) -> ClaimReport
where
    G: FnOnce() -> Result<(), String>,
{
    if report.status == ClaimStatus::Verified {
        if let Err(detail) = finish() {
            report.status = ClaimStatus::Refuted {
                witness: None,
                detail,
            };
        }
    }
    report
}

/// Assembles a [`ReductionOutput`] from pairs tagged with their origin,
/// mapping provenance onto the canonical edge order.
pub(crate) fn assemble_reduction(
    n: usize,
    pairs: Vec<((usize, usize), ElementOrigin)>,
    vertex_origin: Vec<ElementOrigin>,
    source: &Graph,
) -> ReductionOutput {
    let mut origin_by_pair: BTreeMap<(usize, usize), ElementOrigin> = BTreeMap::new();
    let mut plain: Vec<(usize, usize)> = Vec::with_capacity(pairs.len());
    for ((u, v), origin) in pairs {
        let key = (u.min(v), u.max(v));
        plain.push(key);
        origin_by_pair.insert(key, origin);
    }
    let graph = Graph::new(n, &plain).expect("reduction output must be simple");
    let edge_origin: Vec<ElementOrigin> = graph
        .edges()
        .iter()
        .map(|pair| origin_by_pair[pair].clone())
        .collect();
    assert_eq!(vertex_origin.len(), n);
    ReductionOutput {
        graph,
        source: source.clone(),
        vertex_origin,
        edge_origin,
    }
}

pub(crate) fn require_cubic(g: &Graph) -> Result<(), ReductionError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) != 3 {
            return Err(ReductionError::NotCubic(v, g.degree(v)));
        }
    }
    Ok(())
}

/// Reusable gadget blueprint: named roles and edges between them. One
/// blueprint instantiates both the standalone [`GadgetInstance`] and any
/// number of tagged copies inside a reduction.
#[derive(Debug, Clone, Default)]
pub(crate) struct Schema {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Schema {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn vertex(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        i
    }

    pub(crate) fn edge(&mut self, a: &str, b: &str) {
        let u = *self.index.get(a).unwrap_or_else(|| panic!("no role `{a}`"));
        let v = *self.index.get(b).unwrap_or_else(|| panic!("no role `{b}`"));
        self.edges.push((u, v));
    }

    pub(crate) fn instantiate(&self, params: BTreeMap<String, u64>) -> GadgetInstance {
        let mut b = GraphBuilder::with_vertices(self.names.len());
        let mut ports = BTreeMap::new();
        for (i, name) in self.names.iter().enumerate() {
            ports.insert(name.clone(), i);
        }
        for &(u, v) in &self.edges {
            b.add_edge(u, v);
        }
        let mut graph = b.build().expect("schema must be a simple graph");
        for (i, name) in self.names.iter().enumerate() {
            graph.set_label(i, name.clone());
        }
        GadgetInstance {
            graph,
            ports,
            params,
        }
    }
}

use crate::graph::GraphBuilder;

/// Accumulates a reduction's graph with per-element provenance.
#[derive(Debug, Default)]
pub(crate) struct ReductionBuilder {
    next: usize,
    pairs: Vec<((usize, usize), ElementOrigin)>,
    vertex_origin: Vec<ElementOrigin>,
}

impl ReductionBuilder {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add_vertex(&mut self, origin: ElementOrigin) -> usize {
        self.vertex_origin.push(origin);
        self.next += 1;
        self.next - 1
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize, origin: ElementOrigin) {
        self.pairs.push(((u, v), origin));
    }

    /// Instantiates a schema copy tagged with `source`; returns role index
    /// to global vertex id.
    pub(crate) fn add_schema(&mut self, schema: &Schema, source: &SourceElement) -> Vec<usize> {
        let ids: Vec<usize> = schema
            .names
            .iter()
            .map(|role| {
                self.add_vertex(ElementOrigin::Gadget {
                    source: source.clone(),
                    role: role.clone(),
                })
            })
            .collect();
        for &(u, v) in &schema.edges {
            self.add_edge(
                ids[u],
                ids[v],
                ElementOrigin::Gadget {
                    source: source.clone(),
                    role: format!("{}-{}", schema.names[u], schema.names[v]),
                },
            );
        }
        ids
    }

    pub(crate) fn finish(self, source: &Graph) -> ReductionOutput {
        assemble_reduction(self.next, self.pairs, self.vertex_origin, source)
    }
}

pub(crate) fn require_max_degree(g: &Graph, limit: usize) -> Result<(), ReductionError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) > limit {
            return Err(ReductionError::DegreeTooHigh(v, g.degree(v), limit));
        }
    }
    Ok(())
}
