//! Colorings, the conflict graph, and the injective-coloring verifier.
//!
//! Two edges of `G` conflict when they are the first and last edge of some
//! 3-edge walk (triangles included): there is a *middle* edge `{w,z}` with
//! `w` an endpoint of one and `z` an endpoint of the other, distinct from
//! both. An injective edge-coloring of `G` is exactly a proper vertex
//! coloring of the conflict graph.
//!
//! The verifier below scans 3-edge walks directly, without building the
//! conflict graph, so the two act as independent cross-checks.

use thiserror::Error;

use crate::graph::{EdgeId, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring is partial: item {0} has no color")]
    PartialColoring(usize),
}

/// Assignment of colors `1..=k` to a fixed number of items (edges of a
/// graph, or vertices of a derived graph). Items may be unassigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    k: u32,
    slots: Vec<Option<u32>>,
}

impl Coloring {
    pub fn new(len: usize, k: u32) -> Self {
        Coloring {
            k,
            slots: vec![None; len],
        }
    }

    /// Wraps a total assignment (colors `1..=k`).
    pub fn from_assignment(assignment: &[u32], k: u32) -> Self {
        let slots = assignment.iter().map(|&c| Some(c)).collect();
        Coloring { k, slots }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn color_budget(&self) -> u32 {
        self.k
    }

    pub fn get(&self, item: usize) -> Option<u32> {
        self.slots[item]
    }

    pub fn set(&mut self, item: usize, color: u32) {
        assert!(color >= 1 && color <= self.k, "color {color} outside 1..={}", self.k);
        self.slots[item] = Some(color);
    }

    pub fn clear(&mut self, item: usize) {
        self.slots[item] = None;
    }

    pub fn total(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    pub fn max_color_used(&self) -> u32 {
        self.slots.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn distinct_colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self.slots.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Total assignments only; errors with the first unassigned item.
    pub fn as_total(&self) -> Result<Vec<u32>, ColoringError> {
        self.slots
            .iter()
            .enumerate()
            .map(|(i, s)| s.ok_or(ColoringError::PartialColoring(i)))
            .collect()
    }
}

/// Conflict graph of `G`: one item per edge, adjacency = forbidden
/// same-color pairs.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    item_count: usize,
    conflicts: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn item_count(&self) -> usize {
        self.item_count
    }

    /// Sorted conflict lists, one per edge of the base graph.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.conflicts
    }

    pub fn conflicts_of(&self, e: EdgeId) -> &[usize] {
        &self.conflicts[e]
    }

    pub fn max_conflict_degree(&self) -> usize {
        self.conflicts.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn conflict_pair_count(&self) -> usize {
        self.conflicts.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Builds the conflict graph by walking every middle edge `{w,z}` and
/// pairing each edge at `w` with each edge at `z`.
pub fn conflict_graph(g: &Graph) -> ConflictGraph {
    let m = g.edge_count();
    let inc = g.incidence();
    let mut conflicts = vec![Vec::new(); m];
    for (mid, &(w, z)) in g.edges().iter().enumerate() {
        for &e in &inc[w] {
            if e == mid {
                continue;
            }
            for &f in &inc[z] {
                if f == mid || f == e {
                    continue;
                }
                conflicts[e].push(f);
                conflicts[f].push(e);
            }
        }
    }
    for list in &mut conflicts {
        list.sort_unstable();
        list.dedup();
    }
    ConflictGraph {
        item_count: m,
        conflicts,
    }
}

/// A same-colored conflicting edge pair, with the middle edge witnessing
/// the 3-edge walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub first: EdgeId,
    pub second: EdgeId,
    pub middle: EdgeId,
    pub color: u32,
}

/// Checks a total coloring directly against the 3-edge-walk rule.
///
/// Returns every violating pair exactly once (first witness middle edge in
/// scan order), sorted by edge pair. Empty result means the coloring is an
/// injective edge-coloring.
pub fn verify_injective(g: &Graph, c: &Coloring) -> Result<Vec<Violation>, ColoringError> {
    if c.len() != g.edge_count() {
        return Err(ColoringError::PartialColoring(c.len().min(g.edge_count())));
    }
    let colors = c.as_total()?;
    let inc = g.incidence();
    let mut seen = std::collections::BTreeMap::new();
    for (mid, &(w, z)) in g.edges().iter().enumerate() {
        for &e in &inc[w] {
            if e == mid {
                continue;
            }
            for &f in &inc[z] {
                if f == mid || f == e || colors[e] != colors[f] {
                    continue;
                }
                let key = (e.min(f), e.max(f));
                seen.entry(key).or_insert(Violation {
                    first: key.0,
                    second: key.1,
                    middle: mid,
                    color: colors[e],
                });
            }
        }
    }
    Ok(seen.into_values().collect())
}
