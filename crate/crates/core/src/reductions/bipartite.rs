//! Gadget family encoding proper 3-vertex-coloring of max-degree-4 graphs
//! as injective 3-edge-coloring of a bipartite graph.
//!
//! The core component `H` is a subdivided clique on four hub vertices: each
//! hub pair gets a subdivision vertex `x_ij` with a pendant `y_ij`. In
//! every injective 3-edge-coloring of `H`, the three edges at each `x_ij`
//! carry one single color. Two copies of `H` joined pendant-to-pendant
//! replace the odd cycle of the girth construction's per-vertex gadget, and
//! the usual branch tail (girth parameter 6) follows. Branch lengths are
//! padded by 3 where needed so that every terminal-to-terminal link closes
//! an even cycle; the output is bipartite.

use std::collections::BTreeMap;

use crate::graph::Graph;

use super::planar::{add_tail, TERMINALS};
use super::{
    enumerate_forced, require_max_degree, ClaimReport, ElementOrigin, GadgetInstance,
    ReductionBuilder, ReductionError, ReductionOutput, Schema, SourceElement,
};

const HUB_PAIRS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Tail length of the bipartite per-vertex gadget.
pub const TAIL_G: usize = 6;

fn h_schema(prefix: &str, drop_x2_x23: bool) -> Schema {
    let mut s = Schema::new();
    for i in 1..=4 {
        s.vertex(format!("{prefix}x{i}"));
    }
    for &(i, j) in &HUB_PAIRS {
        let xij = format!("{prefix}x{i}{j}");
        s.vertex(xij.clone());
        if !(drop_x2_x23 && (i, j) == (2, 3)) {
            s.edge(&xij, &format!("{prefix}x{i}"));
        }
        s.edge(&xij, &format!("{prefix}x{j}"));
        let yij = format!("{prefix}y{i}{j}");
        s.vertex(yij.clone());
        s.edge(&xij, &yij);
    }
    s
}

/// The 16-vertex, 18-edge subdivided-clique component.
pub fn gadget_h() -> GadgetInstance {
    h_schema("", false).instantiate(BTreeMap::new())
}

/// Negative control: the `x2-x23` hub edge removed, which breaks the
/// forcing.
pub fn gadget_h_mutated() -> GadgetInstance {
    h_schema("", true).instantiate(BTreeMap::new())
}

fn check_h_on(inst: &GadgetInstance, claim: &str) -> ClaimReport {
    // Edge triples (or pairs, in the mutant) at each subdivision vertex.
    let inc = inst.graph.incidence();
    let groups: Vec<Vec<usize>> = HUB_PAIRS
        .iter()
        .map(|&(i, j)| inc[inst.port(&format!("x{i}{j}"))].clone())
        .collect();
    enumerate_forced(claim, &inst.graph, 3, |colors| {
        for (gi, group) in groups.iter().enumerate() {
            let first = colors[group[0]];
            if group.iter().any(|&e| colors[e] != first) {
                let (i, j) = HUB_PAIRS[gi];
                return Err(format!("edges at x{i}{j} carry more than one color"));
            }
        }
        Ok(())
    })
}

/// Exhaustive check: every subdivision vertex of `H` is incident to edges
/// of a single color in every injective 3-edge-coloring.
pub fn check_h_singlecolor() -> ClaimReport {
    check_h_on(&gadget_h(), "claimH")
}

pub fn check_h_singlecolor_mutated() -> ClaimReport {
    check_h_on(&gadget_h_mutated(), "claimH-negative-control")
}

/// Per-vertex gadget: two `H` copies joined `y12`-to-`y12`, an anchor
/// vertex `y1` on the first copy's pendant, then the branch tail with
/// per-branch extensions (each 0 or 3).
fn vertex_gadget_schema(ext: [usize; 4]) -> Schema {
    let mut s = h_schema("h1:", false);
    let second = h_schema("h2:", false);
    for name in second.names.clone() {
        s.vertex(name);
    }
    for &(a, b) in &second.edges {
        let an = second.names[a].clone();
        let bn = second.names[b].clone();
        s.edge(&an, &bn);
    }
    s.edge("h1:y12", "h2:y12");
    s.vertex("y1");
    s.edge("h1:y12", "y1");
    add_tail(&mut s, "y1", TAIL_G, ext, false);
    s
}

/// Standalone bipartite per-vertex gadget (no extensions).
pub fn gadget_bipartite_vertex() -> GadgetInstance {
    let mut params = BTreeMap::new();
    params.insert("g".into(), TAIL_G as u64);
    vertex_gadget_schema([0; 4]).instantiate(params)
}

/// Full construction for a max-degree-4 source. Terminals are assigned
/// round-robin; for every source edge the lower endpoint's branch is
/// lengthened by 3 so the terminal link closes an even cycle, keeping the
/// output bipartite.
pub fn build_reduction_bipartite(g: &Graph) -> Result<ReductionOutput, ReductionError> {
    require_max_degree(g, 4)?;
    let n = g.vertex_count();
    // Slot assignment per vertex in canonical edge order, plus which slots
    // get the parity extension.
    let mut used = vec![0usize; n];
    let mut slot_of_edge: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count());
    let mut ext = vec![[0usize; 4]; n];
    for &(u, v) in g.edges() {
        let su = used[u];
        let sv = used[v];
        used[u] += 1;
        used[v] += 1;
        slot_of_edge.push((su, sv));
        ext[u][su] = 3;
    }
    let mut b = ReductionBuilder::new();
    let mut terminal_ids: Vec<[usize; 4]> = Vec::with_capacity(n);
    for v in 0..n {
        let schema = vertex_gadget_schema(ext[v]);
        let ids = b.add_schema(&schema, &SourceElement::Vertex(v));
        let mut terms = [0usize; 4];
        for (slot, term) in TERMINALS.iter().enumerate() {
            terms[slot] = ids[schema.index[*term]];
        }
        terminal_ids.push(terms);
    }
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let (su, sv) = slot_of_edge[ei];
        b.add_edge(
            terminal_ids[u][su],
            terminal_ids[v][sv],
            ElementOrigin::Gadget {
                source: SourceElement::Edge(u, v),
                role: "terminal-link".into(),
            },
        );
    }
    Ok(b.finish(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use crate::reductions::ClaimStatus;

    #[test]
    fn h_counts() {
        let inst = gadget_h();
        assert_eq!(inst.graph.vertex_count(), 16);
        assert_eq!(inst.graph.edge_count(), 18);
        assert!(inst.graph.metrics().bipartition.is_some());
    }

    #[test]
    fn h_single_color_verified() {
        let report = check_h_singlecolor();
        assert_eq!(report.status, ClaimStatus::Verified, "{report:?}");
    }

    #[test]
    fn h_negative_control_refutes() {
        assert!(check_h_singlecolor_mutated().refuted());
    }

    #[test]
    fn vertex_gadget_is_bipartite() {
        let inst = gadget_bipartite_vertex();
        assert!(inst.graph.metrics().bipartition.is_some());
        assert!(inst.graph.max_degree() <= 3);
    }

    #[test]
    fn reduction_output_is_bipartite() {
        for g in [graph::cycle(5), graph::cycle(4), graph::path(4)] {
            let out = build_reduction_bipartite(&g).unwrap();
            assert!(out.check_provenance());
            let m = out.graph.metrics();
            assert!(m.bipartition.is_some(), "output must be bipartite");
            assert!(m.max_degree <= 3);
        }
    }

    #[test]
    fn reduction_rejects_degree5() {
        assert!(build_reduction_bipartite(&graph::star(5)).is_err());
    }
}
