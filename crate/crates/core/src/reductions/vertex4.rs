//! Gadget family encoding proper 3-edge-coloring of cubic graphs as
//! injective 4-edge-coloring.
//!
//! The per-vertex gadget is a 9-cycle `x0..x8` with chords `x1x8`, `x2x4`,
//! `x5x7` and pendant connectors `y0`, `y3`, `y6`. In every injective
//! 4-edge-coloring, each pendant edge's color lies in the pair of cycle
//! colors at its anchor, the three pairs cover all four colors, and some
//! color is common to all three. The per-edge gadget is a 4-cycle through
//! two pendant connectors plus a chord, which forces the anchor pairs of
//! its two endpoints to coincide.

use std::collections::{BTreeMap, HashSet};

use crate::graph::Graph;

use super::{
    and_then_check, enumerate_forced, require_cubic, ClaimReport, ElementOrigin, GadgetInstance,
    ReductionBuilder, ReductionError, ReductionOutput, Schema, SourceElement,
};

/// Pendant anchors, in cycle positions.
pub const ANCHORS: [usize; 3] = [0, 3, 6];

fn su_schema(prefix: &str, drop_chord_x2x4: bool) -> Schema {
    let mut s = Schema::new();
    let x = |i: usize| format!("{prefix}x{i}");
    let y = |i: usize| format!("{prefix}y{i}");
    for i in 0..9 {
        s.vertex(x(i));
    }
    for &i in &ANCHORS {
        s.vertex(y(i));
    }
    for i in 0..9 {
        s.edge(&x(i), &x((i + 1) % 9));
    }
    s.edge(&x(1), &x(8));
    if !drop_chord_x2x4 {
        s.edge(&x(2), &x(4));
    }
    s.edge(&x(5), &x(7));
    for &i in &ANCHORS {
        s.edge(&x(i), &y(i));
    }
    s
}

/// The 12-vertex, 15-edge per-vertex gadget.
pub fn gadget_vertex_4cubic() -> GadgetInstance {
    su_schema("", false).instantiate(BTreeMap::new())
}

/// Negative control: the `x2-x4` chord removed.
pub fn gadget_vertex_4cubic_mutated() -> GadgetInstance {
    su_schema("", true).instantiate(BTreeMap::new())
}

/// Color pair at anchor `i` as a 4-bit mask: the two cycle edges at `x_i`.
fn anchor_pair(inst: &GadgetInstance, prefix: &str, colors: &[u32], i: usize) -> u8 {
    let succ = inst.edge(
        &format!("{prefix}x{i}"),
        &format!("{prefix}x{}", (i + 1) % 9),
    );
    let pred = inst.edge(
        &format!("{prefix}x{i}"),
        &format!("{prefix}x{}", (i + 8) % 9),
    );
    (1 << (colors[succ] - 1)) | (1 << (colors[pred] - 1))
}

fn pendant_color(inst: &GadgetInstance, prefix: &str, colors: &[u32], i: usize) -> u32 {
    colors[inst.edge(&format!("{prefix}x{i}"), &format!("{prefix}y{i}"))]
}

/// All 2-element color subsets of `{1..4}` as bit masks.
fn two_subsets() -> Vec<u8> {
    (1u8..16).filter(|m| m.count_ones() == 2).collect()
}

fn check_claim2_on(inst: &GadgetInstance, claim: &str) -> ClaimReport {
    let mut realized: HashSet<(u8, u8, u8, u32, u32, u32)> = HashSet::new();
    let report = enumerate_forced(claim, &inst.graph, 4, |colors| {
        let pair: Vec<u8> = ANCHORS
            .iter()
            .map(|&i| anchor_pair(inst, "", colors, i))
            .collect();
        let pend: Vec<u32> = ANCHORS
            .iter()
            .map(|&i| pendant_color(inst, "", colors, i))
            .collect();
        for t in 0..3 {
            if pair[t] & (1 << (pend[t] - 1)) == 0 {
                return Err(format!(
                    "pendant color {} escapes its anchor pair {:0b}",
                    pend[t], pair[t]
                ));
            }
        }
        if pair[0] | pair[1] | pair[2] != 0b1111 {
            return Err("anchor pairs do not cover all four colors".into());
        }
        if pair[0] & pair[1] & pair[2] == 0 {
            return Err("no color common to all three anchor pairs".into());
        }
        realized.insert((pair[0], pair[1], pair[2], pend[0], pend[1], pend[2]));
        Ok(())
    });
    and_then_check(report, || {
        // Extension direction: every admissible combination of anchor
        // pairs and pendant colors is realized by some coloring.
        for c0 in two_subsets() {
            for c3 in two_subsets() {
                for c6 in two_subsets() {
                    if c0 | c3 | c6 != 0b1111 || c0 & c3 & c6 == 0 {
                        continue;
                    }
                    for p0 in 1..=4u32 {
                        if c0 & (1 << (p0 - 1)) == 0 {
                            continue;
                        }
                        for p3 in 1..=4u32 {
                            if c3 & (1 << (p3 - 1)) == 0 {
                                continue;
                            }
                            for p6 in 1..=4u32 {
                                if c6 & (1 << (p6 - 1)) == 0 {
                                    continue;
                                }
                                if !realized.contains(&(c0, c3, c6, p0, p3, p6)) {
                                    return Err(format!(
                                        "choice ({c0:04b},{c3:04b},{c6:04b},{p0},{p3},{p6}) not realized"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

/// Exhaustive check of the per-vertex gadget's forced properties and its
/// extension direction.
pub fn check_claim2() -> ClaimReport {
    check_claim2_on(&gadget_vertex_4cubic(), "claim2")
}

pub fn check_claim2_mutated() -> ClaimReport {
    check_claim2_on(&gadget_vertex_4cubic_mutated(), "claim2-negative-control")
}

/// Two gadgets joined by the per-edge 4-cycle (at anchors `y0` of both)
/// plus its chord; `drop_chord` removes `w-z` for the negative control.
fn joined_schema(drop_chord: bool) -> Schema {
    let mut s = su_schema("u:", false);
    let v_side = su_schema("v:", false);
    // Merge the second gadget's roles into the same schema.
    for name in v_side.names.clone() {
        s.vertex(name);
    }
    for &(a, b) in &v_side.edges.clone() {
        let an = v_side.names[a].clone();
        let bn = v_side.names[b].clone();
        s.edge(&an, &bn);
    }
    s.vertex("w");
    s.vertex("z");
    s.edge("u:y0", "w");
    s.edge("w", "v:y0");
    s.edge("v:y0", "z");
    s.edge("z", "u:y0");
    if !drop_chord {
        s.edge("w", "z");
    }
    s
}

/// Canonical edge order of one gadget copy inside the joined graph, for
/// projecting joint colorings onto per-gadget tuples.
fn su_edge_ids(inst: &GadgetInstance, prefix: &str) -> Vec<usize> {
    let mut ids = Vec::new();
    let x = |i: usize| format!("{prefix}x{i}");
    let y = |i: usize| format!("{prefix}y{i}");
    for i in 0..9 {
        ids.push(inst.edge(&x(i), &x((i + 1) % 9)));
    }
    for (a, b) in [(1, 8), (2, 4), (5, 7)] {
        ids.push(inst.edge(&x(a), &x(b)));
    }
    for &i in &ANCHORS {
        ids.push(inst.edge(&x(i), &y(i)));
    }
    ids
}

fn check_claim3_on(drop_chord: bool, claim: &str) -> ClaimReport {
    let joined = joined_schema(drop_chord).instantiate(BTreeMap::new());
    let u_edges = su_edge_ids(&joined, "u:");
    let v_edges = su_edge_ids(&joined, "v:");
    let mut realized_pairs: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    let report = enumerate_forced(claim, &joined.graph, 4, |colors| {
        let cu = anchor_pair(&joined, "u:", colors, 0);
        let cv = anchor_pair(&joined, "v:", colors, 0);
        if cu != cv {
            return Err(format!(
                "anchor pairs differ across the edge gadget: {cu:04b} vs {cv:04b}"
            ));
        }
        realized_pairs.insert((
            u_edges.iter().map(|&e| colors[e]).collect(),
            v_edges.iter().map(|&e| colors[e]).collect(),
        ));
        Ok(())
    });
    and_then_check(report, || {
        // Extension direction: any two standalone gadget colorings with
        // equal anchor pairs and equal pendant colors at the joined
        // anchors extend to the whole joined graph.
        let standalone = gadget_vertex_4cubic();
        let solo_edges = su_edge_ids(&standalone, "");
        let cg = crate::coloring::conflict_graph(&standalone.graph);
        let mut solo: Vec<(Vec<u32>, u8, u32)> = Vec::new();
        crate::engine::for_each_coloring(cg.adjacency(), 4, Some(1_000_000), |colors| {
            let tuple: Vec<u32> = solo_edges.iter().map(|&e| colors[e]).collect();
            let pair = anchor_pair(&standalone, "", colors, 0);
            let pend = pendant_color(&standalone, "", colors, 0);
            solo.push((tuple, pair, pend));
        })
        .map_err(|e| e.to_string())?;
        for (tu, cu, pu) in &solo {
            for (tv, cv, pv) in &solo {
                if cu == cv && pu == pv && !realized_pairs.contains(&(tu.clone(), tv.clone())) {
                    return Err(
                        "a compatible pair of gadget colorings does not extend".to_string()
                    );
                }
            }
        }
        Ok(())
    })
}

/// Exhaustive check of the per-edge gadget: joined anchors carry equal
/// color pairs, and every compatible pair of gadget colorings extends.
pub fn check_claim3() -> ClaimReport {
    check_claim3_on(false, "claim3")
}

pub fn check_claim3_mutated() -> ClaimReport {
    check_claim3_on(true, "claim3-negative-control")
}

/// Full construction: one per-vertex gadget per source vertex, one 4-cycle
/// plus chord per source edge, attached at fresh pendant connectors. The
/// output is cubic; it is injectively 4-colorable iff the source is
/// properly 3-edge-colorable.
pub fn build_reduction_4cubic(g: &Graph) -> Result<ReductionOutput, ReductionError> {
    require_cubic(g)?;
    let schema = su_schema("", false);
    let mut b = ReductionBuilder::new();
    let mut gadget_ids: Vec<Vec<usize>> = Vec::with_capacity(g.vertex_count());
    let mut y_index: Vec<usize> = Vec::new();
    for v in 0..g.vertex_count() {
        gadget_ids.push(b.add_schema(&schema, &SourceElement::Vertex(v)));
        y_index.push(0);
    }
    // Schema layout: x0..x8 then y0, y3, y6.
    let y_of = |ids: &[usize], slot: usize| ids[9 + slot];
    for &(u, v) in g.edges() {
        let src = SourceElement::Edge(u, v);
        let w = b.add_vertex(ElementOrigin::Gadget {
            source: src.clone(),
            role: "w".into(),
        });
        let z = b.add_vertex(ElementOrigin::Gadget {
            source: src.clone(),
            role: "z".into(),
        });
        let yu = y_of(&gadget_ids[u], y_index[u]);
        let yv = y_of(&gadget_ids[v], y_index[v]);
        y_index[u] += 1;
        y_index[v] += 1;
        for (a, bb, role) in [
            (yu, w, "yu-w"),
            (w, yv, "w-yv"),
            (yv, z, "yv-z"),
            (z, yu, "z-yu"),
            (w, z, "w-z"),
        ] {
            b.add_edge(
                a,
                bb,
                ElementOrigin::Gadget {
                    source: src.clone(),
                    role: role.into(),
                },
            );
        }
    }
    Ok(b.finish(g))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::coloring::conflict_graph;
    use crate::engine::for_each_coloring;
    use crate::graph;
    use crate::reductions::ClaimStatus;

    #[test]
    fn gadget_shape() {
        let inst = gadget_vertex_4cubic();
        assert_eq!(inst.graph.vertex_count(), 12);
        assert_eq!(inst.graph.edge_count(), 15);
    }

    #[test]
    fn claim2_verified() {
        let report = check_claim2();
        assert_eq!(report.status, ClaimStatus::Verified, "{report:?}");
    }

    #[test]
    fn claim2_negative_control_refutes() {
        assert!(check_claim2_mutated().refuted());
    }

    /// With the triangle `x0x1`, `x0x8`, `x1x8` fixed to colors 1, 2, 3 and
    /// the chord `x2x4` not colored 4, the cycle-plus-chord part has
    /// exactly two completions.
    #[test]
    fn two_completions_once_triangle_fixed() {
        let inst = gadget_vertex_4cubic();
        let cg = conflict_graph(&inst.graph);
        let e01 = inst.edge("x0", "x1");
        let e08 = inst.edge("x0", "x8");
        let e18 = inst.edge("x1", "x8");
        let e24 = inst.edge("x2", "x4");
        let cycle_edges: Vec<usize> = su_edge_ids(&inst, "")[..12].to_vec();
        let mut completions: BTreeSet<Vec<u32>> = BTreeSet::new();
        for_each_coloring(cg.adjacency(), 4, None, |colors| {
            if colors[e01] == 1 && colors[e08] == 2 && colors[e18] == 3 && colors[e24] != 4 {
                completions.insert(cycle_edges.iter().map(|&e| colors[e]).collect());
            }
        })
        .unwrap();
        assert_eq!(completions.len(), 2, "{completions:?}");
    }

    #[test]
    fn claim3_verified_and_mutant_refutes() {
        let report = check_claim3();
        assert_eq!(report.status, ClaimStatus::Verified, "{report:?}");
        assert!(check_claim3_mutated().refuted());
    }

    #[test]
    fn reduction_counts_on_k4() {
        let k4 = graph::complete(4);
        let out = build_reduction_4cubic(&k4).unwrap();
        assert_eq!(out.graph.vertex_count(), 12 * 4 + 2 * 6);
        assert_eq!(out.graph.edge_count(), 15 * 4 + 5 * 6);
        assert!(out.check_provenance());
        assert!(out.graph.adjacency().iter().all(|l| l.len() == 3));
    }

    #[test]
    fn reduction_rejects_noncubic() {
        assert!(build_reduction_4cubic(&graph::cycle(5)).is_err());
    }
}
