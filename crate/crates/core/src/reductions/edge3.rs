//! Gadget family for encoding proper 3-edge-coloring of cubic graphs as
//! injective 3-edge-coloring.
//!
//! The per-edge gadget forces its three attachment edges (`uw`, `vw`, `wz`)
//! to share one color in every injective 3-edge-coloring, and any of the
//! three colors is realizable. Two constructions use it: a subcubic one
//! attaching one gadget per source edge, and a cubic triangle-free one
//! taking three tagged copies tied together by a per-edge connector star.

use std::collections::BTreeMap;

use crate::coloring::{verify_injective, Coloring};
use crate::graph::{Graph, GraphBuilder};

use super::{
    and_then_check, assemble_reduction, cycle_color, enumerate_forced, require_cubic,
    ClaimReport, ElementOrigin, GadgetInstance, ReductionError, ReductionOutput, SourceElement,
};

/// Gadget vertex roles in fixed layout order.
const ROLES: [&str; 8] = ["w", "z", "a", "b", "c", "d", "e", "f"];

/// Gadget edges as role pairs; `u`/`v` are the two attachment vertices.
const GADGET_EDGES: [(&str, &str); 12] = [
    ("u", "w"),
    ("v", "w"),
    ("w", "z"),
    ("z", "a"),
    ("z", "b"),
    ("a", "c"),
    ("b", "c"),
    ("a", "d"),
    ("b", "e"),
    ("c", "f"),
    ("d", "f"),
    ("e", "f"),
];

fn build_gadget(drop_ef: bool) -> GadgetInstance {
    let mut b = GraphBuilder::new();
    let mut ports = BTreeMap::new();
    for name in ["u", "v", "w", "z", "a", "b", "c", "d", "e", "f"] {
        let id = b.add_labeled(name);
        ports.insert(name.to_string(), id);
    }
    for &(x, y) in &GADGET_EDGES {
        if drop_ef && x == "e" && y == "f" {
            continue;
        }
        b.add_edge(ports[x], ports[y]);
    }
    GadgetInstance {
        graph: b.build().unwrap(),
        ports,
        params: BTreeMap::new(),
    }
}

/// The 10-vertex, 12-edge gadget with attachment ports `u` and `v`.
pub fn gadget_edge_3cubic() -> GadgetInstance {
    build_gadget(false)
}

/// Negative control: same gadget with the `e-f` edge removed, which breaks
/// the forcing.
pub fn gadget_edge_3cubic_mutated() -> GadgetInstance {
    build_gadget(true)
}

fn check_claim1_on(instance: &GadgetInstance, claim: &str) -> ClaimReport {
    let triple = [
        instance.edge("u", "w"),
        instance.edge("v", "w"),
        instance.edge("w", "z"),
    ];
    let mut realized = [false; 3];
    let report = enumerate_forced(claim, &instance.graph, 3, |colors| {
        let t = colors[triple[0]];
        if colors[triple[1]] != t || colors[triple[2]] != t {
            return Err(format!(
                "attachment edges colored {}, {}, {} instead of one color",
                colors[triple[0]], colors[triple[1]], colors[triple[2]]
            ));
        }
        realized[(t - 1) as usize] = true;
        Ok(())
    });
    and_then_check(report, || {
        for (i, &hit) in realized.iter().enumerate() {
            if !hit {
                return Err(format!("no coloring realizes triple color {}", i + 1));
            }
        }
        Ok(())
    })
}

/// Exhaustively verifies the forcing: every injective 3-edge-coloring of
/// the gadget gives `uw`, `vw`, `wz` one common color, and all three colors
/// occur.
pub fn check_claim1() -> ClaimReport {
    check_claim1_on(&gadget_edge_3cubic(), "claim1")
}

/// The mutated gadget must refute the same property.
pub fn check_claim1_mutated() -> ClaimReport {
    check_claim1_on(&gadget_edge_3cubic_mutated(), "claim1-negative-control")
}

/// Vertex layout of the subcubic construction: source vertices first, then
/// 8 gadget vertices per source edge in canonical edge order.
fn gprime_gadget_base(n: usize, edge_idx: usize) -> usize {
    n + 8 * edge_idx
}

fn gadget_vertex(base: usize, role: &str) -> usize {
    base + ROLES.iter().position(|&r| r == role).unwrap()
}

/// Subcubic construction: drop all source edges, attach one gadget per
/// source edge at its endpoints. The output is injectively 3-colorable iff
/// the (cubic) source is properly 3-edge-colorable.
pub fn build_gprime_3cubic(g: &Graph) -> Result<ReductionOutput, ReductionError> {
    require_cubic(g)?;
    let n = g.vertex_count();
    let mut vertex_origin: Vec<ElementOrigin> =
        (0..n).map(ElementOrigin::SourceVertex).collect();
    let mut pairs: Vec<((usize, usize), ElementOrigin)> = Vec::new();
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let base = gprime_gadget_base(n, ei);
        let src = SourceElement::Edge(u, v);
        for role in ROLES {
            vertex_origin.push(ElementOrigin::Gadget {
                source: src.clone(),
                role: role.to_string(),
            });
        }
        let resolve = |name: &str| -> usize {
            match name {
                "u" => u,
                "v" => v,
                role => gadget_vertex(base, role),
            }
        };
        for &(x, y) in &GADGET_EDGES {
            pairs.push((
                (resolve(x), resolve(y)),
                ElementOrigin::Gadget {
                    source: src.clone(),
                    role: format!("{x}{y}"),
                },
            ));
        }
    }
    Ok(assemble_reduction(n + 8 * g.edge_count(), pairs, vertex_origin, g))
}

/// Injective 3-coloring of the subcubic construction from a proper
/// 3-edge-coloring of the source: the attachment triple of the gadget for
/// edge `uv` takes the source color, the rest follows the gadget's fixed
/// completion pattern.
pub fn forward_color_gprime(out: &ReductionOutput, source_coloring: &Coloring) -> Coloring {
    let g = &out.source;
    let n = g.vertex_count();
    let h = &out.graph;
    let mut c = Coloring::new(h.edge_count(), 3);
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let t = source_coloring.get(ei).expect("total source coloring");
        let base = gprime_gadget_base(n, ei);
        color_gadget(h, &mut c, u, v, |role| gadget_vertex(base, role), t);
    }
    c
}

/// Fixed completion of one gadget, attachment triple colored `t`:
/// the `f`-star matches `t`, the `b`-star takes the next color, the
/// `a`-star the one after.
fn color_gadget<F: Fn(&str) -> usize>(
    h: &Graph,
    c: &mut Coloring,
    u: usize,
    v: usize,
    at: F,
    t: u32,
) {
    let mut paint = |x: usize, y: usize, color: u32| {
        let e = h.edge_id(x, y).expect("gadget edge present");
        c.set(e, color);
    };
    let (w, z, a, b, cc, d, e, f) = (
        at("w"),
        at("z"),
        at("a"),
        at("b"),
        at("c"),
        at("d"),
        at("e"),
        at("f"),
    );
    for (x, y) in [(u, w), (v, w), (w, z)] {
        paint(x, y, t);
    }
    for (x, y) in [(d, f), (e, f), (cc, f)] {
        paint(x, y, t);
    }
    let tb = cycle_color(t, 1);
    for (x, y) in [(b, z), (b, cc), (b, e)] {
        paint(x, y, tb);
    }
    let ta = cycle_color(t, 2);
    for (x, y) in [(a, z), (a, cc), (a, d)] {
        paint(x, y, ta);
    }
}

/// Vertex layout of the cubic construction: three copies of every source
/// vertex, then 8 gadget vertices per (edge, copy), then 4 connector
/// vertices (`r`, `s`, `p`, `q`) per edge.
struct GppLayout {
    n: usize,
    m: usize,
}

impl GppLayout {
    fn source_copy(&self, copy: usize, v: usize) -> usize {
        copy * self.n + v
    }

    fn gadget_base(&self, edge_idx: usize, copy: usize) -> usize {
        3 * self.n + (edge_idx * 3 + copy) * 8
    }

    fn connector_base(&self, edge_idx: usize) -> usize {
        3 * self.n + 24 * self.m + edge_idx * 4
    }

    fn total(&self) -> usize {
        3 * self.n + 28 * self.m
    }
}

/// Cubic triangle-free construction: three tagged copies of the subcubic
/// construction, plus a connector star per source edge. `s` joins the
/// third copy's `d` and the second copy's `e`; `p` the first `d` and third
/// `e`; `q` the second `d` and first `e`; all three meet at `r`.
pub fn build_gdoubleprime_3cubic(g: &Graph) -> Result<ReductionOutput, ReductionError> {
    require_cubic(g)?;
    let layout = GppLayout {
        n: g.vertex_count(),
        m: g.edge_count(),
    };
    let mut vertex_origin: Vec<ElementOrigin> = Vec::with_capacity(layout.total());
    for copy in 0..3 {
        for v in 0..layout.n {
            vertex_origin.push(ElementOrigin::Gadget {
                source: SourceElement::Vertex(v),
                role: format!("copy{}", copy + 1),
            });
        }
    }
    let mut pairs: Vec<((usize, usize), ElementOrigin)> = Vec::new();
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let src = SourceElement::Edge(u, v);
        for copy in 0..3 {
            let base = layout.gadget_base(ei, copy);
            for role in ROLES {
                vertex_origin.push(ElementOrigin::Gadget {
                    source: src.clone(),
                    role: format!("{role}{}", copy + 1),
                });
            }
            let resolve = |name: &str| -> usize {
                match name {
                    "u" => layout.source_copy(copy, u),
                    "v" => layout.source_copy(copy, v),
                    role => gadget_vertex(base, role),
                }
            };
            for &(x, y) in &GADGET_EDGES {
                pairs.push((
                    (resolve(x), resolve(y)),
                    ElementOrigin::Gadget {
                        source: src.clone(),
                        role: format!("{x}{y}{}", copy + 1),
                    },
                ));
            }
        }
    }
    // Connector vertex ids sit above all gadget blocks.
    for &(u, v) in g.edges() {
        let src = SourceElement::Edge(u, v);
        for role in ["r", "s", "p", "q"] {
            vertex_origin.push(ElementOrigin::Gadget {
                source: src.clone(),
                role: role.to_string(),
            });
        }
    }
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let src = SourceElement::Edge(u, v);
        let conn = layout.connector_base(ei);
        let (r, s, p, q) = (conn, conn + 1, conn + 2, conn + 3);
        let d_of = |copy: usize| gadget_vertex(layout.gadget_base(ei, copy), "d");
        let e_of = |copy: usize| gadget_vertex(layout.gadget_base(ei, copy), "e");
        let conn_edges = [
            (s, d_of(2), "s-d3"),
            (s, e_of(1), "s-e2"),
            (s, r, "s-r"),
            (p, d_of(0), "p-d1"),
            (p, e_of(2), "p-e3"),
            (p, r, "p-r"),
            (q, d_of(1), "q-d2"),
            (q, e_of(0), "q-e1"),
            (q, r, "q-r"),
        ];
        for (x, y, role) in conn_edges {
            pairs.push((
                (x, y),
                ElementOrigin::Gadget {
                    source: src.clone(),
                    role: role.to_string(),
                },
            ));
        }
    }
    Ok(assemble_reduction(layout.total(), pairs, vertex_origin, g))
}

/// Injective 3-coloring of the cubic construction from a proper
/// 3-edge-coloring of the source. Copy `i` shifts the source color by `i`;
/// the connector stars `s`, `p`, `q` take shifts 1, 2, 3.
pub fn forward_color_gdoubleprime(out: &ReductionOutput, source_coloring: &Coloring) -> Coloring {
    let g = &out.source;
    let layout = GppLayout {
        n: g.vertex_count(),
        m: g.edge_count(),
    };
    let h = &out.graph;
    let mut c = Coloring::new(h.edge_count(), 3);
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let t = source_coloring.get(ei).expect("total source coloring");
        for copy in 0..3 {
            let base = layout.gadget_base(ei, copy);
            let ti = cycle_color(t, copy as u32 + 1);
            let uc = layout.source_copy(copy, u);
            let vc = layout.source_copy(copy, v);
            color_gadget(h, &mut c, uc, vc, |role| gadget_vertex(base, role), ti);
        }
        let conn = layout.connector_base(ei);
        let (r, s, p, q) = (conn, conn + 1, conn + 2, conn + 3);
        let d_of = |copy: usize| gadget_vertex(layout.gadget_base(ei, copy), "d");
        let e_of = |copy: usize| gadget_vertex(layout.gadget_base(ei, copy), "e");
        let mut paint = |x: usize, y: usize, color: u32| {
            let e = h.edge_id(x, y).expect("construction edge present");
            c.set(e, color);
        };
        for (x, y, shift) in [
            (s, d_of(2), 1),
            (s, e_of(1), 1),
            (s, r, 1),
            (p, d_of(0), 2),
            (p, e_of(2), 2),
            (p, r, 2),
            (q, d_of(1), 3),
            (q, e_of(0), 3),
            (q, r, 3),
        ] {
            paint(x, y, cycle_color(t, shift));
        }
    }
    c
}

/// Forward coloring with a verifier pass; panics on an invalid result.
pub fn checked_forward_gdoubleprime(
    out: &ReductionOutput,
    source_coloring: &Coloring,
) -> Coloring {
    let c = forward_color_gdoubleprime(out, source_coloring);
    assert!(
        verify_injective(&out.graph, &c).unwrap().is_empty(),
        "forward coloring must pass the verifier"
    );
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{self, Girth};
    use crate::reductions::oracles::proper_edge_color_decide;
    use crate::reductions::ClaimStatus;
    use crate::solvers::injective_decide;

    #[test]
    fn gadget_shape() {
        let inst = gadget_edge_3cubic();
        assert_eq!(inst.graph.vertex_count(), 10);
        assert_eq!(inst.graph.edge_count(), 12);
        assert_eq!(inst.graph.degree(inst.port("u")), 1);
        assert_eq!(inst.graph.degree(inst.port("v")), 1);
    }

    #[test]
    fn claim1_verified_with_all_colors() {
        let report = check_claim1();
        assert_eq!(report.status, ClaimStatus::Verified, "{report:?}");
        assert!(report.colorings_examined > 0);
    }

    #[test]
    fn claim1_negative_control_refutes() {
        let report = check_claim1_mutated();
        assert!(report.refuted(), "{report:?}");
        if let ClaimStatus::Refuted { witness, .. } = &report.status {
            let w = witness.as_ref().expect("forced-property witness");
            let inst = gadget_edge_3cubic_mutated();
            let c = Coloring::from_assignment(w, 3);
            assert!(verify_injective(&inst.graph, &c).unwrap().is_empty());
        }
    }

    #[test]
    fn gprime_counts_and_equivalence_on_k4() {
        let k4 = graph::complete(4);
        let out = build_gprime_3cubic(&k4).unwrap();
        assert_eq!(out.graph.vertex_count(), 4 + 48);
        assert_eq!(out.graph.edge_count(), 72);
        assert!(out.check_provenance());

        // K4 is properly 3-edge-colorable, so the output is injectively
        // 3-colorable; both sides computed.
        let src = proper_edge_color_decide(&k4, 3).expect("K4 is class 1");
        let r = injective_decide(&out.graph, 3);
        assert!(r.colorable);

        // Forward coloring from the computed source coloring verifies.
        let fwd = forward_color_gprime(&out, &src);
        assert!(verify_injective(&out.graph, &fwd).unwrap().is_empty());
    }

    #[test]
    fn gprime_rejects_noncubic() {
        let c4 = graph::cycle(4);
        assert!(matches!(
            build_gprime_3cubic(&c4),
            Err(ReductionError::NotCubic(0, 2))
        ));
    }

    #[test]
    fn gdoubleprime_is_cubic_and_triangle_free() {
        let k4 = graph::complete(4);
        let out = build_gdoubleprime_3cubic(&k4).unwrap();
        assert_eq!(out.graph.vertex_count(), 3 * 4 + 28 * 6);
        assert_eq!(out.graph.edge_count(), 45 * 6);
        assert!(out.check_provenance());
        let m = out.graph.metrics();
        assert_eq!(m.max_degree, 3);
        assert!(out.graph.adjacency().iter().all(|l| l.len() == 3));
        assert!(matches!(m.girth, Girth::Finite(x) if x > 3));
    }

    #[test]
    fn gdoubleprime_forward_coloring_verifies() {
        for name in ["K4", "prism", "K33"] {
            let g = graph::named_fixture(name).unwrap();
            let src = proper_edge_color_decide(&g, 3).expect("class 1 fixture");
            let out = build_gdoubleprime_3cubic(&g).unwrap();
            let _ = checked_forward_gdoubleprime(&out, &src);
        }
    }
}
