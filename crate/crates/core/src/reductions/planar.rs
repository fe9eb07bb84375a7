//! Gadget family encoding proper 3-vertex-coloring of max-degree-4 graphs
//! as injective 3-edge-coloring, with an adjustable girth floor.
//!
//! The per-vertex gadget is an odd cycle of length `l` (a multiple of 3)
//! with a pendant at every cycle vertex, then a two-way split (`w`, `z`)
//! into four pendant-decorated branch paths ending in terminals. Every
//! injective 3-edge-coloring forces all four terminal edges to one common
//! color, and all three colors are realizable, so the terminal color acts
//! as the encoded vertex color. Source edges become terminal-to-terminal
//! edges, assigned round-robin.

use std::collections::BTreeMap;

use crate::graph::Graph;

use super::{
    and_then_check, enumerate_forced, require_max_degree, ClaimReport, ElementOrigin, GadgetInstance,
    ReductionBuilder, ReductionError, ReductionOutput, Schema, SourceElement,
};

pub const BRANCHES: [&str; 4] = ["a", "b", "c", "d"];
pub const TERMINALS: [&str; 4] = ["alpha", "beta", "gamma", "delta"];

/// Appends the split-and-branches tail to `schema`, hanging off `anchor`
/// (the role name of the gadget's anchor vertex). Branch `i` has
/// `g + ext[i]` path vertices, a degree-1 side pendant at all but the last,
/// and a terminal. With `drop_first_side_pendant`, branch `a` loses its
/// first side pendant (negative control).
pub(crate) fn add_tail(
    schema: &mut Schema,
    anchor: &str,
    g: usize,
    ext: [usize; 4],
    drop_first_side_pendant: bool,
) {
    schema.vertex("w");
    schema.vertex("z");
    schema.edge(anchor, "w");
    schema.edge(anchor, "z");
    for (bi, &name) in BRANCHES.iter().enumerate() {
        let len = g + ext[bi];
        for i in 1..=len {
            schema.vertex(format!("{name}{i}"));
            if i > 1 {
                schema.edge(&format!("{name}{}", i - 1), &format!("{name}{i}"));
            }
            if i <= len - 1 && !(drop_first_side_pendant && name == "a" && i == 1) {
                schema.vertex(format!("{name}p{i}"));
                schema.edge(&format!("{name}{i}"), &format!("{name}p{i}"));
            }
        }
        let hub = if bi < 2 { "w" } else { "z" };
        schema.edge(hub, &format!("{name}1"));
        schema.vertex(TERMINALS[bi]);
        schema.edge(&format!("{name}{len}"), TERMINALS[bi]);
    }
}

fn validate_params(g_param: usize, ell: usize) -> Result<(), ReductionError> {
    if g_param == 0 {
        return Err(ReductionError::BadParams("girth target must be positive".into()));
    }
    if ell < g_param {
        return Err(ReductionError::BadParams(format!(
            "cycle length {ell} below girth target {g_param}"
        )));
    }
    if ell % 3 != 0 || (ell / 3) % 2 == 0 {
        return Err(ReductionError::BadParams(format!(
            "cycle length {ell} must be an odd multiple of 3"
        )));
    }
    Ok(())
}

fn planar_schema(g_param: usize, ell: usize, drop_first_side_pendant: bool) -> Schema {
    let mut s = Schema::new();
    for i in 1..=ell {
        s.vertex(format!("x{i}"));
        s.vertex(format!("y{i}"));
    }
    for i in 1..=ell {
        let j = if i == ell { 1 } else { i + 1 };
        s.edge(&format!("x{i}"), &format!("x{j}"));
        s.edge(&format!("x{i}"), &format!("y{i}"));
    }
    add_tail(&mut s, "y1", g_param, [0; 4], drop_first_side_pendant);
    s
}

/// Per-vertex gadget with cycle length `ell >= g_param`, `ell` an odd
/// multiple of 3.
pub fn gadget_planar_girth(g_param: usize, ell: usize) -> Result<GadgetInstance, ReductionError> {
    validate_params(g_param, ell)?;
    let mut params = BTreeMap::new();
    params.insert("g".into(), g_param as u64);
    params.insert("l".into(), ell as u64);
    Ok(planar_schema(g_param, ell, false).instantiate(params))
}

pub fn gadget_planar_girth_mutated(
    g_param: usize,
    ell: usize,
) -> Result<GadgetInstance, ReductionError> {
    validate_params(g_param, ell)?;
    Ok(planar_schema(g_param, ell, true).instantiate(BTreeMap::new()))
}

fn terminal_edges(inst: &GadgetInstance, g_param: usize) -> [usize; 4] {
    let mut out = [0; 4];
    for (bi, &name) in BRANCHES.iter().enumerate() {
        let last = format!("{name}{}", g_param);
        out[bi] = inst.edge(&last, TERMINALS[bi]);
    }
    out
}

fn check_claim5_on(inst: &GadgetInstance, g_param: usize, claim: &str) -> ClaimReport {
    let term = terminal_edges(inst, g_param);
    let mut realized = [false; 3];
    let report = enumerate_forced(claim, &inst.graph, 3, |colors| {
        let t = colors[term[0]];
        for &e in &term[1..] {
            if colors[e] != t {
                return Err("terminal edges are not monochromatic".into());
            }
        }
        realized[(t - 1) as usize] = true;
        Ok(())
    });
    and_then_check(report, || {
        for (i, &hit) in realized.iter().enumerate() {
            if !hit {
                return Err(format!("terminal color {} never realized", i + 1));
            }
        }
        Ok(())
    })
}

/// Exhaustive check: in every injective 3-edge-coloring of the gadget the
/// four terminal edges share one color, and each of the three colors is
/// realizable as that terminal color.
pub fn check_claim5(g_param: usize, ell: usize) -> Result<ClaimReport, ReductionError> {
    let inst = gadget_planar_girth(g_param, ell)?;
    Ok(check_claim5_on(
        &inst,
        g_param,
        &format!("claim5(g={g_param},l={ell})"),
    ))
}

pub fn check_claim5_mutated(g_param: usize, ell: usize) -> Result<ClaimReport, ReductionError> {
    let inst = gadget_planar_girth_mutated(g_param, ell)?;
    Ok(check_claim5_on(
        &inst,
        g_param,
        &format!("claim5-negative-control(g={g_param},l={ell})"),
    ))
}

/// Smallest admissible cycle length for a girth target: the least odd
/// multiple of 3 that is at least `max(g_param, 9)`.
pub fn default_cycle_length(g_param: usize) -> usize {
    let mut ell = 9;
    while ell < g_param {
        ell += 6;
    }
    ell
}

/// Full construction for a max-degree-4 source: one gadget per source
/// vertex, one terminal-to-terminal edge per source edge (terminals used
/// round-robin). The output is injectively 3-colorable iff the source is
/// properly 3-vertex-colorable; its girth is at least `g_param`.
pub fn build_reduction_planar(
    g: &Graph,
    g_param: usize,
) -> Result<ReductionOutput, ReductionError> {
    require_max_degree(g, 4)?;
    let ell = default_cycle_length(g_param);
    validate_params(g_param, ell)?;
    let schema = planar_schema(g_param, ell, false);
    let mut b = ReductionBuilder::new();
    let mut terminal_ids: Vec<[usize; 4]> = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let ids = b.add_schema(&schema, &SourceElement::Vertex(v));
        let inst_index = |name: &str| {
            schema
                .index
                .get(name)
                .copied()
                .expect("terminal role exists")
        };
        terminal_ids.push([
            ids[inst_index(TERMINALS[0])],
            ids[inst_index(TERMINALS[1])],
            ids[inst_index(TERMINALS[2])],
            ids[inst_index(TERMINALS[3])],
        ]);
    }
    let mut used = vec![0usize; g.vertex_count()];
    for &(u, v) in g.edges() {
        let tu = terminal_ids[u][used[u]];
        let tv = terminal_ids[v][used[v]];
        used[u] += 1;
        used[v] += 1;
        b.add_edge(
            tu,
            tv,
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
    use crate::graph::{self, Girth};
    use crate::reductions::ClaimStatus;

    #[test]
    fn gadget_counts() {
        let inst = gadget_planar_girth(4, 9).unwrap();
        assert_eq!(inst.graph.vertex_count(), 52);
        assert_eq!(inst.graph.edge_count(), 52);
        assert!(inst.graph.max_degree() <= 3);
    }

    #[test]
    fn bad_params_rejected() {
        assert!(gadget_planar_girth(4, 8).is_err()); // not a multiple of 3
        assert!(gadget_planar_girth(4, 18).is_err()); // even multiple of 3
        assert!(gadget_planar_girth(12, 9).is_err()); // below girth target
        assert!(gadget_planar_girth(10, 15).is_ok());
    }

    #[test]
    fn claim5_verified() {
        let report = check_claim5(4, 9).unwrap();
        assert_eq!(report.status, ClaimStatus::Verified, "{report:?}");
    }

    #[test]
    fn claim5_negative_control_refutes() {
        assert!(check_claim5_mutated(4, 9).unwrap().refuted());
    }

    #[test]
    fn reduction_structure() {
        let c5 = graph::cycle(5);
        let out = build_reduction_planar(&c5, 4).unwrap();
        assert_eq!(out.graph.vertex_count(), 5 * 52);
        assert_eq!(out.graph.edge_count(), 5 * 52 + 5);
        assert!(out.check_provenance());
        assert!(out.graph.max_degree() <= 3);
        // Girth floor: the only short cycles are the gadget cycles.
        assert!(matches!(out.graph.metrics().girth, Girth::Finite(x) if x >= 4));

        // Degree-5 sources are rejected.
        let star5 = graph::star(5);
        assert!(build_reduction_planar(&star5, 4).is_err());
    }
}
