//! Gadget family encoding proper k-edge-coloring of k-regular graphs as
//! injective k-edge-coloring of a graph with maximum degree O(sqrt(k)).
//!
//! Parameters: `p` is the largest integer with `C(p,2) <= k`, the remainder
//! `r = k - C(p,2)` satisfies `r < p`, and `l = 2p`. The per-edge gadget
//! stacks two overlapping p-cliques, an `r+1`-clique, and a hub `e` whose
//! pendant `s`-edges are forced monochromatic in every injective
//! k-edge-coloring. The per-vertex gadget spreads `C(k,2)` pairing edges
//! over `k` groups of `l` vertices, added greedily to minimum-degree
//! representatives, keeping its degrees at most `k/l + 1`.

use std::collections::BTreeMap;

use crate::coloring::{verify_injective, Coloring};
use crate::graph::Graph;

use super::{
    and_then_check, enumerate_forced, ClaimReport, ElementOrigin, GadgetInstance, ReductionBuilder,
    ReductionError, ReductionOutput, Schema, SourceElement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BigKParams {
    pub k: u32,
    pub p: u32,
    pub r: u32,
    pub l: u32,
}

/// Decomposes `k = C(p,2) + r` with `p` maximal (hence `r < p`) and sets
/// `l = 2p`. Defined for `k >= 6` (p >= 4).
pub fn bigk_params(k: u32) -> Result<BigKParams, ReductionError> {
    if k < 6 {
        return Err(ReductionError::KTooSmall(k));
    }
    let mut p = 4u32;
    while (p + 1) * p / 2 <= k {
        p += 1;
    }
    let r = k - p * (p - 1) / 2;
    debug_assert!(r < p);
    Ok(BigKParams { k, p, r, l: 2 * p })
}

/// Role names of the edge gadget, in a fixed order.
struct EdgeRoles {
    p: u32,
    r: u32,
}

impl EdgeRoles {
    /// Large-clique members: x1..x_{p-3}, a, b, plus `c`.
    fn clique1(&self) -> Vec<String> {
        let mut v = self.shared();
        v.push("c".into());
        v
    }

    /// The part shared by both p-cliques: x1..x_{p-3}, a, b.
    fn shared(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.p - 3).map(|i| format!("x{i}")).collect();
        v.push("a".into());
        v.push("b".into());
        v
    }

    fn ys(&self) -> Vec<String> {
        (1..=self.r).map(|i| format!("y{i}")).collect()
    }

    fn has_d(&self) -> bool {
        self.r > 0
    }
}

fn edge_gadget_schema(params: BigKParams, s_count: u32, drop_e_c: bool) -> Schema {
    let roles = EdgeRoles {
        p: params.p,
        r: params.r,
    };
    let mut s = Schema::new();
    let clique1 = roles.clique1();
    for name in &clique1 {
        s.vertex(name.clone());
    }
    if roles.has_d() {
        s.vertex("d");
        for name in &roles.ys() {
            s.vertex(name.clone());
        }
    }
    s.vertex("e");
    for i in 1..=s_count {
        s.vertex(format!("s{i}"));
    }
    // Large clique {x.., a, b, c}.
    for i in 0..clique1.len() {
        for j in i + 1..clique1.len() {
            s.edge(&clique1[i], &clique1[j]);
        }
    }
    if roles.has_d() {
        // Second p-clique {x.., a, b, d}: only the d-edges are new.
        for name in roles.shared() {
            s.edge(&name, "d");
        }
        // Clique {y1..yr, d}.
        let ys = roles.ys();
        for i in 0..ys.len() {
            for j in i + 1..ys.len() {
                s.edge(&ys[i], &ys[j]);
            }
            s.edge(&ys[i], "d");
        }
        s.edge("e", "d");
    }
    if !drop_e_c {
        s.edge("e", "c");
    }
    for i in 1..=params.p - 3 {
        s.edge("e", &format!("x{i}"));
    }
    for i in 1..=s_count {
        s.edge("e", &format!("s{i}"));
    }
    s
}

/// Per-edge gadget; `s_count_override` shrinks the pendant fan (default
/// `2l`) for enumeration-scale tests — the forcing argument is symmetric in
/// the `s`-edges.
pub fn gadget_bigk(k: u32, s_count_override: Option<u32>) -> Result<GadgetInstance, ReductionError> {
    let params = bigk_params(k)?;
    let s_count = s_count_override.unwrap_or(2 * params.l);
    let mut meta = BTreeMap::new();
    meta.insert("k".into(), k as u64);
    meta.insert("p".into(), params.p as u64);
    meta.insert("r".into(), params.r as u64);
    meta.insert("l".into(), params.l as u64);
    meta.insert("s_count".into(), s_count as u64);
    Ok(edge_gadget_schema(params, s_count, false).instantiate(meta))
}

pub fn gadget_bigk_mutated(
    k: u32,
    s_count_override: Option<u32>,
) -> Result<GadgetInstance, ReductionError> {
    let params = bigk_params(k)?;
    let s_count = s_count_override.unwrap_or(2 * params.l);
    Ok(edge_gadget_schema(params, s_count, true).instantiate(BTreeMap::new()))
}

/// The constructive completion: given the forced pendant color `t`, colors
/// the whole gadget. Clique colors are laid out deterministically; the hub
/// edges mirror the `a`-edges (and `c`-edges for the second clique).
fn color_edge_gadget<F: Fn(&str) -> usize>(
    h: &Graph,
    c: &mut Coloring,
    params: BigKParams,
    s_count: u32,
    at: F,
    t: u32,
) {
    let roles = EdgeRoles {
        p: params.p,
        r: params.r,
    };
    let mut paint = |x: &str, y: &str, color: u32| {
        let e = h
            .edge_id(at(x), at(y))
            .unwrap_or_else(|| panic!("gadget edge {x}-{y} present"));
        c.set(e, color);
    };
    // Color stream: t first (for a-b), then every other color ascending.
    let mut stream = std::iter::once(t).chain((1..=params.k).filter(move |&x| x != t));
    let clique1 = roles.clique1();
    // a-b first so it takes t.
    paint("a", "b", stream.next().unwrap());
    let mut clique_color: BTreeMap<(String, String), u32> = BTreeMap::new();
    clique_color.insert(("a".into(), "b".into()), t);
    for i in 0..clique1.len() {
        for j in i + 1..clique1.len() {
            let (x, y) = (&clique1[i], &clique1[j]);
            if (x.as_str(), y.as_str()) == ("a", "b") {
                continue;
            }
            let color = stream.next().unwrap();
            paint(x, y, color);
            clique_color.insert((x.clone(), y.clone()), color);
        }
    }
    let lookup = |clique_color: &BTreeMap<(String, String), u32>, x: &str, y: &str| -> u32 {
        clique_color
            .get(&(x.to_string(), y.to_string()))
            .or_else(|| clique_color.get(&(y.to_string(), x.to_string())))
            .copied()
            .unwrap_or_else(|| panic!("clique edge {x}-{y} colored"))
    };
    let ys = roles.ys();
    let mut dy_first = 0u32;
    for (i, y) in ys.iter().enumerate() {
        let color = stream.next().unwrap();
        if i == 0 {
            dy_first = color;
        }
        paint("d", y, color);
    }
    // Hub edges copy the a-row of the large clique.
    for name in (1..=params.p - 3)
        .map(|i| format!("x{i}"))
        .chain(std::iter::once("c".to_string()))
    {
        paint("e", &name, lookup(&clique_color, "a", &name));
    }
    for i in 1..=s_count {
        paint("e", &format!("s{i}"), t);
    }
    if roles.has_d() {
        paint("e", "d", dy_first);
        paint("d", "a", dy_first);
        for name in (1..=params.p - 3)
            .map(|i| format!("x{i}"))
            .chain(std::iter::once("b".to_string()))
        {
            paint("d", &name, lookup(&clique_color, "c", &name));
        }
        // The y-clique reuses colors of the clique on {x.., a, b}.
        let shared = roles.shared();
        let mut pool: Vec<u32> = Vec::new();
        for i in 0..shared.len() {
            for j in i + 1..shared.len() {
                pool.push(lookup(&clique_color, &shared[i], &shared[j]));
            }
        }
        pool.sort_unstable();
        let mut pool = pool.into_iter();
        for i in 0..ys.len() {
            for j in i + 1..ys.len() {
                paint(&ys[i], &ys[j], pool.next().expect("pool large enough"));
            }
        }
    }
}

fn check_claim6_on(
    inst: &GadgetInstance,
    k: u32,
    s_count: u32,
    constructive: bool,
    claim: &str,
) -> ClaimReport {
    let s_edges: Vec<usize> = (1..=s_count)
        .map(|i| inst.edge("e", &format!("s{i}")))
        .collect();
    let report = enumerate_forced(claim, &inst.graph, k, |colors| {
        let t = colors[s_edges[0]];
        if s_edges.iter().any(|&e| colors[e] != t) {
            return Err("pendant hub edges are not monochromatic".into());
        }
        Ok(())
    });
    and_then_check(report, || {
        if !constructive {
            return Ok(());
        }
        // Constructive direction: every pendant color choice extends.
        let params = bigk_params(k).expect("params valid");
        for t in 1..=k {
            let mut c = Coloring::new(inst.graph.edge_count(), k);
            color_edge_gadget(&inst.graph, &mut c, params, s_count, |r| inst.port(r), t);
            if !c.total() {
                return Err(format!("extension for pendant color {t} left edges uncolored"));
            }
            if !verify_injective(&inst.graph, &c).unwrap().is_empty() {
                return Err(format!("extension for pendant color {t} fails verification"));
            }
        }
        Ok(())
    })
}

/// Exhaustive check of the per-edge gadget's forcing (all pendant hub edges
/// share one color) plus the constructive extension for every color.
pub fn check_claim6(k: u32, s_count: u32) -> Result<ClaimReport, ReductionError> {
    let inst = gadget_bigk(k, Some(s_count))?;
    Ok(check_claim6_on(
        &inst,
        k,
        s_count,
        true,
        &format!("claim6(k={k},s={s_count})"),
    ))
}

pub fn check_claim6_mutated(k: u32, s_count: u32) -> Result<ClaimReport, ReductionError> {
    let inst = gadget_bigk_mutated(k, Some(s_count))?;
    Ok(check_claim6_on(
        &inst,
        k,
        s_count,
        false,
        &format!("claim6-negative-control(k={k},s={s_count})"),
    ))
}

fn require_k_regular(g: &Graph, k: u32) -> Result<(), ReductionError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) != k as usize {
            return Err(ReductionError::NotRegular(k, v, g.degree(v)));
        }
    }
    Ok(())
}

/// Layout handle for the full construction, needed again by the forward
/// coloring.
pub struct BigKReduction {
    pub output: ReductionOutput,
    pub params: BigKParams,
    /// Per source vertex, per neighbor slot, the `l` group vertex ids.
    group_ids: Vec<Vec<Vec<usize>>>,
    /// Per source edge, role name -> output vertex id of the gadget copy.
    gadget_ids: Vec<BTreeMap<String, usize>>,
}

/// Full construction for a k-regular source. Every source vertex becomes a
/// `k*l`-vertex pairing gadget; every source edge becomes an edge gadget
/// whose `2l` pendant slots are identified with the two matching groups.
pub fn build_reduction_bigk(g: &Graph, k: u32) -> Result<BigKReduction, ReductionError> {
    let params = bigk_params(k)?;
    require_k_regular(g, k)?;
    let n = g.vertex_count();
    let l = params.l as usize;
    let ku = k as usize;
    let mut b = ReductionBuilder::new();

    // Vertex gadgets: k groups of l vertices per source vertex.
    let mut group_ids: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for u in 0..n {
        let mut groups = Vec::with_capacity(ku);
        for (i, &nb) in g.neighbors(u).iter().enumerate() {
            let mut ids = Vec::with_capacity(l);
            for j in 0..l {
                ids.push(b.add_vertex(ElementOrigin::Gadget {
                    source: SourceElement::Vertex(u),
                    role: format!("g{i}v{j}(to {nb})"),
                }));
            }
            groups.push(ids);
        }
        group_ids.push(groups);
    }
    // Pairing edges: one per neighbor pair, endpoints chosen greedily at
    // minimum current degree (ties to the lower slot index).
    for u in 0..n {
        let mut deg = vec![vec![0usize; l]; ku];
        for i in 0..ku {
            for j in i + 1..ku {
                let pick = |d: &Vec<usize>| -> usize {
                    let mut best = 0;
                    for (idx, &x) in d.iter().enumerate() {
                        if x < d[best] {
                            best = idx;
                        }
                    }
                    best
                };
                let bi = pick(&deg[i]);
                let bj = pick(&deg[j]);
                deg[i][bi] += 1;
                deg[j][bj] += 1;
                b.add_edge(
                    group_ids[u][i][bi],
                    group_ids[u][j][bj],
                    ElementOrigin::Gadget {
                        source: SourceElement::Vertex(u),
                        role: format!("pair({i},{j})"),
                    },
                );
            }
        }
    }
    // Edge gadgets, pendant slots identified with the endpoint groups.
    let schema = edge_gadget_schema(params, 0, false);
    let mut gadget_ids: Vec<BTreeMap<String, usize>> = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        let src = SourceElement::Edge(u, v);
        let ids = b.add_schema(&schema, &src);
        let mut map: BTreeMap<String, usize> = schema
            .index
            .iter()
            .map(|(name, &ri)| (name.clone(), ids[ri]))
            .collect();
        let e_hub = map["e"];
        let slot_u = g.neighbors(u).binary_search(&v).unwrap();
        let slot_v = g.neighbors(v).binary_search(&u).unwrap();
        let mut s_idx = 1;
        for &sv in group_ids[u][slot_u].iter().chain(&group_ids[v][slot_v]) {
            b.add_edge(
                e_hub,
                sv,
                ElementOrigin::Gadget {
                    source: src.clone(),
                    role: format!("e-s{s_idx}"),
                },
            );
            map.insert(format!("s{s_idx}"), sv);
            s_idx += 1;
        }
        gadget_ids.push(map);
    }
    Ok(BigKReduction {
        output: b.finish(g),
        params,
        group_ids,
        gadget_ids,
    })
}

/// Injective k-coloring of the construction from a proper k-edge-coloring
/// of the source: pendant hub edges take the source color, gadget
/// interiors follow the constructive completion, and the pairing edges are
/// colored greedily (the degree bounds leave them enough slack).
pub fn forward_color_bigk(red: &BigKReduction, source_coloring: &Coloring) -> Coloring {
    let h = &red.output.graph;
    let g = &red.output.source;
    let _ = &red.group_ids;
    let mut c = Coloring::new(h.edge_count(), red.params.k);
    for (ei, _) in g.edges().iter().enumerate() {
        let t = source_coloring.get(ei).expect("total source coloring");
        let map = &red.gadget_ids[ei];
        color_edge_gadget(
            h,
            &mut c,
            red.params,
            2 * red.params.l,
            |role| map[role],
            t,
        );
    }
    crate::solvers::greedy_extend(h, &mut c);
    c
}
