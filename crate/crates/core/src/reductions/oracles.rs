//! Source-problem oracles: proper edge coloring via the line graph, proper
//! vertex coloring via the engine, and closed-form colorings for the
//! regular fixture families.

use crate::coloring::Coloring;
use crate::engine;
use crate::graph::Graph;

/// Line-graph adjacency: one item per edge, adjacency = shared endpoint.
pub fn line_graph(g: &Graph) -> Vec<Vec<usize>> {
    let m = g.edge_count();
    let inc = g.incidence();
    let mut adj = vec![Vec::new(); m];
    for lists in &inc {
        for i in 0..lists.len() {
            for j in i + 1..lists.len() {
                adj[lists[i]].push(lists[j]);
                adj[lists[j]].push(lists[i]);
            }
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    adj
}

/// Proper k-edge-coloring, or `None`. Exact, via vertex coloring of the
/// line graph.
pub fn proper_edge_color_decide(g: &Graph, k: u32) -> Option<Coloring> {
    let lg = line_graph(g);
    engine::vertex_color_decide(&lg, k).map(|assignment| {
        let c = Coloring::from_assignment(&assignment, k);
        debug_assert!(is_proper_edge_coloring(g, &c));
        c
    })
}

/// Proper k-vertex-coloring, or `None`. Exact.
pub fn proper_vertex_color_decide(g: &Graph, k: u32) -> Option<Vec<u32>> {
    engine::vertex_color_decide(g.adjacency(), k)
}

pub fn is_proper_edge_coloring(g: &Graph, c: &Coloring) -> bool {
    let Ok(colors) = c.as_total() else {
        return false;
    };
    let inc = g.incidence();
    inc.iter().all(|edges| {
        let mut seen: u128 = 0;
        edges.iter().all(|&e| {
            let bit = 1u128 << (colors[e] - 1);
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        })
    })
}

pub fn is_proper_vertex_coloring(g: &Graph, colors: &[u32]) -> bool {
    g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

/// Round-robin one-factorization of the complete graph on an even number
/// of vertices: a proper (n-1)-edge-coloring, constructed directly.
pub fn one_factorization_complete(n: usize) -> (Graph, Coloring) {
    assert!(n >= 2 && n % 2 == 0, "one-factorization needs even n");
    let g = crate::graph::complete(n);
    let k = (n - 1) as u32;
    let mut c = Coloring::new(g.edge_count(), k);
    let modn = n - 1;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let color = if v == n - 1 {
            (2 * u) % modn
        } else {
            (u + v) % modn
        };
        c.set(e, color as u32 + 1);
    }
    debug_assert!(is_proper_edge_coloring(&g, &c));
    (g, c)
}

/// Shift coloring of the complete bipartite graph `K_{k,k}`: a proper
/// k-edge-coloring, constructed directly.
pub fn shift_coloring_complete_bipartite(k: usize) -> (Graph, Coloring) {
    let g = crate::graph::complete_bipartite(k, k);
    let mut c = Coloring::new(g.edge_count(), k as u32);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let j = v - k;
        let color = (j + k - u) % k;
        c.set(e, color as u32 + 1);
    }
    debug_assert!(is_proper_edge_coloring(&g, &c));
    (g, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn line_graph_of_path() {
        let p4 = graph::path(4);
        let lg = line_graph(&p4);
        assert_eq!(lg, vec![vec![1], vec![0, 2], vec![1]]);
    }

    #[test]
    fn edge_coloring_oracle() {
        // K4 is class 1; the Petersen graph is class 2. Both computed.
        let k4 = graph::complete(4);
        assert!(proper_edge_color_decide(&k4, 3).is_some());
        let pet = graph::petersen();
        assert!(proper_edge_color_decide(&pet, 3).is_none());
        assert!(proper_edge_color_decide(&pet, 4).is_some());
    }

    #[test]
    fn vertex_coloring_oracle() {
        let k4 = graph::complete(4);
        assert!(proper_vertex_color_decide(&k4, 3).is_none());
        assert!(proper_vertex_color_decide(&k4, 4).is_some());
        let c5 = graph::cycle(5);
        assert!(proper_vertex_color_decide(&c5, 2).is_none());
        let colors = proper_vertex_color_decide(&c5, 3).unwrap();
        assert!(is_proper_vertex_coloring(&c5, &colors));
    }

    #[test]
    fn closed_form_colorings_are_proper() {
        for n in [4usize, 6, 46] {
            let (g, c) = one_factorization_complete(n);
            assert!(is_proper_edge_coloring(&g, &c), "K_{n}");
        }
        for k in [3usize, 5, 8] {
            let (g, c) = shift_coloring_complete_bipartite(k);
            assert!(is_proper_edge_coloring(&g, &c), "K_{{{k},{k}}}");
        }
    }
}
