//! Seeded random instance generators used by the fuzz suites and the CLI.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform simple graph with `n` vertices and `m` edges (capped at the
/// maximum possible).
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut all: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v));
        }
    }
    let m = m.min(all.len());
    all.shuffle(&mut rng);
    Graph::new(n, &all[..m]).unwrap()
}

/// Random graph with at most `m` edges and maximum degree at most `max_deg`.
pub fn random_max_degree(n: usize, m: usize, max_deg: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let mut all: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v));
        }
    }
    all.shuffle(&mut rng);
    let mut deg = vec![0usize; n];
    let mut pairs = Vec::new();
    for (u, v) in all {
        if pairs.len() == m {
            break;
        }
        if deg[u] < max_deg && deg[v] < max_deg {
            deg[u] += 1;
            deg[v] += 1;
            pairs.push((u, v));
        }
    }
    Graph::new(n, &pairs).unwrap()
}

/// Random cubic graph on an even number of vertices, as the union of three
/// disjoint perfect matchings. Redraws until the union is simple, so the
/// result may be disconnected but is always 3-regular.
pub fn random_cubic(n: usize, seed: u64) -> Graph {
    assert!(n >= 4 && n % 2 == 0, "cubic graphs need even n >= 4");
    let mut rng = rng_for(seed);
    loop {
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(3 * n / 2);
        for _ in 0..3 {
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(&mut rng);
            for pair in verts.chunks(2) {
                pairs.push((pair[0], pair[1]));
            }
        }
        if let Ok(g) = Graph::new(n, &pairs) {
            return g;
        }
    }
}

/// Random series-parallel graph (treewidth at most 2), built by recursive
/// series/parallel composition of two-terminal components and simplified to
/// a simple graph.
pub fn random_series_parallel(operations: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    // Two-terminal component: edge multiset over growing vertex set.
    struct Comp {
        s: usize,
        t: usize,
    }
    let mut next = 2usize;
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    let mut comp = Comp { s: 0, t: 1 };
    for _ in 0..operations {
        if rng.gen_bool(0.5) {
            // Series: splice a fresh copy of an edge after t via a new vertex.
            let mid = next;
            next += 1;
            edges.push((comp.t, mid));
            comp.t = mid;
        } else {
            // Parallel: add a two-edge path between s and t (keeps the
            // graph simple while preserving series-parallel structure).
            let mid = next;
            next += 1;
            edges.push((comp.s, mid));
            edges.push((mid, comp.t));
        }
        // Occasionally hang a pendant path to vary the shape.
        if rng.gen_bool(0.3) {
            let at = rng.gen_range(0..next);
            let leaf = next;
            next += 1;
            edges.push((at, leaf));
        }
    }
    edges.sort_unstable_by_key(|&(u, v)| (u.min(v), u.max(v)));
    edges.dedup_by_key(|&mut (u, v)| (u.min(v), u.max(v)));
    Graph::new(next, &edges).unwrap()
}

/// Random connected subgraph of a `w × h` grid: planar with maximum degree
/// at most 4 by construction.
pub fn random_grid_subgraph(w: usize, h: usize, keep_permille: u32, seed: u64) -> Graph {
    let mut rng = rng_for(seed);
    let id = |x: usize, y: usize| y * w + x;
    let mut pairs = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w && rng.gen_ratio(keep_permille, 1000) {
                pairs.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h && rng.gen_ratio(keep_permille, 1000) {
                pairs.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::new(w * h, &pairs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gnm(10, 14, 7).edges(), gnm(10, 14, 7).edges());
        assert_eq!(random_cubic(10, 3).edges(), random_cubic(10, 3).edges());
        assert_eq!(
            random_series_parallel(8, 5).edges(),
            random_series_parallel(8, 5).edges()
        );
    }

    #[test]
    fn cubic_generator_is_3_regular() {
        for seed in 0..20 {
            let g = random_cubic(8 + 2 * (seed as usize % 4), seed);
            assert!(g.adjacency().iter().all(|l| l.len() == 3));
        }
    }

    #[test]
    fn max_degree_generator_respects_bound() {
        for seed in 0..20 {
            let g = random_max_degree(12, 20, 4, seed);
            assert!(g.max_degree() <= 4);
        }
    }

    #[test]
    fn series_parallel_has_small_width() {
        use crate::treewidth::heuristic_decomposition;
        for seed in 0..20 {
            let g = random_series_parallel(10, seed);
            // Width 2 decompositions must exist; min-fill finds one here.
            assert!(heuristic_decomposition(&g).width() <= 2, "seed {seed}");
        }
    }

    #[test]
    fn grid_subgraph_degree_bound() {
        for seed in 0..10 {
            let g = random_grid_subgraph(4, 3, 800, seed);
            assert!(g.max_degree() <= 4);
        }
    }
}
