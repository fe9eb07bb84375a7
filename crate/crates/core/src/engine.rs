//! Exact proper vertex-coloring engine: decision, chromatic number, and
//! complete enumeration over an adjacency structure.
//!
//! Backtracking with a saturation-first dynamic vertex order (most distinct
//! neighbor colors first, ties by higher degree then lower id) and
//! forward-checking on fixed-width color bit sets. Colors are `1..=k` with
//! `k <= 128`. Identical inputs always explore the same tree, so decisions
//! and enumeration order are deterministic.
//!
//! Decision mode breaks color symmetry by pinning the first assigned vertex
//! to color 1. Enumeration never breaks symmetry: it yields every proper
//! coloring exactly once.

use std::time::Instant;

use thiserror::Error;

/// Colors `1..=128` as a bit set; bit `i` is color `i + 1`.
pub type ColorSet = u128;

pub const MAX_COLORS: u32 = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("enumeration exceeded cap of {cap} colorings")]
    CapExceeded { cap: u64 },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Outcome of a decision run that may be bounded by a deadline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecideOutcome {
    Colored(Vec<u32>),
    Unsat,
    DeadlineExceeded,
}

struct Searcher<'a> {
    adj: &'a [Vec<usize>],
    full: ColorSet,
    color: Vec<u32>,
    banned: Vec<ColorSet>,
    trail: Vec<usize>,
    assigned: usize,
    nodes: u64,
    deadline: Option<Instant>,
    deadline_hit: bool,
}

impl<'a> Searcher<'a> {
    fn new(adj: &'a [Vec<usize>], k: u32, deadline: Option<Instant>) -> Self {
        assert!(k >= 1 && k <= MAX_COLORS, "color budget {k} outside 1..=128");
        let n = adj.len();
        let full = if k == 128 { !0u128 } else { (1u128 << k) - 1 };
        Searcher {
            adj,
            full,
            color: vec![0; n],
            banned: vec![0; n],
            trail: Vec::with_capacity(n * 4),
            assigned: 0,
            nodes: 0,
            deadline,
            deadline_hit: false,
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.deadline_hit {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes % 4096 == 0 && Instant::now() >= deadline {
                self.deadline_hit = true;
                return true;
            }
        }
        false
    }

    /// Uncolored vertex with maximum saturation, ties by degree then id.
    fn select(&self) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for v in 0..self.adj.len() {
            if self.color[v] != 0 {
                continue;
            }
            let sat = self.banned[v].count_ones();
            let deg = self.adj[v].len();
            let better = match best {
                None => true,
                Some((bsat, bdeg, bid)) => {
                    (sat, deg, std::cmp::Reverse(v)) > (bsat, bdeg, std::cmp::Reverse(bid))
                }
            };
            if better {
                best = Some((sat, deg, v));
            }
        }
        best.map(|(_, _, v)| v)
    }

    /// Assigns `v := c`, recording which neighbors newly lost `c`.
    /// Returns false on a domain wipeout at an uncolored neighbor.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        let bit = 1u128 << (c - 1);
        self.color[v] = c;
        self.assigned += 1;
        let mark = self.trail.len();
        let mut ok = true;
        for &w in &self.adj[v] {
            if self.banned[w] & bit == 0 {
                self.banned[w] |= bit;
                self.trail.push(w);
                if self.color[w] == 0 && self.banned[w] == self.full {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            self.undo(v, c, mark);
        }
        ok
    }

    fn undo(&mut self, v: usize, c: u32, mark: usize) {
        let bit = 1u128 << (c - 1);
        for &w in &self.trail[mark..] {
            self.banned[w] &= !bit;
        }
        self.trail.truncate(mark);
        self.color[v] = 0;
        self.assigned -= 1;
    }

    fn decide(&mut self) -> bool {
        if self.assigned == self.adj.len() {
            return true;
        }
        if self.out_of_time() {
            return false;
        }
        let v = self.select().expect("uncolored vertex exists");
        let mut cands = self.full & !self.banned[v];
        if self.assigned == 0 {
            cands &= 1; // symmetry: first vertex takes color 1
        }
        while cands != 0 {
            let bit = cands & cands.wrapping_neg();
            cands ^= bit;
            let c = bit.trailing_zeros() + 1;
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(v, c) {
                if self.decide() {
                    return true;
                }
                self.undo(v, c, mark);
            }
            if self.deadline_hit {
                return false;
            }
        }
        false
    }

    fn enumerate<F: FnMut(&[u32])>(
        &mut self,
        cap: Option<u64>,
        count: &mut u64,
        f: &mut F,
    ) -> Result<(), EngineError> {
        if self.assigned == self.adj.len() {
            if let Some(cap) = cap {
                if *count >= cap {
                    return Err(EngineError::CapExceeded { cap });
                }
            }
            *count += 1;
            f(&self.color);
            return Ok(());
        }
        let v = self.select().expect("uncolored vertex exists");
        let mut cands = self.full & !self.banned[v];
        while cands != 0 {
            let bit = cands & cands.wrapping_neg();
            cands ^= bit;
            let c = bit.trailing_zeros() + 1;
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(v, c) {
                let r = self.enumerate(cap, count, f);
                self.undo(v, c, mark);
                r?;
            }
        }
        Ok(())
    }
}

/// Proper `k`-coloring of the adjacency structure, or `None` if impossible.
/// Deterministic; exhaustive on the `None` side.
pub fn vertex_color_decide(adj: &[Vec<usize>], k: u32) -> Option<Vec<u32>> {
    match vertex_color_decide_within(adj, k, None).0 {
        DecideOutcome::Colored(c) => Some(c),
        _ => None,
    }
}

/// Decision with an optional wall-clock deadline.
pub fn vertex_color_decide_within(
    adj: &[Vec<usize>],
    k: u32,
    deadline: Option<Instant>,
) -> (DecideOutcome, SearchStats) {
    let mut s = Searcher::new(adj, k, deadline);
    let found = s.decide();
    let stats = SearchStats { nodes: s.nodes };
    let outcome = if found {
        debug_assert!(is_proper(adj, &s.color));
        DecideOutcome::Colored(s.color)
    } else if s.deadline_hit {
        DecideOutcome::DeadlineExceeded
    } else {
        DecideOutcome::Unsat
    };
    (outcome, stats)
}

/// Greedy coloring in vertex id order; the color count is an upper bound
/// for the chromatic number.
pub fn greedy_bound(adj: &[Vec<usize>]) -> u32 {
    let n = adj.len();
    let mut color = vec![0u32; n];
    let mut max = 0;
    for v in 0..n {
        let mut banned: ColorSet = 0;
        for &w in &adj[v] {
            if color[w] != 0 {
                banned |= 1 << (color[w] - 1);
            }
        }
        let c = (!banned).trailing_zeros() + 1;
        color[v] = c;
        max = max.max(c);
    }
    max
}

/// Greedily grown clique, scanning vertices by descending degree. Its size
/// lower-bounds the chromatic number.
pub fn clique_bound(adj: &[Vec<usize>]) -> u32 {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut clique: Vec<usize> = vec![order[0]];
    for &v in &order[1..] {
        if clique.iter().all(|&u| adj[u].binary_search(&v).is_ok()) {
            clique.push(v);
        }
    }
    clique.len() as u32
}

/// Least `k` admitting a proper coloring. Empty structure gives 0, a
/// nonempty edgeless one gives 1. Searches upward from the clique bound;
/// the greedy bound caps the search and must stay within 128 colors.
pub fn vertex_chromatic(adj: &[Vec<usize>]) -> u32 {
    if adj.is_empty() {
        return 0;
    }
    if adj.iter().all(Vec::is_empty) {
        return 1;
    }
    let ub = greedy_bound(adj);
    assert!(ub <= MAX_COLORS, "greedy bound {ub} exceeds supported colors");
    let lb = clique_bound(adj).max(2);
    for k in lb..ub {
        if vertex_color_decide(adj, k).is_some() {
            return k;
        }
    }
    ub
}

/// Visits every proper `k`-coloring exactly once, in deterministic order.
/// Returns the number visited; fails loudly if `cap` would be exceeded.
pub fn for_each_coloring<F: FnMut(&[u32])>(
    adj: &[Vec<usize>],
    k: u32,
    cap: Option<u64>,
    mut f: F,
) -> Result<u64, EngineError> {
    let mut s = Searcher::new(adj, k, None);
    let mut count = 0u64;
    s.enumerate(cap, &mut count, &mut f)?;
    Ok(count)
}

/// Collects every proper `k`-coloring (up to `cap`).
pub fn enumerate_colorings(
    adj: &[Vec<usize>],
    k: u32,
    cap: Option<u64>,
) -> Result<Vec<Vec<u32>>, EngineError> {
    let mut out = Vec::new();
    for_each_coloring(adj, k, cap, |c| out.push(c.to_vec()))?;
    Ok(out)
}

pub fn is_proper(adj: &[Vec<usize>], colors: &[u32]) -> bool {
    adj.iter()
        .enumerate()
        .all(|(v, ns)| ns.iter().all(|&w| colors[v] != colors[w]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn adj_of(g: &graph::Graph) -> Vec<Vec<usize>> {
        g.adjacency().to_vec()
    }

    #[test]
    fn k4_needs_four() {
        let adj = adj_of(&graph::complete(4));
        assert!(vertex_color_decide(&adj, 3).is_none());
        let c = vertex_color_decide(&adj, 4).unwrap();
        assert!(is_proper(&adj, &c));
        assert_eq!(vertex_chromatic(&adj), 4);
    }

    #[test]
    fn odd_cycle_needs_three() {
        let adj = adj_of(&graph::cycle(5));
        assert!(vertex_color_decide(&adj, 2).is_none());
        let c = vertex_color_decide(&adj, 3).unwrap();
        assert!(is_proper(&adj, &c));
    }

    #[test]
    fn chromatic_conventions() {
        assert_eq!(vertex_chromatic(&[]), 0);
        assert_eq!(vertex_chromatic(&[vec![], vec![], vec![]]), 1);
    }

    #[test]
    fn enumeration_counts() {
        // Single vertex, k = 3: three assignments.
        assert_eq!(enumerate_colorings(&[vec![]], 3, None).unwrap().len(), 3);

        // Triangle at k = 3: all 3! permutations.
        let adj = adj_of(&graph::complete(3));
        let all = enumerate_colorings(&adj, 3, None).unwrap();
        assert_eq!(all.len(), 6);
        let mut unique: Vec<_> = all.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), 6, "each coloring exactly once");

        // Three items with one conflicting pair {0,2}, k = 2: 2*2*1 = 4.
        let adj = vec![vec![2], vec![], vec![0]];
        let all = enumerate_colorings(&adj, 2, None).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn enumeration_matches_exhaustive_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let n = rng.gen_range(1..=6);
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        pairs.push((u, v));
                    }
                }
            }
            let g = graph::Graph::new(n, &pairs).unwrap();
            let adj = adj_of(&g);
            for k in 1..=3u32 {
                let enumerated = enumerate_colorings(&adj, k, None).unwrap();
                for c in &enumerated {
                    assert!(is_proper(&adj, c));
                }
                // Brute force over all k^n assignments.
                let mut brute = 0u64;
                let total = (k as u64).pow(n as u32);
                for code in 0..total {
                    let mut x = code;
                    let mut colors = vec![0u32; n];
                    for item in colors.iter_mut() {
                        *item = (x % k as u64) as u32 + 1;
                        x /= k as u64;
                    }
                    if is_proper(&adj, &colors) {
                        brute += 1;
                    }
                }
                assert_eq!(enumerated.len() as u64, brute);
            }
        }
    }

    #[test]
    fn decide_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..40 {
            let n = rng.gen_range(1..=8);
            let mut pairs = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        pairs.push((u, v));
                    }
                }
            }
            let g = graph::Graph::new(n, &pairs).unwrap();
            let adj = adj_of(&g);
            for k in 1..=3u32 {
                let decided = vertex_color_decide(&adj, k).is_some();
                let brute = enumerate_colorings(&adj, k, None).unwrap();
                assert_eq!(decided, !brute.is_empty());
            }
        }
    }

    #[test]
    fn cap_fails_loudly() {
        let adj = vec![vec![], vec![], vec![]];
        assert_eq!(
            enumerate_colorings(&adj, 3, Some(5)).unwrap_err(),
            EngineError::CapExceeded { cap: 5 }
        );
    }

    #[test]
    fn decide_is_deterministic() {
        let adj = adj_of(&graph::petersen());
        let a = vertex_color_decide(&adj, 3).unwrap();
        let b = vertex_color_decide(&adj, 3).unwrap();
        assert_eq!(a, b);
    }
}
