//! Simple undirected graphs with canonical edge identities, plus the
//! structural metrics (degree, girth, bipartition) the solvers depend on.
//!
//! Vertices are dense `0..n` integers. Edges are stored as `(min, max)`
//! pairs in lexicographic order; an edge's position in that list is its
//! stable `EdgeId`. Graphs are immutable after construction.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Index into [`Graph::edges`].
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0},{0}) is not allowed")]
    LoopEdge(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(usize, usize),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Builds a graph from vertex pairs. Pairs may come in any order and
    /// orientation; the result is canonical. Loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            labels: BTreeMap::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical `(min, max)` edge list, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    /// Sorted neighbor lists, indexed by vertex.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// EdgeId of `{u,v}`, if present. Binary search over the sorted list.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Per-vertex incident edge ids, each list sorted.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(e);
            inc[v].push(e);
        }
        inc
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    /// Replaces every edge by a path with `t` fresh internal vertices.
    /// New vertices are appended in canonical edge order, so the result is
    /// deterministic. `t = 0` returns the graph unchanged.
    pub fn subdivide(&self, t: usize) -> Graph {
        if t == 0 {
            return self.clone();
        }
        let mut pairs = Vec::with_capacity(self.edges.len() * (t + 1));
        let mut next = self.n;
        for &(u, v) in &self.edges {
            let mut prev = u;
            for _ in 0..t {
                pairs.push((prev, next));
                prev = next;
                next += 1;
            }
            pairs.push((prev, v));
        }
        Graph::new(next, &pairs).expect("subdivision of a simple graph is simple")
    }

    pub fn metrics(&self) -> GraphMetrics {
        metrics(self)
    }

    /// Vertex-induced subgraph. Returns the subgraph (vertices renumbered by
    /// `keep` order after sorting) together with the old-id map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut vs: Vec<usize> = keep.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        let g = Graph::new(vs.len(), &pairs).expect("induced subgraph of a simple graph is simple");
        (g, vs)
    }
}

/// Incremental builder used by the gadget generators.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    n: usize,
    pairs: Vec<(usize, usize)>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        GraphBuilder {
            n,
            pairs: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_labeled(&mut self, label: impl Into<String>) -> usize {
        let v = self.add_vertex();
        self.labels.insert(v, label.into());
        v
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.pairs.push((u, v));
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut g = Graph::new(self.n, &self.pairs)?;
        g.labels = self.labels;
        Ok(g)
    }
}

/// Girth of a graph; `Infinite` means acyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_at_least(&self, g: usize) -> bool {
        match self {
            Girth::Finite(x) => *x >= g,
            Girth::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Girth::Finite(x) => Some(*x),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(x) => write!(f, "{x}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMetrics {
    pub max_degree: usize,
    pub girth: Girth,
    /// `(A, B)` with `A ∪ B = V`, every edge crossing; present iff the graph
    /// has no odd cycle. Part `A` is the one containing vertex 0.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    pub connected: bool,
}

/// Computes degree, girth, bipartition and connectivity.
///
/// Girth runs one bounded BFS per start vertex: expansion stops once the
/// current best cycle cannot be improved, so graphs with short cycles are
/// cheap even when large.
pub fn metrics(g: &Graph) -> GraphMetrics {
    GraphMetrics {
        max_degree: g.max_degree(),
        girth: girth(g),
        bipartition: bipartition(g),
        connected: connected(g),
    }
}

fn connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for v in 0..n {
        if side[v] == 0 {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    Some((a, b))
}

fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if best == 3 {
            break; // nothing shorter exists in a simple graph
        }
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        dist[s] = 0;
        touched.push(s);
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            // A cycle through a deeper vertex is at least 2*dist+1 long.
            if 2 * dist[u] >= best {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if w != parent[u] && u != parent[w] {
                    let cand = dist[u] + dist[w] + 1;
                    if cand < best {
                        best = cand;
                    }
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    Graph::new(n, &pairs).unwrap()
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..a {
        for v in 0..b {
            pairs.push((u, a + v));
        }
    }
    Graph::new(a + b, &pairs).unwrap()
}

/// Cycle `0-1-...-(n-1)-0`; `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &pairs).unwrap()
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &pairs).unwrap()
}

/// Star `K_{1,n}` with center 0.
pub fn star(n: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    Graph::new(n + 1, &pairs).unwrap()
}

/// Triangular prism: two triangles joined by a perfect matching.
pub fn prism() -> Graph {
    Graph::new(
        6,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap()
}

/// Petersen graph: outer 5-cycle, inner pentagram, five spokes.
pub fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &pairs).unwrap()
}

/// 3-dimensional hypercube Q3.
pub fn cube() -> Graph {
    let mut pairs = Vec::new();
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                pairs.push((v, w));
            }
        }
    }
    Graph::new(8, &pairs).unwrap()
}

/// Looks up a canonical graph by name.
///
/// Accepted: `K3`, `K4`, `K33`, `prism`, `petersen`, `cube`, and the
/// parameterized families `C_n`, `P_n`, `star_n` (e.g. `C_5`, `star_7`).
pub fn named_fixture(name: &str) -> Result<Graph, GraphError> {
    let unknown = || GraphError::UnknownFixture(name.to_string());
    match name {
        "K3" => return Ok(complete(3)),
        "K4" => return Ok(complete(4)),
        "K33" => return Ok(complete_bipartite(3, 3)),
        "prism" => return Ok(prism()),
        "petersen" => return Ok(petersen()),
        "cube" => return Ok(cube()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("C_") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n < 3 {
            return Err(unknown());
        }
        return Ok(cycle(n));
    }
    if let Some(rest) = name.strip_prefix("P_") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return Ok(path(n));
    }
    if let Some(rest) = name.strip_prefix("star_") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        return Ok(star(n));
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::new(4, &[(0, 1), (0, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            Graph::new(4, &[(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(Graph::new(3, &[(1, 1)]).unwrap_err(), GraphError::LoopEdge(1));
        assert_eq!(
            Graph::new(3, &[(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange(3, 3)
        );
    }

    #[test]
    fn triangle_is_canonical() {
        let g = Graph::new(3, &[(2, 0), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.edge_id(2, 0), Some(1));
        assert_eq!(g.neighbors(2), &[0, 1]);
    }

    #[test]
    fn edgeless_graph_metrics() {
        let g = Graph::new(4, &[]).unwrap();
        let m = g.metrics();
        assert_eq!(m.girth, Girth::Infinite);
        assert_eq!(m.max_degree, 0);
        assert!(!m.connected);
        assert!(m.bipartition.is_some());
    }

    #[test]
    fn metrics_on_fixtures() {
        let m = complete(4).metrics();
        assert_eq!(m.max_degree, 3);
        assert_eq!(m.girth, Girth::Finite(3));
        assert!(m.bipartition.is_none());
        assert!(m.connected);

        let m = cycle(5).metrics();
        assert_eq!(m.max_degree, 2);
        assert_eq!(m.girth, Girth::Finite(5));
        assert!(m.bipartition.is_none());

        let m = cycle(4).metrics();
        assert_eq!(m.girth, Girth::Finite(4));
        let (a, b) = m.bipartition.unwrap();
        assert_eq!(a, vec![0, 2]);
        assert_eq!(b, vec![1, 3]);

        let m = petersen().metrics();
        assert_eq!(m.girth, Girth::Finite(5));
        assert_eq!(m.max_degree, 3);

        let m = cube().metrics();
        assert_eq!(m.girth, Girth::Finite(4));
        assert!(m.bipartition.is_some());
        assert_eq!(m.max_degree, 3);

        assert_eq!(path(4).metrics().girth, Girth::Infinite);
    }

    #[test]
    fn bipartition_is_proper_two_coloring() {
        for name in ["C_4", "C_6", "P_5", "star_4", "K33", "cube"] {
            let g = named_fixture(name).unwrap();
            let (a, b) = g.metrics().bipartition.expect(name);
            assert_eq!(a.len() + b.len(), g.vertex_count());
            for &(u, v) in g.edges() {
                let ua = a.binary_search(&u).is_ok();
                let va = a.binary_search(&v).is_ok();
                assert_ne!(ua, va, "edge ({u},{v}) does not cross in {name}");
            }
        }
    }

    #[test]
    fn subdivide_identity_and_counts() {
        let k4 = complete(4);
        assert_eq!(k4.subdivide(0), k4);

        let s = k4.subdivide(7);
        assert_eq!(s.vertex_count(), 4 + 7 * 6);
        let m = s.metrics();
        assert_eq!(m.girth, Girth::Finite(24));
        assert!(m.bipartition.is_some());
        assert_eq!(m.max_degree, 3);

        // C3 subdivided once is C6.
        let c6 = cycle(3).subdivide(1);
        assert_eq!(c6.vertex_count(), 6);
        assert_eq!(c6.metrics().girth, Girth::Finite(6));
    }

    #[test]
    fn subdivision_multiplies_girth() {
        for name in ["K3", "K4", "C_5", "prism", "petersen", "cube", "K33"] {
            let g = named_fixture(name).unwrap();
            let base = match g.metrics().girth {
                Girth::Finite(x) => x,
                Girth::Infinite => continue,
            };
            for t in 1..=3 {
                assert_eq!(
                    g.subdivide(t).metrics().girth,
                    Girth::Finite((t + 1) * base),
                    "{name} subdivided by {t}"
                );
            }
        }
    }

    #[test]
    fn fixtures_have_expected_shape() {
        let p = prism();
        assert_eq!((p.vertex_count(), p.edge_count()), (6, 9));
        assert!(p.adjacency().iter().all(|l| l.len() == 3));

        let pet = petersen();
        assert_eq!((pet.vertex_count(), pet.edge_count()), (10, 15));

        let s = named_fixture("star_5").unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (6, 5));
        assert_eq!(s.degree(0), 5);

        assert!(named_fixture("frobnicator").is_err());
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = complete(5);
        let (sub, map) = g.induced(&[4, 1, 2]);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 3);
        assert_eq!(map, vec![1, 2, 4]);
    }
}
