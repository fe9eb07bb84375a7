//! Tree decompositions: PACE `.td` ingestion, validation, elimination-order
//! heuristics, and conversion to the nice (leaf/introduce/forget/join)
//! normal form used by the dynamic program.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> TdError {
    TdError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Tree decomposition: bags plus tree adjacency. Node ids are dense.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    /// Per-node sorted vertex sets.
    pub bags: Vec<Vec<usize>>,
    /// Tree adjacency between nodes.
    pub tree: Vec<Vec<usize>>,
    /// Number of graph vertices the decomposition refers to.
    pub n: usize,
}

impl TreeDecomposition {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Width = max bag size - 1; an empty decomposition has width 0 by
    /// convention.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Checks the three decomposition properties against `g`: every vertex
    /// covered, every edge covered, and per-vertex connected occurrence.
    pub fn validate(&self, g: &Graph) -> Result<(), TdError> {
        if self.n != g.vertex_count() {
            return Err(TdError::InvalidDecomposition(format!(
                "decomposition is for {} vertices, graph has {}",
                self.n,
                g.vertex_count()
            )));
        }
        for bag in &self.bags {
            if let Some(&v) = bag.iter().find(|&&v| v >= self.n) {
                return Err(TdError::InvalidDecomposition(format!(
                    "bag vertex {v} out of range"
                )));
            }
        }
        // Tree shape: connected and acyclic.
        let b = self.bags.len();
        if b == 0 {
            if g.vertex_count() == 0 {
                return Ok(());
            }
            return Err(TdError::InvalidDecomposition(
                "no bags but the graph is nonempty".into(),
            ));
        }
        let mut edge_total = 0usize;
        for (i, ns) in self.tree.iter().enumerate() {
            for &j in ns {
                if j >= b {
                    return Err(TdError::InvalidDecomposition(format!(
                        "tree edge to unknown node {j}"
                    )));
                }
                if !self.tree[j].contains(&i) {
                    return Err(TdError::InvalidDecomposition(
                        "tree adjacency is not symmetric".into(),
                    ));
                }
            }
            edge_total += ns.len();
        }
        let mut seen = vec![false; b];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop() {
            for &y in &self.tree[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push(y);
                }
            }
        }
        if reached != b || edge_total != 2 * (b - 1) {
            return Err(TdError::InvalidDecomposition(
                "tree edges do not form a tree".into(),
            ));
        }
        // Vertex coverage.
        let mut covered = vec![false; self.n];
        for bag in &self.bags {
            for &v in bag {
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(TdError::InvalidDecomposition(format!(
                "vertex {v} appears in no bag"
            )));
        }
        // Edge coverage.
        for &(u, v) in g.edges() {
            let ok = self
                .bags
                .iter()
                .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
            if !ok {
                return Err(TdError::InvalidDecomposition(format!(
                    "edge ({u},{v}) has no common bag"
                )));
            }
        }
        // Connected occurrence subtrees.
        for v in 0..self.n {
            let holders: Vec<usize> = (0..b)
                .filter(|&i| self.bags[i].binary_search(&v).is_ok())
                .collect();
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            let mut queue = vec![holders[0]];
            seen.insert(holders[0]);
            while let Some(x) = queue.pop() {
                for &y in &self.tree[x] {
                    if self.bags[y].binary_search(&v).is_ok() && seen.insert(y) {
                        queue.push(y);
                    }
                }
            }
            if seen.len() != holders.len() {
                return Err(TdError::InvalidDecomposition(format!(
                    "occurrence of vertex {v} is disconnected"
                )));
            }
        }
        Ok(())
    }
}

/// Parses the PACE `.td` format: `s td <#bags> <max-bag-size> <n>`, bag
/// lines `b <id> <v...>`, then tree edges as id pairs. Ids are 1-based.
/// Validates syntax and tree shape; graph-dependent properties are checked
/// by [`TreeDecomposition::validate`].
pub fn parse_td(text: &str) -> Result<TreeDecomposition, TdError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next().unwrap() {
            "s" => {
                if header.is_some() {
                    return Err(syntax(lineno, "repeated s-line"));
                }
                if tok.next() != Some("td") {
                    return Err(syntax(lineno, "expected `s td ...`"));
                }
                let nums: Vec<usize> = tok.filter_map(|t| t.parse().ok()).collect();
                if nums.len() != 3 {
                    return Err(syntax(lineno, "expected `s td <bags> <max-bag-size> <n>`"));
                }
                header = Some((nums[0], nums[1], nums[2]));
                bags = vec![None; nums[0]];
            }
            "b" => {
                let Some((bag_count, _, n)) = header else {
                    return Err(syntax(lineno, "bag line before s-line"));
                };
                let id: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(lineno, "bad bag id"))?;
                if id == 0 || id > bag_count {
                    return Err(syntax(lineno, format!("bag id {id} out of range")));
                }
                let mut content = Vec::new();
                for t in tok {
                    let v: usize = t.parse().map_err(|_| syntax(lineno, "bad bag vertex"))?;
                    if v == 0 || v > n {
                        return Err(syntax(lineno, format!("bag vertex {v} out of range")));
                    }
                    content.push(v - 1);
                }
                content.sort_unstable();
                content.dedup();
                if bags[id - 1].is_some() {
                    return Err(syntax(lineno, format!("bag {id} defined twice")));
                }
                bags[id - 1] = Some(content);
            }
            first => {
                let Some((bag_count, _, _)) = header else {
                    return Err(syntax(lineno, "edge line before s-line"));
                };
                let i: usize = first.parse().map_err(|_| syntax(lineno, "bad node id"))?;
                let j: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(lineno, "bad node id"))?;
                if i == 0 || i > bag_count || j == 0 || j > bag_count {
                    return Err(syntax(lineno, "tree edge id out of range"));
                }
                tree_edges.push((i - 1, j - 1));
            }
        }
    }
    let Some((bag_count, max_bag, n)) = header else {
        return Err(syntax(0, "missing s-line"));
    };
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| syntax(0, format!("bag {} is missing", i + 1))))
        .collect::<Result<_, _>>()?;
    if let Some(bag) = bags.iter().find(|b| b.len() > max_bag) {
        return Err(TdError::InvalidDecomposition(format!(
            "bag of size {} exceeds declared maximum {max_bag}",
            bag.len()
        )));
    }
    let mut tree = vec![Vec::new(); bag_count];
    for (i, j) in tree_edges {
        tree[i].push(j);
        tree[j].push(i);
    }
    let td = TreeDecomposition { bags, tree, n };
    // Tree shape check (independent of the graph).
    if bag_count > 0 {
        let mut seen = vec![false; bag_count];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop() {
            for &y in &td.tree[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push(y);
                }
            }
        }
        let edge_total: usize = td.tree.iter().map(Vec::len).sum();
        if reached != bag_count || edge_total != 2 * (bag_count - 1) {
            return Err(TdError::InvalidDecomposition(
                "tree edges do not form a tree".into(),
            ));
        }
    }
    Ok(td)
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    let max_bag = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(out, "s td {} {} {}", td.bags.len(), max_bag, td.n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        let _ = writeln!(out);
    }
    for (i, ns) in td.tree.iter().enumerate() {
        for &j in ns {
            if i < j {
                let _ = writeln!(out, "{} {}", i + 1, j + 1);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationHeuristic {
    /// Eliminate the vertex whose neighborhood needs the fewest fill edges.
    MinFill,
    /// Eliminate a vertex of minimum current degree.
    MinDegree,
}

/// Heuristic tree decomposition via an elimination ordering (min-fill by
/// default, ties to the lower vertex id). Valid but not necessarily optimal.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    heuristic_decomposition_with(g, EliminationHeuristic::MinFill)
}

pub fn heuristic_decomposition_with(
    g: &Graph,
    heuristic: EliminationHeuristic,
) -> TreeDecomposition {
    let n = g.vertex_count();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![vec![]],
            tree: vec![vec![]],
            n: 0,
        };
    }
    let mut nbrs: Vec<BTreeSet<usize>> = g
        .adjacency()
        .iter()
        .map(|l| l.iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut elim_index = vec![usize::MAX; n];
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);

    for step in 0..n {
        let pick = match heuristic {
            EliminationHeuristic::MinFill => alive
                .iter()
                .copied()
                .min_by_key(|&v| {
                    let ns: Vec<usize> = nbrs[v].iter().copied().collect();
                    let mut fill = 0usize;
                    for i in 0..ns.len() {
                        for j in i + 1..ns.len() {
                            if !nbrs[ns[i]].contains(&ns[j]) {
                                fill += 1;
                            }
                        }
                    }
                    (fill, v)
                })
                .unwrap(),
            EliminationHeuristic::MinDegree => alive
                .iter()
                .copied()
                .min_by_key(|&v| (nbrs[v].len(), v))
                .unwrap(),
        };
        let ns: Vec<usize> = nbrs[pick].iter().copied().collect();
        let mut bag = ns.clone();
        bag.push(pick);
        bag.sort_unstable();
        bags.push(bag);
        order.push(pick);
        elim_index[pick] = step;
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                nbrs[ns[i]].insert(ns[j]);
                nbrs[ns[j]].insert(ns[i]);
            }
        }
        for &w in &ns {
            nbrs[w].remove(&pick);
        }
        nbrs[pick].clear();
        alive.remove(&pick);
    }

    // Bag i hangs off the bag of the earliest-eliminated remaining
    // neighbor; bags with none (component finished) hang off the next bag.
    let mut tree = vec![Vec::new(); n];
    for i in 0..n {
        let v = order[i];
        let parent = bags[i]
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| elim_index[w])
            .min();
        let p = match parent {
            Some(p) => p,
            None if i + 1 < n => i + 1,
            None => continue, // last bag overall: root
        };
        tree[i].push(p);
        tree[p].push(i);
    }
    let td = TreeDecomposition { bags, tree, n };
    debug_assert!(td.validate(g).is_ok());
    td
}

/// Node kinds of a nice decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    pub kind: NodeKind,
    /// Sorted bag content.
    pub bag: Vec<usize>,
    /// Child node indices (always smaller than this node's index).
    pub children: Vec<usize>,
}

/// Rooted nice decomposition in children-first topological order; the last
/// node is the root and has an empty bag, as do all leaves.
#[derive(Debug, Clone)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub n: usize,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|nd| nd.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Plain tree-decomposition view (root becomes node 0 is not needed;
    /// ids are kept, adjacency symmetrized).
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let mut tree = vec![Vec::new(); self.nodes.len()];
        for (i, nd) in self.nodes.iter().enumerate() {
            for &c in &nd.children {
                tree[i].push(c);
                tree[c].push(i);
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|nd| nd.bag.clone()).collect(),
            tree,
            n: self.n,
        }
    }

    /// Structural check: kind shapes, empty root and leaves, plus the
    /// underlying decomposition properties for `g`, plus the guarantee that
    /// every edge is introduced at some introduce node.
    pub fn validate(&self, g: &Graph) -> Result<(), TdError> {
        let bad = |msg: String| Err(TdError::InvalidDecomposition(msg));
        if self.nodes.is_empty() {
            return bad("empty nice decomposition".into());
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return bad("root bag is not empty".into());
        }
        for (i, nd) in self.nodes.iter().enumerate() {
            for &c in &nd.children {
                if c >= i {
                    return bad(format!("node {i} has non-topological child {c}"));
                }
            }
            match nd.kind {
                NodeKind::Leaf => {
                    if !nd.children.is_empty() || !nd.bag.is_empty() {
                        return bad(format!("leaf node {i} malformed"));
                    }
                }
                NodeKind::Introduce(v) => {
                    if nd.children.len() != 1 {
                        return bad(format!("introduce node {i} must have one child"));
                    }
                    let child = &self.nodes[nd.children[0]];
                    let mut expect = child.bag.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if child.bag.binary_search(&v).is_ok() || nd.bag != expect {
                        return bad(format!("introduce node {i} does not add exactly {v}"));
                    }
                }
                NodeKind::Forget(v) => {
                    if nd.children.len() != 1 {
                        return bad(format!("forget node {i} must have one child"));
                    }
                    let child = &self.nodes[nd.children[0]];
                    let mut expect = nd.bag.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if nd.bag.binary_search(&v).is_ok() || child.bag != expect {
                        return bad(format!("forget node {i} does not drop exactly {v}"));
                    }
                }
                NodeKind::Join => {
                    if nd.children.len() != 2 {
                        return bad(format!("join node {i} must have two children"));
                    }
                    for &c in &nd.children {
                        if self.nodes[c].bag != nd.bag {
                            return bad(format!("join node {i} has mismatched child bag"));
                        }
                    }
                }
            }
        }
        // Node 0 in topological order must be a leaf; also ensure a single
        // root: every node except the last is someone's child exactly once.
        let mut referenced = vec![0usize; self.nodes.len()];
        for nd in &self.nodes {
            for &c in &nd.children {
                referenced[c] += 1;
            }
        }
        if referenced[self.root()] != 0
            || referenced[..self.root()].iter().any(|&r| r != 1)
        {
            return bad("nodes are not a single rooted tree".into());
        }
        self.as_tree_decomposition().validate(g)?;
        // Every edge must be introduced: both endpoints in bag, one just added.
        let mut introduced = vec![false; g.edge_count()];
        for nd in &self.nodes {
            if let NodeKind::Introduce(v) = nd.kind {
                for &u in &nd.bag {
                    if u != v {
                        if let Some(e) = g.edge_id(u, v) {
                            introduced[e] = true;
                        }
                    }
                }
            }
        }
        if let Some(e) = introduced.iter().position(|&b| !b) {
            let (u, v) = g.endpoints(e);
            return bad(format!("edge ({u},{v}) is never introduced"));
        }
        Ok(())
    }
}

struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        self.nodes.len() - 1
    }

    /// Leaf-up chain introducing every vertex of `bag` in ascending order.
    fn leaf_chain(&mut self, bag: &[usize]) -> usize {
        let mut cur = self.push(NodeKind::Leaf, vec![], vec![]);
        let mut acc: Vec<usize> = Vec::new();
        for &v in bag {
            acc.push(v);
            cur = self.push(NodeKind::Introduce(v), acc.clone(), vec![cur]);
        }
        cur
    }

    /// Chain from an existing node with bag `from` to bag `to`: forgets
    /// `from \ to` ascending, then introduces `to \ from` ascending.
    fn transition(&mut self, mut cur: usize, from: &[usize], to: &[usize]) -> usize {
        let mut bag: Vec<usize> = from.to_vec();
        for &v in from {
            if to.binary_search(&v).is_err() {
                bag.retain(|&x| x != v);
                cur = self.push(NodeKind::Forget(v), bag.clone(), vec![cur]);
            }
        }
        for &v in to {
            if from.binary_search(&v).is_err() {
                bag.push(v);
                bag.sort_unstable();
                cur = self.push(NodeKind::Introduce(v), bag.clone(), vec![cur]);
            }
        }
        cur
    }
}

/// Converts a valid decomposition into an equivalent nice one of identical
/// width: empty leaves and root, single-vertex introduce/forget steps, and
/// equal-bag binary joins.
pub fn nicefy(td: &TreeDecomposition) -> NiceDecomposition {
    let mut b = NiceBuilder { nodes: Vec::new() };
    if td.bags.is_empty() {
        b.push(NodeKind::Leaf, vec![], vec![]);
        return NiceDecomposition {
            nodes: b.nodes,
            n: td.n,
        };
    }
    // Root the input tree at node 0 and process children-first.
    let root = 0usize;
    let order = {
        let mut order = Vec::with_capacity(td.bags.len());
        let mut stack = vec![(root, usize::MAX)];
        while let Some((x, parent)) = stack.pop() {
            order.push((x, parent));
            for &y in &td.tree[x] {
                if y != parent {
                    stack.push((y, x));
                }
            }
        }
        order.reverse(); // children before parents
        order
    };
    let mut built: Vec<Option<usize>> = vec![None; td.bags.len()];
    for &(x, parent) in &order {
        let bag = &td.bags[x];
        let children: Vec<usize> = td
            .tree[x]
            .iter()
            .copied()
            .filter(|&y| y != parent)
            .collect();
        let top = if children.is_empty() {
            b.leaf_chain(bag)
        } else {
            // Bring each child subtree to this bag, then fold with joins.
            let mut tops: Vec<usize> = children
                .iter()
                .map(|&c| {
                    let child_top = built[c].expect("children built first");
                    b.transition(child_top, &td.bags[c], bag)
                })
                .collect();
            let mut acc = tops.remove(0);
            for t in tops {
                acc = b.push(NodeKind::Join, bag.clone(), vec![acc, t]);
            }
            acc
        };
        built[x] = Some(top);
    }
    // Forget everything above the original root.
    let top = built[root].unwrap();
    let root_bag = td.bags[root].clone();
    b.transition(top, &root_bag, &[]);
    NiceDecomposition {
        nodes: b.nodes,
        n: td.n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{self, Graph};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        Graph::new(n, &pairs).unwrap()
    }

    #[test]
    fn parse_and_validate_basics() {
        let k3 = graph::complete(3);
        let td = parse_td("s td 1 3 3\nb 1 1 2 3\n").unwrap();
        assert_eq!(td.width(), 2);
        td.validate(&k3).unwrap();

        let p4 = graph::path(4);
        let td = parse_td("s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n").unwrap();
        assert_eq!(td.width(), 1);
        td.validate(&p4).unwrap();
    }

    #[test]
    fn validate_names_missing_edge() {
        let p4 = graph::path(4);
        let td = parse_td("s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n").unwrap();
        let err = td.validate(&p4).unwrap_err();
        assert_eq!(
            err,
            TdError::InvalidDecomposition("edge (1,2) has no common bag".into())
        );
    }

    #[test]
    fn validate_catches_disconnected_occurrence() {
        let g = graph::path(3);
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0]],
            tree: vec![vec![1], vec![0, 2], vec![1]],
            n: 3,
        };
        assert!(td.validate(&g).is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_td("b 1 1\n").is_err());
        assert!(parse_td("s td 2 1 1\nb 1 1\nb 2 1\n").is_err()); // no tree edge
        assert!(parse_td("s td 1 1 1\nb 1 2\n").is_err()); // vertex out of range
    }

    #[test]
    fn td_text_round_trip() {
        let g = graph::prism();
        let td = heuristic_decomposition(&g);
        let text = write_td(&td);
        let back = parse_td(&text).unwrap();
        back.validate(&g).unwrap();
        assert_eq!(back.width(), td.width());
    }

    #[test]
    fn heuristic_widths() {
        // Trees have width 1.
        let t = graph::path(7);
        assert_eq!(heuristic_decomposition(&t).width(), 1);
        let s = graph::star(5);
        assert_eq!(heuristic_decomposition(&s).width(), 1);

        // Cycles have width 2.
        for n in 3..=8 {
            assert_eq!(heuristic_decomposition(&graph::cycle(n)).width(), 2);
        }

        // Cliques have width n-1.
        assert_eq!(heuristic_decomposition(&graph::complete(4)).width(), 3);
    }

    #[test]
    fn heuristics_are_valid_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..60 {
            let n = rng.gen_range(1..=12);
            let g = random_graph(&mut rng, n, 0.35);
            for h in [EliminationHeuristic::MinFill, EliminationHeuristic::MinDegree] {
                let td = heuristic_decomposition_with(&g, h);
                td.validate(&g).unwrap();
            }
        }
    }

    #[test]
    fn nicefy_single_edge_shape() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1]],
            tree: vec![vec![]],
            n: 2,
        };
        let nd = nicefy(&td);
        nd.validate(&g).unwrap();
        assert_eq!(nd.nodes.len(), 5);
        let kinds: Vec<NodeKind> = nd.nodes.iter().map(|x| x.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NodeKind::Leaf,
                NodeKind::Introduce(0),
                NodeKind::Introduce(1),
                NodeKind::Forget(0),
                NodeKind::Forget(1),
            ]
        );
    }

    #[test]
    fn nicefy_is_shape_stable() {
        // Re-running on an already-nice chain reproduces it node for node.
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vec![0, 1]],
            tree: vec![vec![]],
            n: 2,
        };
        let first = nicefy(&td);
        // View the nice chain from its root (reverse into a path rooted at
        // node 0 = old root) and nicefy again.
        let as_td = {
            let t = first.as_tree_decomposition();
            let order: Vec<usize> = (0..t.bags.len()).rev().collect();
            let mut bags = Vec::new();
            let mut tree = vec![Vec::new(); t.bags.len()];
            for &i in &order {
                bags.push(t.bags[i].clone());
            }
            for (new_i, &old_i) in order.iter().enumerate() {
                for &old_j in &t.tree[old_i] {
                    let new_j = order.iter().position(|&x| x == old_j).unwrap();
                    if new_i < new_j {
                        tree[new_i].push(new_j);
                        tree[new_j].push(new_i);
                    }
                }
            }
            TreeDecomposition { bags, tree, n: 2 }
        };
        let second = nicefy(&as_td);
        second.validate(&g).unwrap();
        assert_eq!(second.nodes.len(), first.nodes.len());
        let ka: Vec<NodeKind> = first.nodes.iter().map(|x| x.kind).collect();
        let kb: Vec<NodeKind> = second.nodes.iter().map(|x| x.kind).collect();
        assert_eq!(ka, kb);
    }

    #[test]
    fn nicefy_preserves_width_and_validates() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.gen_range(1..=11);
            let g = random_graph(&mut rng, n, 0.3);
            let td = heuristic_decomposition(&g);
            let nd = nicefy(&td);
            nd.validate(&g).unwrap();
            assert_eq!(nd.width(), td.width(), "width must be preserved");
        }
    }

    #[test]
    fn nicefy_handles_disconnected_graphs() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let td = heuristic_decomposition(&g);
        let nd = nicefy(&td);
        nd.validate(&g).unwrap();
    }
}
