//! Text formats: DIMACS (`p edge`) and PACE (`p tw`) graph files, and the
//! coloring witness format.
//!
//! Both graph formats use 1-based vertex ids on the wire and are normalized
//! to 0-based internally. Writers emit the canonical sorted edge list.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Reads either DIMACS `p edge <n> <m>` with `e u v` lines, or PACE
/// `p tw <n> <m>` with bare `u v` lines. Comment lines start with `c`.
pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut expected_m = 0usize;
    let mut dimacs = false;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let first = tok.next().unwrap();
        match first {
            "p" => {
                if n.is_some() {
                    return Err(syntax(lineno, "repeated problem line"));
                }
                let kind = tok.next().ok_or_else(|| syntax(lineno, "missing format"))?;
                dimacs = match kind {
                    "edge" | "col" => true,
                    "tw" => false,
                    other => return Err(syntax(lineno, format!("unknown format `{other}`"))),
                };
                let nv: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(lineno, "bad vertex count"))?;
                expected_m = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(lineno, "bad edge count"))?;
                n = Some(nv);
            }
            "e" => {
                if !dimacs {
                    return Err(syntax(lineno, "`e` line outside DIMACS file"));
                }
                let u: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(lineno, "bad endpoint"))?;
                let v: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(lineno, "bad endpoint"))?;
                if u == 0 || v == 0 {
                    return Err(syntax(lineno, "vertex ids are 1-based"));
                }
                pairs.push((u - 1, v - 1));
            }
            _ => {
                if n.is_none() {
                    return Err(syntax(lineno, "edge line before problem line"));
                }
                if dimacs {
                    return Err(syntax(lineno, format!("unexpected line `{line}`")));
                }
                let u: usize = first
                    .parse()
                    .map_err(|_| syntax(lineno, "bad endpoint"))?;
                let v: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| syntax(lineno, "bad endpoint"))?;
                if u == 0 || v == 0 {
                    return Err(syntax(lineno, "vertex ids are 1-based"));
                }
                pairs.push((u - 1, v - 1));
            }
        }
    }
    let n = n.ok_or_else(|| syntax(0, "missing problem line"))?;
    if pairs.len() != expected_m {
        return Err(syntax(
            0,
            format!("expected {expected_m} edges, found {}", pairs.len()),
        ));
    }
    Ok(Graph::new(n, &pairs)?)
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn write_pace_gr(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p tw {} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Writes a coloring as `<edge-index> <color>` lines. With `endpoints`,
/// lines carry the edge's endpoints too: `<edge-index> <u> <v> <color>`.
pub fn write_coloring(c: &Coloring, g: &Graph, endpoints: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c injective edge coloring, k = {}", c.color_budget());
    for e in 0..c.len() {
        if let Some(col) = c.get(e) {
            if endpoints {
                let (u, v) = g.endpoints(e);
                let _ = writeln!(out, "{e} {u} {v} {col}");
            } else {
                let _ = writeln!(out, "{e} {col}");
            }
        }
    }
    out
}

/// Reads the coloring format back. Accepts both the 2-field and 4-field
/// line variants; endpoint fields, when present, are ignored.
pub fn read_coloring(text: &str, edge_count: usize, k: u32) -> Result<Coloring, FormatError> {
    let mut c = Coloring::new(edge_count, k);
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 4 {
            return Err(syntax(lineno, "expected `<edge> <color>` or `<edge> <u> <v> <color>`"));
        }
        let e: usize = fields[0]
            .parse()
            .map_err(|_| syntax(lineno, "bad edge index"))?;
        let col: u32 = fields[fields.len() - 1]
            .parse()
            .map_err(|_| syntax(lineno, "bad color"))?;
        if e >= edge_count {
            return Err(syntax(lineno, format!("edge index {e} out of range")));
        }
        if col == 0 || col > k {
            return Err(syntax(lineno, format!("color {col} outside 1..={k}")));
        }
        c.set(e, col);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn dimacs_round_trip() {
        let g = graph::petersen();
        let text = write_dimacs(&g);
        let back = read_graph(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn pace_round_trip() {
        let g = graph::prism();
        let text = write_pace_gr(&g);
        assert!(text.starts_with("p tw 6 9"));
        let back = read_graph(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_graph("e 1 2\n").is_err());
        assert!(read_graph("p edge 3 1\ne 0 2\n").is_err());
        assert!(read_graph("p edge 3 2\ne 1 2\n").is_err()); // count mismatch
        assert!(read_graph("p tw 3 1\n1 1\n").is_err()); // loop via GraphError
    }

    #[test]
    fn coloring_round_trip() {
        let g = graph::cycle(4);
        let mut c = Coloring::new(4, 2);
        for e in 0..4 {
            c.set(e, 1 + (e as u32) % 2);
        }
        for endpoints in [false, true] {
            let text = write_coloring(&c, &g, endpoints);
            let back = read_coloring(&text, 4, 2).unwrap();
            assert_eq!(back, c);
        }
    }
}
