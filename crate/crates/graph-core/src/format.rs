//! TREE v1: a line-based text format.
//!
//! ```text
//! TREE v1
//! # comment
//! n 3
//! edge 1 2
//! edge 2 3
//! inlabel 1 2 A
//! ```
//!
//! Nodes carry IDs `1..=n`. `inlabel v u s` puts symbol `s` on the half-edge
//! at `v` of the edge `{u, v}`.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::{Forest, GraphError, HalfEdgeLabeling, NodeId};

const HEADER: &str = "TREE v1";

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(token: Option<&str>, n: usize, line: usize) -> Result<NodeId, GraphError> {
    let token = token.ok_or_else(|| parse_err(line, "missing node ID"))?;
    let id: NodeId = token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid node ID `{token}`")))?;
    if id == 0 || id > n as NodeId {
        return Err(parse_err(line, format!("node ID {id} outside 1..={n}")));
    }
    Ok(id)
}

/// Parses TREE v1 text into a forest and, if any `inlabel` lines occur, an input labeling.
pub fn parse_tree(text: &str) -> Result<(Forest, Option<HalfEdgeLabeling<String>>), GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((line, other)) => return Err(parse_err(line, format!("expected `{HEADER}`, found `{other}`"))),
        None => return Err(parse_err(1, format!("missing `{HEADER}` header"))),
    }

    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut edge_lines = HashSet::new();
    let mut inlabels: Vec<(usize, NodeId, NodeId, String)> = Vec::new();

    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("n") => {
                if n.is_some() {
                    return Err(parse_err(line, "node count given twice"));
                }
                let count = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line, "expected `n <count>`"))?;
                n = Some(count);
            }
            Some("edge") => {
                let count = n.ok_or_else(|| parse_err(line, "`edge` before `n`"))?;
                let u = parse_id(tokens.next(), count, line)?;
                let v = parse_id(tokens.next(), count, line)?;
                if u == v {
                    return Err(parse_err(line, format!("self-loop at node {u}")));
                }
                if !edge_lines.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(line, format!("duplicate edge {{{u}, {v}}}")));
                }
                edges.push(((u - 1) as usize, (v - 1) as usize));
            }
            Some("inlabel") => {
                let count = n.ok_or_else(|| parse_err(line, "`inlabel` before `n`"))?;
                let v = parse_id(tokens.next(), count, line)?;
                let u = parse_id(tokens.next(), count, line)?;
                let symbol = tokens
                    .next()
                    .ok_or_else(|| parse_err(line, "missing label symbol"))?;
                inlabels.push((line, v, u, symbol.to_string()));
            }
            Some(other) => return Err(parse_err(line, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are filtered"),
        }
        if tokens.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }

    let n = n.ok_or_else(|| parse_err(1, "missing `n <count>`"))?;
    let mut degree = vec![0usize; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let forest = Forest::with_sequential_ids(n, &edges, max_degree)?;

    if inlabels.is_empty() {
        return Ok((forest, None));
    }
    let mut labeling = HalfEdgeLabeling::empty(&forest);
    for (line, v, u, symbol) in inlabels {
        let h = forest
            .half_edge_index((v - 1) as usize, (u - 1) as usize)
            .ok_or_else(|| parse_err(line, format!("inlabel on non-edge {{{v}, {u}}}")))?;
        if labeling.set(h, symbol).is_some() {
            return Err(parse_err(line, format!("half-edge ({v}, {{{v}, {u}}}) labeled twice")));
        }
    }
    Ok((forest, Some(labeling)))
}

/// Writes TREE v1 text with edges in ascending `(min, max)` ID order.
pub fn serialize_tree(f: &Forest, labels: Option<&HalfEdgeLabeling<String>>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "n {}", f.node_count());
    for e in f.edges() {
        let _ = writeln!(out, "edge {} {}", f.id(e.lo), f.id(e.hi));
    }
    if let Some(labels) = labels {
        for (h, symbol) in labels.iter() {
            let he = f.half_edge(h);
            let _ = writeln!(out, "inlabel {} {} {}", f.id(he.node), f.id(he.neighbor()), symbol);
        }
    }
    out
}
