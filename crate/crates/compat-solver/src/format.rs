//! OUT v1 solver output and the solver trace CSV.
//!
//! ```text
//! OUT v1
//! outlabel 1 2 0
//! outlabel 2 1 1
//! ```
//!
//! `outlabel v u s` puts output symbol `s` on the half-edge at `v` of the edge
//! `{u, v}`. An instance without a solution is the single line `no solution`.

use std::fmt::Write as _;

use graph_core::{Forest, HalfEdgeLabeling, NodeId};
use lcl_core::{Label, NodeEdgeLcl};
use thiserror::Error;

use crate::solve::{Phase, SolveOutput, TraceRow};

const HEADER: &str = "OUT v1";
const NO_SOLUTION: &str = "no solution";

/// Header of [`trace_csv`].
pub const SOLVER_TRACE_HEADER: &str = "iteration,phase,phi_prime,phi_dblprime,phi,active_links,total_links";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OutputError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("half-edge at {node} toward {neighbor} has no label")]
    Missing { node: NodeId, neighbor: NodeId },
}

/// Writes OUT v1, listing half-edges in forest order.
pub fn write_output(f: &Forest, lcl: &NodeEdgeLcl, output: &SolveOutput) -> String {
    let SolveOutput::Solved(labels) = output else {
        return format!("{NO_SOLUTION}\n");
    };
    let mut out = format!("{HEADER}\n");
    for (h, &label) in labels.iter() {
        let he = f.half_edge(h);
        let _ = writeln!(
            out,
            "outlabel {} {} {}",
            f.id(he.node),
            f.id(he.neighbor()),
            lcl.sigma_out()[label as usize]
        );
    }
    out
}

/// Reads OUT v1; `None` stands for "no solution".
pub fn parse_output(text: &str, f: &Forest, lcl: &NodeEdgeLcl) -> Result<Option<HalfEdgeLabeling<Label>>, OutputError> {
    let err = |line: usize, reason: String| OutputError::Parse { line, reason };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, NO_SOLUTION)) => return Ok(None),
        Some((_, HEADER)) => {}
        Some((line, other)) => return Err(err(line, format!("expected `{HEADER}`, found `{other}`"))),
        None => return Err(err(1, "empty input".into())),
    }
    let mut labels = HalfEdgeLabeling::empty(f);
    for (line, text) in lines {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let [keyword, v, u, symbol] = tokens[..] else {
            return Err(err(line, "expected `outlabel <v> <u> <symbol>`".into()));
        };
        if keyword != "outlabel" {
            return Err(err(line, format!("unknown keyword `{keyword}`")));
        }
        let node = |t: &str| {
            t.parse::<NodeId>()
                .ok()
                .and_then(|id| f.index_of(id))
                .ok_or_else(|| err(line, format!("unknown node `{t}`")))
        };
        let (v, u) = (node(v)?, node(u)?);
        let label = lcl
            .out_index(symbol)
            .ok_or_else(|| err(line, format!("unknown output symbol `{symbol}`")))?;
        if f.half_edge_index(v, u).is_none() {
            return Err(err(line, format!("no edge between {} and {}", f.id(v), f.id(u))));
        }
        if labels.set_at(f, v, u, label).is_some() {
            return Err(err(line, "half-edge labeled twice".into()));
        }
    }
    if let Some(h) = (0..labels.len()).find(|&h| labels.get(h).is_none()) {
        let he = f.half_edge(h);
        return Err(OutputError::Missing {
            node: f.id(he.node),
            neighbor: f.id(he.neighbor()),
        });
    }
    Ok(Some(labels))
}

/// The solver trace as CSV. Potential columns are empty in the second phase.
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = format!("{SOLVER_TRACE_HEADER}\n");
    for r in rows {
        let (phase, potential) = match (r.phase, r.potential) {
            (Phase::First, Some((leaves, blocks))) => ("I", format!("{leaves},{blocks},{}", leaves as f64 + blocks)),
            (Phase::First, None) => ("I", ",,".to_string()),
            (Phase::Second, _) => ("II", ",,".to_string()),
        };
        let _ = writeln!(
            out,
            "{},{phase},{potential},{},{}",
            r.iteration, r.active_links, r.total_links
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcl_core::builtin;

    fn edge() -> (Forest, NodeEdgeLcl) {
        (Forest::with_sequential_ids(2, &[(0, 1)], 1).unwrap(), builtin("two-coloring", 3).unwrap())
    }

    #[test]
    fn output_roundtrip() {
        let (f, lcl) = edge();
        let labels = HalfEdgeLabeling::from_vec(vec![0, 1]);
        let text = write_output(&f, &lcl, &SolveOutput::Solved(labels.clone()));
        let he = f.half_edge(0);
        let first = format!("outlabel {} {} {}", f.id(he.node), f.id(he.neighbor()), lcl.sigma_out()[0]);
        assert_eq!(text.lines().nth(1), Some(first.as_str()));
        assert_eq!(parse_output(&text, &f, &lcl), Ok(Some(labels)));
        assert_eq!(write_output(&f, &lcl, &SolveOutput::NoSolution), "no solution\n");
        assert_eq!(parse_output("no solution\n", &f, &lcl), Ok(None));
    }

    #[test]
    fn malformed_output_is_rejected() {
        let (f, lcl) = edge();
        let a = &lcl.sigma_out()[0];
        let (one, two) = (f.id(0), f.id(1));
        assert!(matches!(parse_output("OUT v2\n", &f, &lcl), Err(OutputError::Parse { line: 1, .. })));
        let partial = format!("OUT v1\noutlabel {one} {two} {a}\n");
        assert_eq!(
            parse_output(&partial, &f, &lcl),
            Err(OutputError::Missing { node: two, neighbor: one })
        );
        let twice = format!("OUT v1\noutlabel {one} {two} {a}\noutlabel {one} {two} {a}\n");
        assert!(matches!(parse_output(&twice, &f, &lcl), Err(OutputError::Parse { line: 3, .. })));
        let unknown = format!("OUT v1\noutlabel {one} {two} nope\n");
        assert!(matches!(parse_output(&unknown, &f, &lcl), Err(OutputError::Parse { line: 2, .. })));
    }

    #[test]
    fn trace_rows() {
        let rows = [
            TraceRow {
                component: 0,
                iteration: 0,
                phase: Phase::First,
                potential: Some((2, 1.5)),
                active_links: 3,
                total_links: 3,
            },
            TraceRow {
                component: 0,
                iteration: 1,
                phase: Phase::Second,
                potential: None,
                active_links: 1,
                total_links: 4,
            },
        ];
        assert_eq!(trace_csv(&rows), format!("{SOLVER_TRACE_HEADER}\n0,I,2,1.5,3.5,3,3\n1,II,,,,1,4\n"));
    }
}
