use crate::{Label, LclError, NodeEdgeLcl};

/// The input alphabet of every builtin problem: a single "no input" symbol.
pub const NO_INPUT: &str = "⊥";

pub const BUILTIN_NAMES: [&str; 4] = ["three-coloring", "two-coloring", "unsatisfiable-edge", "free"];

/// Builds one of the builtin problems for trees of maximum degree `max_degree`.
///
/// * `three-coloring`, `two-coloring`: a node repeats its color on all its
///   half-edges and adjacent colors differ.
/// * `unsatisfiable-edge`: outputs {0, 1}, any node configuration, no allowed edge.
/// * `free`: outputs {0, 1}, everything allowed.
pub fn builtin(name: &str, max_degree: usize) -> Result<NodeEdgeLcl, LclError> {
    match name {
        "three-coloring" => coloring(3, max_degree),
        "two-coloring" => coloring(2, max_degree),
        "unsatisfiable-edge" => unconstrained(max_degree, Vec::new()),
        "free" => unconstrained(max_degree, vec![(0, 0), (0, 1), (1, 1)]),
        other => Err(LclError::UnknownName(other.to_string())),
    }
}

fn symbols(k: usize) -> Vec<String> {
    (0..k).map(|c| c.to_string()).collect()
}

fn coloring(colors: usize, max_degree: usize) -> Result<NodeEdgeLcl, LclError> {
    let node = (1..=max_degree)
        .map(|d| (0..colors).map(|c| vec![c as Label; d]).collect())
        .collect();
    let mut edge = Vec::new();
    for a in 0..colors {
        for b in a + 1..colors {
            edge.push((a as Label, b as Label));
        }
    }
    NodeEdgeLcl::new(
        vec![NO_INPUT.to_string()],
        symbols(colors),
        node,
        edge,
        vec![(0..colors as Label).collect()],
    )
}

fn unconstrained(max_degree: usize, edge: Vec<(Label, Label)>) -> Result<NodeEdgeLcl, LclError> {
    let node = (1..=max_degree)
        .map(|d| (0..=d).map(|ones| {
            let mut m = vec![0 as Label; d - ones];
            m.extend(std::iter::repeat_n(1, ones));
            m
        }).collect())
        .collect();
    NodeEdgeLcl::new(vec![NO_INPUT.to_string()], symbols(2), node, edge, vec![vec![0, 1]])
}
