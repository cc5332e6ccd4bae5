use std::fmt;

use graph_core::{Forest, HalfEdgeLabeling, NodeId};

use crate::{Label, LclError, NodeEdgeLcl};

/// Which of the three node-edge-checkable conditions failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// The output multiset around a node is not an allowed configuration.
    NodeConfiguration,
    /// The output pair on an edge is not an allowed configuration.
    EdgeConfiguration,
    /// An output is not allowed for the half-edge's input label.
    InputMap,
}

impl Condition {
    pub fn number(self) -> u8 {
        match self {
            Condition::NodeConfiguration => 1,
            Condition::EdgeConfiguration => 2,
            Condition::InputMap => 3,
        }
    }
}

/// Where a violation occurred, by node IDs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Node(NodeId),
    Edge(NodeId, NodeId),
    /// Half-edge at the first node of the edge to the second.
    HalfEdge(NodeId, NodeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub site: Site,
    pub condition: Condition,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.condition.number();
        match self.site {
            Site::Node(v) => write!(f, "node {v} violates condition {c}"),
            Site::Edge(u, v) => write!(f, "edge {u} {v} violates condition {c}"),
            Site::HalfEdge(v, u) => write!(f, "half-edge {v} {u} violates condition {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Violations(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn total(lab: &HalfEdgeLabeling<Label>, f: &Forest, alphabet: usize, what: &str) -> Result<(), LclError> {
    if lab.len() != f.half_edge_count() || !lab.is_total() {
        return Err(LclError::PartialLabeling);
    }
    if let Some((h, &l)) = lab.iter().find(|(_, &l)| l as usize >= alphabet) {
        let he = f.half_edge(h);
        return Err(LclError::AlphabetMismatch(format!(
            "{what} label {l} at half-edge {} {}",
            f.id(he.node),
            f.id(he.neighbor())
        )));
    }
    Ok(())
}

/// Checks every node, edge and half-edge; violations are listed in that order,
/// each group by ascending ID. Degree-0 nodes are vacuously valid.
pub fn check_solution(
    f: &Forest,
    lcl: &NodeEdgeLcl,
    g_in: &HalfEdgeLabeling<Label>,
    g_out: &HalfEdgeLabeling<Label>,
) -> Result<Verdict, LclError> {
    total(g_in, f, lcl.sigma_in().len(), "input")?;
    total(g_out, f, lcl.out_count(), "output")?;
    let out = |h: usize| *g_out.get(h).expect("checked total");
    let mut violations = Vec::new();

    let mut around = Vec::with_capacity(f.max_degree());
    for v in 0..f.node_count() {
        around.clear();
        around.extend(f.neighbors(v).iter().map(|&u| out(f.half_edge_index(v, u).unwrap())));
        if !lcl.node_allows(&around) {
            violations.push(Violation {
                site: Site::Node(f.id(v)),
                condition: Condition::NodeConfiguration,
            });
        }
    }
    for e in f.edges() {
        let a = out(f.half_edge_index(e.lo, e.hi).unwrap());
        let b = out(f.half_edge_index(e.hi, e.lo).unwrap());
        if !lcl.edge_allows(a, b) {
            violations.push(Violation {
                site: Site::Edge(f.id(e.lo), f.id(e.hi)),
                condition: Condition::EdgeConfiguration,
            });
        }
    }
    for (h, &input) in g_in.iter() {
        if !lcl.input_allows(input, out(h)) {
            let he = f.half_edge(h);
            violations.push(Violation {
                site: Site::HalfEdge(f.id(he.node), f.id(he.neighbor())),
                condition: Condition::InputMap,
            });
        }
    }
    Ok(if violations.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Violations(violations)
    })
}

/// Translates symbolic input labels into alphabet indices.
pub fn encode_inputs(
    lcl: &NodeEdgeLcl,
    labels: &HalfEdgeLabeling<String>,
) -> Result<HalfEdgeLabeling<Label>, LclError> {
    if !labels.is_total() {
        return Err(LclError::PartialLabeling);
    }
    let mut out = Vec::with_capacity(labels.len());
    for (_, symbol) in labels.iter() {
        out.push(
            lcl.in_index(symbol)
                .ok_or_else(|| LclError::AlphabetMismatch(format!("input symbol `{symbol}`")))?,
        );
    }
    Ok(HalfEdgeLabeling::from_vec(out))
}

/// Every half-edge carries the first input symbol.
pub fn uniform_inputs(f: &Forest) -> HalfEdgeLabeling<Label> {
    HalfEdgeLabeling::from_vec(vec![0; f.half_edge_count()])
}
