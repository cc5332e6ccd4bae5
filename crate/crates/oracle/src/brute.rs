use std::collections::BTreeMap;

use graph_core::{Forest, HalfEdgeLabeling, NodeId};
use lcl_core::{check_solution, Label, LclError, NodeEdgeLcl};

use crate::{OracleError, PairSet};

/// Default cap on the number of single half-edge assignments tried.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Outcome of a reference run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub solvable: bool,
    pub witness: Option<HalfEdgeLabeling<Label>>,
    /// Completable endpoint label pairs keyed by (lower ID, upper ID).
    pub pair_sets: Option<BTreeMap<(NodeId, NodeId), PairSet>>,
}

/// [`brute_solve_with_budget`] with [`DEFAULT_BUDGET`].
pub fn brute_solve(
    f: &Forest,
    lcl: &NodeEdgeLcl,
    g_in: &HalfEdgeLabeling<Label>,
) -> Result<OracleVerdict, OracleError> {
    brute_solve_with_budget(f, lcl, g_in, DEFAULT_BUDGET)
}

/// Finds the lexicographically smallest valid output labeling, with
/// half-edges ordered by (node ID, neighbor ID).
///
/// The search assigns half-edges in that order and abandons a prefix as soon
/// as a completed node, a completed edge or an input constraint fails, which
/// visits valid labelings in the same order as full enumeration would.
pub fn brute_solve_with_budget(
    f: &Forest,
    lcl: &NodeEdgeLcl,
    g_in: &HalfEdgeLabeling<Label>,
    budget: u64,
) -> Result<OracleVerdict, OracleError> {
    let mut inputs = Vec::with_capacity(f.half_edge_count());
    for h in 0..f.half_edge_count() {
        match g_in.get(h) {
            Some(&l) if (l as usize) < lcl.sigma_in().len() => inputs.push(l),
            Some(l) => return Err(LclError::AlphabetMismatch(format!("input label {l}")).into()),
            None => return Err(LclError::PartialLabeling.into()),
        }
    }
    let mut search = Search {
        f,
        lcl,
        inputs,
        labels: Vec::with_capacity(f.half_edge_count()),
        tried: 0,
        budget,
    };
    let found = search.extend()?;
    let witness = found.then(|| HalfEdgeLabeling::from_vec(search.labels));
    if let Some(w) = &witness {
        assert!(check_solution(f, lcl, g_in, w)?.is_valid(), "search accepted an invalid labeling");
    }
    Ok(OracleVerdict {
        solvable: found,
        witness,
        pair_sets: None,
    })
}

struct Search<'a> {
    f: &'a Forest,
    lcl: &'a NodeEdgeLcl,
    inputs: Vec<Label>,
    labels: Vec<Label>,
    tried: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self) -> Result<bool, OracleError> {
        let h = self.labels.len();
        if h == self.inputs.len() {
            return Ok(true);
        }
        let he = self.f.half_edge(h);
        let (v, u) = (he.node, he.neighbor());
        for label in 0..self.lcl.out_count() as Label {
            self.tried += 1;
            if self.tried > self.budget {
                return Err(OracleError::BudgetExceeded { budget: self.budget });
            }
            if !self.lcl.input_allows(self.inputs[h], label) {
                continue;
            }
            if u < v {
                let other = self.labels[self.f.half_edge_index(u, v).unwrap()];
                if !self.lcl.edge_allows(other, label) {
                    continue;
                }
            }
            self.labels.push(label);
            let node_done = self.f.neighbors(v).last() == Some(&u);
            let ok = !node_done || {
                let first = self.f.half_edge_index(v, self.f.neighbors(v)[0]).unwrap();
                self.lcl.node_allows(&self.labels[first..=h])
            };
            if ok && self.extend()? {
                return Ok(true);
            }
            self.labels.pop();
        }
        Ok(false)
    }
}
