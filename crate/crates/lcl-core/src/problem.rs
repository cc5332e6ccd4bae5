use std::collections::BTreeSet;

use crate::LclError;

/// Index into an alphabet. Output labels are totally ordered by this index.
pub type Label = u16;

/// A node-edge-checkable LCL: allowed output multisets per degree, allowed
/// output pairs per edge, and the allowed outputs for each input label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeEdgeLcl {
    sigma_in: Vec<String>,
    sigma_out: Vec<String>,
    node: Vec<BTreeSet<Vec<Label>>>,
    edge: BTreeSet<(Label, Label)>,
    input_map: Vec<BTreeSet<Label>>,
}

impl NodeEdgeLcl {
    /// Validates and builds a problem. Multisets are given as label vectors in
    /// any order; `node[d - 1]` lists the configurations for degree `d`.
    pub fn new(
        sigma_in: Vec<String>,
        sigma_out: Vec<String>,
        node: Vec<Vec<Vec<Label>>>,
        edge: Vec<(Label, Label)>,
        input_map: Vec<Vec<Label>>,
    ) -> Result<Self, LclError> {
        if sigma_in.is_empty() || sigma_out.is_empty() {
            return Err(LclError::EmptyAlphabet);
        }
        for alphabet in [&sigma_in, &sigma_out] {
            let distinct: BTreeSet<_> = alphabet.iter().collect();
            if distinct.len() != alphabet.len() {
                return Err(LclError::DuplicateSymbol);
            }
        }
        if input_map.len() != sigma_in.len() {
            return Err(LclError::PartialInputMap);
        }
        let k = sigma_out.len();
        let check = |l: Label| {
            if (l as usize) < k {
                Ok(l)
            } else {
                Err(LclError::AlphabetMismatch(format!("output label index {l}")))
            }
        };
        let mut node_sets = Vec::with_capacity(node.len());
        for (i, configs) in node.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for mut m in configs {
                if m.len() != i + 1 {
                    return Err(LclError::CardinalityViolation {
                        degree: i + 1,
                        found: m.len(),
                    });
                }
                for &l in &m {
                    check(l)?;
                }
                m.sort_unstable();
                set.insert(m);
            }
            node_sets.push(set);
        }
        let mut edge_set = BTreeSet::new();
        for (a, b) in edge {
            check(a)?;
            check(b)?;
            edge_set.insert((a.min(b), a.max(b)));
        }
        let mut map = Vec::with_capacity(input_map.len());
        for outs in input_map {
            let mut set = BTreeSet::new();
            for l in outs {
                set.insert(check(l)?);
            }
            map.push(set);
        }
        Ok(NodeEdgeLcl {
            sigma_in,
            sigma_out,
            node: node_sets,
            edge: edge_set,
            input_map: map,
        })
    }

    pub fn sigma_in(&self) -> &[String] {
        &self.sigma_in
    }

    pub fn sigma_out(&self) -> &[String] {
        &self.sigma_out
    }

    pub fn out_count(&self) -> usize {
        self.sigma_out.len()
    }

    /// Largest degree with a node constraint.
    pub fn max_degree(&self) -> usize {
        self.node.len()
    }

    pub fn in_index(&self, symbol: &str) -> Option<Label> {
        self.sigma_in.iter().position(|s| s == symbol).map(|i| i as Label)
    }

    pub fn out_index(&self, symbol: &str) -> Option<Label> {
        self.sigma_out.iter().position(|s| s == symbol).map(|i| i as Label)
    }

    /// Allowed multisets for degree `d` (sorted label vectors); empty above Δ.
    pub fn node_configs(&self, degree: usize) -> Option<&BTreeSet<Vec<Label>>> {
        degree.checked_sub(1).and_then(|i| self.node.get(i))
    }

    /// Whether the multiset given by `labels` (any order) is allowed at a node.
    /// Degree-0 nodes are always accepted.
    pub fn node_allows(&self, labels: &[Label]) -> bool {
        if labels.is_empty() {
            return true;
        }
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        self.node_configs(labels.len())
            .is_some_and(|set| set.contains(&sorted))
    }

    pub fn edge_configs(&self) -> &BTreeSet<(Label, Label)> {
        &self.edge
    }

    pub fn edge_allows(&self, a: Label, b: Label) -> bool {
        self.edge.contains(&(a.min(b), a.max(b)))
    }

    pub fn allowed_outputs(&self, input: Label) -> &BTreeSet<Label> {
        &self.input_map[input as usize]
    }

    pub fn input_allows(&self, input: Label, output: Label) -> bool {
        self.input_map[input as usize].contains(&output)
    }
}
