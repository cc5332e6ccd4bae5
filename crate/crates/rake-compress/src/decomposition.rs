use std::fmt::Write as _;

use graph_core::Forest;

use crate::error::DecompError;
use crate::tags::Tag;

/// A split of the nodes into layers `V_1, …, V_L`.
///
/// `G_i` denotes the subgraph induced by layers `i` and higher, and `P_i` the
/// components of `V_i` with more than one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    l: usize,
    layer_of: Vec<usize>,
    layer_count: usize,
    tags: Vec<Tag>,
    promoted: Vec<bool>,
    paths: Vec<Vec<Vec<usize>>>,
}

impl Decomposition {
    /// Layers are tag iterations, plus one for promoted nodes.
    pub fn new(f: &Forest, l: usize, tags: Vec<Tag>, promoted: Vec<bool>) -> Self {
        let layer_of: Vec<usize> = tags
            .iter()
            .zip(&promoted)
            .map(|(t, &p)| t.iteration + usize::from(p))
            .collect();
        let layer_count = layer_of.iter().copied().max().unwrap_or(0);
        let paths = layer_paths(f, &layer_of, layer_count);
        Decomposition {
            l,
            layer_of,
            layer_count,
            tags,
            promoted,
            paths,
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn layer(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn layers(&self) -> &[usize] {
        &self.layer_of
    }

    /// The number of layers `L`.
    pub fn layer_count(&self) -> usize {
        self.layer_count
    }

    pub fn tag(&self, v: usize) -> Tag {
        self.tags[v]
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn is_promoted(&self, v: usize) -> bool {
        self.promoted[v]
    }

    /// Nodes of layer `i` (1-based) in ID order.
    pub fn layer_nodes(&self, i: usize) -> Vec<usize> {
        (0..self.layer_of.len()).filter(|&v| self.layer_of[v] == i).collect()
    }

    /// The paths of `P_i`, each listed from its smaller-ID end.
    pub fn paths(&self, i: usize) -> &[Vec<usize>] {
        &self.paths[i - 1]
    }

    /// Checks the structural properties of the decomposition:
    /// - every node of `V_i` has at most two neighbors in `G_i`;
    /// - every path of `P_i` has between `l` and `2l` nodes, each with exactly
    ///   two neighbors in `G_i`;
    /// - the top layer is an independent set.
    pub fn validate(&self, f: &Forest) -> Result<(), DecompError> {
        validate_layers(f, &self.layer_of, self.l)
    }

    /// DECOMP v1 text: a header, then one `layer <id> <i>` line per node.
    pub fn to_text(&self, f: &Forest) -> String {
        let mut out = String::from("DECOMP v1\n");
        for (v, &i) in self.layer_of.iter().enumerate() {
            writeln!(out, "layer {} {}", f.id(v), i).expect("writing to a string");
        }
        out
    }
}

/// Reads the per-node layers from DECOMP v1 text.
pub fn parse_layers(text: &str, f: &Forest) -> Result<Vec<usize>, DecompError> {
    let err = |line: usize, reason: &str| DecompError::Parse {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, s)| (i + 1, s.trim()))
        .filter(|(_, s)| !s.is_empty() && !s.starts_with('#'));
    match lines.next() {
        Some((_, "DECOMP v1")) => {}
        Some((line, _)) => return Err(err(line, "expected header `DECOMP v1`")),
        None => return Err(err(0, "empty input")),
    }
    let mut layers = vec![None; f.node_count()];
    for (line, s) in lines {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [key, id, layer] = parts[..] else {
            return Err(err(line, "expected `layer <id> <i>`"));
        };
        if key != "layer" {
            return Err(err(line, "expected `layer <id> <i>`"));
        }
        let id = id.parse().map_err(|_| err(line, "bad node id"))?;
        let v = f.index_of(id).ok_or_else(|| err(line, "unknown node id"))?;
        let layer: usize = layer.parse().map_err(|_| err(line, "bad layer"))?;
        if layer == 0 {
            return Err(err(line, "layers start at 1"));
        }
        if layers[v].replace(layer).is_some() {
            return Err(err(line, "node listed twice"));
        }
    }
    layers
        .into_iter()
        .enumerate()
        .map(|(v, layer)| layer.ok_or(DecompError::MissingLayer(f.id(v))))
        .collect()
}

/// Components of each layer with more than one node, each as an ordered path
/// (or, if a layer is malformed, in BFS order from its smallest node).
fn layer_paths(f: &Forest, layer_of: &[usize], layer_count: usize) -> Vec<Vec<Vec<usize>>> {
    let n = f.node_count();
    let mut paths = vec![Vec::new(); layer_count];
    let mut seen = vec![false; n];
    let same = |v: usize| {
        f.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| layer_of[u] == layer_of[v])
    };
    for v in 0..n {
        if seen[v] || same(v).next().is_none() {
            continue;
        }
        let mut comp = vec![v];
        seen[v] = true;
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for u in same(x) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        let ends: Vec<usize> = comp.iter().copied().filter(|&x| same(x).count() == 1).collect();
        let is_path = ends.len() == 2 && comp.iter().all(|&x| same(x).count() <= 2);
        if is_path {
            let mut order = vec![ends[0].min(ends[1])];
            let mut prev = usize::MAX;
            while let Some(next) = same(*order.last().expect("nonempty")).find(|&u| u != prev) {
                prev = *order.last().expect("nonempty");
                order.push(next);
            }
            comp = order;
        }
        paths[layer_of[v] - 1].push(comp);
    }
    paths
}

/// Validates a bare layer assignment; see [`Decomposition::validate`].
pub fn validate_layers(f: &Forest, layer_of: &[usize], l: usize) -> Result<(), DecompError> {
    let n = f.node_count();
    if layer_of.len() != n {
        return Err(DecompError::Length {
            expected: n,
            found: layer_of.len(),
        });
    }
    if let Some(v) = (0..n).find(|&v| layer_of[v] == 0) {
        return Err(DecompError::MissingLayer(f.id(v)));
    }
    let up_degree = |v: usize| f.neighbors(v).iter().filter(|&&u| layer_of[u] >= layer_of[v]).count();
    for (v, &layer) in layer_of.iter().enumerate() {
        let degree = up_degree(v);
        if degree > 2 {
            return Err(DecompError::Degree {
                node: f.id(v),
                layer,
                degree,
            });
        }
    }
    let layer_count = layer_of.iter().copied().max().unwrap_or(0);
    for (i, comps) in layer_paths(f, layer_of, layer_count).iter().enumerate() {
        for comp in comps {
            if !(l..=2 * l).contains(&comp.len()) {
                return Err(DecompError::PathLength {
                    layer: i + 1,
                    length: comp.len(),
                    first: f.id(comp[0]),
                });
            }
            if let Some(&v) = comp.iter().find(|&&v| up_degree(v) != 2) {
                return Err(DecompError::PathDegree {
                    node: f.id(v),
                    layer: i + 1,
                });
            }
            if i + 1 == layer_count {
                return Err(DecompError::TopNotIsolated(f.id(comp[0])));
            }
        }
    }
    Ok(())
}
