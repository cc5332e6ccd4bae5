use std::fmt::Write as _;

use graph_core::Forest;
use thiserror::Error;

/// A rooting of every component: each non-root node points to its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    parent: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("expected {expected} parent entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error("node {child} points to non-neighbor {parent}")]
    NotAnEdge { child: u64, parent: u64 },
    #[error("following parents from node {0} never reaches a root")]
    Cycle(u64),
    #[error("component of node {node} has {roots} roots")]
    RootCount { node: u64, roots: usize },
    #[error("ORIENT v1 line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Orientation {
    pub fn from_parents(parent: Vec<Option<usize>>) -> Self {
        Orientation { parent }
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.parent.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    /// Checks that parents are neighbors, that following parents always ends
    /// at a root, and that every component has exactly one root.
    pub fn validate(&self, f: &Forest) -> Result<(), OrientationError> {
        let n = f.node_count();
        if self.parent.len() != n {
            return Err(OrientationError::Length {
                expected: n,
                found: self.parent.len(),
            });
        }
        for v in 0..n {
            if let Some(p) = self.parent[v] {
                if !f.neighbors(v).contains(&p) {
                    return Err(OrientationError::NotAnEdge {
                        child: f.id(v),
                        parent: f.id(p),
                    });
                }
            }
        }
        // Resolve each node's root, detecting cycles by path length.
        let mut root_of: Vec<Option<usize>> = vec![None; n];
        for v in 0..n {
            let mut path = vec![v];
            let mut cur = v;
            let root = loop {
                if let Some(r) = root_of[cur] {
                    break r;
                }
                match self.parent[cur] {
                    None => break cur,
                    Some(p) => {
                        if path.len() > n {
                            return Err(OrientationError::Cycle(f.id(v)));
                        }
                        path.push(p);
                        cur = p;
                    }
                }
            };
            for u in path {
                root_of[u] = Some(root);
            }
        }
        for comp in f.components() {
            let mut roots: Vec<usize> = comp.iter().map(|&v| root_of[v].expect("resolved")).collect();
            roots.sort_unstable();
            roots.dedup();
            if roots.len() != 1 || comp.iter().filter(|&&v| self.parent[v].is_none()).count() != 1 {
                return Err(OrientationError::RootCount {
                    node: f.id(comp[0]),
                    roots: comp.iter().filter(|&&v| self.parent[v].is_none()).count(),
                });
            }
        }
        Ok(())
    }

    /// ORIENT v1: a header, one `root <v>` line per component, then one
    /// `parent <child> <parent>` line per non-root node, by ascending ID.
    pub fn to_text(&self, f: &Forest) -> String {
        let mut out = String::from("ORIENT v1\n");
        for v in self.roots() {
            let _ = writeln!(out, "root {}", f.id(v));
        }
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                let _ = writeln!(out, "parent {} {}", f.id(v), f.id(*p));
            }
        }
        out
    }

    /// Reads ORIENT v1 text against the forest it describes.
    pub fn parse(text: &str, f: &Forest) -> Result<Self, OrientationError> {
        let err = |line: usize, reason: &str| OrientationError::Parse {
            line,
            reason: reason.to_string(),
        };
        let mut parent = vec![None; f.node_count()];
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header {
                if line != "ORIENT v1" {
                    return Err(err(i + 1, "missing `ORIENT v1` header"));
                }
                header = true;
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let node = |w: &str| {
                w.parse::<u64>()
                    .ok()
                    .and_then(|id| f.index_of(id))
                    .ok_or_else(|| err(i + 1, &format!("unknown node `{w}`")))
            };
            match words.as_slice() {
                ["root", v] => {
                    node(v)?;
                }
                ["parent", c, p] => parent[node(c)?] = Some(node(p)?),
                _ => return Err(err(i + 1, "expected `root <v>` or `parent <child> <parent>`")),
            }
        }
        if !header {
            return Err(err(1, "missing `ORIENT v1` header"));
        }
        Ok(Orientation { parent })
    }
}
