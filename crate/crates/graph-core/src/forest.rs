use std::collections::VecDeque;

use crate::error::{GraphError, Invariant};

/// External node identifier. Index order and ID order coincide in every [`Forest`].
pub type NodeId = u64;

/// Unordered edge between two node indices, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub lo: usize,
    pub hi: usize,
}

impl EdgeKey {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            EdgeKey { lo: a, hi: b }
        } else {
            EdgeKey { lo: b, hi: a }
        }
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

/// A node together with one of its incident edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub node: usize,
    pub edge: EdgeKey,
}

impl HalfEdge {
    pub fn neighbor(self) -> usize {
        self.edge.other(self.node)
    }
}

/// A bounded-degree undirected forest.
///
/// Node indices run over `0..n`; IDs are strictly increasing in the index, so
/// comparing indices is the same as comparing IDs. Adjacency lists are sorted,
/// which fixes a canonical half-edge order: by node, then by neighbor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    ids: Vec<NodeId>,
    adj: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    max_degree: usize,
}

impl Forest {
    /// Builds a forest from IDs and index-based edges, checking every invariant.
    pub fn new(
        ids: Vec<NodeId>,
        edges: &[(usize, usize)],
        max_degree: usize,
    ) -> Result<Self, GraphError> {
        let n = ids.len();
        for w in ids.windows(2) {
            if w[0] >= w[1] {
                return Err(Invariant::UnorderedIds(w[0], w[1]).into());
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut uf = UnionFind::new(n);
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Invariant::UnknownNode(a.max(b)).into());
            }
            if a == b {
                return Err(Invariant::SelfLoop(ids[a]).into());
            }
            let key = EdgeKey::new(a, b);
            if !seen.insert(key) {
                return Err(Invariant::DuplicateEdge(ids[key.lo], ids[key.hi]).into());
            }
            if !uf.union(a, b) {
                return Err(Invariant::Cycle(ids[key.lo], ids[key.hi]).into());
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            if list.len() > max_degree {
                return Err(Invariant::DegreeOverflow {
                    id: ids[v],
                    degree: list.len(),
                    bound: max_degree,
                }
                .into());
            }
            list.sort_unstable();
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for list in &adj {
            offsets.push(total);
            total += list.len();
        }
        offsets.push(total);
        Ok(Forest {
            ids,
            adj,
            offsets,
            max_degree,
        })
    }

    /// Forest on IDs `1..=n` with index-based edges.
    pub fn with_sequential_ids(
        n: usize,
        edges: &[(usize, usize)],
        max_degree: usize,
    ) -> Result<Self, GraphError> {
        Forest::new((1..=n as NodeId).collect(), edges, max_degree)
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edge_count() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn id(&self, v: usize) -> NodeId {
        self.ids[v]
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges in ascending `(lo, hi)` order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.adj.iter().enumerate().flat_map(|(v, list)| {
            list.iter()
                .filter(move |&&u| u > v)
                .map(move |&u| EdgeKey { lo: v, hi: u })
        })
    }

    pub fn half_edge_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// All half-edges, ordered by node and then by neighbor.
    pub fn half_edges(&self) -> Vec<HalfEdge> {
        (0..self.half_edge_count())
            .map(|h| self.half_edge(h))
            .collect()
    }

    /// Dense index of the half-edge `(v, {v,u})`.
    pub fn half_edge_index(&self, v: usize, u: usize) -> Option<usize> {
        self.adj[v]
            .binary_search(&u)
            .ok()
            .map(|slot| self.offsets[v] + slot)
    }

    pub fn half_edge(&self, index: usize) -> HalfEdge {
        let v = self.offsets.partition_point(|&o| o <= index) - 1;
        let u = self.adj[v][index - self.offsets[v]];
        HalfEdge {
            node: v,
            edge: EdgeKey::new(v, u),
        }
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subforest induced by `nodes` (sorted, distinct), keeping the original IDs.
    pub fn induced(&self, nodes: &[usize]) -> Forest {
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let ids = nodes.iter().map(|&v| self.ids[v]).collect();
        let edges: Vec<_> = self
            .edges()
            .filter(|e| local[e.lo] != usize::MAX && local[e.hi] != usize::MAX)
            .map(|e| (local[e.lo], local[e.hi]))
            .collect();
        Forest::new(ids, &edges, self.max_degree).expect("induced subgraph of a valid forest")
    }

    /// Re-checks every invariant from scratch with an independent union-find pass.
    pub fn validate(&self) -> Result<(), GraphError> {
        let edges: Vec<_> = self.edges().map(|e| (e.lo, e.hi)).collect();
        let rebuilt = Forest::new(self.ids.clone(), &edges, self.max_degree)?;
        if rebuilt.adj != self.adj {
            return Err(Invariant::AsymmetricAdjacency.into());
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
