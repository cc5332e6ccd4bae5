use std::collections::BTreeSet;

use graph_core::{Forest, HalfEdgeLabeling};
use lcl_core::{Label, NodeEdgeLcl};

/// Allowed (child-side, parent-side) label pairs on an edge.
pub type PairSet = BTreeSet<(Label, Label)>;
/// Allowed label tuples around a node, one entry per slot.
pub type TupleSet = BTreeSet<Vec<Label>>;

/// A rooted tree whose edges carry pair sets and whose nodes carry tuple sets.
///
/// Node `w` has one slot per incident edge; `slots(w)[i]` is the neighbor on
/// slot `i`. The pair set of the edge from child `c` to its parent is stored
/// at `c` with the child's label first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedInstance {
    labels: usize,
    parent: Vec<Option<usize>>,
    slots: Vec<Vec<usize>>,
    node_sets: Vec<TupleSet>,
    up_pairs: Vec<PairSet>,
}

impl RootedInstance {
    /// Builds an instance from its parts.
    ///
    /// # Panics
    /// If the parent relation and slots disagree or a tuple has the wrong arity.
    pub fn new(
        labels: usize,
        parent: Vec<Option<usize>>,
        slots: Vec<Vec<usize>>,
        node_sets: Vec<TupleSet>,
        up_pairs: Vec<PairSet>,
    ) -> Self {
        let n = parent.len();
        assert!(slots.len() == n && node_sets.len() == n && up_pairs.len() == n);
        for v in 0..n {
            if let Some(p) = parent[v] {
                assert!(slots[v].contains(&p), "parent {p} not a slot of {v}");
                assert!(slots[p].contains(&v), "child {v} not a slot of {p}");
            }
            for &u in &slots[v] {
                assert!(parent[u] == Some(v) || parent[v] == Some(u), "slot {v}-{u} is not a tree edge");
            }
            assert!(node_sets[v].iter().all(|t| t.len() == slots[v].len()), "tuple arity at {v}");
        }
        RootedInstance {
            labels,
            parent,
            slots,
            node_sets,
            up_pairs,
        }
    }

    /// The direct encoding of an LCL instance: edge pairs allowed by the edge
    /// constraint and both input maps, node tuples whose multiset is allowed.
    /// Slots follow the forest's neighbor order.
    pub fn from_lcl(
        f: &Forest,
        lcl: &NodeEdgeLcl,
        g_in: &HalfEdgeLabeling<Label>,
        parent: &[Option<usize>],
    ) -> Self {
        let k = lcl.out_count() as Label;
        let n = f.node_count();
        let slots: Vec<Vec<usize>> = (0..n).map(|v| f.neighbors(v).to_vec()).collect();
        let node_sets = (0..n)
            .map(|v| {
                let mut set = TupleSet::new();
                let mut tuple = Vec::with_capacity(f.degree(v));
                all_tuples(k, f.degree(v), &mut tuple, &mut |t| {
                    if t.is_empty() || lcl.node_allows(t) {
                        set.insert(t.to_vec());
                    }
                });
                set
            })
            .collect();
        let up_pairs = (0..n)
            .map(|c| {
                let Some(p) = parent[c] else {
                    return PairSet::new();
                };
                let in_c = *g_in.at(f, c, p).expect("total input labeling");
                let in_p = *g_in.at(f, p, c).expect("total input labeling");
                let mut set = PairSet::new();
                for a in 0..k {
                    for b in 0..k {
                        if lcl.edge_allows(a, b) && lcl.input_allows(in_c, a) && lcl.input_allows(in_p, b) {
                            set.insert((a, b));
                        }
                    }
                }
                set
            })
            .collect();
        RootedInstance::new(lcl.out_count(), parent.to_vec(), slots, node_sets, up_pairs)
    }

    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn slots(&self, v: usize) -> &[usize] {
        &self.slots[v]
    }

    pub fn slot_of(&self, v: usize, neighbor: usize) -> Option<usize> {
        self.slots[v].iter().position(|&u| u == neighbor)
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.slots[v].iter().copied().filter(move |&u| self.parent[u] == Some(v))
    }

    pub fn node_set(&self, v: usize) -> &TupleSet {
        &self.node_sets[v]
    }

    /// Pairs on the edge from `child` to its parent, child label first.
    pub fn up_pairs(&self, child: usize) -> &PairSet {
        &self.up_pairs[child]
    }

    /// Whether `labels[v][i]` (the label on slot `i` of `v`) is a correct solution.
    pub fn is_solution(&self, labels: &[Vec<Label>]) -> bool {
        (0..self.node_count()).all(|v| {
            self.node_sets[v].contains(&labels[v])
                && self.parent[v].is_none_or(|p| {
                    let mine = labels[v][self.slot_of(v, p).unwrap()];
                    let theirs = labels[p][self.slot_of(p, v).unwrap()];
                    self.up_pairs[v].contains(&(mine, theirs))
                })
        })
    }
}

/// Calls `visit` on every tuple over `0..k` of length `len`, lexicographically.
pub(crate) fn all_tuples(k: Label, len: usize, tuple: &mut Vec<Label>, visit: &mut impl FnMut(&[Label])) {
    if tuple.len() == len {
        visit(tuple);
        return;
    }
    for l in 0..k {
        tuple.push(l);
        all_tuples(k, len, tuple, visit);
        tuple.pop();
    }
}
