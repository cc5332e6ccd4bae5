use std::collections::{BTreeMap, BTreeSet, VecDeque};

use graph_core::{Forest, HalfEdgeLabeling};
use lcl_core::{Label, NodeEdgeLcl};

/// Allowed (child-side, parent-side) label pairs on an edge.
pub type PairSet = BTreeSet<(Label, Label)>;
/// Allowed label tuples around a node, one entry per slot.
pub type TupleSet = BTreeSet<Vec<Label>>;
/// Output labels per node, one entry per slot.
pub type SlotLabels = BTreeMap<usize, Vec<Label>>;

/// One node of a compatibility tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatNode {
    pub(crate) parent: Option<usize>,
    pub(crate) slots: Vec<usize>,
    pub(crate) tuples: TupleSet,
    pub(crate) up: PairSet,
}

/// A rooted tree whose edges carry label-pair sets and whose nodes carry
/// label-tuple sets.
///
/// Nodes keep the forest index they started with. Slot `i` of a node is one
/// incident edge; `slots(v)[i]` is the current neighbor on it. When a node is
/// bypassed, the neighbors keep the slot position and only the neighbor
/// changes. The pair set of the edge from a child to its parent is stored at
/// the child with the child's label first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatTree {
    labels: usize,
    root: usize,
    nodes: BTreeMap<usize, CompatNode>,
}

impl CompatTree {
    pub(crate) fn from_parts(labels: usize, root: usize, nodes: BTreeMap<usize, CompatNode>) -> Self {
        let tree = CompatTree { labels, root, nodes };
        debug_assert!(tree.is_consistent());
        tree
    }

    /// Builds a tree from per-node slots, tuple sets and the pair set of the
    /// edge to the parent (child label first; ignored at the root). Parents
    /// follow from `root`. `None` unless the slots describe a tree on the
    /// given nodes with tuples of matching arity.
    pub fn new(labels: usize, root: usize, nodes: BTreeMap<usize, (Vec<usize>, TupleSet, PairSet)>) -> Option<Self> {
        let mut parent: BTreeMap<usize, Option<usize>> = BTreeMap::from([(root, None)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in &nodes.get(&v)?.0 {
                if parent.get(&v) == Some(&Some(u)) {
                    continue;
                }
                if parent.insert(u, Some(v)).is_some() {
                    return None;
                }
                queue.push_back(u);
            }
        }
        if parent.len() != nodes.len() {
            return None;
        }
        let mut built = BTreeMap::new();
        for (v, (slots, tuples, up)) in nodes {
            if tuples.iter().any(|t| t.len() != slots.len()) {
                return None;
            }
            let parent = parent[&v];
            let up = if parent.is_some() { up } else { PairSet::new() };
            built.insert(v, CompatNode { parent, slots, tuples, up });
        }
        let tree = CompatTree { labels, root, nodes: built };
        tree.is_consistent().then_some(tree)
    }

    /// Number of output labels.
    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes.contains_key(&v)
    }

    /// Node indices in ascending order.
    pub fn nodes(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.nodes.keys().copied()
    }

    pub(crate) fn node(&self, v: usize) -> &CompatNode {
        &self.nodes[&v]
    }

    pub(crate) fn node_mut(&mut self, v: usize) -> &mut CompatNode {
        self.nodes.get_mut(&v).expect("node present")
    }

    pub(crate) fn remove(&mut self, v: usize) -> CompatNode {
        self.nodes.remove(&v).expect("node present")
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.nodes[&v].parent
    }

    pub fn slots(&self, v: usize) -> &[usize] {
        &self.nodes[&v].slots
    }

    pub fn slot_of(&self, v: usize, neighbor: usize) -> Option<usize> {
        self.nodes[&v].slots.iter().position(|&u| u == neighbor)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nodes[&v].slots.len()
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes[&v].slots.iter().copied().filter(move |&u| self.nodes[&u].parent == Some(v))
    }

    /// A non-root node of degree one.
    pub fn is_leaf(&self, v: usize) -> bool {
        v != self.root && self.degree(v) == 1
    }

    pub fn tuples(&self, v: usize) -> &TupleSet {
        &self.nodes[&v].tuples
    }

    /// Pairs on the edge from `child` to its parent, child label first.
    pub fn up_pairs(&self, child: usize) -> &PairSet {
        &self.nodes[&child].up
    }

    /// Whether a leaf or other degree-one node accepts `label` on its slot.
    pub fn accepts_single(&self, v: usize, label: Label) -> bool {
        self.nodes[&v].tuples.contains(&[label][..])
    }

    /// Whether `labels` assigns a tuple of `S_w` to every node and a pair of
    /// `S_uv` to every edge.
    pub fn is_solution(&self, labels: &SlotLabels) -> bool {
        self.nodes.iter().all(|(&v, node)| {
            let Some(own) = labels.get(&v) else { return false };
            node.tuples.contains(own)
                && node.parent.is_none_or(|p| {
                    let up = own[self.slot_of(v, p).expect("parent slot")];
                    let down = labels[&p][self.slot_of(p, v).expect("child slot")];
                    node.up.contains(&(up, down))
                })
        })
    }

    fn is_consistent(&self) -> bool {
        self.nodes.get(&self.root).is_some_and(|r| r.parent.is_none())
            && self.nodes.iter().all(|(&v, node)| {
                node.tuples.iter().all(|t| t.len() == node.slots.len())
                    && (v == self.root) != node.parent.is_some()
                    && node.parent.is_none_or(|p| node.slots.contains(&p))
                    && node.slots.iter().all(|u| {
                        self.nodes.get(u).is_some_and(|w| {
                            w.slots.contains(&v) && (w.parent == Some(v) || node.parent == Some(*u))
                        })
                    })
            })
    }
}

/// Encodes the component of `root` as a compatibility tree.
///
/// `parent` is a rooting of `f` in which `root` is the root of its component.
/// Edge sets hold the pairs allowed by the edge constraint and by the input
/// map on both half-edges; node sets hold every tuple whose multiset is an
/// allowed node configuration, with the empty tuple allowed at isolated nodes.
pub fn build_g0(
    f: &Forest,
    parent: &[Option<usize>],
    root: usize,
    lcl: &NodeEdgeLcl,
    g_in: &HalfEdgeLabeling<Label>,
) -> CompatTree {
    assert!(parent[root].is_none(), "root {root} has a parent");
    let k = lcl.out_count() as Label;
    let mut nodes = BTreeMap::new();
    let mut queue = VecDeque::from([root]);
    let mut seen = BTreeSet::from([root]);
    while let Some(v) = queue.pop_front() {
        let slots = f.neighbors(v).to_vec();
        for &u in &slots {
            assert!(
                parent[u] == Some(v) || parent[v] == Some(u),
                "edge {v}-{u} is not oriented"
            );
            if seen.insert(u) {
                queue.push_back(u);
            }
        }
        let up = match parent[v] {
            Some(p) => {
                let in_v = *g_in.at(f, v, p).expect("total input labeling");
                let in_p = *g_in.at(f, p, v).expect("total input labeling");
                (0..k)
                    .flat_map(|a| (0..k).map(move |b| (a, b)))
                    .filter(|&(a, b)| lcl.edge_allows(a, b) && lcl.input_allows(in_v, a) && lcl.input_allows(in_p, b))
                    .collect()
            }
            None => PairSet::new(),
        };
        let mut tuples = TupleSet::new();
        let mut tuple = Vec::with_capacity(slots.len());
        all_tuples(k, slots.len(), &mut tuple, &mut |t| {
            if t.is_empty() || lcl.node_allows(t) {
                tuples.insert(t.to_vec());
            }
        });
        nodes.insert(
            v,
            CompatNode {
                parent: parent[v],
                slots,
                tuples,
                up,
            },
        );
    }
    CompatTree::from_parts(lcl.out_count(), root, nodes)
}

fn all_tuples(k: Label, len: usize, tuple: &mut Vec<Label>, visit: &mut impl FnMut(&[Label])) {
    if tuple.len() == len {
        visit(tuple);
        return;
    }
    for a in 0..k {
        tuple.push(a);
        all_tuples(k, len, tuple, visit);
        tuple.pop();
    }
}

/// Writes slot labels of a tree built from `f` back onto half-edges.
pub fn to_half_edges(f: &Forest, tree: &CompatTree, labels: &SlotLabels, out: &mut HalfEdgeLabeling<Label>) {
    for v in tree.nodes() {
        for (i, &u) in tree.slots(v).iter().enumerate() {
            out.set_at(f, v, u, labels[&v][i]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcl_core::{builtin, uniform_inputs};

    fn star() -> (Forest, Vec<Option<usize>>) {
        let f = Forest::with_sequential_ids(4, &[(0, 1), (0, 2), (0, 3)], 3).unwrap();
        (f, vec![None, Some(0), Some(0), Some(0)])
    }

    #[test]
    fn three_coloring_sets() {
        let (f, parent) = star();
        let lcl = builtin("three-coloring", 3).unwrap();
        let tree = build_g0(&f, &parent, 0, &lcl, &uniform_inputs(&f));
        assert_eq!(tree.up_pairs(1).len(), 6);
        assert!(tree.up_pairs(1).iter().all(|(a, b)| a != b));
        let constant: TupleSet = (0..3).map(|c| vec![c; 3]).collect();
        assert_eq!(tree.tuples(0), &constant);
        assert_eq!(tree.children(0).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(tree.is_leaf(2) && !tree.is_leaf(0));
    }

    #[test]
    fn unsatisfiable_edges_are_empty() {
        let (f, parent) = star();
        let lcl = builtin("unsatisfiable-edge", 3).unwrap();
        let tree = build_g0(&f, &parent, 0, &lcl, &uniform_inputs(&f));
        assert!((1..4).all(|c| tree.up_pairs(c).is_empty()));
    }

    #[test]
    fn isolated_node_accepts_empty_tuple() {
        let f = Forest::with_sequential_ids(1, &[], 3).unwrap();
        let lcl = builtin("two-coloring", 3).unwrap();
        let tree = build_g0(&f, &[None], 0, &lcl, &uniform_inputs(&f));
        assert_eq!(tree.tuples(0), &TupleSet::from([vec![]]));
        assert!(tree.is_solution(&SlotLabels::from([(0, vec![])])));
    }

    #[test]
    fn solution_check() {
        let (f, parent) = star();
        let lcl = builtin("two-coloring", 3).unwrap();
        let tree = build_g0(&f, &parent, 0, &lcl, &uniform_inputs(&f));
        let mut labels: SlotLabels = (1..4).map(|c| (c, vec![1])).collect();
        labels.insert(0, vec![0, 0, 0]);
        assert!(tree.is_solution(&labels));
        labels.insert(2, vec![0]);
        assert!(!tree.is_solution(&labels));
    }

    #[test]
    fn new_rejects_non_trees() {
        let pairs = PairSet::from([(0, 0)]);
        let node = |slots: Vec<usize>| {
            let tuples = TupleSet::from([vec![0; slots.len()]]);
            (slots, tuples, pairs.clone())
        };
        let path = BTreeMap::from([(0, node(vec![1])), (1, node(vec![0, 2])), (2, node(vec![1]))]);
        let tree = CompatTree::new(1, 2, path).unwrap();
        assert_eq!((tree.parent(0), tree.parent(1), tree.parent(2)), (Some(1), Some(2), None));
        assert!(tree.up_pairs(2).is_empty());

        let cycle = BTreeMap::from([(0, node(vec![1, 2])), (1, node(vec![0, 2])), (2, node(vec![0, 1]))]);
        assert!(CompatTree::new(1, 0, cycle).is_none());
        let detached = BTreeMap::from([(0, node(vec![])), (1, node(vec![]))]);
        assert!(CompatTree::new(1, 0, detached).is_none());
        let mut arity = BTreeMap::from([(0, node(vec![1])), (1, node(vec![0]))]);
        arity.get_mut(&1).unwrap().1 = TupleSet::from([vec![0, 0]]);
        assert!(CompatTree::new(1, 0, arity).is_none());
    }
}
