//! Root-to-leaves phase: links from the first phase are split again at the
//! node that merged them, fixing labels from the root downwards.

use std::collections::{BTreeMap, BTreeSet};

use lcl_core::Label;

use crate::phase1::{LinkId, MemoEntry, PhaseState};
use crate::tree::{CompatTree, SlotLabels};
use crate::SolveError;

/// A solution of the compatibility tree and the order it was fixed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelPropagation {
    pub labels: SlotLabels,
    /// Links processed per iteration.
    pub time_sets: Vec<Vec<LinkId>>,
}

impl LabelPropagation {
    /// Iterations used; the root step counts as one even on a single node.
    pub fn iterations(&self) -> usize {
        self.time_sets.len().max(1)
    }
}

struct Partial {
    labels: BTreeMap<usize, Vec<Option<Label>>>,
}

impl Partial {
    fn set(&mut self, v: usize, slot: usize, label: Label) -> Result<(), SolveError> {
        let entry = &mut self.labels.get_mut(&v).expect("tree node")[slot];
        if entry.replace(label).is_some() {
            return Err(SolveError::Invariant {
                what: "every half-edge is labeled once",
                node: v,
            });
        }
        Ok(())
    }
}

/// Fixes labels of the whole tree, choosing the lexicographically smallest
/// admissible tuple or label at every step.
///
/// Returns `Ok(None)` when some choice has no admissible option, which only
/// happens on instances without a solution.
pub fn phase2(tree: &CompatTree, state: &PhaseState) -> Result<Option<LabelPropagation>, SolveError> {
    let links = state.links();
    let memo = state.memo();
    let mut partial = Partial {
        labels: tree.nodes().map(|v| (v, vec![None; tree.degree(v)])).collect(),
    };
    let mut leaf_links: BTreeMap<(usize, usize), LinkId> = BTreeMap::new();
    for (id, l) in links.iter().enumerate() {
        if tree.is_leaf(l.start) && leaf_links.insert((l.end, l.last), id).is_some() {
            return Err(SolveError::Invariant {
                what: "one leaf link per in-edge",
                node: l.end,
            });
        }
    }
    let by_ends: BTreeMap<(usize, usize), LinkId> = links.iter().enumerate().map(|(id, l)| ((l.start, l.end), id)).collect();

    let decided = |v: usize, slot: usize| -> Result<_, SolveError> {
        match memo.get(v, slot) {
            Some(MemoEntry::Decided(set)) => Ok(set),
            _ => Err(SolveError::Invariant {
                what: "memo decided off the path",
                node: v,
            }),
        }
    };
    // Labels the leaf behind `slot` of `v`, given the label `at` on `v`'s side.
    let leaf_step = |partial: &mut Partial, v: usize, slot: usize, at: Label| -> Result<Option<(LinkId, Label, Label)>, SolveError> {
        let child = tree.slots(v)[slot];
        let &id = leaf_links.get(&(v, child)).ok_or(SolveError::Invariant {
            what: "a leaf link reaches every off-path in-edge",
            node: v,
        })?;
        let link = &links[id];
        let Some(own) = link
            .pairs
            .iter()
            .filter(|&&(_, b)| b == at)
            .map(|&(a, _)| a)
            .find(|&a| tree.accepts_single(link.start, a))
        else {
            return Ok(None);
        };
        partial.set(link.start, 0, own)?;
        Ok(Some((id, own, at)))
    };

    let root = tree.root();
    let mut time_sets = Vec::new();
    let mut current: Vec<(LinkId, Label, Label)> = Vec::new();
    {
        let slots = tree.degree(root);
        let mut sets = Vec::with_capacity(slots);
        for slot in 0..slots {
            sets.push(decided(root, slot)?);
        }
        let Some(tuple) = tree
            .tuples(root)
            .iter()
            .find(|t| t.iter().zip(&sets).all(|(a, set)| set.contains(a)))
        else {
            return Ok(None);
        };
        for (slot, &a) in tuple.iter().enumerate() {
            partial.set(root, slot, a)?;
        }
        for (slot, &a) in tuple.iter().enumerate() {
            match leaf_step(&mut partial, root, slot, a)? {
                Some(item) => current.push(item),
                None => return Ok(None),
            }
        }
    }

    while !current.is_empty() {
        time_sets.push(current.iter().map(|&(id, _, _)| id).collect());
        let mut next = Vec::new();
        for &(id, below, above) in &current {
            let link = &links[id];
            let Some(x) = link.pred else { continue };
            let missing = || SolveError::Invariant {
                what: "both halves of a merged link exist",
                node: x,
            };
            let &lower = by_ends.get(&(link.start, x)).ok_or_else(missing)?;
            let &upper = by_ends.get(&(x, link.end)).ok_or_else(missing)?;
            let inner = tree.slot_of(x, links[lower].last).expect("in-edge of x");
            let outer = tree.slot_of(x, tree.parent(x).expect("merging nodes are not the root")).unwrap();
            let mut off = Vec::new();
            for slot in 0..tree.degree(x) {
                if slot != inner && slot != outer {
                    off.push((slot, decided(x, slot)?));
                }
            }
            let Some(tuple) = tree.tuples(x).iter().find(|t| {
                off.iter().all(|(slot, set)| set.contains(&t[*slot]))
                    && links[lower].pairs.contains(&(below, t[inner]))
                    && links[upper].pairs.contains(&(t[outer], above))
            }) else {
                return Ok(None);
            };
            for (slot, &a) in tuple.iter().enumerate() {
                partial.set(x, slot, a)?;
            }
            next.push((lower, below, tuple[inner]));
            next.push((upper, tuple[outer], above));
            for &(slot, _) in &off {
                match leaf_step(&mut partial, x, slot, tuple[slot])? {
                    Some(item) => next.push(item),
                    None => return Ok(None),
                }
            }
        }
        current = next;
    }

    let mut labels = SlotLabels::new();
    for (v, slots) in partial.labels {
        let full: Option<Vec<Label>> = slots.into_iter().collect();
        labels.insert(
            v,
            full.ok_or(SolveError::Invariant {
                what: "every half-edge is labeled",
                node: v,
            })?,
        );
    }
    Ok(Some(LabelPropagation { labels, time_sets }))
}

/// Edges, named by their child endpoint, between `start` and its ancestor
/// `end`: the path plus everything hanging off its inner nodes.
pub fn between(tree: &CompatTree, start: usize, end: usize) -> BTreeSet<usize> {
    let mut top = start;
    while tree.parent(top) != Some(end) {
        top = tree.parent(top).expect("end is an ancestor of start");
    }
    let mut edges = BTreeSet::new();
    let mut stack = vec![top];
    while let Some(w) = stack.pop() {
        edges.insert(w);
        if w != start {
            stack.extend(tree.children(w));
        }
    }
    edges
}

/// Whether in every iteration the processed links cover each edge not yet
/// fixed by a single-edge link exactly once.
pub fn check_partition(tree: &CompatTree, state: &PhaseState, time_sets: &[Vec<LinkId>]) -> bool {
    let links = state.links();
    let mut open: BTreeSet<usize> = tree.nodes().filter(|&v| tree.parent(v).is_some()).collect();
    for set in time_sets {
        let mut covered = BTreeSet::new();
        for &id in set {
            for e in between(tree, links[id].start, links[id].end) {
                if !covered.insert(e) {
                    return false;
                }
            }
        }
        if covered != open {
            return false;
        }
        for &id in set {
            if tree.parent(links[id].start) == Some(links[id].end) {
                open.remove(&links[id].start);
            }
        }
    }
    open.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_g0, phase1};
    use graph_core::Forest;
    use lcl_core::{builtin, uniform_inputs};

    fn edge_tree(name: &str) -> CompatTree {
        let f = Forest::with_sequential_ids(2, &[(0, 1)], 1).unwrap();
        let lcl = builtin(name, 3).unwrap();
        build_g0(&f, &[Some(1), None], 1, &lcl, &uniform_inputs(&f))
    }

    #[test]
    fn two_coloring_an_edge() {
        let tree = edge_tree("two-coloring");
        let state = phase1(&tree, false).unwrap();
        let prop = phase2(&tree, &state).unwrap().unwrap();
        assert_eq!(prop.labels[&0], vec![1]);
        assert_eq!(prop.labels[&1], vec![0]);
        assert_eq!(prop.time_sets, vec![vec![0]]);
        assert!(check_partition(&tree, &state, &prop.time_sets));
    }

    #[test]
    fn unsatisfiable_edge_has_no_labeling() {
        let tree = edge_tree("unsatisfiable-edge");
        let state = phase1(&tree, false).unwrap();
        assert!(state.is_unsatisfiable());
        assert_eq!(phase2(&tree, &state).unwrap(), None);
    }

    #[test]
    fn single_node_takes_the_root_step() {
        let f = Forest::with_sequential_ids(1, &[], 3).unwrap();
        let lcl = builtin("free", 3).unwrap();
        let tree = build_g0(&f, &[None], 0, &lcl, &uniform_inputs(&f));
        let state = phase1(&tree, false).unwrap();
        let prop = phase2(&tree, &state).unwrap().unwrap();
        assert_eq!(prop.iterations(), 1);
        assert_eq!(prop.labels[&0], Vec::<Label>::new());
    }

    #[test]
    fn between_collects_hanging_subtrees() {
        // 0 - 1 - 2 - 3 rooted at 3, with 4 hanging off 1.
        let f = Forest::with_sequential_ids(5, &[(0, 1), (1, 2), (2, 3), (1, 4)], 3).unwrap();
        let lcl = builtin("free", 3).unwrap();
        let parent = [Some(1), Some(2), Some(3), None, Some(1)];
        let tree = build_g0(&f, &parent, 3, &lcl, &uniform_inputs(&f));
        assert_eq!(between(&tree, 0, 2), BTreeSet::from([0, 1, 4]));
        assert_eq!(between(&tree, 0, 3), BTreeSet::from([0, 1, 2, 4]));
        assert_eq!(between(&tree, 1, 3), BTreeSet::from([1, 2]));
    }
}
