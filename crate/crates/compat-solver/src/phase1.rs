//! Leaves-to-root phase: ancestor links are merged at degree-2 nodes until
//! every root edge is reached by a link from a leaf.

use std::collections::{BTreeMap, BTreeSet};

use lcl_core::Label;

use crate::tree::{CompatTree, PairSet};
use crate::SolveError;

/// Index of a link in [`PhaseState::links`].
pub type LinkId = usize;

/// A link from `start` to its strict ancestor `end`.
///
/// Edges are named by their child endpoint: `first` is always `start`, and
/// `last` is the child of `end` on the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncestorLink {
    pub start: usize,
    pub end: usize,
    /// Label pairs (at `start` on the first edge, at `end` on the last edge)
    /// that extend to everything between the two endpoints.
    pub pairs: PairSet,
    /// The node whose merge created the link, if any.
    pub pred: Option<usize>,
    pub first: usize,
    pub last: usize,
    pub active: bool,
}

/// One entry of a node memo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MemoEntry {
    Undecided,
    /// Labels on this node's half-edge that extend to the subtree behind the edge.
    Decided(BTreeSet<Label>),
}

impl MemoEntry {
    pub fn decided(&self) -> Option<&BTreeSet<Label>> {
        match self {
            MemoEntry::Undecided => None,
            MemoEntry::Decided(set) => Some(set),
        }
    }
}

/// Per-slot completability memo of every non-leaf node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeMemo {
    entries: BTreeMap<usize, Vec<MemoEntry>>,
}

impl NodeMemo {
    fn new(tree: &CompatTree) -> Self {
        let entries = tree
            .nodes()
            .filter(|&v| !tree.is_leaf(v))
            .map(|v| (v, vec![MemoEntry::Undecided; tree.degree(v)]))
            .collect();
        NodeMemo { entries }
    }

    /// The memo of `node`, absent for leaves.
    pub fn of(&self, node: usize) -> Option<&[MemoEntry]> {
        self.entries.get(&node).map(Vec::as_slice)
    }

    pub fn get(&self, node: usize, slot: usize) -> Option<&MemoEntry> {
        self.entries.get(&node).map(|m| &m[slot])
    }

    /// All decided entries as (node, slot, labels).
    pub fn decided(&self) -> impl Iterator<Item = (usize, usize, &BTreeSet<Label>)> {
        self.entries
            .iter()
            .flat_map(|(&v, m)| m.iter().enumerate().filter_map(move |(i, e)| Some((v, i, e.decided()?))))
    }
}

/// How a non-root node takes part in an iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NodeKind {
    /// No incoming active link.
    One,
    /// Incoming active links that all share one last edge, named by its child.
    Two { relevant: usize },
    /// Incoming active links with different last edges.
    Three,
}

impl NodeKind {
    fn rank(self) -> u8 {
        match self {
            NodeKind::One => 1,
            NodeKind::Two { .. } => 2,
            NodeKind::Three => 3,
        }
    }
}

/// Potential of one iteration: leaves of the active tree plus block weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Potential {
    pub leaves: usize,
    pub blocks: f64,
}

impl Potential {
    pub fn total(&self) -> f64 {
        self.leaves as f64 + self.blocks
    }
}

/// Summary of one iteration; iteration 0 is the starting point.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub potential: Potential,
    pub active_links: usize,
    pub total_links: usize,
    pub merges: usize,
}

/// A maximal path of non-root degree-2 nodes of the active tree with its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub nodes: BTreeSet<usize>,
    pub weight: f64,
}

/// Links, memos, blocks and potentials of the leaves-to-root phase.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseState {
    links: Vec<AncestorLink>,
    active: Vec<LinkId>,
    memo: NodeMemo,
    iteration: usize,
    blocks: Vec<Block>,
    history: Vec<IterationRecord>,
    unsatisfiable: bool,
}

impl PhaseState {
    /// Every link created so far, in creation order.
    pub fn links(&self) -> &[AncestorLink] {
        &self.links
    }

    pub fn active(&self) -> &[LinkId] {
        &self.active
    }

    pub fn memo(&self) -> &NodeMemo {
        &self.memo
    }

    /// Iterations run; the phase ends after the first one leaving no active link.
    pub fn iterations(&self) -> usize {
        self.iteration
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn history(&self) -> &[IterationRecord] {
        &self.history
    }

    /// Whether some link or memo entry ended up empty, so no solution exists.
    pub fn is_unsatisfiable(&self) -> bool {
        self.unsatisfiable
    }

    /// The link from `start` to `end`, if one was created.
    pub fn find(&self, start: usize, end: usize) -> Option<LinkId> {
        self.links.iter().position(|l| l.start == start && l.end == end)
    }

    /// Iterations `i` at which `Φ_{i+1} ≤ 7/8 · Φ_{i−1}` fails although neither
    /// iteration `i` nor `i + 1` is the last one.
    pub fn potential_violations(&self) -> Vec<usize> {
        let phi: Vec<f64> = self.history.iter().map(|r| r.potential.total()).collect();
        (1..self.iteration)
            .filter(|&i| i + 1 < self.iteration && phi[i + 1] * 8.0 > phi[i - 1] * 7.0)
            .collect()
    }
}

/// Upper bound on the number of iterations for an `n`-node tree.
pub fn iteration_bound(n: usize) -> usize {
    (2.0 * (2.0 * n.max(1) as f64).ln() / (8.0f64 / 7.0).ln()).ceil() as usize + 2
}

/// Current potential as (leaves, block weight, total).
pub fn potential(state: &PhaseState) -> (usize, f64, f64) {
    let p = state.history.last().expect("initial record").potential;
    (p.leaves, p.blocks, p.total())
}

/// Runs the leaves-to-root phase to completion.
///
/// Each iteration reads only the state left by the previous one, so the
/// order in which nodes are visited (reversed when `reverse` is set) does not
/// affect the outcome. Structural invariants are checked after every
/// iteration and reported as errors.
pub fn phase1(tree: &CompatTree, reverse: bool) -> Result<PhaseState, SolveError> {
    let links: Vec<AncestorLink> = tree
        .nodes()
        .filter_map(|u| {
            let p = tree.parent(u)?;
            Some(AncestorLink {
                start: u,
                end: p,
                pairs: tree.up_pairs(u).clone(),
                pred: None,
                first: u,
                last: u,
                active: true,
            })
        })
        .collect();
    let unsatisfiable = links.iter().any(|l| l.pairs.is_empty());
    let active: Vec<LinkId> = (0..links.len()).collect();
    let mut state = PhaseState {
        links,
        active,
        memo: NodeMemo::new(tree),
        iteration: 0,
        blocks: Vec::new(),
        history: Vec::new(),
        unsatisfiable,
    };
    let mut alive = active_nodes(tree, &state);
    let mut kinds: BTreeMap<usize, NodeKind> = BTreeMap::new();
    record(tree, &mut state, &alive, 0)?;

    let mut order: Vec<usize> = tree.nodes().collect();
    if reverse {
        order.reverse();
    }
    while !state.active.is_empty() {
        state.iteration += 1;
        let current = classify(tree, &state);
        for (&v, &kind) in &current {
            if kinds.get(&v).is_some_and(|old| kind.rank() > old.rank()) {
                return Err(SolveError::Invariant { what: "node kinds only decrease", node: v });
            }
            if let NodeKind::Two { relevant } = kind {
                check_two_node_memo(tree, &state.memo, v, relevant)?;
            }
        }
        kinds = current;
        let merges = step(tree, &mut state, &kinds, &order)?;
        let next_nodes = active_nodes(tree, &state);
        if let Some(&v) = next_nodes.difference(&alive).next() {
            return Err(SolveError::Invariant { what: "inactive nodes stay inactive", node: v });
        }
        alive = next_nodes;
        check_structure(tree, &state, &alive)?;
        record(tree, &mut state, &alive, merges)?;
    }
    Ok(state)
}

/// Incoming active links per node and the outgoing active link per node.
fn incidence(state: &PhaseState) -> (BTreeMap<usize, Vec<LinkId>>, BTreeMap<usize, LinkId>) {
    let mut incoming: BTreeMap<usize, Vec<LinkId>> = BTreeMap::new();
    let mut outgoing = BTreeMap::new();
    for &id in &state.active {
        let l = &state.links[id];
        incoming.entry(l.end).or_default().push(id);
        outgoing.insert(l.start, id);
    }
    (incoming, outgoing)
}

fn classify(tree: &CompatTree, state: &PhaseState) -> BTreeMap<usize, NodeKind> {
    let (incoming, _) = incidence(state);
    tree.nodes()
        .filter(|&v| v != tree.root())
        .map(|v| {
            let lasts: BTreeSet<usize> = incoming
                .get(&v)
                .into_iter()
                .flatten()
                .map(|&id| state.links[id].last)
                .collect();
            let kind = match lasts.len() {
                0 => NodeKind::One,
                1 => NodeKind::Two {
                    relevant: *lasts.first().unwrap(),
                },
                _ => NodeKind::Three,
            };
            (v, kind)
        })
        .collect()
}

/// A 2-node's memo is undecided exactly on its relevant in-edge and its parent edge.
fn check_two_node_memo(tree: &CompatTree, memo: &NodeMemo, v: usize, relevant: usize) -> Result<(), SolveError> {
    let open = [tree.slot_of(v, relevant), tree.parent(v).and_then(|p| tree.slot_of(v, p))];
    let m = memo.of(v).ok_or(SolveError::Invariant { what: "2-nodes are not leaves", node: v })?;
    for (slot, entry) in m.iter().enumerate() {
        if (*entry == MemoEntry::Undecided) != open.contains(&Some(slot)) {
            return Err(SolveError::Invariant {
                what: "2-node memo undecided exactly on its path edges",
                node: v,
            });
        }
    }
    Ok(())
}

/// Runs the merge rule and the leaf-question rule once; returns the number of merges.
fn step(
    tree: &CompatTree,
    state: &mut PhaseState,
    kinds: &BTreeMap<usize, NodeKind>,
    order: &[usize],
) -> Result<usize, SolveError> {
    let (incoming, outgoing) = incidence(state);
    let mut created: Vec<AncestorLink> = Vec::new();
    let mut kept: Vec<LinkId> = Vec::new();
    let mut decided: Vec<(usize, usize, BTreeSet<Label>)> = Vec::new();
    let none = Vec::new();

    for &u in order {
        let ins = incoming.get(&u).unwrap_or(&none);
        match kinds.get(&u) {
            Some(NodeKind::One) => {}
            Some(NodeKind::Two { .. }) => {
                let &own = outgoing
                    .get(&u)
                    .ok_or(SolveError::Invariant { what: "2-nodes are active", node: u })?;
                for &p in ins {
                    created.push(merge(tree, &state.memo, &state.links[p], &state.links[own], u)?);
                }
            }
            Some(NodeKind::Three) | None => {
                let mut by_last: BTreeMap<usize, Vec<LinkId>> = BTreeMap::new();
                for &p in ins {
                    by_last.entry(state.links[p].last).or_default().push(p);
                }
                let mut answers: BTreeMap<usize, Option<LinkId>> = BTreeMap::new();
                for (&e, ps) in &by_last {
                    let leaf: Vec<LinkId> = ps.iter().copied().filter(|&p| tree.is_leaf(state.links[p].start)).collect();
                    if leaf.len() > 1 {
                        return Err(SolveError::Invariant { what: "one leaf link per in-edge", node: u });
                    }
                    answers.insert(e, leaf.first().copied());
                }
                if u != tree.root() && answers.values().all(Option::is_some) {
                    // The relevant in-edge with the smallest child ID answers "no".
                    if let Some((_, answer)) = answers.iter_mut().next() {
                        *answer = None;
                    }
                }
                for (e, answer) in answers {
                    match answer {
                        None => kept.extend(&by_last[&e]),
                        Some(p) => {
                            let link = &state.links[p];
                            let labels: BTreeSet<Label> = link
                                .pairs
                                .iter()
                                .filter(|&&(a, _)| tree.accepts_single(link.start, a))
                                .map(|&(_, b)| b)
                                .collect();
                            decided.push((u, tree.slot_of(u, e).expect("in-edge slot"), labels));
                        }
                    }
                }
            }
        }
    }

    for &id in &state.active {
        state.links[id].active = false;
    }
    for &id in &kept {
        state.links[id].active = true;
    }
    created.sort_by_key(|l| (l.start, l.end));
    let merges = created.len();
    let mut next = kept;
    for link in created {
        state.unsatisfiable |= link.pairs.is_empty();
        next.push(state.links.len());
        state.links.push(link);
    }
    next.sort_unstable();
    state.active = next;
    for (u, slot, labels) in decided {
        state.unsatisfiable |= labels.is_empty();
        let entry = &mut state.memo.entries.get_mut(&u).expect("memo of a non-leaf")[slot];
        if *entry != MemoEntry::Undecided {
            return Err(SolveError::Invariant { what: "memo entries are decided once", node: u });
        }
        *entry = MemoEntry::Decided(labels);
    }
    Ok(merges)
}

/// Joins `p = (u, v)` and `q = (v, w)` at the 2-node `v`.
fn merge(
    tree: &CompatTree,
    memo: &NodeMemo,
    p: &AncestorLink,
    q: &AncestorLink,
    v: usize,
) -> Result<AncestorLink, SolveError> {
    let inner = tree.slot_of(v, p.last).expect("last edge of p ends at v");
    let outer = tree.slot_of(v, tree.parent(v).expect("2-nodes are not the root")).unwrap();
    let m = memo.of(v).expect("2-nodes have a memo");
    let mut fixed = Vec::new();
    for (slot, entry) in m.iter().enumerate() {
        if slot != inner && slot != outer {
            match entry {
                MemoEntry::Undecided => return Err(SolveError::UndecidedAtMerge { node: v, slot }),
                MemoEntry::Decided(set) => fixed.push((slot, set)),
            }
        }
    }
    let mut through = BTreeSet::new();
    for t in tree.tuples(v) {
        if fixed.iter().all(|(slot, set)| set.contains(&t[*slot])) {
            through.insert((t[inner], t[outer]));
        }
    }
    let mut pairs = PairSet::new();
    for &(a, b) in &p.pairs {
        for &(_, c) in through.range((b, 0)..=(b, Label::MAX)) {
            for &(_, d) in q.pairs.range((c, 0)..=(c, Label::MAX)) {
                pairs.insert((a, d));
            }
        }
    }
    Ok(AncestorLink {
        start: p.start,
        end: q.end,
        pairs,
        pred: Some(v),
        first: p.first,
        last: q.last,
        active: true,
    })
}

/// The root and every node with an outgoing active link.
fn active_nodes(tree: &CompatTree, state: &PhaseState) -> BTreeSet<usize> {
    let mut nodes: BTreeSet<usize> = state.active.iter().map(|&id| state.links[id].start).collect();
    nodes.insert(tree.root());
    nodes
}

fn check_structure(tree: &CompatTree, state: &PhaseState, active_nodes: &BTreeSet<usize>) -> Result<(), SolveError> {
    let mut starts = BTreeSet::new();
    for &id in &state.active {
        let start = state.links[id].start;
        if start == tree.root() || !starts.insert(start) {
            return Err(SolveError::Invariant { what: "at most one outgoing active link", node: start });
        }
    }
    for &v in active_nodes {
        if let Some(p) = tree.parent(v) {
            if !active_nodes.contains(&p) {
                return Err(SolveError::Invariant { what: "ancestors of active nodes are active", node: v });
            }
        }
    }
    Ok(())
}

/// Computes blocks and the potential of the current active tree and appends
/// an iteration record.
fn record(
    tree: &CompatTree,
    state: &mut PhaseState,
    active_nodes: &BTreeSet<usize>,
    merges: usize,
) -> Result<(), SolveError> {
    let root = tree.root();
    let degree = |v: usize| tree.slots(v).iter().filter(|u| active_nodes.contains(u)).count();
    let leaves = active_nodes.iter().filter(|&&v| v != root && degree(v) == 1).count();
    let two = |v: usize| v != root && active_nodes.contains(&v) && degree(v) == 2;

    let mut previous: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, b) in state.blocks.iter().enumerate() {
        for &v in &b.nodes {
            previous.insert(v, j);
        }
    }
    let first = state.history.is_empty();
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    for &v in active_nodes {
        if !two(v) || seen.contains(&v) {
            continue;
        }
        let mut nodes = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if two(x) && nodes.insert(x) {
                stack.extend(tree.slots(x).iter().copied());
            }
        }
        seen.extend(nodes.iter().copied());
        let weight = if first {
            nodes.len() as f64
        } else {
            let prev: BTreeSet<usize> = nodes.iter().filter_map(|v| previous.get(v).copied()).collect();
            let mut weight = nodes.iter().filter(|v| !previous.contains_key(v)).count() as f64;
            for j in prev {
                if !state.blocks[j].nodes.is_subset(&nodes) {
                    return Err(SolveError::Invariant { what: "earlier blocks lie inside later blocks", node: v });
                }
                weight += state.blocks[j].weight / 2.0;
            }
            weight
        };
        blocks.push(Block { nodes, weight });
    }
    let potential = Potential {
        leaves,
        blocks: blocks.iter().fold(0.0, |acc, b| acc + b.weight),
    };
    state.blocks = blocks;
    state.history.push(IterationRecord {
        iteration: state.iteration,
        potential,
        active_links: state.active.len(),
        total_links: state.links.len(),
        merges,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TupleSet;

    /// A path `0 - 1 - ... - (n-1)` rooted at the last node, where every
    /// edge allows 01 and 12 and inner nodes need distinct labels.
    fn path(n: usize) -> CompatTree {
        let pairs = PairSet::from([(0, 1), (1, 2)]);
        let nodes = (0..n)
            .map(|v| {
                let slots: Vec<usize> = [v.checked_sub(1), (v + 1 < n).then_some(v + 1)].into_iter().flatten().collect();
                let tuples: TupleSet = if slots.len() == 2 {
                    (0..3).flat_map(|a| (0..3).filter(move |&b| b != a).map(move |b| vec![a, b])).collect()
                } else {
                    (0..3).map(|a| vec![a]).collect()
                };
                (v, (slots, tuples, pairs.clone()))
            })
            .collect::<BTreeMap<_, _>>();
        CompatTree::new(3, n - 1, nodes).unwrap()
    }

    #[test]
    fn merge_composes_through_the_middle() {
        let state = phase1(&path(3), false).unwrap();
        let merged = state.find(0, 2).map(|id| &state.links()[id]).unwrap();
        assert_eq!(merged.pairs, PairSet::from([(0, 1), (1, 1), (1, 2)]));
        assert_eq!((merged.pred, merged.first, merged.last), (Some(1), 0, 1));
        assert_eq!(state.history()[1].merges, 1);
    }

    #[test]
    fn paths_finish_in_logarithmic_iterations() {
        for n in [2, 5, 17, 64, 200] {
            let state = phase1(&path(n), false).unwrap();
            assert!(state.active().is_empty());
            assert!(state.iterations() <= iteration_bound(n), "n = {n}");
            assert!(state.potential_violations().is_empty(), "n = {n}");
            assert_eq!(state, phase1(&path(n), true).unwrap());
        }
    }

    #[test]
    fn iteration_bound_values() {
        assert_eq!(iteration_bound(1), 13);
        assert_eq!(iteration_bound(256), 96);
    }

    #[test]
    fn empty_pairs_flag_unsatisfiable() {
        let nodes = BTreeMap::from([
            (0, (vec![1], TupleSet::from([vec![0]]), PairSet::new())),
            (1, (vec![0], TupleSet::from([vec![0]]), PairSet::new())),
        ]);
        let state = phase1(&CompatTree::new(1, 1, nodes).unwrap(), false).unwrap();
        assert!(state.is_unsatisfiable());
        assert_eq!(state.iterations(), 1);
    }
}
