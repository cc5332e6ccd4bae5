use std::collections::{HashMap, HashSet, VecDeque};

use graph_core::Forest;
use mpc_sim::{Mpc, MpcConfig, MpcError, Outbox, ProblemSize, RoundTrace};

use crate::engine::{apply_links, exponentiate, snapshot};
use crate::state::{Announce, Internal, Kind, Link, Msg, NodeState, Status};

/// A path set aside during root finding: its leaf `source`, the source's
/// input neighbor on the path, and the endpoint `sink` the path hangs from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetAsideRecord {
    pub source: usize,
    pub toward: usize,
    pub sink: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FindRootStats {
    pub phases: usize,
    pub rounds: usize,
    /// Size of the residual virtual graph at the start of every phase, then
    /// after the last phase.
    pub residual_per_phase: Vec<usize>,
    /// Most virtual edges any node stored at a barrier.
    pub max_virtual_edges: usize,
}

/// Result of root finding: one root per component and the set-aside paths.
#[derive(Clone, Debug)]
pub struct RootFinding {
    pub roots: Vec<usize>,
    pub records: Vec<SetAsideRecord>,
    pub stats: FindRootStats,
    pub trace: Vec<RoundTrace>,
    pub(crate) states: Vec<NodeState>,
}

/// Finds a root in every component by repeated path exponentiation, setting
/// aside paths whose leaf endpoint is linked to the other endpoint.
///
/// Every phase takes three supersteps (announce roles, set paths aside,
/// exponentiate) and ends with a global termination check.
pub fn find_root(f: &Forest, config: &MpcConfig) -> Result<RootFinding, MpcError> {
    let n = f.node_count();
    let states = (0..n).map(|v| NodeState::new(v, f.neighbors(v).to_vec())).collect();
    let size = ProblemSize {
        nodes: n,
        edges: f.edge_count(),
    };
    let mut mpc: Mpc<NodeState, Msg> = Mpc::new(states, size, *config);
    let mut stats = FindRootStats::default();

    mpc.superstep(|_, st, _, out| {
        for &u in &st.nbrs {
            out.send(u, Msg::Hello { from: st.me, degree: st.nbrs.len() });
        }
    })?;
    loop {
        let flags: Vec<bool> = mpc.states().iter().map(NodeState::settled).collect();
        if mpc.all_done(&flags)? {
            break;
        }
        let view = snapshot(mpc.states(), |v| mpc.pending(v));
        stats.residual_per_phase.push(residual_size(&view));
        stats.phases += 1;
        mpc.superstep(announce)?;
        note_edges(&mut stats, mpc.states());
        mpc.superstep(set_aside)?;
        note_edges(&mut stats, mpc.states());
        mpc.superstep(absorb_and_exponentiate)?;
        note_edges(&mut stats, mpc.states());
    }
    stats.residual_per_phase.push(0);
    stats.rounds = mpc.rounds();

    let trace = mpc.trace().to_vec();
    let states = mpc.into_states();
    let roots = (0..n).filter(|&v| states[v].status == Status::Root).collect();
    let records = states
        .iter()
        .filter_map(|st| match st.status {
            Status::Source { toward, sink } => Some(SetAsideRecord {
                source: st.me,
                toward,
                sink,
            }),
            _ => None,
        })
        .collect();
    Ok(RootFinding {
        roots,
        records,
        stats,
        trace,
        states,
    })
}

fn note_edges(stats: &mut FindRootStats, states: &[NodeState]) {
    let most = states.iter().map(NodeState::virtual_edges).max().unwrap_or(0);
    stats.max_virtual_edges = stats.max_virtual_edges.max(most);
}

/// Role discovery: apply the last exponentiation step, classify, convert
/// midpoints whose paths on both sides are complete, and announce the role to
/// every endpoint this node is linked to.
fn announce(_: usize, st: &mut NodeState, inbox: &[Msg], out: &mut Outbox<Msg>) {
    apply_links(st, inbox);
    st.converted_now = false;
    for side in &mut st.sides {
        side.heard = None;
    }
    if !st.is_active_endpoint() {
        return;
    }
    if st.rdeg == 2 {
        let sides: Vec<usize> = st.residual_sides().collect();
        let (j0, j1) = (sides[0], sides[1]);
        let (t0, t1) = (st.sides[j0].tracked, st.sides[j1].tracked);
        if t0.endpoint && t1.endpoint {
            st.kind = Kind::Internal;
            st.converted_now = true;
            st.internal = Some(Internal {
                links: [Link { furthest: true, ..t0 }, Link { furthest: true, ..t1 }],
                via: [j0, j1],
            });
        } else {
            st.kind = Kind::Midpoint;
        }
    } else {
        st.kind = Kind::Endpoint;
    }
    let what = if st.converted_now {
        Announce::Converting
    } else if st.rdeg == 1 {
        Announce::Leaf
    } else if st.kind == Kind::Midpoint {
        Announce::Midpoint
    } else {
        Announce::Branch
    };
    for j in st.residual_sides() {
        let t = st.sides[j].tracked;
        if t.endpoint {
            out.send(t.node, Msg::Announce { from: st.me, what });
        }
    }
}

/// A leaf linked to the other endpoint of its path sets the path aside,
/// unless that endpoint is converting or is a leaf with a higher ID.
fn set_aside(_: usize, st: &mut NodeState, inbox: &[Msg], out: &mut Outbox<Msg>) {
    for msg in inbox {
        let Msg::Announce { from, what } = *msg else { continue };
        if st.converted_now {
            let int = st.internal.as_mut().expect("converted node is internal");
            if let (Some(k), Announce::Converting) = (int.position(from), what) {
                int.links[k].endpoint = false;
                int.links[k].furthest = false;
            }
        } else if let Some(j) = st.side_tracking(from) {
            st.sides[j].heard = Some(what);
            if what == Announce::Converting {
                st.sides[j].tracked.endpoint = false;
            }
        }
    }
    if !st.is_active_endpoint() || st.rdeg != 1 {
        return;
    }
    let j = st.residual_sides().next().expect("leaf has a residual side");
    let t = st.sides[j].tracked;
    let Some(what) = st.sides[j].heard else { return };
    if !t.endpoint || (what == Announce::Leaf && st.me > t.node) {
        return;
    }
    st.status = Status::Source {
        toward: st.nbrs[j],
        sink: t.node,
    };
    out.send(t.node, Msg::SetAside { from: st.me });
}

/// Endpoints absorb set-aside paths; a node left without residual edges is
/// the root. Internal nodes take one exponentiation step.
fn absorb_and_exponentiate(_: usize, st: &mut NodeState, inbox: &[Msg], out: &mut Outbox<Msg>) {
    for msg in inbox {
        let Msg::SetAside { from } = *msg else { continue };
        let j = st.side_tracking(from).expect("set-aside path ends at its tracked endpoint");
        st.sides[j].residual = false;
        st.sides[j].set_aside_in = true;
        st.rdeg -= 1;
    }
    if st.is_active_endpoint() && st.rdeg == 0 {
        st.status = Status::Root;
    }
    if st.status == Status::Active && st.kind == Kind::Internal {
        exponentiate(st, out, false);
    }
}

/// Active endpoints plus, for every path whose endpoints are not yet linked,
/// the internal nodes on a shortest virtual path between them.
pub(crate) fn residual_size(states: &[NodeState]) -> usize {
    let mut total = 0;
    let mut seen = HashSet::new();
    for s in states.iter().filter(|st| st.is_active_endpoint()) {
        total += 1;
        for j in s.residual_sides() {
            if s.sides[j].tracked.endpoint {
                continue;
            }
            // Walk the input path to the other endpoint.
            let mut members = vec![s.me];
            let (mut prev, mut cur) = (s.me, s.nbrs[j]);
            while states[cur].kind == Kind::Internal && states[cur].status != Status::Root {
                members.push(cur);
                let st = &states[cur];
                let next = st
                    .residual_sides()
                    .map(|k| st.nbrs[k])
                    .find(|&u| u != prev)
                    .expect("internal node has two residual edges");
                prev = cur;
                cur = next;
            }
            let t = cur;
            if !seen.insert((s.me.min(t), s.me.max(t), s.nbrs[j].min(prev))) {
                continue;
            }
            members.push(t);
            total += shortest_virtual(states, &members, s.me, t).saturating_sub(1);
        }
    }
    total
}

fn shortest_virtual(states: &[NodeState], members: &[usize], s: usize, t: usize) -> usize {
    let inside: HashSet<usize> = members.iter().copied().collect();
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut add = |a: usize, b: usize| {
        if inside.contains(&a) && inside.contains(&b) {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    };
    for &v in members {
        let st = &states[v];
        if v == s || v == t {
            for j in st.residual_sides() {
                add(v, st.sides[j].tracked.node);
            }
        } else if let Some(int) = &st.internal {
            for l in int.links {
                add(v, l.node);
            }
        }
    }
    let mut dist = HashMap::from([(s, 0usize)]);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            return dist[&v];
        }
        for &u in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if !dist.contains_key(&u) {
                dist.insert(u, dist[&v] + 1);
                queue.push_back(u);
            }
        }
    }
    unreachable!("path endpoints are connected in the virtual graph")
}
