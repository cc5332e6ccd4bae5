use graph_core::Forest;
use mpc_sim::{Mpc, MpcConfig, MpcError, Outbox, ProblemSize, RoundTrace};

use crate::engine::{apply_links, exponentiate};
use crate::state::{Internal, Kind, Link, Msg, NodeState, Status, Tag};
use crate::RootFinding;

/// Parents of every node after orienting the set-aside paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathOrientation {
    pub parent: Vec<Option<usize>>,
    /// Exponentiation supersteps taken.
    pub steps: usize,
    pub trace: Vec<RoundTrace>,
}

/// Orients every set-aside path from its source toward its sink.
///
/// Each node first tells its input neighbors whether it is internal to, the
/// source of, or the sink of the path through their common edge. Path
/// exponentiation then runs on all paths at once, with links to endpoints
/// carrying the endpoint's tag, until every internal node holds a tagged link.
pub fn orient_paths(f: &Forest, finding: &RootFinding, config: &MpcConfig) -> Result<PathOrientation, MpcError> {
    let states: Vec<NodeState> = finding.states.iter().cloned().map(reset).collect();
    let size = ProblemSize {
        nodes: f.node_count(),
        edges: f.edge_count(),
    };
    let mut mpc: Mpc<NodeState, Msg> = Mpc::new(states, size, *config);
    mpc.superstep(|_, st, _, out| {
        for (j, &u) in st.nbrs.iter().enumerate() {
            if let Some(tag) = edge_role(st, j) {
                out.send(u, Msg::EdgeRole { from: st.me, tag });
            }
        }
    })?;
    mpc.superstep(start)?;
    let mut steps = 1;
    loop {
        let flags: Vec<bool> = mpc.states().iter().map(knows_direction).collect();
        if mpc.all_done(&flags)? {
            break;
        }
        mpc.superstep(|_, st, inbox, out| {
            apply_links(st, inbox);
            if st.status == Status::Active && st.internal.is_some() {
                exponentiate(st, out, true);
            }
        })?;
        steps += 1;
    }
    let trace = mpc.trace().to_vec();
    let parent = mpc.into_states().iter().map(parent_of).collect();
    Ok(PathOrientation { parent, steps, trace })
}

fn is_member(st: &NodeState) -> bool {
    st.kind == Kind::Internal && matches!(st.status, Status::Active | Status::Passive)
}

fn reset(mut st: NodeState) -> NodeState {
    st.internal = None;
    if is_member(&st) {
        st.status = Status::Active;
    }
    st
}

/// Role of this node on the path through input edge `j`: `None` for an
/// internal node, a tag for an endpoint. Returns the outer `None` when the
/// edge carries no message.
fn edge_role(st: &NodeState, j: usize) -> Option<Option<Tag>> {
    if st.sides[j].set_aside_in {
        return Some(Some(Tag::Sink));
    }
    match st.status {
        Status::Source { toward, .. } if st.nbrs[j] == toward => Some(Some(Tag::Source)),
        _ if is_member(st) && st.sides[j].residual => Some(None),
        _ => None,
    }
}

fn start(_: usize, st: &mut NodeState, inbox: &[Msg], out: &mut Outbox<Msg>) {
    if !is_member(st) {
        return;
    }
    let via: Vec<usize> = st.residual_sides().collect();
    let mut links = [Link::internal(st.nbrs[via[0]]), Link::internal(st.nbrs[via[1]])];
    for msg in inbox {
        let Msg::EdgeRole { from, tag } = *msg else { continue };
        let Some(k) = links.iter().position(|l| l.node == from) else { continue };
        if let Some(tag) = tag {
            links[k] = Link {
                tag,
                ..Link::endpoint(from)
            };
        }
    }
    st.internal = Some(Internal {
        links,
        via: [via[0], via[1]],
    });
    exponentiate(st, out, true);
}

fn knows_direction(st: &NodeState) -> bool {
    match &st.internal {
        Some(int) if is_member(st) => int.links.iter().any(|l| l.tag != Tag::Unknown),
        _ => true,
    }
}

fn parent_of(st: &NodeState) -> Option<usize> {
    match st.status {
        Status::Root => None,
        Status::Source { toward, .. } => Some(toward),
        _ => {
            let int = st.internal.as_ref().expect("path member");
            let k = int.links.iter().position(|l| l.tag != Tag::Unknown).expect("direction known");
            let toward_sink = if int.links[k].tag == Tag::Sink { k } else { 1 - k };
            Some(st.nbrs[int.via[toward_sink]])
        }
    }
}
