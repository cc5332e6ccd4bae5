use graph_core::Forest;
use mpc_sim::{Mpc, MpcConfig, MpcError, ProblemSize, RoundTrace};

use crate::engine::{apply_links, exponentiate, snapshot};
use crate::state::{Kind, Msg, NodeState, Status};

/// Outcome of path exponentiation on a single path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathExponentiation {
    /// Exponentiation steps until the endpoints share a virtual edge.
    pub steps: usize,
    /// Every internal node ended linked to both endpoints.
    pub internal_linked_to_both: bool,
    /// Most virtual edges any node stored at a barrier.
    pub max_virtual_edges: usize,
    pub trace: Vec<RoundTrace>,
}

/// Runs path exponentiation on the path with `nodes` nodes until its two ends
/// share a virtual edge.
pub fn path_exponentiation(nodes: usize, config: &MpcConfig) -> Result<PathExponentiation, MpcError> {
    assert!(nodes >= 2, "a path needs two endpoints");
    let edges: Vec<(usize, usize)> = (1..nodes).map(|v| (v - 1, v)).collect();
    let f = Forest::with_sequential_ids(nodes, &edges, 2).expect("a path is a valid forest");
    let states = (0..nodes).map(|v| NodeState::new(v, f.neighbors(v).to_vec())).collect();
    let size = ProblemSize {
        nodes,
        edges: nodes - 1,
    };
    let mut mpc: Mpc<NodeState, Msg> = Mpc::new(states, size, *config);
    mpc.superstep(|_, st, _, out| {
        for &u in &st.nbrs {
            out.send(u, Msg::Hello { from: st.me, degree: st.nbrs.len() });
        }
    })?;
    let (s, t) = (0, nodes - 1);
    let mut steps = 0;
    let mut max_virtual_edges = 0;
    loop {
        let view = snapshot(mpc.states(), |v| mpc.pending(v));
        max_virtual_edges = view.iter().map(NodeState::virtual_edges).max().unwrap_or(0).max(max_virtual_edges);
        if view[s].sides[0].tracked.node == t && view[t].sides[0].tracked.node == s {
            let internal_linked_to_both = view[1..t].iter().all(|st| {
                let int = st.internal.as_ref().expect("internal node");
                let mut ends = [int.links[0].node, int.links[1].node];
                ends.sort_unstable();
                ends == [s, t]
            });
            return Ok(PathExponentiation {
                steps,
                internal_linked_to_both,
                max_virtual_edges,
                trace: mpc.trace().to_vec(),
            });
        }
        mpc.superstep(|_, st, inbox, out| {
            apply_links(st, inbox);
            if st.status == Status::Active && st.kind == Kind::Internal {
                exponentiate(st, out, false);
            }
        })?;
        steps += 1;
    }
}
