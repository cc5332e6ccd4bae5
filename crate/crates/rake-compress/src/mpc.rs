use std::collections::BTreeSet;

use graph_core::Forest;
use mpc_sim::{Mpc, MpcConfig, Outbox, ProblemSize, RoundTrace, Words};

use crate::ball::{depths, grow, prune, simulate, Ball};
use crate::decomposition::Decomposition;
use crate::error::DecompError;
use crate::promote::promote;
use crate::tags::{Tag, TagKind};

/// Tuning of the decomposition schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeParams {
    /// Minimum length of a compressed path.
    pub l: usize,
    /// Peels per phase; `None` uses `2c` with `c` from [`peel_constant`].
    pub repeats: Option<usize>,
}

impl Default for DecomposeParams {
    fn default() -> Self {
        DecomposeParams { l: 4, repeats: None }
    }
}

/// The smallest `c` with `(1 − 1/(4l))^c < 1/Δ`: after `c` tag iterations at
/// most a `1/Δ` fraction of the residual nodes survives.
pub fn peel_constant(l: usize, max_degree: usize) -> usize {
    let keep = 1.0 - 1.0 / (4.0 * l as f64);
    let target = 1.0 / max_degree.max(2) as f64;
    let mut c = 1;
    while keep.powi(c as i32) >= target {
        c += 1;
    }
    c
}

/// Phases of the exponentiation schedule: `⌊log₂(δ·log₂ n)⌋`, or 0 when that
/// is below 1.
pub fn planned_phases(n: usize, delta: f64) -> usize {
    let x = delta * (n.max(1) as f64).log2();
    if x >= 1.0 {
        x.log2().floor() as usize
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposeStats {
    /// Exponentiation phases run before the residual graph emptied.
    pub exponentiation_phases: usize,
    /// Final large peels, each preceded by an emptiness check.
    pub final_peels: usize,
    /// Peels per exponentiation phase.
    pub repeats: usize,
    /// Tag iterations simulated, including ones on an empty residual graph.
    pub iterations: usize,
    /// Residual node count after each exponentiation phase.
    pub residual_after_phase: Vec<usize>,
    /// Largest radius any node could see.
    pub max_vision: usize,
    pub rounds: usize,
}

impl DecomposeStats {
    pub fn phases(&self) -> usize {
        self.exponentiation_phases + self.final_peels
    }
}

#[derive(Clone, Debug)]
pub struct MpcDecomposition {
    pub decomposition: Decomposition,
    pub stats: DecomposeStats,
    pub trace: Vec<RoundTrace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Known {
    nbr: usize,
    degree: usize,
    reach: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Machine {
    me: usize,
    alive: bool,
    tag: Option<Tag>,
    ball: Ball,
    known: Vec<Known>,
}

impl Machine {
    fn nbrs(&self) -> impl Iterator<Item = usize> + '_ {
        self.ball.iter().filter(|&&(_, p)| p == self.me).map(|&(m, _)| m)
    }

    fn absorb(&mut self, inbox: &[Msg]) {
        let mut removed = BTreeSet::new();
        for msg in inbox {
            match *msg {
                Msg::Removed { from } => {
                    removed.insert(from);
                }
                Msg::Degree { from, degree } => self.known.push(Known {
                    nbr: from,
                    degree,
                    reach: usize::from(degree == 2),
                }),
                Msg::Reach { from, run } => {
                    if let Some(k) = self.known.iter_mut().find(|k| k.nbr == from) {
                        k.reach = run;
                    }
                }
                Msg::Ball { .. } => {}
            }
        }
        if !removed.is_empty() {
            prune(self.me, &mut self.ball, &removed);
        }
    }

    fn remove(&mut self, tag: Tag, out: &mut Outbox<Msg>) {
        self.tag = Some(tag);
        self.alive = false;
        for &(m, _) in &self.ball {
            out.send(m, Msg::Removed { from: self.me });
        }
    }
}

impl Words for Machine {
    fn words(&self) -> usize {
        // Neighbors need no parent word; a known neighbor adds one word with
        // its degree and run length to its ball entry; the tag packs with the
        // alive flag.
        let ball: usize = self.ball.iter().map(|&(_, p)| if p == self.me { 1 } else { 2 }).sum();
        2 + ball + self.known.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Msg {
    Degree { from: usize, degree: usize },
    Reach { from: usize, run: usize },
    Removed { from: usize },
    Ball { from: usize, members: Ball },
}

impl Words for Msg {
    fn words(&self) -> usize {
        match self {
            Msg::Removed { .. } => 1,
            Msg::Degree { .. } | Msg::Reach { .. } => 2,
            Msg::Ball { members, .. } => 1 + 2 * members.len(),
        }
    }
}

struct Runner {
    mpc: Mpc<Machine, Msg>,
    l: usize,
    iteration: usize,
    vision: usize,
}

impl Runner {
    fn empty(&mut self) -> Result<bool, DecompError> {
        let flags: Vec<bool> = self.mpc.states().iter().map(|s| !s.alive).collect();
        Ok(self.mpc.all_done(&flags)?)
    }

    fn residual(&self) -> usize {
        self.mpc.states().iter().filter(|s| s.alive).count()
    }

    fn peel(&mut self, layers: usize) -> Result<(), DecompError> {
        let batch = self.vision / self.l;
        let mut left = layers;
        while left > 0 {
            if batch == 0 {
                self.run_length_iteration()?;
                left -= 1;
            } else {
                let rounds = left.min(batch);
                self.batch(rounds)?;
                left -= rounds;
            }
        }
        Ok(())
    }

    /// One tag iteration through neighbor messages only: a degree exchange,
    /// `l − 2` rounds extending the known run of degree-2 nodes on each side,
    /// and a decision round that notifies neighbors of removals.
    fn run_length_iteration(&mut self) -> Result<(), DecompError> {
        let (l, iteration) = (self.l, self.iteration);
        self.mpc.superstep(|_, st, inbox, out| {
            st.known.clear();
            st.absorb(inbox);
            if st.alive {
                let degree = st.nbrs().count();
                for u in st.nbrs().collect::<Vec<_>>() {
                    out.send(u, Msg::Degree { from: st.me, degree });
                }
            }
        })?;
        for _ in 0..l - 2 {
            self.mpc.superstep(|_, st, inbox, out| {
                st.absorb(inbox);
                if st.alive && st.known.len() == 2 {
                    for (i, k) in st.known.iter().enumerate() {
                        let run = (1 + st.known[1 - i].reach).min(l);
                        out.send(k.nbr, Msg::Reach { from: st.me, run });
                    }
                }
            })?;
        }
        self.mpc.superstep(|_, st, inbox, out| {
            st.absorb(inbox);
            if !st.alive {
                return;
            }
            let kind = match st.known[..] {
                [] => Some(TagKind::Rake),
                [k] => (k.degree > 1 || st.me > k.nbr).then_some(TagKind::Rake),
                [a, b] => (1 + a.reach + b.reach >= l).then_some(TagKind::Compress),
                _ => None,
            };
            if let Some(kind) = kind {
                st.remove(Tag { iteration, kind }, out);
            }
        })?;
        self.iteration += 1;
        Ok(())
    }

    /// Every node simulates `rounds` iterations on its ball in one superstep.
    fn batch(&mut self, rounds: usize) -> Result<(), DecompError> {
        let (l, iteration) = (self.l, self.iteration);
        self.mpc.superstep(|_, st, inbox, out| {
            st.absorb(inbox);
            if !st.alive {
                return;
            }
            if let Some((j, kind)) = simulate(st.me, &st.ball, rounds, l) {
                st.remove(Tag { iteration: iteration + j, kind }, out);
            }
        })?;
        self.iteration += rounds;
        Ok(())
    }

    /// Doubles the vision radius: nodes on the rim of a ball send their own
    /// ball to its center, which unions what it receives.
    fn exponentiate(&mut self) -> Result<(), DecompError> {
        let radius = self.vision;
        self.mpc.superstep(|_, st, inbox, out| {
            st.absorb(inbox);
            if !st.alive {
                return;
            }
            for (&(m, _), d) in st.ball.iter().zip(depths(st.me, &st.ball)) {
                if d == radius {
                    out.send(
                        m,
                        Msg::Ball {
                            from: st.me,
                            members: st.ball.clone(),
                        },
                    );
                }
            }
        })?;
        self.mpc.superstep(|_, st, inbox, _| {
            if !st.alive {
                return;
            }
            let mut edges = st.ball.clone();
            for msg in inbox {
                if let Msg::Ball { members, .. } = msg {
                    edges.extend_from_slice(members);
                }
            }
            st.ball = grow(st.me, edges, 2 * radius);
        })?;
        self.vision *= 2;
        Ok(())
    }
}

/// Computes the decomposition in low-space MPC.
///
/// Phase `i` runs `2c` peels of `2^{i−1}` layers each and then doubles the
/// vision radius, until nodes see about `δ·log₂ n` hops; after that, peels of
/// that many layers repeat until the residual graph is empty. The promotion
/// step is evaluated centrally and charged its stage count in rounds.
pub fn decompose(f: &Forest, params: &DecomposeParams, config: &MpcConfig) -> Result<MpcDecomposition, DecompError> {
    let l = params.l;
    assert!(l >= 2, "path-length constant must be at least 2");
    let n = f.node_count();
    let states = (0..n)
        .map(|v| Machine {
            me: v,
            alive: true,
            tag: None,
            ball: f.neighbors(v).iter().map(|&u| (u, v)).collect(),
            known: Vec::new(),
        })
        .collect();
    let size = ProblemSize {
        nodes: n,
        edges: f.edge_count(),
    };
    let mut run = Runner {
        mpc: Mpc::new(states, size, *config),
        l,
        iteration: 1,
        vision: 1,
    };
    let repeats = params
        .repeats
        .unwrap_or_else(|| 2 * peel_constant(l, f.max_degree()));
    let mut stats = DecomposeStats {
        exponentiation_phases: 0,
        final_peels: 0,
        repeats,
        iterations: 0,
        residual_after_phase: Vec::new(),
        max_vision: 1,
        rounds: 0,
    };
    for phase in 1..=planned_phases(n, config.delta) {
        if run.empty()? {
            break;
        }
        stats.exponentiation_phases += 1;
        for _ in 0..repeats {
            run.peel(1 << (phase - 1))?;
        }
        run.exponentiate()?;
        stats.residual_after_phase.push(run.residual());
    }
    let layers = run.vision;
    while !run.empty()? {
        run.peel(layers)?;
        stats.final_peels += 1;
    }
    let tags: Vec<Tag> = run
        .mpc
        .states()
        .iter()
        .map(|s| s.tag.expect("every node is tagged"))
        .collect();
    let promotion = promote(f, &tags, l);
    run.mpc.charge_rounds(promotion.stages);
    stats.iterations = run.iteration - 1;
    stats.max_vision = run.vision;
    stats.rounds = run.mpc.rounds();
    Ok(MpcDecomposition {
        decomposition: promotion.decomposition,
        stats,
        trace: run.mpc.trace().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_for_default_parameters() {
        assert_eq!(peel_constant(4, 3), 18);
        assert!(0.9375f64.powi(17) >= 1.0 / 3.0);
    }

    #[test]
    fn planned_phases_follow_log_log() {
        assert_eq!(planned_phases(1, 0.5), 0);
        assert_eq!(planned_phases(16, 0.5), 1);
        assert_eq!(planned_phases(1 << 14, 0.5), 2);
        assert_eq!(planned_phases(1 << 16, 0.5), 3);
    }
}
