use crate::tree::BroadcastTree;
use crate::{MpcConfig, MpcError, RoundTrace, Words};

/// Messages a machine sends during one superstep.
#[derive(Debug)]
pub struct Outbox<M> {
    sent: Vec<(usize, M)>,
}

impl<M> Outbox<M> {
    fn new() -> Self {
        Outbox { sent: Vec::new() }
    }

    /// Queues `msg` for delivery to machine `to` at the next barrier.
    pub fn send(&mut self, to: usize, msg: M) {
        self.sent.push((to, msg));
    }

    pub fn len(&self) -> usize {
        self.sent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sent.is_empty()
    }
}

/// Size of the simulated input, which fixes the memory capacities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProblemSize {
    pub nodes: usize,
    pub edges: usize,
}

/// Capacities and running totals for the memory ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryLedger {
    pub local_capacity: usize,
    pub global_capacity: usize,
    pub peak_local: usize,
    pub peak_global: usize,
    resident: Vec<usize>,
}

impl MemoryLedger {
    fn new(config: &MpcConfig, size: ProblemSize, machines: usize) -> Self {
        MemoryLedger {
            local_capacity: config.c_local * config.fanout(size.nodes),
            global_capacity: config.c_global * size.edges.max(size.nodes.saturating_sub(1)).max(1),
            peak_local: 0,
            peak_global: 0,
            resident: vec![0; machines],
        }
    }

    /// Resident words per machine at the last barrier.
    pub fn resident(&self) -> &[usize] {
        &self.resident
    }
}

/// A synchronous message-passing simulation with one virtual machine per node.
///
/// Every superstep runs one transition per machine. A transition sees only its
/// own state and the messages delivered to it, which arrive ordered by sender
/// and then by send order, so the outcome does not depend on the order in
/// which machines are evaluated.
#[derive(Debug)]
pub struct Mpc<S, M> {
    config: MpcConfig,
    size: ProblemSize,
    states: Vec<S>,
    inboxes: Vec<Vec<M>>,
    ledger: MemoryLedger,
    trace: Vec<RoundTrace>,
}

impl<S, M> Mpc<S, M>
where
    S: Words + Clone + PartialEq,
    M: Words + Clone + PartialEq,
{
    pub fn new(states: Vec<S>, size: ProblemSize, config: MpcConfig) -> Self {
        let machines = states.len();
        Mpc {
            ledger: MemoryLedger::new(&config, size, machines),
            inboxes: (0..machines).map(|_| Vec::new()).collect(),
            config,
            size,
            states,
            trace: Vec::new(),
        }
    }

    pub fn config(&self) -> &MpcConfig {
        &self.config
    }

    pub fn size(&self) -> ProblemSize {
        self.size
    }

    pub fn machines(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn into_states(self) -> Vec<S> {
        self.states
    }

    pub fn ledger(&self) -> &MemoryLedger {
        &self.ledger
    }

    pub fn trace(&self) -> &[RoundTrace] {
        &self.trace
    }

    pub fn rounds(&self) -> usize {
        self.trace.len()
    }

    /// Messages waiting for machine `id` at the next superstep.
    pub fn pending(&self, id: usize) -> &[M] {
        &self.inboxes[id]
    }

    /// Runs one superstep: every machine transitions, then all messages are
    /// delivered at the barrier and the ledger is checked.
    pub fn superstep<F>(&mut self, step: F) -> Result<&RoundTrace, MpcError>
    where
        F: Fn(usize, &mut S, &[M], &mut Outbox<M>),
    {
        let round = self.trace.len();
        let inboxes = std::mem::replace(
            &mut self.inboxes,
            (0..self.states.len()).map(|_| Vec::new()).collect(),
        );
        let shadow = self
            .config
            .nondeterminism_check
            .then(|| self.evaluate_on_copy(&inboxes, &step));

        let machines = self.states.len();
        let mut outboxes: Vec<Outbox<M>> = (0..machines).map(|_| Outbox::new()).collect();
        let order: Box<dyn Iterator<Item = usize>> = if self.config.reverse_order {
            Box::new((0..machines).rev())
        } else {
            Box::new(0..machines)
        };
        for id in order {
            step(id, &mut self.states[id], &inboxes[id], &mut outboxes[id]);
        }

        if let Some((states, sent)) = shadow {
            let same_sent = sent
                .iter()
                .zip(&outboxes)
                .all(|(a, b)| a.sent == b.sent);
            if states != self.states || !same_sent {
                return Err(MpcError::Nondeterminism { round });
            }
        }
        self.barrier(round, &inboxes, outboxes)
    }

    fn evaluate_on_copy<F>(&self, inboxes: &[Vec<M>], step: &F) -> (Vec<S>, Vec<Outbox<M>>)
    where
        F: Fn(usize, &mut S, &[M], &mut Outbox<M>),
    {
        let mut states = self.states.clone();
        let machines = states.len();
        let mut outboxes: Vec<Outbox<M>> = (0..machines).map(|_| Outbox::new()).collect();
        let order: Box<dyn Iterator<Item = usize>> = if self.config.reverse_order {
            Box::new(0..machines)
        } else {
            Box::new((0..machines).rev())
        };
        for id in order {
            step(id, &mut states[id], &inboxes[id], &mut outboxes[id]);
        }
        (states, outboxes)
    }

    fn barrier(
        &mut self,
        round: usize,
        consumed: &[Vec<M>],
        outboxes: Vec<Outbox<M>>,
    ) -> Result<&RoundTrace, MpcError> {
        let machines = self.states.len();
        let mut peak_local = 0;
        let mut global = 0;
        let mut messages = 0;
        let mut violation = None;
        for id in 0..machines {
            let state = &self.states[id];
            let resident = state.words();
            let local_state = resident - state.forwarded_words();
            let local_in: usize = consumed[id].iter().map(|m| m.words() - m.forwarded_words()).sum();
            let local_out: usize = outboxes[id].sent.iter().map(|(_, m)| m.words() - m.forwarded_words()).sum();
            let local = local_state + local_in + local_out;
            peak_local = peak_local.max(local);
            global += resident;
            self.ledger.resident[id] = resident;
            if violation.is_none() && local > self.ledger.local_capacity {
                violation = Some(MpcError::MemoryViolation {
                    round,
                    machine: id,
                    words: local,
                    capacity: self.ledger.local_capacity,
                });
            }
        }
        for (from, outbox) in outboxes.into_iter().enumerate() {
            for (to, msg) in outbox.sent {
                if to >= machines {
                    return Err(MpcError::InvalidRecipient { round, from, to });
                }
                messages += 1;
                global += msg.words();
                self.inboxes[to].push(msg);
            }
        }
        self.record(round, messages, peak_local, global);
        if self.config.enforce_memory {
            if let Some(err) = violation {
                return Err(err);
            }
            if global > self.ledger.global_capacity {
                return Err(MpcError::GlobalMemoryViolation {
                    round,
                    words: global,
                    capacity: self.ledger.global_capacity,
                });
            }
        }
        Ok(self.trace.last().expect("just recorded"))
    }

    fn record(&mut self, round: usize, messages: usize, peak_local: usize, global: usize) {
        self.ledger.peak_local = self.ledger.peak_local.max(peak_local);
        self.ledger.peak_global = self.ledger.peak_global.max(global);
        self.trace.push(RoundTrace {
            round,
            messages,
            peak_local_words: peak_local,
            global_words: global,
        });
    }

    /// Accounts `rounds` supersteps of a communication pattern that is not
    /// simulated message by message, with memory unchanged.
    pub fn charge_rounds(&mut self, rounds: usize) {
        let peak = self.current_peak_local();
        let global: usize = self.ledger.resident.iter().sum();
        for _ in 0..rounds {
            let round = self.trace.len();
            self.record(round, 0, peak, global);
        }
    }

    fn current_peak_local(&self) -> usize {
        self.states
            .iter()
            .map(|s| s.words() - s.forwarded_words())
            .max()
            .unwrap_or(0)
    }

    /// Recomputes resident words from the states and compares them with the ledger.
    pub fn audit(&self) -> bool {
        self.states
            .iter()
            .zip(&self.ledger.resident)
            .all(|(s, &r)| s.words() == r)
    }

    pub fn broadcast_tree(&self) -> BroadcastTree {
        BroadcastTree::new(self.machines(), self.config.fanout(self.size.nodes))
    }

    /// Folds one word per machine up the broadcast tree; the root learns the result.
    pub fn convergecast(&mut self, values: &[u64], combine: impl Fn(u64, u64) -> u64) -> Result<u64, MpcError> {
        assert_eq!(values.len(), self.machines(), "one value per machine");
        if values.is_empty() {
            return Ok(0);
        }
        let tree = self.broadcast_tree();
        let mut acc = values.to_vec();
        for depth in (1..=tree.depth()).rev() {
            let senders: Vec<usize> = (0..self.machines()).filter(|&i| tree.depth_of(i) == depth).collect();
            for &i in &senders {
                let p = tree.parent(i).expect("non-root has a parent");
                acc[p] = combine(acc[p], acc[i]);
            }
            self.control_round(senders.len())?;
        }
        Ok(acc[0])
    }

    /// Sends one word from the root to every machine down the broadcast tree.
    pub fn broadcast(&mut self, value: u64) -> Result<Vec<u64>, MpcError> {
        let tree = self.broadcast_tree();
        let mut held: Vec<Option<u64>> = vec![None; self.machines()];
        if let Some(root) = held.first_mut() {
            *root = Some(value);
        }
        for depth in 1..=tree.depth() {
            let receivers: Vec<usize> = (0..self.machines()).filter(|&i| tree.depth_of(i) == depth).collect();
            for &i in &receivers {
                held[i] = held[tree.parent(i).expect("non-root has a parent")];
            }
            self.control_round(receivers.len())?;
        }
        Ok(held.into_iter().map(|v| v.expect("every machine reached")).collect())
    }

    /// Conjunction of one flag per machine, made known to every machine.
    pub fn all_done(&mut self, flags: &[bool]) -> Result<bool, MpcError> {
        let values: Vec<u64> = flags.iter().map(|&f| u64::from(f)).collect();
        let all = self.convergecast(&values, |a, b| a & b)?;
        let everywhere = self.broadcast(all)?;
        Ok(everywhere.first().is_none_or(|&v| v == 1))
    }

    /// One superstep in which `messages` single-word control messages travel;
    /// each machine holds at most `fanout` of them.
    fn control_round(&mut self, messages: usize) -> Result<(), MpcError> {
        let round = self.trace.len();
        let fanout = self.config.fanout(self.size.nodes);
        let peak = self.current_peak_local() + fanout.min(messages);
        let global: usize = self.states.iter().map(Words::words).sum::<usize>() + messages;
        self.record(round, messages, peak, global);
        if self.config.enforce_memory && peak > self.ledger.local_capacity {
            return Err(MpcError::MemoryViolation {
                round,
                machine: 0,
                words: peak,
                capacity: self.ledger.local_capacity,
            });
        }
        Ok(())
    }
}
