/// Simulator parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MpcConfig {
    /// Local memory exponent δ ∈ (0, 1).
    pub delta: f64,
    /// Local capacity is `c_local · ⌈n^δ⌉` words.
    pub c_local: usize,
    /// Global capacity is `c_global · m` words.
    pub c_global: usize,
    /// Re-evaluate every superstep in the opposite machine order and compare.
    pub nondeterminism_check: bool,
    /// Evaluate machines from the highest address down.
    pub reverse_order: bool,
    /// Fail on capacity violations; when off the ledger only records peaks.
    pub enforce_memory: bool,
}

impl Default for MpcConfig {
    fn default() -> Self {
        MpcConfig {
            delta: 0.5,
            c_local: 8,
            c_global: 16,
            nondeterminism_check: false,
            reverse_order: false,
            enforce_memory: true,
        }
    }
}

impl MpcConfig {
    pub fn with_delta(delta: f64) -> Self {
        MpcConfig {
            delta,
            ..MpcConfig::default()
        }
    }

    /// `⌈n^δ⌉`, the broadcast fanout and the unit of local capacity.
    pub fn fanout(&self, n: usize) -> usize {
        let x = (n.max(1) as f64).powf(self.delta);
        ((x - 1e-9).ceil() as usize).max(1)
    }
}
