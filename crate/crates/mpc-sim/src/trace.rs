use std::fmt::Write as _;

/// Per-superstep counters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RoundTrace {
    pub round: usize,
    pub messages: usize,
    pub peak_local_words: usize,
    pub global_words: usize,
}

pub const TRACE_HEADER: &str = "round,messages,peak_local_words,global_words";

/// Appends `next` to `trace`, renumbering its rounds to follow on.
pub fn extend_trace(trace: &mut Vec<RoundTrace>, next: &[RoundTrace]) {
    let offset = trace.len();
    trace.extend(next.iter().enumerate().map(|(i, r)| RoundTrace { round: offset + i, ..*r }));
}

/// Renders a trace as CSV with a header row.
pub fn trace_csv(trace: &[RoundTrace]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for r in trace {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.round, r.messages, r.peak_local_words, r.global_words
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round(round: usize, messages: usize) -> RoundTrace {
        RoundTrace { round, messages, peak_local_words: 1, global_words: 2 }
    }

    #[test]
    fn extension_renumbers() {
        let mut t = vec![round(0, 3)];
        extend_trace(&mut t, &[round(0, 5), round(1, 7)]);
        assert_eq!(t.iter().map(|r| (r.round, r.messages)).collect::<Vec<_>>(), [(0, 3), (1, 5), (2, 7)]);
        assert!(trace_csv(&t).starts_with("round,messages,peak_local_words,global_words\n0,3,1,2\n"));
    }
}
