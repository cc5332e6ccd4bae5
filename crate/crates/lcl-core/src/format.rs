//! LCL v1: a line-based text format.
//!
//! ```text
//! LCL v1
//! sigma_in: ⊥
//! sigma_out: 0 1 2
//! node 1: {0} {1} {2}
//! node 2: {0 0} {1 1} {2 2}
//! edge: {0 1} {0 2} {1 2}
//! g: ⊥ -> 0 1 2
//! ```
//!
//! Degrees without a `node` line have no allowed configuration; Δ is the
//! largest degree listed. `#` starts a comment line.

use std::fmt::Write as _;

use crate::{Label, LclError, NodeEdgeLcl};

const HEADER: &str = "LCL v1";

fn err(line: usize, message: impl Into<String>) -> LclError {
    LclError::Parse {
        line,
        message: message.into(),
    }
}

fn multisets(body: &str, line: usize) -> Result<Vec<Vec<&str>>, LclError> {
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('{')
            .ok_or_else(|| err(line, format!("expected `{{` at `{rest}`")))?;
        let close = inner
            .find('}')
            .ok_or_else(|| err(line, "unterminated multiset"))?;
        out.push(inner[..close].split_whitespace().collect());
        rest = inner[close + 1..].trim_start();
    }
    Ok(out)
}

pub fn parse_lcl(text: &str) -> Result<NodeEdgeLcl, LclError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((line, other)) => return Err(err(line, format!("expected `{HEADER}`, found `{other}`"))),
        None => return Err(err(1, format!("missing `{HEADER}` header"))),
    }

    let mut sigma_in: Option<Vec<String>> = None;
    let mut sigma_out: Option<Vec<String>> = None;
    let mut node_lines: Vec<(usize, usize, String)> = Vec::new();
    let mut edge_line: Option<(usize, String)> = None;
    let mut g_lines: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (line, content) in lines {
        let (key, body) = content
            .split_once(':')
            .ok_or_else(|| err(line, "expected `<key>: <value>`"))?;
        let key = key.trim();
        let words = || body.split_whitespace().map(str::to_string).collect::<Vec<_>>();
        match key {
            "sigma_in" => sigma_in = Some(words()),
            "sigma_out" => sigma_out = Some(words()),
            "edge" => {
                if edge_line.replace((line, body.to_string())).is_some() {
                    return Err(err(line, "edge constraint given twice"));
                }
            }
            "g" => {
                let (input, outs) = body
                    .split_once("->")
                    .ok_or_else(|| err(line, "expected `g: <in> -> <outs>`"))?;
                let input = input.trim();
                if input.is_empty() || input.contains(char::is_whitespace) {
                    return Err(err(line, "expected exactly one input symbol"));
                }
                g_lines.push((line, input.to_string(), outs.split_whitespace().map(str::to_string).collect()));
            }
            _ => {
                let degree = key
                    .strip_prefix("node ")
                    .and_then(|d| d.trim().parse::<usize>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| err(line, format!("unknown key `{key}`")))?;
                node_lines.push((line, degree, body.to_string()));
            }
        }
    }

    let sigma_in = sigma_in.ok_or_else(|| err(1, "missing `sigma_in`"))?;
    let sigma_out = sigma_out.ok_or_else(|| err(1, "missing `sigma_out`"))?;
    let out_index = |s: &str, line: usize| -> Result<Label, LclError> {
        sigma_out
            .iter()
            .position(|o| o == s)
            .map(|i| i as Label)
            .ok_or_else(|| LclError::AlphabetMismatch(format!("line {line}: output symbol `{s}`")))
    };

    let max_degree = node_lines.iter().map(|&(_, d, _)| d).max().unwrap_or(0);
    let mut node: Vec<Option<Vec<Vec<Label>>>> = vec![None; max_degree];
    for (line, degree, body) in &node_lines {
        let mut configs = Vec::new();
        for m in multisets(body, *line)? {
            if m.len() != *degree {
                return Err(LclError::CardinalityViolation {
                    degree: *degree,
                    found: m.len(),
                });
            }
            configs.push(m.iter().map(|s| out_index(s, *line)).collect::<Result<Vec<_>, _>>()?);
        }
        if node[degree - 1].replace(configs).is_some() {
            return Err(err(*line, format!("degree {degree} given twice")));
        }
    }

    let mut edge = Vec::new();
    if let Some((line, body)) = &edge_line {
        for m in multisets(body, *line)? {
            if m.len() != 2 {
                return Err(LclError::CardinalityViolation { degree: 2, found: m.len() });
            }
            edge.push((out_index(m[0], *line)?, out_index(m[1], *line)?));
        }
    }

    let mut input_map: Vec<Option<Vec<Label>>> = vec![None; sigma_in.len()];
    for (line, input, outs) in g_lines {
        let i = sigma_in
            .iter()
            .position(|s| *s == input)
            .ok_or_else(|| LclError::AlphabetMismatch(format!("line {line}: input symbol `{input}`")))?;
        let outs = outs.iter().map(|s| out_index(s, line)).collect::<Result<Vec<_>, _>>()?;
        if input_map[i].replace(outs).is_some() {
            return Err(err(line, format!("input `{input}` mapped twice")));
        }
    }
    let input_map = input_map
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(LclError::PartialInputMap)?;

    NodeEdgeLcl::new(
        sigma_in,
        sigma_out,
        node.into_iter().map(Option::unwrap_or_default).collect(),
        edge,
        input_map,
    )
}

pub fn serialize_lcl(lcl: &NodeEdgeLcl) -> String {
    let out = |l: &Label| lcl.sigma_out()[*l as usize].as_str();
    let mut s = String::new();
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(s, "sigma_in: {}", lcl.sigma_in().join(" "));
    let _ = writeln!(s, "sigma_out: {}", lcl.sigma_out().join(" "));
    for d in 1..=lcl.max_degree() {
        let _ = write!(s, "node {d}:");
        for m in lcl.node_configs(d).into_iter().flatten() {
            let _ = write!(s, " {{{}}}", m.iter().map(out).collect::<Vec<_>>().join(" "));
        }
        s.push('\n');
    }
    let _ = write!(s, "edge:");
    for (a, b) in lcl.edge_configs() {
        let _ = write!(s, " {{{} {}}}", out(a), out(b));
    }
    s.push('\n');
    for (i, input) in lcl.sigma_in().iter().enumerate() {
        let outs: Vec<_> = lcl.allowed_outputs(i as Label).iter().map(out).collect();
        let _ = writeln!(s, "g: {input} -> {}", outs.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{builtin, BUILTIN_NAMES};

    const THREE_COLORING: &str = "LCL v1
sigma_in: ⊥
sigma_out: 0 1 2
node 1: {0} {1} {2}
node 2: {0 0} {1 1} {2 2}
node 3: {0 0 0} {1 1 1} {2 2 2}
edge: {0 1} {0 2} {1 2}
g: ⊥ -> 0 1 2
";

    #[test]
    fn three_coloring_file_equals_builtin() {
        assert_eq!(parse_lcl(THREE_COLORING).unwrap(), builtin("three-coloring", 3).unwrap());
        assert_eq!(serialize_lcl(&builtin("three-coloring", 3).unwrap()), THREE_COLORING);
    }

    #[test]
    fn wrong_cardinality_is_rejected() {
        let text = THREE_COLORING.replace("node 2: {0 0}", "node 2: {0 0 0}");
        assert_eq!(
            parse_lcl(&text),
            Err(LclError::CardinalityViolation { degree: 2, found: 3 })
        );
    }

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            for delta in 1..=4 {
                let p = builtin(name, delta).unwrap();
                assert_eq!(parse_lcl(&serialize_lcl(&p)).unwrap(), p, "{name} Δ={delta}");
            }
        }
    }

    #[test]
    fn unknown_symbols_and_missing_map() {
        let text = THREE_COLORING.replace("edge: {0 1}", "edge: {0 7}");
        assert!(matches!(parse_lcl(&text), Err(LclError::AlphabetMismatch(_))));
        let text = THREE_COLORING.replace("g: ⊥ -> 0 1 2\n", "");
        assert_eq!(parse_lcl(&text), Err(LclError::PartialInputMap));
        assert!(matches!(parse_lcl("LCL v2"), Err(LclError::Parse { line: 1, .. })));
    }
}
