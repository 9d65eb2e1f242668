//! The `perm-automaton v1` line format and DOT export.
//!
//! ```text
//! perm-automaton v1
//! k 2
//! states 3
//! initial 0
//! output 0 EQ
//! trans 0 0 0 0
//! ...
//! ```
//!
//! `#` starts a comment. `k` and `states` must precede the first `output`
//! or `trans` line; every state needs exactly one `output` line and every
//! `(state, a, b)` exactly one `trans` line.

use std::fmt::Write as _;

use super::ComparisonAutomaton;
use crate::error::{Error, Result};
use crate::perm::{Radix, Relation};

pub const HEADER: &str = "perm-automaton v1";

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found '{tok}'")))
}

pub fn parse_automaton(text: &str) -> Result<ComparisonAutomaton> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        Some((n, l)) => return Err(syntax(n, format!("expected '{HEADER}', found '{l}'"))),
        None => return Err(syntax(1, format!("missing '{HEADER}' header"))),
    }

    let mut radix: Option<Radix> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<(usize, usize)> = None;
    let mut outputs: Vec<Option<Relation>> = Vec::new();
    let mut transitions: Vec<Option<usize>> = Vec::new();

    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let body_ready = |radix: Option<Radix>, states: Option<usize>| match (radix, states) {
            (Some(r), Some(s)) => Ok((r, s)),
            _ => Err(syntax(
                n,
                "'k' and 'states' must come before outputs and transitions",
            )),
        };
        match toks.as_slice() {
            ["k", v] => {
                if radix.is_some() {
                    return Err(syntax(n, "duplicate 'k'"));
                }
                let k: u32 = number(n, v, "radix")?;
                radix = Some(Radix::new(k).map_err(|e| syntax(n, e.to_string()))?);
            }
            ["states", v] => {
                if states.is_some() {
                    return Err(syntax(n, "duplicate 'states'"));
                }
                let s: usize = number(n, v, "state count")?;
                if s == 0 {
                    return Err(syntax(n, "a machine needs at least one state"));
                }
                states = Some(s);
            }
            ["initial", v] => {
                if initial.is_some() {
                    return Err(syntax(n, "duplicate 'initial'"));
                }
                initial = Some((number(n, v, "state")?, n));
            }
            ["output", q, sym] => {
                let (_, s) = body_ready(radix, states)?;
                outputs.resize(s, None);
                let q: usize = number(n, q, "state")?;
                if q >= s {
                    return Err(syntax(n, format!("state {q} out of range")));
                }
                let sym: Relation = sym.parse().map_err(|e: String| syntax(n, e))?;
                if outputs[q].replace(sym).is_some() {
                    return Err(syntax(n, format!("duplicate output for state {q}")));
                }
            }
            ["trans", q, a, b, t] => {
                let (r, s) = body_ready(radix, states)?;
                let k = r.get();
                transitions.resize(s * r.pair_letters(), None);
                let q: usize = number(n, q, "state")?;
                let a: u32 = number(n, a, "digit")?;
                let b: u32 = number(n, b, "digit")?;
                let t: usize = number(n, t, "state")?;
                if q >= s || t >= s {
                    return Err(syntax(n, "state out of range"));
                }
                if a >= k || b >= k {
                    return Err(syntax(n, format!("digit not below radix {k}")));
                }
                let slot =
                    &mut transitions[(q * k as usize + a as usize) * k as usize + b as usize];
                if slot.replace(t).is_some() {
                    return Err(syntax(n, format!("duplicate transition ({q},{a},{b})")));
                }
            }
            _ => return Err(syntax(n, format!("unrecognized line '{line}'"))),
        }
    }

    let radix = radix.ok_or_else(|| syntax(0, "missing 'k'"))?;
    let s = states.ok_or_else(|| syntax(0, "missing 'states'"))?;
    let (initial, initial_line) = initial.ok_or_else(|| syntax(0, "missing 'initial'"))?;
    if initial >= s {
        return Err(syntax(
            initial_line,
            format!("initial state {initial} out of range"),
        ));
    }
    outputs.resize(s, None);
    transitions.resize(s * radix.pair_letters(), None);

    let k = radix.get() as usize;
    let missing_outputs: Vec<usize> = (0..s).filter(|&q| outputs[q].is_none()).collect();
    let missing_transitions: Vec<(usize, u32, u32)> = transitions
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_none())
        .map(|(idx, _)| (idx / (k * k), ((idx / k) % k) as u32, (idx % k) as u32))
        .collect();
    if !missing_outputs.is_empty() || !missing_transitions.is_empty() {
        return Err(Error::Incomplete {
            outputs: missing_outputs,
            transitions: missing_transitions,
        });
    }

    ComparisonAutomaton::new(
        radix,
        initial,
        outputs.into_iter().flatten().collect(),
        transitions.into_iter().flatten().collect(),
    )
}

/// Canonical text: states in index order, transitions sorted by `(state, a, b)`.
pub fn serialize_automaton(m: &ComparisonAutomaton) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "k {}", m.radix()).unwrap();
    writeln!(out, "states {}", m.state_count()).unwrap();
    writeln!(out, "initial {}", m.initial()).unwrap();
    for q in 0..m.state_count() {
        writeln!(out, "output {q} {}", m.output(q).token()).unwrap();
    }
    for q in 0..m.state_count() {
        for (a, b) in m.letters() {
            writeln!(out, "trans {q} {a} {b} {}", m.step(q, a, b)).unwrap();
        }
    }
    out
}

/// Graphviz rendering: one node per state labeled with its output symbol
/// (prefixed by the state name when known), one edge per transition.
pub fn to_dot(m: &ComparisonAutomaton) -> String {
    let mut out = String::new();
    writeln!(out, "digraph automaton {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for q in 0..m.state_count() {
        let label = match m.label(q) {
            Some(name) => format!("{}\\n{}", escape(name), m.output(q)),
            None => m.output(q).to_string(),
        };
        let shape = if q == m.initial() {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  s{q} [label=\"{label}\", shape={shape}];").unwrap();
    }
    for q in 0..m.state_count() {
        for (a, b) in m.letters() {
            writeln!(out, "  s{q} -> s{} [label=\"({a},{b})\"];", m.step(q, a, b)).unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn thue_morse_text_shape() {
        let text = serialize_automaton(&fixtures::thue_morse_automaton());
        assert_eq!(text.lines().filter(|l| l.starts_with("output ")).count(), 8);
        assert_eq!(text.lines().filter(|l| l.starts_with("trans ")).count(), 32);
        let m = parse_automaton(&text).unwrap();
        assert_eq!(m.state_count(), 8);
        assert_eq!(m.initial(), 0);
        assert_eq!(m, fixtures::thue_morse_automaton());
    }

    #[test]
    fn monotone_text_shape() {
        let text = serialize_automaton(&fixtures::monotone(Radix::BINARY));
        assert_eq!(text.lines().filter(|l| l.starts_with("output ")).count(), 3);
        assert_eq!(text.lines().filter(|l| l.starts_with("trans ")).count(), 12);
    }

    #[test]
    fn serialize_is_idempotent_through_parse() {
        let text = serialize_automaton(&fixtures::thue_morse_automaton());
        assert_eq!(serialize_automaton(&parse_automaton(&text).unwrap()), text);
    }

    #[test]
    fn comments_and_order_are_tolerated() {
        let text = "# leading comment\n\
                    perm-automaton v1\n\
                    states 1   # one state\n\
                    k 2\n\
                    trans 0 1 1 0\n trans 0 0 0 0\n trans 0 1 0 0\n trans 0 0 1 0\n\
                    output 0 EQ\n\
                    initial 0\n";
        let m = parse_automaton(text).unwrap();
        assert_eq!(m.state_count(), 1);
    }

    #[test]
    fn missing_transition_is_reported() {
        let text = serialize_automaton(&fixtures::monotone(Radix::BINARY));
        let cut: String = text
            .lines()
            .filter(|l| *l != "trans 1 0 1 1")
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(
            parse_automaton(&cut),
            Err(Error::Incomplete {
                outputs: vec![],
                transitions: vec![(1, 0, 1)],
            })
        );
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let bad_header = "perm-automaton v2\nk 2\n";
        assert!(matches!(
            parse_automaton(bad_header),
            Err(Error::Syntax { line: 1, .. })
        ));

        let dup = "perm-automaton v1\nk 2\nstates 1\ninitial 0\noutput 0 EQ\noutput 0 LT\n";
        assert!(matches!(
            parse_automaton(dup),
            Err(Error::Syntax { line: 6, .. })
        ));

        let early = "perm-automaton v1\noutput 0 EQ\n";
        assert!(matches!(
            parse_automaton(early),
            Err(Error::Syntax { line: 2, .. })
        ));

        let digit = "perm-automaton v1\nk 2\nstates 1\ntrans 0 2 0 0\n";
        assert!(matches!(
            parse_automaton(digit),
            Err(Error::Syntax { line: 4, .. })
        ));

        let sym = "perm-automaton v1\nk 2\nstates 1\noutput 0 LE\n";
        assert!(matches!(
            parse_automaton(sym),
            Err(Error::Syntax { line: 4, .. })
        ));
    }

    #[test]
    fn dot_counts_and_edge_labels() {
        let tm = fixtures::thue_morse_automaton();
        let dot = to_dot(&tm);
        let nodes = dot
            .lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count();
        let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
        assert_eq!(nodes, 8);
        assert_eq!(edges.len(), 32);
        for e in edges {
            let label = e.split("label=\"(").nth(1).unwrap();
            let inner = label.split(')').next().unwrap();
            let (a, b) = inner.split_once(',').unwrap();
            assert!(a.parse::<u32>().unwrap() < 2 && b.parse::<u32>().unwrap() < 2);
        }
        let mono = to_dot(&fixtures::monotone(Radix::BINARY));
        assert_eq!(mono.lines().filter(|l| l.contains("shape=")).count(), 3);
    }
}
