//! The `odometry-graph v1` text format.
//!
//! ```text
//! odometry-graph v1
//! # K4 with integer and rational weights
//! n 4
//! e 0 1 1
//! e 0 2 3/2
//! ...
//! ```
//!
//! `#` starts a comment anywhere on a line and blank lines are ignored.
//! Vertices are 0-based, weights are integers or `p/q`.

use std::fmt::Write as _;
use std::str::FromStr;

use odometry_core::{Graph, GraphError, Rational, WeightedGraph};
use thiserror::Error;

pub const HEADER: &str = "odometry-graph v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// `p` when integral, `p/q` in lowest terms otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let valid = |part: &str| {
        let digits = part.strip_prefix('-').unwrap_or(part);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((p, q)) if valid(p) && valid(q) && !q.starts_with('-') => Rational::from_str(s).ok(),
        None if valid(s) => Rational::from_str(s).ok(),
        _ => None,
    }
}

fn parse_index(token: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    token.parse().or_else(|_| {
        fail(
            line,
            format!("{what} `{token}` is not a nonnegative integer"),
        )
    })
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut header_seen = false;
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut edge_lines = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !header_seen {
            if content != HEADER {
                return fail(line, format!("expected header `{HEADER}`"));
            }
            header_seen = true;
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["n", count] => {
                if vertex_count.is_some() {
                    return fail(line, "vertex count given twice");
                }
                vertex_count = Some(parse_index(count, line, "vertex count")?);
            }
            ["e", u, v, w] => {
                let Some(n) = vertex_count else {
                    return fail(line, "edge before the `n` line");
                };
                let (u, v) = (
                    parse_index(u, line, "vertex")?,
                    parse_index(v, line, "vertex")?,
                );
                for x in [u, v] {
                    if x >= n {
                        return fail(line, format!("vertex {x} out of range for {n} vertices"));
                    }
                }
                if u == v {
                    return fail(line, format!("self-loop at vertex {u}"));
                }
                let Some(weight) = parse_rational(w) else {
                    return fail(line, format!("weight `{w}` is not an integer or p/q"));
                };
                if let Some(j) = edges
                    .iter()
                    .position(|&(a, b)| (a, b) == (u.min(v), u.max(v)))
                {
                    return fail(
                        line,
                        format!(
                            "duplicate edge {{{u},{v}}} (first on line {})",
                            edge_lines[j]
                        ),
                    );
                }
                edges.push((u.min(v), u.max(v)));
                weights.push(weight);
                edge_lines.push(line);
            }
            _ => return fail(line, format!("unrecognized line `{content}`")),
        }
    }
    if !header_seen {
        return fail(last_line.max(1), format!("missing header `{HEADER}`"));
    }
    let Some(n) = vertex_count else {
        return fail(last_line, "missing `n` line");
    };
    let graph = Graph::new(n, edges).map_err(|e| ParseError {
        line: last_line,
        message: e.to_string(),
    })?;
    WeightedGraph::new(graph, weights).map_err(|e: GraphError| ParseError {
        line: last_line,
        message: e.to_string(),
    })
}

pub fn format_graph(g: &WeightedGraph) -> String {
    let mut out = format!("{HEADER}\nn {}\n", g.graph().vertex_count());
    for (e, &(u, v)) in g.graph().edges().iter().enumerate() {
        writeln!(out, "e {u} {v} {}", format_rational(g.weight(e))).expect("writing to a string");
    }
    out
}
