//! Edge-list and JSON graph formats.
//!
//! Edge list: `#` comment lines and blank lines are ignored, the first data
//! line is `n m`, followed by exactly `m` lines `u v` (0-based ids).
//!
//! JSON: `{"n": 5, "edges": [[0, 1], ...], "labels": {"0": "a1", ...}}` with
//! `labels` optional.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = data.next().ok_or_else(|| parse_err(1, "missing header line \"n m\""))?;
    let nums = parse_pair(header_line, header)?;
    let (n, m) = nums;
    if n == 0 {
        return Err(parse_err(header_line, "vertex count must be positive"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in data {
        if edges.len() == m {
            return Err(parse_err(line, format!("unexpected data after {m} edges")));
        }
        let (u, v) = parse_pair(line, text)?;
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex id out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_err(line, format!("loop edge at vertex {u}")));
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(parse_err(last_line + 1, format!("expected {m} edges, found {}", edges.len())));
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| parse_err(line, format!("invalid integer {tok:?}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(parse_err(line, format!("unexpected token {extra:?}")));
    }
    Ok((a, b))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, String>,
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if raw.n == 0 {
        return Err(parse_err(line_of_key(text, "\"n\""), "vertex count must be positive"));
    }
    let edge_lines = edge_lines(text);
    let line_for = |i: usize| edge_lines.get(i).copied().unwrap_or(1);
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (i, &[u, v]) in raw.edges.iter().enumerate() {
        if u >= raw.n || v >= raw.n {
            return Err(parse_err(line_for(i), format!("edge {i}: vertex id out of range for n = {}", raw.n)));
        }
        if u == v {
            return Err(parse_err(line_for(i), format!("edge {i}: loop edge at vertex {u}")));
        }
        edges.push((u, v));
    }
    let mut labels = BTreeMap::new();
    for (k, name) in raw.labels {
        let line = line_of_key(text, &format!("\"{k}\""));
        let v: Vertex = k.parse().map_err(|_| parse_err(line, format!("label key {k:?} is not a vertex id")))?;
        if v >= raw.n {
            return Err(parse_err(line, format!("label key {v} out of range for n = {}", raw.n)));
        }
        labels.insert(v, name);
    }
    Graph::from_edge_list(raw.n, &edges)?.with_labels(labels)
}

/// Accepts either format, deciding by the first non-blank character.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

fn line_at(text: &str, byte: usize) -> usize {
    text[..byte].bytes().filter(|&b| b == b'\n').count() + 1
}

fn line_of_key(text: &str, key: &str) -> usize {
    text.find(key).map(|p| line_at(text, p)).unwrap_or(1)
}

/// Line number of the opening bracket of every edge pair inside `"edges"`.
fn edge_lines(text: &str) -> Vec<usize> {
    let mut out = Vec::new();
    let Some(start) = text.find("\"edges\"") else { return out };
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate().skip(start) {
        match b {
            b'[' => {
                depth += 1;
                if depth == 2 {
                    out.push(line_at(text, i));
                }
            }
            b']' => {
                if depth <= 1 {
                    break;
                }
                depth -= 1;
            }
            _ => {}
        }
    }
    out
}

pub fn to_json_value(g: &Graph) -> serde_json::Value {
    let raw = JsonGraph {
        n: g.n(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        labels: g.labels().iter().map(|(v, l)| (v.to_string(), l.clone())).collect(),
    };
    serde_json::to_value(raw).expect("graph serializes")
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&to_json_value(g)).expect("graph serializes")
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
