//! Text formats.
//!
//! Edge list: the first non-comment line holds the vertex count, then one
//! `u v` pair per line (0-indexed, whitespace separated). `#` starts a comment.
//! Coloring: one `u v c` line per edge. Reports are pretty-printed JSON.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::EdgeColoring;
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed line: {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: endpoint out of range ({u}, {v}) with {n} vertices")]
    EndpointOutOfRange { line: usize, u: usize, v: usize, n: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("missing vertex-count header")]
    MissingHeader,
    #[error("line {line}: edge {{{u}, {v}}} is not in the graph")]
    UnknownEdge { line: usize, u: usize, v: usize },
    #[error("coloring misses edge {{{u}, {v}}}")]
    MissingEdge { u: usize, v: usize },
    #[error("line {line}: color {c} out of range for k = {k}")]
    ColorOutOfRange { line: usize, c: usize, k: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_usize(line: usize, field: &str, raw: &[&str]) -> Result<usize, ParseError> {
    field.parse().map_err(|_| ParseError::Malformed { line, text: raw.join(" ") })
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    if header.len() != 1 {
        return Err(ParseError::Malformed { line: hline, text: header.join(" ") });
    }
    let n = parse_usize(hline, header[0], &header)?;
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (line, fields) in lines {
        if fields.len() != 2 {
            return Err(ParseError::Malformed { line, text: fields.join(" ") });
        }
        let u = parse_usize(line, fields[0], &fields)?;
        let v = parse_usize(line, fields[1], &fields)?;
        if u >= n || v >= n {
            return Err(ParseError::EndpointOutOfRange { line, u, v, n });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, v });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    Ok(Graph::from_edges_lossy(n, edges))
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, ParseError> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph(path: impl AsRef<Path>, g: &Graph) -> Result<(), ParseError> {
    Ok(fs::write(path, format_graph(g))?)
}

/// Parses a `u v c` coloring of `g`. `k` defaults to one more than the largest color.
pub fn parse_coloring(text: &str, g: &Graph, k: Option<usize>) -> Result<EdgeColoring, ParseError> {
    let mut colors = vec![usize::MAX; g.edge_count()];
    let mut max_color = 0;
    for (line, fields) in content_lines(text) {
        if fields.len() != 3 {
            return Err(ParseError::Malformed { line, text: fields.join(" ") });
        }
        let u = parse_usize(line, fields[0], &fields)?;
        let v = parse_usize(line, fields[1], &fields)?;
        let c = parse_usize(line, fields[2], &fields)?;
        let idx = g.edge_index(u, v).ok_or(ParseError::UnknownEdge { line, u, v })?;
        if colors[idx] != usize::MAX {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        if let Some(k) = k {
            if c >= k {
                return Err(ParseError::ColorOutOfRange { line, c, k });
            }
        }
        max_color = max_color.max(c);
        colors[idx] = c;
    }
    if let Some(i) = colors.iter().position(|&c| c == usize::MAX) {
        let (u, v) = g.edges()[i];
        return Err(ParseError::MissingEdge { u, v });
    }
    Ok(EdgeColoring { k: k.unwrap_or(max_color + 1), colors })
}

pub fn format_coloring(g: &Graph, coloring: &EdgeColoring) -> String {
    let mut out = String::new();
    for (&(u, v), c) in g.edges().iter().zip(&coloring.colors) {
        out.push_str(&format!("{u} {v} {c}\n"));
    }
    out
}

pub fn read_coloring(path: impl AsRef<Path>, g: &Graph, k: Option<usize>) -> Result<EdgeColoring, ParseError> {
    parse_coloring(&fs::read_to_string(path)?, g, k)
}

pub fn write_coloring(path: impl AsRef<Path>, g: &Graph, coloring: &EdgeColoring) -> Result<(), ParseError> {
    Ok(fs::write(path, format_coloring(g, coloring))?)
}

pub fn write_report<T: Serialize>(path: impl AsRef<Path>, report: &T) -> Result<(), ParseError> {
    let text = serde_json::to_string_pretty(report).map_err(std::io::Error::from)?;
    Ok(fs::write(path, text + "\n")?)
}

/// Serializable graph payload used inside JSON documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphData {
    fn from(g: &Graph) -> Self {
        GraphData { vertex_count: g.vertex_count(), edges: g.edges().to_vec() }
    }
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> Self {
        GraphData::from(&g)
    }
}

impl TryFrom<GraphData> for Graph {
    type Error = crate::graph::GraphError;

    fn try_from(d: GraphData) -> Result<Self, Self::Error> {
        Graph::new(d.vertex_count, d.edges)
    }
}

impl TryFrom<&GraphData> for Graph {
    type Error = crate::graph::GraphError;

    fn try_from(d: &GraphData) -> Result<Self, Self::Error> {
        Graph::new(d.vertex_count, d.edges.iter().copied())
    }
}
