//! The ".dg" graph text format and partition JSON files.
//!
//! Format: optional `#` comment lines anywhere; the first data line is
//! `n m`; then exactly `m` lines `u v`, each a directed edge `u -> v` with
//! 0-based whitespace-separated endpoints. The parser rejects loops,
//! duplicate and antiparallel pairs, and reports line/column diagnostics.

use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, OrientedGraph};
use crate::partition::{Partition, PartitionError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DgError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {source}")]
    BadEdge { line: usize, source: GraphError },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line \"n m\"")]
    MissingHeader,
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    col: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            col: s + 1,
        });
    }
    out
}

fn parse_usize(tok: &Token<'_>, line: usize, what: &str) -> Result<usize, DgError> {
    tok.text.parse().map_err(|_| DgError::Syntax {
        line,
        col: tok.col,
        msg: format!("{what} must be a nonnegative integer, got {:?}", tok.text),
    })
}

pub fn parse_dg(text: &str) -> Result<OrientedGraph, DgError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let toks = tokens(line);
        match header {
            None => {
                if toks.len() != 2 {
                    return Err(DgError::Syntax {
                        line: line_no,
                        col: toks.first().map_or(1, |t| t.col),
                        msg: format!("header needs exactly 2 fields \"n m\", got {}", toks.len()),
                    });
                }
                let n = parse_usize(&toks[0], line_no, "vertex count")?;
                let m = parse_usize(&toks[1], line_no, "edge count")?;
                if n == 0 {
                    return Err(DgError::Syntax {
                        line: line_no,
                        col: toks[0].col,
                        msg: "vertex count must be at least 1".into(),
                    });
                }
                header = Some((n, m));
            }
            Some((_, m)) => {
                if edges.len() == m {
                    return Err(DgError::Syntax {
                        line: line_no,
                        col: toks[0].col,
                        msg: format!("unexpected data after {m} edges"),
                    });
                }
                if toks.len() != 2 {
                    return Err(DgError::Syntax {
                        line: line_no,
                        col: toks.first().map_or(1, |t| t.col),
                        msg: format!("edge line needs exactly 2 fields, got {}", toks.len()),
                    });
                }
                let u = parse_usize(&toks[0], line_no, "edge tail")?;
                let v = parse_usize(&toks[1], line_no, "edge head")?;
                edges.push((u, v));
                edge_lines.push(line_no);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(DgError::MissingHeader);
    };
    if edges.len() != m {
        return Err(DgError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    // incremental validation, to pin the offending line
    let mut seen = std::collections::HashSet::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        let bad = |source: GraphError| DgError::BadEdge {
            line: edge_lines[i],
            source,
        };
        if u >= n {
            return Err(bad(GraphError::VertexOutOfRange { v: u, n }));
        }
        if v >= n {
            return Err(bad(GraphError::VertexOutOfRange { v, n }));
        }
        if u == v {
            return Err(bad(GraphError::SelfLoop { v }));
        }
        if !seen.insert((u, v)) {
            return Err(bad(GraphError::DuplicateEdge { u, v }));
        }
        if seen.contains(&(v, u)) {
            return Err(bad(GraphError::AntiparallelPair { u, v }));
        }
    }
    OrientedGraph::from_edges(n, &edges).map_err(|source| DgError::BadEdge {
        line: edge_lines.last().copied().unwrap_or(1),
        source,
    })
}

/// Deterministic writer: header comment, `n m`, then edges ascending.
pub fn format_dg(g: &OrientedGraph) -> String {
    let mut out = String::from("# oriented graph\n");
    out.push_str(&format!("{} {}\n", g.n(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct PartitionJson {
    parts: Vec<Vec<usize>>,
}

#[derive(Debug, thiserror::Error)]
pub enum PartitionFileError {
    #[error("invalid partition JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] PartitionError),
}

pub fn partition_from_json(text: &str, n: usize) -> Result<Partition, PartitionFileError> {
    let parsed: PartitionJson = serde_json::from_str(text)?;
    Ok(Partition::from_index_lists(n, &parsed.parts)?)
}

pub fn partition_to_json(p: &Partition) -> String {
    serde_json::to_string_pretty(&PartitionJson {
        parts: p.to_index_lists(),
    })
    .expect("partition serializes")
}
