//! DIMACS edge format and the companion matching file format.
//!
//! Graph files:
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! l <u> <name>      (optional vertex label)
//! e <u> <v>
//! ```
//!
//! Matching files hold one `<u> <v>` pair per line, `#` starts a comment.
//! Indices are 1-based in both formats.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Matching, VertexId};

/// Largest vertex count accepted from a file header.
pub const MAX_VERTICES: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("malformed header")]
    BadHeader,
    #[error("header declares {0} vertices, limit is {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("second header line")]
    DuplicateHeader,
    #[error("line before header")]
    BeforeHeader,
    #[error("malformed line")]
    BadLine,
    #[error("unknown line type `{0}`")]
    UnknownLine(String),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} labelled twice")]
    DuplicateLabel(usize),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("vertex {0} is covered twice")]
    SharedVertex(usize),
    #[error("edge {0}-{1} is not in the graph")]
    NotAnEdge(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the error concerns the whole input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

fn parse_index(token: Option<&str>, n: usize, line: usize) -> Result<usize, ParseError> {
    let raw: usize = token
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::at(line, ParseErrorKind::BadLine))?;
    if raw == 0 || raw > n {
        return Err(ParseError::at(line, ParseErrorKind::OutOfRange(raw)));
    }
    Ok(raw - 1)
}

/// Parses a DIMACS edge file. Adjacency order follows edge order in the file.
pub fn parse_dimacs(input: &[u8]) -> Result<Graph, ParseError> {
    let text =
        std::str::from_utf8(input).map_err(|_| ParseError::at(0, ParseErrorKind::NotUtf8))?;
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateHeader));
                }
                let format = tokens.next();
                let n = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let m = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (format, n, m, tokens.next()) {
                    (Some("edge"), Some(n), Some(m), None) => {
                        if n > MAX_VERTICES {
                            return Err(ParseError::at(line, ParseErrorKind::TooLarge(n)));
                        }
                        header = Some((n, m));
                        // cap the reservation: `m` is untrusted
                        edges.reserve(m.min(1 << 20));
                    }
                    _ => return Err(ParseError::at(line, ParseErrorKind::BadHeader)),
                }
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| ParseError::at(line, ParseErrorKind::BeforeHeader))?;
                let u = parse_index(tokens.next(), n, line)?;
                let v = parse_index(tokens.next(), n, line)?;
                if tokens.next().is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::BadLine));
                }
                if u == v {
                    return Err(ParseError::at(line, ParseErrorKind::Loop(u + 1)));
                }
                edges.push((u, v));
                edge_lines.push(line);
            }
            "l" => {
                let (n, _) = header.ok_or_else(|| ParseError::at(line, ParseErrorKind::BeforeHeader))?;
                let u = parse_index(tokens.next(), n, line)?;
                let name = tokens
                    .next()
                    .ok_or_else(|| ParseError::at(line, ParseErrorKind::BadLine))?;
                if tokens.next().is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::BadLine));
                }
                if labels.is_empty() {
                    labels = vec![None; n];
                }
                if labels[u].replace(name.to_string()).is_some() {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateLabel(u + 1)));
                }
            }
            other => {
                return Err(ParseError::at(line, ParseErrorKind::UnknownLine(other.to_string())))
            }
        }
    }

    let (n, m) = header.ok_or_else(|| ParseError::at(0, ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(ParseError::at(
            0,
            ParseErrorKind::EdgeCount {
                declared: m,
                found: edges.len(),
            },
        ));
    }
    let graph = Graph::from_edges(n, edges.iter().copied()).map_err(|e| match e {
        GraphError::DuplicateEdge(a, b) => ParseError::at(
            duplicate_line(&edges, &edge_lines, a, b).unwrap_or(0),
            ParseErrorKind::DuplicateEdge(a + 1, b + 1),
        ),
        GraphError::Loop(a) => ParseError::at(0, ParseErrorKind::Loop(a + 1)),
        GraphError::VertexOutOfRange { index, .. } => {
            ParseError::at(0, ParseErrorKind::OutOfRange(index + 1))
        }
        GraphError::LabelCount { .. } => ParseError::at(0, ParseErrorKind::BadLine),
    })?;
    if !labels.is_empty() {
        let filled = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| (i + 1).to_string()))
            .collect();
        Ok(graph.with_labels(filled).expect("label count matches header"))
    } else {
        Ok(graph)
    }
}

fn duplicate_line(edges: &[(usize, usize)], lines: &[usize], a: usize, b: usize) -> Option<usize> {
    let key = (a.min(b), a.max(b));
    edges
        .iter()
        .zip(lines)
        .filter(|(&(u, v), _)| (u.min(v), u.max(v)) == key)
        .map(|(_, &l)| l)
        .nth(1)
}

/// Serializes `g` so that `parse_dimacs` reproduces it exactly.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    if let Some(labels) = g.labels() {
        for (i, name) in labels.iter().enumerate() {
            writeln!(out, "l {} {}", i + 1, name).unwrap();
        }
    }
    for e in g.edges() {
        writeln!(out, "e {} {}", e.u().index() + 1, e.v().index() + 1).unwrap();
    }
    out
}

/// Parses a matching file and validates it against `g`.
pub fn parse_matching(input: &[u8], g: &Graph) -> Result<Matching, ParseError> {
    let text =
        std::str::from_utf8(input).map_err(|_| ParseError::at(0, ParseErrorKind::NotUtf8))?;
    let mut m = Matching::empty(g.n());
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        let u = parse_index(Some(first), g.n(), line)?;
        let v = parse_index(tokens.next(), g.n(), line)?;
        if tokens.next().is_some() {
            return Err(ParseError::at(line, ParseErrorKind::BadLine));
        }
        let (a, b) = (VertexId::new(u), VertexId::new(v));
        if u == v || !g.has_edge(a, b) {
            return Err(ParseError::at(line, ParseErrorKind::NotAnEdge(u + 1, v + 1)));
        }
        for w in [a, b] {
            if !m.is_free(w) {
                return Err(ParseError::at(line, ParseErrorKind::SharedVertex(w.index() + 1)));
            }
        }
        m.pair(a, b);
    }
    Ok(m)
}

pub fn write_matching(m: &Matching) -> String {
    let mut out = String::new();
    for e in m.edges() {
        writeln!(out, "{} {}", e.u().index() + 1, e.v().index() + 1).unwrap();
    }
    out
}
