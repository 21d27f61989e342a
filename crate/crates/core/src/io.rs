//! Text formats.
//!
//! Graphs load from two formats:
//!
//! * **edge list** — one edge per line as two whitespace-separated 0-based
//!   vertex ids; lines starting with `#` are comments; blank lines are
//!   ignored.
//! * **DIMACS** — `c` comment lines, an optional `p edge <n> <m>` header, and
//!   `e <u> <v>` lines with 1-based ids, converted to 0-based on load.
//!
//! Colorings, verification reports, and solver results are JSON documents
//! with a fixed field order and pretty formatting, so writing, reading, and
//! re-writing a document is byte-identical.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conflict::{ConflictReport, PartialColoring, Reason};
use crate::graph::Graph;
use crate::solver::SolveResult;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Document(String),
}

fn line_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Dimacs,
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut pairs = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(line_err(line, format!("expected two vertex ids, got {}", fields.len())));
        }
        let u: usize = fields[0]
            .parse()
            .map_err(|_| line_err(line, format!("bad vertex id {:?}", fields[0])))?;
        let v: usize = fields[1]
            .parse()
            .map_err(|_| line_err(line, format!("bad vertex id {:?}", fields[1])))?;
        if u == v {
            return Err(line_err(line, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(line_err(line, format!("duplicate edge ({u}, {v})")));
        }
        pairs.push((u, v));
    }
    Ok(Graph::new(0, &pairs))
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut pairs = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut header_n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() != 4 || (fields[1] != "edge" && fields[1] != "col") {
                    return Err(line_err(line, "expected header \"p edge <n> <m>\""));
                }
                header_n = fields[2]
                    .parse()
                    .map_err(|_| line_err(line, format!("bad vertex count {:?}", fields[2])))?;
            }
            "e" => {
                if fields.len() != 3 {
                    return Err(line_err(line, "expected \"e <u> <v>\""));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| line_err(line, format!("bad vertex id {:?}", fields[1])))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| line_err(line, format!("bad vertex id {:?}", fields[2])))?;
                if u == 0 || v == 0 {
                    return Err(line_err(line, "DIMACS vertex ids are 1-based"));
                }
                let (u, v) = (u - 1, v - 1);
                if u == v {
                    return Err(line_err(line, format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(line_err(line, format!("duplicate edge ({}, {})", u + 1, v + 1)));
                }
                pairs.push((u, v));
            }
            other => {
                return Err(line_err(line, format!("unknown DIMACS line type {other:?}")));
            }
        }
    }
    Graph::try_new(header_n, &pairs).map_err(|e| ParseError::Document(e.to_string()))
}

/// Render a graph in the edge-list format, preceded by the given comment
/// lines (written verbatim after a `# ` prefix).
pub fn write_edge_list(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// JSON coloring document: the palette size and one record per colored edge,
/// sorted by `(u, v)` with `u < v`. Uncolored edges are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub k: u32,
    pub edges: Vec<ColoredEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdge {
    pub u: usize,
    pub v: usize,
    pub c: u32,
}

pub fn coloring_to_doc(g: &Graph, coloring: &PartialColoring) -> ColoringDoc {
    // Canonical edge order is (u, v) order, so this comes out sorted.
    let edges = coloring
        .assigned()
        .map(|(idx, c)| {
            let (u, v) = g.edges()[idx];
            ColoredEdge { u, v, c }
        })
        .collect();
    ColoringDoc {
        k: coloring.k(),
        edges,
    }
}

pub fn coloring_from_doc(g: &Graph, doc: &ColoringDoc) -> Result<PartialColoring, ParseError> {
    if doc.k < 1 {
        return Err(ParseError::Document("palette size k must be at least 1".into()));
    }
    let mut coloring = PartialColoring::empty(g.edge_count(), doc.k);
    let mut prev: Option<(usize, usize)> = None;
    for rec in &doc.edges {
        if rec.u >= rec.v {
            return Err(ParseError::Document(format!(
                "record ({}, {}) must have u < v",
                rec.u, rec.v
            )));
        }
        if let Some(p) = prev {
            if p >= (rec.u, rec.v) {
                return Err(ParseError::Document(format!(
                    "records must be strictly sorted by (u, v); ({}, {}) follows {:?}",
                    rec.u, rec.v, p
                )));
            }
        }
        prev = Some((rec.u, rec.v));
        let idx = g.edge_index(rec.u, rec.v).ok_or_else(|| {
            ParseError::Document(format!("({}, {}) is not an edge of the graph", rec.u, rec.v))
        })?;
        coloring.set(idx, rec.c);
    }
    Ok(coloring)
}

pub fn parse_coloring_doc(text: &str) -> Result<ColoringDoc, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))
}

/// JSON verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub valid: bool,
    pub colors_used: u32,
    pub violations: Vec<ViolationDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub first: [usize; 2],
    pub second: [usize; 2],
    pub reason: Reason,
}

pub fn report_to_doc(report: &ConflictReport) -> ReportDoc {
    ReportDoc {
        valid: report.valid,
        colors_used: report.colors_used,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationDoc {
                first: [v.first.u, v.first.v],
                second: [v.second.u, v.second.v],
                reason: v.reason,
            })
            .collect(),
    }
}

/// JSON solver result: bounds, search statistics, and the witness coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveDoc {
    pub chi: u32,
    pub lower_bound: u32,
    pub budget_exhausted: bool,
    pub nodes_explored: u64,
    pub witness: ColoringDoc,
}

pub fn solve_to_doc(g: &Graph, result: &SolveResult) -> SolveDoc {
    SolveDoc {
        chi: result.chi,
        lower_bound: result.lower_bound,
        budget_exhausted: result.budget_exhausted,
        nodes_explored: result.nodes_explored,
        witness: coloring_to_doc(g, &result.witness),
    }
}

/// Pretty-printed JSON with a trailing newline; the canonical rendering for
/// every document this crate emits.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_graph;

    #[test]
    fn edge_list_parses_comments_and_blanks() {
        let text = "# a triangle\n\n0 1\n1 2\n\n0 2\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = parse_edge_list("0 1\n2\n").unwrap_err();
        assert_eq!(err, ParseError::Line { line: 2, message: "expected two vertex ids, got 1".into() });
        let err = parse_edge_list("0 1\n1 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, .. }));
        let err = parse_edge_list("0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, .. }));
        let err = parse_edge_list("0 x\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 1, .. }));
    }

    #[test]
    fn edge_list_round_trips() {
        let g = named_graph("line-k33", 0).unwrap();
        let text = write_edge_list(&g, &["line graph of K33".into()]);
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(&back, &g);
    }

    #[test]
    fn dimacs_parses_with_header() {
        let text = "c a path plus an isolated vertex\np edge 4 2\ne 1 2\ne 2 3\n";
        let g = parse_dimacs(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn dimacs_parses_without_header() {
        let g = parse_dimacs("e 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn dimacs_rejects_zero_ids_and_junk() {
        assert!(matches!(
            parse_dimacs("e 0 1\n"),
            Err(ParseError::Line { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("q 1 2\n"),
            Err(ParseError::Line { line: 1, .. })
        ));
    }

    #[test]
    fn coloring_doc_round_trips_bit_exactly() {
        let g = named_graph("k4", 0).unwrap();
        let coloring = crate::solver::greedy_injective_coloring(&g);
        let doc = coloring_to_doc(&g, &coloring);
        let text = render_json(&doc);
        let parsed = parse_coloring_doc(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(render_json(&parsed), text);
        let back = coloring_from_doc(&g, &parsed).unwrap();
        assert_eq!(back, coloring);
    }

    #[test]
    fn coloring_doc_skips_uncolored_edges() {
        let g = named_graph("cycle", 4).unwrap();
        let mut coloring = PartialColoring::empty(4, 13);
        coloring.set(2, 5);
        let doc = coloring_to_doc(&g, &coloring);
        assert_eq!(doc.edges.len(), 1);
        let back = coloring_from_doc(&g, &doc).unwrap();
        assert_eq!(back, coloring);
    }

    #[test]
    fn coloring_doc_rejects_unsorted_or_foreign_records() {
        let g = named_graph("cycle", 4).unwrap();
        let doc = ColoringDoc {
            k: 13,
            edges: vec![
                ColoredEdge { u: 1, v: 2, c: 1 },
                ColoredEdge { u: 0, v: 1, c: 2 },
            ],
        };
        assert!(coloring_from_doc(&g, &doc).is_err());
        let doc = ColoringDoc {
            k: 13,
            edges: vec![ColoredEdge { u: 0, v: 2, c: 1 }],
        };
        assert!(coloring_from_doc(&g, &doc).is_err());
        let doc = ColoringDoc {
            k: 13,
            edges: vec![ColoredEdge { u: 1, v: 0, c: 1 }],
        };
        assert!(coloring_from_doc(&g, &doc).is_err());
    }

    #[test]
    fn solve_doc_renders() {
        let g = named_graph("cycle", 3).unwrap();
        let result = crate::solver::injective_chromatic_index(&g, 1_000_000);
        let doc = solve_to_doc(&g, &result);
        let text = render_json(&doc);
        assert!(text.contains("\"chi\": 3"));
        let parsed: SolveDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, doc);
    }
}
