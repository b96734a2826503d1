//! The line-oriented graph format.
//!
//! ```text
//! # loop with an exit
//! vertex v
//! vertex u
//! edge a : v -> v
//! edge b : v -> u
//! special v b
//! ```
//!
//! Text after `#` is ignored. Vertices without a `special` line get the
//! default choice (least edge name).

use std::collections::HashMap;
use std::fmt;

use leavitt::graph::{Graph, GraphError, SpecialSelection};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub struct GraphFileError {
    /// 1-based line number, `None` for whole-file problems.
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for GraphFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn at(line: usize, message: impl Into<String>) -> GraphFileError {
    GraphFileError {
        line: Some(line),
        message: message.into(),
    }
}

fn single_name(line: usize, what: &str, text: &str) -> Result<String, GraphFileError> {
    let mut tokens = text.split_whitespace();
    match (tokens.next(), tokens.next()) {
        (Some(name), None) => Ok(name.to_string()),
        (None, _) => Err(at(line, format!("missing {what} name"))),
        (Some(_), Some(extra)) => Err(at(line, format!("unexpected `{extra}` after {what} name"))),
    }
}

pub fn parse_graph_file(text: &str) -> Result<(Graph, SpecialSelection), GraphFileError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut specials = Vec::new();
    let mut declared: HashMap<String, usize> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let Some((keyword, rest)) = content
            .split_once(char::is_whitespace)
            .or((!content.is_empty()).then_some((content, "")))
        else {
            continue;
        };
        let mut declare = |name: &str| match declared.insert(name.to_string(), line) {
            Some(first) => Err(at(
                line,
                format!("duplicate name `{name}` (first declared on line {first})"),
            )),
            None => Ok(()),
        };
        match keyword {
            "vertex" => {
                let name = single_name(line, "vertex", rest)?;
                declare(&name)?;
                vertices.push(name);
            }
            "edge" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| at(line, "expected `edge <name> : <src> -> <dst>`"))?;
                let (src, dst) = ends
                    .split_once("->")
                    .ok_or_else(|| at(line, "expected `->` between source and range"))?;
                let name = single_name(line, "edge", name)?;
                let src = single_name(line, "source", src)?;
                let dst = single_name(line, "range", dst)?;
                declare(&name)?;
                edges.push((name, src, dst, line));
            }
            "special" => {
                let mut tokens = rest.split_whitespace();
                match (tokens.next(), tokens.next(), tokens.next()) {
                    (Some(v), Some(e), None) => specials.push((v.to_string(), e.to_string(), line)),
                    _ => return Err(at(line, "expected `special <vertex> <edge>`")),
                }
            }
            other => return Err(at(line, format!("unknown directive `{other}`"))),
        }
    }

    if vertices.is_empty() {
        return Err(GraphFileError {
            line: None,
            message: "the graph declares no vertices".into(),
        });
    }
    let line_of = |name: &str| declared.get(name).copied();
    let graph = Graph::build(
        vertices,
        edges
            .iter()
            .map(|(n, s, d, _)| (n.clone(), s.clone(), d.clone())),
    )
    .map_err(|err| {
        let line = match &err {
            GraphError::InvalidName(n) | GraphError::DuplicateName(n) => line_of(n),
            GraphError::DanglingEndpoint { edge, .. } => line_of(edge),
            _ => None,
        };
        GraphFileError {
            line,
            message: err.to_string(),
        }
    })?;

    let mut overrides = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (v, e, line) in &specials {
        let resolved = graph
            .vertex_by_name(v)
            .and_then(|vid| Ok((vid, graph.edge_by_name(e)?)))
            .map_err(|err| at(*line, err.to_string()))?;
        if let Some(first) = seen.insert(v.clone(), *line) {
            return Err(at(
                *line,
                format!("`{v}` already has a special edge (line {first})"),
            ));
        }
        let (vid, eid) = resolved;
        if graph.source(eid) != vid {
            let err = GraphError::SpecialSourceMismatch {
                vertex: v.clone(),
                edge: e.clone(),
                source_vertex: graph.vertex_name(graph.source(eid)).to_string(),
            };
            return Err(at(*line, err.to_string()));
        }
        SpecialSelection::with_overrides(&graph, [resolved])
            .map_err(|err| at(*line, err.to_string()))?;
        overrides.push(resolved);
    }
    let sel =
        SpecialSelection::with_overrides(&graph, overrides).map_err(|err| GraphFileError {
            line: None,
            message: err.to_string(),
        })?;
    Ok((graph, sel))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOEPLITZ: &str = "vertex v\nvertex u\nedge a : v -> v\nedge b : v -> u\nspecial v b\n";

    #[test]
    fn toeplitz_with_special_line() {
        let (g, sel) = parse_graph_file(TOEPLITZ).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
        assert!(sel.is_special(g.edge_by_name("b").unwrap()));
        assert!(!sel.is_special(g.edge_by_name("a").unwrap()));
    }

    #[test]
    fn omitted_special_uses_default() {
        let text =
            "# comment only\nvertex v   # trailing\nvertex u\nedge b:v->u\nedge a : v -> v\n";
        let (g, sel) = parse_graph_file(text).unwrap();
        assert_eq!(sel, SpecialSelection::default_for(&g));
        assert!(sel.is_special(g.edge_by_name("a").unwrap()));
    }

    #[test]
    fn special_with_wrong_source() {
        let err = parse_graph_file(&TOEPLITZ.replace("special v b", "special u b")).unwrap_err();
        assert_eq!(err.line, Some(5));
        assert!(err.message.contains("its source is `v`"), "{}", err.message);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("vertex v\nvertx u\n", 2, "unknown directive"),
            ("vertex v\nvertex v\n", 2, "duplicate name"),
            ("vertex v\nedge a : v -> w\n", 2, "unknown vertex `w`"),
            ("vertex v\nedge a v -> v\n", 2, "expected `edge"),
            ("vertex v\nedge a : v v\n", 2, "expected `->`"),
            ("vertex 1v\n", 1, "invalid name"),
            (
                "vertex v\nedge a : v -> v\nspecial v c\n",
                3,
                "unknown name `c`",
            ),
            ("vertex v\nvertex v w\n", 2, "unexpected `w`"),
            (
                "vertex v\nedge a : v -> v\nedge c : v -> v\nspecial v a\nspecial v c\n",
                5,
                "already has",
            ),
        ];
        for (text, line, needle) in cases {
            let err = parse_graph_file(text).unwrap_err();
            assert_eq!(err.line, Some(line), "{text:?}: {err}");
            assert!(err.to_string().contains(needle), "{text:?}: {err}");
        }
        assert_eq!(parse_graph_file("# empty\n").unwrap_err().line, None);
    }
}
