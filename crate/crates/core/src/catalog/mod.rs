//! Named graphs and verification suites.
//!
//! Every suite builds its own algebra, runs deterministically and returns a
//! [`Report`] whose entries carry a suite name, a check id, a status and a
//! rendered detail.

mod models;
mod suites;
mod toeplitz;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, SpecialSelection};
use crate::rewrite::Algebra;

pub use models::{verify_jacobson, verify_laurent, verify_matrix_iso, JacobsonPoly};
pub use suites::{
    an_inner, confluence_suite, derivation_validity, functional_equation_suite,
    functional_equation_suite_on, generator_derivations, inner_formula_suite,
    inner_formula_suite_on, random_element, relation_suite, witt_table, DEFAULT_SEED,
};
pub use toeplitz::{toeplitz_action_table, toeplitz_bracket_suite};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("{what} must lie in {min}..={max}, got {got}")]
    OutOfRange {
        what: &'static str,
        min: usize,
        max: usize,
        got: usize,
    },
}

fn in_range(what: &'static str, got: usize, min: usize, max: usize) -> Result<(), CatalogError> {
    if (min..=max).contains(&got) {
        Ok(())
    } else {
        Err(CatalogError::OutOfRange {
            what,
            min,
            max,
            got,
        })
    }
}

/// The line `v1 → v2 → … → vn` with edges `e1, …, e(n-1)`.
pub fn graph_line(n: usize) -> Result<(Graph, SpecialSelection), CatalogError> {
    in_range("n", n, 2, 64)?;
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (1..n)
        .map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    let g = Graph::build(vertices, edges).expect("well-formed line graph");
    let sel = SpecialSelection::default_for(&g);
    Ok((g, sel))
}

/// `ℓ` loops at the single vertex `v`, with the first loop special. The loop
/// of the one-petal rose is called `e`, otherwise they are `e1, …, eℓ`.
pub fn graph_rose(petals: usize) -> Result<(Graph, SpecialSelection), CatalogError> {
    in_range("petals", petals, 1, 64)?;
    let names: Vec<String> = if petals == 1 {
        vec!["e".to_string()]
    } else {
        (1..=petals).map(|i| format!("e{i}")).collect()
    };
    let g = Graph::build(["v"], names.iter().map(|e| (e.as_str(), "v", "v")))
        .expect("well-formed rose");
    let sel =
        SpecialSelection::with_named_overrides(&g, &[("v", names[0].as_str())]).expect("loop at v");
    Ok((g, sel))
}

/// The loop `a: v → v` with the exit `b: v → u`; `b` is special.
pub fn graph_toeplitz() -> (Graph, SpecialSelection) {
    let g = Graph::build(["v", "u"], [("a", "v", "v"), ("b", "v", "u")]).expect("toeplitz");
    let sel = SpecialSelection::with_named_overrides(&g, &[("v", "b")]).expect("b leaves v");
    (g, sel)
}

/// `c0: v1 → v2`, `c1: v2 → v1` and a parallel `d: v1 → v2`, with `d` and
/// `c1` special.
pub fn graph_two_cycle() -> (Graph, SpecialSelection) {
    let g = Graph::build(
        ["v1", "v2"],
        [("c0", "v1", "v2"), ("c1", "v2", "v1"), ("d", "v1", "v2")],
    )
    .expect("two-cycle");
    let sel = SpecialSelection::with_named_overrides(&g, &[("v1", "d"), ("v2", "c1")])
        .expect("valid selection");
    (g, sel)
}

pub fn algebra((g, sel): (Graph, SpecialSelection)) -> Arc<Algebra> {
    Arc::new(Algebra::new(g, sel).expect("catalog selections are valid"))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Note,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Note => "NOTE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite.clone(),
            id: id.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(id, status, detail);
    }

    pub fn note(&mut self, id: impl Into<String>, detail: impl Into<String>) {
        self.push(id, Status::Note, detail);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c.id, c.status, c.detail);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}/{}: {}", c.status, c.suite, c.id, c.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        let (g, _) = graph_line(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(g.sinks().len(), 1);
        assert_eq!(g.vertex_name(g.sinks()[0]), "v3");
        assert!(graph_line(1).is_err());

        let (g, sel) = graph_rose(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 1));
        assert!(sel.is_special(g.edge_by_name("e").unwrap()));
        assert!(graph_rose(0).is_err());

        let (g, sel) = graph_toeplitz();
        assert!(sel.is_special(g.edge_by_name("b").unwrap()));
        assert!(!sel.is_special(g.edge_by_name("a").unwrap()));
    }

    #[test]
    fn report_status() {
        let mut r = Report::new("demo");
        r.check("one", true, "ok");
        r.note("two", "fyi");
        assert!(r.passed());
        r.check("three", false, "bad");
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.to_string().lines().next(), Some("PASS demo/one: ok"));
    }
}
