//! The rewriting system generated from a graph and its special edges.
//!
//! Every leading word has length two, so the rules are stored in a dense
//! table indexed by the letter pair.

use std::fmt;

use crate::graph::{Graph, SpecialSelection};

use super::element::Letter;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleFamily {
    /// Vertex idempotence and vertex absorption of real edges.
    Gs1,
    /// Vertex absorption of ghost edges and `e*f → δ r(e)`.
    Gs2,
    /// `θθ* → s(θ) − Σ ff*` for the special edge θ.
    Gs3,
    /// Non-composable products vanish.
    Gs4,
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleFamily::Gs1 => "GS1",
            RuleFamily::Gs2 => "GS2",
            RuleFamily::Gs3 => "GS3",
            RuleFamily::Gs4 => "GS4",
        };
        f.write_str(s)
    }
}

/// `lhs → Σ c·word`; an empty right-hand side means the pattern is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub family: RuleFamily,
    pub lhs: [Letter; 2],
    pub rhs: Vec<(i64, Vec<Letter>)>,
}

#[derive(Clone, Debug)]
pub(crate) struct RuleTable {
    letter_count: usize,
    vertex_count: usize,
    edge_count: usize,
    slots: Vec<Option<u32>>,
    rules: Vec<Rule>,
}

fn delta(cond: bool, word: Vec<Letter>) -> Vec<(i64, Vec<Letter>)> {
    if cond {
        vec![(1, word)]
    } else {
        Vec::new()
    }
}

impl RuleTable {
    pub(crate) fn generate(g: &Graph, special: &SpecialSelection) -> RuleTable {
        let vertex_count = g.vertex_count();
        let edge_count = g.edge_count();
        let letter_count = vertex_count + 2 * edge_count;
        let mut table = RuleTable {
            letter_count,
            vertex_count,
            edge_count,
            slots: vec![None; letter_count * letter_count],
            rules: Vec::new(),
        };
        let letters: Vec<Letter> = g
            .vertices()
            .map(Letter::Vertex)
            .chain(g.edges().map(Letter::Real))
            .chain(g.edges().map(Letter::Ghost))
            .collect();
        for &x in &letters {
            for &y in &letters {
                if let Some((family, rhs)) = Self::rule_for(g, special, x, y) {
                    table.insert(Rule {
                        family,
                        lhs: [x, y],
                        rhs,
                    });
                }
            }
        }
        table
    }

    #[allow(clippy::type_complexity)]
    fn rule_for(
        g: &Graph,
        special: &SpecialSelection,
        x: Letter,
        y: Letter,
    ) -> Option<(RuleFamily, Vec<(i64, Vec<Letter>)>)> {
        use Letter::*;
        use RuleFamily::*;
        let rule = match (x, y) {
            (Vertex(v), Vertex(u)) => (Gs1, delta(v == u, vec![x])),
            (Vertex(v), Real(e)) => (Gs1, delta(v == g.source(e), vec![y])),
            (Real(e), Vertex(v)) => (Gs1, delta(v == g.range(e), vec![x])),
            (Vertex(v), Ghost(e)) => (Gs2, delta(v == g.range(e), vec![y])),
            (Ghost(e), Vertex(v)) => (Gs2, delta(v == g.source(e), vec![x])),
            (Ghost(e), Real(f)) => (Gs2, delta(e == f, vec![Vertex(g.range(e))])),
            (Real(e), Real(f)) => {
                if g.range(e) == g.source(f) {
                    return None;
                }
                (Gs4, Vec::new())
            }
            (Ghost(e), Ghost(f)) => {
                if g.range(f) == g.source(e) {
                    return None;
                }
                (Gs4, Vec::new())
            }
            (Real(e), Ghost(f)) => {
                if g.range(e) != g.range(f) {
                    (Gs4, Vec::new())
                } else if e == f && special.is_special(e) {
                    let v = g.source(e);
                    let mut rhs = vec![(1, vec![Vertex(v)])];
                    rhs.extend(
                        g.out_edges(v)
                            .iter()
                            .filter(|&&s| s != e)
                            .map(|&s| (-1, vec![Real(s), Ghost(s)])),
                    );
                    (Gs3, rhs)
                } else {
                    return None;
                }
            }
        };
        Some(rule)
    }

    fn insert(&mut self, rule: Rule) {
        let slot = self.slot(rule.lhs[0], rule.lhs[1]);
        match self.slots[slot] {
            Some(i) => self.rules[i as usize] = rule,
            None => {
                self.slots[slot] = Some(self.rules.len() as u32);
                self.rules.push(rule);
            }
        }
    }

    pub(crate) fn replace(&mut self, rule: Rule) {
        self.insert(rule)
    }

    pub(crate) fn letter_index(&self, l: Letter) -> usize {
        match l {
            Letter::Vertex(v) => v.index(),
            Letter::Real(e) => self.vertex_count + e.index(),
            Letter::Ghost(e) => self.vertex_count + self.edge_count + e.index(),
        }
    }

    pub(crate) fn resolves(&self, l: Letter) -> bool {
        match l {
            Letter::Vertex(v) => v.index() < self.vertex_count,
            Letter::Real(e) | Letter::Ghost(e) => e.index() < self.edge_count,
        }
    }

    fn slot(&self, x: Letter, y: Letter) -> usize {
        self.letter_index(x) * self.letter_count + self.letter_index(y)
    }

    #[inline]
    pub(crate) fn get(&self, x: Letter, y: Letter) -> Option<&Rule> {
        self.slots[self.slot(x, y)].map(|i| &self.rules[i as usize])
    }

    pub(crate) fn rules(&self) -> &[Rule] {
        &self.rules
    }
}
