//! Coefficient functionals `F_b(g)` and the equations they satisfy.
//!
//! `F_b(g)` is the coefficient of the basis word `b` in `D(g)`; indices that
//! are not basis words are identically zero. The three equation families are
//! evaluated on the vertex-normalized derivation `D̂` (with `D̂(v) = 0`), from
//! which they arise by expanding `D̂(e*)f + e*D̂(f) = δ_{e,f} D̂(r(e))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::coeff::Rational;
use crate::graph::{EdgeId, Walk};
use crate::render;
use crate::rewrite::{Algebra, Letter, NormalWord};

use super::{vertex_normalize, Derivation};

/// `(b, g) ↦ F_b(g)` over the finite support of a derivation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctionalTable {
    entries: BTreeMap<(NormalWord, Letter), Rational>,
}

impl FunctionalTable {
    pub fn extract(d: &Derivation) -> FunctionalTable {
        let mut entries = BTreeMap::new();
        for (&g, x) in d.nonzero_images() {
            for (b, c) in x.iter() {
                entries.insert((b.clone(), g), c.clone());
            }
        }
        FunctionalTable { entries }
    }

    pub fn get(&self, b: &NormalWord, g: Letter) -> Rational {
        self.entries
            .get(&(b.clone(), g))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `F` at an optional index; `None` stands for a non-basis index.
    pub fn at(&self, b: Option<&NormalWord>, g: Letter) -> Rational {
        b.map_or_else(Rational::zero, |b| self.get(b, g))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(NormalWord, Letter), &Rational)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquationFamily {
    /// `F_p(e*) + F_{pff*}(e*) + F_{epf}(f) = 0`.
    PathGhost,
    /// `F_{[fpe]*}(e*) + F_{p*}(f) + F_{e[pe]*}(f) = 0`.
    GhostPath,
    /// `F_{w[fh]*}(e*) + F_{ewh*}(f) = 0`.
    Mixed,
}

impl fmt::Display for EquationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationFamily::PathGhost => "path-ghost",
            EquationFamily::GhostPath => "ghost-path",
            EquationFamily::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Instance {
    PathGhost {
        e: EdgeId,
        f: EdgeId,
        p: Walk,
    },
    GhostPath {
        e: EdgeId,
        f: EdgeId,
        p: Walk,
    },
    Mixed {
        e: EdgeId,
        f: EdgeId,
        w: Walk,
        h: Walk,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationViolation {
    pub family: EquationFamily,
    pub instance: String,
    pub sum: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquationReport {
    /// Distinct equation instances with at least one term in the support.
    pub checked: usize,
    pub violations: Vec<EquationViolation>,
}

impl EquationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The two sides of a basis word as walks ending at a common vertex.
fn sides(alg: &Algebra, b: &NormalWord) -> (Walk, Walk) {
    let g = alg.graph();
    match b {
        NormalWord::Vertex(v) => (Walk::vertex(*v), Walk::vertex(*v)),
        NormalWord::Mixed { w, h } => {
            let end = w
                .last()
                .or(h.last())
                .map(|&e| g.range(e))
                .expect("nonempty");
            let side = |x: &[EdgeId]| Walk::from_edges(g, x).unwrap_or_else(|| Walk::vertex(end));
            (side(w), side(h))
        }
    }
}

fn vertex_at_end(alg: &Algebra, x: &Walk) -> Walk {
    Walk::vertex(x.end(alg.graph()))
}

/// Instances in which `F_b(g)` appears as a term.
fn instances_for(alg: &Algebra, b: &NormalWord, gen: Letter, out: &mut BTreeSet<Instance>) {
    let g = alg.graph();
    let (w, h) = sides(alg, b);
    let siblings = |e: EdgeId| g.out_edges(g.source(e)).to_vec();
    match gen {
        Letter::Ghost(e) => {
            // F_p(e*)
            if h.is_vertex() {
                for f in siblings(e) {
                    out.insert(Instance::PathGhost { e, f, p: w.clone() });
                }
            }
            // F_{pff*}(e*)
            if h.len() == 1 && w.last() == h.last() {
                let f = h.first().unwrap();
                out.insert(Instance::PathGhost {
                    e,
                    f,
                    p: w.drop_last(g).unwrap(),
                });
            }
            // F_{[fpe]*}(e*)
            if w.is_vertex() && h.len() >= 2 && h.last() == Some(e) {
                let f = h.first().unwrap();
                let p = h.drop_first(g).unwrap().drop_last(g).unwrap();
                out.insert(Instance::GhostPath { e, f, p });
            }
            // F_{w[fh]*}(e*)
            if let Some(f) = h.first() {
                out.insert(Instance::Mixed {
                    e,
                    f,
                    w: w.clone(),
                    h: h.drop_first(g).unwrap(),
                });
            }
        }
        Letter::Real(f) => {
            // F_{epf}(f)
            if h.is_vertex() && w.len() >= 2 && w.last() == Some(f) {
                let e = w.first().unwrap();
                let p = w.drop_first(g).unwrap().drop_last(g).unwrap();
                out.insert(Instance::PathGhost { e, f, p });
            }
            // F_{p*}(f)
            if w.is_vertex() {
                for e in siblings(f) {
                    out.insert(Instance::GhostPath { e, f, p: h.clone() });
                }
            }
            // F_{e[pe]*}(f)
            if w.len() == 1 && w.last() == h.last() {
                let e = w.first().unwrap();
                out.insert(Instance::GhostPath {
                    e,
                    f,
                    p: h.drop_last(g).unwrap(),
                });
            }
            // F_{ewh*}(f)
            if let Some(e) = w.first() {
                out.insert(Instance::Mixed {
                    e,
                    f,
                    w: w.drop_first(g).unwrap(),
                    h: h.clone(),
                });
            }
        }
        Letter::Vertex(_) => {}
    }
}

/// Evaluates one instance; `None` when its side conditions fail.
fn evaluate(alg: &Algebra, t: &FunctionalTable, inst: &Instance) -> Option<Rational> {
    let g = alg.graph();
    match inst {
        Instance::PathGhost { e, f, p } => {
            let (e, f) = (*e, *f);
            if g.source(e) != g.source(f) {
                return None;
            }
            let pf = p.push_back(g, f)?;
            let epf = pf.push_front(g, e)?;
            let t1 = alg.word(p, &vertex_at_end(alg, p));
            let t2 = alg.word(&pf, &Walk::edge(g, f));
            let t3 = alg.word(&epf, &vertex_at_end(alg, &epf));
            Some(
                t.at(t1.as_ref(), Letter::Ghost(e))
                    + t.at(t2.as_ref(), Letter::Ghost(e))
                    + t.at(t3.as_ref(), Letter::Real(f)),
            )
        }
        Instance::GhostPath { e, f, p } => {
            let (e, f) = (*e, *f);
            if g.source(e) != g.source(f) {
                return None;
            }
            let pe = p.push_back(g, e)?;
            let fpe = pe.push_front(g, f)?;
            let t1 = alg.word(&vertex_at_end(alg, &fpe), &fpe);
            let t2 = alg.word(&vertex_at_end(alg, p), p);
            let t3 = alg.word(&Walk::edge(g, e), &pe);
            Some(
                t.at(t1.as_ref(), Letter::Ghost(e))
                    + t.at(t2.as_ref(), Letter::Real(f))
                    + t.at(t3.as_ref(), Letter::Real(f)),
            )
        }
        Instance::Mixed { e, f, w, h } => {
            let (e, f) = (*e, *f);
            if g.source(e) != g.source(f) {
                return None;
            }
            if h.is_vertex() && w.last() == Some(f) {
                return None;
            }
            if w.is_vertex() && h.last() == Some(e) {
                return None;
            }
            if w.end(g) != h.end(g) {
                return None;
            }
            let fh = h.push_front(g, f)?;
            let ew = w.push_front(g, e)?;
            let t1 = alg.word(w, &fh);
            let t2 = alg.word(&ew, h);
            Some(t.at(t1.as_ref(), Letter::Ghost(e)) + t.at(t2.as_ref(), Letter::Real(f)))
        }
    }
}

fn describe(alg: &Algebra, inst: &Instance) -> String {
    let g = alg.graph();
    let walk = |x: &Walk| {
        if x.is_vertex() {
            g.vertex_name(x.start()).to_string()
        } else {
            g.spell(x.edges())
        }
    };
    match inst {
        Instance::PathGhost { e, f, p } | Instance::GhostPath { e, f, p } => {
            format!("e={} f={} p={}", g.edge_name(*e), g.edge_name(*f), walk(p))
        }
        Instance::Mixed { e, f, w, h } => format!(
            "e={} f={} w={} h={}",
            g.edge_name(*e),
            g.edge_name(*f),
            walk(w),
            walk(h)
        ),
    }
}

/// Checks all three families on an explicit table.
///
/// Instances are generated from the support of the table, so every instance
/// not listed has all of its terms equal to zero.
pub fn check_table(alg: &Algebra, table: &FunctionalTable) -> EquationReport {
    let mut instances = BTreeSet::new();
    for ((b, g), _) in table.iter() {
        instances_for(alg, b, *g, &mut instances);
    }
    let mut report = EquationReport::default();
    for inst in &instances {
        let Some(sum) = evaluate(alg, table, inst) else {
            continue;
        };
        report.checked += 1;
        if !sum.is_zero() {
            let family = match inst {
                Instance::PathGhost { .. } => EquationFamily::PathGhost,
                Instance::GhostPath { .. } => EquationFamily::GhostPath,
                Instance::Mixed { .. } => EquationFamily::Mixed,
            };
            report.violations.push(EquationViolation {
                family,
                instance: describe(alg, inst),
                sum,
            });
        }
    }
    report
}

/// Verifies the functional equations for a certified derivation via `D̂`.
pub fn check_functional_equations(d: &Derivation) -> EquationReport {
    let (_, hat) = vertex_normalize(d);
    check_table(d.algebra(), &FunctionalTable::extract(&hat))
}

impl EquationViolation {
    pub fn render(&self) -> String {
        format!("{} [{}]: sum = {}", self.family, self.instance, self.sum)
    }
}

/// Renders `F_b(g) = c` entries, one per line.
pub fn render_table(alg: &Algebra, t: &FunctionalTable) -> Vec<String> {
    t.iter()
        .map(|((b, g), c)| {
            format!(
                "F[{}]({}) = {}",
                render::word(alg, b),
                alg.letter_name(*g),
                c
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeff::rat;
    use crate::graph::{Graph, Path, SpecialSelection};

    fn toeplitz() -> Arc<Algebra> {
        let g = Graph::build(["v", "u"], [("a", "v", "v"), ("b", "v", "u")]).unwrap();
        let sel = SpecialSelection::with_named_overrides(&g, &[("v", "b")]).unwrap();
        Arc::new(Algebra::new(g, sel).unwrap())
    }

    fn word(alg: &Algebra, w: &str, h: &str) -> NormalWord {
        alg.named_word(w, h).unwrap().unwrap()
    }

    #[test]
    fn extraction_examples() {
        let t = toeplitz();
        let da = Derivation::cycle(&t, &Path::parse(t.graph(), "a").unwrap()).unwrap();
        let table = FunctionalTable::extract(&da);
        assert_eq!(table.len(), 3);
        let (a, b, a_star) = (
            t.letter("a").unwrap(),
            t.letter("b").unwrap(),
            t.letter("a*").unwrap(),
        );
        assert_eq!(table.get(&word(&t, "a a", ""), a), rat(1));
        assert_eq!(table.get(&word(&t, "a b", ""), b), rat(1));
        assert_eq!(
            table.get(
                &NormalWord::Vertex(t.graph().vertex_by_name("v").unwrap()),
                a_star
            ),
            rat(-1)
        );

        assert!(FunctionalTable::extract(&Derivation::zero(&t)).is_empty());

        let ad_b = Derivation::inner(&t, &t.parse_word("b").unwrap());
        let table = FunctionalTable::extract(&ad_b);
        let bw = word(&t, "b", "");
        assert_eq!(table.get(&bw, t.letter("v").unwrap()), rat(-1));
        assert_eq!(table.get(&bw, t.letter("u").unwrap()), rat(1));
    }

    #[test]
    fn equations_hold_on_examples() {
        let t = toeplitz();
        let da = Derivation::cycle(&t, &Path::parse(t.graph(), "a").unwrap()).unwrap();
        let report = check_functional_equations(&da);
        assert!(report.holds(), "{:?}", report.violations);
        assert!(report.checked > 0);
        let inner = Derivation::inner(&t, &t.parse_word("a a*").unwrap());
        assert!(check_functional_equations(&inner).holds());
        let zero = check_functional_equations(&Derivation::zero(&t));
        assert!(zero.holds());
        assert_eq!(zero.checked, 0);
    }

    #[test]
    fn corrupted_table_is_caught() {
        let t = toeplitz();
        let da = Derivation::cycle(&t, &Path::parse(t.graph(), "a").unwrap()).unwrap();
        let mut table = FunctionalTable::extract(&da);
        table
            .entries
            .insert((word(&t, "a a", ""), t.letter("a").unwrap()), rat(2));
        assert!(!check_table(&t, &table).holds());
    }
}
