//! Inner derivations: coefficient formulas, vertex normalization and bounded
//! witness search.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeff::Rational;
use crate::graph::{EdgeId, Path, Walk};
use crate::linsolve::{solve_exact, RationalMatrix};
use crate::render;
use crate::rewrite::{Algebra, Element, Letter, NormalWord};

use super::{DerivError, Derivation};

/// Splits `D = ad_λ + D̂` with `D̂(v) = 0` for every vertex.
///
/// `λ = Σ F_b(s(h))·b` over basis words `b = wh*` with `s(w) ≠ s(h)`.
pub fn vertex_normalize(d: &Derivation) -> (Element, Derivation) {
    let alg = d.algebra();
    let g = alg.graph();
    let mut lambda = Element::zero();
    for v in g.vertices() {
        for (b, c) in d.image(Letter::Vertex(v)).iter() {
            let (sw, sh) = b.sources(g);
            if sw != sh && sh == v {
                lambda.add_term(b.clone(), c.clone());
            }
        }
    }
    let hat = d
        .sub(&Derivation::inner(alg, &lambda))
        .expect("same ambient");
    assert!(
        hat.vanishes_on_vertices(),
        "vertex normalization left D(v) ≠ 0; the input is not a derivation"
    );
    (lambda, hat)
}

/// Outcome of a bounded search for `λ` with `ad_λ = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerSearch {
    Witness(Element),
    /// No `λ` supported on basis words of the given length bound exists. This
    /// says nothing about longer `λ`.
    NoneWithinBound,
}

impl InnerSearch {
    pub fn witness(&self) -> Option<&Element> {
        match self {
            InnerSearch::Witness(x) => Some(x),
            InnerSearch::NoneWithinBound => None,
        }
    }
}

/// Solves for `λ` supported on basis words of length `≤ maxlen` with `ad_λ = D`.
///
/// Unknowns follow the basis enumeration order and free unknowns are zero.
/// A returned witness has been re-substituted.
pub fn is_inner_bounded(d: &Derivation, maxlen: usize) -> InnerSearch {
    let alg = d.algebra();
    let basis = alg.enumerate_basis(maxlen);
    let gens = alg.generators();
    let columns: Vec<Vec<Element>> = basis
        .iter()
        .map(|b| {
            let ad = Derivation::inner(alg, &Element::word(b.clone()));
            gens.iter().map(|&g| ad.image(g)).collect()
        })
        .collect();
    let mut rows: BTreeMap<(usize, NormalWord), usize> = BTreeMap::new();
    let mut touch = |gi: usize, w: &NormalWord| {
        let n = rows.len();
        *rows.entry((gi, w.clone())).or_insert(n)
    };
    for col in &columns {
        for (gi, x) in col.iter().enumerate() {
            for w in x.words() {
                touch(gi, w);
            }
        }
    }
    for (gi, &g) in gens.iter().enumerate() {
        for w in d.image(g).words() {
            touch(gi, w);
        }
    }
    // deterministic row order: generator, then word
    let order: Vec<(usize, NormalWord)> = rows.keys().cloned().collect();
    let index: BTreeMap<&(usize, NormalWord), usize> =
        order.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut a = RationalMatrix::zeros(order.len(), basis.len());
    for (j, col) in columns.iter().enumerate() {
        for (gi, x) in col.iter().enumerate() {
            for (w, c) in x.iter() {
                a.set(index[&(gi, w.clone())], j, c.clone());
            }
        }
    }
    let mut rhs = vec![Rational::zero(); order.len()];
    for (gi, &g) in gens.iter().enumerate() {
        for (w, c) in d.image(g).iter() {
            rhs[index[&(gi, w.clone())]] = c.clone();
        }
    }
    let solution = solve_exact(&a, &rhs)
        .expect("dimensions agree by construction")
        .solution();
    match solution {
        None => InnerSearch::NoneWithinBound,
        Some(x) => {
            let witness: Element = basis.into_iter().zip(x).collect();
            assert!(
                Derivation::inner(alg, &witness).equal(d),
                "inner witness failed re-substitution"
            );
            InnerSearch::Witness(witness)
        }
    }
}

/// A single disagreement between a coefficient formula and `ad_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaMismatch {
    pub formula: &'static str,
    pub generator: String,
    pub target: String,
    pub predicted: Rational,
    pub actual: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InnerFormulaReport {
    pub checked: usize,
    pub mismatches: Vec<FormulaMismatch>,
}

impl InnerFormulaReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

struct Alpha<'a> {
    alg: &'a Algebra,
    lambda: &'a Element,
}

impl Alpha<'_> {
    /// `α(w h*)`, zero at non-basis indices.
    fn at(&self, w: Option<Walk>, h: Option<Walk>) -> Rational {
        match (w, h) {
            (Some(w), Some(h)) => match self.alg.word(&w, &h) {
                Some(b) => self.lambda.coefficient(&b),
                None => Rational::zero(),
            },
            _ => Rational::zero(),
        }
    }

    fn path(&self, p: Option<Walk>) -> Rational {
        let g = self.alg.graph();
        let h = p.as_ref().map(|p| Walk::vertex(p.end(g)));
        self.at(p, h)
    }

    fn ghost(&self, p: Option<Walk>) -> Rational {
        let g = self.alg.graph();
        let w = p.as_ref().map(|p| Walk::vertex(p.end(g)));
        self.at(w, p)
    }
}

fn delta(cond: bool, x: Rational) -> Rational {
    if cond {
        x
    } else {
        Rational::zero()
    }
}

/// Predicted coefficient of `t` in `ad_λ(e)`, with the name of the formula used.
fn predict_real(alg: &Algebra, a: &Alpha, e: EdgeId, t: &NormalWord) -> (&'static str, Rational) {
    let g = alg.graph();
    let special = alg.special().is_special(e);
    let (w, h) = walks(alg, t);
    if h.is_vertex() && !w.is_vertex() {
        // target a path p
        let p = &w;
        let value = delta(p.last() == Some(e), a.path(p.drop_last(g)))
            - delta(p.first() == Some(e), a.path(p.drop_first(g)))
            + a.at(Some(p.clone()), Some(Walk::edge(g, e)));
        return ("real/path", value);
    }
    if w.is_vertex() {
        // target p* with p a path or a vertex
        let p = &h;
        let value = a.ghost(p.push_front(g, e)) - delta(special, a.ghost(p.push_back(g, e)));
        return ("real/vertex-start", value);
    }
    let f = w.first().unwrap();
    if w.len() == 1 && h.last() == Some(f) && g.source(f) == g.source(e) {
        // target f[pf]*
        let p = h.drop_last(g).unwrap();
        let value = a.at(
            Some(w.clone()),
            p.push_back(g, f).and_then(|pf| pf.push_front(g, e)),
        ) - delta(e == f, a.ghost(p.push_back(g, f)))
            + delta(special, a.ghost(p.push_back(g, e)));
        return ("real/edge-start", value);
    }
    // remaining mixed targets
    let value = a.at(Some(w.clone()), h.push_front(g, e))
        - delta(w.first() == Some(e), a.at(w.drop_first(g), Some(h.clone())));
    ("real/mixed", value)
}

/// Predicted coefficient of `t` in `ad_λ(e*)`.
fn predict_ghost(alg: &Algebra, a: &Alpha, e: EdgeId, t: &NormalWord) -> (&'static str, Rational) {
    let g = alg.graph();
    let special = alg.special().is_special(e);
    let (x, y) = walks(alg, t);
    if x.is_vertex() && !y.is_vertex() {
        // target a ghost path p*
        let p = &y;
        let value = -delta(p.last() == Some(e), a.ghost(p.drop_last(g)))
            + delta(p.first() == Some(e), a.ghost(p.drop_first(g)))
            - a.at(Some(Walk::edge(g, e)), Some(p.clone()));
        return ("ghost/path", value);
    }
    if y.is_vertex() {
        // target p with p a path or a vertex
        let p = &x;
        let value = -a.path(p.push_front(g, e)) + delta(special, a.path(p.push_back(g, e)));
        return ("ghost/vertex-end", value);
    }
    let f = y.first().unwrap();
    if y.len() == 1 && x.last() == Some(f) && g.source(f) == g.source(e) {
        // target pff*
        let p = x.drop_last(g).unwrap();
        let value = -a.at(
            p.push_back(g, f).and_then(|pf| pf.push_front(g, e)),
            Some(y.clone()),
        ) + delta(e == f, a.path(p.push_back(g, f)))
            - delta(special, a.path(p.push_back(g, e)));
        return ("ghost/edge-end", value);
    }
    // remaining mixed targets x y*
    let value = -a.at(x.push_front(g, e), Some(y.clone()))
        + delta(y.first() == Some(e), a.at(Some(x.clone()), y.drop_first(g)));
    ("ghost/mixed", value)
}

fn walks(alg: &Algebra, t: &NormalWord) -> (Walk, Walk) {
    let g = alg.graph();
    match t {
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

/// Compares `ad_λ(e)` and `ad_λ(e*)` with the closed-form coefficient formulas
/// over every basis word of length `≤ |λ| + 1`.
pub fn check_inner_formulas(alg: &Arc<Algebra>, lambda: &Element) -> InnerFormulaReport {
    let d = Derivation::inner(alg, lambda);
    let bound = lambda.max_len().unwrap_or(0) + 1;
    let targets = alg.enumerate_basis(bound);
    let target_set: BTreeSet<&NormalWord> = targets.iter().collect();
    let alpha = Alpha { alg, lambda };
    let mut report = InnerFormulaReport::default();
    for e in alg.graph().edges() {
        for (gen, star) in [(Letter::Real(e), false), (Letter::Ghost(e), true)] {
            let image = d.image(gen);
            for t in &targets {
                let (formula, predicted) = if star {
                    predict_ghost(alg, &alpha, e, t)
                } else {
                    predict_real(alg, &alpha, e, t)
                };
                let actual = image.coefficient(t);
                report.checked += 1;
                if predicted != actual {
                    report.mismatches.push(FormulaMismatch {
                        formula,
                        generator: alg.letter_name(gen),
                        target: render::word(alg, t),
                        predicted,
                        actual,
                    });
                }
            }
            for w in image.words().filter(|w| !target_set.contains(w)) {
                report.mismatches.push(FormulaMismatch {
                    formula: "range",
                    generator: alg.letter_name(gen),
                    target: render::word(alg, w),
                    predicted: Rational::zero(),
                    actual: image.coefficient(w),
                });
            }
        }
    }
    report
}

/// Result of checking one of the presentation relations at bounded degree.
#[derive(Clone, Debug)]
pub struct RelationReport {
    /// The relation in text form.
    pub relation: String,
    /// Derivations entering the difference, with their signs.
    pub terms: Vec<(i64, String)>,
    /// Index words dropped from the sum because they are not basis words.
    pub skipped: Vec<String>,
    pub delta: Derivation,
    pub search: InnerSearch,
}

fn mixed_name(alg: &Algebra, w: &[EdgeId], h: &[EdgeId]) -> String {
    let g = alg.graph();
    format!("D[{} ({})*]", g.spell(w), g.spell(h))
}

/// `Δ = D_{wh*} − Σ_{e: r(e)=s(w)} D_{ew[eh]*}` and a bounded search for `Δ` being inner.
pub fn check_r2(
    alg: &Arc<Algebra>,
    w: &Path,
    h: &Path,
    maxlen: usize,
) -> Result<RelationReport, DerivError> {
    let g = alg.graph();
    let base = Derivation::mixed(alg, w, h)?;
    let one = Rational::one();
    let mut terms = vec![(1, mixed_name(alg, w.edges(), h.edges()))];
    let mut skipped = Vec::new();
    let mut parts: Vec<Derivation> = Vec::new();
    for e in g.edges().filter(|&e| g.range(e) == w.source(g)) {
        let mut ew = vec![e];
        ew.extend_from_slice(w.edges());
        let mut eh = vec![e];
        eh.extend_from_slice(h.edges());
        if !alg.is_basis_word(&ew, &eh) {
            skipped.push(format!("{} ({})*", g.spell(&ew), g.spell(&eh)));
            continue;
        }
        let (pw, ph) = (Path::new(g, ew.clone())?, Path::new(g, eh.clone())?);
        parts.push(Derivation::mixed(alg, &pw, &ph)?);
        terms.push((-1, mixed_name(alg, &ew, &eh)));
    }
    let mut combo: Vec<(Rational, &Derivation)> = vec![(one.clone(), &base)];
    combo.extend(parts.iter().map(|d| (-one.clone(), d)));
    let delta = Derivation::combine(&combo)?;
    let search = is_inner_bounded(&delta, maxlen);
    Ok(RelationReport {
        relation: format!(
            "{} = Σ_e D[e{} (e{})*]",
            mixed_name(alg, w.edges(), h.edges()),
            g.spell(w.edges()),
            g.spell(h.edges())
        ),
        terms,
        skipped,
        delta,
        search,
    })
}

/// `Δ = D_c − D_{ζᵏc} + Σ_{e: s(e)=s(c_k)} D_{ζᵏc e e*}` with `k + 1` the
/// rotation period of `c`, and a bounded search for `Δ` being inner.
pub fn check_r3(alg: &Arc<Algebra>, c: &Path, maxlen: usize) -> Result<RelationReport, DerivError> {
    let g = alg.graph();
    let name = g.spell(c.edges());
    if !c.is_cycle(g) {
        return Err(DerivError::NotACycle(name));
    }
    if c.edges().iter().all(|&e| alg.special().is_special(e)) {
        return Err(DerivError::AllSpecial(name));
    }
    let mut rotated = c.rotate();
    let mut period = 1;
    while &rotated != c {
        rotated = rotated.rotate();
        period += 1;
    }
    let k = period - 1;
    let ck = c.edges()[k];
    if !alg.special().is_special(ck) {
        return Err(DerivError::RotationNotSpecial {
            cycle: name,
            edge: g.edge_name(ck).to_string(),
            index: k,
        });
    }
    let mut zeta = c.clone();
    for _ in 0..k {
        zeta = zeta.rotate();
    }
    let dc = Derivation::cycle(alg, c)?;
    let dz = Derivation::cycle(alg, &zeta)?;
    let one = Rational::one();
    let mut terms = vec![
        (1, format!("D[{}]", name)),
        (-1, format!("D[{}]", g.spell(zeta.edges()))),
    ];
    let mut skipped = Vec::new();
    let mut parts = Vec::new();
    for &e in g.out_edges(zeta.source(g)) {
        let mut w = zeta.edges().to_vec();
        w.push(e);
        if !alg.is_basis_word(&w, &[e]) {
            skipped.push(format!("{} {}*", g.spell(&w), g.edge_name(e)));
            continue;
        }
        let pw = Path::new(g, w.clone())?;
        let pe = Path::new(g, vec![e])?;
        parts.push(Derivation::mixed(alg, &pw, &pe)?);
        terms.push((1, mixed_name(alg, &w, &[e])));
    }
    let mut combo: Vec<(Rational, &Derivation)> = vec![(one.clone(), &dc), (-one.clone(), &dz)];
    combo.extend(parts.iter().map(|d| (one.clone(), d)));
    let delta = Derivation::combine(&combo)?;
    let search = is_inner_bounded(&delta, maxlen);
    Ok(RelationReport {
        relation: format!(
            "D[{}] = D[{}] - Σ_e D[{} e e*]",
            name,
            g.spell(zeta.edges()),
            g.spell(zeta.edges())
        ),
        terms,
        skipped,
        delta,
        search,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::graph::{Graph, SpecialSelection, VertexId};

    fn toeplitz() -> Arc<Algebra> {
        let g = Graph::build(["v", "u"], [("a", "v", "v"), ("b", "v", "u")]).unwrap();
        let sel = SpecialSelection::with_named_overrides(&g, &[("v", "b")]).unwrap();
        Arc::new(Algebra::new(g, sel).unwrap())
    }

    fn a2() -> Arc<Algebra> {
        let g = Graph::build(["v1", "v2"], [("e1", "v1", "v2")]).unwrap();
        Arc::new(Algebra::with_default_special(g))
    }

    fn path(alg: &Algebra, s: &str) -> Path {
        Path::parse(alg.graph(), s).unwrap()
    }

    #[test]
    fn vertex_normalize_examples() {
        let t = toeplitz();
        let b = t.parse_word("b").unwrap();
        let (lambda, hat) = vertex_normalize(&Derivation::inner(&t, &b));
        assert_eq!(lambda, b);
        assert!(hat.is_zero());

        let da = Derivation::cycle(&t, &path(&t, "a")).unwrap();
        let (lambda, hat) = vertex_normalize(&da);
        assert!(lambda.is_zero());
        assert!(hat.equal(&da));

        let aa = Derivation::inner(&t, &t.parse_word("a a*").unwrap());
        let (lambda, hat) = vertex_normalize(&aa);
        assert!(lambda.is_zero());
        assert!(hat.equal(&aa));
    }

    #[test]
    fn inner_search_examples() {
        let t = toeplitz();
        let d1 = Derivation::mixed(&t, &path(&t, "a"), &path(&t, "a")).unwrap();
        let d2 = Derivation::mixed(&t, &path(&t, "a a"), &path(&t, "a a")).unwrap();
        let diff = d1.sub(&d2).unwrap();
        assert_eq!(
            is_inner_bounded(&diff, 2),
            InnerSearch::Witness(t.parse_word("a a*").unwrap())
        );

        let a2 = a2();
        let d = Derivation::mixed(&a2, &path(&a2, "e1"), &path(&a2, "e1")).unwrap();
        assert_eq!(
            is_inner_bounded(&d, 1),
            InnerSearch::Witness(a2.vertex(VertexId(0)))
        );

        let da = Derivation::cycle(&t, &path(&t, "a")).unwrap();
        assert_eq!(is_inner_bounded(&da, 4), InnerSearch::NoneWithinBound);
    }

    #[test]
    fn inner_formula_examples() {
        let t = toeplitz();
        for s in ["a a*", "v", "b", "a* a*", "a b", "b* a*", "a a a*"] {
            let report = check_inner_formulas(&t, &t.parse_word(s).unwrap());
            assert!(report.holds(), "{s}: {:?}", report.mismatches);
        }
        let zero = check_inner_formulas(&t, &Element::zero());
        assert!(zero.holds());
    }

    #[test]
    fn inner_formula_i1_example() {
        let t = toeplitz();
        let d = Derivation::inner(&t, &t.parse_word("a a*").unwrap());
        let a = t.parse_word("a").unwrap();
        let (w, _) = a.iter().next().unwrap();
        assert_eq!(d.image(t.letter("a").unwrap()).coefficient(w), rat(1));
    }

    #[test]
    fn r2_examples() {
        let t = toeplitz();
        let r = check_r2(&t, &path(&t, "a"), &path(&t, "a"), 2).unwrap();
        assert_eq!(r.terms.len(), 2);
        assert_eq!(
            r.search,
            InnerSearch::Witness(t.parse_word("a a*").unwrap())
        );
        let r = check_r2(&t, &path(&t, "a a"), &path(&t, "a"), 4).unwrap();
        assert!(r.search.witness().is_some());

        let a2 = a2();
        let r = check_r2(&a2, &path(&a2, "e1"), &path(&a2, "e1"), 1).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.search, InnerSearch::Witness(a2.vertex(VertexId(0))));
    }

    #[test]
    fn r3_preconditions() {
        let t = toeplitz();
        assert!(matches!(
            check_r3(&t, &path(&t, "a"), 2),
            Err(DerivError::RotationNotSpecial { .. })
        ));
        let omega = Arc::new(Algebra::with_default_special(
            Graph::build(["v"], [("e", "v", "v")]).unwrap(),
        ));
        assert!(matches!(
            check_r3(&omega, &path(&omega, "e"), 2),
            Err(DerivError::AllSpecial(_))
        ));
    }
}
