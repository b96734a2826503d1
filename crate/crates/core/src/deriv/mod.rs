//! Derivations of a Leavitt path algebra.
//!
//! A derivation is determined by its images on the generators. An assignment
//! extends to a derivation exactly when the Leibniz extension kills every
//! polynomial of the rewriting system, so every constructor here certifies its
//! output by evaluating those polynomials.

mod functional;
mod inner;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::Rational;
use crate::graph::{EdgeId, GraphError, Path, Walk};
use crate::render;
use crate::rewrite::{Algebra, Element, Letter, RewriteError, Rule, Strategy};

pub use functional::{
    check_functional_equations, check_table, render_table, EquationFamily, EquationReport,
    EquationViolation, FunctionalTable,
};
pub use inner::{
    check_inner_formulas, check_r2, check_r3, is_inner_bounded, vertex_normalize, FormulaMismatch,
    InnerFormulaReport, InnerSearch, RelationReport,
};

/// Images of the generators; absent letters map to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorAssignment {
    images: BTreeMap<Letter, Element>,
}

impl GeneratorAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, l: Letter, x: Element) {
        if x.is_zero() {
            self.images.remove(&l);
        } else {
            self.images.insert(l, x);
        }
    }

    pub fn with(mut self, l: Letter, x: Element) -> Self {
        self.set(l, x);
        self
    }

    pub fn get(&self, l: Letter) -> Option<&Element> {
        self.images.get(&l)
    }

    pub fn image(&self, l: Letter) -> Element {
        self.images.get(&l).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Element)> {
        self.images.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }
}

impl FromIterator<(Letter, Element)> for GeneratorAssignment {
    fn from_iter<T: IntoIterator<Item = (Letter, Element)>>(iter: T) -> Self {
        let mut out = Self::new();
        for (l, x) in iter {
            out.set(l, x);
        }
        out
    }
}

/// `Σ_i x₁…x_{i−1}·asg(x_i)·x_{i+1}…x_n`, normalized.
pub fn leibniz_eval(
    alg: &Algebra,
    asg: &GeneratorAssignment,
    word: &[Letter],
) -> Result<Element, RewriteError> {
    if word.is_empty() {
        return Err(RewriteError::EmptyWord);
    }
    let mut out = Element::zero();
    for (i, &l) in word.iter().enumerate() {
        let Some(img) = asg.get(l) else {
            continue;
        };
        let mut term = img.clone();
        if i > 0 {
            let left = alg.normalize(&word[..i], Strategy::Leftmost)?;
            term = alg.multiply(&left, &term);
        }
        if i + 1 < word.len() && !term.is_zero() {
            let right = alg.normalize(&word[i + 1..], Strategy::Leftmost)?;
            term = alg.multiply(&term, &right);
        }
        out.add_scaled(&term, &Rational::from_integer(1.into()));
    }
    Ok(out)
}

/// A rewriting polynomial on which the Leibniz extension does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDefect {
    pub rule: Rule,
    pub value: Element,
}

impl RelationDefect {
    /// The polynomial `lhs − rhs` in text form.
    pub fn relation(&self, alg: &Algebra) -> String {
        let lhs = render::letters(alg, &self.rule.lhs);
        let mut rhs = Element::zero();
        for (k, w) in &self.rule.rhs {
            let x: Element = alg.normalize(w, Strategy::Leftmost).unwrap_or_default();
            rhs.add_scaled(&x, &Rational::from_integer((*k).into()));
        }
        if rhs.is_zero() {
            lhs
        } else {
            let r = render::element(alg, &-&rhs);
            match r.strip_prefix('-') {
                Some(rest) => format!("{lhs} - {rest}"),
                None => format!("{lhs} + {r}"),
            }
        }
    }

    pub fn describe(&self, alg: &Algebra) -> String {
        format!(
            "{} {} ↦ {}",
            self.rule.family,
            self.relation(alg),
            render::element(alg, &self.value)
        )
    }
}

/// Evaluates the Leibniz extension on every polynomial of the rewriting system.
pub fn relation_defects(
    alg: &Algebra,
    asg: &GeneratorAssignment,
) -> Result<Vec<RelationDefect>, RewriteError> {
    let mut out = Vec::new();
    for rule in alg.rules() {
        let mut value = leibniz_eval(alg, asg, &rule.lhs)?;
        for (k, w) in &rule.rhs {
            let d = leibniz_eval(alg, asg, w)?;
            value.add_scaled(&d, &Rational::from_integer((-*k).into()));
        }
        if !value.is_zero() {
            out.push(RelationDefect {
                rule: rule.clone(),
                value,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DerivError {
    #[error("assignment violates {} relation(s)", .0.len())]
    Invalid(Vec<RelationDefect>),
    #[error("`{0}` is not a directed cycle")]
    NotACycle(String),
    #[error("`{w}` and `{h}` do not share a source")]
    SourceMismatch { w: String, h: String },
    #[error("`{w}` and `{h}` do not share a range")]
    RangeMismatch { w: String, h: String },
    #[error("`{w}` and `{h}` end in the special edge `{edge}`")]
    SpecialPair { w: String, h: String, edge: String },
    #[error("cycle `{cycle}` needs its edge `{edge}` at rotation index {index} to be special")]
    RotationNotSpecial {
        cycle: String,
        edge: String,
        index: usize,
    },
    #[error("every edge of cycle `{0}` is special")]
    AllSpecial(String),
    #[error("generator {0:?} does not resolve in the graph")]
    UnresolvedGenerator(Letter),
    #[error("derivations belong to different algebras")]
    AmbientMismatch,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How a derivation was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Assigned,
    Inner(Element),
    Cycle(Vec<EdgeId>),
    CycleStar(Vec<EdgeId>),
    Mixed { w: Vec<EdgeId>, h: Vec<EdgeId> },
    Composite,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Assigned => "assigned",
            Provenance::Inner(_) => "inner",
            Provenance::Cycle(_) => "cycle",
            Provenance::CycleStar(_) => "cycle_star",
            Provenance::Mixed { .. } => "mixed",
            Provenance::Composite => "composite",
        }
    }
}

/// A certified derivation: its relation defects were empty when constructed.
#[derive(Clone)]
pub struct Derivation {
    alg: Arc<Algebra>,
    images: GeneratorAssignment,
    provenance: Provenance,
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Derivation")
            .field("ambient", &self.alg.id())
            .field("images", &self.images)
            .field("provenance", &self.provenance.label())
            .finish()
    }
}

impl Derivation {
    /// Certifies an assignment.
    pub fn new(alg: &Arc<Algebra>, images: GeneratorAssignment) -> Result<Derivation, DerivError> {
        Self::certify(alg, images, Provenance::Assigned)
    }

    fn certify(
        alg: &Arc<Algebra>,
        images: GeneratorAssignment,
        provenance: Provenance,
    ) -> Result<Derivation, DerivError> {
        let gens = alg.generators();
        if let Some((&l, _)) = images.iter().find(|(l, _)| !gens.contains(l)) {
            return Err(DerivError::UnresolvedGenerator(l));
        }
        let defects = relation_defects(alg, &images)?;
        if !defects.is_empty() {
            return Err(DerivError::Invalid(defects));
        }
        Ok(Derivation {
            alg: Arc::clone(alg),
            images,
            provenance,
        })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Derivation {
        Derivation {
            alg: Arc::clone(alg),
            images: GeneratorAssignment::new(),
            provenance: Provenance::Composite,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn images(&self) -> &GeneratorAssignment {
        &self.images
    }

    pub fn image(&self, l: Letter) -> Element {
        self.images.image(l)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_zero()
    }

    /// `ad_λ: g ↦ λg − gλ`.
    pub fn inner(alg: &Arc<Algebra>, lambda: &Element) -> Derivation {
        let images = alg
            .generators()
            .into_iter()
            .map(|g| (g, ad(alg, lambda, g)))
            .collect();
        Self::certify(alg, images, Provenance::Inner(lambda.clone()))
            .expect("inner derivations satisfy every relation")
    }

    fn check_cycle(alg: &Algebra, c: &Path) -> Result<(), DerivError> {
        if c.is_cycle(alg.graph()) {
            Ok(())
        } else {
            Err(DerivError::NotACycle(alg.graph().spell(c.edges())))
        }
    }

    /// `D_c`: `e ↦ ce` for every edge, `c₀* ↦ −c/c₀`.
    pub fn cycle(alg: &Arc<Algebra>, c: &Path) -> Result<Derivation, DerivError> {
        Self::check_cycle(alg, c)?;
        let g = alg.graph();
        let cw = c.clone().into_walk(g);
        let mut images = GeneratorAssignment::new();
        for e in g.edges() {
            let ce = cw
                .push_back(g, e)
                .map(|p| alg.walk_product(&p, &Walk::vertex(p.end(g))))
                .unwrap_or_default();
            images.set(Letter::Real(e), ce);
        }
        let rest = cw.drop_first(g).expect("cycles are nonempty");
        let tail = alg.walk_product(&rest, &Walk::vertex(rest.end(g)));
        images.set(Letter::Ghost(c.first()), -&tail);
        Self::certify(alg, images, Provenance::Cycle(c.edges().to_vec()))
    }

    /// `D_{c*}`: `e* ↦ −[ce]*` for every edge leaving `r(c)`, `c₀ ↦ [c/c₀]*`.
    pub fn cycle_star(alg: &Arc<Algebra>, c: &Path) -> Result<Derivation, DerivError> {
        Self::check_cycle(alg, c)?;
        let g = alg.graph();
        let cw = c.clone().into_walk(g);
        let mut images = GeneratorAssignment::new();
        for e in g.edges() {
            let ce = cw
                .push_back(g, e)
                .map(|p| alg.walk_product(&Walk::vertex(p.end(g)), &p))
                .unwrap_or_default();
            images.set(Letter::Ghost(e), -&ce);
        }
        let rest = cw.drop_first(g).expect("cycles are nonempty");
        images.set(
            Letter::Real(c.first()),
            alg.walk_product(&Walk::vertex(rest.end(g)), &rest),
        );
        Self::certify(alg, images, Provenance::CycleStar(c.edges().to_vec()))
    }

    /// `D_{wh*}`: `h₀ ↦ w[h/h₀]*`, `w₀* ↦ −[w/w₀]h*`.
    ///
    /// Requires `s(w) = s(h)` and either a basis word `w h*` or `w = h` a
    /// single edge.
    pub fn mixed(alg: &Arc<Algebra>, w: &Path, h: &Path) -> Result<Derivation, DerivError> {
        let g = alg.graph();
        let names = || (g.spell(w.edges()), g.spell(h.edges()));
        if w.source(g) != h.source(g) {
            let (w, h) = names();
            return Err(DerivError::SourceMismatch { w, h });
        }
        if w.range(g) != h.range(g) {
            let (w, h) = names();
            return Err(DerivError::RangeMismatch { w, h });
        }
        let single_loop = w.len() == 1 && w == h;
        if !single_loop && !alg.is_basis_word(w.edges(), h.edges()) {
            let (wn, hn) = names();
            return Err(DerivError::SpecialPair {
                w: wn,
                h: hn,
                edge: g.edge_name(w.last()).to_string(),
            });
        }
        let ww = w.clone().into_walk(g);
        let hw = h.clone().into_walk(g);
        let h_rest = hw.drop_first(g).expect("nonempty");
        let w_rest = ww.drop_first(g).expect("nonempty");
        let mut images = GeneratorAssignment::new();
        images.set(Letter::Real(h.first()), alg.walk_product(&ww, &h_rest));
        images.set(Letter::Ghost(w.first()), -&alg.walk_product(&w_rest, &hw));
        Self::certify(
            alg,
            images,
            Provenance::Mixed {
                w: w.edges().to_vec(),
                h: h.edges().to_vec(),
            },
        )
    }

    /// Extends the generator images to an arbitrary element.
    pub fn apply(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in x.iter() {
            let d =
                leibniz_eval(&self.alg, &self.images, &w.letters()).expect("normal words resolve");
            out.add_scaled(&d, c);
        }
        out
    }

    fn same_ambient(&self, other: &Derivation) -> Result<(), DerivError> {
        if self.alg.id() == other.alg.id() {
            Ok(())
        } else {
            Err(DerivError::AmbientMismatch)
        }
    }

    /// `[D1, D2]: g ↦ D1(D2 g) − D2(D1 g)`, re-certified.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation, DerivError> {
        self.same_ambient(other)?;
        let images = self
            .alg
            .generators()
            .into_iter()
            .map(|g| {
                let x = self.apply(&other.image(g));
                let y = other.apply(&self.image(g));
                (g, &x - &y)
            })
            .collect();
        Self::certify(&self.alg, images, Provenance::Composite)
    }

    /// Generator-wise `Σ cᵢ Dᵢ`.
    pub fn combine(terms: &[(Rational, &Derivation)]) -> Result<Derivation, DerivError> {
        let Some((_, first)) = terms.first() else {
            panic!("combine needs at least one term to fix the ambient");
        };
        for (_, d) in terms {
            first.same_ambient(d)?;
        }
        let images = first
            .alg
            .generators()
            .into_iter()
            .map(|g| {
                let mut x = Element::zero();
                for (c, d) in terms {
                    if let Some(img) = d.images.get(g) {
                        x.add_scaled(img, c);
                    }
                }
                (g, x)
            })
            .collect();
        Self::certify(&first.alg, images, Provenance::Composite)
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation::combine(&[(c.clone(), self)]).expect("scalar multiples are derivations")
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation, DerivError> {
        let one = Rational::from_integer(1.into());
        Derivation::combine(&[(one.clone(), self), (-one, other)])
    }

    /// Agreement on every generator of the same ambient.
    pub fn equal(&self, other: &Derivation) -> bool {
        self.alg.id() == other.alg.id() && self.images == other.images
    }

    /// `x ↦ D(x*)*`, again a derivation.
    pub fn star_conjugate(&self) -> Derivation {
        let images = self
            .alg
            .generators()
            .into_iter()
            .map(|g| (g, self.alg.star(&self.image(g.star()))))
            .collect();
        Self::certify(&self.alg, images, Provenance::Composite)
            .expect("star conjugates of derivations are derivations")
    }

    /// `(g, D(g))` for every generator with a nonzero image.
    pub fn nonzero_images(&self) -> impl Iterator<Item = (&Letter, &Element)> {
        self.images.iter()
    }

    /// Longest `|w| + |h|` among the generator images.
    pub fn max_image_len(&self) -> usize {
        self.images
            .iter()
            .filter_map(|(_, x)| x.max_len())
            .max()
            .unwrap_or(0)
    }

    /// One line per generator with a nonzero image, e.g. `a ↦ a a`.
    pub fn describe(&self) -> Vec<String> {
        self.images
            .iter()
            .map(|(&l, x)| {
                format!(
                    "{} ↦ {}",
                    self.alg.letter_name(l),
                    render::element(&self.alg, x)
                )
            })
            .collect()
    }

    /// Whether `D(v) = 0` for every vertex.
    pub fn vanishes_on_vertices(&self) -> bool {
        self.alg
            .graph()
            .vertices()
            .all(|v| self.images.get(Letter::Vertex(v)).is_none())
    }
}

fn ad(alg: &Algebra, lambda: &Element, g: Letter) -> Element {
    let x = alg
        .normalize::<Rational>(&[g], Strategy::Leftmost)
        .expect("generators resolve");
    &alg.multiply(lambda, &x) - &alg.multiply(&x, lambda)
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

    fn el(alg: &Algebra, s: &str) -> Element {
        let mut out = Element::zero();
        for (sign, term) in split_terms(s) {
            let x = alg.parse_word(term).unwrap();
            out.add_scaled(&x, &rat(sign));
        }
        out
    }

    fn split_terms(s: &str) -> Vec<(i64, &str)> {
        let mut out = Vec::new();
        let mut sign = 1;
        for part in s.split_inclusive(['+', '-']) {
            let (body, next) = match part.chars().last() {
                Some('+') => (&part[..part.len() - 1], 1),
                Some('-') => (&part[..part.len() - 1], -1),
                _ => (part, 1),
            };
            if !body.trim().is_empty() {
                out.push((sign, body.trim()));
            }
            sign = next;
        }
        out
    }

    fn path(alg: &Algebra, s: &str) -> Path {
        Path::parse(alg.graph(), s).unwrap()
    }

    fn d_a_assignment(t: &Algebra) -> GeneratorAssignment {
        GeneratorAssignment::new()
            .with(t.letter("a").unwrap(), el(t, "a a"))
            .with(t.letter("b").unwrap(), el(t, "a b"))
            .with(t.letter("a*").unwrap(), el(t, "-v"))
    }

    #[test]
    fn leibniz_examples() {
        let t = toeplitz();
        let asg = d_a_assignment(&t);
        let aa = t.letters("a a").unwrap();
        assert_eq!(
            leibniz_eval(&t, &asg, &aa).unwrap(),
            el(&t, "a a a").scale(&rat(2))
        );
        assert!(leibniz_eval(&t, &asg, &t.letters("v").unwrap())
            .unwrap()
            .is_zero());
        let ad_a = Derivation::inner(&t, &el(&t, "a"));
        let b = t.letters("b").unwrap();
        assert_eq!(leibniz_eval(&t, ad_a.images(), &b).unwrap(), el(&t, "a b"));
    }

    #[test]
    fn relation_defect_examples() {
        let t = toeplitz();
        let d = Derivation::cycle(&t, &path(&t, "a")).unwrap();
        assert!(relation_defects(&t, d.images()).unwrap().is_empty());
        let bad = GeneratorAssignment::new().with(t.letter("a").unwrap(), el(&t, "v"));
        let defects = relation_defects(&t, &bad).unwrap();
        let hit = defects
            .iter()
            .find(|d| d.relation(&t) == "a* a - v")
            .expect("a* a - v is violated");
        assert_eq!(hit.value, el(&t, "a*"));
        assert!(relation_defects(&t, &GeneratorAssignment::new())
            .unwrap()
            .is_empty());
        assert!(matches!(
            Derivation::new(&t, bad),
            Err(DerivError::Invalid(_))
        ));
        assert!(Derivation::new(&t, GeneratorAssignment::new())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn cycle_derivations() {
        let t = toeplitz();
        let d = Derivation::cycle(&t, &path(&t, "a")).unwrap();
        assert_eq!(d.images(), &d_a_assignment(&t));
        assert!(matches!(
            Derivation::cycle(&t, &path(&t, "a b")),
            Err(DerivError::NotACycle(_))
        ));
        let d2 = Derivation::cycle(&t, &path(&t, "a a")).unwrap();
        assert_eq!(d2.image(t.letter("a").unwrap()), el(&t, "a a a"));
        assert_eq!(d2.image(t.letter("b").unwrap()), el(&t, "a a b"));
        assert_eq!(d2.image(t.letter("a*").unwrap()), el(&t, "-a"));
    }

    #[test]
    fn cycle_star_derivations() {
        let t = toeplitz();
        let d = Derivation::cycle_star(&t, &path(&t, "a")).unwrap();
        assert_eq!(d.image(t.letter("a*").unwrap()), el(&t, "-a* a*"));
        assert_eq!(d.image(t.letter("b*").unwrap()), el(&t, "-b* a*"));
        assert_eq!(d.image(t.letter("a").unwrap()), el(&t, "v"));
        assert!(d.image(t.letter("b").unwrap()).is_zero());
        let dual = Derivation::cycle(&t, &path(&t, "a"))
            .unwrap()
            .star_conjugate();
        assert!(d.equal(&dual.scale(&rat(-1))));

        let omega = Arc::new(Algebra::with_default_special(
            Graph::build(["v"], [("e", "v", "v")]).unwrap(),
        ));
        let d = Derivation::cycle_star(&omega, &path(&omega, "e")).unwrap();
        assert_eq!(d.image(omega.letter("e*").unwrap()), el(&omega, "-e* e*"));
        assert_eq!(d.image(omega.letter("e").unwrap()), el(&omega, "v"));
    }

    #[test]
    fn mixed_derivations() {
        let t = toeplitz();
        let d = Derivation::mixed(&t, &path(&t, "a a"), &path(&t, "a")).unwrap();
        assert_eq!(d.image(t.letter("a").unwrap()), el(&t, "a a"));
        assert_eq!(d.image(t.letter("a*").unwrap()), el(&t, "-a a*"));
        assert!(d.image(t.letter("b").unwrap()).is_zero());
        let d = Derivation::mixed(&t, &path(&t, "a"), &path(&t, "a")).unwrap();
        assert_eq!(d.image(t.letter("a").unwrap()), el(&t, "a"));
        assert_eq!(d.image(t.letter("a*").unwrap()), el(&t, "-a*"));
        assert!(matches!(
            Derivation::mixed(&t, &path(&t, "a"), &path(&t, "b")),
            Err(DerivError::RangeMismatch { .. })
        ));
        let bb = Derivation::mixed(&t, &path(&t, "b"), &path(&t, "b")).unwrap();
        assert_eq!(bb.image(t.letter("b").unwrap()), el(&t, "b"));
        assert!(matches!(
            Derivation::mixed(&t, &path(&t, "a b"), &path(&t, "b")),
            Err(DerivError::SpecialPair { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let t = toeplitz();
        let daa = Derivation::mixed(&t, &path(&t, "a"), &path(&t, "a")).unwrap();
        assert_eq!(
            daa.apply(&el(&t, "a + a + a + b")),
            el(&t, "a").scale(&rat(3))
        );
        assert!(daa.apply(&Element::zero()).is_zero());
        let da = Derivation::cycle(&t, &path(&t, "a")).unwrap();
        assert_eq!(da.apply(&el(&t, "a a*")), el(&t, "a a a* - a"));
    }

    #[test]
    fn inner_examples() {
        let t = toeplitz();
        let d = Derivation::inner(&t, &el(&t, "a a*"));
        assert_eq!(d.image(t.letter("a").unwrap()), el(&t, "a - a a a*"));
        let a2 = a2();
        let d = Derivation::inner(&a2, &a2.vertex(VertexId(0)));
        assert_eq!(d.image(a2.letter("e1").unwrap()), el(&a2, "e1"));
        assert_eq!(d.image(a2.letter("e1*").unwrap()), el(&a2, "-e1*"));
        assert!(Derivation::inner(&t, &t.one()).is_zero());
    }

    #[test]
    fn bracket_and_combine() {
        let t = toeplitz();
        let daa = Derivation::mixed(&t, &path(&t, "a"), &path(&t, "a")).unwrap();
        let da = Derivation::cycle(&t, &path(&t, "a")).unwrap();
        assert!(daa.bracket(&da).unwrap().equal(&da));
        assert!(da.bracket(&da).unwrap().is_zero());
        assert!(Derivation::combine(&[(rat(1), &da), (rat(-1), &da)])
            .unwrap()
            .is_zero());
        assert!(daa.equal(&Derivation::mixed(&t, &path(&t, "a"), &path(&t, "a")).unwrap()));
        assert!(!da.equal(&Derivation::inner(&t, &el(&t, "a a*"))));
        let other = toeplitz();
        let foreign = Derivation::cycle(&other, &path(&other, "a")).unwrap();
        assert_eq!(
            da.bracket(&foreign).unwrap_err(),
            DerivError::AmbientMismatch
        );
    }
}
