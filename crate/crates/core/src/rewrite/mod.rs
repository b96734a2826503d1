//! Words, normal forms and element arithmetic.
//!
//! An [`Algebra`] bundles a graph with its special-edge selection and the
//! rewriting system they generate. Normal forms are computed by repeatedly
//! rewriting a length-two redex; the monomial order is degree-lexicographic
//! with vertices below ghost letters below real letters, and the special edge
//! ranked last among the edges sharing its source.

mod confluence;
mod element;
mod rules;

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use thiserror::Error;

use crate::coeff::Coefficient;
use crate::graph::{EdgeId, Graph, GraphError, SpecialSelection, Symbol, VertexId, Walk};

pub use confluence::CompositionDefect;
pub use element::{Element, Letter, NormalWord};
pub use rules::{Rule, RuleFamily};

use rules::RuleTable;

/// Which redex is rewritten first.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("letter {0:?} does not resolve in the graph")]
    UnresolvedLetter(Letter),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("a word needs at least one letter")]
    EmptyWord,
    #[error("normalizing a word of length {length} exceeded the step ceiling {ceiling}")]
    StepCeiling { length: usize, ceiling: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Default multiplier of the step ceiling `factor·(n·(|E|+1))³`.
pub const DEFAULT_STEP_FACTOR: u64 = 10;

/// The Leavitt path algebra of a finite graph with a fixed special-edge selection.
#[derive(Clone, Debug)]
pub struct Algebra {
    graph: Graph,
    special: SpecialSelection,
    rules: RuleTable,
    edge_rank: Vec<u32>,
    step_factor: u64,
    id: u64,
}

impl Algebra {
    pub fn new(graph: Graph, special: SpecialSelection) -> Result<Algebra, GraphError> {
        special.validate(&graph)?;
        let rules = RuleTable::generate(&graph, &special);
        let mut order: Vec<EdgeId> = graph.edges().collect();
        order.sort_by(|&a, &b| {
            graph
                .source(a)
                .cmp(&graph.source(b))
                .then(special.is_special(a).cmp(&special.is_special(b)))
                .then_with(|| graph.edge_name(a).cmp(graph.edge_name(b)))
        });
        let mut edge_rank = vec![0; graph.edge_count()];
        for (rank, e) in order.into_iter().enumerate() {
            edge_rank[e.index()] = rank as u32;
        }
        Ok(Algebra {
            graph,
            special,
            rules,
            edge_rank,
            step_factor: DEFAULT_STEP_FACTOR,
            id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
        })
    }

    pub fn with_default_special(graph: Graph) -> Algebra {
        let special = SpecialSelection::default_for(&graph);
        Algebra::new(graph, special).expect("default selection is valid")
    }

    /// A copy whose rule for `rule.lhs` is replaced; used to exercise the
    /// composition checker on broken systems.
    pub fn with_replaced_rule(&self, rule: Rule) -> Algebra {
        let mut out = self.clone();
        out.rules.replace(rule);
        out.id = NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed);
        out
    }

    pub fn with_step_factor(mut self, factor: u64) -> Algebra {
        self.step_factor = factor;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn special(&self) -> &SpecialSelection {
        &self.special
    }

    /// Identifies this ambient; distinct constructions never share an id.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn rules(&self) -> &[Rule] {
        self.rules.rules()
    }

    pub fn rule(&self, x: Letter, y: Letter) -> Option<&Rule> {
        self.rules.get(x, y)
    }

    /// All generators: vertices, then real edges, then ghost edges.
    pub fn generators(&self) -> Vec<Letter> {
        let g = &self.graph;
        g.vertices()
            .map(Letter::Vertex)
            .chain(g.edges().map(Letter::Real))
            .chain(g.edges().map(Letter::Ghost))
            .collect()
    }

    pub fn letter_name(&self, l: Letter) -> String {
        match l {
            Letter::Vertex(v) => self.graph.vertex_name(v).to_string(),
            Letter::Real(e) => self.graph.edge_name(e).to_string(),
            Letter::Ghost(e) => format!("{}*", self.graph.edge_name(e)),
        }
    }

    /// Resolves a single letter spelling such as `v`, `a` or `a*`.
    pub fn letter(&self, spelled: &str) -> Result<Letter, RewriteError> {
        let (name, ghost) = match spelled.strip_suffix('*') {
            Some(n) => (n, true),
            None => (spelled, false),
        };
        match (self.graph.lookup(name), ghost) {
            (Some(Symbol::Vertex(v)), _) => Ok(Letter::Vertex(v)),
            (Some(Symbol::Edge(e)), false) => Ok(Letter::Real(e)),
            (Some(Symbol::Edge(e)), true) => Ok(Letter::Ghost(e)),
            (None, _) => Err(RewriteError::UnknownName(spelled.to_string())),
        }
    }

    /// Resolves whitespace-separated letter spellings, e.g. `"a b*"`.
    pub fn letters(&self, spelled: &str) -> Result<Vec<Letter>, RewriteError> {
        let out = spelled
            .split_whitespace()
            .map(|t| self.letter(t))
            .collect::<Result<Vec<_>, _>>()?;
        if out.is_empty() {
            return Err(RewriteError::EmptyWord);
        }
        Ok(out)
    }

    fn edge_path(&self, spelled: &str) -> Result<Vec<EdgeId>, RewriteError> {
        spelled
            .split_whitespace()
            .map(|n| Ok(self.graph.edge_by_name(n)?))
            .collect()
    }

    /// Parses `w` and `h` as edge spellings and builds `w h*` if it is a basis word.
    pub fn named_word(&self, w: &str, h: &str) -> Result<Option<NormalWord>, RewriteError> {
        let (w, h) = (self.edge_path(w)?, self.edge_path(h)?);
        if w.is_empty() && h.is_empty() {
            return Err(RewriteError::EmptyWord);
        }
        Ok(self.is_basis_word(&w, &h).then(|| NormalWord::mixed(w, h)))
    }

    /// Normal form of a single letter spelling, e.g. `"a a*"` as a word.
    pub fn parse_word(&self, spelled: &str) -> Result<Element, RewriteError> {
        let letters = self.letters(spelled)?;
        self.normalize(&letters, Strategy::Leftmost)
    }

    fn is_path(&self, edges: &[EdgeId]) -> bool {
        edges.iter().all(|e| e.index() < self.graph.edge_count())
            && edges.windows(2).all(|p| self.graph.composable(p[0], p[1]))
    }

    /// Whether `w h*` is a basis word (at least one side nonempty).
    pub fn is_basis_word(&self, w: &[EdgeId], h: &[EdgeId]) -> bool {
        if w.is_empty() && h.is_empty() {
            return false;
        }
        if !self.is_path(w) || !self.is_path(h) {
            return false;
        }
        match (w.last(), h.last()) {
            (Some(&x), Some(&y)) => {
                self.graph.range(x) == self.graph.range(y)
                    && !(x == y && self.special.is_special(x))
            }
            _ => true,
        }
    }

    /// Whether a normal word satisfies every basis invariant in this ambient.
    pub fn is_normal(&self, word: &NormalWord) -> bool {
        match word {
            NormalWord::Vertex(v) => v.index() < self.graph.vertex_count(),
            NormalWord::Mixed { w, h } => self.is_basis_word(w, h),
        }
    }

    /// The basis word `w h*` for walks ending at the same vertex, or `None`
    /// when the pair is not a basis word (zero or reducible).
    pub fn word(&self, w: &Walk, h: &Walk) -> Option<NormalWord> {
        if w.end(&self.graph) != h.end(&self.graph) {
            return None;
        }
        if w.is_vertex() && h.is_vertex() {
            return Some(NormalWord::Vertex(w.start()));
        }
        let (w, h) = (w.edges().to_vec(), h.edges().to_vec());
        self.is_basis_word(&w, &h).then(|| NormalWord::mixed(w, h))
    }

    /// The element `w·h*` for arbitrary walks, normalized.
    pub fn walk_product(&self, w: &Walk, h: &Walk) -> Element {
        let mut letters: Vec<Letter> = w.edges().iter().map(|&e| Letter::Real(e)).collect();
        letters.extend(h.edges().iter().rev().map(|&e| Letter::Ghost(e)));
        if letters.is_empty() {
            if w.start() != h.start() {
                return Element::zero();
            }
            letters.push(Letter::Vertex(w.start()));
        } else if w.is_vertex() {
            letters.insert(0, Letter::Vertex(w.start()));
        } else if h.is_vertex() {
            letters.push(Letter::Vertex(h.start()));
        }
        self.normalize(&letters, Strategy::Leftmost)
            .expect("walk products terminate")
    }

    pub fn vertex(&self, v: VertexId) -> Element {
        Element::word(NormalWord::Vertex(v))
    }

    /// `Σ_v v`, the unit of the algebra.
    pub fn one<C: Coefficient>(&self) -> Element<C> {
        self.graph
            .vertices()
            .map(|v| (NormalWord::Vertex(v), C::one()))
            .collect()
    }

    fn letter_key(&self, l: Letter) -> (u8, u32) {
        match l {
            Letter::Vertex(v) => (0, v.0),
            Letter::Ghost(e) => (1, self.edge_rank[e.index()]),
            Letter::Real(e) => (2, self.edge_rank[e.index()]),
        }
    }

    /// The monomial order on letter sequences: length first, then letter ranks.
    pub fn cmp_letters(&self, x: &[Letter], y: &[Letter]) -> Ordering {
        x.len().cmp(&y.len()).then_with(|| {
            x.iter()
                .map(|&l| self.letter_key(l))
                .cmp(y.iter().map(|&l| self.letter_key(l)))
        })
    }

    /// The monomial order on normal words via their spellings.
    pub fn cmp_words(&self, x: &NormalWord, y: &NormalWord) -> Ordering {
        self.cmp_letters(&x.letters(), &y.letters())
    }

    /// Terms of `x` sorted by the monomial order.
    pub fn sorted_terms<'a, C: Coefficient>(
        &self,
        x: &'a Element<C>,
    ) -> Vec<(&'a NormalWord, &'a C)> {
        let mut terms: Vec<_> = x.iter().collect();
        terms.sort_by(|a, b| self.cmp_words(a.0, b.0));
        terms
    }

    /// `factor·(n·(|E|+1))³` for a word of `n` letters.
    pub fn step_ceiling(&self, n: usize) -> u64 {
        let base = (n as u64).saturating_mul(self.graph.edge_count() as u64 + 1);
        self.step_factor
            .saturating_mul(base.saturating_mul(base).saturating_mul(base))
    }

    fn find_redex(&self, word: &[Letter], strategy: Strategy) -> Option<(usize, &Rule)> {
        let hit = |i: usize| self.rules.get(word[i], word[i + 1]).map(|r| (i, r));
        let n = word.len();
        if n < 2 {
            return None;
        }
        match strategy {
            Strategy::Leftmost => (0..n - 1).find_map(hit),
            Strategy::Rightmost => (0..n - 1).rev().find_map(hit),
        }
    }

    /// Reduces a letter sequence to its normal form.
    pub fn normalize<C: Coefficient>(
        &self,
        word: &[Letter],
        strategy: Strategy,
    ) -> Result<Element<C>, RewriteError> {
        if word.is_empty() {
            return Err(RewriteError::EmptyWord);
        }
        if let Some(&bad) = word.iter().find(|&&l| !self.rules.resolves(l)) {
            return Err(RewriteError::UnresolvedLetter(bad));
        }
        let ceiling = self.step_ceiling(word.len());
        let mut steps = 0u64;
        let mut out = Element::zero();
        let mut stack: Vec<(C, Vec<Letter>)> = vec![(C::one(), word.to_vec())];
        while let Some((c, w)) = stack.pop() {
            match self.find_redex(&w, strategy) {
                None => out.add_term(irreducible_to_word(&w), c),
                Some((i, rule)) => {
                    steps += 1;
                    if steps > ceiling {
                        return Err(RewriteError::StepCeiling {
                            length: word.len(),
                            ceiling,
                        });
                    }
                    for (k, rhs) in &rule.rhs {
                        let mut next = Vec::with_capacity(w.len() + rhs.len());
                        next.extend_from_slice(&w[..i]);
                        next.extend_from_slice(rhs);
                        next.extend_from_slice(&w[i + 2..]);
                        stack.push((c.clone() * C::from_i64(*k), next));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of two basis words.
    pub fn multiply_words<C: Coefficient>(&self, x: &NormalWord, y: &NormalWord) -> Element<C> {
        let mut letters = x.letters();
        let right = y.letters();
        let junction = (*letters.last().unwrap(), right[0]);
        if self.rules.get(junction.0, junction.1).is_none() {
            letters.extend(right);
            return Element::word(irreducible_to_word(&letters));
        }
        letters.extend(right);
        self.normalize(&letters, Strategy::Leftmost)
            .expect("product of normal words exceeded the step ceiling")
    }

    /// Bilinear product. Panics only if the step ceiling is breached, which
    /// signals a defect in the rule table.
    pub fn multiply<C: Coefficient>(&self, x: &Element<C>, y: &Element<C>) -> Element<C> {
        let mut out = Element::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let coeff = ca.clone() * cb.clone();
                out.add_scaled(&self.multiply_words(a, b), &coeff);
            }
        }
        out
    }

    /// Left-to-right product of several elements.
    pub fn product<C: Coefficient>(&self, factors: &[&Element<C>]) -> Element<C> {
        let mut iter = factors.iter();
        let Some(first) = iter.next() else {
            return self.one();
        };
        iter.fold((*first).clone(), |acc, f| self.multiply(&acc, f))
    }

    /// The involution `v ↦ v`, `e ↦ e*`, `(xy)* = y*x*`, extended linearly.
    pub fn star<C: Coefficient>(&self, x: &Element<C>) -> Element<C> {
        x.iter().map(|(w, c)| (w.star(), c.clone())).collect()
    }

    /// All basis words with `|w| + |h| ≤ maxlen`.
    ///
    /// Ordered by length; within a length, real paths, then ghost paths, then
    /// mixed words, each by edge-name spelling.
    pub fn enumerate_basis(&self, maxlen: usize) -> Vec<NormalWord> {
        let g = &self.graph;
        let mut out: Vec<NormalWord> = g.vertices().map(NormalWord::Vertex).collect();
        if maxlen == 0 {
            return out;
        }
        let paths: Vec<Vec<EdgeId>> = g
            .enumerate_paths(maxlen)
            .into_iter()
            .map(|p| p.edges().to_vec())
            .collect();
        let mut by_len: Vec<Vec<&Vec<EdgeId>>> = vec![Vec::new(); maxlen + 1];
        for p in &paths {
            by_len[p.len()].push(p);
        }
        for len in 1..=maxlen {
            out.extend(by_len[len].iter().map(|p| NormalWord::path((*p).clone())));
            out.extend(by_len[len].iter().map(|p| NormalWord::ghost((*p).clone())));
            for wl in 1..len {
                for w in &by_len[wl] {
                    for h in &by_len[len - wl] {
                        if self.is_basis_word(w, h) {
                            out.push(NormalWord::mixed((*w).clone(), (*h).clone()));
                        }
                    }
                }
            }
        }
        out
    }

    /// Rewrites every overlap `xyz` both ways and reports disagreements.
    pub fn check_compositions(&self) -> Vec<CompositionDefect> {
        confluence::check(self)
    }
}

/// Converts an irreducible letter sequence (a vertex, or reals followed by ghosts).
fn irreducible_to_word(word: &[Letter]) -> NormalWord {
    if let [Letter::Vertex(v)] = word {
        return NormalWord::Vertex(*v);
    }
    let mut w = Vec::new();
    let mut h = Vec::new();
    for &l in word {
        match l {
            Letter::Real(e) => {
                debug_assert!(h.is_empty(), "real letter after a ghost letter");
                w.push(e)
            }
            Letter::Ghost(e) => h.push(e),
            Letter::Vertex(_) => unreachable!("vertex inside an irreducible word"),
        }
    }
    h.reverse();
    NormalWord::mixed(w, h)
}
