use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::coeff::{Coefficient, Rational};
use crate::graph::{EdgeId, Graph, VertexId};

/// A generator of the algebra: a vertex, a real edge `e` or a ghost edge `e*`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Vertex(VertexId),
    Real(EdgeId),
    Ghost(EdgeId),
}

impl Letter {
    pub fn star(self) -> Letter {
        match self {
            Letter::Vertex(v) => Letter::Vertex(v),
            Letter::Real(e) => Letter::Ghost(e),
            Letter::Ghost(e) => Letter::Real(e),
        }
    }
}

/// A basis word: a vertex, or `w h*` with `w`, `h` edge sequences (not both empty).
///
/// A real path has empty `h`, a ghost path has empty `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalWord {
    Vertex(VertexId),
    Mixed { w: Vec<EdgeId>, h: Vec<EdgeId> },
}

impl NormalWord {
    pub fn path(edges: Vec<EdgeId>) -> NormalWord {
        NormalWord::Mixed {
            w: edges,
            h: Vec::new(),
        }
    }

    pub fn ghost(edges: Vec<EdgeId>) -> NormalWord {
        NormalWord::Mixed {
            w: Vec::new(),
            h: edges,
        }
    }

    pub fn mixed(w: Vec<EdgeId>, h: Vec<EdgeId>) -> NormalWord {
        NormalWord::Mixed { w, h }
    }

    /// `|w| + |h|`; vertices have length zero.
    pub fn len(&self) -> usize {
        match self {
            NormalWord::Vertex(_) => 0,
            NormalWord::Mixed { w, h } => w.len() + h.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of letters in the spelling (a vertex is one letter).
    pub fn spelled_len(&self) -> usize {
        match self {
            NormalWord::Vertex(_) => 1,
            NormalWord::Mixed { w, h } => w.len() + h.len(),
        }
    }

    /// `w₀…w_z h_z*…h₀*`.
    pub fn letters(&self) -> Vec<Letter> {
        match self {
            NormalWord::Vertex(v) => vec![Letter::Vertex(*v)],
            NormalWord::Mixed { w, h } => w
                .iter()
                .map(|&e| Letter::Real(e))
                .chain(h.iter().rev().map(|&e| Letter::Ghost(e)))
                .collect(),
        }
    }

    pub fn star(&self) -> NormalWord {
        match self {
            NormalWord::Vertex(v) => NormalWord::Vertex(*v),
            NormalWord::Mixed { w, h } => NormalWord::Mixed {
                w: h.clone(),
                h: w.clone(),
            },
        }
    }

    pub fn real_part(&self) -> &[EdgeId] {
        match self {
            NormalWord::Vertex(_) => &[],
            NormalWord::Mixed { w, .. } => w,
        }
    }

    pub fn ghost_part(&self) -> &[EdgeId] {
        match self {
            NormalWord::Vertex(_) => &[],
            NormalWord::Mixed { h, .. } => h,
        }
    }

    /// `(s(w), s(h))`, reading an empty side as the vertex where the other ends.
    pub fn sources(&self, g: &Graph) -> (VertexId, VertexId) {
        match self {
            NormalWord::Vertex(v) => (*v, *v),
            NormalWord::Mixed { w, h } => {
                let end = match (w.last(), h.last()) {
                    (Some(&e), _) | (None, Some(&e)) => g.range(e),
                    (None, None) => unreachable!("mixed word with no edges"),
                };
                let sw = w.first().map_or(end, |&e| g.source(e));
                let sh = h.first().map_or(end, |&e| g.source(e));
                (sw, sh)
            }
        }
    }
}

/// A finite linear combination of basis words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<C = Rational> {
    terms: BTreeMap<NormalWord, C>,
}

impl<C: Coefficient> Default for Element<C> {
    fn default() -> Self {
        Element::zero()
    }
}

impl<C: Coefficient> Element<C> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(w: NormalWord) -> Self {
        Self::term(w, C::one())
    }

    pub fn term(w: NormalWord, c: C) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: NormalWord, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element<C>, c: &C) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d.clone() * c.clone());
        }
    }

    pub fn coefficient(&self, w: &NormalWord) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalWord, &C)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &NormalWord> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Coefficient-wise sum of `Σ cᵢ xᵢ`.
    pub fn linear_combine<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, &'a Element<C>)>,
    {
        let mut out = Self::zero();
        for (c, x) in terms {
            out.add_scaled(x, &c);
        }
        out
    }

    /// Longest `|w| + |h|` in the support, or `None` for zero.
    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(NormalWord::len).max()
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Element<D> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }
}

impl<C: Coefficient> FromIterator<(NormalWord, C)> for Element<C> {
    fn from_iter<T: IntoIterator<Item = (NormalWord, C)>>(iter: T) -> Self {
        let mut out = Element::zero();
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }
}

impl<C: Coefficient> Add for &Element<C> {
    type Output = Element<C>;

    fn add(self, rhs: &Element<C>) -> Element<C> {
        let mut out = self.clone();
        out.add_scaled(rhs, &C::one());
        out
    }
}

impl<C: Coefficient> Sub for &Element<C> {
    type Output = Element<C>;

    fn sub(self, rhs: &Element<C>) -> Element<C> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-C::one());
        out
    }
}

impl<C: Coefficient> Neg for &Element<C> {
    type Output = Element<C>;

    fn neg(self) -> Element<C> {
        self.scale(&-C::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn a() -> NormalWord {
        NormalWord::path(vec![EdgeId(0)])
    }

    fn v() -> NormalWord {
        NormalWord::Vertex(VertexId(0))
    }

    #[test]
    fn linear_combine_prunes_zeros() {
        let x: Element = Element::word(a());
        assert!(Element::linear_combine([(rat(1), &x), (rat(-1), &x)]).is_zero());

        let vv: Element = Element::word(v());
        let five = Element::linear_combine([(rat(2), &vv), (rat(3), &vv)]);
        assert_eq!(five, Element::term(v(), rat(5)));

        let aa = NormalWord::mixed(vec![EdgeId(0)], vec![EdgeId(0)]);
        let lhs: Element = [(v(), rat(1)), (aa.clone(), rat(-1))].into_iter().collect();
        let rhs = Element::word(aa);
        assert_eq!(
            Element::linear_combine([(rat(1), &lhs), (rat(1), &rhs)]),
            vv
        );
    }

    #[test]
    fn word_star_swaps_sides() {
        let w = NormalWord::mixed(vec![EdgeId(0), EdgeId(1)], vec![]);
        assert_eq!(w.star(), NormalWord::ghost(vec![EdgeId(0), EdgeId(1)]));
        assert_eq!(v().star(), v());
        assert_eq!(
            w.star().letters(),
            vec![Letter::Ghost(EdgeId(1)), Letter::Ghost(EdgeId(0))]
        );
    }
}
