//! Canonical text rendering of words and elements.
//!
//! Terms are listed in the monomial order, letters are separated by spaces and
//! ghost letters carry a postfix `*`, e.g. `v - 2 a a*`. The output reparses
//! under the expression grammar of the command-line tool.

use std::fmt::Write;

use crate::coeff::Coefficient;
use crate::rewrite::{Algebra, Element, Letter, NormalWord};

pub fn letter(alg: &Algebra, l: Letter) -> String {
    alg.letter_name(l)
}

pub fn letters(alg: &Algebra, ls: &[Letter]) -> String {
    ls.iter()
        .map(|&l| alg.letter_name(l))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn word(alg: &Algebra, w: &NormalWord) -> String {
    letters(alg, &w.letters())
}

pub fn element<C: Coefficient>(alg: &Algebra, x: &Element<C>) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in alg.sorted_terms(x).into_iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        if !magnitude.is_one() {
            let _ = write!(out, "{magnitude} ");
        }
        out.push_str(&word(alg, w));
    }
    out
}
