//! Overlap checking for the length-two rule set.

use crate::coeff::Rational;

use super::{Algebra, Element, Letter, RewriteError, Strategy};

/// An overlap `xyz` whose two one-step reductions normalize differently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionDefect {
    pub word: [Letter; 3],
    /// Rewrite `xy` first, then normalize.
    pub left: Result<Element<Rational>, RewriteError>,
    /// Rewrite `yz` first, then normalize.
    pub right: Result<Element<Rational>, RewriteError>,
}

fn reduce_then_normalize(
    alg: &Algebra,
    prefix: &[Letter],
    rhs: &[(i64, Vec<Letter>)],
    suffix: &[Letter],
) -> Result<Element<Rational>, RewriteError> {
    let mut out = Element::zero();
    for (k, word) in rhs {
        let mut letters = prefix.to_vec();
        letters.extend_from_slice(word);
        letters.extend_from_slice(suffix);
        let reduced = alg.normalize::<Rational>(&letters, Strategy::Leftmost)?;
        out.add_scaled(&reduced, &Rational::from_integer((*k).into()));
    }
    Ok(out)
}

pub(super) fn check(alg: &Algebra) -> Vec<CompositionDefect> {
    let letters = alg.generators();
    let mut defects = Vec::new();
    for &y in &letters {
        for &x in &letters {
            let Some(left_rule) = alg.rule(x, y) else {
                continue;
            };
            for &z in &letters {
                let Some(right_rule) = alg.rule(y, z) else {
                    continue;
                };
                let left = reduce_then_normalize(alg, &[], &left_rule.rhs, &[z]);
                let right = reduce_then_normalize(alg, &[x], &right_rule.rhs, &[]);
                if left != right || left.is_err() {
                    defects.push(CompositionDefect {
                        word: [x, y, z],
                        left,
                        right,
                    });
                }
            }
        }
    }
    defects
}

#[cfg(test)]
mod tests {
    use super::super::{Rule, RuleFamily};
    use super::*;
    use crate::graph::{Graph, SpecialSelection};

    #[test]
    fn toeplitz_and_rose_are_confluent() {
        let g = Graph::build(["v", "u"], [("a", "v", "v"), ("b", "v", "u")]).unwrap();
        let sel = SpecialSelection::with_named_overrides(&g, &[("v", "b")]).unwrap();
        assert!(Algebra::new(g, sel)
            .unwrap()
            .check_compositions()
            .is_empty());
        let rose = Graph::build(["v"], [("e1", "v", "v"), ("e2", "v", "v")]).unwrap();
        assert!(Algebra::with_default_special(rose)
            .check_compositions()
            .is_empty());
    }

    #[test]
    fn truncated_special_rule_breaks_confluence() {
        let g = Graph::build(["v", "u"], [("a", "v", "v"), ("b", "v", "u")]).unwrap();
        let sel = SpecialSelection::with_named_overrides(&g, &[("v", "b")]).unwrap();
        let alg = Algebra::new(g, sel).unwrap();
        let b = alg.letter("b").unwrap();
        let bs = alg.letter("b*").unwrap();
        let v = alg.letter("v").unwrap();
        let broken = alg.with_replaced_rule(Rule {
            family: RuleFamily::Gs3,
            lhs: [b, bs],
            rhs: vec![(1, vec![v])],
        });
        assert!(!broken.check_compositions().is_empty());
    }

    #[test]
    fn source_condition_on_ghost_vertex_rule_breaks_confluence() {
        let g = Graph::build(["v", "u"], [("a", "v", "v"), ("b", "v", "u")]).unwrap();
        let sel = SpecialSelection::with_named_overrides(&g, &[("v", "b")]).unwrap();
        let alg = Algebra::new(g, sel).unwrap();
        let (v, u, bs) = (
            alg.letter("v").unwrap(),
            alg.letter("u").unwrap(),
            alg.letter("b*").unwrap(),
        );
        // v b* → b* and u b* → 0, i.e. δ_{v,s(b)} in place of δ_{v,r(b)}
        let swapped = alg
            .with_replaced_rule(Rule {
                family: RuleFamily::Gs2,
                lhs: [v, bs],
                rhs: vec![(1, vec![bs])],
            })
            .with_replaced_rule(Rule {
                family: RuleFamily::Gs2,
                lhs: [u, bs],
                rhs: vec![],
            });
        assert!(!swapped.check_compositions().is_empty());
    }
}
