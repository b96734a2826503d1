use std::sync::Arc;

use leavitt::catalog::{
    algebra, graph_line, graph_rose, graph_toeplitz, graph_two_cycle, random_element,
};
use leavitt::coeff::Rational;
use leavitt::rewrite::{Algebra, Element, Letter, Strategy};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graphs() -> Vec<Arc<Algebra>> {
    vec![
        algebra(graph_toeplitz()),
        algebra(graph_rose(2).unwrap()),
        algebra(graph_two_cycle()),
        algebra(graph_line(3).unwrap()),
    ]
}

fn letters(alg: &Algebra, idx: &[usize]) -> Vec<Letter> {
    let gens = alg.generators();
    idx.iter().map(|&i| gens[i % gens.len()]).collect()
}

fn element(alg: &Algebra, seed: u64) -> Element {
    random_element(alg, &mut ChaCha8Rng::seed_from_u64(seed), 3, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn strategies_agree(g in 0usize..4, idx in prop::collection::vec(0usize..64, 1..10)) {
        let alg = &graphs()[g];
        let w = letters(alg, &idx);
        let left = alg.normalize::<Rational>(&w, Strategy::Leftmost).unwrap();
        let right = alg.normalize::<Rational>(&w, Strategy::Rightmost).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_forms_are_fixed_points(g in 0usize..4, idx in prop::collection::vec(0usize..64, 1..9)) {
        let alg = &graphs()[g];
        let x: Element = alg.normalize(&letters(alg, &idx), Strategy::Leftmost).unwrap();
        for w in x.words() {
            prop_assert!(alg.is_normal(w));
            let again: Element = alg.normalize(&w.letters(), Strategy::Leftmost).unwrap();
            prop_assert_eq!(again, Element::word(w.clone()));
        }
    }

    #[test]
    fn product_matches_concatenation(g in 0usize..4, a in prop::collection::vec(0usize..64, 1..6), b in prop::collection::vec(0usize..64, 1..6)) {
        let alg = &graphs()[g];
        let (x, y) = (letters(alg, &a), letters(alg, &b));
        let nx: Element = alg.normalize(&x, Strategy::Leftmost).unwrap();
        let ny: Element = alg.normalize(&y, Strategy::Leftmost).unwrap();
        let joined: Element = alg.normalize(&[x, y].concat(), Strategy::Leftmost).unwrap();
        prop_assert_eq!(alg.multiply(&nx, &ny), joined);
    }

    #[test]
    fn multiplication_is_associative(g in 0usize..4, s in any::<u64>()) {
        let alg = &graphs()[g];
        let (x, y, z) = (element(alg, s), element(alg, s ^ 1), element(alg, s ^ 2));
        let left = alg.multiply(&alg.multiply(&x, &y), &z);
        let right = alg.multiply(&x, &alg.multiply(&y, &z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_is_two_sided(g in 0usize..4, s in any::<u64>()) {
        let alg = &graphs()[g];
        let x = element(alg, s);
        let one: Element = alg.one();
        prop_assert_eq!(alg.multiply(&one, &x), x.clone());
        prop_assert_eq!(alg.multiply(&x, &one), x);
    }

    #[test]
    fn star_is_an_anti_involution(g in 0usize..4, s in any::<u64>()) {
        let alg = &graphs()[g];
        let (x, y) = (element(alg, s), element(alg, s ^ 7));
        prop_assert_eq!(alg.star(&alg.star(&x)), x.clone());
        prop_assert_eq!(alg.star(&alg.multiply(&x, &y)), alg.multiply(&alg.star(&y), &alg.star(&x)));
    }
}

#[test]
fn defining_relations_hold() {
    for alg in graphs() {
        let g = alg.graph();
        for e in g.edges() {
            let es: Element = Element::word(
                alg.enumerate_basis(1)
                    .into_iter()
                    .find(|w| w.letters() == vec![Letter::Ghost(e)])
                    .unwrap(),
            );
            let ev: Element = alg
                .normalize(&[Letter::Ghost(e), Letter::Real(e)], Strategy::Leftmost)
                .unwrap();
            assert_eq!(ev, alg.vertex(g.range(e)));
            assert_eq!(alg.star(&alg.star(&es)), es);
            for f in g.edges().filter(|&f| f != e) {
                let x: Element = alg
                    .normalize(&[Letter::Ghost(e), Letter::Real(f)], Strategy::Leftmost)
                    .unwrap();
                assert!(x.is_zero());
            }
        }
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let mut sum = Element::zero();
            for &e in g.out_edges(v) {
                let x: Element = alg
                    .normalize(&[Letter::Real(e), Letter::Ghost(e)], Strategy::Leftmost)
                    .unwrap();
                sum = &sum + &x;
            }
            assert_eq!(sum, alg.vertex(v));
        }
        for v in g.vertices() {
            for u in g.vertices() {
                let x: Element = alg
                    .normalize(&[Letter::Vertex(v), Letter::Vertex(u)], Strategy::Leftmost)
                    .unwrap();
                assert_eq!(
                    x,
                    if v == u {
                        alg.vertex(v)
                    } else {
                        Element::zero()
                    }
                );
            }
        }
    }
}

#[test]
fn basis_counts_on_lines() {
    for n in 2..=5 {
        let alg = algebra(graph_line(n).unwrap());
        assert_eq!(alg.enumerate_basis(2 * n).len(), n * n);
    }
}
