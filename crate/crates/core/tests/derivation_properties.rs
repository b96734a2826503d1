use std::sync::{Arc, OnceLock};

use leavitt::catalog::{
    algebra, generator_derivations, graph_line, graph_rose, graph_toeplitz, graph_two_cycle,
    random_element,
};
use leavitt::coeff::{rat, Rational};
use leavitt::deriv::{
    check_functional_equations, is_inner_bounded, vertex_normalize, Derivation, FunctionalTable,
};
use leavitt::linsolve::{solve_exact, RationalMatrix};
use leavitt::rewrite::{Algebra, Element, Letter, NormalWord};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Ambient {
    alg: Arc<Algebra>,
    gens: Vec<Derivation>,
}

fn ambients() -> &'static [Ambient] {
    static CACHE: OnceLock<Vec<Ambient>> = OnceLock::new();
    CACHE.get_or_init(|| {
        [
            graph_toeplitz(),
            graph_rose(2).unwrap(),
            graph_two_cycle(),
            graph_line(3).unwrap(),
        ]
        .into_iter()
        .map(|pair| {
            let alg = algebra(pair);
            let gens = generator_derivations(&alg, 2)
                .into_iter()
                .filter_map(|(_, d)| d.ok())
                .collect();
            Ambient { alg, gens }
        })
        .collect()
    })
}

fn element(alg: &Algebra, seed: u64, max_len: usize) -> Element {
    random_element(alg, &mut ChaCha8Rng::seed_from_u64(seed), max_len, 3)
}

/// A generator derivation, an inner one or a combination of both.
fn derivation(amb: &Ambient, pick: usize, seed: u64) -> Derivation {
    let inner = Derivation::inner(&amb.alg, &element(&amb.alg, seed, 2));
    match pick % 3 {
        0 => amb.gens[(pick / 3) % amb.gens.len()].clone(),
        1 => inner,
        _ => {
            let g = &amb.gens[(pick / 3) % amb.gens.len()];
            Derivation::combine(&[(rat(2), g), (rat(-1), &inner)]).unwrap()
        }
    }
}

fn source_pair(alg: &Algebra, b: &NormalWord) -> (usize, usize) {
    let (w, h) = b.sources(alg.graph());
    (w.index(), h.index())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leibniz_rule(g in 0usize..4, pick in 0usize..64, s in any::<u64>()) {
        let amb = &ambients()[g];
        let d = derivation(amb, pick, s);
        let (x, y) = (element(&amb.alg, s ^ 3, 3), element(&amb.alg, s ^ 5, 3));
        let lhs = d.apply(&amb.alg.multiply(&x, &y));
        let rhs = &amb.alg.multiply(&d.apply(&x), &y) + &amb.alg.multiply(&x, &d.apply(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_identity(g in 0usize..2, p in (0usize..64, 0usize..64, 0usize..64), s in any::<u64>()) {
        let amb = &ambients()[g];
        let (x, y, z) = (derivation(amb, p.0, s), derivation(amb, p.1, s ^ 1), derivation(amb, p.2, s ^ 2));
        let one = rat(1);
        let terms = [
            x.bracket(&y).unwrap().bracket(&z).unwrap(),
            y.bracket(&z).unwrap().bracket(&x).unwrap(),
            z.bracket(&x).unwrap().bracket(&y).unwrap(),
        ];
        let sum = Derivation::combine(&[(one.clone(), &terms[0]), (one.clone(), &terms[1]), (one, &terms[2])]).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn vertex_coefficients_are_antisymmetric(g in 0usize..4, pick in 0usize..64, s in any::<u64>()) {
        let amb = &ambients()[g];
        let d = derivation(amb, pick, s);
        let graph = amb.alg.graph();
        let table = FunctionalTable::extract(&d);
        let at = |b: &NormalWord, v: usize| {
            let v = graph.vertices().nth(v).unwrap();
            table.get(b, Letter::Vertex(v))
        };
        for ((b, _), _) in table.iter() {
            let (sw, sh) = source_pair(&amb.alg, b);
            if sw == sh {
                prop_assert!(at(b, sw).is_zero());
            } else {
                prop_assert_eq!(at(b, sw), -at(b, sh));
            }
        }
    }

    #[test]
    fn normalized_support_shape(g in 0usize..4, pick in 0usize..64, s in any::<u64>()) {
        let amb = &ambients()[g];
        let (_, dh) = vertex_normalize(&derivation(amb, pick, s));
        let graph = amb.alg.graph();
        prop_assert!(dh.vanishes_on_vertices());
        for e in graph.edges() {
            let (se, re) = (graph.source(e).index(), graph.range(e).index());
            for b in dh.image(Letter::Real(e)).words() {
                prop_assert_eq!(source_pair(&amb.alg, b), (se, re));
            }
            for b in dh.image(Letter::Ghost(e)).words() {
                prop_assert_eq!(source_pair(&amb.alg, b), (re, se));
            }
        }
    }

    #[test]
    fn parallel_edge_sum_relation(g in 0usize..4, pick in 0usize..64, s in any::<u64>()) {
        let amb = &ambients()[g];
        let (_, dh) = vertex_normalize(&derivation(amb, pick, s));
        let graph = amb.alg.graph();
        for ei in graph.edges() {
            for ej in graph.edges() {
                if graph.source(ei) != graph.source(ej) || graph.range(ei) != graph.range(ej) {
                    continue;
                }
                let f = dh.image(Letter::Real(ei)).coefficient(&NormalWord::path(vec![ej]));
                let f_star = dh.image(Letter::Ghost(ej)).coefficient(&NormalWord::ghost(vec![ei]));
                prop_assert!((f + f_star).is_zero());
            }
        }
    }

    #[test]
    fn functional_equations_hold(g in 0usize..4, pick in 0usize..64, s in any::<u64>()) {
        let amb = &ambients()[g];
        let report = check_functional_equations(&derivation(amb, pick, s));
        prop_assert!(report.holds(), "{:?}", report);
    }

    #[test]
    fn inner_witness_resubstitutes(g in 0usize..4, s in any::<u64>()) {
        let amb = &ambients()[g];
        let d = Derivation::inner(&amb.alg, &element(&amb.alg, s, 2));
        let search = is_inner_bounded(&d, 2);
        let mu = search.witness().expect("an inner derivation has a witness at its own length");
        prop_assert!(Derivation::inner(&amb.alg, mu).equal(&d));
    }

    #[test]
    fn exact_solve_resubstitutes(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-5i64..6, 36), x in prop::collection::vec(-9i64..10, 6)) {
        let a = RationalMatrix::from_rows(
            (0..rows).map(|i| (0..cols).map(|j| rat(entries[i * 6 + j])).collect()).collect(),
        ).unwrap();
        let x: Vec<Rational> = x[..cols].iter().map(|&v| rat(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve_exact(&a, &b).unwrap().solution().expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&y), b);
    }
}

#[test]
fn cycle_star_is_negated_star_conjugate() {
    let mut checked = 0;
    for amb in ambients().iter() {
        let g = amb.alg.graph();
        for c in g.enumerate_paths(3).iter().filter(|p| p.is_cycle(g)) {
            let d = Derivation::cycle(&amb.alg, c).unwrap();
            let ds = Derivation::cycle_star(&amb.alg, c).unwrap();
            assert!(
                ds.equal(&d.star_conjugate().scale(&rat(-1))),
                "{}",
                g.spell(c.edges())
            );
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn inconsistent_system_is_reported() {
    let a = RationalMatrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]]).unwrap();
    assert!(solve_exact(&a, &[rat(1), rat(3)])
        .unwrap()
        .solution()
        .is_none());
}
