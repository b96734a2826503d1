//! Seeded and exhaustive suites over the named graphs.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    algebra, graph_line, graph_rose, graph_toeplitz, graph_two_cycle, in_range, CatalogError,
    Report,
};
use crate::coeff::{rat, ratio, Rational};
use crate::deriv::{
    check_functional_equations, check_inner_formulas, check_r2, check_r3, is_inner_bounded,
    relation_defects, DerivError, Derivation, InnerSearch, RelationReport,
};
use crate::graph::Path;
use crate::render;
use crate::rewrite::{Algebra, Element, Letter, Strategy};

pub const DEFAULT_SEED: u64 = 0x1ea7_7177;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn test_graphs() -> Vec<(&'static str, Arc<Algebra>)> {
    vec![
        ("A4", algebra(graph_line(4).expect("n in range"))),
        ("Omega1", algebra(graph_rose(1).expect("petals in range"))),
        ("Omega2", algebra(graph_rose(2).expect("petals in range"))),
        ("Omega3", algebra(graph_rose(3).expect("petals in range"))),
        ("Toeplitz", algebra(graph_toeplitz())),
        ("TwoCycle", algebra(graph_two_cycle())),
    ]
}

/// A random combination of up to `max_terms` basis words of length
/// `≤ max_len` with small nonzero coefficients.
pub fn random_element<R: Rng>(
    alg: &Algebra,
    rng: &mut R,
    max_len: usize,
    max_terms: usize,
) -> Element {
    let basis = alg.enumerate_basis(max_len);
    let k = rng.gen_range(1..=max_terms.max(1));
    let mut x = Element::zero();
    for w in basis.choose_multiple(rng, k) {
        let num = match rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 } {
            n if rng.gen_bool(0.2) => ratio(n, 2),
            n => rat(n),
        };
        x.add_term(w.clone(), num);
    }
    x
}

/// A random letter sequence biased towards composable neighbours.
fn random_letters<R: Rng>(alg: &Algebra, rng: &mut R, max_len: usize) -> Vec<Letter> {
    let gens = alg.generators();
    let len = rng.gen_range(2..=max_len);
    let mut out: Vec<Letter> = vec![*gens.choose(rng).expect("generators")];
    while out.len() < len {
        let prev = *out.last().expect("nonempty");
        let composable: Vec<Letter> = gens
            .iter()
            .copied()
            .filter(|&l| {
                !alg.normalize::<Rational>(&[prev, l], Strategy::Leftmost)
                    .map_or(true, |x| x.is_zero())
            })
            .collect();
        let pick = if !composable.is_empty() && rng.gen_bool(0.85) {
            *composable.choose(rng).expect("nonempty")
        } else {
            *gens.choose(rng).expect("generators")
        };
        out.push(pick);
    }
    out
}

/// Compositions vanish and both reduction strategies agree on random words.
pub fn confluence_suite(seed: u64, words: usize) -> Report {
    let mut report = Report::new("confluence");
    let mut rng = rng(seed);
    for (name, alg) in test_graphs() {
        let defects = alg.check_compositions();
        report.check(
            format!("{name}/compositions"),
            defects.is_empty(),
            format!("{} composition defect(s)", defects.len()),
        );
        let mut mismatch = None;
        for _ in 0..words {
            let w = random_letters(&alg, &mut rng, 9);
            let left = alg.normalize::<Rational>(&w, Strategy::Leftmost);
            let right = alg.normalize::<Rational>(&w, Strategy::Rightmost);
            if left != right {
                mismatch = Some(render::letters(&alg, &w));
                break;
            }
        }
        report.check(
            format!("{name}/strategies"),
            mismatch.is_none(),
            match mismatch {
                None => format!("{words} random words: leftmost = rightmost"),
                Some(w) => format!("strategies disagree on {w}"),
            },
        );
    }
    report
}

/// `D_c`, `D_{c*}` for cycles and `D_{wh*}` for admissible pairs with paths
/// of length `≤ max_len`.
pub fn generator_derivations(
    alg: &Arc<Algebra>,
    max_len: usize,
) -> Vec<(String, Result<Derivation, DerivError>)> {
    let g = alg.graph();
    let paths = g.enumerate_paths(max_len);
    let mut out = Vec::new();
    for c in paths.iter().filter(|p| p.is_cycle(g)) {
        let name = g.spell(c.edges());
        out.push((format!("D[{name}]"), Derivation::cycle(alg, c)));
        out.push((format!("D[({name})*]"), Derivation::cycle_star(alg, c)));
    }
    for w in &paths {
        for h in &paths {
            let admissible = w.source(g) == h.source(g)
                && w.range(g) == h.range(g)
                && (alg.is_basis_word(w.edges(), h.edges()) || (w.len() == 1 && w == h));
            if admissible {
                let name = format!("D[{} ({})*]", g.spell(w.edges()), g.spell(h.edges()));
                out.push((name, Derivation::mixed(alg, w, h)));
            }
        }
    }
    out
}

fn random_inner<R: Rng>(alg: &Arc<Algebra>, rng: &mut R) -> (Element, Derivation) {
    let lambda = random_element(alg, rng, 4, 4);
    let d = Derivation::inner(alg, &lambda);
    (lambda, d)
}

/// Every constructed derivation satisfies every defining relation.
pub fn derivation_validity(seed: u64, inner_count: usize) -> Report {
    let mut report = Report::new("derivation-validity");
    let mut rng = rng(seed);
    for (name, alg) in test_graphs() {
        let mut built = 0;
        let mut failures = Vec::new();
        let mut record = |label: String, d: Result<Derivation, DerivError>| match d {
            Ok(d) => match relation_defects(&alg, d.images()) {
                Ok(defects) if defects.is_empty() => built += 1,
                _ => failures.push(label),
            },
            Err(e) => failures.push(format!("{label}: {e}")),
        };
        for (label, d) in generator_derivations(&alg, 3) {
            record(label, d);
        }
        for i in 0..inner_count {
            let (_, d) = random_inner(&alg, &mut rng);
            record(format!("inner #{i}"), Ok(d));
        }
        report.check(
            name,
            failures.is_empty(),
            if failures.is_empty() {
                format!("{built} derivations without relation defects")
            } else {
                format!("invalid: {}", failures.join("; "))
            },
        );
    }
    report
}

/// Functional equations for the generator derivations and `count` random
/// inner derivations on the Toeplitz graph and the two-petal rose.
pub fn functional_equation_suite(seed: u64, count: usize) -> Report {
    let graphs = [
        ("Toeplitz", algebra(graph_toeplitz())),
        ("Omega2", algebra(graph_rose(2).expect("petals in range"))),
    ];
    functional_equation_suite_on(&graphs, seed, count)
}

/// [`functional_equation_suite`] on caller-supplied named algebras.
pub fn functional_equation_suite_on(
    graphs: &[(&str, Arc<Algebra>)],
    seed: u64,
    count: usize,
) -> Report {
    let mut report = Report::new("functional-eqs");
    let mut rng = rng(seed);
    for (name, alg) in graphs {
        let mut failure = None;
        let mut checked = 0;
        let mut gens = 0;
        for (label, d) in generator_derivations(alg, 2) {
            let d = d.expect("generator derivations are valid");
            let r = check_functional_equations(&d);
            checked += r.checked;
            gens += 1;
            if !r.holds() && failure.is_none() {
                failure = Some(format!("{label}: {}", r.violations[0].render()));
            }
        }
        report.check(
            format!("{name}/generators"),
            failure.is_none(),
            failure.unwrap_or_else(|| format!("{gens} generator derivations, {checked} instances")),
        );
        let mut failure = None;
        let mut checked = 0;
        for _ in 0..count {
            let (lambda, d) = random_inner(alg, &mut rng);
            let r = check_functional_equations(&d);
            checked += r.checked;
            if !r.holds() && failure.is_none() {
                failure = Some(format!(
                    "inner({}): {}",
                    render::element(alg, &lambda),
                    r.violations[0].render()
                ));
            }
        }
        report.check(
            format!("{name}/random-inner"),
            failure.is_none(),
            failure.unwrap_or_else(|| {
                format!("{count} random inner derivations, {checked} instances")
            }),
        );
    }
    report
}

/// The closed coefficient formulas for `count` random `λ` per test graph.
pub fn inner_formula_suite(seed: u64, count: usize) -> Report {
    let graphs = [
        ("Toeplitz", algebra(graph_toeplitz())),
        ("Omega2", algebra(graph_rose(2).expect("petals in range"))),
        ("A3", algebra(graph_line(3).expect("n in range"))),
        ("TwoCycle", algebra(graph_two_cycle())),
    ];
    inner_formula_suite_on(&graphs, seed, count)
}

/// [`inner_formula_suite`] on caller-supplied named algebras.
pub fn inner_formula_suite_on(graphs: &[(&str, Arc<Algebra>)], seed: u64, count: usize) -> Report {
    let mut report = Report::new("inner-formulas");
    let mut rng = rng(seed);
    for (name, alg) in graphs {
        let mut failure = None;
        let mut checked = 0;
        for _ in 0..count {
            let lambda = random_element(alg, &mut rng, 4, 4);
            let r = check_inner_formulas(alg, &lambda);
            checked += r.checked;
            if let (Some(m), None) = (r.mismatches.first(), &failure) {
                failure = Some(format!(
                    "λ = {}: {} predicts {} for {} in D({}), actual {}",
                    render::element(alg, &lambda),
                    m.formula,
                    m.predicted,
                    m.target,
                    m.generator,
                    m.actual
                ));
            }
        }
        report.check(
            *name,
            failure.is_none(),
            failure.unwrap_or_else(|| format!("{count} random λ, {checked} coefficients")),
        );
    }
    report
}

/// `W_k = D_{eᵏ}` for `k > 0`, `W₀ = D_{ee*}`, `W_k = D_{(e^|k|)*}` for `k < 0`.
fn witt(alg: &Arc<Algebra>, k: i64) -> Derivation {
    let g = alg.graph();
    let e = g.edge_by_name("e").expect("loop e");
    let power = |n: usize| Path::new(g, vec![e; n]).expect("loop powers are paths");
    match k {
        0 => Derivation::mixed(alg, &power(1), &power(1)),
        k if k > 0 => Derivation::cycle(alg, &power(k as usize)),
        k => Derivation::cycle_star(alg, &power(k.unsigned_abs() as usize)),
    }
    .expect("Witt generators are valid")
}

/// `[W_n, W_m] = (m − n) W_{n+m}` on the one-petal rose for `|n|, |m| ≤ N`.
pub fn witt_table(max_index: usize) -> Result<Report, CatalogError> {
    in_range("N", max_index, 1, 16)?;
    let alg = algebra(graph_rose(1)?);
    let n_max = max_index as i64;
    let mut report = Report::new("witt");
    for n in -n_max..=n_max {
        for m in -n_max..=n_max {
            let lhs = witt(&alg, n).bracket(&witt(&alg, m)).expect("same ambient");
            let rhs = witt(&alg, n + m).scale(&rat(m - n));
            report.check(
                format!("[W{n},W{m}]"),
                lhs.equal(&rhs),
                format!("expected {} W{}", m - n, n + m),
            );
        }
    }
    Ok(report)
}

/// Every `D_{wh*}` generator on `A_n`, `2 ≤ n ≤ max_n`, is inner with a
/// witness of length `≤ 2n`.
pub fn an_inner(max_n: usize) -> Result<Report, CatalogError> {
    in_range("n", max_n, 2, 6)?;
    let mut report = Report::new("an-inner");
    for n in 2..=max_n {
        let alg = algebra(graph_line(n)?);
        for (label, d) in generator_derivations(&alg, n) {
            let d = d.expect("generator derivations are valid");
            let search = is_inner_bounded(&d, 2 * n);
            report.check(
                format!("A{n}/{label}"),
                search.witness().is_some(),
                match &search {
                    InnerSearch::Witness(x) => format!("witness {}", render::element(&alg, x)),
                    InnerSearch::NoneWithinBound => format!("no witness of length ≤ {}", 2 * n),
                },
            );
        }
    }
    Ok(report)
}

fn relation_entry(report: &mut Report, id: &str, alg: &Algebra, r: &RelationReport) {
    for s in &r.skipped {
        report.note(
            format!("{id}/skipped"),
            format!("non-basis index {s} left out of the sum"),
        );
    }
    let terms: Vec<String> = r
        .terms
        .iter()
        .map(|(s, t)| format!("{}{}", if *s < 0 { "-" } else { "+" }, t))
        .collect();
    report.check(
        id,
        r.search.witness().is_some(),
        match &r.search {
            InnerSearch::Witness(x) => format!(
                "{} is inner: Δ = {} = ad({})",
                r.relation,
                terms.join(" "),
                render::element(alg, x)
            ),
            InnerSearch::NoneWithinBound => {
                format!(
                    "{}: Δ = {} has no bounded witness",
                    r.relation,
                    terms.join(" ")
                )
            }
        },
    );
}

/// The presentation relations at bounded degree.
pub fn relation_suite(max_len: usize) -> Report {
    let mut report = Report::new("relations");
    let t = algebra(graph_toeplitz());
    let p = |alg: &Algebra, s: &str| Path::parse(alg.graph(), s).expect("catalog path");
    for (id, w, h, bound) in [("R2(a,a)", "a", "a", 2), ("R2(aa,a)", "a a", "a", 4)] {
        match check_r2(&t, &p(&t, w), &p(&t, h), bound.min(max_len)) {
            Ok(r) => relation_entry(&mut report, id, &t, &r),
            Err(e) => report.check(id, false, e.to_string()),
        }
    }
    let a2 = algebra(graph_line(2).expect("n in range"));
    match check_r2(&a2, &p(&a2, "e1"), &p(&a2, "e1"), 1.min(max_len)) {
        Ok(r) => relation_entry(&mut report, "R2(e1,e1)", &a2, &r),
        Err(e) => report.check("R2(e1,e1)", false, e.to_string()),
    }
    match check_r3(&t, &p(&t, "a"), max_len) {
        Err(DerivError::RotationNotSpecial { .. }) => report.check(
            "R3(a)/precondition",
            true,
            "rejected: the rotation edge a is not special",
        ),
        other => report.check("R3(a)/precondition", false, format!("unexpected {other:?}")),
    }
    let tc = algebra(graph_two_cycle());
    match check_r3(&tc, &p(&tc, "c0 c1"), max_len) {
        Ok(r) => relation_entry(&mut report, "R3(c0c1)", &tc, &r),
        Err(e) => report.check("R3(c0c1)", false, e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_elements_are_deterministic() {
        let t = algebra(graph_toeplitz());
        let x = random_element(&t, &mut rng(7), 3, 4);
        let y = random_element(&t, &mut rng(7), 3, 4);
        assert_eq!(x, y);
        assert!(!x.is_zero());
    }

    #[test]
    fn witt_small() {
        let r = witt_table(2).unwrap();
        assert_eq!(r.checks.len(), 25);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn relation_suite_passes() {
        let r = relation_suite(4);
        assert!(r.passed(), "{r}");
        assert!(r.find("R2(a,a)").unwrap().detail.ends_with("ad(a a*)"));
    }

    #[test]
    fn small_seeded_suites() {
        assert!(confluence_suite(1, 50).passed());
        assert!(derivation_validity(1, 5).passed());
        assert!(functional_equation_suite(1, 5).passed());
        assert!(inner_formula_suite(1, 5).passed());
        assert!(an_inner(3).unwrap().passed());
    }
}
