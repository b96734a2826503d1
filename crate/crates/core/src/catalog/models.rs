//! Concrete models: matrix units for the line, Laurent polynomials for the
//! one-petal rose, and the Jacobson algebra for the Toeplitz graph.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{algebra, graph_line, graph_rose, graph_toeplitz, in_range, CatalogError, Report};
use crate::coeff::Rational;
use crate::graph::EdgeId;
use crate::linsolve::RationalMatrix;
use crate::render;
use crate::rewrite::{Algebra, Element, Letter, NormalWord, Strategy};

/// Checks that every product of two generators is respected by `image`, and
/// that the vertices sum to `one`.
fn check_hom<T, F>(report: &mut Report, alg: &Algebra, image: F, one: &T)
where
    T: PartialEq + Clone + Add<Output = T> + Mul<Output = T> + Zero + MulScalar,
    F: Fn(Letter) -> T,
{
    let gens = alg.generators();
    let word_image = |w: &NormalWord| {
        w.letters()
            .into_iter()
            .map(&image)
            .reduce(|x, y| x * y)
            .expect("nonempty word")
    };
    let element_image = |x: &Element| {
        x.iter()
            .fold(T::zero(), |acc, (w, c)| acc + word_image(w).mul_scalar(c))
    };
    let mut bad = Vec::new();
    for &x in &gens {
        for &y in &gens {
            let lhs: Element = alg
                .normalize(&[x, y], Strategy::Leftmost)
                .expect("degree two");
            if element_image(&lhs) != image(x) * image(y) {
                bad.push(render::letters(alg, &[x, y]));
            }
        }
    }
    report.check(
        "relations",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} generator products respected", gens.len() * gens.len())
        } else {
            format!("products not respected: {}", bad.join(", "))
        },
    );
    let unit = alg
        .graph()
        .vertices()
        .fold(T::zero(), |acc, v| acc + image(Letter::Vertex(v)));
    report.check("unit", &unit == one, "vertices sum to the identity");
}

trait MulScalar {
    fn mul_scalar(self, c: &Rational) -> Self;
}

#[derive(Clone, Debug)]
struct Mat(RationalMatrix);

impl PartialEq for Mat {
    fn eq(&self, other: &Mat) -> bool {
        match (self.size(), other.size()) {
            (0, _) => other.is_zero(),
            (_, 0) => self.is_zero(),
            _ => self.0 == other.0,
        }
    }
}

impl Mat {
    fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = RationalMatrix::zeros(n, n);
        m.set(i, j, Rational::one());
        Mat(m)
    }

    fn size(&self) -> usize {
        self.0.rows()
    }
}

impl Zero for Mat {
    // sized lazily: a 0×0 zero absorbs into the first real summand
    fn zero() -> Mat {
        Mat(RationalMatrix::zeros(0, 0))
    }

    fn is_zero(&self) -> bool {
        (0..self.0.rows()).all(|i| self.0.row(i).iter().all(Zero::is_zero))
    }
}

impl Add for Mat {
    type Output = Mat;
    fn add(self, other: Mat) -> Mat {
        if self.size() == 0 {
            return other;
        }
        if other.size() == 0 {
            return self;
        }
        let mut out = self.0.clone();
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                out.set(i, j, self.0.get(i, j) + other.0.get(i, j));
            }
        }
        Mat(out)
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, other: Mat) -> Mat {
        Mat(self.0.mul(&other.0))
    }
}

impl MulScalar for Mat {
    fn mul_scalar(mut self, c: &Rational) -> Mat {
        for i in 0..self.0.rows() {
            for j in 0..self.0.cols() {
                let x = self.0.get(i, j) * c;
                self.0.set(i, j, x);
            }
        }
        self
    }
}

/// `L(A_n) ≅ M_n` via `v_i ↦ E_ii`, `e_i ↦ E_{i,i+1}`, `e_i* ↦ E_{i+1,i}`.
pub fn verify_matrix_iso(n: usize) -> Result<Report, CatalogError> {
    in_range("n", n, 2, 6)?;
    let alg = algebra(graph_line(n)?);
    let mut report = Report::new(format!("matrix-iso-{n}"));
    let basis = alg.enumerate_basis(2 * n);
    report.check(
        "basis-count",
        basis.len() == n * n,
        format!("{} basis words, expected {}", basis.len(), n * n),
    );
    let image = |l: Letter| match l {
        Letter::Vertex(v) => Mat::unit(n, v.index(), v.index()),
        Letter::Real(EdgeId(i)) => Mat::unit(n, i as usize, i as usize + 1),
        Letter::Ghost(EdgeId(i)) => Mat::unit(n, i as usize + 1, i as usize),
    };
    check_hom(&mut report, &alg, image, &Mat(RationalMatrix::identity(n)));
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|w| {
            let m = w
                .letters()
                .into_iter()
                .map(image)
                .reduce(|x, y| x * y)
                .expect("nonempty");
            (0..n).flat_map(|i| m.0.row(i).to_vec()).collect()
        })
        .collect();
    let rank = RationalMatrix::from_rows(rows)
        .expect("square images")
        .rank();
    report.check(
        "independence",
        rank == n * n,
        format!("basis images span a space of dimension {rank}"),
    );
    Ok(report)
}

/// `L(Ω(1)) ≅ K[t, t⁻¹]`: the basis up to length `N` is `v`, `eᵏ`, `e*ᵏ`.
pub fn verify_laurent(max_len: usize) -> Result<Report, CatalogError> {
    in_range("N", max_len, 1, 64)?;
    let alg = algebra(graph_rose(1)?);
    let e = alg.graph().edge_by_name("e").expect("loop e");
    let mut report = Report::new("laurent");
    let basis = alg.enumerate_basis(max_len);
    let expected: BTreeSet<NormalWord> = std::iter::once(NormalWord::Vertex(
        alg.graph().vertices().next().expect("one vertex"),
    ))
    .chain((1..=max_len).map(|k| NormalWord::path(vec![e; k])))
    .chain((1..=max_len).map(|k| NormalWord::ghost(vec![e; k])))
    .collect();
    report.check(
        "basis-count",
        basis.len() == 2 * max_len + 1,
        format!("{} basis words up to length {max_len}", basis.len()),
    );
    report.check(
        "basis-shape",
        basis.iter().cloned().collect::<BTreeSet<_>>() == expected,
        "basis is {v} ∪ {eᵏ} ∪ {e*ᵏ}",
    );
    let v = alg.parse_word("v").expect("vertex v");
    for s in ["e e*", "e* e"] {
        let x = alg.parse_word(s).expect("letters resolve");
        report.check(
            format!("unit-{}", s.replace(' ', "")),
            x == v,
            format!("{s} = {}", render::element(&alg, &x)),
        );
    }
    Ok(report)
}

/// A polynomial in the Jacobson algebra `K⟨x, y | xy = 1⟩`, stored on the
/// normal forms `yⁱxʲ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobsonPoly(BTreeMap<(u32, u32), Rational>);

impl JacobsonPoly {
    pub fn monomial(i: u32, j: u32) -> JacobsonPoly {
        let mut m = BTreeMap::new();
        m.insert((i, j), Rational::one());
        JacobsonPoly(m)
    }

    pub fn one() -> JacobsonPoly {
        Self::monomial(0, 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.0.iter()
    }

    fn add_term(&mut self, k: (u32, u32), c: Rational) {
        let x = self.0.entry(k).or_insert_with(Rational::zero);
        *x += c;
        if x.is_zero() {
            self.0.remove(&k);
        }
    }
}

impl Zero for JacobsonPoly {
    fn zero() -> JacobsonPoly {
        JacobsonPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl Add for JacobsonPoly {
    type Output = JacobsonPoly;
    fn add(mut self, other: JacobsonPoly) -> JacobsonPoly {
        for (k, c) in other.0 {
            self.add_term(k, c);
        }
        self
    }
}

impl Sub for JacobsonPoly {
    type Output = JacobsonPoly;
    fn sub(self, other: JacobsonPoly) -> JacobsonPoly {
        self + other.mul_scalar(&-Rational::one())
    }
}

impl Mul for JacobsonPoly {
    type Output = JacobsonPoly;
    // yⁱxʲ · yᵏxˡ reduces by cancelling min(j, k) copies of xy
    fn mul(self, other: JacobsonPoly) -> JacobsonPoly {
        let mut out = JacobsonPoly::zero();
        for (&(i, j), c) in &self.0 {
            for (&(k, l), d) in &other.0 {
                let key = if j >= k {
                    (i, j - k + l)
                } else {
                    (i + k - j, l)
                };
                out.add_term(key, c * d);
            }
        }
        out
    }
}

impl MulScalar for JacobsonPoly {
    fn mul_scalar(self, c: &Rational) -> JacobsonPoly {
        let mut out = JacobsonPoly::zero();
        for (k, x) in self.0 {
            out.add_term(k, x * c);
        }
        out
    }
}

/// The Toeplitz graph inside the Jacobson algebra: `v ↦ yx`, `u ↦ 1 − yx`,
/// `a ↦ y²x`, `b ↦ y − y²x`, `a* ↦ yx²`, `b* ↦ x − yx²`.
pub fn verify_jacobson() -> Report {
    let alg = algebra(graph_toeplitz());
    let m = JacobsonPoly::monomial;
    let names = |l: Letter| alg.letter_name(l);
    let image = |l: Letter| match names(l).as_str() {
        "v" => m(1, 1),
        "u" => m(0, 0) - m(1, 1),
        "a" => m(2, 1),
        "b" => m(1, 0) - m(2, 1),
        "a*" => m(1, 2),
        "b*" => m(0, 1) - m(1, 2),
        other => unreachable!("unexpected generator {other}"),
    };
    let mut report = Report::new("jacobson");
    let named = |s: &str| image(alg.letter(s).expect("toeplitz letter"));
    report.check(
        "a*a=v",
        named("a*") * named("a") == named("v"),
        "(yx²)(y²x) = yx",
    );
    report.check(
        "b*b=u",
        named("b*") * named("b") == named("u"),
        "(x − yx²)(y − y²x) = 1 − yx",
    );
    report.check(
        "vu=0",
        (named("v") * named("u")).is_zero(),
        "(yx)(1 − yx) = 0",
    );
    report.check(
        "v=aa*+bb*",
        named("a") * named("a*") + named("b") * named("b*") == named("v"),
        "y²x·yx² + (y − y²x)(x − yx²) = yx",
    );
    check_hom(&mut report, &alg, image, &JacobsonPoly::one());
    report
}
