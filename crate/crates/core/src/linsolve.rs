//! Exact dense linear algebra over the rationals.
//!
//! Rows are scaled to integers and reduced with fraction-free elimination;
//! back substitution runs in rationals. Free variables are set to zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::coeff::Rational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinsolveError {
    #[error("matrix has {rows} rows but the right-hand side has {rhs} entries")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("row {row} has {len} entries, expected {cols}")]
    RaggedRow { row: usize, len: usize, cols: usize },
}

/// A dense `rows × cols` matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solution(Vec<Rational>),
    Inconsistent,
}

impl Solve {
    pub fn solution(self) -> Option<Vec<Rational>> {
        match self {
            Solve::Solution(x) => Some(x),
            Solve::Inconsistent => None,
        }
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<RationalMatrix, LinsolveError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinsolveError::RaggedRow {
                    row: i,
                    len: row.len(),
                    cols,
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from_integer(1.into()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + a * b;
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, x.len(), "incompatible matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = integer_rows(self, None);
        echelon(&mut m, self.cols).len()
    }
}

/// Scales each row (with optional right-hand side appended) to integers.
fn integer_rows(a: &RationalMatrix, b: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
    (0..a.rows)
        .map(|i| {
            let mut row: Vec<Rational> = a.row(i).to_vec();
            if let Some(b) = b {
                row.push(b[i].clone());
            }
            let lcm = row
                .iter()
                .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

fn normalize_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Row-reduces the first `cols` columns in place; returns the pivot columns
/// (pivot `k` sits in row `k`).
fn echelon(m: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == m.len() {
            break;
        }
        let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let (head, tail) = m.split_at_mut(top + 1);
        let pivot = &head[top];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let q = row[col].clone();
            let p = pivot[col].clone();
            for (x, y) in row.iter_mut().zip(pivot.iter()) {
                if y.is_zero() {
                    *x = &*x * &p;
                } else {
                    *x = &*x * &p - &q * y;
                }
            }
            normalize_row(row);
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

/// Solves `A x = b` exactly, returning one solution with free variables zero.
pub fn solve_exact(a: &RationalMatrix, b: &[Rational]) -> Result<Solve, LinsolveError> {
    if a.rows != b.len() {
        return Err(LinsolveError::DimensionMismatch {
            rows: a.rows,
            rhs: b.len(),
        });
    }
    let mut m = integer_rows(a, Some(b));
    let pivots = echelon(&mut m, a.cols);
    if m[pivots.len()..].iter().any(|row| !row[a.cols].is_zero()) {
        return Ok(Solve::Inconsistent);
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (i, &col) in pivots.iter().enumerate().rev() {
        let row = &m[i];
        let mut acc = Rational::from_integer(row[a.cols].clone());
        for j in col + 1..a.cols {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        let mut p = row[col].clone();
        if p.is_negative() {
            p = -p;
            acc = -acc;
        }
        x[col] = acc / Rational::from_integer(p);
    }
    Ok(Solve::Solution(x))
}
