//! Exact Gaussian elimination over a field.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::polyring::Rational;

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { F::one() } else { F::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc.add(&row[k].mul(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Solves `a * x = b` for square nonsingular `a`; `None` when singular.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = F::one().div(&aug[col][col]);
        for v in aug[col].iter_mut() {
            *v = v.mul(&inv);
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=n {
                    let delta = f.mul(&aug[col][c]);
                    aug[r][c] = aug[r][c].sub(&delta);
                }
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.len();
    let cols: Vec<Vec<F>> = (0..n)
        .map(|j| {
            let e: Vec<F> = (0..n)
                .map(|i| if i == j { F::one() } else { F::zero() })
                .collect();
            solve(a, &e)
        })
        .collect::<Option<_>>()?;
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// Incremental sparse row echelon form. Each stored row is keyed by its
/// leading (smallest) column and has coefficient one there.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|c| self.rows.contains_key(c));
            let Some(col) = next else { return row };
            let factor = row.remove(&col).unwrap();
            for (c, v) in &self.rows[&col] {
                if *c == col {
                    continue;
                }
                let delta = factor.mul(v);
                let entry = row.entry(*c).or_insert_with(F::zero);
                *entry = entry.sub(&delta);
                if entry.is_zero() {
                    row.remove(c);
                }
            }
            cursor = col + 1;
        }
    }

    /// Adds a relation; returns false if it was already implied.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let row = self.reduce(row);
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = F::one().div(lead_val);
        let row: SparseRow<F> = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.rows.insert(lead, row);
        true
    }
}
