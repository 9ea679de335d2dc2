//! Small dense exact linear algebra over the rationals.

use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        RationalVector(vec![Rational::zero(); len])
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        RationalVector(values.into_iter().map(Rational::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &RationalVector) -> Result<Rational> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn add(&self, other: &RationalVector) -> Result<RationalVector> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> Result<RationalVector> {
        check_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rational) -> RationalVector {
        self.0.iter().map(|a| a * factor).collect()
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &RationalVector, t: &Rational) -> Result<RationalVector> {
        let s = Rational::one() - t;
        check_len(self.len(), other.len())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * &s + b * t)
            .collect())
    }
}

impl FromIterator<Rational> for RationalVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RationalVector(iter.into_iter().collect())
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl<'a> IntoIterator for &'a RationalVector {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

/// Row-major dense matrix. Every row has the same length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RationalMatrix {
    rows: Vec<RationalVector>,
}

impl RationalMatrix {
    pub fn new(rows: Vec<RationalVector>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let cols = first.len();
            for row in &rows {
                check_len(cols, row.len())?;
            }
        }
        Ok(RationalMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| RationalVector::from_ints(r.iter().copied()))
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        RationalMatrix { rows }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, RationalVector::len)
    }

    pub fn rows(&self) -> &[RationalVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn mul_vec(&self, v: &RationalVector) -> Result<RationalVector> {
        self.rows.iter().map(|row| row.dot(v)).collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        check_len(self.n_cols(), other.n_rows())?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..other.n_cols())
                    .map(|j| {
                        row.iter()
                            .enumerate()
                            .map(|(k, a)| a * other.get(k, j))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(RationalMatrix { rows })
    }

    fn require_square(&self) -> Result<usize> {
        let (rows, cols) = (self.n_rows(), self.n_cols());
        if rows == 0 || rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        Ok(rows)
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Each row is first scaled by the lcm of its denominators so the
/// elimination runs over integers; the scale factors are divided out at
/// the end.
pub fn det(m: &RationalMatrix) -> Result<Rational> {
    let n = m.require_square()?;

    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m.rows() {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        a.push(
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
        scale *= lcm;
    }

    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Sylvester's identity guarantees exact division.
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let value = if sign { -prev } else { prev };
    Rational::new(value, scale)
}

/// Solves `m * x = b` by Gauss-Jordan elimination over the rationals.
pub fn solve(m: &RationalMatrix, b: &RationalVector) -> Result<RationalVector> {
    let n = m.require_square()?;
    check_len(n, b.len())?;

    let mut a: Vec<Vec<Rational>> = m
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.as_slice().to_vec();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip().expect("pivot is nonzero");
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&factor * p);
            }
        }
    }

    Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
