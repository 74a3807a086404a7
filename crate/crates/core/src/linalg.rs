//! Small dense linear algebra over `f64` and exact rationals.
//!
//! Dimensions here never exceed 4, so plain Gaussian elimination on
//! row-major `Vec<Vec<_>>` is all that is needed.

use num::{Signed, Zero};

use crate::rational::Rational;

pub type Matrix<T> = Vec<Vec<T>>;

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn magnitude(&self) -> f64;
    /// Whether the value should be treated as zero during elimination.
    fn negligible(&self, scale: f64) -> bool;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-12 * scale.max(1.0)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num::One>::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn magnitude(&self) -> f64 {
        crate::rational::to_f64(&self.abs())
    }
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

fn scale_of<T: Field>(m: &Matrix<T>) -> f64 {
    m.iter()
        .flatten()
        .map(Field::magnitude)
        .fold(0.0, f64::max)
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<T: Field>(m: &mut Matrix<T>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let scale = scale_of(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .max_by(|&a, &b| {
                m[a][c]
                    .magnitude()
                    .partial_cmp(&m[b][c].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if m[best][c].negligible(scale) {
            continue;
        }
        m.swap(r, best);
        let p = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.div(&p);
        }
        for i in 0..rows {
            if i != r && !m[i][c].negligible(0.0) {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot_row) {
                    *v = v.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the null space `{x : m x = 0}`; `cols` is needed when `m` has no rows.
pub fn nullspace<T: Field>(m: &Matrix<T>, cols: usize) -> Vec<Vec<T>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = T::zero().sub(&work[row][f]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<T: Field>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.len();
    let mut aug: Matrix<T> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves the square system `m x = b`.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let inv = inverse(m)?;
    Some(mat_vec(&inv, b))
}

pub fn mat_vec<T: Field>(m: &Matrix<T>, v: &[T]) -> Vec<T> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
        })
        .collect()
}

pub fn mat_mul<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(T::zero(), |acc, (x, brow)| acc.add(&x.mul(&brow[j])))
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix: `(v^T m)_i = sum_k v_k m_{k,i}`.
pub fn vec_mat<T: Field>(v: &[T], m: &Matrix<T>) -> Vec<T> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|i| {
            v.iter()
                .zip(m)
                .fold(T::zero(), |acc, (x, row)| acc.add(&x.mul(&row[i])))
        })
        .collect()
}

pub fn transpose<T: Field>(m: &Matrix<T>) -> Matrix<T> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}
