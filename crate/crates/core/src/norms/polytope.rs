//! Polyhedral norms: the unit ball is the convex hull of a symmetric vertex
//! list. Facets are enumerated exactly at construction so that every later
//! query is a finite maximization over rational data.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    vertices_f: Vec<Vec<f64>>,
    /// One normal `a` per antipodal facet pair; the facets are `a.z = 1` and
    /// `a.z = -1`, so `||z|| = max |a.z|`.
    facets: Vec<Vec<Rational>>,
    facets_f: Vec<Vec<f64>>,
}

impl Polytope {
    pub fn from_vertices(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, Vec::len);
        if !(2..=4).contains(&dim) {
            return Err(Error::invalid(format!("dimension {dim} outside the supported range 2..=4")));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::invalid_at(
                    format!("vertex has {} coordinates, expected {dim}", v.len()),
                    format!("vertices[{i}]"),
                ));
            }
        }
        let set: BTreeSet<&Vec<Rational>> = vertices.iter().collect();
        if set.len() != vertices.len() {
            return Err(Error::invalid("duplicate vertices"));
        }
        for (i, v) in vertices.iter().enumerate() {
            let neg: Vec<Rational> = v.iter().map(|c| -c).collect();
            if !set.contains(&neg) {
                return Err(Error::invalid_at("vertices not symmetric", format!("vertices[{i}]")));
            }
        }
        if linalg::rank(&vertices) < dim {
            return Err(Error::invalid("vertices do not span the space; origin is not interior"));
        }

        let facets = enumerate_facets(&vertices, dim);
        let poly = Polytope {
            dim,
            vertices_f: vertices.iter().map(|v| v.iter().map(rational::to_f64).collect()).collect(),
            facets_f: facets.iter().map(|a| a.iter().map(rational::to_f64).collect()).collect(),
            vertices,
            facets,
        };
        for (i, v) in poly.vertices.iter().enumerate() {
            if !poly.is_vertex_exact(v) {
                return Err(Error::invalid_at(
                    "point is not a vertex of the convex hull",
                    format!("vertices[{i}]"),
                ));
            }
        }
        Ok(poly)
    }

    /// The cross-polytope, i.e. the l1 ball.
    pub fn cross(dim: usize) -> Self {
        let mut vs = Vec::new();
        for i in 0..dim {
            for s in [1, -1] {
                let mut v = vec![rational::int(0); dim];
                v[i] = rational::int(s);
                vs.push(v);
            }
        }
        Polytope::from_vertices(vs).expect("cross-polytope is valid")
    }

    /// The cube, i.e. the l-infinity ball.
    pub fn cube(dim: usize) -> Self {
        let vs = (0..1usize << dim)
            .map(|mask| {
                (0..dim)
                    .map(|i| rational::int(if mask >> i & 1 == 1 { -1 } else { 1 }))
                    .collect()
            })
            .collect();
        Polytope::from_vertices(vs).expect("cube is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> &[Vec<f64>] {
        &self.vertices_f
    }

    pub fn facets(&self) -> &[Vec<Rational>] {
        &self.facets
    }

    pub fn facets_f64(&self) -> &[Vec<f64>] {
        &self.facets_f
    }

    pub fn norm_exact(&self, x: &[Rational]) -> Rational {
        rational::max_abs(self.facets.iter().map(|a| rational::dot(a, x)))
    }

    pub fn norm_f64(&self, x: &[f64]) -> f64 {
        self.facets_f
            .iter()
            .map(|a| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    pub fn dual_norm_exact(&self, f: &[Rational]) -> Rational {
        rational::max_abs(self.vertices.iter().map(|v| rational::dot(f, v)))
    }

    pub fn dual_norm_f64(&self, f: &[f64]) -> f64 {
        self.vertices_f
            .iter()
            .map(|v| v.iter().zip(f).map(|(p, q)| p * q).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    /// Signed facet normals `s * a` with `s * a.x = ||x||`, i.e. the facets
    /// of the ball scaled through `x` that contain `x`.
    pub fn active_facets_exact(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        let r = self.norm_exact(x);
        let mut out = Vec::new();
        for a in &self.facets {
            let v = rational::dot(a, x);
            if v == r {
                out.push(a.clone());
            } else if -v.clone() == r {
                out.push(a.iter().map(|c| -c).collect());
            }
        }
        out
    }

    pub fn active_facets_f64(&self, x: &[f64], tol: f64) -> Vec<Vec<f64>> {
        let r = self.norm_f64(x);
        let mut out = Vec::new();
        for a in &self.facets_f {
            let v: f64 = a.iter().zip(x).map(|(p, q)| p * q).sum();
            if (v - r).abs() <= tol {
                out.push(a.clone());
            } else if (v + r).abs() <= tol {
                out.push(a.iter().map(|c| -c).collect());
            }
        }
        out
    }

    fn is_vertex_exact(&self, v: &[Rational]) -> bool {
        linalg::rank(&self.active_facets_exact(v)) == self.dim
    }

    pub fn vertex_index_exact(&self, x: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == x)
    }

    pub fn vertex_index_f64(&self, x: &[f64], tol: f64) -> Option<usize> {
        self.vertices_f
            .iter()
            .position(|v| v.iter().zip(x).all(|(a, b)| (a - b).abs() <= tol))
    }
}

/// Every hyperplane `a.z = 1` through `dim` linearly independent vertices
/// that keeps all vertices on one side is a facet.
fn enumerate_facets(vertices: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let one = rational::one();
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for subset in combinations(vertices.len(), dim) {
        let m: Vec<Vec<Rational>> = subset.iter().map(|&i| vertices[i].clone()).collect();
        let Some(a) = linalg::solve(&m, &vec![one.clone(); dim]) else {
            continue;
        };
        if vertices.iter().all(|v| rational::dot(&a, v) <= one) {
            found.insert(canonical_sign(a));
        }
    }
    found.into_iter().collect()
}

fn canonical_sign(a: Vec<Rational>) -> Vec<Rational> {
    match a.iter().find(|c| !c.is_zero()) {
        Some(first) if first.is_negative() => a.into_iter().map(|c| -c).collect(),
        _ => a,
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
