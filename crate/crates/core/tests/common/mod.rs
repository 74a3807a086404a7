//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::DMatrix;
use nsg::norms::{ParabolaForm, PieceSpec};
use nsg::rational::{ratio, to_f64, Rational};
use nsg::{Backend, Space, SpaceSpec, ToleranceConfig, Vector};
use num::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

pub fn spaces_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("spaces")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn stadium() -> Space {
    Space::build(
        SpaceSpec::Gauge2d {
            pieces: vec![
                PieceSpec::segment([1.0, -1.0], [1.0, 1.0]),
                PieceSpec::circle_angles([0.0, 1.0], 1.0, 0.0, std::f64::consts::PI),
                PieceSpec::segment([-1.0, 1.0], [-1.0, -1.0]),
                PieceSpec::circle_angles([0.0, -1.0], 1.0, std::f64::consts::PI, std::f64::consts::TAU),
            ],
        },
        Backend::Float,
    )
    .unwrap()
}

pub fn parabolic() -> Space {
    Space::build(
        SpaceSpec::Gauge2d {
            pieces: vec![
                PieceSpec::segment([1.0, -1.0], [1.0, 1.0]),
                PieceSpec::parabola(ParabolaForm::YOfX, -0.5, 0.0, 1.5, -1.0, 1.0),
                PieceSpec::segment([-1.0, 1.0], [-1.0, -1.0]),
                PieceSpec::parabola(ParabolaForm::YOfX, 0.5, 0.0, -1.5, -1.0, 1.0),
            ],
        },
        Backend::Float,
    )
    .unwrap()
}

pub fn exact(spec: SpaceSpec) -> Space {
    Space::build(spec, Backend::Exact).unwrap()
}

pub fn float(spec: SpaceSpec) -> Space {
    Space::build(spec, Backend::Float).unwrap()
}

pub fn linf(n: usize) -> SpaceSpec {
    SpaceSpec::lp(f64::INFINITY, n)
}

pub fn l1(n: usize) -> SpaceSpec {
    SpaceSpec::lp(1.0, n)
}

/// Independent lp norm.
pub fn lp_oracle(p: f64, x: &[f64]) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0, |m, c| m.max(c.abs()))
    } else {
        x.iter().map(|c| c.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

pub fn rand_rational(rng: &mut ChaCha8Rng, range: i64, den: i64) -> Rational {
    ratio(rng.gen_range(-range..=range), rng.gen_range(1..=den))
}

pub fn rand_rational_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| rand_rational(rng, 6, 4)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Strict convex hull (Andrew's monotone chain, collinear points dropped),
/// counter-clockwise.
pub fn hull(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<Rational>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Rational>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A random origin-symmetric polygon with rational vertices, in
/// counter-clockwise order.
pub fn random_polygon(rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    loop {
        let m = rng.gen_range(2..=5);
        let mut pts = Vec::new();
        for _ in 0..m {
            let p = vec![rand_rational(rng, 8, 5), rand_rational(rng, 8, 5)];
            pts.push(p.iter().map(|c| -c).collect());
            pts.push(p);
        }
        let h = hull(pts);
        if h.len() >= 4 && !h.iter().any(|v| v.iter().all(|c| c.is_zero())) {
            return h;
        }
    }
}

/// Edge functionals `a` with `a.v = 1` on each edge of a ccw polygon.
pub fn polygon_facets(poly: &[Vec<Rational>]) -> Vec<[Rational; 2]> {
    (0..poly.len())
        .map(|i| {
            let a = &poly[i];
            let b = &poly[(i + 1) % poly.len()];
            let n = [&b[1] - &a[1], &a[0] - &b[0]];
            let s = &n[0] * &a[0] + &n[1] * &a[1];
            [&n[0] / &s, &n[1] / &s]
        })
        .collect()
}

/// Polygon gauge as the largest edge functional.
pub fn polygon_norm_oracle(poly: &[Vec<Rational>], x: &[Rational]) -> Rational {
    polygon_facets(poly)
        .iter()
        .map(|a| &a[0] * &x[0] + &a[1] * &x[1])
        .max()
        .unwrap()
}

/// A rational point strictly inside a random edge of the polygon.
pub fn random_edge_point(rng: &mut ChaCha8Rng, poly: &[Vec<Rational>]) -> Vec<Rational> {
    let i = rng.gen_range(0..poly.len());
    let a = &poly[i];
    let b = &poly[(i + 1) % poly.len()];
    let t = ratio(rng.gen_range(1..=9), 10);
    vec![&a[0] + &t * (&b[0] - &a[0]), &a[1] + &t * (&b[1] - &a[1])]
}

pub fn to_vector(v: &[Rational]) -> Vector {
    Vector::from_rationals(v.to_vec())
}

pub fn to_f64s(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

pub fn rank(vectors: &[Vec<f64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(vectors.len(), vectors[0].len(), |i, j| vectors[i][j]);
    m.rank(tol)
}

/// A random nonzero float vector with entries in [-2, 2].
pub fn rand_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        if v.iter().any(|c| c.abs() > 1e-3) {
            return v;
        }
    }
}

pub fn normalize(space: &Space, v: &[f64]) -> Vector {
    let n = space.norm_f64(v);
    Vector::new(v.iter().map(|c| c / n).collect())
}

/// Random rational point on the sphere of a polyhedral space.
pub fn rational_unit(space: &Space, v: &[Rational]) -> Vector {
    let n = space.norm_exact(&to_vector(v)).unwrap();
    to_vector(&v.iter().map(|c| c / &n).collect::<Vec<_>>())
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}
