//! The exposed point / relative basis / norm-attaining operator cycle.
//!
//! From an exposing functional `f` at `x0` the kernel of `f` yields a basis
//! strongly orthonormal relative to `x0`; that basis yields the operator
//! fixing `x0` and halving the rest, whose norm is attained only at `±x0`;
//! composing a norming functional of `A x0` with `A` recovers an exposing
//! functional.

use num::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::norms::{Provenance, Space, ToleranceConfig};
use crate::orthogonality::{is_strongly_orthogonal_relative, OrthVerdict};
use crate::pointgeom::{is_exposed, supporting_functionals, NormalCone, PointClass};
use crate::rational::{self, Rational};
use crate::search;
use crate::vector::{Functional, Vector};

/// Angular radius used to group attaining points and to decide whether they
/// sit at `±x0`.
pub const CLUSTER_RADIUS: f64 = 1e-2;

#[derive(Clone, Debug)]
pub struct RelativeBasis {
    pub vectors: Vec<Vector>,
    pub distinguished: usize,
    pub certificate: OrthVerdict,
}

impl RelativeBasis {
    /// Checks a caller-supplied basis: unit norms, linear independence and
    /// the relative strong-orthogonality certificate.
    pub fn certify(space: &Space, vectors: Vec<Vector>, distinguished: usize, tol: &ToleranceConfig) -> Result<Self> {
        if vectors.len() != space.dim() {
            return Err(Error::VerificationFailed(format!(
                "a basis of a {}-dimensional space needs {} vectors, got {}",
                space.dim(),
                space.dim(),
                vectors.len()
            )));
        }
        for v in &vectors {
            space.require_unit(v, tol.eps_abs)?;
        }
        let certificate = is_strongly_orthogonal_relative(space, &vectors, distinguished, tol)?;
        if !certificate.decision {
            return Err(Error::CertificateFailed {
                margin: certificate.margin,
            });
        }
        Ok(RelativeBasis {
            vectors,
            distinguished,
            certificate,
        })
    }

    pub fn x0(&self) -> &Vector {
        &self.vectors[self.distinguished]
    }
}

/// An `n x n` matrix acting on coordinates, with an exact copy when built
/// from rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: Vec<Vec<f64>>,
    pub exact: Option<Vec<Vec<Rational>>>,
}

impl Matrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Self {
        Matrix { rows, exact: None }
    }

    pub fn from_rationals(exact: Vec<Vec<Rational>>) -> Self {
        Matrix {
            rows: exact.iter().map(|r| r.iter().map(rational::to_f64).collect()).collect(),
            exact: Some(exact),
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_rationals(
            (0..n)
                .map(|i| (0..n).map(|j| rational::int(i64::from(i == j))).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, z: &Vector) -> Vector {
        if let (Some(m), true) = (&self.exact, z.is_exact()) {
            let q = z.exact_coords().expect("exact vector");
            return Vector::from_rationals(linalg::mat_vec(m, &q));
        }
        Vector::new(linalg::mat_vec(&self.rows, z.coords()))
    }

    fn apply_f64(&self, z: &[f64]) -> Vec<f64> {
        linalg::mat_vec(&self.rows, z)
    }

    /// `g = f o A`, i.e. `g_i = sum_k f_k A_{k,i}`.
    pub fn compose(&self, f: &Functional) -> Functional {
        if let (Some(m), true) = (&self.exact, f.0.is_exact()) {
            let q = f.0.exact_coords().expect("exact functional");
            return Functional::from_rationals(linalg::vec_mat(&q, m));
        }
        Functional::new(linalg::vec_mat(f.coeffs(), &self.rows))
    }
}

/// Norm of an operator estimated over the unit sphere, and where it is
/// attained.
#[derive(Clone, Debug)]
pub struct Attainment {
    pub norm_estimate: f64,
    pub exact_norm: Option<Rational>,
    /// Points with `||A z|| >= norm_estimate - eps_flat` (attaining
    /// vertices on the exact backend).
    pub points: Vec<Vector>,
    /// One representative per angular cluster of `points`.
    pub clusters: Vec<Vector>,
    /// Whether every attaining point lies within [`CLUSTER_RADIUS`] of
    /// `±x0`, when `x0` was supplied.
    pub only_at_x0: Option<bool>,
    /// `norm_estimate` minus the largest value found away from `±x0`.
    pub separation: Option<f64>,
    pub scanned: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct Operator {
    pub matrix: Matrix,
    pub norm_estimate: f64,
    pub attainment: Attainment,
}

/// Kernel basis of `f` by coordinate elimination: with pivot `p` the first
/// index of largest `|f_p|`, the vectors `e_j - (f_j / f_p) e_p`, `j != p`.
pub fn kernel_basis(f: &Functional) -> Vec<Vector> {
    let c = f.coeffs();
    let n = c.len();
    let p = (0..n).fold(0, |best, i| if c[i].abs() > c[best].abs() { i } else { best });
    if f.0.is_exact() {
        let q = f.0.exact_coords().expect("exact functional");
        return (0..n)
            .filter(|&j| j != p)
            .map(|j| {
                let mut v = vec![Rational::zero(); n];
                v[j] = rational::one();
                v[p] = -(&q[j] / &q[p]);
                Vector::from_rationals(v)
            })
            .collect();
    }
    (0..n)
        .filter(|&j| j != p)
        .map(|j| {
            let mut v = vec![0.0; n];
            v[j] = 1.0;
            v[p] = -c[j] / c[p];
            Vector::new(v)
        })
        .collect()
}

fn normalize(space: &Space, v: &Vector) -> Result<Vector> {
    if space.is_exact() {
        let r = space.norm_exact(v)?;
        return Ok(v.scale_exact(&(rational::one() / r)).expect("finite vector"));
    }
    Ok(v.scale(1.0 / space.norm_f64(v.coords())))
}

/// `{x0} ∪ D` with `D` a normalized basis of the kernel of an exposing
/// functional.
fn basis_from_functional(space: &Space, x0: &Vector, f: &Functional) -> Result<Vec<Vector>> {
    let mut vectors = vec![x0.clone()];
    for v in kernel_basis(f) {
        vectors.push(normalize(space, &v)?);
    }
    Ok(vectors)
}

pub fn basis_from_exposed(space: &Space, x0: &Vector, tol: &ToleranceConfig) -> Result<RelativeBasis> {
    let pc = is_exposed(space, x0, tol)?;
    let Some(f) = pc.exposing_functional.clone().filter(|_| pc.exposed) else {
        return Err(Error::NotExposed(Box::new(pc)));
    };
    let x0 = exact_if_possible(space, x0);
    let vectors = basis_from_functional(space, &x0, &f)?;
    RelativeBasis::certify(space, vectors, 0, tol)
}

fn exact_if_possible(space: &Space, x: &Vector) -> Vector {
    if space.is_exact() && !x.is_exact() {
        if let Some(q) = x.exact_coords() {
            return Vector::from_rationals(q);
        }
    }
    x.clone()
}

/// `A = B diag(1, 1/2, ..., 1/2) B^{-1}` with `x0` the first column of `B`.
pub fn operator_matrix(vectors: &[Vector], distinguished: usize, exact: bool) -> Result<Matrix> {
    let n = vectors.len();
    let mut order = vec![distinguished];
    order.extend((0..n).filter(|&i| i != distinguished));
    if exact {
        let cols: Vec<Vec<Rational>> = order
            .iter()
            .map(|&i| vectors[i].exact_coords().ok_or(Error::NotRational))
            .collect::<Result<_>>()?;
        let b = linalg::transpose(&cols);
        let inv = linalg::inverse(&b).ok_or(Error::SingularBasis)?;
        let half = rational::ratio(1, 2);
        let bd: Vec<Vec<Rational>> = b
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| if j == 0 { v.clone() } else { v * &half })
                    .collect()
            })
            .collect();
        return Ok(Matrix::from_rationals(linalg::mat_mul(&bd, &inv)));
    }
    let cols: Vec<Vec<f64>> = order.iter().map(|&i| vectors[i].coords().to_vec()).collect();
    let b = linalg::transpose(&cols);
    let inv = linalg::inverse(&b).ok_or(Error::SingularBasis)?;
    let bd: Vec<Vec<f64>> = b
        .iter()
        .map(|row| row.iter().enumerate().map(|(j, v)| if j == 0 { *v } else { v * 0.5 }).collect())
        .collect();
    Ok(Matrix::new(linalg::mat_mul(&bd, &inv)))
}

pub fn operator_from_basis(space: &Space, basis: &RelativeBasis, tol: &ToleranceConfig) -> Result<Operator> {
    let exact = space.is_exact() && basis.vectors.iter().all(|v| v.exact_coords().is_some());
    let matrix = operator_matrix(&basis.vectors, basis.distinguished, exact)?;
    let attainment = operator_norm_attainment(space, &matrix, Some(basis.x0()), tol)?;
    Ok(Operator {
        matrix,
        norm_estimate: attainment.norm_estimate,
        attainment,
    })
}

fn near_antipodes(z: &Vector, x0: &Vector) -> bool {
    z.angle_to(x0) <= CLUSTER_RADIUS || z.angle_to(&x0.neg()) <= CLUSTER_RADIUS
}

fn cluster(points: &[Vector]) -> Vec<Vector> {
    let mut reps: Vec<Vector> = Vec::new();
    for p in points {
        if !reps.iter().any(|r| r.angle_to(p) <= CLUSTER_RADIUS) {
            reps.push(p.clone());
        }
    }
    reps
}

/// Estimates `||A|| = max ||A z||` over the unit sphere and the set where it
/// is attained. On the exact backend the maximum of the convex function
/// `z ↦ ||A z||` is taken over the vertices of the ball; otherwise over a
/// sphere sample (plus the ball's vertices, when it has any) refined by
/// golden-section search around the best candidates.
pub fn operator_norm_attainment(
    space: &Space,
    a: &Matrix,
    x0: Option<&Vector>,
    tol: &ToleranceConfig,
) -> Result<Attainment> {
    space.check_dim(a.dim())?;
    if let Some(x) = x0 {
        space.check_dim(x.dim())?;
    }
    if space.is_exact() {
        if let Some(m) = &a.exact {
            return exact_attainment(space, m, x0);
        }
    }
    let norm_of = |z: &[f64]| space.norm_f64(&a.apply_f64(z));
    let mut cands: Vec<Vector> = space.sphere_sample_seeded(tol.grid_for(space.dim()), tol.seed);
    if let Some(poly) = space.polytope() {
        cands.extend(poly.vertices_f64().iter().map(|v| Vector::new(v.clone())));
    }
    if let Some(x) = x0 {
        cands.push(x.clone());
        cands.push(x.neg());
    }
    let vals: Vec<f64> = cands.par_iter().map(|z| norm_of(z.coords())).collect();

    // Refine the best few candidates.
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
    let spacing = 4.0 / (tol.grid_for(space.dim()) as f64).powf(1.0 / (space.dim() as f64 - 1.0));
    let refined: Vec<Vector> = order
        .iter()
        .take(8)
        .map(|&i| refine(space, &norm_of, cands[i].coords(), spacing))
        .collect();
    let scanned = cands.len();
    cands.extend(refined);
    let vals: Vec<f64> = cands.par_iter().map(|z| norm_of(z.coords())).collect();
    let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let points: Vec<Vector> = cands
        .iter()
        .zip(&vals)
        .filter(|(_, v)| **v >= m - tol.eps_flat)
        .map(|(z, _)| z.clone())
        .collect();
    let clusters = cluster(&points);
    let only_at_x0 = x0.map(|x| points.iter().all(|p| near_antipodes(p, x)));
    let separation = x0.map(|x| {
        let away = cands
            .iter()
            .zip(&vals)
            .filter(|(z, _)| !near_antipodes(z, x))
            .map(|(_, v)| *v)
            .fold(f64::NEG_INFINITY, f64::max);
        m - away
    });
    Ok(Attainment {
        norm_estimate: m,
        exact_norm: None,
        points,
        clusters,
        only_at_x0,
        separation,
        scanned,
        provenance: Provenance::Approximate,
    })
}

/// Coordinate-wise golden-section ascent of `z ↦ ||A z|| / ||z||` started
/// from a unit vector.
fn refine(space: &Space, norm_of: &impl Fn(&[f64]) -> f64, z: &[f64], spacing: f64) -> Vector {
    let unit = |v: &[f64]| -> Vec<f64> {
        let r = space.norm_f64(v);
        v.iter().map(|c| c / r).collect()
    };
    let ratio = |v: &[f64]| norm_of(&unit(v));
    let mut best = z.to_vec();
    let mut val = ratio(&best);
    let mut h = spacing;
    for _ in 0..4 {
        for i in 0..best.len() {
            let m = search::golden_maximize(
                |t| {
                    let mut w = best.clone();
                    w[i] += t;
                    ratio(&w)
                },
                -h,
                h,
                1e-12,
            );
            if m.value > val {
                best[i] += m.arg;
                best = unit(&best);
                val = m.value;
            }
        }
        h *= 0.25;
    }
    Vector::new(best)
}

fn exact_attainment(space: &Space, m: &[Vec<Rational>], x0: Option<&Vector>) -> Result<Attainment> {
    let poly = space.polytope().ok_or(Error::ExactUnavailable)?;
    let vals: Vec<Rational> = poly
        .vertices()
        .iter()
        .map(|v| poly.norm_exact(&linalg::mat_vec(&m.to_vec(), v)))
        .collect();
    let top = vals.iter().max().cloned().unwrap_or_else(Rational::zero);
    let points: Vec<Vector> = poly
        .vertices()
        .iter()
        .zip(&vals)
        .filter(|(_, v)| **v == top)
        .map(|(z, _)| Vector::from_rationals(z.clone()))
        .collect();
    let x0q = x0.and_then(|x| x.exact_coords());
    let is_pm = |z: &Vector, x: &[Rational]| {
        let q = z.exact_coords().expect("exact vertex");
        q == x || q.iter().zip(x).all(|(a, b)| *a == -b.clone())
    };
    let only_at_x0 = x0q.as_ref().map(|x| points.iter().all(|p| is_pm(p, x)));
    let separation = x0q.as_ref().map(|x| {
        let away = poly
            .vertices()
            .iter()
            .zip(&vals)
            .filter(|(z, _)| !is_pm(&Vector::from_rationals((*z).clone()), x))
            .map(|(_, v)| v.clone())
            .max();
        match away {
            Some(v) => rational::to_f64(&(&top - v)),
            None => rational::to_f64(&top),
        }
    });
    Ok(Attainment {
        norm_estimate: rational::to_f64(&top),
        exact_norm: Some(top),
        clusters: cluster(&points),
        points,
        only_at_x0,
        separation,
        scanned: vals.len(),
        provenance: Provenance::Exact,
    })
}

/// A representative supporting functional: the cone's mid-normal on the
/// plane, the average of the generators on a polytope.
fn representative(space: &Space, cone: &NormalCone, x: &Vector) -> Functional {
    match cone {
        NormalCone::Single(f) => f.clone(),
        NormalCone::Arc { left, right } => {
            let u = left.scale(1.0 / left.0.euclidean());
            let v = right.scale(1.0 / right.0.euclidean());
            let n = Functional::new(vec![u.coeffs()[0] + v.coeffs()[0], u.coeffs()[1] + v.coeffs()[1]]);
            n.scale(1.0 / n.apply(x))
        }
        NormalCone::Generators(g) => {
            if space.is_exact() && g.iter().all(|f| f.0.is_exact()) {
                let k = rational::int(g.len() as i64);
                let q: Vec<Vec<Rational>> = g.iter().map(|f| f.0.exact_coords().expect("exact")).collect();
                Functional::from_rationals(
                    (0..x.dim())
                        .map(|i| q.iter().fold(Rational::zero(), |s, c| s + &c[i]) / &k)
                        .collect(),
                )
            } else {
                let k = g.len() as f64;
                Functional::new((0..x.dim()).map(|i| g.iter().map(|f| f.coeffs()[i]).sum::<f64>() / k).collect())
            }
        }
    }
}

/// The left fixed functional of `A` (`φ o A = φ`) scaled so `φ(y) = 1`.
fn fixed_functional(a: &Matrix, y: &Vector) -> Option<Functional> {
    let n = a.dim();
    if let (Some(m), Some(yq)) = (&a.exact, y.exact_coords().filter(|_| y.is_exact())) {
        let shifted: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|k| if i == k { &m[k][i] - rational::one() } else { m[k][i].clone() }).collect())
            .collect();
        let ns = linalg::nullspace(&shifted, n);
        if ns.len() != 1 {
            return None;
        }
        let s = rational::dot(&ns[0], &yq);
        if s.is_zero() {
            return None;
        }
        return Some(Functional::from_rationals(ns[0].iter().map(|c| c / &s).collect()));
    }
    let m = &a.rows;
    let shifted: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|k| if i == k { m[k][i] - 1.0 } else { m[k][i] }).collect())
        .collect();
    let ns = linalg::nullspace(&shifted, n);
    if ns.len() != 1 {
        return None;
    }
    let s: f64 = ns[0].iter().zip(y.coords()).map(|(a, b)| a * b).sum();
    (s.abs() > 1e-12).then(|| Functional::new(ns[0].iter().map(|c| c / s).collect()))
}

/// Composes a norming functional of `A x0` with `A`. The norming functional
/// is the fixed functional of `A` when that supports the ball at `A x0`
/// (then `f o A = f`), and a representative of the normal cone otherwise.
pub fn exposing_functional_from_operator(
    space: &Space,
    op: &Operator,
    x0: &Vector,
    tol: &ToleranceConfig,
) -> Result<Functional> {
    space.require_unit(x0, tol.eps_abs)?;
    let att = if op.attainment.only_at_x0.is_some() {
        op.attainment.clone()
    } else {
        operator_norm_attainment(space, &op.matrix, Some(x0), tol)?
    };
    if att.only_at_x0 != Some(true) {
        return Err(Error::AttainmentNotUnique(format!(
            "{} attaining cluster(s), norm estimate {}",
            att.clusters.len(),
            att.norm_estimate
        )));
    }
    let x0 = exact_if_possible(space, x0);
    let y = op.matrix.apply(&x0);
    let ny = space.norm(&y)?;
    if (ny - 1.0).abs() > tol.eps_abs || (att.norm_estimate - 1.0).abs() > 1e-6 {
        return Err(Error::AttainmentNotUnique(format!(
            "||A x0|| = {ny}, norm estimate {}",
            att.norm_estimate
        )));
    }
    let f = match fixed_functional(&op.matrix, &y).filter(|f| {
        space
            .dual_norm(f)
            .is_ok_and(|d| (d - 1.0).abs() <= tol.eps_abs)
    }) {
        Some(f) => f,
        None => representative(space, &supporting_functionals(space, &y, tol)?, &y),
    };
    let g = op.matrix.compose(&f);

    let gx = g.apply(&x0);
    if (gx - 1.0).abs() > tol.eps_abs {
        return Err(Error::VerificationFailed(format!("g(x0) = {gx}")));
    }
    let d = space.dual_norm(&g)?;
    if (d - 1.0).abs() > tol.eps_abs {
        return Err(Error::VerificationFailed(format!("dual norm of g is {d}")));
    }
    let worst = max_away(space, &g, &x0, tol);
    if worst >= 1.0 - tol.eps_flat {
        return Err(Error::VerificationFailed(format!(
            "g reaches {worst} on the sphere away from ±x0"
        )));
    }
    Ok(g)
}

/// Largest `|g(z)|` over sphere samples farther than [`CLUSTER_RADIUS`] from
/// `±x0`.
pub fn max_away(space: &Space, g: &Functional, x0: &Vector, tol: &ToleranceConfig) -> f64 {
    space
        .sphere_sample_seeded(tol.grid_for(space.dim()), tol.seed)
        .par_iter()
        .filter(|z| !near_antipodes(z, x0))
        .map(|z| g.apply(z).abs())
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Whether `f` exposes `x0`: `f(x0) = 1 = ||f||*` and `f < 1` elsewhere on
/// the ball.
pub fn exposes(space: &Space, f: &Functional, x0: &Vector, tol: &ToleranceConfig) -> Result<bool> {
    if let (Some(poly), true) = (space.polytope(), space.is_exact()) {
        let fq = f.0.exact_coords().ok_or(Error::NotRational)?;
        let xq = x0.exact_coords().ok_or(Error::NotRational)?;
        let one = rational::one();
        if rational::dot(&fq, &xq) != one {
            return Ok(false);
        }
        return Ok(poly
            .vertices()
            .iter()
            .all(|v| *v == xq || rational::dot(&fq, v) < one));
    }
    if (f.apply(x0) - 1.0).abs() > tol.eps_abs || (space.dual_norm(f)? - 1.0).abs() > tol.eps_abs {
        return Ok(false);
    }
    if let Some(g) = space.gauge() {
        let x = [x0.coords()[0], x0.coords()[1]];
        return Ok(g.support_set([f.coeffs()[0], f.coeffs()[1]]).is_singleton_at(x));
    }
    if let Some(poly) = space.polytope() {
        return Ok(poly.vertices_f64().iter().all(|v| {
            let same = v.iter().zip(x0.coords()).all(|(a, b)| (a - b).abs() <= tol.eps_abs);
            same || f.coeffs().iter().zip(v).map(|(a, b)| a * b).sum::<f64>() < 1.0 - tol.eps_flat
        }));
    }
    // Strictly convex ball: every supporting functional exposes.
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct Condition {
    pub holds: bool,
    pub margin: f64,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub point: Vector,
    pub classification: PointClass,
    /// `x0` is an exposed point.
    pub condition_1_exposed: Condition,
    /// A basis strongly orthonormal relative to `x0` exists.
    pub condition_2_basis: Condition,
    /// An invertible operator attains its norm only at `±x0`.
    pub condition_3_operator: Condition,
    pub obstruction: Option<String>,
    pub basis: Option<Vec<Vector>>,
    pub operator: Option<Matrix>,
    pub functional: Option<Functional>,
}

impl RoundtripReport {
    pub fn all_hold(&self) -> bool {
        self.condition_1_exposed.holds && self.condition_2_basis.holds && self.condition_3_operator.holds
    }

    pub fn none_hold(&self) -> bool {
        !self.condition_1_exposed.holds && !self.condition_2_basis.holds && !self.condition_3_operator.holds
    }
}

fn inconsistent(stage: &str, err: impl std::fmt::Display) -> Error {
    Error::InconsistentClassification(format!("{stage}: {err}"))
}

/// Runs the three equivalent conditions at `x0` and checks they agree.
pub fn equivalence_roundtrip(space: &Space, x0: &Vector, tol: &ToleranceConfig) -> Result<RoundtripReport> {
    let pc = is_exposed(space, x0, tol)?;
    let x0 = exact_if_possible(space, x0);
    if pc.exposed {
        exposed_roundtrip(space, &x0, pc, tol)
    } else {
        obstructed_roundtrip(space, &x0, pc, tol)
    }
}

fn exposed_roundtrip(space: &Space, x0: &Vector, pc: PointClass, tol: &ToleranceConfig) -> Result<RoundtripReport> {
    let f = pc.exposing_functional.clone().expect("exposed point has a functional");
    let c1_margin = exposure_gap(space, &f, x0, tol);
    let basis = basis_from_exposed(space, x0, tol).map_err(|e| inconsistent("basis from exposed point", e))?;
    let op = operator_from_basis(space, &basis, tol).map_err(|e| inconsistent("operator from basis", e))?;
    if op.attainment.only_at_x0 != Some(true) {
        return Err(inconsistent(
            "operator norm attainment",
            format!("{} clusters of attaining points", op.attainment.clusters.len()),
        ));
    }
    let g = exposing_functional_from_operator(space, &op, x0, tol)
        .map_err(|e| inconsistent("functional from operator", e))?;
    if !exposes(space, &g, x0, tol)? {
        return Err(inconsistent("functional from operator", "f o A does not expose x0"));
    }
    Ok(RoundtripReport {
        point: x0.clone(),
        classification: pc,
        condition_1_exposed: Condition {
            holds: true,
            margin: c1_margin,
            detail: format!("exposing functional {:?}", f.coeffs()),
        },
        condition_2_basis: Condition {
            holds: true,
            margin: basis.certificate.margin,
            detail: format!(
                "basis {:?}",
                basis.vectors.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>()
            ),
        },
        condition_3_operator: Condition {
            holds: true,
            margin: op.attainment.separation.unwrap_or(0.0),
            detail: format!(
                "norm {} attained only at ±x0; f o A = {:?}",
                op.norm_estimate,
                g.coeffs()
            ),
        },
        obstruction: None,
        basis: Some(basis.vectors),
        operator: Some(op.matrix),
        functional: Some(g),
    })
}

/// Independent evidence for a non-exposed point: every basis built from a
/// supporting functional fails its certificate, and the operator built from
/// it attains its norm away from `±x0`.
fn obstructed_roundtrip(space: &Space, x0: &Vector, pc: PointClass, tol: &ToleranceConfig) -> Result<RoundtripReport> {
    let mut best_margin = f64::NEG_INFINITY;
    let mut best_sep = f64::NEG_INFINITY;
    let mut first_basis = None;
    let mut first_op = None;
    for f in pc.normal_cone.generators() {
        let vectors = basis_from_functional(space, x0, &f)?;
        let cert = is_strongly_orthogonal_relative(space, &vectors, 0, tol)?;
        if cert.decision {
            return Err(inconsistent(
                "basis search",
                format!("a kernel basis of a supporting functional passes although x0 is not exposed: {vectors:?}"),
            ));
        }
        best_margin = best_margin.max(cert.margin);
        let exact = space.is_exact();
        let matrix = operator_matrix(&vectors, 0, exact)?;
        let att = operator_norm_attainment(space, &matrix, Some(x0), tol)?;
        if att.only_at_x0 == Some(true) {
            return Err(inconsistent(
                "operator attainment",
                "candidate operator attains only at ±x0 although x0 is not exposed",
            ));
        }
        best_sep = best_sep.max(att.separation.unwrap_or(0.0));
        first_basis.get_or_insert(vectors);
        first_op.get_or_insert(matrix);
    }
    let obstruction = pc.obstruction.clone();
    Ok(RoundtripReport {
        point: x0.clone(),
        condition_1_exposed: Condition {
            holds: false,
            margin: 0.0,
            detail: obstruction.clone().unwrap_or_default(),
        },
        condition_2_basis: Condition {
            holds: false,
            margin: best_margin,
            detail: "every kernel basis of a supporting functional fails the relative certificate".into(),
        },
        condition_3_operator: Condition {
            holds: false,
            margin: best_sep,
            detail: "the candidate operator attains its norm away from ±x0".into(),
        },
        classification: pc,
        obstruction,
        basis: first_basis,
        operator: first_op,
        functional: None,
    })
}

/// `1 - max f` over the ball away from `x0`: over the other vertices on the
/// exact backend, over sphere samples outside the `±x0` clusters otherwise.
fn exposure_gap(space: &Space, f: &Functional, x0: &Vector, tol: &ToleranceConfig) -> f64 {
    if let (Some(poly), true, Some(fq), Some(xq)) = (space.polytope(), space.is_exact(), f.0.exact_coords(), x0.exact_coords()) {
        let top = poly
            .vertices()
            .iter()
            .filter(|v| **v != xq)
            .map(|v| rational::dot(&fq, v))
            .max();
        return top.map_or(1.0, |t| rational::to_f64(&(rational::one() - t)));
    }
    1.0 - max_away(space, f, x0, tol)
}
