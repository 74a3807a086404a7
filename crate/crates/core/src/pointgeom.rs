//! Classification of unit-sphere points: normal cones, extreme and exposed
//! points, and a sampled strict-convexity probe.

use num::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::norms::{lp, Backend, Location, Polytope, Provenance, Space, SupportSet, ToleranceConfig};
use crate::rational::{self, Rational};
use crate::vector::{Functional, Vector};

/// Supporting functionals at a unit vector, each scaled so that `f(x) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum NormalCone {
    /// Smooth point: the unique norming functional.
    Single(Functional),
    /// Polytope: the active facet functionals generating the cone.
    Generators(Vec<Functional>),
    /// Planar corner: the one-sided normals, incoming then outgoing.
    Arc { left: Functional, right: Functional },
}

impl NormalCone {
    pub fn generators(&self) -> Vec<Functional> {
        match self {
            NormalCone::Single(f) => vec![f.clone()],
            NormalCone::Generators(g) => g.clone(),
            NormalCone::Arc { left, right } => vec![left.clone(), right.clone()],
        }
    }

    pub fn is_single(&self) -> bool {
        match self {
            NormalCone::Single(_) => true,
            NormalCone::Generators(g) => g.len() == 1,
            NormalCone::Arc { .. } => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointClass {
    pub point: Vector,
    pub on_sphere: bool,
    pub extreme: bool,
    pub exposed: bool,
    pub exposing_functional: Option<Functional>,
    /// `z != 0` with `||x + z|| <= 1` and `||x - z|| <= 1`.
    pub flat_witness: Option<Vector>,
    pub normal_cone: NormalCone,
    pub provenance: Provenance,
    /// Why the point is not exposed (e.g. the support set of its only
    /// supporting line).
    pub obstruction: Option<String>,
}

impl PointClass {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{:?}: extreme = {}, exposed = {}",
            self.point.coords(),
            self.extreme,
            self.exposed
        );
        if let Some(o) = &self.obstruction {
            s.push_str("; ");
            s.push_str(o);
        }
        s
    }
}

/// The extreme-point part of a classification.
#[derive(Clone, Debug, PartialEq)]
pub struct Extremality {
    pub extreme: bool,
    pub flat_witness: Option<Vector>,
    pub provenance: Provenance,
}

const FLOAT_ACTIVE_TOL: f64 = 1e-9;

pub fn supporting_functionals(space: &Space, x: &Vector, tol: &ToleranceConfig) -> Result<NormalCone> {
    space.require_unit(x, tol.eps_abs)?;
    Ok(cone(space, x)?.0)
}

pub fn is_extreme(space: &Space, x: &Vector, tol: &ToleranceConfig) -> Result<Extremality> {
    let c = is_exposed(space, x, tol)?;
    Ok(Extremality {
        extreme: c.extreme,
        flat_witness: c.flat_witness,
        provenance: c.provenance,
    })
}

/// Full classification of a unit vector.
pub fn is_exposed(space: &Space, x: &Vector, tol: &ToleranceConfig) -> Result<PointClass> {
    space.require_unit(x, tol.eps_abs)?;
    if space.polytope().is_some() {
        return Ok(classify_poly(space, x));
    }
    if let Some(p) = space.smooth_exponent() {
        let f = Functional::new(lp::gradient(x.coords(), p));
        return Ok(PointClass {
            point: x.clone(),
            on_sphere: true,
            extreme: true,
            exposed: true,
            exposing_functional: Some(f.clone()),
            flat_witness: None,
            normal_cone: NormalCone::Single(f),
            provenance: Provenance::Approximate,
            obstruction: None,
        });
    }
    classify_gauge(space, x)
}

/// Alias of [`is_exposed`].
pub fn classify(space: &Space, x: &Vector, tol: &ToleranceConfig) -> Result<PointClass> {
    is_exposed(space, x, tol)
}

fn cone(space: &Space, x: &Vector) -> Result<(NormalCone, Option<Location>)> {
    if space.polytope().is_some() {
        return Ok((classify_poly(space, x).normal_cone, None));
    }
    if let Some(p) = space.smooth_exponent() {
        return Ok((NormalCone::Single(Functional::new(lp::gradient(x.coords(), p))), None));
    }
    let g = space.gauge().expect("planar gauge");
    let pt = [x.coords()[0], x.coords()[1]];
    let loc = g.locate(pt).ok_or(Error::NotOnSphere {
        norm: space.norm_f64(x.coords()),
    })?;
    let (a, b) = g.normals(loc);
    let scaled = |n: [f64; 2]| {
        let v = n[0] * pt[0] + n[1] * pt[1];
        Functional::new(vec![n[0] / v, n[1] / v])
    };
    let cross = a[0] * b[1] - a[1] * b[0];
    let dot = a[0] * b[0] + a[1] * b[1];
    if cross.abs() <= 1e-12 && dot > 0.0 {
        Ok((NormalCone::Single(scaled(a)), Some(loc)))
    } else {
        Ok((
            NormalCone::Arc {
                left: scaled(a),
                right: scaled(b),
            },
            Some(loc),
        ))
    }
}

fn classify_gauge(space: &Space, x: &Vector) -> Result<PointClass> {
    let g = space.gauge().expect("planar gauge");
    let (normal_cone, loc) = cone(space, x)?;
    let loc = loc.expect("gauge location");
    let pt = [x.coords()[0], x.coords()[1]];

    if let Some((a, b)) = g.flat_through(loc) {
        let d = [b[0] - a[0], b[1] - a[1]];
        let l = d[0].hypot(d[1]);
        let t = (pt[0] - a[0]).hypot(pt[1] - a[1]).min((pt[0] - b[0]).hypot(pt[1] - b[1]));
        let support = SupportSet::Segment(a, b);
        return Ok(PointClass {
            point: x.clone(),
            on_sphere: true,
            extreme: false,
            exposed: false,
            exposing_functional: None,
            flat_witness: Some(Vector::new(vec![t * d[0] / l, t * d[1] / l])),
            normal_cone,
            provenance: space.provenance(),
            obstruction: Some(format!("x lies inside a boundary segment; {}", support.describe())),
        });
    }

    // Mid-normal of the cone (the normal itself at a smooth point).
    let n = match &normal_cone {
        NormalCone::Single(f) => [f.coeffs()[0], f.coeffs()[1]],
        NormalCone::Arc { left, right } => {
            let u = unit(left.coeffs());
            let v = unit(right.coeffs());
            [u[0] + v[0], u[1] + v[1]]
        }
        NormalCone::Generators(_) => unreachable!("gauge cones are arcs"),
    };
    let support = g.support_set(n);
    let exposed = support.is_singleton_at(pt);
    let v = n[0] * pt[0] + n[1] * pt[1];
    Ok(PointClass {
        point: x.clone(),
        on_sphere: true,
        extreme: true,
        exposed,
        exposing_functional: exposed.then(|| Functional::new(vec![n[0] / v, n[1] / v])),
        flat_witness: None,
        normal_cone,
        provenance: space.provenance(),
        obstruction: (!exposed).then(|| support.describe()),
    })
}

fn unit(c: &[f64]) -> [f64; 2] {
    let l = c[0].hypot(c[1]);
    [c[0] / l, c[1] / l]
}

fn classify_poly(space: &Space, x: &Vector) -> PointClass {
    let poly = space.polytope().expect("polytope");
    if space.is_exact() {
        let q = x.exact_coords().expect("finite point");
        return classify_poly_exact(poly, x, &q);
    }
    classify_poly_float(space, poly, x)
}

fn classify_poly_exact(poly: &Polytope, x: &Vector, q: &[Rational]) -> PointClass {
    let active = poly.active_facets_exact(q);
    let normal_cone = NormalCone::Generators(active.iter().map(|a| Functional::from_rationals(a.clone())).collect());
    let ns = linalg::nullspace(&active, poly.dim());
    if let Some(z) = ns.first() {
        let z = canonical(z.clone());
        // Largest t with |a.x +- t a.z| <= 1 on every facet.
        let one = rational::one();
        let t = poly
            .facets()
            .iter()
            .filter_map(|a| {
                let az = rational::dot(a, &z).abs();
                (!az.is_zero()).then(|| (&one - rational::dot(a, q).abs()) / az)
            })
            .min()
            .unwrap_or_else(rational::one);
        let w: Vec<Rational> = z.iter().map(|c| c * &t).collect();
        return PointClass {
            point: x.clone(),
            on_sphere: true,
            extreme: false,
            exposed: false,
            exposing_functional: None,
            flat_witness: Some(Vector::from_rationals(w)),
            normal_cone,
            provenance: Provenance::Exact,
            obstruction: Some(format!("x is not a vertex: lies on a face of dimension {}", ns.len())),
        };
    }
    let k = rational::int(active.len() as i64);
    let f: Vec<Rational> = (0..poly.dim())
        .map(|i| active.iter().fold(Rational::zero(), |s, a| s + &a[i]) / &k)
        .collect();
    PointClass {
        point: x.clone(),
        on_sphere: true,
        extreme: true,
        exposed: true,
        exposing_functional: Some(Functional::from_rationals(f)),
        flat_witness: None,
        normal_cone,
        provenance: Provenance::Exact,
        obstruction: None,
    }
}

fn classify_poly_float(space: &Space, poly: &Polytope, x: &Vector) -> PointClass {
    let c = x.coords();
    let active = poly.active_facets_f64(c, FLOAT_ACTIVE_TOL);
    let normal_cone = NormalCone::Generators(active.iter().map(|a| Functional::new(a.clone())).collect());
    let ns = linalg::nullspace(&active, poly.dim());
    if let Some(z) = ns.first() {
        let l = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut z: Vec<f64> = z.iter().map(|v| v / l).collect();
        if z.iter().find(|v| v.abs() > 1e-12).is_some_and(|v| *v < 0.0) {
            z.iter_mut().for_each(|v| *v = -*v);
        }
        let t = poly
            .facets_f64()
            .iter()
            .filter_map(|a| {
                let az: f64 = a.iter().zip(&z).map(|(p, q)| p * q).sum::<f64>().abs();
                let ax: f64 = a.iter().zip(c).map(|(p, q)| p * q).sum::<f64>().abs();
                (az > 1e-12).then(|| (1.0 - ax).max(0.0) / az)
            })
            .fold(f64::INFINITY, f64::min);
        let t = if t.is_finite() { t } else { 1.0 };
        return PointClass {
            point: x.clone(),
            on_sphere: true,
            extreme: false,
            exposed: false,
            exposing_functional: None,
            flat_witness: Some(Vector::new(z.iter().map(|v| v * t).collect())),
            normal_cone,
            provenance: space.provenance(),
            obstruction: Some(format!("x is not a vertex: lies on a face of dimension {}", ns.len())),
        };
    }
    let k = active.len() as f64;
    let f: Vec<f64> = (0..poly.dim()).map(|i| active.iter().map(|a| a[i]).sum::<f64>() / k).collect();
    PointClass {
        point: x.clone(),
        on_sphere: true,
        extreme: true,
        exposed: true,
        exposing_functional: Some(Functional::new(f)),
        flat_witness: None,
        normal_cone,
        provenance: space.provenance(),
        obstruction: None,
    }
}

fn canonical(z: Vec<Rational>) -> Vec<Rational> {
    match z.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => z.iter().map(|c| -c).collect(),
        _ => z,
    }
}

/// Result of [`strict_convexity_probe`].
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub samples: usize,
    /// No sampled pair of distinct, non-antipodal unit vectors has
    /// `||x + y|| >= 2 - eps_flat`. A resolution-bounded statement.
    pub strictly_convex: bool,
    pub witness: Option<(Vector, Vector)>,
    /// Largest sampled `||x + y||` and the pair attaining it.
    pub max_sum: f64,
    /// `2 - max_sum`.
    pub min_gap: f64,
    /// Fraction of samples classified exposed.
    pub exposed_fraction: f64,
}

/// Scans all sampled pairs on the unit sphere for `||x + y|| = 2`.
pub fn strict_convexity_probe(space: &Space, samples: usize, tol: &ToleranceConfig) -> Result<ProbeReport> {
    if samples < 16 {
        return Err(Error::invalid_at(format!("{samples} samples is below the minimum of 16"), "samples"));
    }
    let space = if space.is_exact() {
        space.with_backend(Backend::Float)?
    } else {
        space.clone()
    };
    let pts = space.sphere_sample_seeded(samples, tol.seed);
    let n = pts.len();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = pts[i].coords();
            let mut best: Option<(f64, usize, usize)> = None;
            for (j, y) in pts.iter().enumerate().skip(i + 1) {
                let y = y.coords();
                let scale = 1e-9 * x.iter().map(|v| v.abs()).fold(1.0, f64::max);
                let diff = x.iter().zip(y).all(|(a, b)| (a - b).abs() <= scale);
                let anti = x.iter().zip(y).all(|(a, b)| (a + b).abs() <= scale);
                if diff || anti {
                    continue;
                }
                let s: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                let v = space.norm_f64(&s);
                if best.is_none_or(|(bv, _, _)| v > bv) {
                    best = Some((v, i, j));
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(p), Some(q)) => Some(if q.0 > p.0 || (q.0 == p.0 && (q.1, q.2) < (p.1, p.2)) { q } else { p }),
                (p, None) => p,
                (None, q) => q,
            },
        );
    let (max_sum, i, j) = best.unwrap_or((0.0, 0, 0));
    let strictly_convex = max_sum < 2.0 - tol.eps_flat;
    let exposed = pts
        .par_iter()
        .map(|x| is_exposed(&space, x, tol).map(|c| usize::from(c.exposed)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<usize>();
    Ok(ProbeReport {
        samples: n,
        strictly_convex,
        witness: (!strictly_convex).then(|| (pts[i].clone(), pts[j].clone())),
        max_sum,
        min_gap: 2.0 - max_sum,
        exposed_fraction: exposed as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{ParabolaForm, PieceSpec, SpaceSpec};
    use crate::rational::int;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn stadium() -> Space {
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

    fn parabolic() -> Space {
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

    fn exact(p: f64, n: usize) -> Space {
        Space::build(SpaceSpec::lp(p, n), Backend::Exact).unwrap()
    }

    #[test]
    fn euclidean_cone_is_the_point() {
        let s = Space::lp(2.0, 2).unwrap();
        let c = supporting_functionals(&s, &Vector::from([1.0, 0.0]), &tol()).unwrap();
        assert_eq!(c, NormalCone::Single(Functional::new(vec![1.0, 0.0])));
    }

    #[test]
    fn square_corner_cone() {
        let c = supporting_functionals(&exact(f64::INFINITY, 2), &Vector::from([1.0, 1.0]), &tol()).unwrap();
        let g = c.generators();
        assert_eq!(g.len(), 2);
        assert!(g.contains(&Functional::from_rationals(vec![int(1), int(0)])));
        assert!(g.contains(&Functional::from_rationals(vec![int(0), int(1)])));
    }

    #[test]
    fn stadium_corner() {
        let s = stadium();
        let x = Vector::from([1.0, 1.0]);
        let c = supporting_functionals(&s, &x, &tol()).unwrap();
        assert!(c.is_single());
        let f = &c.generators()[0];
        assert!((f.coeffs()[0] - 1.0).abs() < 1e-12 && f.coeffs()[1].abs() < 1e-12);
        let pc = is_exposed(&s, &x, &tol()).unwrap();
        assert!(pc.extreme && !pc.exposed);
        assert_eq!(pc.obstruction.as_deref(), Some("support set is segment {1}×[-1,1]"));
    }

    #[test]
    fn stadium_segment_interior_is_not_extreme() {
        let pc = is_exposed(&stadium(), &Vector::from([1.0, 0.25]), &tol()).unwrap();
        assert!(!pc.extreme);
        let z = pc.flat_witness.unwrap();
        assert!(z.coords()[0].abs() < 1e-12 && (z.coords()[1].abs() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn parabolic_corner_is_exposed() {
        let s = parabolic();
        let x = Vector::from([1.0, 1.0]);
        let pc = is_exposed(&s, &x, &tol()).unwrap();
        assert!(pc.extreme && pc.exposed);
        let f = pc.exposing_functional.unwrap();
        assert!((f.apply(&x) - 1.0).abs() < 1e-12);
        assert!((s.dual_norm(&f).unwrap() - 1.0).abs() < 1e-9);
        // (x + y)/2 lies on the boundary of the cone and also exposes.
        assert!(s.gauge().unwrap().support_set([0.5, 0.5]).is_singleton_at([1.0, 1.0]));
    }

    #[test]
    fn cube_points() {
        let s = exact(f64::INFINITY, 3);
        let v = is_exposed(&s, &Vector::from([1.0, 1.0, 1.0]), &tol()).unwrap();
        assert!(v.extreme && v.exposed);
        let f = v.exposing_functional.unwrap();
        assert_eq!(f.0.exact_coords().unwrap(), vec![rational::ratio(1, 3); 3]);
        let e = is_extreme(&s, &Vector::from([1.0, 1.0, 0.0]), &tol()).unwrap();
        assert!(!e.extreme);
        assert_eq!(e.flat_witness.unwrap().exact_coords().unwrap(), vec![int(0), int(0), int(1)]);
        let ff = is_extreme(&Space::lp(f64::INFINITY, 3).unwrap(), &Vector::from([1.0, 1.0, 0.0]), &tol()).unwrap();
        assert_eq!(ff.flat_witness.unwrap().coords(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn off_sphere_is_rejected() {
        assert!(matches!(
            is_exposed(&Space::lp(2.0, 2).unwrap(), &Vector::from([2.0, 0.0]), &tol()),
            Err(Error::NotOnSphere { .. })
        ));
    }

    #[test]
    fn probe_examples() {
        let t = tol();
        let l2 = strict_convexity_probe(&Space::lp(2.0, 2).unwrap(), 1024, &t).unwrap();
        assert!(l2.strictly_convex && l2.witness.is_none() && l2.min_gap > 0.0);
        assert_eq!(l2.exposed_fraction, 1.0);
        let linf = strict_convexity_probe(&Space::lp(f64::INFINITY, 2).unwrap(), 1024, &t).unwrap();
        assert!(!linf.strictly_convex && linf.max_sum >= 2.0 - 1e-9);
        let st = strict_convexity_probe(&stadium(), 256, &t).unwrap();
        let (x, y) = st.witness.unwrap();
        assert!((x.coords()[0] - 1.0).abs() < 1e-9 && (y.coords()[0] - 1.0).abs() < 1e-9);
    }
}
