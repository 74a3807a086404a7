//! Normed-space backends: lp norms, polyhedral norms and planar piecewise
//! gauges, with norm and dual-norm evaluation and unit-sphere sampling.

mod gauge2d;
pub(crate) mod lp;
mod polytope;
mod sampling;
mod spec;

use num::Signed;
use serde::{Deserialize, Serialize};

pub use gauge2d::{Gauge2d, Location, SupportSet};
pub use polytope::Polytope;
pub use sampling::{directions, hemisphere};
pub use spec::{Coord, Exponent, ParabolaForm, PieceSpec, SpaceSpec};

pub(crate) use polytope::combinations;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::vector::{Functional, Vector};

/// Arithmetic used by a [`Space`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Float,
    Exact,
}

/// Whether a result is a certificate or a numerical estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Approximate,
}

/// Numerical tolerances and sampling resolutions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Absolute tolerance on norm values.
    pub eps_abs: f64,
    /// Flatness threshold for minimizer intervals and near-maximal sets.
    pub eps_flat: f64,
    /// Sphere samples in the plane.
    pub grid_2d: usize,
    /// Sphere samples in three and four dimensions.
    pub grid_3d: usize,
    /// Smallest probe scale at which strict growth is certified.
    pub tau_min: f64,
    /// Coefficient directions scanned for sets with two free coefficients.
    pub relative_dirs_2: usize,
    /// Coefficient directions scanned for sets with three free coefficients.
    pub relative_dirs_3: usize,
    /// Offset into the low-discrepancy sequences; 0 gives the canonical grid.
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_abs: 1e-9,
            eps_flat: 1e-7,
            grid_2d: 4096,
            grid_3d: 8192,
            tau_min: 1e-4,
            relative_dirs_2: 720,
            relative_dirs_3: 8192,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.eps_abs, self.eps_flat, self.tau_min]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        let counts = [self.grid_2d, self.grid_3d, self.relative_dirs_2, self.relative_dirs_3]
            .iter()
            .all(|&c| c >= 8);
        if !positive || !counts || self.tau_min >= 1.0 {
            return Err(Error::invalid(
                "tolerances must be positive, grids at least 8 and tau_min < 1",
            ));
        }
        Ok(())
    }

    /// Sphere grid size appropriate for a dimension.
    pub fn grid_for(&self, dim: usize) -> usize {
        if dim == 2 {
            self.grid_2d
        } else {
            self.grid_3d
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Geometry {
    /// lp with 1 < p < infinity.
    Smooth { p: f64 },
    /// Polytope ball; `closed_form` is Some(1) or Some(inf) for lp specs.
    Poly { poly: Polytope, closed_form: Option<f64> },
    Gauge(Gauge2d),
}

/// An immutable, validated normed space `(R^n, ||.||)`.
#[derive(Clone, Debug)]
pub struct Space {
    spec: SpaceSpec,
    dim: usize,
    backend: Backend,
    geometry: Geometry,
}

impl Space {
    /// Validates `spec` and builds the space.
    pub fn build(spec: SpaceSpec, backend: Backend) -> Result<Space> {
        let (dim, geometry) = match &spec {
            SpaceSpec::Lp { p, dim } => {
                let dim = *dim;
                if !(2..=4).contains(&dim) {
                    return Err(Error::invalid_at(format!("dimension {dim} outside 2..=4"), "dim"));
                }
                let p = p.value();
                if p.is_nan() || p < 1.0 {
                    return Err(Error::invalid_at(format!("p = {p} is not a norm exponent (need p >= 1)"), "p"));
                }
                let geometry = if p == 1.0 {
                    Geometry::Poly {
                        poly: Polytope::cross(dim),
                        closed_form: Some(1.0),
                    }
                } else if p.is_infinite() {
                    Geometry::Poly {
                        poly: Polytope::cube(dim),
                        closed_form: Some(f64::INFINITY),
                    }
                } else {
                    Geometry::Smooth { p }
                };
                (dim, geometry)
            }
            SpaceSpec::Polyhedral { vertices } => {
                let vs: Vec<Vec<Rational>> = vertices
                    .iter()
                    .map(|v| v.iter().map(|c| c.0.clone()).collect())
                    .collect();
                let poly = Polytope::from_vertices(vs)?;
                (
                    poly.dim(),
                    Geometry::Poly {
                        poly,
                        closed_form: None,
                    },
                )
            }
            SpaceSpec::Gauge2d { pieces } => (2, Geometry::Gauge(Gauge2d::new(pieces)?)),
        };
        if backend == Backend::Exact && !matches!(geometry, Geometry::Poly { .. }) {
            return Err(Error::ExactUnavailable);
        }
        Ok(Space {
            spec,
            dim,
            backend,
            geometry,
        })
    }

    pub fn lp(p: f64, dim: usize) -> Result<Space> {
        Space::build(SpaceSpec::lp(p, dim), Backend::Float)
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn is_exact(&self) -> bool {
        self.backend == Backend::Exact
    }

    /// The same space on the other backend (exact only where available).
    pub fn with_backend(&self, backend: Backend) -> Result<Space> {
        if backend == Backend::Exact && self.polytope().is_none() {
            return Err(Error::ExactUnavailable);
        }
        Ok(Space {
            backend,
            ..self.clone()
        })
    }

    pub fn provenance(&self) -> Provenance {
        if self.is_exact() {
            Provenance::Exact
        } else {
            Provenance::Approximate
        }
    }

    pub fn polytope(&self) -> Option<&Polytope> {
        match &self.geometry {
            Geometry::Poly { poly, .. } => Some(poly),
            _ => None,
        }
    }

    pub fn gauge(&self) -> Option<&Gauge2d> {
        match &self.geometry {
            Geometry::Gauge(g) => Some(g),
            _ => None,
        }
    }

    /// The exponent for smooth lp spaces (1 < p < infinity).
    pub fn smooth_exponent(&self) -> Option<f64> {
        match self.geometry {
            Geometry::Smooth { p } => Some(p),
            _ => None,
        }
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: n,
            });
        }
        Ok(())
    }

    pub fn norm(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x.dim())?;
        if self.is_exact() {
            return Ok(rational::to_f64(&self.norm_exact(x)?));
        }
        Ok(self.norm_f64(x.coords()))
    }

    /// Exact norm; available for polytope geometries on either backend.
    pub fn norm_exact(&self, x: &Vector) -> Result<Rational> {
        self.check_dim(x.dim())?;
        let poly = self.polytope().ok_or(Error::ExactUnavailable)?;
        let q = x.exact_coords().ok_or(Error::NotRational)?;
        Ok(poly.norm_exact(&q))
    }

    /// Float norm without dimension checks; `x.len()` must equal `dim`.
    pub fn norm_f64(&self, x: &[f64]) -> f64 {
        match &self.geometry {
            Geometry::Smooth { p } => lp::norm(x, *p),
            Geometry::Poly { closed_form: Some(p), .. } if *p == 1.0 => x.iter().map(|v| v.abs()).sum(),
            Geometry::Poly { closed_form: Some(_), .. } => x.iter().fold(0.0, |m, v| m.max(v.abs())),
            Geometry::Poly { poly, .. } => poly.norm_f64(x),
            Geometry::Gauge(g) => g.norm(x),
        }
    }

    /// `sup { f(x) : ||x|| <= 1 }`.
    pub fn dual_norm(&self, f: &Functional) -> Result<f64> {
        self.check_dim(f.dim())?;
        if self.is_exact() {
            return Ok(rational::to_f64(&self.dual_norm_exact(f)?));
        }
        let c = f.coeffs();
        Ok(match &self.geometry {
            Geometry::Smooth { p } => lp::norm(c, lp::conjugate(*p)),
            Geometry::Poly { closed_form: Some(p), .. } if *p == 1.0 => c.iter().fold(0.0, |m, v| m.max(v.abs())),
            Geometry::Poly { closed_form: Some(_), .. } => c.iter().map(|v| v.abs()).sum(),
            Geometry::Poly { poly, .. } => poly.dual_norm_f64(c),
            Geometry::Gauge(g) => g.support_value([c[0], c[1]]).max(g.support_value([-c[0], -c[1]])),
        })
    }

    pub fn dual_norm_exact(&self, f: &Functional) -> Result<Rational> {
        self.check_dim(f.dim())?;
        let poly = self.polytope().ok_or(Error::ExactUnavailable)?;
        let q = f.0.exact_coords().ok_or(Error::NotRational)?;
        Ok(poly.dual_norm_exact(&q).abs())
    }

    /// Provenance of [`Space::dual_norm`]: exact for polytopes on the exact
    /// backend, approximate otherwise.
    pub fn dual_norm_provenance(&self) -> Provenance {
        self.provenance()
    }

    /// Deterministic points of the unit sphere (see [`Space::sphere_sample_seeded`]).
    pub fn sphere_sample(&self, count: usize) -> Vec<Vector> {
        self.sphere_sample_seeded(count, 0)
    }

    /// `count` unit vectors: in the plane a uniform angle grid, in three and
    /// four dimensions low-discrepancy directions, each scaled onto the
    /// unit sphere of this norm. The set is closed under negation (for even
    /// `count`). `seed` shifts the underlying sequence.
    pub fn sphere_sample_seeded(&self, count: usize, seed: u64) -> Vec<Vector> {
        directions(self.dim, count, seed)
            .into_iter()
            .map(|u| {
                let r = self.norm_f64(&u);
                Vector::new(u.iter().map(|c| c / r).collect())
            })
            .collect()
    }

    /// Rejects points whose norm differs from 1 by more than `eps_abs`
    /// (exactly 1 on the exact backend).
    pub(crate) fn require_unit(&self, x: &Vector, eps_abs: f64) -> Result<f64> {
        self.check_dim(x.dim())?;
        if !x.is_finite() {
            return Err(Error::NotOnSphere { norm: f64::NAN });
        }
        if self.is_exact() {
            let r = self.norm_exact(x)?;
            if r != rational::one() {
                return Err(Error::NotOnSphere {
                    norm: rational::to_f64(&r),
                });
            }
            return Ok(1.0);
        }
        let r = self.norm_f64(x.coords());
        if (r - 1.0).abs() > eps_abs {
            return Err(Error::NotOnSphere { norm: r });
        }
        Ok(r)
    }
}

/// Builds a space from its specification (see [`Space::build`]).
pub fn build_space(spec: SpaceSpec, backend: Backend) -> Result<Space> {
    Space::build(spec, backend)
}
