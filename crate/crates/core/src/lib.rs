//! Birkhoff-James orthogonality and the geometry of unit balls in
//! low-dimensional real normed spaces.
//!
//! * [`norms`] builds spaces (lp, polyhedral, planar piecewise gauges) and
//!   evaluates norms and dual norms.
//! * [`orthogonality`] decides `x ⊥_B y`, strong orthogonality and strong
//!   orthogonality of finite sets.
//! * [`pointgeom`] classifies unit-sphere points as extreme or exposed.
//! * [`constructions`] turns an exposed point into a strongly orthonormal
//!   basis, the basis into a norm-attaining operator, and the operator back
//!   into an exposing functional.
//! * [`cli`] is the command-line front end behind the `nsg` binary.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod norms;
pub mod orthogonality;
pub mod pointgeom;
pub mod rational;
pub mod search;
pub mod vector;

pub use error::{Error, Result};
pub use norms::{build_space, Backend, Provenance, Space, SpaceSpec, ToleranceConfig};
pub use vector::{Functional, Vector};
