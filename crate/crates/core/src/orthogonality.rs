//! Birkhoff-James orthogonality predicates.
//!
//! Everything reduces to the convex function `f(λ) = ||x + λ y||`:
//! `x ⊥_B y` iff 0 minimizes `f`, and `x ⊥_SB y` iff 0 is the *unique*
//! minimizer. All minimizers lie in `|λ| <= 2||x||/||y||`, since outside
//! that bracket `f(λ) >= |λ| ||y|| - ||x|| > ||x||`.
//!
//! On the exact backend `f` is a maximum of affine functions and both
//! predicates are decided from the one-sided slopes at 0. On the float
//! backend the minimum is found by golden-section search and strict growth
//! is certified at geometrically spaced probe scales down to `tau_min`;
//! convexity propagates strictness outward from the smallest certified
//! scale.

use num::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::norms::{hemisphere, Polytope, Provenance, Space, ToleranceConfig};
use crate::rational::{self, Rational};
use crate::search;
use crate::vector::Vector;

/// The one-dimensional profile `λ ↦ ||x + λ y||`.
#[derive(Clone, Debug)]
pub struct DirectionalProfile {
    pub min_value: f64,
    /// Maximal interval on which `f <= min_value + eps_flat` (exactly the
    /// minimizer set on the exact backend).
    pub minimizer_interval: (f64, f64),
    pub bracket: (f64, f64),
    pub evaluations: usize,
    pub backend: Provenance,
    pub exact: Option<ExactProfile>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactProfile {
    pub min_value: Rational,
    pub lo: Rational,
    pub hi: Rational,
}

/// Symbolic evidence behind an exact verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCertificate {
    /// Dimension of the set of minimizing coefficient vectors near 0
    /// (0 means the reference vector is the unique minimizer).
    pub minimizer_dim: usize,
    /// Smallest one-sided directional derivative at 0 over the tested
    /// directions when the predicate holds; the (non-positive) value along
    /// the witness direction when it fails.
    pub margin: Rational,
    pub witness: Option<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct OrthVerdict {
    pub decision: bool,
    /// Float backend: smallest observed excess `||x + λ y|| - ||x||` at the
    /// probe scales (negative when orthogonality fails outright). Exact
    /// backend: the certificate margin as a float.
    pub margin: f64,
    pub backend: Provenance,
    /// Coefficients falsifying the predicate (`[λ]` for a pair).
    pub witness: Option<Vec<f64>>,
    /// For set predicates: the first index relative to which the set fails.
    pub failing_index: Option<usize>,
    /// The negative verdict rests only on the smallest probe scale.
    pub borderline: bool,
    pub certificate: Option<ExactCertificate>,
}

impl OrthVerdict {
    fn vacuous(decision: bool, backend: Provenance) -> Self {
        OrthVerdict {
            decision,
            margin: 0.0,
            backend,
            witness: if decision { None } else { Some(vec![0.0]) },
            failing_index: None,
            borderline: false,
            certificate: None,
        }
    }
}

/// Relative float noise allowed when comparing norm values.
const NOISE: f64 = 64.0 * f64::EPSILON;

pub fn directional_min(space: &Space, x: &Vector, y: &Vector, tol: &ToleranceConfig) -> Result<DirectionalProfile> {
    space.check_dim(x.dim())?;
    space.check_dim(y.dim())?;
    if y.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if space.is_exact() {
        let poly = space.polytope().ok_or(Error::ExactUnavailable)?;
        let (xq, yq) = exact_pair(x, y)?;
        let lines = lines_of(poly, &xq, &yq);
        let (m, lo, hi, count) = pl_minimize(&lines);
        let nx = poly.norm_exact(&xq);
        let ny = poly.norm_exact(&yq);
        let bound = rational::int(2) * nx / ny;
        let f = rational::to_f64;
        return Ok(DirectionalProfile {
            min_value: f(&m),
            minimizer_interval: (f(&lo), f(&hi)),
            bracket: (-f(&bound), f(&bound)),
            evaluations: count,
            backend: Provenance::Exact,
            exact: Some(ExactProfile { min_value: m, lo, hi }),
        });
    }
    let p = FloatPair::new(space, x, y);
    let min = p.minimize();
    let level = min.value + tol.eps_flat;
    let below = |l: f64| p.f(l) <= level;
    let lo = if below(-p.bound) {
        -p.bound
    } else {
        search::bisect_boundary(below, min.arg, -p.bound, 80)
    };
    let hi = if below(p.bound) {
        p.bound
    } else {
        search::bisect_boundary(below, min.arg, p.bound, 80)
    };
    Ok(DirectionalProfile {
        min_value: min.value,
        minimizer_interval: (lo, hi),
        bracket: (-p.bound, p.bound),
        evaluations: min.evaluations + 162,
        backend: Provenance::Approximate,
        exact: None,
    })
}

/// `x ⊥_B y`: `||x|| <= ||x + λ y||` for every real `λ`.
pub fn is_bj_orthogonal(space: &Space, x: &Vector, y: &Vector, tol: &ToleranceConfig) -> Result<OrthVerdict> {
    let pair = pair_verdicts(space, x, y, tol)?;
    Ok(pair.bj)
}

/// `x ⊥_SB y`: `||x|| < ||x + λ y||` for every real `λ != 0`.
pub fn is_sb_orthogonal(space: &Space, x: &Vector, y: &Vector, tol: &ToleranceConfig) -> Result<OrthVerdict> {
    let pair = pair_verdicts(space, x, y, tol)?;
    Ok(pair.sb)
}

/// Both verdicts for one pair, sharing the underlying search.
pub struct PairVerdicts {
    pub bj: OrthVerdict,
    pub sb: OrthVerdict,
}

pub fn pair_verdicts(space: &Space, x: &Vector, y: &Vector, tol: &ToleranceConfig) -> Result<PairVerdicts> {
    space.check_dim(x.dim())?;
    space.check_dim(y.dim())?;
    if x.is_zero() {
        return Err(Error::ZeroLeft);
    }
    if y.is_zero() {
        let prov = space.provenance();
        return Ok(PairVerdicts {
            bj: OrthVerdict::vacuous(true, prov),
            sb: OrthVerdict::vacuous(false, prov),
        });
    }
    if space.is_exact() {
        return exact_pair_verdicts(space, x, y);
    }
    let p = FloatPair::new(space, x, y);
    let check = p.check(tol);
    Ok(check.into_verdicts())
}

/// Whether `||x_{i0}|| < ||x_{i0} + sum_{j != i0} λ_j x_j||` for every
/// nonzero coefficient vector.
pub fn is_strongly_orthogonal_relative(
    space: &Space,
    set: &[Vector],
    i0: usize,
    tol: &ToleranceConfig,
) -> Result<OrthVerdict> {
    if set.len() > space.dim() {
        return Err(Error::SetTooLarge {
            size: set.len(),
            dim: space.dim(),
        });
    }
    if i0 >= set.len() {
        return Err(Error::IndexOutOfRange {
            index: i0,
            len: set.len(),
        });
    }
    for v in set {
        space.check_dim(v.dim())?;
    }
    let x0 = &set[i0];
    if x0.is_zero() {
        return Err(Error::ZeroLeft);
    }
    let others: Vec<&Vector> = set.iter().enumerate().filter(|&(j, _)| j != i0).map(|(_, v)| v).collect();
    if others.is_empty() {
        return Ok(OrthVerdict::vacuous(true, space.provenance()));
    }
    if space.is_exact() {
        return exact_relative(space, x0, &others);
    }
    let rows: Vec<Vec<f64>> = others.iter().map(|v| v.coords().to_vec()).collect();
    if let Some(d) = linalg::nullspace(&rows_t(&rows), others.len()).first() {
        // Dependent: a nonzero combination of the others vanishes.
        return Ok(OrthVerdict {
            decision: false,
            margin: 0.0,
            backend: Provenance::Approximate,
            witness: Some(d.clone()),
            failing_index: None,
            borderline: false,
            certificate: None,
        });
    }
    if others.len() == 1 {
        return Ok(FloatPair::new(space, x0, others[0]).check(tol).into_verdicts().sb);
    }
    Ok(float_relative(space, x0, &others, tol))
}

/// Strongly orthogonal relative to every member of the set.
pub fn is_strongly_orthogonal_set(space: &Space, set: &[Vector], tol: &ToleranceConfig) -> Result<OrthVerdict> {
    let mut margin = f64::INFINITY;
    let mut first_ok = None;
    for i in 0..set.len() {
        let v = is_strongly_orthogonal_relative(space, set, i, tol)?;
        if !v.decision {
            return Ok(OrthVerdict {
                failing_index: Some(i),
                ..v
            });
        }
        margin = margin.min(v.margin);
        first_ok.get_or_insert(v);
    }
    Ok(match first_ok {
        Some(v) => OrthVerdict { margin, ..v },
        None => OrthVerdict::vacuous(true, space.provenance()),
    })
}

// ---------------------------------------------------------------------------
// float backend

fn rows_t(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    linalg::transpose(&rows.to_vec())
}

struct FloatPair<'a> {
    space: &'a Space,
    x: Vec<f64>,
    y: Vec<f64>,
    nx: f64,
    ny: f64,
    bound: f64,
}

struct PairCheck {
    bj: bool,
    bj_margin: f64,
    argmin: f64,
    sb: bool,
    sb_margin: f64,
    flat_witness: Option<f64>,
    borderline: bool,
}

impl PairCheck {
    /// Score used to rank directions: most negative means most violating.
    fn score(&self) -> f64 {
        if self.bj {
            self.sb_margin
        } else {
            self.bj_margin
        }
    }

    fn witness(&self) -> Option<f64> {
        if !self.bj {
            Some(self.argmin)
        } else if !self.sb {
            self.flat_witness
        } else {
            None
        }
    }

    fn into_verdicts(self) -> PairVerdicts {
        let bj = OrthVerdict {
            decision: self.bj,
            margin: self.bj_margin,
            backend: Provenance::Approximate,
            witness: (!self.bj).then(|| vec![self.argmin]),
            failing_index: None,
            borderline: false,
            certificate: None,
        };
        let sb = OrthVerdict {
            decision: self.sb,
            margin: if self.bj { self.sb_margin } else { self.bj_margin },
            backend: Provenance::Approximate,
            witness: self.witness().map(|l| vec![l]),
            failing_index: None,
            borderline: self.borderline,
            certificate: None,
        };
        PairVerdicts { bj, sb }
    }
}

impl<'a> FloatPair<'a> {
    fn new(space: &'a Space, x: &Vector, y: &Vector) -> Self {
        Self::from_slices(space, x.coords().to_vec(), y.coords().to_vec())
    }

    fn from_slices(space: &'a Space, x: Vec<f64>, y: Vec<f64>) -> Self {
        let nx = space.norm_f64(&x);
        let ny = space.norm_f64(&y);
        FloatPair {
            space,
            bound: 2.0 * nx / ny,
            x,
            y,
            nx,
            ny,
        }
    }

    fn f(&self, l: f64) -> f64 {
        if l == 0.0 {
            return self.nx;
        }
        let z: Vec<f64> = self.x.iter().zip(&self.y).map(|(a, b)| a + l * b).collect();
        self.space.norm_f64(&z)
    }

    fn minimize(&self) -> search::Minimum {
        let mut m = search::golden_minimize(|l| self.f(l), -self.bound, self.bound, 1e-13 * self.bound);
        if self.nx <= m.value {
            m.arg = 0.0;
            m.value = self.nx;
        }
        m
    }

    fn check(&self, tol: &ToleranceConfig) -> PairCheck {
        let min = self.minimize();
        let bj_margin = min.value - self.nx;
        let bj = bj_margin >= -tol.eps_abs;

        let unit = self.nx / self.ny;
        let mut sb_margin = f64::INFINITY;
        let mut flat_witness = None;
        let mut failed_above_smallest = false;
        let mut tau = tol.tau_min;
        let mut k = 0;
        while tau <= 2.0 {
            let l = tau * unit;
            let floor = NOISE * (self.nx + l * self.ny);
            for side in [1.0, -1.0] {
                let excess = self.f(side * l) - self.nx;
                sb_margin = sb_margin.min(excess);
                if excess <= floor {
                    // Keep the largest flat probe as the witness.
                    flat_witness = Some(side * l);
                    if k > 0 {
                        failed_above_smallest = true;
                    }
                }
            }
            tau *= 2.0;
            k += 1;
        }
        let sb = bj && flat_witness.is_none();
        PairCheck {
            bj,
            bj_margin,
            argmin: min.arg,
            sb,
            sb_margin,
            flat_witness,
            borderline: bj && !sb && !failed_above_smallest,
        }
    }
}

fn float_relative(space: &Space, x0: &Vector, others: &[&Vector], tol: &ToleranceConfig) -> OrthVerdict {
    let k = others.len();
    let count = if k == 2 { tol.relative_dirs_2 } else { tol.relative_dirs_3 };
    let n = space.dim();
    let x = x0.coords().to_vec();
    let mut dirs = hemisphere(k, count);
    if let Some(poly) = space.polytope() {
        dirs.extend(facet_directions(poly, &x, others));
    }
    let nx = space.norm_f64(&x);
    let scale: f64 = others.iter().map(|v| space.norm_f64(v.coords())).sum();

    let combine = |u: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| others.iter().zip(u).map(|(v, c)| c * v.coords()[i]).sum())
            .collect()
    };

    let results: Vec<(f64, Option<f64>, bool, bool)> = dirs
        .par_iter()
        .map(|u| {
            let y = combine(u);
            if space.norm_f64(&y) <= 1e-12 * scale {
                // Dependent set: the combination vanishes.
                return (-nx, Some(1.0), false, false);
            }
            let c = FloatPair::from_slices(space, x.clone(), y).check(tol);
            (c.score(), c.witness(), c.sb, c.borderline)
        })
        .collect();

    let decision = results.iter().all(|r| r.2);
    let (worst, _) = results
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bs), (i, r)| if r.0 < bs { (i, r.0) } else { (bi, bs) });
    let margin = results[worst].0;
    let witness = (!decision).then(|| {
        let l = results[worst].1.unwrap_or(0.0);
        let start: Vec<f64> = dirs[worst].iter().map(|c| c * l).collect();
        if results[worst].0 < 0.0 {
            polish(space, &x, others, start)
        } else {
            start
        }
    });
    let borderline = !decision && results.iter().filter(|r| !r.2).all(|r| r.3);
    OrthVerdict {
        decision,
        margin,
        backend: Provenance::Approximate,
        witness,
        failing_index: None,
        borderline,
        certificate: None,
    }
}

/// Coefficient directions along which a polyhedral norm can stay flat:
/// those orthogonal to `k - 1` of the active facet gradients. A grid misses
/// them; probing them directly finds flats to rounding accuracy.
fn facet_directions(poly: &Polytope, x: &[f64], others: &[&Vector]) -> Vec<Vec<f64>> {
    let scale = x.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(1.0);
    let grads: Vec<Vec<f64>> = poly
        .active_facets_f64(x, 1e-12 * scale)
        .iter()
        .map(|a| others.iter().map(|v| a.iter().zip(v.coords()).map(|(p, q)| p * q).sum()).collect())
        .collect();
    let unit = |d: Vec<f64>| {
        let r = d.iter().map(|c| c * c).sum::<f64>().sqrt();
        (r > 1e-12).then(|| d.into_iter().map(|c| c / r).collect::<Vec<f64>>())
    };
    let mut out = Vec::new();
    match others.len() {
        2 => {
            for g in &grads {
                out.extend(unit(vec![-g[1], g[0]]));
            }
        }
        3 => {
            for (i, g) in grads.iter().enumerate() {
                for h in &grads[i + 1..] {
                    out.extend(unit(vec![
                        g[1] * h[2] - g[2] * h[1],
                        g[2] * h[0] - g[0] * h[2],
                        g[0] * h[1] - g[1] * h[0],
                    ]));
                }
            }
        }
        _ => {}
    }
    out
}

/// Coordinate-wise golden-section descent on `λ ↦ ||x0 + sum λ_j x_j||`,
/// sharpening a violating coefficient vector.
fn polish(space: &Space, x0: &[f64], others: &[&Vector], mut lam: Vec<f64>) -> Vec<f64> {
    let n = x0.len();
    let eval = |l: &[f64]| {
        let z: Vec<f64> = (0..n)
            .map(|i| x0[i] + others.iter().zip(l).map(|(v, c)| c * v.coords()[i]).sum::<f64>())
            .collect();
        space.norm_f64(&z)
    };
    let start = eval(&lam);
    let nx = space.norm_f64(x0);
    for _ in 0..6 {
        for j in 0..lam.len() {
            let w = 2.0 * nx / space.norm_f64(others[j].coords()) + lam[j].abs();
            let m = search::golden_minimize(
                |t| {
                    let mut trial = lam.clone();
                    trial[j] = t;
                    eval(&trial)
                },
                lam[j] - w,
                lam[j] + w,
                1e-13 * w,
            );
            let mut cand = lam.clone();
            cand[j] = m.arg;
            if eval(&cand) < eval(&lam) {
                lam = cand;
            }
        }
    }
    debug_assert!(eval(&lam) <= start);
    lam
}

// ---------------------------------------------------------------------------
// exact backend

fn exact_pair(x: &Vector, y: &Vector) -> Result<(Vec<Rational>, Vec<Rational>)> {
    Ok((
        x.exact_coords().ok_or(Error::NotRational)?,
        y.exact_coords().ok_or(Error::NotRational)?,
    ))
}

/// Affine pieces `±(a.x + λ a.y)` of `λ ↦ ||x + λ y||`.
fn lines_of(poly: &Polytope, x: &[Rational], y: &[Rational]) -> Vec<(Rational, Rational)> {
    poly.facets()
        .iter()
        .flat_map(|a| {
            let c = rational::dot(a, x);
            let d = rational::dot(a, y);
            [(c.clone(), d.clone()), (-c, -d)]
        })
        .collect()
}

fn eval_lines(lines: &[(Rational, Rational)], l: &Rational) -> Rational {
    lines
        .iter()
        .map(|(c, d)| c + l * d)
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Minimum of a maximum of affine functions with slopes of both signs,
/// and the interval of minimizers. Returns `(min, lo, hi, evaluations)`.
fn pl_minimize(lines: &[(Rational, Rational)]) -> (Rational, Rational, Rational, usize) {
    let mut kinks: Vec<Rational> = Vec::new();
    for (i, (ci, di)) in lines.iter().enumerate() {
        for (cj, dj) in &lines[i + 1..] {
            if di != dj {
                kinks.push((cj - ci) / (di - dj));
            }
        }
    }
    kinks.sort();
    kinks.dedup();
    let vals: Vec<Rational> = kinks.iter().map(|l| eval_lines(lines, l)).collect();
    let m = vals.iter().min().cloned().unwrap_or_else(Rational::zero);
    let at_min: Vec<&Rational> = kinks.iter().zip(&vals).filter(|(_, v)| **v == m).map(|(l, _)| l).collect();
    let lo = at_min.first().map(|l| (*l).clone()).unwrap_or_else(Rational::zero);
    let hi = at_min.last().map(|l| (*l).clone()).unwrap_or_else(Rational::zero);
    (m, lo, hi, kinks.len())
}

fn exact_pair_verdicts(space: &Space, x: &Vector, y: &Vector) -> Result<PairVerdicts> {
    let poly = space.polytope().ok_or(Error::ExactUnavailable)?;
    let (xq, yq) = exact_pair(x, y)?;
    let r = poly.norm_exact(&xq);
    let slopes: Vec<Rational> = poly
        .active_facets_exact(&xq)
        .iter()
        .map(|a| rational::dot(a, &yq))
        .collect();
    let right = slopes.iter().max().cloned().unwrap_or_else(Rational::zero);
    let left = slopes.iter().min().cloned().unwrap_or_else(Rational::zero);
    let bj = !right.is_negative() && !left.is_positive();
    let sb = right.is_positive() && left.is_negative();

    let lines = lines_of(poly, &xq, &yq);
    let (m, lo, hi, _) = pl_minimize(&lines);
    let bj_margin = &m - &r;
    let bj_witness = (!bj).then(|| vec![if lo.is_positive() { lo.clone() } else { hi.clone() }]);
    let sb_witness = if !bj {
        bj_witness.clone()
    } else if !sb {
        Some(vec![if hi.is_positive() { hi.clone() } else { lo.clone() }])
    } else {
        None
    };
    let sb_margin = if bj { right.clone().min(-left.clone()) } else { bj_margin.clone() };
    let to_f = |w: &Option<Vec<Rational>>| w.as_ref().map(|v| v.iter().map(rational::to_f64).collect());
    let dim = |ok: bool| usize::from(!ok);
    Ok(PairVerdicts {
        bj: OrthVerdict {
            decision: bj,
            margin: rational::to_f64(&bj_margin),
            backend: Provenance::Exact,
            witness: to_f(&bj_witness),
            failing_index: None,
            borderline: false,
            certificate: Some(ExactCertificate {
                minimizer_dim: dim(lo == hi),
                margin: bj_margin,
                witness: bj_witness,
            }),
        },
        sb: OrthVerdict {
            decision: sb,
            margin: rational::to_f64(&sb_margin),
            backend: Provenance::Exact,
            witness: to_f(&sb_witness),
            failing_index: None,
            borderline: false,
            certificate: Some(ExactCertificate {
                minimizer_dim: dim(sb),
                margin: sb_margin,
                witness: sb_witness,
            }),
        },
    })
}

/// Exact relative predicate. With `g_i` the coefficient-space gradients
/// of the facets active at `x0`, the sublevel set
/// `{λ : ||x0 + X λ|| <= ||x0||}` coincides near 0 with the cone
/// `T = {d : g_i . d <= 0 for all i}`; the predicate holds iff `T = {0}`.
fn exact_relative(space: &Space, x0: &Vector, others: &[&Vector]) -> Result<OrthVerdict> {
    let poly = space.polytope().ok_or(Error::ExactUnavailable)?;
    let xq = x0.exact_coords().ok_or(Error::NotRational)?;
    let oq: Vec<Vec<Rational>> = others
        .iter()
        .map(|v| v.exact_coords().ok_or(Error::NotRational))
        .collect::<Result<_>>()?;
    let k = oq.len();
    let r = poly.norm_exact(&xq);
    let grads: Vec<Vec<Rational>> = poly
        .active_facets_exact(&xq)
        .iter()
        .map(|a| oq.iter().map(|v| rational::dot(a, v)).collect())
        .collect();

    let in_cone = |d: &[Rational]| grads.iter().all(|g| !rational::dot(g, d).is_positive());
    let mut ray: Option<Vec<Rational>> = None;
    let mut minimizer_dim = 0;
    let lineality = linalg::nullspace(&grads, k);
    if let Some(d) = lineality.first() {
        ray = Some(d.clone());
        minimizer_dim = lineality.len();
    } else {
        'search: for rows in crate::norms::combinations(grads.len(), k - 1) {
            let sub: Vec<Vec<Rational>> = rows.iter().map(|&i| grads[i].clone()).collect();
            let ns = linalg::nullspace(&sub, k);
            if ns.len() != 1 {
                continue;
            }
            for d in [ns[0].clone(), ns[0].iter().map(|c| -c).collect::<Vec<_>>()] {
                if in_cone(&d) {
                    ray = Some(d);
                    minimizer_dim = 1;
                    break 'search;
                }
            }
        }
    }

    let directional = |d: &[Rational]| grads.iter().map(|g| rational::dot(g, d)).max().unwrap_or_else(Rational::zero);
    match ray {
        None => {
            // Positive: every coordinate direction strictly increases the norm.
            let mut margin: Option<Rational> = None;
            for j in 0..k {
                for s in [1, -1] {
                    let mut e = vec![Rational::zero(); k];
                    e[j] = rational::int(s);
                    let v = directional(&e);
                    margin = Some(match margin {
                        Some(m) if m <= v => m,
                        _ => v,
                    });
                }
            }
            let margin = margin.unwrap_or_else(Rational::zero);
            Ok(OrthVerdict {
                decision: true,
                margin: rational::to_f64(&margin),
                backend: Provenance::Exact,
                witness: None,
                failing_index: None,
                borderline: false,
                certificate: Some(ExactCertificate {
                    minimizer_dim: 0,
                    margin,
                    witness: None,
                }),
            })
        }
        Some(d) => {
            // Step along d until an inactive facet becomes binding.
            let xd: Vec<Rational> = (0..xq.len())
                .map(|i| oq.iter().zip(&d).fold(Rational::zero(), |acc, (v, c)| acc + &v[i] * c))
                .collect();
            let mut t: Option<Rational> = None;
            for a in poly.facets() {
                let c = rational::dot(a, &xq);
                let g = rational::dot(a, &xd);
                for (cs, gs) in [(c.clone(), g.clone()), (-c.clone(), -g.clone())] {
                    if gs.is_positive() {
                        let bound = (&r - &cs) / &gs;
                        if bound.is_positive() && t.as_ref().is_none_or(|cur| bound < *cur) {
                            t = Some(bound);
                        }
                    }
                }
            }
            let t = t.unwrap_or_else(rational::one);
            let witness: Vec<Rational> = d.iter().map(|c| c * &t).collect();
            let margin = directional(&d);
            Ok(OrthVerdict {
                decision: false,
                margin: rational::to_f64(&margin),
                backend: Provenance::Exact,
                witness: Some(witness.iter().map(rational::to_f64).collect()),
                failing_index: None,
                borderline: false,
                certificate: Some(ExactCertificate {
                    minimizer_dim,
                    margin,
                    witness: Some(witness),
                }),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{Backend, SpaceSpec};
    use crate::rational::{int, ratio};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn v(c: &[f64]) -> Vector {
        Vector::from(c)
    }

    fn exact(p: f64, n: usize) -> Space {
        Space::build(SpaceSpec::lp(p, n), Backend::Exact).unwrap()
    }

    #[test]
    fn linf_profile_is_flat_on_unit_interval() {
        let s = Space::lp(f64::INFINITY, 2).unwrap();
        let p = directional_min(&s, &v(&[1.0, 0.0]), &v(&[0.0, 1.0]), &tol()).unwrap();
        assert_eq!(p.min_value, 1.0);
        assert!((p.minimizer_interval.0 + 1.0).abs() < 1e-6);
        assert!((p.minimizer_interval.1 - 1.0).abs() < 1e-6);
        assert_eq!(p.bracket, (-2.0, 2.0));
    }

    #[test]
    fn l2_profile_is_degenerate_at_zero() {
        let s = Space::lp(2.0, 2).unwrap();
        let p = directional_min(&s, &v(&[1.0, 0.0]), &v(&[0.0, 1.0]), &tol()).unwrap();
        assert!((p.min_value - 1.0).abs() < 1e-15);
        // f <= 1 + eps_flat only for |λ| <= sqrt(2 eps_flat).
        let w = (2.0 * tol().eps_flat).sqrt();
        assert!(p.minimizer_interval.0 >= -w * 1.01 && p.minimizer_interval.1 <= w * 1.01);
    }

    #[test]
    fn l1_exact_profile_flat_on_minus_one_to_zero() {
        // |1 + λ| + |λ| is 1 exactly on [-1, 0].
        let s = exact(1.0, 2);
        let p = directional_min(&s, &v(&[1.0, 0.0]), &v(&[1.0, 1.0]), &tol()).unwrap();
        let e = p.exact.unwrap();
        assert_eq!(e.min_value, int(1));
        assert_eq!((e.lo, e.hi), (int(-1), int(0)));
    }

    #[test]
    fn zero_direction_is_an_error() {
        let s = Space::lp(2.0, 2).unwrap();
        assert!(matches!(
            directional_min(&s, &v(&[1.0, 0.0]), &v(&[0.0, 0.0]), &tol()),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn linf_bj_but_not_sb() {
        for s in [Space::lp(f64::INFINITY, 2).unwrap(), exact(f64::INFINITY, 2)] {
            let (x, y) = (v(&[1.0, 0.0]), v(&[0.0, 1.0]));
            assert!(is_bj_orthogonal(&s, &x, &y, &tol()).unwrap().decision);
            let sb = is_sb_orthogonal(&s, &x, &y, &tol()).unwrap();
            assert!(!sb.decision);
            assert!(!sb.borderline);
            let w = sb.witness.unwrap()[0];
            assert!(w != 0.0 && w.abs() <= 1.0);
        }
    }

    #[test]
    fn l2_non_orthogonal_witness() {
        let s = Space::lp(2.0, 2).unwrap();
        let bj = is_bj_orthogonal(&s, &v(&[1.0, 0.0]), &v(&[1.0, 1.0]), &tol()).unwrap();
        assert!(!bj.decision);
        // ||(1 + λ, λ)|| is minimized at λ = -1/2.
        assert!((bj.witness.unwrap()[0] + 0.5).abs() < 1e-6);
    }

    #[test]
    fn zero_right_argument() {
        let s = Space::lp(3.0, 2).unwrap();
        let (x, z) = (v(&[1.0, 0.0]), v(&[0.0, 0.0]));
        assert!(is_bj_orthogonal(&s, &x, &z, &tol()).unwrap().decision);
        assert!(!is_sb_orthogonal(&s, &x, &z, &tol()).unwrap().decision);
        assert!(matches!(is_bj_orthogonal(&s, &z, &x, &tol()), Err(Error::ZeroLeft)));
    }

    #[test]
    fn l1_coordinate_vectors_are_strongly_orthogonal() {
        for s in [Space::lp(1.0, 2).unwrap(), exact(1.0, 2)] {
            let sb = is_sb_orthogonal(&s, &v(&[1.0, 0.0]), &v(&[0.0, 1.0]), &tol()).unwrap();
            assert!(sb.decision, "{sb:?}");
            assert!(sb.margin > 0.0);
        }
        let cert = is_sb_orthogonal(&exact(1.0, 2), &v(&[1.0, 0.0]), &v(&[0.0, 1.0]), &tol())
            .unwrap()
            .certificate
            .unwrap();
        assert_eq!(cert.minimizer_dim, 0);
        assert_eq!(cert.margin, int(1));
    }

    #[test]
    fn relative_set_in_l2() {
        let s = Space::lp(2.0, 3).unwrap();
        let set = vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[0.0, 1.0, 1.0])];
        assert!(is_strongly_orthogonal_relative(&s, &set, 0, &tol()).unwrap().decision);
        let bad = is_strongly_orthogonal_relative(&s, &set, 2, &tol()).unwrap();
        assert!(!bad.decision);
        let w = bad.witness.unwrap();
        let z = set[2].axpy(w[0], &set[0]).axpy(w[1], &set[1]);
        assert!(s.norm(&z).unwrap() <= 1.0 + 1e-9, "{w:?}");
    }

    #[test]
    fn relative_set_errors() {
        let s = Space::lp(2.0, 2).unwrap();
        let set = vec![v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])];
        assert!(matches!(
            is_strongly_orthogonal_relative(&s, &set, 0, &tol()),
            Err(Error::SetTooLarge { size: 3, dim: 2 })
        ));
        assert!(matches!(
            is_strongly_orthogonal_relative(&s, &set[..2], 5, &tol()),
            Err(Error::IndexOutOfRange { index: 5, len: 2 })
        ));
    }

    #[test]
    fn exact_relative_cube_corner_basis() {
        let s = exact(f64::INFINITY, 3);
        let set = vec![v(&[1.0, 1.0, 1.0]), v(&[1.0, 0.0, -1.0]), v(&[0.0, 1.0, -1.0])];
        let r = is_strongly_orthogonal_relative(&s, &set, 0, &tol()).unwrap();
        assert!(r.decision);
        assert!(r.certificate.unwrap().margin.is_positive());
    }

    #[test]
    fn exact_standard_basis_sets() {
        let basis: Vec<Vector> = (0..3)
            .map(|i| {
                let mut c = vec![int(0); 3];
                c[i] = int(1);
                Vector::from_rationals(c)
            })
            .collect();
        assert!(is_strongly_orthogonal_set(&exact(1.0, 3), &basis, &tol()).unwrap().decision);
        let linf = is_strongly_orthogonal_set(&exact(f64::INFINITY, 3), &basis, &tol()).unwrap();
        assert!(!linf.decision);
        assert_eq!(linf.failing_index, Some(0));
        let w = linf.certificate.unwrap().witness.unwrap();
        let z: Vec<Rational> = vec![int(1), w[0].clone(), w[1].clone()];
        assert!(w.iter().any(|c| !c.is_zero()));
        assert_eq!(Polytope::cube(3).norm_exact(&z), int(1));
    }

    #[test]
    fn dependent_sets_fail() {
        let s = exact(1.0, 3);
        let set = vec![
            Vector::from_rationals(vec![int(1), int(0), int(0)]),
            Vector::from_rationals(vec![int(0), int(1), int(0)]),
            Vector::from_rationals(vec![int(0), ratio(1, 2), int(0)]),
        ];
        assert!(!is_strongly_orthogonal_relative(&s, &set, 0, &tol()).unwrap().decision);
        let f = Space::lp(1.0, 3).unwrap();
        assert!(!is_strongly_orthogonal_relative(&f, &set, 0, &tol()).unwrap().decision);
    }

    #[test]
    fn pl_minimize_simple() {
        // max(|λ - 1|, |λ + 1|) has minimum 1 at λ = 0 only.
        let lines = vec![
            (int(-1), int(1)),
            (int(1), int(-1)),
            (int(1), int(1)),
            (int(-1), int(-1)),
        ];
        let (m, lo, hi, _) = pl_minimize(&lines);
        assert_eq!((m, lo, hi), (int(1), int(0), int(0)));
    }
}
