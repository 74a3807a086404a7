//! Planar norms whose unit sphere is assembled from segments, circle arcs
//! and parabola arcs.
//!
//! After validation the pieces are oriented counter-clockwise about the
//! origin and sorted by polar angle, so every ray from the origin meets
//! exactly one piece (or a junction of two). The norm of `x` is
//! `|x| / s` where `s` is the distance from the origin to that boundary
//! point along the ray.

use std::f64::consts::{PI, TAU};

use super::spec::{ParabolaForm, PieceSpec};
use crate::error::{Error, Result};
use crate::search;

pub type Point = [f64; 2];

const POS_TOL: f64 = 1e-12;
const CHAIN_TOL: f64 = 1e-9;

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn len(a: Point) -> f64 {
    a[0].hypot(a[1])
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn unit(a: Point) -> Point {
    let l = len(a);
    [a[0] / l, a[1] / l]
}

fn polar(a: Point) -> f64 {
    a[1].atan2(a[0]).rem_euclid(TAU)
}

/// Parametric curve underlying one piece, in its natural parameter.
#[derive(Clone, Debug)]
enum Curve {
    Segment { a: Point, b: Point },
    /// `center + r (cos t, sin t)`, with `t0 < t1`.
    Circle { c: Point, r: f64, t0: f64, t1: f64 },
    /// `(t, a t^2 + b t + c)`.
    ParabolaY { a: f64, b: f64, c: f64, t0: f64, t1: f64 },
    /// `(a t^2 + b t + c, t)`.
    ParabolaX { a: f64, b: f64, c: f64, t0: f64, t1: f64 },
}

impl Curve {
    fn from_spec(spec: &PieceSpec, index: usize) -> Result<Curve> {
        let at = || format!("pieces[{index}]");
        let finite = |vals: &[f64]| vals.iter().all(|v| v.is_finite());
        match *spec {
            PieceSpec::Segment { from, to } => {
                if !finite(&[from[0], from[1], to[0], to[1]]) {
                    return Err(Error::invalid_at("non-finite segment endpoint", at()));
                }
                if len(sub(to, from)) == 0.0 {
                    return Err(Error::invalid_at("degenerate segment", at()));
                }
                Ok(Curve::Segment { a: from, b: to })
            }
            PieceSpec::CircleArc {
                center,
                radius,
                angle_from,
                angle_to,
                x_min,
                x_max,
                y_min,
                y_max,
            } => {
                if !finite(&[center[0], center[1], radius]) || radius <= 0.0 {
                    return Err(Error::invalid_at("circle arc needs a finite positive radius", at()));
                }
                let bounds = [x_min, x_max, y_min, y_max].iter().filter(|b| b.is_some()).count();
                let (t0, t1) = match (angle_from, angle_to) {
                    (Some(a), Some(b)) if bounds == 0 => {
                        if !(a.is_finite() && b.is_finite()) || b <= a || b - a > TAU + 1e-12 {
                            return Err(Error::invalid_at(
                                "circle arc angles must satisfy angle_from < angle_to <= angle_from + 2pi",
                                at(),
                            ));
                        }
                        (a, b.min(a + TAU))
                    }
                    (None, None) if bounds == 1 => {
                        let clamp = |v: f64| v.clamp(-1.0, 1.0);
                        if let Some(y) = y_min {
                            let s = clamp((y - center[1]) / radius);
                            (s.asin(), PI - s.asin())
                        } else if let Some(y) = y_max {
                            let s = clamp((y - center[1]) / radius);
                            (PI - s.asin(), TAU + s.asin())
                        } else if let Some(x) = x_min {
                            let c = clamp((x - center[0]) / radius);
                            (-c.acos(), c.acos())
                        } else {
                            let c = clamp((x_max.unwrap_or(0.0) - center[0]) / radius);
                            (c.acos(), TAU - c.acos())
                        }
                    }
                    _ => {
                        return Err(Error::invalid_at(
                            "circle arc needs either angle_from/angle_to or exactly one of x_min, x_max, y_min, y_max",
                            at(),
                        ))
                    }
                };
                if t1 - t0 <= 0.0 {
                    return Err(Error::invalid_at("circle arc is empty", at()));
                }
                Ok(Curve::Circle {
                    c: center,
                    r: radius,
                    t0,
                    t1,
                })
            }
            PieceSpec::ParabolaArc { form, a, b, c, min, max } => {
                if !finite(&[a, b, c, min, max]) {
                    return Err(Error::invalid_at("non-finite parabola coefficient", at()));
                }
                if a == 0.0 {
                    return Err(Error::invalid_at("parabola with a = 0 is a segment; use a segment piece", at()));
                }
                if min >= max {
                    return Err(Error::invalid_at("parabola range needs min < max", at()));
                }
                Ok(match form {
                    ParabolaForm::YOfX => Curve::ParabolaY { a, b, c, t0: min, t1: max },
                    ParabolaForm::XOfY => Curve::ParabolaX { a, b, c, t0: min, t1: max },
                })
            }
        }
    }

    fn range(&self) -> (f64, f64) {
        match *self {
            Curve::Segment { .. } => (0.0, 1.0),
            Curve::Circle { t0, t1, .. }
            | Curve::ParabolaY { t0, t1, .. }
            | Curve::ParabolaX { t0, t1, .. } => (t0, t1),
        }
    }

    fn point(&self, t: f64) -> Point {
        match *self {
            Curve::Segment { a, b } => {
                // Exact at both ends.
                if t == 1.0 {
                    b
                } else {
                    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
                }
            }
            Curve::Circle { c, r, .. } => [c[0] + r * t.cos(), c[1] + r * t.sin()],
            Curve::ParabolaY { a, b, c, .. } => [t, (a * t + b) * t + c],
            Curve::ParabolaX { a, b, c, .. } => [(a * t + b) * t + c, t],
        }
    }

    fn deriv(&self, t: f64) -> Point {
        match *self {
            Curve::Segment { a, b } => sub(b, a),
            Curve::Circle { r, .. } => [-r * t.sin(), r * t.cos()],
            Curve::ParabolaY { a, b, .. } => [1.0, 2.0 * a * t + b],
            Curve::ParabolaX { a, b, .. } => [2.0 * a * t + b, 1.0],
        }
    }

    fn is_segment(&self) -> bool {
        matches!(self, Curve::Segment { .. })
    }

    /// Parameters `(s, t)` where the ray `s u`, `s > 0`, meets the
    /// unrestricted curve.
    fn ray_roots(&self, u: Point) -> Vec<(f64, f64)> {
        match *self {
            Curve::Segment { a, b } => {
                let d = sub(b, a);
                let det = u[1] * d[0] - u[0] * d[1];
                if det == 0.0 {
                    return Vec::new();
                }
                let s = (d[0] * a[1] - a[0] * d[1]) / det;
                let t = (u[0] * a[1] - u[1] * a[0]) / det;
                vec![(s, t)]
            }
            Curve::Circle { c, r, t0, .. } => {
                let uc = dot(u, c);
                let disc = uc * uc - dot(c, c) + r * r;
                if disc < 0.0 {
                    return Vec::new();
                }
                let sq = disc.sqrt();
                [uc + sq, uc - sq]
                    .into_iter()
                    .map(|s| {
                        let p = [s * u[0] - c[0], s * u[1] - c[1]];
                        let mut t = p[1].atan2(p[0]);
                        while t < t0 - 1e-9 {
                            t += TAU;
                        }
                        while t >= t0 + TAU - 1e-9 {
                            t -= TAU;
                        }
                        (s, t)
                    })
                    .collect()
            }
            Curve::ParabolaY { a, b, c, .. } => quadratic(a * u[0] * u[0], b * u[0] - u[1], c)
                .into_iter()
                .map(|s| (s, s * u[0]))
                .collect(),
            Curve::ParabolaX { a, b, c, .. } => quadratic(a * u[1] * u[1], b * u[1] - u[0], c)
                .into_iter()
                .map(|s| (s, s * u[1]))
                .collect(),
        }
        .into_iter()
        .filter(|&(s, _)| s > 0.0 && s.is_finite())
        .collect()
    }

    /// Nearest parameter to a point assumed to lie on the curve.
    fn param_of(&self, p: Point) -> f64 {
        let (t0, t1) = self.range();
        match *self {
            Curve::Segment { a, b } => {
                let d = sub(b, a);
                if p == b {
                    return 1.0;
                }
                (dot(sub(p, a), d) / dot(d, d)).clamp(0.0, 1.0)
            }
            Curve::Circle { c, .. } => {
                let mut t = (p[1] - c[1]).atan2(p[0] - c[0]);
                while t < t0 - 1e-9 {
                    t += TAU;
                }
                while t > t1 + 1e-9 && t - TAU >= t0 - 1e-9 {
                    t -= TAU;
                }
                t
            }
            Curve::ParabolaY { .. } => p[0],
            Curve::ParabolaX { .. } => p[1],
        }
    }

    /// Maximizers of `n . p(t)` over the parameter range. A segment
    /// orthogonal to `n` returns both endpoints and `flat = true`.
    fn support(&self, n: Point) -> (f64, Vec<f64>, bool) {
        let (t0, t1) = self.range();
        let mut cands = vec![t0, t1];
        match *self {
            Curve::Segment { a, b } => {
                let (v0, v1) = (dot(n, a), dot(n, b));
                let scale = len(n) * len(sub(b, a));
                if (v0 - v1).abs() <= POS_TOL * scale.max(1.0) {
                    return (v0.max(v1), vec![0.0, 1.0], true);
                }
                return if v0 > v1 { (v0, vec![0.0], false) } else { (v1, vec![1.0], false) };
            }
            Curve::Circle { .. } => {
                let mut t = n[1].atan2(n[0]);
                while t < t0 {
                    t += TAU;
                }
                if t <= t1 {
                    cands.push(t);
                }
            }
            Curve::ParabolaY { a, b, .. } => {
                // d/dt [n0 t + n1 (a t^2 + b t + c)] = n0 + n1 (2 a t + b)
                if n[1] != 0.0 {
                    let t = -(n[0] + n[1] * b) / (2.0 * a * n[1]);
                    if t > t0 && t < t1 {
                        cands.push(t);
                    }
                }
            }
            Curve::ParabolaX { a, b, .. } => {
                if n[0] != 0.0 {
                    let t = -(n[1] + n[0] * b) / (2.0 * a * n[0]);
                    if t > t0 && t < t1 {
                        cands.push(t);
                    }
                }
            }
        }
        let vals: Vec<f64> = cands.iter().map(|&t| dot(n, self.point(t))).collect();
        let best = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let args = cands
            .iter()
            .zip(&vals)
            .filter(|(_, &v)| v >= best - POS_TOL * best.abs().max(1.0))
            .map(|(&t, _)| t)
            .collect();
        (best, args, false)
    }
}

/// Real roots of `a s^2 + b s + c = 0`.
fn quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a.abs() <= 1e-300 {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

#[derive(Clone, Debug)]
struct Piece {
    curve: Curve,
    /// Counter-clockwise traversal runs from the upper parameter bound down.
    reversed: bool,
    start_angle: f64,
    sweep: f64,
    /// Position in the user's piece list, for diagnostics.
    source: usize,
}

impl Piece {
    fn start_param(&self) -> f64 {
        let (t0, t1) = self.curve.range();
        if self.reversed {
            t1
        } else {
            t0
        }
    }

    fn end_param(&self) -> f64 {
        let (t0, t1) = self.curve.range();
        if self.reversed {
            t0
        } else {
            t1
        }
    }

    fn start(&self) -> Point {
        self.curve.point(self.start_param())
    }

    fn end(&self) -> Point {
        self.curve.point(self.end_param())
    }

    /// Unit tangent in the counter-clockwise direction.
    fn tangent(&self, t: f64) -> Point {
        let d = self.curve.deriv(t);
        let d = if self.reversed { [-d[0], -d[1]] } else { d };
        unit(d)
    }

    fn covers_angle(&self, phi: f64, slack: f64) -> bool {
        let rel = (phi - self.start_angle).rem_euclid(TAU);
        rel <= self.sweep + slack || rel >= TAU - slack
    }

    fn range_violation(&self, t: f64) -> f64 {
        let (t0, t1) = self.curve.range();
        (t0.min(t1) - t).max(t - t0.max(t1)).max(0.0)
    }

    fn in_range(&self, t: f64, slack: f64) -> bool {
        let (t0, t1) = self.curve.range();
        t >= t0 - slack && t <= t1 + slack
    }

    /// Params sampled in counter-clockwise order.
    fn samples(&self, count: usize) -> Vec<f64> {
        let (a, b) = (self.start_param(), self.end_param());
        (0..=count).map(|i| a + (b - a) * i as f64 / count as f64).collect()
    }
}

/// Where a unit-sphere point sits on the boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Location {
    Interior { piece: usize, t: f64 },
    /// Shared endpoint: the end of `before` and the start of `after`.
    Junction { before: usize, after: usize },
}

/// The maximizers of a linear functional over the unit ball.
#[derive(Clone, Debug, PartialEq)]
pub enum SupportSet {
    Point(Point),
    Segment(Point, Point),
}

impl SupportSet {
    pub fn is_singleton_at(&self, x: Point) -> bool {
        match self {
            SupportSet::Point(p) => len(sub(*p, x)) <= CHAIN_TOL * len(x).max(1.0),
            SupportSet::Segment(..) => false,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            SupportSet::Point(p) => format!("support set is the single point ({}, {})", show(p[0]), show(p[1])),
            SupportSet::Segment(a, b) => {
                let (a, b) = ([snap(a[0]), snap(a[1])], [snap(b[0]), snap(b[1])]);
                let (lo, hi) = if (a[0], a[1]) <= (b[0], b[1]) { (a, b) } else { (b, a) };
                if lo[0] == hi[0] {
                    let (y0, y1) = (lo[1].min(hi[1]), lo[1].max(hi[1]));
                    format!("support set is segment {{{}}}×[{},{}]", show(lo[0]), show(y0), show(y1))
                } else if lo[1] == hi[1] {
                    format!("support set is segment [{},{}]×{{{}}}", show(lo[0]), show(hi[0]), show(lo[1]))
                } else {
                    format!(
                        "support set is segment [({}, {}), ({}, {})]",
                        show(lo[0]),
                        show(lo[1]),
                        show(hi[0]),
                        show(hi[1])
                    )
                }
            }
        }
    }
}

/// Rounds away float noise below 1e-12 for display.
fn snap(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn show(v: f64) -> String {
    format!("{}", snap(v))
}

#[derive(Clone, Debug)]
pub struct Gauge2d {
    pieces: Vec<Piece>,
}

impl Gauge2d {
    pub fn new(specs: &[PieceSpec]) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::invalid("gauge2d needs at least one piece"));
        }
        let mut pieces = Vec::with_capacity(specs.len());
        for (i, spec) in specs.iter().enumerate() {
            let curve = Curve::from_spec(spec, i)?;
            pieces.push(orient(curve, i)?);
        }
        pieces.sort_by(|a, b| a.start_angle.total_cmp(&b.start_angle));
        let g = Gauge2d { pieces };
        g.check_closed()?;
        g.check_convex()?;
        g.check_symmetric()?;
        Ok(g)
    }

    fn check_closed(&self) -> Result<()> {
        let m = self.pieces.len();
        for i in 0..m {
            let (p, q) = (&self.pieces[i], &self.pieces[(i + 1) % m]);
            let gap = len(sub(p.end(), q.start()));
            if gap > CHAIN_TOL * len(p.end()).max(1.0) {
                return Err(Error::invalid_at(
                    format!(
                        "gap in boundary coverage: piece ends at ({}, {}) but the next piece (pieces[{}]) starts at ({}, {})",
                        p.end()[0],
                        p.end()[1],
                        q.source,
                        q.start()[0],
                        q.start()[1]
                    ),
                    format!("pieces[{}]", p.source),
                ));
            }
        }
        let total: f64 = self.pieces.iter().map(|p| p.sweep).sum();
        if (total - TAU).abs() > 1e-7 {
            return Err(Error::invalid(format!(
                "pieces sweep {total} radians about the origin instead of one full turn"
            )));
        }
        Ok(())
    }

    /// The counter-clockwise tangent angle must never decrease and must turn
    /// exactly once in total.
    fn check_convex(&self) -> Result<()> {
        let mut prev: Option<Point> = None;
        let mut first: Option<Point> = None;
        let mut total = 0.0;
        for p in &self.pieces {
            for t in p.samples(64) {
                let tan = p.tangent(t);
                if let Some(q) = prev {
                    let turn = cross(q, tan).atan2(dot(q, tan));
                    if turn < -1e-9 {
                        return Err(Error::invalid_at(
                            "nonconvex boundary (tangent turns clockwise)",
                            format!("pieces[{}]", p.source),
                        ));
                    }
                    total += turn;
                }
                first.get_or_insert(tan);
                prev = Some(tan);
            }
        }
        if let (Some(q), Some(f)) = (prev, first) {
            let turn = cross(q, f).atan2(dot(q, f));
            if turn < -1e-9 {
                return Err(Error::invalid("nonconvex boundary at the closing junction"));
            }
            total += turn;
        }
        if (total - TAU).abs() > 1e-6 {
            return Err(Error::invalid(format!("nonconvex boundary: total turning {total} rad")));
        }
        Ok(())
    }

    fn check_symmetric(&self) -> Result<()> {
        let n = 720;
        for k in 0..n / 2 {
            let phi = PI * k as f64 / (n / 2) as f64;
            let u = [phi.cos(), phi.sin()];
            let r1 = self.radial(u);
            let r2 = self.radial([-u[0], -u[1]]);
            if (r1 - r2).abs() > 1e-9 * r1.max(r2) {
                return Err(Error::invalid(format!(
                    "boundary not origin-symmetric: radius {r1} at angle {phi} but {r2} at the opposite angle"
                )));
            }
        }
        Ok(())
    }

    /// Distance from the origin to the boundary along unit direction `u`.
    /// Near a junction two pieces may both be hit within the slack; the hit
    /// deepest inside its own parameter range wins.
    pub fn radial(&self, u: Point) -> f64 {
        let phi = polar(u);
        let mut fallback = None;
        let mut best: Option<(f64, f64)> = None;
        for p in &self.pieces {
            if !p.covers_angle(phi, 1e-9) {
                continue;
            }
            let slack = 1e-9 * {
                let (t0, t1) = p.curve.range();
                (t1 - t0).abs().max(1.0)
            };
            let hit = p
                .curve
                .ray_roots(u)
                .into_iter()
                .filter(|&(_, t)| p.in_range(t, slack))
                .min_by(|a, b| {
                    let ea = polar(p.curve.point(a.1)) - phi;
                    let eb = polar(p.curve.point(b.1)) - phi;
                    wrap(ea).abs().total_cmp(&wrap(eb).abs())
                });
            match hit {
                Some((s, t)) => {
                    let v = p.range_violation(t);
                    if v == 0.0 {
                        return s;
                    }
                    if best.is_none_or(|(_, bv)| v < bv) {
                        best = Some((s, v));
                    }
                }
                None => {
                    fallback.get_or_insert(p);
                }
            }
        }
        match (best, fallback) {
            (Some((s, _)), _) => s,
            (None, Some(p)) => bisect_ray(p, u),
            (None, None) => f64::NAN,
        }
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        let (a, b) = (x[0], x[1]);
        if a == 0.0 && b == 0.0 {
            return 0.0;
        }
        // Evaluate every vector through its upper-half-plane representative
        // so that norm(-x) == norm(x) bit for bit.
        let (a, b) = if b < 0.0 || (b == 0.0 && a < 0.0) { (-a, -b) } else { (a, b) };
        let r = a.hypot(b);
        r / self.radial([a / r, b / r])
    }

    /// Maximum of `f . z` over the unit ball.
    pub fn support_value(&self, f: Point) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.curve.support(f).0)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The maximizers of `n . z` over the unit ball.
    pub fn support_set(&self, n: Point) -> SupportSet {
        let h = self.support_value(n);
        let tol = POS_TOL * h.abs().max(1.0) * 10.0;
        let mut pts: Vec<Point> = Vec::new();
        for p in &self.pieces {
            let (v, args, _flat) = p.curve.support(n);
            if v >= h - tol {
                pts.extend(args.iter().map(|&t| p.curve.point(t)));
            }
        }
        // All maximizers lie on one supporting line; keep the extreme two.
        let dir = [-n[1], n[0]];
        let lo = pts.iter().cloned().min_by(|a, b| dot(*a, dir).total_cmp(&dot(*b, dir)));
        let hi = pts.iter().cloned().max_by(|a, b| dot(*a, dir).total_cmp(&dot(*b, dir)));
        match (lo, hi) {
            (Some(a), Some(b)) if len(sub(a, b)) > CHAIN_TOL * len(a).max(1.0) => SupportSet::Segment(a, b),
            (Some(a), _) => SupportSet::Point(a),
            _ => SupportSet::Point([f64::NAN, f64::NAN]),
        }
    }

    /// Locates a unit-sphere point on the boundary.
    pub fn locate(&self, x: Point) -> Option<Location> {
        let m = self.pieces.len();
        let scale = len(x).max(1.0);
        for (i, p) in self.pieces.iter().enumerate() {
            if len(sub(p.end(), x)) <= POS_TOL * scale {
                return Some(Location::Junction {
                    before: i,
                    after: (i + 1) % m,
                });
            }
            if len(sub(p.start(), x)) <= POS_TOL * scale {
                return Some(Location::Junction {
                    before: (i + m - 1) % m,
                    after: i,
                });
            }
        }
        let phi = polar(x);
        let mut best: Option<(f64, Location)> = None;
        for (i, p) in self.pieces.iter().enumerate() {
            if !p.covers_angle(phi, 1e-9) {
                continue;
            }
            let t = p.curve.param_of(x);
            if !p.in_range(t, 1e-9) {
                continue;
            }
            let err = len(sub(p.curve.point(t), x));
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, Location::Interior { piece: i, t }));
            }
        }
        best.filter(|(e, _)| *e <= 1e-7 * scale).map(|(_, l)| l)
    }

    /// Outward unit normals at a boundary location: one normal for a smooth
    /// point, the incoming and outgoing one-sided normals at a junction.
    pub fn normals(&self, loc: Location) -> (Point, Point) {
        let outward = |t: Point| [t[1], -t[0]];
        match loc {
            Location::Interior { piece, t } => {
                let n = outward(self.pieces[piece].tangent(t));
                (n, n)
            }
            Location::Junction { before, after } => {
                let p = &self.pieces[before];
                let q = &self.pieces[after];
                (outward(p.tangent(p.end_param())), outward(q.tangent(q.start_param())))
            }
        }
    }

    /// The maximal boundary segment containing `x` in its relative interior,
    /// if any.
    pub fn flat_through(&self, loc: Location) -> Option<(Point, Point)> {
        let seg = |i: usize| match self.pieces[i].curve {
            Curve::Segment { .. } => Some((self.pieces[i].start(), self.pieces[i].end())),
            _ => None,
        };
        match loc {
            Location::Interior { piece, t } => {
                let (t0, t1) = self.pieces[piece].curve.range();
                if self.pieces[piece].curve.is_segment() && t > t0 && t < t1 {
                    Some(self.extend_flat(piece))
                } else {
                    None
                }
            }
            Location::Junction { before, after } => {
                let (a, b) = (seg(before)?, seg(after)?);
                let (da, db) = (sub(a.1, a.0), sub(b.1, b.0));
                if cross(da, db).abs() <= POS_TOL * len(da) * len(db) && dot(da, db) > 0.0 {
                    Some(self.extend_flat(before))
                } else {
                    None
                }
            }
        }
    }

    /// Merges collinear segment neighbours of a segment piece.
    fn extend_flat(&self, i: usize) -> (Point, Point) {
        let n = {
            let t = self.pieces[i].tangent(0.0);
            [t[1], -t[0]]
        };
        match self.support_set(n) {
            SupportSet::Segment(a, b) => {
                if dot(sub(b, a), self.pieces[i].tangent(0.0)) >= 0.0 {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            SupportSet::Point(_) => (self.pieces[i].start(), self.pieces[i].end()),
        }
    }

    pub fn pieces_len(&self) -> usize {
        self.pieces.len()
    }

    pub fn piece_is_segment(&self, i: usize) -> bool {
        self.pieces[i].curve.is_segment()
    }

    /// Points sampled directly on the declared pieces (independent of the
    /// ray intersection), used to check the gauge.
    pub fn boundary_points(&self, per_piece: usize) -> Vec<Point> {
        self.pieces
            .iter()
            .flat_map(|p| p.samples(per_piece).into_iter().map(|t| p.curve.point(t)))
            .collect()
    }
}

fn wrap(a: f64) -> f64 {
    (a + PI).rem_euclid(TAU) - PI
}

fn orient(curve: Curve, source: usize) -> Result<Piece> {
    let (t0, t1) = curve.range();
    let n = 32;
    let mut sign = 0.0;
    for i in 0..=n {
        let t = t0 + (t1 - t0) * i as f64 / n as f64;
        let c = cross(curve.point(t), curve.deriv(t));
        if c == 0.0 || (sign != 0.0 && c.signum() != sign) {
            return Err(Error::invalid_at(
                "piece is not star-shaped about the origin (it runs along a ray from the origin)",
                format!("pieces[{source}]"),
            ));
        }
        sign = c.signum();
    }
    let reversed = sign < 0.0;
    let mut piece = Piece {
        curve,
        reversed,
        start_angle: 0.0,
        sweep: 0.0,
        source,
    };
    piece.start_angle = polar(piece.start());
    let pts: Vec<Point> = piece.samples(256).into_iter().map(|t| piece.curve.point(t)).collect();
    piece.sweep = pts.windows(2).map(|w| cross(w[0], w[1]).atan2(dot(w[0], w[1]))).sum();
    Ok(piece)
}

fn bisect_ray(p: &Piece, u: Point) -> f64 {
    let (a, b) = (p.start_param(), p.end_param());
    let side = |t: f64| cross(u, p.curve.point(t)) <= 0.0;
    let t = search::bisect_boundary(side, a, b, 200);
    dot(p.curve.point(t), u)
}
