//! Smooth lp norms, 1 < p < infinity. (p = 1 and p = infinity are handled
//! as polytopes so that they can run on the exact backend.)

pub fn norm(x: &[f64], p: f64) -> f64 {
    let m = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    if p == 2.0 {
        return m * x.iter().map(|v| (v / m) * (v / m)).sum::<f64>().sqrt();
    }
    m * x.iter().map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Gradient of the norm at `x != 0`: the unique norming functional,
/// `f_i = sign(x_i) |x_i|^(p-1) / ||x||^(p-1)`, so `f(x) = ||x||`.
pub fn gradient(x: &[f64], p: f64) -> Vec<f64> {
    let r = norm(x, p);
    x.iter()
        .map(|&v| v.signum() * (v.abs() / r).powf(p - 1.0))
        .map(|g| if g.is_nan() { 0.0 } else { g })
        .collect()
}
