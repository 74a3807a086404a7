//! One-dimensional search on convex (or unimodal) functions.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol` (absolute). The returned
/// point is the best one evaluated, including the two endpoints.
pub fn golden_minimize(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Minimum {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut evals = 0;
    let mut eval = |x: f64| {
        evals += 1;
        f(x)
    };
    let mut best = (a, eval(a));
    let fb = eval(b);
    if fb < best.1 {
        best = (b, fb);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = eval(c);
    let mut fd = eval(d);
    for _ in 0..400 {
        if (b - a) <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = eval(d);
        }
        for (x, v) in [(c, fc), (d, fd)] {
            if v < best.1 {
                best = (x, v);
            }
        }
    }
    Minimum {
        arg: best.0,
        value: best.1,
        evaluations: evals,
    }
}

pub fn golden_maximize(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Minimum {
    let m = golden_minimize(|x| -f(x), lo, hi, tol);
    Minimum {
        value: -m.value,
        ..m
    }
}

/// Bisection for the boundary between `inside` (predicate true) and
/// `outside`; returns the last point known to be inside.
pub fn bisect_boundary(pred: impl Fn(f64) -> bool, inside: f64, outside: f64, iterations: usize) -> f64 {
    let (mut good, mut bad) = (inside, outside);
    for _ in 0..iterations {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}
