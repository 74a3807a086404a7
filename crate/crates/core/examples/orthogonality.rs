//! Birkhoff-James and strong Birkhoff-James orthogonality of pairs.

use nsg::orthogonality::{directional_min, pair_verdicts};
use nsg::{Backend, Space, SpaceSpec, ToleranceConfig, Vector};

fn main() -> nsg::Result<()> {
    let tol = ToleranceConfig::default();
    let cases: [(&str, Space, [f64; 2], [f64; 2]); 5] = [
        ("l2", Space::lp(2.0, 2)?, [1.0, 0.0], [0.0, 1.0]),
        ("l2", Space::lp(2.0, 2)?, [1.0, 0.0], [1.0, 1.0]),
        ("l-inf", Space::build(SpaceSpec::lp(f64::INFINITY, 2), Backend::Exact)?, [1.0, 0.0], [0.0, 1.0]),
        ("l-inf", Space::build(SpaceSpec::lp(f64::INFINITY, 2), Backend::Exact)?, [1.0, 1.0], [1.0, -1.0]),
        ("l1", Space::lp(1.0, 2)?, [1.0, 0.0], [0.0, 1.0]),
    ];
    for (name, space, x, y) in cases {
        let (x, y) = (Vector::from(x), Vector::from(y));
        let v = pair_verdicts(&space, &x, &y, &tol)?;
        let prof = directional_min(&space, &x, &y, &tol)?;
        println!(
            "{name:6} x = {:?}, y = {:?}: BJ {} SB {}; min of ||x + λy|| = {:.6} on [{:.4}, {:.4}]",
            x.coords(),
            y.coords(),
            v.bj.decision,
            v.sb.decision,
            prof.min_value,
            prof.minimizer_interval.0,
            prof.minimizer_interval.1
        );
    }
    Ok(())
}
