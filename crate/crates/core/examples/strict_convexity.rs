//! Sampled strict-convexity probe.

use nsg::pointgeom::strict_convexity_probe;
use nsg::{Backend, Space, SpaceSpec, ToleranceConfig};

fn main() -> nsg::Result<()> {
    let tol = ToleranceConfig::default();
    let spaces = [
        ("l2", Space::lp(2.0, 2)?),
        ("l1.5", Space::lp(1.5, 2)?),
        ("l1", Space::lp(1.0, 2)?),
        ("l-inf", Space::build(SpaceSpec::lp(f64::INFINITY, 2), Backend::Float)?),
    ];
    for (name, space) in spaces {
        let p = strict_convexity_probe(&space, 1024, &tol)?;
        println!(
            "{name:6} strictly convex: {}; max ||x + y|| = {:.9}; witness {:?}",
            p.strictly_convex,
            p.max_sum,
            p.witness.map(|(x, y)| (x.coords().to_vec(), y.coords().to_vec()))
        );
    }
    Ok(())
}
