//! Strong orthogonality of finite sets, relative to one member and as a whole.

use nsg::orthogonality::{is_strongly_orthogonal_relative, is_strongly_orthogonal_set};
use nsg::{Backend, Space, SpaceSpec, ToleranceConfig, Vector};

fn show(space: &Space, set: &[Vector], tol: &ToleranceConfig) -> nsg::Result<()> {
    let coords: Vec<_> = set.iter().map(|v| v.coords().to_vec()).collect();
    println!("set {coords:?}");
    for i in 0..set.len() {
        let r = is_strongly_orthogonal_relative(space, set, i, tol)?;
        println!("  relative to member {i}: {} (witness {:?})", r.decision, r.witness);
    }
    let s = is_strongly_orthogonal_set(space, set, tol)?;
    println!("  whole set: {} (first failing member {:?})", s.decision, s.failing_index);
    Ok(())
}

fn main() -> nsg::Result<()> {
    let tol = ToleranceConfig::default();
    let cube = Space::build(SpaceSpec::lp(f64::INFINITY, 3), Backend::Exact)?;
    show(
        &cube,
        &[Vector::from([1.0, 1.0, 1.0]), Vector::from([-1.0, 1.0, 0.0]), Vector::from([-1.0, 0.0, 1.0])],
        &tol,
    )?;
    let cross = Space::build(SpaceSpec::lp(1.0, 3), Backend::Exact)?;
    show(
        &cross,
        &[Vector::from([1.0, 0.0, 0.0]), Vector::from([0.0, 1.0, 0.0]), Vector::from([0.0, 0.0, 1.0])],
        &tol,
    )?;
    let l3 = Space::lp(3.0, 2)?;
    show(&l3, &[Vector::from([1.0, 0.0]), Vector::from([0.0, 1.0])], &tol)?;
    Ok(())
}
