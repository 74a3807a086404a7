//! From an exposed point to a relative basis, an operator attaining its norm
//! only at ±x0, and back to an exposing functional.

use nsg::constructions::{basis_from_exposed, exposing_functional_from_operator, operator_from_basis};
use nsg::{Backend, Space, SpaceSpec, ToleranceConfig, Vector};

fn main() -> nsg::Result<()> {
    let tol = ToleranceConfig::default();
    let cube = Space::build(SpaceSpec::lp(f64::INFINITY, 3), Backend::Exact)?;
    let x0 = Vector::from([1.0, 1.0, 1.0]);

    let basis = basis_from_exposed(&cube, &x0, &tol)?;
    for v in &basis.vectors {
        println!("basis vector {:?}", v.coords());
    }
    println!("certificate margin {}", basis.certificate.margin);

    let op = operator_from_basis(&cube, &basis, &tol)?;
    for row in op.matrix.exact.as_ref().expect("exact matrix") {
        let row: Vec<String> = row.iter().map(|q| q.to_string()).collect();
        println!("A row [{}]", row.join(", "));
    }
    let att = &op.attainment;
    println!(
        "||A|| = {:?}; attained at {:?}; only at ±x0: {:?}",
        att.exact_norm.as_ref().map(|q| q.to_string()),
        att.clusters.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
        att.only_at_x0
    );

    let g = exposing_functional_from_operator(&cube, &op, &x0, &tol)?;
    println!("exposing functional f o A = {:?}", g.coeffs());
    Ok(())
}
