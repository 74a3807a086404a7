//! Extreme and exposed points on several unit spheres.

use nsg::norms::PieceSpec;
use nsg::pointgeom::is_exposed;
use nsg::{Backend, Space, SpaceSpec, ToleranceConfig, Vector};

fn main() -> nsg::Result<()> {
    let tol = ToleranceConfig::default();
    let stadium = Space::build(
        SpaceSpec::Gauge2d {
            pieces: vec![
                PieceSpec::segment([1.0, -1.0], [1.0, 1.0]),
                PieceSpec::circle_angles([0.0, 1.0], 1.0, 0.0, std::f64::consts::PI),
                PieceSpec::segment([-1.0, 1.0], [-1.0, -1.0]),
                PieceSpec::circle_angles([0.0, -1.0], 1.0, std::f64::consts::PI, std::f64::consts::TAU),
            ],
        },
        Backend::Float,
    )?;
    let cube = Space::build(SpaceSpec::lp(f64::INFINITY, 3), Backend::Exact)?;
    let l4 = Space::lp(4.0, 2)?;
    let cases: Vec<(&str, &Space, Vector)> = vec![
        ("stadium", &stadium, Vector::from([1.0, 1.0])),
        ("stadium", &stadium, Vector::from([1.0, 0.0])),
        ("stadium", &stadium, Vector::from([0.0, 2.0])),
        ("cube", &cube, Vector::from([1.0, 1.0, 1.0])),
        ("cube", &cube, Vector::from([1.0, 1.0, 0.0])),
        ("l4", &l4, Vector::from([1.0, 0.0])),
    ];
    for (name, space, x) in cases {
        let pc = is_exposed(space, &x, &tol)?;
        println!(
            "{name:8} {:?}: extreme {}, exposed {}, functional {:?}, flat witness {:?}, obstruction {:?}",
            x.coords(),
            pc.extreme,
            pc.exposed,
            pc.exposing_functional.as_ref().map(|f| f.coeffs().to_vec()),
            pc.flat_witness.as_ref().map(|z| z.coords().to_vec()),
            pc.obstruction
        );
    }
    Ok(())
}
