//! Norms and dual norms in the three kinds of space.

use nsg::norms::{ParabolaForm, PieceSpec};
use nsg::rational::ratio;
use nsg::{Backend, Functional, Space, SpaceSpec, Vector};

fn main() -> nsg::Result<()> {
    let l3 = Space::lp(3.0, 2)?;
    let x = Vector::from([3.0, 4.0]);
    println!("l3:        ||(3,4)|| = {:.6}", l3.norm(&x)?);

    let cube = Space::build(SpaceSpec::lp(f64::INFINITY, 3), Backend::Exact)?;
    let v = Vector::from_rationals(vec![ratio(1, 2), ratio(-3, 4), ratio(1, 3)]);
    println!("l-inf:     ||(1/2,-3/4,1/3)|| = {}", cube.norm_exact(&v)?);
    let f = Functional::from_rationals(vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
    println!("           dual norm of (1/3,1/3,1/3) = {}", cube.dual_norm_exact(&f)?);

    let hexagon = Space::build(
        SpaceSpec::polyhedral_f64(&[
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![-1.0, -1.0],
            vec![0.0, -1.0],
        ]),
        Backend::Exact,
    )?;
    let w = Vector::from_rationals(vec![ratio(1, 1), ratio(-1, 1)]);
    println!("hexagon:   ||(1,-1)|| = {}", hexagon.norm_exact(&w)?);

    let parabolic = Space::build(
        SpaceSpec::Gauge2d {
            pieces: vec![
                PieceSpec::segment([1.0, -1.0], [1.0, 1.0]),
                PieceSpec::parabola(ParabolaForm::YOfX, -0.5, 0.0, 1.5, -1.0, 1.0),
                PieceSpec::segment([-1.0, 1.0], [-1.0, -1.0]),
                PieceSpec::parabola(ParabolaForm::YOfX, 0.5, 0.0, -1.5, -1.0, 1.0),
            ],
        },
        Backend::Float,
    )?;
    for p in [[1.0, 1.0], [0.0, 1.5], [2.0, 0.0], [0.5, 0.5]] {
        println!("parabolic: ||({}, {})|| = {:.6}", p[0], p[1], parabolic.norm(&Vector::from(p))?);
    }
    let g = Functional::new(vec![0.5, 0.5]);
    println!("           dual norm of (1/2,1/2) = {:.6}", parabolic.dual_norm(&g)?);
    Ok(())
}
