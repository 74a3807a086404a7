mod common;

use common::*;
use nsg::constructions::max_away;
use nsg::pointgeom::{is_exposed, is_extreme, strict_convexity_probe, supporting_functionals};
use nsg::rational::{from_f64_exact, int, Rational};
use nsg::{Space, SpaceSpec, Vector};
use rand::Rng;

fn lp_sample(space: &Space, rng: &mut rand_chacha::ChaCha8Rng) -> Vector {
    normalize(space, &rand_vec(rng, space.dim()))
}

#[test]
fn exposed_implies_extreme() {
    let t = tol();
    let mut r = rng(61);
    let mut spaces = vec![
        stadium(),
        parabolic(),
        Space::lp(1.5, 2).unwrap(),
        Space::lp(3.0, 3).unwrap(),
        float(linf(2)),
        float(l1(3)),
        exact(linf(3)),
    ];
    for _ in 0..3 {
        spaces.push(exact(SpaceSpec::polyhedral(random_polygon(&mut r))));
    }
    let mut checked = 0;
    let mut exposed = 0;
    let mut non_extreme = 0;
    let mut k = 0usize;
    while checked < 500 {
        let space = &spaces[k % spaces.len()];
        k += 1;
        {
            let x = match (space.polytope(), (k / spaces.len()) % 3) {
                (Some(p), 0) => {
                    let v = &p.vertices()[r.gen_range(0..p.vertices().len())];
                    to_vector(v)
                }
                (Some(_), _) if space.is_exact() => {
                    let q: Vec<Rational> = (0..space.dim()).map(|_| int(r.gen_range(-3..=3))).collect();
                    if q.iter().all(|c| *c == int(0)) {
                        continue;
                    }
                    rational_unit(space, &q)
                }
                _ => lp_sample(space, &mut r),
            };
            let pc = is_exposed(space, &x, &t).unwrap();
            checked += 1;
            if pc.exposed {
                exposed += 1;
                assert!(pc.extreme, "{:?}", x.coords());
            }
            if !pc.extreme {
                non_extreme += 1;
                let z = pc.flat_witness.as_ref().expect("flat witness");
                assert!(space.norm(&x.axpy(1.0, z)).unwrap() <= 1.0 + t.eps_abs);
                assert!(space.norm(&x.axpy(-1.0, z)).unwrap() <= 1.0 + t.eps_abs);
            }
        }
    }
    assert!(checked >= 500, "{checked}");
    assert!(exposed > 50 && non_extreme > 50, "{exposed} exposed, {non_extreme} non-extreme");
}

#[test]
fn smooth_lp_points_are_all_exposed() {
    let t = tol();
    let mut r = rng(62);
    for p in [1.5, 2.0, 3.0, 6.0] {
        for n in [2, 3] {
            let space = Space::lp(p, n).unwrap();
            for x in space.sphere_sample(64) {
                let pc = is_exposed(&space, &x, &t).unwrap();
                assert!(pc.extreme && pc.exposed, "p={p} {:?}", x.coords());
            }
            let x = lp_sample(&space, &mut r);
            let f = is_exposed(&space, &x, &t).unwrap().exposing_functional.unwrap();
            // Gradient oracle: f_i = sign(x_i)|x_i|^(p-1) for a unit vector.
            for (fi, xi) in f.coeffs().iter().zip(x.coords()) {
                assert!((fi - xi.signum() * xi.abs().powf(p - 1.0)).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn polyhedral_extreme_exposed_and_vertex_coincide() {
    let t = tol();
    let mut r = rng(63);
    for _ in 0..20 {
        let poly = random_polygon(&mut r);
        let space = exact(SpaceSpec::polyhedral(poly.clone()));
        let mut points: Vec<Vec<Rational>> = poly.clone();
        for _ in 0..poly.len() {
            points.push(random_edge_point(&mut r, &poly));
        }
        for q in points {
            let is_vertex = poly.contains(&q);
            let x = to_vector(&q);
            let pc = is_exposed(&space, &x, &t).unwrap();
            let ex = is_extreme(&space, &x, &t).unwrap();
            assert_eq!(pc.extreme, is_vertex);
            assert_eq!(pc.exposed, is_vertex);
            assert_eq!(ex.extreme, is_vertex);
        }
    }
    let cube = exact(linf(3));
    for m in 0..27 {
        let q: Vec<Rational> = (0..3).map(|i| int((m / 3i64.pow(i)) % 3 - 1)).collect();
        if q.iter().all(|c| *c == int(0)) {
            continue;
        }
        let x = to_vector(&q);
        let vertex = q.iter().all(|c| *c != int(0));
        let pc = is_exposed(&cube, &x, &t).unwrap();
        assert_eq!((pc.extreme, pc.exposed), (vertex, vertex), "{q:?}");
    }
}

#[test]
fn exposing_functionals_are_norming_and_strict() {
    let t = tol();
    let mut r = rng(64);
    let spaces = [stadium(), parabolic(), Space::lp(3.0, 2).unwrap(), Space::lp(1.5, 3).unwrap()];
    for space in &spaces {
        let mut tested = 0;
        for _ in 0..12 {
            let x = lp_sample(space, &mut r);
            let pc = is_exposed(space, &x, &t).unwrap();
            let Some(f) = pc.exposing_functional else { continue };
            tested += 1;
            assert!((f.apply(&x) - 1.0).abs() <= t.eps_abs);
            assert!((space.dual_norm(&f).unwrap() - 1.0).abs() <= t.eps_abs);
            // Away from ±x the functional stays below 1 - eps_flat.
            let far = space
                .sphere_sample(2048)
                .into_iter()
                .filter(|z| z.angle_to(&x).min(z.angle_to(&x.neg())) > 0.05)
                .map(|z| f.apply(&z))
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(far <= 1.0 - t.eps_flat, "{:?}: {far}", x.coords());
            assert!(max_away(space, &f, &x, &t) < 1.0);
        }
        assert!(tested > 0);
    }
}

#[test]
fn classification_is_symmetric() {
    let t = tol();
    let mut r = rng(65);
    let spaces = [stadium(), parabolic(), Space::lp(3.0, 3).unwrap(), exact(linf(3)), exact(l1(2))];
    for space in &spaces {
        for _ in 0..20 {
            let x = if space.is_exact() {
                let q: Vec<Rational> = (0..space.dim()).map(|_| int(r.gen_range(-2..=2))).collect();
                if q.iter().all(|c| *c == int(0)) {
                    continue;
                }
                rational_unit(space, &q)
            } else {
                lp_sample(space, &mut r)
            };
            let neg = if space.is_exact() {
                x.scale_exact(&int(-1)).unwrap()
            } else {
                x.neg()
            };
            let a = is_exposed(space, &x, &t).unwrap();
            let b = is_exposed(space, &neg, &t).unwrap();
            assert_eq!((a.extreme, a.exposed), (b.extreme, b.exposed), "{:?}", x.coords());
            if let (Some(f), Some(g)) = (&a.exposing_functional, &b.exposing_functional) {
                for (fi, gi) in f.coeffs().iter().zip(g.coeffs()) {
                    assert!((fi + gi).abs() < 1e-9, "{:?} {:?}", f.coeffs(), g.coeffs());
                }
            }
            if let (Some(z), Some(w)) = (&a.flat_witness, &b.flat_witness) {
                assert!(space.norm(&neg.axpy(1.0, w)).unwrap() <= 1.0 + t.eps_abs);
                assert!(space.norm(&x.axpy(1.0, z)).unwrap() <= 1.0 + t.eps_abs);
            }
        }
    }
}

#[test]
fn supporting_functionals_norm_the_point() {
    let t = tol();
    let mut r = rng(66);
    for _ in 0..20 {
        let poly = random_polygon(&mut r);
        let space = exact(SpaceSpec::polyhedral(poly.clone()));
        let q = random_edge_point(&mut r, &poly);
        let x = to_vector(&q);
        for g in supporting_functionals(&space, &x, &t).unwrap().generators() {
            assert!((g.apply(&x) - 1.0).abs() < 1e-12);
            assert!((space.dual_norm(&g).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn off_sphere_points_are_rejected() {
    let t = tol();
    let err = is_exposed(&Space::lp(2.0, 2).unwrap(), &Vector::from([1.0, 1.0]), &t).unwrap_err();
    assert!(matches!(err, nsg::Error::NotOnSphere { .. }));
    let half = Vector::from_rationals(vec![from_f64_exact(0.5).unwrap(), int(0)]);
    assert!(is_exposed(&exact(linf(2)), &half, &t).is_err());
}

#[test]
fn probe_finds_flats_and_clears_round_balls() {
    let t = tol();
    let smooth = strict_convexity_probe(&Space::lp(2.0, 3).unwrap(), 512, &t).unwrap();
    assert!(smooth.strictly_convex && smooth.witness.is_none());
    for space in [float(l1(2)), float(linf(3)), stadium(), parabolic()] {
        let p = strict_convexity_probe(&space, 512, &t).unwrap();
        let (x, y) = p.witness.expect("witness");
        assert!((space.norm(&x).unwrap() - 1.0).abs() < 1e-9);
        assert!((space.norm(&y).unwrap() - 1.0).abs() < 1e-9);
        let s = space.norm(&x.axpy(1.0, &y)).unwrap();
        assert!(s >= 2.0 - 1e-9 && x.angle_to(&y) > 1e-6);
    }
    assert!(strict_convexity_probe(&Space::lp(2.0, 2).unwrap(), 4, &t).is_err());
}
