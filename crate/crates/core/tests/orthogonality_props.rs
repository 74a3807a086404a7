mod common;

use common::*;
use nsg::orthogonality::{
    directional_min, is_bj_orthogonal, is_sb_orthogonal, is_strongly_orthogonal_relative, is_strongly_orthogonal_set,
    pair_verdicts,
};
use nsg::rational::{int, to_f64, Rational};
use nsg::{Space, SpaceSpec, Vector};
use proptest::prelude::*;
use rand::Rng;

fn pair_spaces() -> Vec<Space> {
    let mut r = rng(21);
    vec![
        Space::lp(2.0, 2).unwrap(),
        Space::lp(1.5, 3).unwrap(),
        Space::lp(4.0, 2).unwrap(),
        float(l1(3)),
        float(linf(2)),
        exact(l1(2)),
        exact(linf(3)),
        exact(SpaceSpec::polyhedral(random_polygon(&mut r))),
        float(SpaceSpec::polyhedral(random_polygon(&mut r))),
        stadium(),
        parabolic(),
    ]
}

/// Small-integer vectors hit the flat faces of polyhedral balls often.
fn int_vec(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n).map(|_| int(rng.gen_range(-2..=2))).collect();
        if v.iter().any(|c| *c != int(0)) {
            return v;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sb_implies_bj(pick in 0usize..11, seed in any::<u64>()) {
        let all = pair_spaces();
        let space = &all[pick];
        let mut r = rng(seed);
        let n = space.dim();
        let (x, y) = if space.is_exact() || r.gen_bool(0.5) {
            (to_vector(&int_vec(&mut r, n)), to_vector(&int_vec(&mut r, n)))
        } else {
            (Vector::new(rand_vec(&mut r, n)), Vector::new(rand_vec(&mut r, n)))
        };
        let v = pair_verdicts(space, &x, &y, &tol()).unwrap();
        prop_assert!(!v.sb.decision || v.bj.decision, "{:?} {:?}", x.coords(), y.coords());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verdicts_are_scale_invariant(pick in 0usize..11, seed in any::<u64>(), a in 0.1..10.0f64, b in 0.1..10.0f64, sa: bool, sb: bool) {
        let all = pair_spaces();
        let space = &all[pick];
        let mut r = rng(seed);
        let n = space.dim();
        let (x, y) = (to_vector(&int_vec(&mut r, n)), to_vector(&int_vec(&mut r, n)));
        let a = if sa { -a } else { a };
        let b = if sb { -b } else { b };
        let (ax, by) = (x.scale(a), y.scale(b));
        let (ax, by) = if space.is_exact() {
            let q = |v: f64| nsg::rational::from_f64_exact(v).unwrap();
            (x.scale_exact(&q(a)).unwrap(), y.scale_exact(&q(b)).unwrap())
        } else {
            (ax, by)
        };
        let t = tol();
        let v1 = pair_verdicts(space, &x, &y, &t).unwrap();
        let v2 = pair_verdicts(space, &ax, &by, &t).unwrap();
        prop_assert_eq!(v1.bj.decision, v2.bj.decision, "BJ {:?} {:?} a={} b={}", x.coords(), y.coords(), a, b);
        prop_assert_eq!(v1.sb.decision, v2.sb.decision, "SB {:?} {:?} a={} b={}", x.coords(), y.coords(), a, b);
    }
}

#[test]
fn euclidean_oracle() {
    let t = tol();
    let mut r = rng(31);
    for n in [2, 3, 4] {
        let space = Space::lp(2.0, n).unwrap();
        for k in 0..1000 / 3 + 1 {
            let x = rand_vec(&mut r, n);
            let mut y = rand_vec(&mut r, n);
            if k % 2 == 0 {
                let c = dot(&x, &y) / dot(&x, &x);
                for (yi, xi) in y.iter_mut().zip(&x) {
                    *yi -= c * xi;
                }
                if dot(&y, &y) < 1e-6 {
                    continue;
                }
            }
            let cos = dot(&x, &y) / (dot(&x, &x) * dot(&y, &y)).sqrt();
            let v = is_sb_orthogonal(&space, &Vector::new(x.clone()), &Vector::new(y.clone()), &t).unwrap();
            if cos.abs() < 1e-12 {
                assert!(v.decision, "{x:?} {y:?}");
            } else if cos.abs() > 1e-3 {
                assert!(!v.decision, "{x:?} {y:?} cos {cos}");
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn euclidean_minimizer_is_the_projection() {
    let t = tol();
    let mut r = rng(32);
    let space = Space::lp(2.0, 3).unwrap();
    for _ in 0..100 {
        let x = rand_vec(&mut r, 3);
        let y = rand_vec(&mut r, 3);
        let lam = -dot(&x, &y) / dot(&y, &y);
        let p = directional_min(&space, &Vector::new(x.clone()), &Vector::new(y.clone()), &t).unwrap();
        let resid: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + lam * b).collect();
        assert!((p.min_value - dot(&resid, &resid).sqrt()).abs() < 1e-9);
        assert!(p.minimizer_interval.0 - 1e-3 <= lam && lam <= p.minimizer_interval.1 + 1e-3);
    }
}

fn set_spaces() -> Vec<Space> {
    vec![
        exact(l1(3)),
        exact(linf(3)),
        exact(l1(2)),
        exact(linf(2)),
        float(l1(3)),
        float(linf(2)),
        Space::lp(2.0, 3).unwrap(),
        Space::lp(3.0, 2).unwrap(),
    ]
}

#[test]
fn accepted_sets_are_linearly_independent() {
    let t = tol();
    let mut r = rng(41);
    let mut accepted = 0;
    for space in set_spaces() {
        let n = space.dim();
        for k in 0..40 {
            let size = r.gen_range(2..=n);
            let mut set: Vec<Vector> = (0..size).map(|_| to_vector(&int_vec(&mut r, n))).collect();
            if k % 4 == 0 {
                // Force a dependence.
                let c: Vec<Rational> = set[0]
                    .exact_coords()
                    .unwrap()
                    .iter()
                    .zip(set[1].exact_coords().unwrap())
                    .map(|(a, b)| a - b * int(2))
                    .collect();
                if c.iter().all(|q| *q == int(0)) {
                    continue;
                }
                let last = set.len() - 1;
                if last >= 2 {
                    set[last] = to_vector(&c);
                } else {
                    set.push(to_vector(&c));
                }
                if set.len() > n {
                    set.remove(1);
                }
            }
            for i0 in 0..set.len() {
                let v = is_strongly_orthogonal_relative(&space, &set, i0, &t).unwrap();
                if v.decision {
                    accepted += 1;
                    let rows: Vec<Vec<f64>> = set.iter().map(|v| v.coords().to_vec()).collect();
                    assert_eq!(rank(&rows, 1e-9), set.len(), "{rows:?} relative to {i0}");
                }
            }
        }
    }
    assert!(accepted > 50, "only {accepted} accepted sets");
}

#[test]
fn set_verdict_implies_each_relative_verdict() {
    let t = tol();
    let mut r = rng(42);
    let mut accepted = 0;
    for space in set_spaces() {
        let n = space.dim();
        for _ in 0..30 {
            let size = r.gen_range(2..=n);
            let set: Vec<Vector> = (0..size).map(|_| to_vector(&int_vec(&mut r, n))).collect();
            let whole = is_strongly_orthogonal_set(&space, &set, &t).unwrap();
            let each: Vec<bool> = (0..size)
                .map(|i| is_strongly_orthogonal_relative(&space, &set, i, &t).unwrap().decision)
                .collect();
            assert_eq!(whole.decision, each.iter().all(|b| *b));
            if whole.decision {
                accepted += 1;
            } else {
                assert_eq!(whole.failing_index, each.iter().position(|b| !b));
            }
        }
    }
    assert!(accepted > 5);
}

#[test]
fn exact_and_float_backends_agree_on_polyhedral_spaces() {
    let t = tol();
    let mut r = rng(51);
    let mut specs: Vec<SpaceSpec> = vec![l1(2), linf(2), l1(3), linf(3)];
    for _ in 0..6 {
        specs.push(SpaceSpec::polyhedral(random_polygon(&mut r)));
    }
    let mut instances = 0;
    let mut disagreements = Vec::new();
    while instances < 500 {
        let spec = &specs[instances % specs.len()];
        let (e, f) = (exact(spec.clone()), float(spec.clone()));
        let n = e.dim();
        let x = to_vector(&int_vec(&mut r, n));
        let y = to_vector(&int_vec(&mut r, n));
        let xf = Vector::new(x.coords().to_vec());
        let yf = Vector::new(y.coords().to_vec());
        let checks = [
            ("bj", is_bj_orthogonal(&e, &x, &y, &t).unwrap().decision, is_bj_orthogonal(&f, &xf, &yf, &t).unwrap().decision),
            ("sb", is_sb_orthogonal(&e, &x, &y, &t).unwrap().decision, is_sb_orthogonal(&f, &xf, &yf, &t).unwrap().decision),
        ];
        let mut set = vec![x.clone(), y.clone()];
        let mut setf = vec![xf, yf];
        if n >= 3 {
            let z = to_vector(&int_vec(&mut r, n));
            setf.push(Vector::new(z.coords().to_vec()));
            set.push(z);
        }
        let rel = (
            "relative",
            is_strongly_orthogonal_relative(&e, &set, 0, &t).unwrap().decision,
            is_strongly_orthogonal_relative(&f, &setf, 0, &t).unwrap().decision,
        );
        let whole = (
            "set",
            is_strongly_orthogonal_set(&e, &set, &t).unwrap().decision,
            is_strongly_orthogonal_set(&f, &setf, &t).unwrap().decision,
        );
        for (name, a, b) in checks.into_iter().chain([rel, whole]) {
            if a != b {
                disagreements.push(format!("{name} {:?}: exact {a}, float {b} ({})", set.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(), spec.label()));
            }
        }
        instances += 1;
    }
    assert!(disagreements.is_empty(), "{disagreements:#?}");
}

#[test]
fn exact_profile_matches_float_profile() {
    let t = tol();
    let mut r = rng(52);
    for _ in 0..50 {
        let spec = SpaceSpec::polyhedral(random_polygon(&mut r));
        let (e, f) = (exact(spec.clone()), float(spec));
        let x = to_vector(&int_vec(&mut r, 2));
        let y = to_vector(&int_vec(&mut r, 2));
        let pe = directional_min(&e, &x, &y, &t).unwrap();
        let pf = directional_min(&f, &Vector::new(x.coords().to_vec()), &Vector::new(y.coords().to_vec()), &t).unwrap();
        let ex = pe.exact.expect("exact profile");
        assert!((to_f64(&ex.min_value) - pf.min_value).abs() < 1e-9);
        assert!(to_f64(&ex.lo) <= pf.minimizer_interval.1 + 1e-6 && pf.minimizer_interval.0 - 1e-6 <= to_f64(&ex.hi));
    }
}
