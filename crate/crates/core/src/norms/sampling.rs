//! Deterministic direction grids on the Euclidean sphere.

use std::f64::consts::TAU;

const GOLDEN: f64 = 1.618_033_988_749_895;

/// `(cos, sin)` of the angle `2 pi (k + offset) / count`, exact at quarter
/// turns when `offset == 0`.
pub fn turn(k: usize, count: usize, offset: f64) -> [f64; 2] {
    if offset == 0.0 && (4 * k).is_multiple_of(count) {
        return match (4 * k / count) % 4 {
            0 => [1.0, 0.0],
            1 => [0.0, 1.0],
            2 => [-1.0, 0.0],
            _ => [0.0, -1.0],
        };
    }
    let a = TAU * (k as f64 + offset) / count as f64;
    [a.cos(), a.sin()]
}

fn seed_offset(seed: u64) -> f64 {
    if seed == 0 {
        0.0
    } else {
        (seed as f64 * GOLDEN).fract()
    }
}

/// `count` directions; the second half is the exact negation of the first.
pub fn directions(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let half = count / 2;
    let mut out: Vec<Vec<f64>> = match dim {
        2 => {
            let off = seed_offset(seed);
            let n = 2 * half.max(1);
            (0..half).map(|k| turn(k, n, off).to_vec()).collect()
        }
        3 => (0..half)
            .map(|i| {
                let z = (i as f64 + 0.5) / half as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let a = TAU * ((i as u64 + seed) as f64 / (GOLDEN * GOLDEN)).fract();
                vec![r * a.cos(), r * a.sin(), z]
            })
            .collect(),
        _ => (0..half)
            .map(|i| {
                let idx = i as u64 + 1 + seed;
                let (u1, u2, u3) = (radical_inverse(idx, 2), radical_inverse(idx, 3), radical_inverse(idx, 5));
                let (r1, r2) = ((1.0 - u1).sqrt(), u1.sqrt());
                let (a1, a2) = (TAU * u2, TAU * u3);
                let mut v = vec![r1 * a1.sin(), r1 * a1.cos(), r2 * a2.sin(), r2 * a2.cos()];
                v.truncate(dim.max(1));
                v
            })
            .collect(),
    };
    let negated: Vec<Vec<f64>> = out.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
    out.extend(negated);
    if count % 2 == 1 {
        let mut pole = vec![0.0; dim];
        pole[dim - 1] = 1.0;
        out.push(pole);
    }
    out
}

/// Deterministic directions on the upper hemisphere of `S^(k-1)`, used for
/// coefficient-space scans where `u` and `-u` are equivalent. Axis
/// directions are always included.
pub fn hemisphere(k: usize, count: usize) -> Vec<Vec<f64>> {
    match k {
        0 => Vec::new(),
        1 => vec![vec![1.0]],
        2 => (0..count).map(|m| turn(m, 2 * count, 0.0).to_vec()).collect(),
        _ => {
            let mut out: Vec<Vec<f64>> = (0..k)
                .map(|i| {
                    let mut e = vec![0.0; k];
                    e[i] = 1.0;
                    e
                })
                .collect();
            out.extend(directions(3, 2 * count, 0).into_iter().take(count));
            out
        }
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(turn(0, 4, 0.0), [1.0, 0.0]);
        assert_eq!(turn(1, 4, 0.0), [0.0, 1.0]);
        assert_eq!(turn(2, 4, 0.0), [-1.0, 0.0]);
    }

    #[test]
    fn antipodal_halves() {
        for dim in 2..=4 {
            let d = directions(dim, 64, 0);
            assert_eq!(d.len(), 64);
            for i in 0..32 {
                let neg: Vec<f64> = d[i].iter().map(|c| -c).collect();
                assert_eq!(d[i + 32], neg);
                let n: f64 = d[i].iter().map(|c| c * c).sum();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hemisphere_contains_axes() {
        let h = hemisphere(2, 720);
        assert_eq!(h.len(), 720);
        assert!(h.contains(&vec![0.0, 1.0]));
        let h3 = hemisphere(3, 100);
        assert!(h3.contains(&vec![0.0, 0.0, 1.0]));
        assert!(h3.iter().skip(3).all(|v| v[2] > 0.0));
    }
}
