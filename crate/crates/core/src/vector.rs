use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

/// A point of R^n. Coordinates are floats; an exact rational copy is kept
/// when the vector was built from rationals, so `1/3` stays exact on the
/// exact backend.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector {
    coords: Vec<f64>,
    exact: Option<Vec<Rational>>,
}

impl PartialEq for Vector {
    fn eq(&self, other: &Self) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.coords == other.coords,
        }
    }
}

impl From<Vec<f64>> for Vector {
    fn from(coords: Vec<f64>) -> Self {
        Vector::new(coords)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.coords
    }
}

impl From<&[f64]> for Vector {
    fn from(coords: &[f64]) -> Self {
        Vector::new(coords.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    fn from(coords: [f64; N]) -> Self {
        Vector::new(coords.to_vec())
    }
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        Vector {
            coords,
            exact: None,
        }
    }

    pub fn from_rationals(exact: Vec<Rational>) -> Self {
        Vector {
            coords: exact.iter().map(rational::to_f64).collect(),
            exact: Some(exact),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Vector::from_rationals(vec![rational::int(0); n])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact coordinates: the stored rationals, or the exact binary value of
    /// each float. `None` only for non-finite entries.
    pub fn exact_coords(&self) -> Option<Vec<Rational>> {
        match &self.exact {
            Some(e) => Some(e.clone()),
            None => self.coords.iter().map(|&c| rational::from_f64_exact(c)).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(e) => e.iter().all(num::Zero::is_zero),
            None => self.coords.iter().all(|&c| c == 0.0),
        }
    }

    pub fn euclidean(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scale(&self, a: f64) -> Vector {
        Vector::new(self.coords.iter().map(|c| c * a).collect())
    }

    pub fn scale_exact(&self, a: &Rational) -> Option<Vector> {
        let e = self.exact_coords()?;
        Some(Vector::from_rationals(e.iter().map(|c| c * a).collect()))
    }

    pub fn neg(&self) -> Vector {
        Vector {
            coords: self.coords.iter().map(|c| -c).collect(),
            exact: self.exact.as_ref().map(|e| e.iter().map(|c| -c).collect()),
        }
    }

    /// `self + a * other`, exact when both operands are exact.
    pub fn axpy(&self, a: f64, other: &Vector) -> Vector {
        if let (Some(x), Some(y), Some(q)) = (&self.exact, &other.exact, rational::from_f64_exact(a)) {
            return Vector::from_rationals(x.iter().zip(y).map(|(u, v)| u + &q * v).collect());
        }
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x + a * y)
                .collect(),
        )
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    /// Angle between the Euclidean directions of two nonzero vectors.
    pub fn angle_to(&self, other: &Vector) -> f64 {
        let c = self.dot(other) / (self.euclidean() * other.euclidean());
        c.clamp(-1.0, 1.0).acos()
    }
}

/// A linear functional `f(x) = sum coeffs_i x_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Functional(pub Vector);

impl Functional {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Functional(Vector::new(coeffs))
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        Functional(Vector::from_rationals(coeffs))
    }

    pub fn coeffs(&self) -> &[f64] {
        self.0.coords()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn apply(&self, x: &Vector) -> f64 {
        self.0.dot(x)
    }

    pub fn apply_exact(&self, x: &Vector) -> Option<Rational> {
        Some(rational::dot(&self.0.exact_coords()?, &x.exact_coords()?))
    }

    pub fn scale(&self, a: f64) -> Functional {
        Functional(self.0.scale(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn exact_coords_survive_negation() {
        let v = Vector::from_rationals(vec![ratio(1, 3), ratio(-2, 7)]);
        let n = v.neg();
        assert_eq!(n.exact_coords().unwrap(), vec![ratio(-1, 3), ratio(2, 7)]);
    }

    #[test]
    fn functional_is_linear_exactly() {
        let f = Functional::from_rationals(vec![ratio(1, 2), ratio(1, 3)]);
        let x = Vector::from_rationals(vec![ratio(3, 1), ratio(6, 1)]);
        assert_eq!(f.apply_exact(&x).unwrap(), ratio(7, 2));
        assert_eq!(f.apply(&x), 3.5);
    }

    #[test]
    fn json_is_a_plain_array() {
        let v = Vector::new(vec![1.0, -0.5]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[1.0,-0.5]");
        let back: Vector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
