//! Serializable description of a normed space; mirrors the space-definition
//! JSON files.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceSpec {
    /// `(R^dim, ||.||_p)`.
    Lp { p: Exponent, dim: usize },
    /// Unit ball given as the convex hull of an origin-symmetric vertex list.
    Polyhedral { vertices: Vec<Vec<Coord>> },
    /// Planar unit sphere assembled from boundary pieces.
    Gauge2d { pieces: Vec<PieceSpec> },
}

impl SpaceSpec {
    pub fn lp(p: f64, dim: usize) -> Self {
        let p = if p.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        };
        SpaceSpec::Lp { p, dim }
    }

    pub fn polyhedral(vertices: Vec<Vec<Rational>>) -> Self {
        SpaceSpec::Polyhedral {
            vertices: vertices
                .into_iter()
                .map(|v| v.into_iter().map(Coord).collect())
                .collect(),
        }
    }

    pub fn polyhedral_f64(vertices: &[Vec<f64>]) -> Self {
        SpaceSpec::Polyhedral {
            vertices: vertices
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|&c| Coord(rational::from_f64_decimal(c).unwrap_or_default()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Short human label, e.g. `lp(p=inf, n=3)`.
    pub fn label(&self) -> String {
        match self {
            SpaceSpec::Lp { p, dim } => format!("lp(p={p}, n={dim})"),
            SpaceSpec::Polyhedral { vertices } => format!("polyhedral({} vertices)", vertices.len()),
            SpaceSpec::Gauge2d { pieces } => format!("gauge2d({} pieces)", pieces.len()),
        }
    }
}

/// The exponent `p` of an lp norm; `"inf"` in JSON for the max norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exponent;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Exponent, E> {
                Ok(Exponent::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exponent, E> {
                Ok(Exponent::Finite(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exponent, E> {
                Ok(Exponent::Finite(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exponent, E> {
                match v.trim().to_ascii_lowercase().as_str() {
                    "inf" | "infinity" => Ok(Exponent::Infinity),
                    other => other
                        .parse::<f64>()
                        .map(Exponent::Finite)
                        .map_err(|_| E::custom(format!("invalid exponent {v:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// An exact coordinate; accepts JSON numbers or strings such as `"3/4"`.
/// Integers serialize as numbers, everything else as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coord(pub Rational);

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(i) = num::ToPrimitive::to_i64(self.0.numer()) {
                return s.serialize_i64(i);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coord;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a rational string like \"3/4\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Coord, E> {
                rational::from_f64_decimal(v)
                    .map(Coord)
                    .ok_or_else(|| E::custom("non-finite coordinate"))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coord, E> {
                Ok(Coord(rational::int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coord, E> {
                Ok(Coord(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coord, E> {
                rational::parse(v).map(Coord).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// One boundary piece of a planar unit sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PieceSpec {
    Segment { from: [f64; 2], to: [f64; 2] },
    /// Arc of the circle `|z - center| = radius`. The arc is chosen either by
    /// an angle range (radians, counter-clockwise about the center) or by a
    /// single half-plane bound such as `y_min`.
    CircleArc {
        center: [f64; 2],
        radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angle_from: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angle_to: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x_min: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x_max: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y_min: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y_max: Option<f64>,
    },
    /// `y = a x^2 + b x + c` for `x` in `[min, max]` (form `y_of_x`), or the
    /// mirrored `x = a y^2 + b y + c` for `y` in `[min, max]` (form `x_of_y`).
    ParabolaArc {
        form: ParabolaForm,
        a: f64,
        #[serde(default)]
        b: f64,
        #[serde(default)]
        c: f64,
        min: f64,
        max: f64,
    },
}

impl PieceSpec {
    pub fn segment(from: [f64; 2], to: [f64; 2]) -> Self {
        PieceSpec::Segment { from, to }
    }

    pub fn circle_angles(center: [f64; 2], radius: f64, from: f64, to: f64) -> Self {
        PieceSpec::CircleArc {
            center,
            radius,
            angle_from: Some(from),
            angle_to: Some(to),
            x_min: None,
            x_max: None,
            y_min: None,
            y_max: None,
        }
    }

    pub fn parabola(form: ParabolaForm, a: f64, b: f64, c: f64, min: f64, max: f64) -> Self {
        PieceSpec::ParabolaArc { form, a, b, c, min, max }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParabolaForm {
    YOfX,
    XOfY,
}
