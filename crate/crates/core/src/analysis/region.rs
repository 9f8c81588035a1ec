//! Exponent pairs `(1/p, 1/s)` and the two admissible regions.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{usage, Error, Result};
use crate::numeric::Exponent;

pub type Rational = Ratio<i64>;

/// The point `(x, y) = (1/p, 1/s)` in the unit square, with `inf` at 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentPair {
    x: Rational,
    y: Rational,
}

impl ExponentPair {
    pub fn new(x: Rational, y: Rational) -> Result<ExponentPair> {
        let unit = Rational::zero()..=Rational::one();
        if !unit.contains(&x) || !unit.contains(&y) {
            return usage(format!("exponent pair ({x}, {y}) is outside [0,1]^2"));
        }
        Ok(ExponentPair { x, y })
    }

    /// `(xn/xd, yn/yd)`; panics on a zero denominator.
    pub fn from_parts(xn: i64, xd: i64, yn: i64, yd: i64) -> Result<ExponentPair> {
        ExponentPair::new(Rational::new(xn, xd), Rational::new(yn, yd))
    }

    pub fn x(self) -> Rational {
        self.x
    }

    pub fn y(self) -> Rational {
        self.y
    }

    pub fn p(self) -> Exponent {
        Exponent::from_reciprocal(self.x).expect("x in [0,1]")
    }

    pub fn s(self) -> Exponent {
        Exponent::from_reciprocal(self.y).expect("y in [0,1]")
    }

    pub fn xf(self) -> f64 {
        to_f64(self.x)
    }

    pub fn yf(self) -> f64 {
        to_f64(self.y)
    }

    /// The `n x n` grid `{(i/(n-1), j/(n-1))}`, row-major in `x` then `y`.
    pub fn grid(n: usize) -> Result<Vec<ExponentPair>> {
        if n < 2 {
            return usage(format!("grid resolution must be at least 2, got {n}"));
        }
        let m = (n - 1) as i64;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..=m {
            for j in 0..=m {
                out.push(ExponentPair {
                    x: Rational::new(i, m),
                    y: Rational::new(j, m),
                });
            }
        }
        Ok(out)
    }
}

pub(crate) fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Parses an exact rational such as `3/4`, `1`, or `0.25`.
pub fn parse_ratio(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Usage(format!("cannot parse rational {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(a, b));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 12 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10i64.pow(frac.len() as u32);
        let int: i64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        return Ok(Rational::new(int * den + frac, den));
    }
    s.parse::<i64>()
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// The reciprocal of an exponent given as text (`inf`, `2`, `4/3`, `1.5`).
pub fn reciprocal_of(s: &str) -> Result<Rational> {
    let t = s.trim();
    if matches!(t, "inf" | "infinity" | "Inf" | "oo") {
        return Ok(Rational::zero());
    }
    let r = parse_ratio(t)?;
    if r < Rational::one() {
        return usage(format!("exponent {t} is not in [1, inf]"));
    }
    Ok(r.recip())
}

pub(crate) mod ratio_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_ratio(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for ExponentPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            #[serde(with = "ratio_str")]
            x: &'a Rational,
            #[serde(with = "ratio_str")]
            y: &'a Rational,
        }
        Raw {
            x: &self.x,
            y: &self.y,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ExponentPair, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(with = "ratio_str")]
            x: Rational,
            #[serde(with = "ratio_str")]
            y: Rational,
        }
        let raw = Raw::deserialize(d)?;
        ExponentPair::new(raw.x, raw.y).map_err(serde::de::Error::custom)
    }
}

impl FromStr for ExponentPair {
    type Err = Error;

    /// `x,y` as rationals.
    fn from_str(s: &str) -> Result<ExponentPair> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Usage(format!("expected x,y, got {s:?}")))?;
        ExponentPair::new(parse_ratio(a)?, parse_ratio(b)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RegionKind {
    General,
    Radial { d: usize },
}

/// `a x + b y <= c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    #[serde(with = "ratio_str")]
    pub a: Rational,
    #[serde(with = "ratio_str")]
    pub b: Rational,
    #[serde(with = "ratio_str")]
    pub c: Rational,
}

impl HalfSpace {
    fn new(a: i64, b: i64, c: Rational) -> HalfSpace {
        HalfSpace {
            a: Rational::from_integer(a),
            b: Rational::from_integer(b),
            c,
        }
    }

    pub fn contains(&self, e: ExponentPair) -> bool {
        self.a * e.x + self.b * e.y <= self.c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    #[serde(with = "ratio_str")]
    pub x: Rational,
    #[serde(with = "ratio_str")]
    pub y: Rational,
}

/// A convex polygon in the `(1/p, 1/s)` square, as vertices and half-spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    #[serde(flatten)]
    pub kind: RegionKind,
    pub vertices: Vec<Vertex>,
    pub half_spaces: Vec<HalfSpace>,
}

fn v(x: Rational, y: Rational) -> Vertex {
    Vertex { x, y }
}

impl RegionSpec {
    pub fn general() -> RegionSpec {
        let half = Rational::new(1, 2);
        RegionSpec {
            kind: RegionKind::General,
            vertices: vec![
                v(Rational::zero(), Rational::zero()),
                v(Rational::one(), Rational::zero()),
                v(Rational::one(), half),
                v(half, half),
            ],
            half_spaces: vec![
                HalfSpace::new(0, 1, half),
                HalfSpace::new(-1, 1, Rational::zero()),
                HalfSpace::new(1, 0, Rational::one()),
                HalfSpace::new(0, -1, Rational::zero()),
            ],
        }
    }

    pub fn radial(d: usize) -> Result<RegionSpec> {
        if d < 2 {
            return usage(format!("radial region needs d >= 2, got {d}"));
        }
        let d = d as i64;
        let half = Rational::new(1, 2);
        Ok(RegionSpec {
            kind: RegionKind::Radial { d: d as usize },
            vertices: vec![
                v(Rational::zero(), Rational::zero()),
                v(Rational::one(), Rational::zero()),
                v(Rational::one(), Rational::new(d, d + 1)),
                v(half, half),
            ],
            half_spaces: vec![
                HalfSpace::new(-1, 1, Rational::zero()),
                HalfSpace::new(-(d - 1), d + 1, Rational::one()),
                HalfSpace::new(1, 0, Rational::one()),
                HalfSpace::new(0, -1, Rational::zero()),
            ],
        })
    }
}

/// Exact half-space membership; the boundary is included.
pub fn region_contains(region: &RegionSpec, e: ExponentPair) -> bool {
    region.half_spaces.iter().all(|h| h.contains(e))
}

/// Membership in the convex hull of `vertices` by trying every triangle
/// and every segment of vertices for a nonnegative barycentric solution.
pub fn hull_contains_bruteforce(
    vertices: &[(Rational, Rational)],
    point: (Rational, Rational),
) -> bool {
    let (px, py) = point;
    let n = vertices.len();
    if vertices.contains(&point) {
        return true;
    }
    for i in 0..n {
        for j in i + 1..n {
            let (ax, ay) = vertices[i];
            let (bx, by) = vertices[j];
            // segment: p = a + t (b - a), 0 <= t <= 1
            let (dx, dy) = (bx - ax, by - ay);
            let cross = dx * (py - ay) - dy * (px - ax);
            if cross.is_zero() {
                let t = if !dx.is_zero() {
                    (px - ax) / dx
                } else if !dy.is_zero() {
                    (py - ay) / dy
                } else {
                    continue;
                };
                if t >= Rational::zero() && t <= Rational::one() {
                    return true;
                }
            }
            for k in j + 1..n {
                let (cx, cy) = vertices[k];
                let det = (bx - ax) * (cy - ay) - (cx - ax) * (by - ay);
                if det.is_zero() {
                    continue;
                }
                let l1 = ((bx - px) * (cy - py) - (cx - px) * (by - py)) / det;
                let l2 = ((cx - px) * (ay - py) - (ax - px) * (cy - py)) / det;
                let l3 = Rational::one() - l1 - l2;
                if l1 >= Rational::zero() && l2 >= Rational::zero() && l3 >= Rational::zero() {
                    return true;
                }
            }
        }
    }
    false
}
