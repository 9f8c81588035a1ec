//! Test-function families used as lower-bound witnesses.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::analysis::region::{ExponentPair, Rational};
use crate::error::{usage, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `delta_{x0}` at the least nonzero point.
    Delta,
    /// Indicator of the coordinate subspace of dimension `k`.
    Subspace(usize),
    /// Indicator of the sphere `S_j`, `j` in `{0, 1}`.
    Sphere(u8),
    /// `g0(m) = chi(a . m)` with `a` the least point of `S_1`.
    Exponential,
    /// Best of the seeded random trials.
    RandomBest,
    /// Best shell indicator over every `j`.
    RadialExtreme,
}

impl Family {
    /// The default scan families for dimension `d`.
    pub fn defaults(d: usize) -> Vec<Family> {
        vec![
            Family::Delta,
            Family::Subspace(d),
            Family::Sphere(0),
            Family::Sphere(1),
            Family::Exponential,
            Family::RandomBest,
            Family::RadialExtreme,
        ]
    }

    pub fn validate(self, d: usize) -> Result<()> {
        match self {
            Family::Subspace(k) if k == 0 || k > d => {
                usage(format!("subspace dimension {k} not in 1..={d}"))
            }
            Family::Sphere(j) if j > 1 => {
                usage(format!("sphere family needs j in {{0, 1}}, got {j}"))
            }
            _ => Ok(()),
        }
    }

    pub fn is_sphere(self) -> bool {
        matches!(self, Family::Sphere(_))
    }

    /// Exact growth exponent in `q` of the normalized lower bound, where a
    /// closed form exists.
    pub fn predicted_slope(self, e: ExponentPair, d: usize) -> Option<Rational> {
        let (x, y) = (e.x(), e.y());
        let d = Rational::from_integer(d as i64);
        match self {
            Family::Delta => Some(y + y - Rational::one()),
            Family::Subspace(k) => Some(Rational::from_integer(k as i64) * (y - x)),
            Family::Exponential => Some(d * (y - x)),
            Family::Sphere(0) => Some((d - Rational::one()) * (y - x)),
            Family::Sphere(_) => {
                Some((d + Rational::one()) * y - Rational::one() - (d - Rational::one()) * x)
            }
            Family::RandomBest | Family::RadialExtreme => None,
        }
    }

    /// Parses a comma-separated list; `all` and `default` expand to the defaults,
    /// `subspace` to `k = d`, `sphere` to both shells, `subspaces` to every `k`.
    pub fn parse_list(text: &str, d: usize) -> Result<Vec<Family>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "all" | "default" => out.extend(Family::defaults(d)),
                "subspace" => out.push(Family::Subspace(d)),
                "subspaces" => out.extend((1..=d).map(Family::Subspace)),
                "sphere" => out.extend([Family::Sphere(0), Family::Sphere(1)]),
                _ => out.push(item.parse()?),
            }
        }
        if out.is_empty() {
            return usage("no families requested");
        }
        for f in &out {
            f.validate(d)?;
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Delta => write!(f, "delta"),
            Family::Subspace(k) => write!(f, "subspace_k{k}"),
            Family::Sphere(j) => write!(f, "sphere_j{j}"),
            Family::Exponential => write!(f, "exponential"),
            Family::RandomBest => write!(f, "random_best"),
            Family::RadialExtreme => write!(f, "radial_extreme"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let bad = || Error::Usage(format!("unknown family {s:?}"));
        Ok(match s {
            "delta" => Family::Delta,
            "exponential" => Family::Exponential,
            "random_best" => Family::RandomBest,
            "radial_extreme" => Family::RadialExtreme,
            _ => {
                if let Some(k) = s.strip_prefix("subspace_k") {
                    Family::Subspace(k.parse().map_err(|_| bad())?)
                } else if let Some(j) = s.strip_prefix("sphere_j") {
                    Family::Sphere(j.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Family, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
