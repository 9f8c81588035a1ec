//! Floating-point helpers shared by the norm and fitting code.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};

/// Neumaier-compensated sum in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in items {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// An exponent in `[1, inf]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Exponent> {
        if p.is_nan() || p < 1.0 {
            return usage(format!("exponent {p} is not in [1, inf]"));
        }
        Ok(if p.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        })
    }

    /// The exponent with reciprocal `inv` (`0` maps to infinity).
    pub fn from_reciprocal(inv: Ratio<i64>) -> Result<Exponent> {
        if inv < Ratio::zero() || inv > Ratio::from_integer(1) {
            return usage(format!("reciprocal exponent {inv} is not in [0, 1]"));
        }
        if inv.is_zero() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(inv.recip().to_f64().unwrap()))
    }

    /// `1/p` as a float.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }
}

impl std::str::FromStr for Exponent {
    type Err = crate::Error;

    /// Accepts `inf`, decimals, and fractions such as `4/3`.
    fn from_str(s: &str) -> Result<Exponent> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "Inf" | "oo") {
            return Ok(Exponent::Infinity);
        }
        let value = match s.split_once('/') {
            Some((a, b)) => {
                let a: f64 = a.trim().parse().map_err(|_| bad(s))?;
                let b: f64 = b.trim().parse().map_err(|_| bad(s))?;
                a / b
            }
            None => s.parse().map_err(|_| bad(s))?,
        };
        Exponent::new(value)
    }
}

fn bad(s: &str) -> crate::Error {
    crate::Error::Usage(format!("cannot parse exponent {s:?}"))
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// `(sum w_i |z_i|^p)^(1/p)`, or `max |z_i|` over positive weights at `p = inf`.
///
/// Values are scaled by their maximum modulus before exponentiation.
pub fn weighted_norm<I>(items: I, p: Exponent) -> f64
where
    I: IntoIterator<Item = (f64, f64)> + Clone,
{
    let max = items
        .clone()
        .into_iter()
        .filter(|&(w, _)| w > 0.0)
        .fold(0.0f64, |m, (_, a)| m.max(a));
    match p {
        Exponent::Infinity => max,
        Exponent::Finite(_) if max == 0.0 => 0.0,
        Exponent::Finite(e) => {
            let s = compensated_sum(items.into_iter().map(|(w, a)| {
                let r = a / max;
                if e == 2.0 {
                    w * r * r
                } else {
                    w * r.powf(e)
                }
            }));
            max * s.powf(1.0 / e)
        }
    }
}

/// Counting-measure norm of a complex slice.
pub fn lp(values: &[Complex64], p: Exponent) -> f64 {
    weighted_norm(values.iter().map(|z| (1.0, z.norm())), p)
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
}

pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return usage("log-log fit needs at least two paired samples");
    }
    if xs.iter().chain(ys).any(|&v| v <= 0.0 || !v.is_finite()) {
        return usage("log-log fit needs finite positive samples");
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return usage("log-log fit needs at least two distinct abscissae");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok(LogLogFit {
        slope,
        intercept,
        residual: (sse / n).sqrt(),
    })
}

/// Relative closeness with an absolute floor of 1 on the scale.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
