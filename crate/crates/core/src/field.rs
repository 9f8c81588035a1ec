//! Exact arithmetic in `F_q` for odd prime powers `q = p^alpha`.
//!
//! Elements are stored by their canonical index `sum coeffs[i] * p^i`, where
//! `coeffs` is the polynomial-basis representation modulo a monic irreducible
//! polynomial of degree `alpha`. Index 0 is the additive identity and index 1
//! the multiplicative identity.
//!
//! A [`Field`] is built once from a validated [`FieldSpec`] and carries
//! discrete log/exp tables together with trace, quadratic character and
//! square-root tables, so every per-element operation used by the transforms
//! is a table lookup.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};

/// Largest supported prime field order.
pub const MAX_PRIME_ORDER: u32 = 1 << 16;
/// Largest supported order for proper prime powers (`alpha > 1`).
pub const MAX_PRIME_POWER_ORDER: u32 = 1 << 12;

/// Validated description of `F_q`: characteristic, degree and modulus.
///
/// The modulus is a coefficient list, low to high, of a monic irreducible
/// polynomial of degree `alpha` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec", into = "RawFieldSpec")]
pub struct FieldSpec {
    p: u32,
    alpha: u32,
    modulus: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawFieldSpec {
    p: u32,
    alpha: u32,
    modulus: Vec<u32>,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawFieldSpec) -> Result<Self> {
        FieldSpec::new(raw.p, raw.alpha, raw.modulus)
    }
}

impl From<FieldSpec> for RawFieldSpec {
    fn from(spec: FieldSpec) -> Self {
        RawFieldSpec {
            p: spec.p,
            alpha: spec.alpha,
            modulus: spec.modulus,
        }
    }
}

impl FieldSpec {
    /// Validates `(p, alpha, modulus)`.
    pub fn new(p: u32, alpha: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return usage(format!("characteristic {p} is not prime"));
        }
        if p == 2 {
            return usage("even characteristic is not supported");
        }
        if alpha == 0 {
            return usage("field degree must be at least 1");
        }
        let q = checked_order(p, alpha)?;
        if modulus.len() != alpha as usize + 1 {
            return usage(format!(
                "modulus must have {} coefficients, got {}",
                alpha + 1,
                modulus.len()
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return usage(format!("modulus coefficients must lie in [0, {p})"));
        }
        if modulus[alpha as usize] != 1 {
            return usage("modulus must be monic");
        }
        if alpha > 1 && !is_irreducible(&modulus, p) {
            return usage(format!("modulus {modulus:?} is reducible over F_{p}"));
        }
        debug_assert!(q >= 3);
        Ok(FieldSpec { p, alpha, modulus })
    }

    /// The prime field `F_p` with the trivial modulus `t`.
    pub fn prime(p: u32) -> Result<Self> {
        FieldSpec::new(p, 1, vec![0, 1])
    }

    /// The field of order `q`, using the built-in modulus for
    /// `q in {9, 25, 27, 49}` and the least irreducible monic polynomial
    /// (in canonical order) for any other prime power.
    pub fn for_order(q: u32) -> Result<Self> {
        let (p, alpha) = prime_power(q)?;
        if alpha == 1 {
            return FieldSpec::prime(p);
        }
        let modulus = match q {
            9 => vec![1, 0, 1],
            25 => vec![2, 0, 1],
            27 => vec![1, 2, 0, 1],
            49 => vec![1, 0, 1],
            _ => least_irreducible(p, alpha)?,
        };
        FieldSpec::new(p, alpha, modulus)
    }

    /// The field of order `q` with a caller-supplied modulus.
    pub fn with_modulus(q: u32, modulus: Vec<u32>) -> Result<Self> {
        let (p, alpha) = prime_power(q)?;
        FieldSpec::new(p, alpha, modulus)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.alpha)
    }
}

fn checked_order(p: u32, alpha: u32) -> Result<u32> {
    let q = (p as u64).checked_pow(alpha).unwrap_or(u64::MAX);
    let cap = if alpha == 1 {
        MAX_PRIME_ORDER
    } else {
        MAX_PRIME_POWER_ORDER
    };
    if q > cap as u64 {
        return usage(format!(
            "field order {p}^{alpha} exceeds the supported cap {cap}"
        ));
    }
    Ok(q as u32)
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^alpha`; rejects anything that is not an odd prime power.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 3 {
        return usage(format!("{q} is not an odd prime power"));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap_or(q);
    let mut rest = q;
    let mut alpha = 0;
    while rest % p == 0 {
        rest /= p;
        alpha += 1;
    }
    if rest != 1 {
        return usage(format!("{q} is not a prime power"));
    }
    if p == 2 {
        return usage(format!("{q} has even characteristic"));
    }
    checked_order(p, alpha)?;
    Ok((p, alpha))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over F_p, coefficient lists low to high.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo `b` (`b` nonzero, leading coefficient invertible).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(*b.last().unwrap(), p) as u64;
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - db;
        let factor = *r.last().unwrap() as u64 * lead_inv % p as u64;
        for (i, &c) in b.iter().enumerate() {
            let sub = factor * c as u64 % p as u64;
            r[i + shift] = ((r[i + shift] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, modulus, p)
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    for deg in 1..=n / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut cand = digits(code as u32, p, deg);
            cand.push(1);
            let r = poly_rem(modulus, &cand, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, alpha: u32) -> Result<Vec<u32>> {
    let count = p.pow(alpha);
    for code in 0..count {
        let mut cand = digits(code, p, alpha as usize);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return Ok(cand);
        }
    }
    domain(format!(
        "no irreducible polynomial of degree {alpha} over F_{p}"
    ))
}

fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// An element of `F_q`, identified by its canonical index in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const NO_ROOT: u32 = u32::MAX;

struct Tables {
    spec: FieldSpec,
    q: u32,
    generator: u32,
    // exp[k] = g^k for k in [0, q-1); log[0] is unused.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    trace: Vec<u32>,
    eta: Vec<i8>,
    sqrt: Vec<u32>,
}

/// `F_q` with precomputed arithmetic tables. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.t.q)
            .field("spec", &self.t.spec)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || self.t.spec == other.t.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let q = spec.q();
        let p = spec.p;
        let alpha = spec.alpha as usize;
        let slow_mul = |a: u32, b: u32| -> u32 {
            let r = poly_mulmod(&digits(a, p, alpha), &digits(b, p, alpha), &spec.modulus, p);
            undigits(&r, p)
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut r = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };

        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (2..q)
            .chain(std::iter::once(1))
            .find(|&c| {
                factors
                    .iter()
                    .all(|&r| slow_pow(c, (order / r) as u64) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..order {
            exp.push(x);
            log[x as usize] = k;
            x = slow_mul(x, generator);
        }

        let mut t = Tables {
            spec,
            q,
            generator,
            exp,
            log,
            neg: Vec::new(),
            trace: Vec::new(),
            eta: Vec::new(),
            sqrt: Vec::new(),
        };
        let mut field = Field { t: Arc::new(t) };

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let c: Vec<u32> = digits(a, p, alpha)
                    .into_iter()
                    .map(|d| (p - d) % p)
                    .collect();
                undigits(&c, p)
            })
            .collect();
        let trace: Vec<u32> = (0..q)
            .map(|a| {
                let x = FieldElement(a);
                let mut acc = FieldElement(0);
                let mut frob = x;
                for _ in 0..alpha {
                    acc = field.add(acc, frob);
                    frob = field.pow(frob, p as u64);
                }
                debug_assert!(acc.0 < p, "trace must land in the prime subfield");
                acc.0
            })
            .collect();
        let half = ((q - 1) / 2) as u64;
        let eta: Vec<i8> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else if field.pow(FieldElement(a), half).0 == 1 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let mut sqrt = vec![NO_ROOT; q as usize];
        for r in 0..q {
            let s = field.mul(FieldElement(r), FieldElement(r)).0 as usize;
            if r < sqrt[s] {
                sqrt[s] = r;
            }
        }

        t = Arc::try_unwrap(field.t).unwrap_or_else(|_| unreachable!());
        t.neg = neg;
        t.trace = trace;
        t.eta = eta;
        t.sqrt = sqrt;
        field = Field { t: Arc::new(t) };
        field
    }

    /// Shorthand for `Field::new(FieldSpec::for_order(q)?)`.
    pub fn of_order(q: u32) -> Result<Field> {
        Ok(Field::new(FieldSpec::for_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.t.spec
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    pub fn p(&self) -> u32 {
        self.t.spec.p
    }

    pub fn alpha(&self) -> u32 {
        self.t.spec.alpha
    }

    /// The primitive element used for the log/exp tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.t.generator)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Element with canonical index `idx`.
    pub fn element(&self, idx: u32) -> Result<FieldElement> {
        if idx >= self.t.q {
            return usage(format!("index {idx} is not an element of F_{}", self.t.q));
        }
        Ok(FieldElement(idx))
    }

    /// Image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.alpha() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return usage(format!(
                "expected {} coefficients in [0, {})",
                self.alpha(),
                self.p()
            ));
        }
        Ok(FieldElement(undigits(coeffs, self.p())))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0, self.p(), self.alpha() as usize)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.q).map(FieldElement)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.t.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.t.spec.p;
        if self.t.spec.alpha == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            place *= p;
            x /= p;
            y /= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let order = self.t.q - 1;
        let k = self.t.log[a.0 as usize] + self.t.log[b.0 as usize];
        FieldElement(self.t.exp[(if k >= order { k - order } else { k }) as usize])
    }

    /// `a^(q-2)`; zero has no inverse.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return domain("zero has no multiplicative inverse");
        }
        Ok(self.pow(a, (self.t.q - 2) as u64))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Discrete logarithm to the base [`Field::generator`]; `None` at zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.t.log[a.0 as usize])
    }

    /// `generator^k`.
    #[inline]
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.t.exp[(k % (self.t.q as u64 - 1)) as usize])
    }

    /// Absolute trace to `F_p`, as a residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u32 {
        self.t.trace[a.0 as usize]
    }

    /// Quadratic character: 1 on nonzero squares, -1 on non-squares, 0 at 0.
    #[inline]
    pub fn eta(&self, a: FieldElement) -> i8 {
        self.t.eta[a.0 as usize]
    }

    /// Square root with the smaller canonical index, if one exists.
    pub fn sqrt(&self, a: FieldElement) -> Option<FieldElement> {
        let r = self.t.sqrt[a.0 as usize];
        (r != NO_ROOT).then_some(FieldElement(r))
    }

    /// `q mod 4 == 3`, i.e. `-1` is not a square.
    pub fn is_three_mod_four(&self) -> bool {
        self.t.q % 4 == 3
    }
}
