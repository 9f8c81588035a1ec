//! Upper bounds from interpolation and lower bounds from explicit witnesses.

use num_complex::Complex64;
use rand::Rng;

use crate::analysis::region::{region_contains, ExponentPair, RegionSpec};
use crate::analysis::rng;
use crate::chars::CharTable;
use crate::error::{domain, usage, Result};
use crate::field::{Field, FieldElement};
use crate::grid::{GridFunction, RadialFunction, Space, Variety};
use crate::numeric::Exponent;
use crate::transform::{restricted_l2_norm_of_hat, s_apply, s_apply_radial, RadialImage};

/// `||Sg||_p <= ||c||_1 ||g||_p < 2 ||g||_p` for homogeneous `g` of degree zero,
/// where `Sg = g (x) c` with `c(0) = (q-1)/q`, `c(y) = -1/q` otherwise.
pub const HOMOGENEOUS_RATIO_BOUND: f64 = 2.0;

/// `((q-1)/q)^(1 - 1/s)`, valid on the general region.
pub fn certified_upper_bound(e: ExponentPair, q: u32) -> Result<f64> {
    if !region_contains(&RegionSpec::general(), e) {
        return domain(format!("{e} is outside the general region"));
    }
    let q = q as f64;
    Ok(((q - 1.0) / q).powf(1.0 - e.yf()))
}

/// `||S delta||_s / ||delta||_p = (q-1)^(1/s) q^(1/s - 1)`.
pub fn lower_bound_delta(e: ExponentPair, q: u32) -> f64 {
    let (q, y) = (q as f64, e.yf());
    (q - 1.0).powf(y) * q.powf(y - 1.0)
}

/// `(((q-1)/q)^s + (q-1) q^-s)^(1/s)`, written so that `s = inf` is the limit.
fn indicator_profile(q: f64, e: ExponentPair) -> f64 {
    let base = (q - 1.0) / q;
    match e.s() {
        Exponent::Infinity => base,
        Exponent::Finite(s) => base * (1.0 + (q - 1.0).powf(1.0 - s)).powf(1.0 / s),
    }
}

/// `||S 1_V||_s / ||1_V||_p` for a `k`-dimensional subspace `V`.
pub fn lower_bound_subspace(e: ExponentPair, q: u32, d: usize, k: usize) -> Result<f64> {
    if k == 0 || k > d {
        return usage(format!("subspace dimension {k} not in 1..={d}"));
    }
    let qf = q as f64;
    let k = k as f64;
    Ok(qf.powf(k * e.yf()) * indicator_profile(qf, e) / qf.powf(k * e.xf()))
}

/// Closed form of `||S g0||_s / ||g0||_p` for a plane wave `g0`.
pub fn lower_bound_exponential_ratio(e: ExponentPair, q: u32, d: usize) -> f64 {
    let qf = q as f64;
    let d = d as f64;
    qf.powf(d * e.yf()) * indicator_profile(qf, e) / qf.powf(d * e.xf())
}

/// `|S_0|^(1/s) q^-1 ((q-1)^s + q - 1)^(1/s) / |S_0|^(1/p)`.
pub fn sphere_j0_closed_form(e: ExponentPair, q: u32, size0: u64) -> f64 {
    let n = size0 as f64;
    let qf = q as f64;
    n.powf(e.yf()) * indicator_profile(qf, e) / n.powf(e.xf())
}

/// Images `S 1_{S_j}` for every `j`, via the radial fast path.
#[derive(Clone, Debug)]
pub struct RadialShells {
    sizes: Vec<u64>,
    images: Vec<RadialImage>,
}

impl RadialShells {
    pub fn new(table: &CharTable, d: usize) -> Result<RadialShells> {
        let space = Space::new(table.field(), d)?;
        if d < 2 {
            return usage("spheres need dimension at least 2");
        }
        let sizes = space.sphere_sizes();
        let images = table
            .field()
            .elements()
            .map(|j| s_apply_radial(table, &RadialFunction::shell(&space, j)))
            .collect::<Result<_>>()?;
        Ok(RadialShells { sizes, images })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn image(&self, j: FieldElement) -> &RadialImage {
        &self.images[j.index() as usize]
    }

    /// `||S 1_{S_j}||_s / |S_j|^(1/p)`, or `None` for an empty shell.
    pub fn ratio(&self, j: FieldElement, e: ExponentPair) -> Option<f64> {
        self.ratio_at(j.index() as usize, e)
    }

    fn ratio_at(&self, j: usize, e: ExponentPair) -> Option<f64> {
        let n = self.sizes[j];
        if n == 0 {
            return None;
        }
        let num = self.images[j].lp_norm(e.s(), &self.sizes);
        Some(num / (n as f64).powf(e.xf()))
    }

    /// Largest shell ratio over every `j`.
    pub fn best_ratio(&self, e: ExponentPair) -> f64 {
        (0..self.sizes.len())
            .filter_map(|j| self.ratio_at(j, e))
            .fold(0.0, f64::max)
    }

    /// `max_j ||S 1_{S_j}||_s / |S_j|`.
    pub fn p1_norm(&self, s: Exponent) -> f64 {
        self.sizes
            .iter()
            .zip(&self.images)
            .filter(|(&n, _)| n > 0)
            .map(|(&n, img)| img.lp_norm(s, &self.sizes) / n as f64)
            .fold(0.0, f64::max)
    }
}

/// Shell-indicator ratio for `j` in `{0, 1}` on `F_q^d`.
pub fn lower_bound_sphere_radial(e: ExponentPair, field: &Field, d: usize, j: u8) -> Result<f64> {
    if j > 1 {
        return usage(format!("sphere family needs j in {{0, 1}}, got {j}"));
    }
    let table = CharTable::new(field);
    let shells = RadialShells::new(&table, d)?;
    shells
        .ratio(field.from_int(j as i64), e)
        .ok_or_else(|| crate::Error::Domain(format!("S_{j} is empty")))
}

/// Exact radial `l^1 -> l^s` norm of `S`.
pub fn radial_p1_norm_exact(field: &Field, d: usize, s: Exponent) -> Result<f64> {
    let table = CharTable::new(field);
    Ok(RadialShells::new(&table, d)?.p1_norm(s))
}

/// `g0(m) = chi(a . m)` with `a` the least point on `S_j`.
pub fn exponential_witness(
    table: &CharTable,
    space: &Space,
    j: FieldElement,
) -> Result<GridFunction> {
    let a = space
        .least_point_on_sphere(j)
        .ok_or_else(|| crate::Error::Domain(format!("S_{j} is empty")))?;
    let mut coords = vec![FieldElement::default(); space.dim()];
    Ok(GridFunction::from_fn(space, |idx| {
        space.fill_coords(idx, &mut coords);
        let f = space.field();
        let dot = coords
            .iter()
            .zip(a.coords())
            .fold(f.zero(), |acc, (&m, &ai)| f.add(acc, f.mul(m, ai)));
        table.chi(dot)
    }))
}

/// `(||S g0||_2, ||(S g0)^||_{L^2(H_j)})`.
pub fn lower_bound_exponential(field: &Field, d: usize, j: FieldElement) -> Result<(f64, f64)> {
    if j.is_zero() {
        return domain("the exponential family needs j != 0");
    }
    let table = CharTable::new(field);
    let space = Space::new(field, d)?;
    let g0 = exponential_witness(&table, &space, j)?;
    let sg = s_apply(&table, &g0)?;
    let h = Variety::h_variety(&space, j)?;
    Ok((
        sg.lp_norm(Exponent::Finite(2.0)),
        restricted_l2_norm_of_hat(&table, &sg, &h)?,
    ))
}

/// A random degree-zero homogeneous function: one value per projective
/// class and one at the origin.
pub fn random_homogeneous<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> GridFunction {
    let f = space.field();
    let mut coords = vec![FieldElement::default(); space.dim()];
    let mut values = vec![Complex64::new(0.0, 0.0); space.size()];
    let draw = |rng: &mut R| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    values[0] = draw(rng);
    for idx in 1..space.size() {
        space.fill_coords(idx, &mut coords);
        let lead = *coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        if lead == f.one() {
            values[idx] = draw(rng);
        } else {
            let rep = space.scale_index(f.inv(lead).expect("lead is nonzero"), idx);
            values[idx] = values[rep];
        }
    }
    GridFunction::new(space, values).expect("values have the space size")
}

/// `||Sg||_p / ||g||_p` for `trials` random homogeneous `g`.
pub fn homogeneous_class_ratios(
    field: &Field,
    d: usize,
    p: Exponent,
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let table = CharTable::new(field);
    let space = Space::new(field, d)?;
    let mut rng = rng(seed, 0);
    (0..trials)
        .map(|_| {
            let g = random_homogeneous(&space, &mut rng);
            let sg = s_apply(&table, &g)?;
            Ok(sg.lp_norm(p) / g.lp_norm(p))
        })
        .collect()
}

/// Largest ratio from [`homogeneous_class_ratios`].
pub fn homogeneous_class_ratio(
    field: &Field,
    d: usize,
    p: Exponent,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    Ok(homogeneous_class_ratios(field, d, p, trials, seed)?
        .into_iter()
        .fold(0.0, f64::max))
}
