//! The Fourier transform on `F_q^n` and the S-operator
//!
//! `Sg(m, m') = q^-1 sum_{t != 0} chi(t m') g(t m)`, mapping functions on
//! `F_q^d` to functions on `F_q^(d+1)`. Output index of `(m, m')` is
//! `idx(m) * q + idx(m')`, consistent with the big-endian grid indexing.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::chars::CharTable;
use crate::error::{domain, usage, Result};
use crate::grid::{GridFunction, RadialFunction, Space, Variety};
use crate::numeric::{weighted_norm, Exponent};

fn check_field(table: &CharTable, space: &Space) -> Result<()> {
    if table.field() != space.field() {
        return usage("character table and function use different fields");
    }
    Ok(())
}

/// One axis pass: `out[.., x, ..] = sum_m in[.., m, ..] chi(sign x m)`.
fn axis_pass(
    table: &CharTable,
    space: &Space,
    input: &[Complex64],
    axis: usize,
    forward: bool,
) -> Vec<Complex64> {
    let f = table.field();
    let q = space.q();
    let stride = q.pow((space.dim() - 1 - axis) as u32);
    (0..input.len())
        .into_par_iter()
        .map(|idx| {
            let digit = (idx / stride) % q;
            let base = idx - digit * stride;
            let x = f.element(digit as u32).expect("digit below q");
            let x = if forward { f.neg(x) } else { x };
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, elem) in f.elements().enumerate() {
                acc += input[base + m * stride] * table.chi_prod(x, elem);
            }
            acc
        })
        .collect()
}

/// `f^(x) = sum_m f(m) chi(-x . m)`, one character transform per axis.
pub fn fourier(table: &CharTable, f: &GridFunction) -> Result<GridFunction> {
    check_field(table, f.space())?;
    let space = f.space();
    let mut values = f.values().to_vec();
    for axis in 0..space.dim() {
        values = axis_pass(table, space, &values, axis, true);
    }
    GridFunction::new(space, values)
}

/// `f(m) = q^-n sum_x F(x) chi(x . m)`.
pub fn inverse_fourier(table: &CharTable, big_f: &GridFunction) -> Result<GridFunction> {
    check_field(table, big_f.space())?;
    let space = big_f.space();
    let mut values = big_f.values().to_vec();
    for axis in 0..space.dim() {
        values = axis_pass(table, space, &values, axis, false);
    }
    let scale = 1.0 / space.size() as f64;
    values.iter_mut().for_each(|z| *z *= scale);
    GridFunction::new(space, values)
}

/// Dense evaluation of the S-operator, `O(q^(d+2))`.
pub fn s_apply(table: &CharTable, g: &GridFunction) -> Result<GridFunction> {
    check_field(table, g.space())?;
    let space = g.space();
    let f = table.field();
    let q = space.q();
    let inv_q = 1.0 / q as f64;
    let lifted = space.lifted();
    let mut out = vec![Complex64::new(0.0, 0.0); lifted.size()];
    out.par_chunks_mut(q).enumerate().for_each(|(m, row)| {
        let along: Vec<Complex64> = f
            .units()
            .map(|t| g.values()[space.scale_index(t, m)])
            .collect();
        for (y, slot) in f.elements().zip(row.iter_mut()) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, v) in f.units().zip(&along) {
                acc += table.chi_prod(t, y) * v;
            }
            *slot = acc * inv_q;
        }
    });
    GridFunction::new(&lifted, out)
}

/// `S` applied to a radial input, as a table `T(k, m')` with
/// `Sg(m, m') = T(||m||, m')`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialImage {
    space: Space,
    values: Vec<Complex64>,
}

impl RadialImage {
    /// The source space `F_q^d`.
    pub fn space(&self) -> &Space {
        &self.space
    }

    /// `T(k, m')` at flat index `idx(k) * q + idx(m')`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, k: usize, y: usize) -> Complex64 {
        self.values[k * self.space.q() + y]
    }

    /// The dense function on `F_q^(d+1)`.
    pub fn expand(&self) -> GridFunction {
        let q = self.space.q();
        let norms = self.space.norm_table();
        let mut values = Vec::with_capacity(norms.len() * q);
        for n in norms {
            let k = n.index() as usize;
            values.extend_from_slice(&self.values[k * q..(k + 1) * q]);
        }
        GridFunction::new(&self.space.lifted(), values).expect("expansion has the lifted size")
    }

    /// `l^s` norm of the expansion, weighting row `k` by `|S_k|`.
    pub fn lp_norm(&self, s: Exponent, sphere_sizes: &[u64]) -> f64 {
        let q = self.space.q();
        weighted_norm(
            self.values
                .iter()
                .enumerate()
                .map(|(i, z)| (sphere_sizes[i / q] as f64, z.norm())),
            s,
        )
    }
}

/// `T(k, m') = q^-1 sum_{t != 0} chi(t m') M[t^2 k]`, `O(q^3)` for any `d`.
pub fn s_apply_radial(table: &CharTable, rf: &RadialFunction) -> Result<RadialImage> {
    check_field(table, rf.space())?;
    let f = table.field();
    let q = f.q() as usize;
    let inv_q = 1.0 / q as f64;
    let squares: Vec<_> = f.units().map(|t| (t, f.mul(t, t))).collect();
    let mut values = vec![Complex64::new(0.0, 0.0); q * q];
    values.par_chunks_mut(q).enumerate().for_each(|(k, row)| {
        let k = f.element(k as u32).expect("k below q");
        let shell: Vec<Complex64> = squares
            .iter()
            .map(|&(_, t2)| rf.values()[f.mul(t2, k).index() as usize])
            .collect();
        for (y, slot) in f.elements().zip(row.iter_mut()) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&(t, _), v) in squares.iter().zip(&shell) {
                acc += table.chi_prod(t, y) * v;
            }
            *slot = acc * inv_q;
        }
    });
    Ok(RadialImage {
        space: rf.space().clone(),
        values,
    })
}

/// `||Sg||_s / ||g||_p`, a lower bound for the `p -> s` operator norm.
pub fn s_norm_ratio(table: &CharTable, g: &GridFunction, p: Exponent, s: Exponent) -> Result<f64> {
    if g.is_zero() {
        return domain("the zero function has no norm ratio");
    }
    let sg = s_apply(table, g)?;
    Ok(sg.lp_norm(s) / g.lp_norm(p))
}

/// Same ratio for a radial input, through the radial fast path.
pub fn radial_norm_ratio(
    table: &CharTable,
    rf: &RadialFunction,
    p: Exponent,
    s: Exponent,
) -> Result<f64> {
    if rf.is_zero() {
        return domain("the zero function has no norm ratio");
    }
    let image = s_apply_radial(table, rf)?;
    let sizes = rf.space().sphere_sizes();
    Ok(image.lp_norm(s, &sizes) / rf.lp_norm(p))
}

/// `||G^||_{L^2(V)}` with the transform taken on the ambient space of `V`.
pub fn restricted_l2_norm_of_hat(
    table: &CharTable,
    big_g: &GridFunction,
    v: &Variety,
) -> Result<f64> {
    if v.space() != big_g.space() {
        return usage("function and variety live on different spaces");
    }
    let hat = fourier(table, big_g)?;
    v.lr_norm(&hat, Exponent::Finite(2.0))
}

/// Kernel view of `S`: `Sg(M) = sum_a K(M, a) g(a)`.
#[derive(Clone, Debug)]
pub struct SOperatorKernel {
    table: CharTable,
    space: Space,
}

impl SOperatorKernel {
    pub fn new(table: &CharTable, space: &Space) -> Result<SOperatorKernel> {
        check_field(table, space)?;
        Ok(SOperatorKernel {
            table: table.clone(),
            space: space.clone(),
        })
    }

    /// Nonzero kernel entries of row `(m, m')`, keyed by input index.
    pub fn row(&self, m: usize, y: usize) -> Vec<(usize, Complex64)> {
        let f = self.table.field();
        let ye = f.element(y as u32).expect("m' below q");
        let inv_q = 1.0 / self.space.q() as f64;
        let mut entries: BTreeMap<usize, Complex64> = BTreeMap::new();
        for t in f.units() {
            *entries.entry(self.space.scale_index(t, m)).or_default() +=
                self.table.chi_prod(t, ye) * inv_q;
        }
        entries
            .into_iter()
            .filter(|(_, z)| z.norm() > 1e-15)
            .collect()
    }

    pub fn row_l1_mass(&self, m: usize, y: usize) -> f64 {
        self.row(m, y).iter().map(|(_, z)| z.norm()).sum()
    }

    /// The `l^inf -> l^inf` norm of `S`.
    pub fn max_row_l1_mass(&self) -> f64 {
        let q = self.space.q();
        (0..self.space.size())
            .into_par_iter()
            .map(|m| (0..q).map(|y| self.row_l1_mass(m, y)).fold(0.0, f64::max))
            .reduce(|| 0.0, f64::max)
    }

    /// A unimodular `g` on the line through `x0 = (0,..,0,1)` whose phases
    /// cancel the kernel of row `(x0, 1)`, so `|Sg(x0, 1)| = (q-1)/q`.
    /// Returns the function and the attaining output index.
    pub fn phase_matched_witness(&self) -> (GridFunction, usize) {
        let f = self.table.field();
        let q = self.space.q();
        let (m, y) = (1usize, 1usize);
        let mut g = vec![Complex64::new(0.0, 0.0); self.space.size()];
        for t in f.units() {
            g[self.space.scale_index(t, m)] = self.table.chi_prod(t, f.one()).conj();
        }
        let g = GridFunction::new(&self.space, g).expect("witness has the right size");
        (g, m * q + y)
    }
}
