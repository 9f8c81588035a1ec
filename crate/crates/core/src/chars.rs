//! The principal additive character `chi(s) = exp(2 pi i Tr(s) / p)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::field::{Field, FieldElement};
use crate::numeric::compensated_sum;

/// Character values for every element of a field, plus the same values
/// indexed by discrete logarithm so that `chi(a * b)` needs no multiplication.
#[derive(Clone, Debug)]
pub struct CharTable {
    field: Field,
    values: Arc<[Complex64]>,
    by_log: Arc<[Complex64]>,
}

impl CharTable {
    pub fn new(field: &Field) -> CharTable {
        let p = field.p();
        let roots: Vec<Complex64> = (0..p)
            .map(|k| {
                if k == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64)
                }
            })
            .collect();
        let values: Arc<[Complex64]> = field
            .elements()
            .map(|s| roots[field.trace(s) as usize])
            .collect();
        let by_log = (0..field.q() as u64 - 1)
            .map(|k| values[field.exp(k).index() as usize])
            .collect();
        CharTable {
            field: field.clone(),
            values,
            by_log,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// All character values in canonical order.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn chi(&self, s: FieldElement) -> Complex64 {
        self.values[s.index() as usize]
    }

    /// `chi(a * b)` via the log tables.
    #[inline]
    pub fn chi_prod(&self, a: FieldElement, b: FieldElement) -> Complex64 {
        match (self.field.log(a), self.field.log(b)) {
            (Some(la), Some(lb)) => {
                let order = self.by_log.len() as u32;
                let k = la + lb;
                self.by_log[(if k >= order { k - order } else { k }) as usize]
            }
            _ => Complex64::new(1.0, 0.0),
        }
    }

    /// `sum_{s in F_q} chi(a s)`: `q` when `a = 0`, otherwise 0.
    pub fn orthogonality_sum(&self, a: FieldElement) -> Complex64 {
        let f = &self.field;
        let re = compensated_sum(f.elements().map(|s| self.chi(f.mul(a, s)).re));
        let im = compensated_sum(f.elements().map(|s| self.chi(f.mul(a, s)).im));
        Complex64::new(re, im)
    }

    /// `sum_{t in F_q} |chi(t) + chi(-t)|^n`.
    pub fn osc_sum(&self, n: u32) -> f64 {
        let f = &self.field;
        compensated_sum(f.elements().map(|t| {
            let z = self.chi(t) + self.chi(f.neg(t));
            z.norm().powi(n as i32)
        }))
    }
}
