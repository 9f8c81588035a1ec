//! The S-operator over finite fields.
//!
//! `Sg(m, m') = q^-1 sum_{t in F_q^*} chi(t m') g(t m)` lifts a function on
//! `F_q^d` to one on `F_q^(d+1)`. This crate provides exact field arithmetic,
//! the additive character, dense and radial evaluation of `S`, the Fourier
//! transform, and the machinery used to bound `||S||_{p -> s}` from above and
//! below across field sizes.
//!
//! ```
//! use soperator::analysis::{lower_bound_delta, ExponentPair};
//! use soperator::{s_norm_ratio, CharTable, Exponent, Field, GridFunction, Space};
//!
//! # fn main() -> soperator::Result<()> {
//! let field = Field::of_order(7)?;
//! let table = CharTable::new(&field);
//! let space = Space::new(&field, 2)?;
//! let g = GridFunction::delta(&space, 1);
//! let ratio = s_norm_ratio(&table, &g, Exponent::Finite(1.0), Exponent::Finite(2.0))?;
//! let e = ExponentPair::from_parts(1, 1, 1, 2)?;
//! assert!((ratio - lower_bound_delta(e, 7)).abs() < 1e-12);
//! # Ok(())
//! # }
//! ```

pub mod analysis;
pub mod chars;
pub mod error;
pub mod field;
pub mod grid;
pub mod numeric;
pub mod transform;

pub use chars::CharTable;
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldSpec};
pub use grid::{distance_set, GridFunction, Point, RadialFunction, Space, Variety, VarietyTag};
pub use num_complex::Complex64;
pub use numeric::Exponent;
pub use transform::{
    fourier, inverse_fourier, radial_norm_ratio, restricted_l2_norm_of_hat, s_apply,
    s_apply_radial, s_norm_ratio, RadialImage, SOperatorKernel,
};
