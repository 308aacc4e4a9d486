//! Exact arithmetic: Q and F_p scalars, dense matrices over fields and Z,
//! weight-homogeneous polynomials. No floating point is used anywhere.

mod field;
mod matrix;
mod poly;

pub use field::{is_prime, Field, FieldElem};
pub use matrix::{
    hermite_normal_form, integer_kernel, primitive_integer_vector, reduce_int_mod_p,
    reduce_mod_p, rref, Echelon, FieldMat, IntMat, RowSpace,
};
pub use poly::{monomials_of_weight, Exponent, Poly};

pub(crate) use matrix::{nonzero_rows, saturated_basis};

use crate::error::Result;
use crate::lattice::Lattice;

/// Saturation of the row lattice of `b`: the lattice `span_Q(rows) ∩ Z^n`,
/// returned with its canonical Hermite basis.
pub fn saturate(b: &IntMat) -> Result<Lattice> {
    Ok(Lattice::from_canonical(b.cols(), saturated_basis(b)?))
}
