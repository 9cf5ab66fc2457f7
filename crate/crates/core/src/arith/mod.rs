//! Exact arithmetic substrate: arbitrary-precision integers and rationals,
//! integer matrices with Smith normal form, integer polynomials with
//! cyclotomic factorization and real-root isolation.
//!
//! Everything here is immutable after construction and every operation is a
//! pure function.

mod matrix;
mod poly;
pub mod ratmat;
mod roots;

pub use matrix::{
    char_poly, column_span_basis, column_span_saturation, kernel_basis, smith_normal_form,
    IntMatrix, SmithDecomposition,
};
pub use poly::{cyclotomic, euler_phi, poly_gcd, squarefree_decomposition, IntPoly};
pub use roots::{
    default_width, isolate_real_roots_above_one, isolate_real_roots_above_one_width,
    rational_to_f64, refine_interval, sturm_count, RootInterval,
};

/// Exact rational scalar: always reduced, positive denominator.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer scalar.
pub type Integer = num_bigint::BigInt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
}
