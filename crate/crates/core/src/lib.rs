//! Exact computations behind the classification of the rank-10 hyperbolic
//! lattice geometry of zero-entropy surfaces: arbitrary-precision lattice
//! theory, isometry trichotomy and entropy, the extremal genus-1 fibration
//! tables, affine dual-graph analysis, and the Weierstrass-family checks.
//!
//! Everything is exact: rationals, isolating intervals and minimal
//! polynomials instead of floats (floats appear only as display-side
//! approximations).

pub mod arith;
pub mod dualgraph;
pub mod fibration;
pub mod isometry;
pub mod lattice;
pub mod weierstrass;
