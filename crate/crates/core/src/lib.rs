//! Numerical geometry of the complex Grassmann manifold `G_n(C^(n+m))` and its
//! noncompact dual `SU(n,m)/S(U(n)×U(m))`.
//!
//! Points near the base plane `O = span(e_1..e_n)` are described by their
//! Pontrjagin chart coordinates `Z` (an `n×m` complex matrix, the plane spanned
//! by the rows of `(1_n | Z)`) or by normal coordinates `B` at `O`, related by
//! `Z = B·tan(√(B*B))/√(B*B)` (`tanh` on the noncompact dual).
//!
//! The crate is split into three layers:
//!
//! - [`numkernel`]: small dense complex linear algebra (SVD, Hermitian
//!   eigenproblems, LU), matrix functions of `√(B*B)` and finite-difference
//!   Jacobians.
//! - [`grassmann`]: charts, planes, coherent-state overlaps, stationary angles,
//!   Cayley and geodesic distances, the geodesic exponential/logarithm and
//!   Plücker coordinates.
//! - [`loci`]: cut-locus membership, Schubert varieties, the tangent conjugate
//!   locus and numerical conjugate-point detection.
//!
//! Everything here is `no_std` (with `alloc`); file formats, the property
//! suite and the command line live in the `grassmann-tools` crate.
#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod grassmann;
pub mod loci;
pub mod numkernel;

pub use error::{Error, Result};
pub use num_complex::Complex64;
