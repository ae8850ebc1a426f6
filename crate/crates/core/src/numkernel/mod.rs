//! Dense complex linear algebra and numerical differentiation.

mod eig;
mod factor;
mod fd;
mod matrix;
mod phi;
mod svd;

pub use eig::{herm_eig, HermEig};
pub use factor::{cholesky, determinant, inverse, orthonormal_rows, solve_lower, Lu};
pub use fd::{fd_jacobian, DEFAULT_STEP};
pub use matrix::{ComplexMatrix, RealMatrix};
pub(crate) use phi::phi_from_svd;
pub use phi::{left_gram_function, matrix_phi, scalar, try_matrix_phi, POLE_TOL};
pub use svd::{rank_tol, singular_values, svd, SvdResult};
