//! Matrix functions of `√(B*B)` evaluated through the SVD.

use core::f64::consts::{FRAC_PI_2, PI};

use super::{svd, ComplexMatrix, SvdResult};
use crate::{Error, Result};

/// Distance to a pole below which `tan` is treated as singular.
pub const POLE_TOL: f64 = 1e-9;

/// `B·f(√(B*B))/√(B*B)`, computed as `U·f(Σ)·V*` from `B = U·Σ·V*`.
///
/// Zero singular values contribute nothing (the `f(0)/0 := f′(0)` limit times a
/// zero component). `f` returns `None` where it is singular, which becomes a
/// [`Error::Domain`].
pub fn matrix_phi(b: &ComplexMatrix, f: impl Fn(f64) -> Option<f64>) -> Result<ComplexMatrix> {
    try_matrix_phi(b, |sigma| {
        f(sigma).ok_or_else(|| Error::Domain(alloc::format!("function is singular at singular value {sigma}")))
    })
}

/// Like [`matrix_phi`] with a fallible scalar function whose error is propagated.
pub fn try_matrix_phi(b: &ComplexMatrix, f: impl Fn(f64) -> Result<f64>) -> Result<ComplexMatrix> {
    let dec = svd(b)?;
    phi_from_svd(&dec, f)
}

pub(crate) fn phi_from_svd(dec: &SvdResult, f: impl Fn(f64) -> Result<f64>) -> Result<ComplexMatrix> {
    let mut values = alloc::vec::Vec::with_capacity(dec.s.len());
    for &sigma in &dec.s {
        values.push(if sigma == 0.0 { 0.0 } else { f(sigma)? });
    }
    Ok(dec.recompose_with(&values))
}

/// `g(√(B·B*))`, an `n×n` Hermitian matrix for `n×m` `B`. Directions in the kernel
/// of `B*` receive `g(0)`.
pub fn left_gram_function(b: &ComplexMatrix, g: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let dec = svd(b)?;
    let n = b.rows();
    let g0 = g(0.0);
    // g0·I + U·diag(g(σ) − g0)·U*
    let k = dec.s.len();
    let shifted = ComplexMatrix::from_fn(n, k, |i, j| dec.u[(i, j)] * (g(dec.s[j]) - g0));
    let mut out = &shifted * &dec.u.adjoint();
    for i in 0..n {
        out[(i, i)] += g0;
    }
    Ok(out)
}

/// Scalar functions used with [`matrix_phi`].
pub mod scalar {
    use super::*;

    /// Distance from `x` to the nearest pole `π/2 + kπ` of `tan`.
    pub fn tan_pole_distance(x: f64) -> f64 {
        let k = libm::round((x - FRAC_PI_2) / PI);
        (x - (FRAC_PI_2 + k * PI)).abs()
    }

    /// `tan`, or `None` within [`POLE_TOL`] of a pole.
    pub fn tan(x: f64) -> Option<f64> {
        (tan_pole_distance(x) > POLE_TOL).then(|| libm::tan(x))
    }

    pub fn tanh(x: f64) -> Option<f64> {
        Some(libm::tanh(x))
    }

    pub fn atan(x: f64) -> Option<f64> {
        Some(libm::atan(x))
    }

    /// `artanh`, defined on `[0, 1)` for singular values.
    pub fn atanh(x: f64) -> Option<f64> {
        (x.abs() < 1.0).then(|| libm::atanh(x))
    }

    pub fn identity(x: f64) -> Option<f64> {
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_3;
    use core::f64::consts::FRAC_PI_6;

    #[test]
    fn zero_matrix_maps_to_zero() {
        let z = matrix_phi(&ComplexMatrix::zeros(2, 3), scalar::tan).unwrap();
        assert_eq!(z, ComplexMatrix::zeros(2, 3));
    }

    #[test]
    fn diagonal_tan_and_tanh() {
        let b = ComplexMatrix::from_real_diagonal(2, 2, &[FRAC_PI_6, FRAC_PI_3]);
        let z = matrix_phi(&b, scalar::tan).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(2, 2, &[libm::tan(FRAC_PI_6), libm::tan(FRAC_PI_3)]);
        assert!(z.max_abs_diff(&expected) < 1e-10);
        assert!((z[(0, 0)].re - 0.57735).abs() < 1e-5);
        assert!((z[(1, 1)].re - 1.73205).abs() < 1e-5);

        let one = ComplexMatrix::from_real_diagonal(1, 1, &[1.0]);
        let t = matrix_phi(&one, scalar::tanh).unwrap();
        assert!((t[(0, 0)].re - 0.76159).abs() < 1e-5);
    }

    #[test]
    fn tan_pole_is_a_domain_error() {
        let b = ComplexMatrix::from_real_diagonal(1, 2, &[FRAC_PI_2 + 1e-12]);
        assert!(matches!(matrix_phi(&b, scalar::tan), Err(Error::Domain(_))));
        assert!(scalar::tan(3.0 * FRAC_PI_2).is_none());
        assert!(scalar::tan(FRAC_PI_2 + 1e-6).is_some());
    }

    #[test]
    fn negative_diagonal_keeps_sign() {
        let b = ComplexMatrix::from_real_diagonal(2, 2, &[-0.5, 0.25]);
        let z = matrix_phi(&b, scalar::tan).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(2, 2, &[libm::tan(-0.5), libm::tan(0.25)]);
        assert!(z.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn gram_function_pads_with_g0() {
        // B is 3x1: √(BB*) has eigenvalues |b| and 0 (twice)
        let b = ComplexMatrix::from_real_rows(&[&[0.3], &[0.0], &[0.4]]);
        let c = left_gram_function(&b, libm::cos).unwrap();
        let r = 0.5;
        let expected = ComplexMatrix::from_real_rows(&[
            &[1.0 + (libm::cos(r) - 1.0) * 0.36, 0.0, (libm::cos(r) - 1.0) * 0.48],
            &[0.0, 1.0, 0.0],
            &[(libm::cos(r) - 1.0) * 0.48, 0.0, 1.0 + (libm::cos(r) - 1.0) * 0.64],
        ]);
        assert!(c.max_abs_diff(&expected) < 1e-14);
    }
}
