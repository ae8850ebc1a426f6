use alloc::vec::Vec;

use super::RealMatrix;
use crate::{Error, Result};

/// Default central-difference step for unit-scale inputs.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Central-difference Jacobian of `map` at `x`: entry `(i, j)` is
/// `(map(x + h·e_j)_i − map(x − h·e_j)_i) / 2h`.
///
/// Errors from `map` at any stencil point are propagated unchanged.
pub fn fd_jacobian(mut map: impl FnMut(&[f64]) -> Result<Vec<f64>>, x: &[f64], step: f64) -> Result<RealMatrix> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Precondition("finite-difference step must be positive".into()));
    }
    let mut probe = x.to_vec();
    let mut columns = Vec::with_capacity(x.len());
    let mut out_len = None;
    for j in 0..x.len() {
        probe[j] = x[j] + step;
        let plus = map(&probe)?;
        probe[j] = x[j] - step;
        let minus = map(&probe)?;
        probe[j] = x[j];
        if plus.len() != minus.len() || out_len.is_some_and(|len| len != plus.len()) {
            return Err(Error::Precondition(
                "map output length changed between evaluations".into(),
            ));
        }
        out_len = Some(plus.len());
        columns.push(
            plus.iter()
                .zip(&minus)
                .map(|(p, m)| (p - m) / (2.0 * step))
                .collect::<Vec<f64>>(),
        );
    }
    let rows = match out_len {
        Some(len) => len,
        None => map(x)?.len(),
    };
    let mut jac = RealMatrix::zeros(rows, x.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            jac[(i, j)] = v;
        }
    }
    Ok(jac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn linear_map_is_exact() {
        let a = [[1.0, -2.0, 0.5], [3.0, 0.0, 4.0]];
        let map = |x: &[f64]| -> Result<Vec<f64>> {
            Ok(a.iter()
                .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
                .collect())
        };
        let at_origin = fd_jacobian(map, &[0.0, 0.0, 0.0], DEFAULT_STEP).unwrap();
        // away from the origin the roundoff floor is ε·|A·x|/h
        let elsewhere = fd_jacobian(map, &[0.3, -1.0, 2.0], DEFAULT_STEP).unwrap();
        for i in 0..2 {
            for k in 0..3 {
                assert!((at_origin[(i, k)] - a[i][k]).abs() < 1e-12);
                assert!((elsewhere[(i, k)] - a[i][k]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn tan_derivatives() {
        let tan = |x: &[f64]| -> Result<Vec<f64>> { Ok(vec![libm::tan(x[0])]) };
        let at0 = fd_jacobian(tan, &[0.0], DEFAULT_STEP).unwrap();
        assert!((at0[(0, 0)] - 1.0).abs() < 1e-8);
        let at1 = fd_jacobian(tan, &[1.0], 1e-4).unwrap();
        let sec2 = 1.0 / libm::cos(1.0).powi(2);
        assert!((sec2 - 3.42552).abs() < 1e-5);
        assert!((at1[(0, 0)] - sec2).abs() < 1e-6);
    }

    #[test]
    fn evaluation_errors_propagate() {
        let failing = |x: &[f64]| -> Result<Vec<f64>> {
            if x[0] > 0.0 {
                Err(Error::Domain("boom".into()))
            } else {
                Ok(vec![x[0]])
            }
        };
        assert_eq!(
            fd_jacobian(failing, &[0.0], 1e-3).unwrap_err(),
            Error::Domain("boom".into())
        );
        assert!(fd_jacobian(failing, &[0.0], 0.0).is_err());
    }
}
