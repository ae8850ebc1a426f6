use alloc::vec::Vec;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Eigenpairs of a Hermitian matrix: real eigenvalues descending, eigenvectors as
/// the matching columns of a unitary matrix.
#[derive(Clone, Debug)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Input must satisfy `‖M − M*‖_F ≤ 1e-10·‖M‖_F`; only its Hermitian part is used.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEig> {
    if !m.is_square() {
        return Err(Error::Precondition("herm_eig needs a square matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::Precondition("herm_eig input must be finite".into()));
    }
    let norm = m.frobenius_norm();
    let skew = (m - &m.adjoint()).frobenius_norm();
    if skew > 1e-10 * norm {
        return Err(Error::Precondition(alloc::format!(
            "matrix is not Hermitian (‖M − M*‖ = {skew:e})"
        )));
    }
    let n = m.rows();
    let mut a = (m + &m.adjoint()).scale(0.5);
    let mut v = ComplexMatrix::identity(n);

    let mut converged = n < 2;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if g <= f64::EPSILON * 0.1 * (app.abs() + aqq.abs()) || g <= f64::EPSILON * 1e-3 * norm {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                let phase = apq / g;
                let zeta = (aqq - app) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let pc = phase.conj();
                // columns: A ← A·Q
                for i in 0..n {
                    let xp = a[(i, p)];
                    let xq = a[(i, q)] * pc;
                    a[(i, p)] = xp * c - xq * s;
                    a[(i, q)] = xp * s + xq * c;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)] * pc;
                    v[(i, p)] = vp * c - vq * s;
                    v[(i, q)] = vp * s + vq * c;
                }
                // rows: A ← Q*·A
                for j in 0..n {
                    let yp = a[(p, j)];
                    let yq = a[(q, j)] * phase;
                    a[(p, j)] = yp * c - yq * s;
                    a[(q, j)] = yp * s + yq * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NumericalFailure("Hermitian Jacobi iteration did not converge"));
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));
    let values = order.iter().map(|&j| diag[j]).collect();
    let vectors = v.select_columns(&order);
    Ok(HermEig { values, vectors })
}
