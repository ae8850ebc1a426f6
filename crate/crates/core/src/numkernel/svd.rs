use alloc::vec::Vec;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Thin singular value decomposition `M = U·diag(S)·V*`.
///
/// For an `r×c` input, `U` is `r×k`, `V` is `c×k` with `k = min(r, c)`, and both
/// have orthonormal columns (columns belonging to zero singular values included).
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    /// Singular values, descending.
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdResult {
    /// `U·diag(values)·V*` for a replacement spectrum.
    pub fn recompose_with(&self, values: &[f64]) -> ComplexMatrix {
        assert_eq!(values.len(), self.s.len());
        let k = values.len();
        let us = ComplexMatrix::from_fn(self.u.rows(), k, |i, j| self.u[(i, j)] * values[j]);
        &us * &self.v.adjoint()
    }

    pub fn recompose(&self) -> ComplexMatrix {
        self.recompose_with(&self.s)
    }
}

/// Singular value decomposition by one-sided (Hestenes) complex Jacobi rotations.
pub fn svd(m: &ComplexMatrix) -> Result<SvdResult> {
    if !m.is_finite() {
        return Err(Error::Precondition("svd input must be finite".into()));
    }
    if m.rows() < m.cols() {
        let t = svd_tall(&m.adjoint())?;
        return Ok(SvdResult { u: t.v, s: t.s, v: t.u });
    }
    svd_tall(m)
}

fn svd_tall(m: &ComplexMatrix) -> Result<SvdResult> {
    let (r, c) = m.shape();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(c);
    let tol = f64::EPSILON * (r.max(1) as f64);
    // columns below this squared norm are roundoff and rotating them never settles
    let floor = {
        let f = tol * m.frobenius_norm();
        f * f
    };

    let mut converged = c < 2;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..c {
            for q in p + 1..c {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for i in 0..r {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)];
                    alpha += ap.norm_sqr();
                    beta += aq.norm_sqr();
                    gamma += ap.conj() * aq;
                }
                let g = gamma.norm();
                if g == 0.0 || alpha.min(beta) <= floor || g <= tol * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let phase_conj = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let cs = 1.0 / libm::sqrt(1.0 + t * t);
                let sn = cs * t;
                rotate_columns(&mut a, p, q, cs, sn, phase_conj);
                rotate_columns(&mut v, p, q, cs, sn, phase_conj);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NumericalFailure("one-sided Jacobi SVD did not converge"));
    }

    let norms: Vec<f64> = (0..c)
        .map(|j| libm::sqrt((0..r).map(|i| a[(i, j)].norm_sqr()).sum()))
        .collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let smax = norms.iter().copied().fold(0.0, f64::max);
    let mut u = ComplexMatrix::zeros(r, c);
    let mut s = Vec::with_capacity(c);
    let mut v_sorted = ComplexMatrix::zeros(c, c);
    let mut missing = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        let sigma = norms[j];
        if sigma > 0.0 && sigma > smax * 1e-300 {
            for i in 0..r {
                u[(i, k)] = a[(i, j)] / sigma;
            }
            s.push(sigma);
        } else {
            missing.push(k);
            s.push(0.0);
        }
        for i in 0..c {
            v_sorted[(i, k)] = v[(i, j)];
        }
    }
    complete_columns(&mut u, &missing);
    Ok(SvdResult { u, s, v: v_sorted })
}

fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, cs: f64, sn: f64, phase_conj: Complex64) {
    for i in 0..m.rows() {
        let xp = m[(i, p)];
        let xq = m[(i, q)] * phase_conj;
        m[(i, p)] = xp * cs - xq * sn;
        m[(i, q)] = xp * sn + xq * cs;
    }
}

/// Fills the listed columns with unit vectors orthogonal to every other column.
fn complete_columns(u: &mut ComplexMatrix, missing: &[usize]) {
    if missing.is_empty() {
        return;
    }
    let r = u.rows();
    let mut filled: Vec<usize> = (0..u.cols()).filter(|j| !missing.contains(j)).collect();
    let mut candidate = 0;
    for &k in missing {
        loop {
            assert!(candidate < r, "cannot complete an orthonormal basis");
            let mut w = alloc::vec![Complex64::new(0.0, 0.0); r];
            w[candidate] = Complex64::new(1.0, 0.0);
            candidate += 1;
            for _pass in 0..2 {
                for &j in &filled {
                    let proj: Complex64 = (0..r).map(|i| u[(i, j)].conj() * w[i]).sum();
                    for (i, wi) in w.iter_mut().enumerate() {
                        *wi -= proj * u[(i, j)];
                    }
                }
            }
            let norm = libm::sqrt(w.iter().map(|z| z.norm_sqr()).sum());
            if norm > 1e-8 {
                for (i, wi) in w.iter().enumerate() {
                    u[(i, k)] = wi / norm;
                }
                filled.push(k);
                break;
            }
        }
    }
}

/// Singular values only, descending.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(m)?.s)
}

/// Numerical rank: singular values strictly above `tol·max(S₀, 1)`.
pub fn rank_tol(m: &ComplexMatrix, tol: f64) -> Result<usize> {
    if !(tol >= 0.0) {
        return Err(Error::Precondition("rank tolerance must be nonnegative".into()));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    let s = singular_values(m)?;
    let threshold = tol * s[0].max(1.0);
    Ok(s.iter().filter(|&&x| x > threshold).count())
}
