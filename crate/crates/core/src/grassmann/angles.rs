use alloc::vec::Vec;

use super::chart::{overlap, require_compact_pair};
use super::{AngleSpectrum, ChartPoint, Plane};
use crate::numkernel::{cholesky, herm_eig, inverse, singular_values, solve_lower, ComplexMatrix};
use crate::{Error, Result};

/// Overlap magnitude below which the eigenvalue route refuses to run.
pub const MIN_OVERLAP: f64 = 1e-12;

fn one_plus(m: &ComplexMatrix) -> ComplexMatrix {
    let mut out = m.clone();
    for i in 0..out.rows() {
        out[(i, i)] += 1.0;
    }
    out
}

/// Stationary angles from the eigenvalues of
/// `W = (1+ZZ*)⁻¹(1+ZZ′*)(1+Z′Z′*)⁻¹(1+Z′Z*)`, which are `cos²θᵢ`.
///
/// `W` is brought to Hermitian form by the congruence with the Cholesky factor of
/// `1 + ZZ*` before diagonalizing. Requires `|⟨Z′|Z⟩| > 1e-12`; pairs with smaller
/// overlap must go through [`stationary_angles_svd`].
///
/// For `n > m` the `n − m` vanishing angles are exact: the computation runs on the
/// orthogonal complements, charted by `−Z*`, which share the nonzero angles.
pub fn stationary_angles_w(zp: &ChartPoint, z: &ChartPoint) -> Result<AngleSpectrum> {
    require_compact_pair(zp, z)?;
    if z.n() > z.m() {
        let complement = |p: &ChartPoint| ChartPoint::compact(-&p.z().adjoint());
        let mut angles = stationary_angles_w(&complement(zp)?, &complement(z)?)?.into_vec();
        angles.resize(z.n(), 0.0);
        return AngleSpectrum::new(angles);
    }
    let ov = overlap(zp, z)?.norm();
    if !(ov > MIN_OVERLAP) {
        return Err(Error::Domain(alloc::format!(
            "overlap {ov:e} vanishes; use the orthonormal-basis method"
        )));
    }
    let a = one_plus(&(z.z() * &z.z().adjoint()));
    let cross = one_plus(&(z.z() * &zp.z().adjoint()));
    let other = one_plus(&(zp.z() * &zp.z().adjoint()));
    let inner = &(&cross * &inverse(&other)?) * &cross.adjoint();
    // L⁻¹·inner·L⁻* is similar to W
    let l = cholesky(&a)?;
    let half = solve_lower(&l, &inner);
    let hermitian = solve_lower(&l, &half.adjoint()).adjoint();
    let values = herm_eig(&hermitian)?.values;
    let angles = values
        .iter()
        .map(|&lambda| libm::acos(libm::sqrt(lambda.clamp(0.0, 1.0))))
        .collect();
    AngleSpectrum::new(angles)
}

/// Stationary angles between two planes from orthonormal bases `Q₁`, `Q₂`:
/// `cos θᵢ` are the singular values of `Q₁·Q₂*`. Small angles are taken from the
/// sines (singular values of `Q₁ − Q₁Q₂*Q₂`) to keep full relative accuracy.
pub fn stationary_angles_svd(p: &Plane, q: &Plane) -> Result<AngleSpectrum> {
    if p.ambient_dim() != q.ambient_dim() || p.n() != q.n() {
        return Err(Error::ShapeMismatch {
            expected: p.basis().shape(),
            got: q.basis().shape(),
        });
    }
    let qp = p.orthonormal_basis()?;
    let qq = q.orthonormal_basis()?;
    let cross = &qp * &qq.adjoint();
    let cosines = singular_values(&cross)?;
    let residual = &qp - &(&cross * &qq);
    let mut sines = singular_values(&residual)?;
    sines.reverse();
    let angles: Vec<f64> = cosines
        .iter()
        .zip(&sines)
        .map(|(&c, &s)| {
            if c * c >= 0.5 {
                libm::asin(s.clamp(0.0, 1.0))
            } else {
                libm::acos(c.clamp(0.0, 1.0))
            }
        })
        .collect();
    AngleSpectrum::new(angles)
}

/// Stationary angles between a plane and the base plane `O`.
pub fn angles_to_origin(p: &Plane) -> Result<AngleSpectrum> {
    stationary_angles_svd(p, &Plane::origin(p.n(), p.m()))
}
