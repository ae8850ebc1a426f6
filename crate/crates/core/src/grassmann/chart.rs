use num_complex::Complex64;

use super::{ChartPoint, Plane, Signature};
use crate::numkernel::{determinant, rank_tol, ComplexMatrix, Lu};
use crate::{Error, Result};

/// Plane spanned by the rows `z_i = e_i + Σ_α Z_{iα} e_{n+α}`, i.e. by `(1_n | Z)`.
pub fn chart_to_plane(point: &ChartPoint) -> Plane {
    let n = point.n();
    let basis = ComplexMatrix::identity(n).hstack(point.z());
    Plane::new(basis).expect("hat basis always has full rank")
}

/// Compact chart coordinates `Z = A⁻¹·C` of a plane with basis `(A | C)`.
///
/// Fails with [`Error::NotInChart`] when the leading block of the orthonormalized
/// basis has numerical rank below `n` (tolerance `1e-9`): the plane then meets
/// `O⊥` and lies on the polar divisor.
pub fn plane_to_chart(plane: &Plane) -> Result<ChartPoint> {
    let q = plane.orthonormal_basis()?;
    let n = plane.n();
    let m = plane.m();
    let lead = q.block(0, 0, n, n);
    if rank_tol(&lead, 1e-9)? < n {
        return Err(Error::NotInChart);
    }
    let rest = q.block(0, n, n, m);
    let z = Lu::new(&lead)?.solve(&rest)?;
    ChartPoint::compact(z)
}

fn check_pair(zp: &ChartPoint, z: &ChartPoint) -> Result<()> {
    if zp.signature() != z.signature() {
        return Err(Error::Precondition("chart points have different signatures".into()));
    }
    z.z().check_shape(zp.z().shape())
}

/// Coherent-state overlap `⟨Z′|Z⟩ = det(1_n + ε·Z·Z′*)`, `ε = +1` compact, `−1` noncompact.
///
/// On the compact side this is the Gram determinant `det((z′_i, z_j))` of the hat
/// bases. `overlap(Z′, Z) = conj(overlap(Z, Z′))`.
pub fn overlap(zp: &ChartPoint, z: &ChartPoint) -> Result<Complex64> {
    check_pair(zp, z)?;
    let eps = zp.signature().epsilon();
    let mut m = (z.z() * &zp.z().adjoint()).scale(eps);
    for i in 0..m.rows() {
        m[(i, i)] += 1.0;
    }
    determinant(&m)
}

fn require_compact(p: &ChartPoint) -> Result<()> {
    if p.signature() == Signature::Compact {
        Ok(())
    } else {
        Err(Error::Precondition(
            "Cayley angle and stationary-angle formulas are defined on the compact Grassmannian".into(),
        ))
    }
}

/// `|⟨Z′|Z⟩| / (⟨Z|Z⟩^½·⟨Z′|Z′⟩^½)`, clamped into `[0, 1]`.
pub fn cos_cayley(zp: &ChartPoint, z: &ChartPoint) -> Result<f64> {
    check_pair(zp, z)?;
    require_compact(z)?;
    let cross = overlap(zp, z)?.norm();
    let own = overlap(z, z)?.re;
    let other = overlap(zp, zp)?.re;
    Ok((cross / (libm::sqrt(own) * libm::sqrt(other))).clamp(0.0, 1.0))
}

/// Cayley distance `d_c = arccos(cos_cayley)` in `[0, π/2]`.
pub fn cayley_distance(zp: &ChartPoint, z: &ChartPoint) -> Result<f64> {
    Ok(libm::acos(cos_cayley(zp, z)?))
}

pub(crate) fn require_compact_pair(zp: &ChartPoint, z: &ChartPoint) -> Result<()> {
    check_pair(zp, z)?;
    require_compact(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn scalar(z: Complex64) -> ChartPoint {
        ChartPoint::compact(ComplexMatrix::new(1, 1, alloc::vec![z]).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `det((z′_i, z_j))` with `(a, b) = Σ conj(a_k)·b_k`, straight from the hat bases.
    fn gram_overlap(zp: &ChartPoint, z: &ChartPoint) -> Complex64 {
        let a = chart_to_plane(zp);
        let b = chart_to_plane(z);
        let n = a.n();
        let gram = ComplexMatrix::from_fn(n, n, |i, j| {
            a.basis()
                .row(i)
                .iter()
                .zip(b.basis().row(j))
                .map(|(x, y)| x.conj() * y)
                .sum()
        });
        determinant(&gram).unwrap()
    }

    #[test]
    fn chart_to_plane_examples() {
        let o = chart_to_plane(&ChartPoint::origin(2, 2, Signature::Compact));
        assert_eq!(o, Plane::origin(2, 2));
        let p = chart_to_plane(&scalar(c(1.0, 0.0)));
        assert_eq!(p.basis().row(0), &[c(1.0, 0.0), c(1.0, 0.0)]);
        let z = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let p = chart_to_plane(&ChartPoint::compact(z).unwrap());
        assert_eq!(
            p.basis(),
            &ComplexMatrix::from_real_rows(&[&[1.0, 0.0, 0.0, 1.0], &[0.0, 1.0, 0.0, 0.0]])
        );
    }

    #[test]
    fn plane_to_chart_examples() {
        let z = plane_to_chart(&Plane::origin(2, 2)).unwrap();
        assert!(z.z().frobenius_norm() < 1e-15);
        let scaled = Plane::new(ComplexMatrix::from_real_rows(&[&[2.0, 2.0]])).unwrap();
        assert!((plane_to_chart(&scaled).unwrap().z()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        let perp = Plane::new(ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]))
        .unwrap();
        assert_eq!(plane_to_chart(&perp), Err(Error::NotInChart));
    }

    #[test]
    fn overlap_examples_match_gram_oracle() {
        let o = ChartPoint::origin(1, 1, Signature::Compact);
        assert_eq!(overlap(&o, &o).unwrap(), c(1.0, 0.0));
        let z = scalar(c(1.0, 0.0));
        let zi = scalar(c(0.0, 1.0));
        let zm = scalar(c(-1.0, 0.0));
        assert!((gram_overlap(&zi, &z) - c(1.0, -1.0)).norm() < 1e-15);
        assert!((overlap(&zi, &z).unwrap() - c(1.0, -1.0)).norm() < 1e-15);
        assert!(gram_overlap(&zm, &z).norm() < 1e-15);
        assert!(overlap(&zm, &z).unwrap().norm() < 1e-15);
        assert_eq!(overlap(&z, &zi).unwrap(), overlap(&zi, &z).unwrap().conj());
    }

    #[test]
    fn overlap_rejects_mismatched_inputs() {
        let a = ChartPoint::origin(1, 2, Signature::Compact);
        let b = ChartPoint::origin(2, 1, Signature::Compact);
        assert!(matches!(overlap(&a, &b), Err(Error::ShapeMismatch { .. })));
        let nc = ChartPoint::origin(1, 2, Signature::Noncompact);
        assert!(overlap(&a, &nc).is_err());
        assert!(cos_cayley(&nc, &nc).is_err());
    }

    #[test]
    fn cayley_examples() {
        let z = scalar(c(1.0, 0.0));
        let o = ChartPoint::origin(1, 1, Signature::Compact);
        assert!((cos_cayley(&z, &z).unwrap() - 1.0).abs() < 1e-15);
        assert!((cos_cayley(&z, &o).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(cos_cayley(&scalar(c(-1.0, 0.0)), &z).unwrap() < 1e-15);
        assert!(cayley_distance(&z, &z).unwrap().abs() < 1e-7);
        assert!((cayley_distance(&z, &o).unwrap() - FRAC_PI_4).abs() < 1e-15);
        let orth = cayley_distance(&scalar(c(-1.0, 0.0)), &z).unwrap();
        assert!((orth - core::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
