//! Geodesic exponential and logarithm at `O` in normal coordinates.
//!
//! Geodesics through `O` are the one-parameter subgroups
//! `t ↦ exp(t·[[0, B], [∓B*, 0]])·O` (upper sign compact). In the chart they read
//! `Z(t) = tB·ta(t√(B*B))/(t√(B*B))` with `ta = tan` (compact) or `tanh`
//! (noncompact), and they solve `Z̈ − 2ε·Ż·Z*·(1 + εZZ*)⁻¹·Ż = 0`.

use super::{ChartPoint, Plane, Signature, TangentCoord};
use crate::numkernel::{phi_from_svd, scalar, svd, ComplexMatrix, POLE_TOL};
use crate::{Error, Result};

/// Geodesic exponential `Exp_O`: `B ↦ Z = B·ta(√(B*B))/√(B*B)`.
///
/// On the compact side a singular value of `B` within `1e-9` of `π/2 + kπ`
/// sends the point out of the chart ([`Error::ChartEscape`]). Singular values past
/// the first pole are allowed; the chart value then continues through `tan`.
pub fn exp0(b: &TangentCoord) -> Result<ChartPoint> {
    let dec = svd(b.b())?;
    let z = match b.signature() {
        Signature::Compact => phi_from_svd(&dec, |sigma| {
            if scalar::tan_pole_distance(sigma) <= POLE_TOL {
                Err(Error::ChartEscape { sigma })
            } else {
                Ok(libm::tan(sigma))
            }
        })?,
        Signature::Noncompact => phi_from_svd(&dec, |sigma| Ok(libm::tanh(sigma)))?,
    };
    ChartPoint::new(z, b.signature())
}

/// Inverse of [`exp0`] on the normal neighbourhood: `Z ↦ B = Z·ta⁻¹(√(Z*Z))/√(Z*Z)`.
///
/// Compact results have all singular values in `[0, π/2)`.
pub fn log0(z: &ChartPoint) -> Result<TangentCoord> {
    let dec = svd(z.z())?;
    let b = match z.signature() {
        Signature::Compact => phi_from_svd(&dec, |sigma| Ok(libm::atan(sigma)))?,
        Signature::Noncompact => phi_from_svd(&dec, |sigma| {
            if sigma < 1.0 {
                Ok(libm::atanh(sigma))
            } else {
                Err(Error::Domain(alloc::format!(
                    "noncompact logarithm needs singular values < 1, got {sigma}"
                )))
            }
        })?,
    };
    TangentCoord::new(b, z.signature())
}

/// Chart point `exp0(t·B)` on the geodesic with initial velocity `B`.
pub fn geodesic_chart(b: &TangentCoord, t: f64) -> Result<ChartPoint> {
    exp0(&b.scaled(t))
}

/// Plane reached at time `t` by the one-parameter subgroup: the span of the rows
/// `[co√(BB*) | B·si(√(B*B))/√(B*B)]` for `tB`, with `co/si = cos/sin` (compact) or
/// `cosh/sinh` (noncompact). Defined for every `t`, including past the cut locus.
pub fn geodesic_group(b: &TangentCoord, t: f64) -> Result<Plane> {
    let tb = b.b().scale(t);
    let dec = svd(&tb)?;
    type Scalar = fn(f64) -> f64;
    let (co, si): (Scalar, Scalar) = match b.signature() {
        Signature::Compact => (libm::cos, libm::sin),
        Signature::Noncompact => (libm::cosh, libm::sinh),
    };
    let n = tb.rows();
    let k = dec.s.len();
    // co(√(BB*)) = I + U·diag(co(σ) − 1)·U*
    let shifted = ComplexMatrix::from_fn(n, k, |i, j| dec.u[(i, j)] * (co(dec.s[j]) - 1.0));
    let mut left = &shifted * &dec.u.adjoint();
    for i in 0..n {
        left[(i, i)] += 1.0;
    }
    let right = phi_from_svd(&dec, |sigma| Ok(si(sigma)))?;
    Plane::new(left.hstack(&right))
}

/// Frobenius norm of `Z̈ − 2ε·Ż·Z*·(1 + εZZ*)⁻¹·Ż` along an arbitrary chart curve,
/// derivatives by central differences with the given step.
pub fn geodesic_residual_curve(
    curve: impl Fn(f64) -> Result<ComplexMatrix>,
    signature: Signature,
    t: f64,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0) {
        return Err(Error::Precondition("residual step must be positive".into()));
    }
    let stencil = |s: f64| {
        curve(s).map_err(|e| match e {
            Error::ChartEscape { sigma } => Error::Domain(alloc::format!(
                "chart escape inside the stencil at t = {s} (singular value {sigma})"
            )),
            other => other,
        })
    };
    let minus = stencil(t - step)?;
    let mid = stencil(t)?;
    let plus = stencil(t + step)?;
    let velocity = (&plus - &minus).scale(0.5 / step);
    let accel = (&(&plus - &mid.scale(2.0)) + &minus).scale(1.0 / (step * step));
    let eps = signature.epsilon();
    let mut metric = (&mid * &mid.adjoint()).scale(eps);
    for i in 0..metric.rows() {
        metric[(i, i)] += 1.0;
    }
    let solved = crate::numkernel::Lu::new(&metric)?.solve(&velocity)?;
    let correction = (&(&velocity * &mid.adjoint()) * &solved).scale(2.0 * eps);
    Ok((&accel - &correction).frobenius_norm())
}

/// [`geodesic_residual_curve`] along `t ↦ geodesic_chart(B, t)`.
pub fn geodesic_residual(b: &TangentCoord, t: f64, step: f64) -> Result<f64> {
    geodesic_residual_curve(
        |s| geodesic_chart(b, s).map(ChartPoint::into_matrix),
        b.signature(),
        t,
        step,
    )
}

/// Geodesic distance from `O`: `d² = Σ|B_ij|²` with `B = log0(Z)`.
pub fn geodesic_distance0(z: &ChartPoint) -> Result<f64> {
    Ok(log0(z)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{angles_to_origin, chart_to_plane, stationary_angles_svd};
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    use num_complex::Complex64;

    fn tangent(b: f64, sig: Signature) -> TangentCoord {
        TangentCoord::new(ComplexMatrix::from_real_diagonal(1, 1, &[b]), sig).unwrap()
    }

    fn value(p: &ChartPoint) -> Complex64 {
        p.z()[(0, 0)]
    }

    #[test]
    fn exp_examples() {
        let zero = exp0(&TangentCoord::zero(2, 3, Signature::Compact)).unwrap();
        assert_eq!(zero.z(), &ComplexMatrix::zeros(2, 3));
        assert!((value(&exp0(&tangent(FRAC_PI_4, Signature::Compact)).unwrap()).re - 1.0).abs() < 1e-15);
        let nc = exp0(&tangent(1.0, Signature::Noncompact)).unwrap();
        assert!((value(&nc).re - 0.76159).abs() < 1e-5);
        assert!(matches!(
            exp0(&tangent(FRAC_PI_2, Signature::Compact)),
            Err(Error::ChartEscape { .. })
        ));
    }

    #[test]
    fn log_examples() {
        let o = ChartPoint::origin(2, 2, Signature::Compact);
        assert_eq!(log0(&o).unwrap().b(), &ComplexMatrix::zeros(2, 2));
        let one = ChartPoint::compact(ComplexMatrix::from_real_diagonal(1, 1, &[1.0])).unwrap();
        assert!((log0(&one).unwrap().b()[(0, 0)].re - FRAC_PI_4).abs() < 1e-15);
        let nc = ChartPoint::noncompact(ComplexMatrix::from_real_diagonal(1, 1, &[0.76159])).unwrap();
        assert!((log0(&nc).unwrap().b()[(0, 0)].re - 1.0).abs() < 1e-4);
    }

    #[test]
    fn geodesic_chart_examples() {
        let b = tangent(1.0, Signature::Compact);
        assert_eq!(geodesic_chart(&b, 0.0).unwrap().z(), &ComplexMatrix::zeros(1, 1));
        assert!((value(&geodesic_chart(&b, FRAC_PI_4).unwrap()).re - 1.0).abs() < 1e-15);
        assert!(matches!(geodesic_chart(&b, FRAC_PI_2), Err(Error::ChartEscape { .. })));
    }

    #[test]
    fn geodesic_group_examples() {
        let b = tangent(1.0, Signature::Compact);
        let start = geodesic_group(&b, 0.0).unwrap();
        assert!(stationary_angles_svd(&start, &Plane::origin(1, 1)).unwrap().max() < 1e-15);
        let antipode = geodesic_group(&b, FRAC_PI_2).unwrap();
        let e2 = Plane::new(ComplexMatrix::from_real_rows(&[&[0.0, 1.0]])).unwrap();
        assert!(stationary_angles_svd(&antipode, &e2).unwrap().max() < 1e-15);
        let quarter = geodesic_group(&b, FRAC_PI_4).unwrap();
        let row = quarter.basis().row(0);
        assert!((row[0].re - libm::cos(FRAC_PI_4)).abs() < 1e-15);
        assert!((row[1].re - libm::sin(FRAC_PI_4)).abs() < 1e-15);
        let chart = chart_to_plane(&geodesic_chart(&b, FRAC_PI_4).unwrap());
        assert!(stationary_angles_svd(&quarter, &chart).unwrap().max() < 1e-8);
    }

    #[test]
    fn residual_examples() {
        let zero = TangentCoord::zero(2, 2, Signature::Compact);
        assert_eq!(geodesic_residual(&zero, 0.3, 1e-3).unwrap(), 0.0);
        let b = tangent(1.0, Signature::Compact);
        assert!(geodesic_residual(&b, 0.5, 1e-3).unwrap() < 1e-4);
        let perturbed = |t: f64| {
            Ok(ComplexMatrix::from_real_diagonal(
                1,
                1,
                &[libm::tan(t) * (1.0 + 0.1 * t)],
            ))
        };
        assert!(geodesic_residual_curve(perturbed, Signature::Compact, 0.5, 1e-3).unwrap() > 1e-2);
        assert!(matches!(geodesic_residual(&b, FRAC_PI_2, 1e-3), Err(Error::Domain(_))));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(
            geodesic_distance0(&ChartPoint::origin(1, 1, Signature::Compact)).unwrap(),
            0.0
        );
        let one = ChartPoint::compact(ComplexMatrix::from_real_diagonal(1, 1, &[1.0])).unwrap();
        assert!((geodesic_distance0(&one).unwrap() - FRAC_PI_4).abs() < 1e-15);
        let z = ChartPoint::compact(ComplexMatrix::from_real_diagonal(
            2,
            2,
            &[libm::tan(0.3), libm::tan(0.4)],
        ))
        .unwrap();
        assert!((geodesic_distance0(&z).unwrap() - 0.5).abs() < 1e-12);
        let via_angles = angles_to_origin(&chart_to_plane(&z)).unwrap().geodesic_length();
        assert!((via_angles - 0.5).abs() < 1e-12);
    }
}
