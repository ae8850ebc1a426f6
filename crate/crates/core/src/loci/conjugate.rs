//! Tangent conjugate locus along maximal-torus geodesics and conjugate-point detection.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::cut::cut_locus_test;
use crate::grassmann::{angles_to_origin, exp0, geodesic_group, AngleSpectrum, Plane, Signature, TangentCoord};
use crate::numkernel::{fd_jacobian, singular_values, ComplexMatrix};
use crate::{Error, Result};

/// Relative singular value below which the exponential map counts as degenerate.
pub const CONJUGATE_TOL: f64 = 1e-3;
/// Relative singular value above which the exponential map counts as regular.
pub const REGULAR_FLOOR: f64 = 1e-1;
/// Denominators of the conjugate radii below this are treated as zero.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Unit vector `h ∈ R^r`, `r = min(n, m)`, selecting the flat direction
/// `B = diag(h₁, …, h_r)` padded to `n×m`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanDirection {
    h: Vec<f64>,
}

impl CartanDirection {
    /// Accepts `h` with `Σhᵢ² = 1` within `1e-12`.
    pub fn new(h: Vec<f64>) -> Result<Self> {
        if h.is_empty() || h.iter().any(|x| !x.is_finite()) {
            return Err(Error::Precondition(
                "Cartan direction must be a finite nonempty vector".into(),
            ));
        }
        let norm2: f64 = h.iter().map(|x| x * x).sum();
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition(alloc::format!(
                "Cartan direction must have unit norm, got Σh² = {norm2}"
            )));
        }
        Ok(Self { h })
    }

    /// Rescales a nonzero vector to unit length.
    pub fn normalized(v: &[f64]) -> Result<Self> {
        let norm = libm::sqrt(v.iter().map(|x| x * x).sum());
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Precondition(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        Self::new(v.iter().map(|x| x / norm).collect())
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn rank(&self) -> usize {
        self.h.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.h.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

/// Family of a conjugate radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjugateFamily {
    /// `t = λπ/|h_p + h_q|`.
    T1Plus,
    /// `t = λπ/|h_p − h_q|`.
    T1Minus,
    /// `t = λπ/(2|h_p|)`.
    T2,
    /// `t = λπ/|h_p|`, present only for `m ≠ n`.
    T3,
}

impl ConjugateFamily {
    pub fn name(self) -> &'static str {
        match self {
            ConjugateFamily::T1Plus => "t1plus",
            ConjugateFamily::T1Minus => "t1minus",
            ConjugateFamily::T2 => "t2",
            ConjugateFamily::T3 => "t3",
        }
    }

    pub fn is_t1(self) -> bool {
        matches!(self, ConjugateFamily::T1Plus | ConjugateFamily::T1Minus)
    }
}

/// One radius of the tangent conjugate locus along `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateParam {
    pub family: ConjugateFamily,
    /// 1-based index into `h`.
    pub p: usize,
    /// Second index for the `t1` families, `p < q ≤ r`.
    pub q: Option<usize>,
    pub lambda: i32,
    pub t: f64,
    pub multiplicity: usize,
}

/// All conjugate radii along `h` for `λ = 1, …, lambda_max`, sorted by `t`.
///
/// Radii with a vanishing denominator (`|h_p ± h_q|` or `|h_p|` below `1e-12`) are
/// skipped. Multiplicities are 2 for `t1`, 1 for `t2` and `2|m − n|` for `t3`.
pub fn tangent_conjugate_params(
    h: &CartanDirection,
    n: usize,
    m: usize,
    lambda_max: u32,
) -> Result<Vec<ConjugateParam>> {
    let r = n.min(m);
    if h.rank() != r {
        return Err(Error::Precondition(alloc::format!(
            "Cartan direction has {} entries, G_{n}(C^{}) needs {r}",
            h.rank(),
            n + m
        )));
    }
    let hv = h.h();
    let mut out = Vec::new();
    let mut push = |family, p, q, denom: f64, scale: f64, multiplicity| {
        if denom.abs() < DEGENERATE_TOL {
            return;
        }
        for lambda in 1..=lambda_max as i32 {
            out.push(ConjugateParam {
                family,
                p,
                q,
                lambda,
                t: lambda as f64 * PI / (scale * denom.abs()),
                multiplicity,
            });
        }
    };
    for p in 0..r {
        for q in p + 1..r {
            push(ConjugateFamily::T1Plus, p + 1, Some(q + 1), hv[p] + hv[q], 1.0, 2);
            push(ConjugateFamily::T1Minus, p + 1, Some(q + 1), hv[p] - hv[q], 1.0, 2);
        }
        push(ConjugateFamily::T2, p + 1, None, hv[p], 2.0, 1);
        if m != n {
            push(ConjugateFamily::T3, p + 1, None, hv[p], 1.0, 2 * n.abs_diff(m));
        }
    }
    out.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(out)
}

/// `B = t·diag(h)` padded to `n×m`.
pub fn cartan_to_tangent_with(
    h: &CartanDirection,
    t: f64,
    n: usize,
    m: usize,
    signature: Signature,
) -> Result<TangentCoord> {
    if h.rank() != n.min(m) {
        return Err(Error::Precondition(alloc::format!(
            "Cartan direction has {} entries, expected {}",
            h.rank(),
            n.min(m)
        )));
    }
    let diag: Vec<f64> = h.h().iter().map(|x| t * x).collect();
    TangentCoord::new(ComplexMatrix::from_real_diagonal(n, m, &diag), signature)
}

/// Compact [`cartan_to_tangent_with`].
pub fn cartan_to_tangent(h: &CartanDirection, t: f64, n: usize, m: usize) -> Result<TangentCoord> {
    cartan_to_tangent_with(h, t, n, m, Signature::Compact)
}

/// First time the geodesic along `h` reaches the cut locus: `π/(2·max|hᵢ|)`.
pub fn cut_time(h: &CartanDirection) -> f64 {
    PI / (2.0 * h.max_abs())
}

/// Where a relative singular value falls with respect to the guard band
/// `[CONJUGATE_TOL, REGULAR_FLOOR]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobianBand {
    Conjugate,
    Indeterminate,
    Regular,
}

/// Singular-value summary of the finite-difference Jacobian of `exp0` at `B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobianProbe {
    pub min_sv: f64,
    pub max_sv: f64,
    pub is_conjugate: bool,
}

impl JacobianProbe {
    /// `min_sv / max_sv`.
    pub fn relative(&self) -> f64 {
        if self.max_sv > 0.0 {
            self.min_sv / self.max_sv
        } else {
            0.0
        }
    }

    pub fn band(&self) -> JacobianBand {
        let r = self.relative();
        if r < CONJUGATE_TOL {
            JacobianBand::Conjugate
        } else if r > REGULAR_FLOOR {
            JacobianBand::Regular
        } else {
            JacobianBand::Indeterminate
        }
    }
}

fn pack(b: &ComplexMatrix) -> Vec<f64> {
    let re = b.as_slice().iter().map(|z| z.re);
    let im = b.as_slice().iter().map(|z| z.im);
    re.chain(im).collect()
}

fn unpack(x: &[f64], n: usize, m: usize) -> ComplexMatrix {
    let k = n * m;
    ComplexMatrix::from_fn(n, m, |i, j| Complex64::new(x[i * m + j], x[k + i * m + j]))
}

/// Smallest and largest singular values of the `2nm×2nm` real Jacobian of
/// `B ↦ exp0(B)`, by central differences with step `1e-5·max(1, ‖B‖)`.
/// `is_conjugate` is `min_sv / max_sv < tol`.
///
/// A chart escape inside the stencil is reported as [`Error::Domain`].
pub fn conjugate_test_jacobian(b: &TangentCoord, tol: f64) -> Result<JacobianProbe> {
    if !(tol > 0.0) {
        return Err(Error::Precondition("conjugacy tolerance must be positive".into()));
    }
    let (n, m) = (b.n(), b.m());
    let signature = b.signature();
    let step = 1e-5 * b.norm().max(1.0);
    let map = |x: &[f64]| -> Result<Vec<f64>> {
        let tangent = TangentCoord::new(unpack(x, n, m), signature)?;
        match exp0(&tangent) {
            Ok(z) => Ok(pack(z.z())),
            Err(Error::ChartEscape { sigma }) => Err(Error::Domain(alloc::format!(
                "chart escape (singular value {sigma}) inside the Jacobian stencil"
            ))),
            Err(e) => Err(e),
        }
    };
    let jac = fd_jacobian(map, &pack(b.b()), step)?;
    let s = singular_values(&jac.to_complex())?;
    let max_sv = s.first().copied().unwrap_or(0.0);
    let min_sv = s.last().copied().unwrap_or(0.0);
    let probe = JacobianProbe {
        min_sv,
        max_sv,
        is_conjugate: false,
    };
    Ok(JacobianProbe {
        is_conjugate: probe.relative() < tol,
        ..probe
    })
}

/// Relative perturbations of `t` tried when a probe lands in the guard band.
const RESAMPLE_OFFSETS: [f64; 6] = [1e-6, -1e-6, 1e-5, -1e-5, 1e-4, -1e-4];

/// Probes `cartan_to_tangent(h, t)` and, if the result is indeterminate, retries at
/// slightly perturbed times. Returns the time actually used with its probe; if every
/// retry stays indeterminate the original probe is returned.
pub fn probe_along(
    h: &CartanDirection,
    t: f64,
    n: usize,
    m: usize,
    signature: Signature,
    tol: f64,
) -> Result<(f64, JacobianProbe)> {
    let first = conjugate_test_jacobian(&cartan_to_tangent_with(h, t, n, m, signature)?, tol)?;
    if first.band() != JacobianBand::Indeterminate {
        return Ok((t, first));
    }
    for offset in RESAMPLE_OFFSETS {
        let ts = t * (1.0 + offset);
        if let Ok(probe) = conjugate_test_jacobian(&cartan_to_tangent_with(h, ts, n, m, signature)?, tol) {
            if probe.band() != JacobianBand::Indeterminate {
                return Ok((ts, probe));
            }
        }
    }
    Ok((t, first))
}

/// Type of conjugate point read from the stationary angles with `O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugateClass {
    None,
    /// Some angle is `0` or `π/2`.
    Wong,
    /// Two of the angles coincide.
    Interior,
}

impl ConjugateClass {
    pub fn name(self) -> &'static str {
        match self {
            ConjugateClass::None => "none",
            ConjugateClass::Wong => "wong",
            ConjugateClass::Interior => "interior",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusVerdict {
    pub in_cut_locus: bool,
    /// Relative smallest Jacobian singular value, when a tangent vector was given
    /// and the chart is defined around it.
    pub min_jacobian_sv: Option<f64>,
    pub conj_class: ConjugateClass,
    pub angle_spectrum: AngleSpectrum,
}

/// Classification of `P` from its angles with `O`, looking at the `r = min(n, m)`
/// angles that can be nonzero. `Wong` when one of them is within `tol` of `0` or
/// `π/2`; otherwise `Interior` when two of them are within `tol` of each other.
pub fn classify_conjugate(p: &Plane, tol: f64) -> Result<LocusVerdict> {
    if !(tol >= 0.0) {
        return Err(Error::Precondition(
            "classification tolerance must be non-negative".into(),
        ));
    }
    let spectrum = angles_to_origin(p)?;
    let r = p.n().min(p.m());
    let top = &spectrum.angles()[..r];
    let wong = top.iter().any(|&a| a <= tol || a >= FRAC_PI_2 - tol);
    let interior = top.windows(2).any(|w| w[0] - w[1] <= tol);
    let conj_class = if wong {
        ConjugateClass::Wong
    } else if interior {
        ConjugateClass::Interior
    } else {
        ConjugateClass::None
    };
    Ok(LocusVerdict {
        in_cut_locus: cut_locus_test(p, tol)?,
        min_jacobian_sv: None,
        conj_class,
        angle_spectrum: spectrum,
    })
}

/// [`classify_conjugate`] for the endpoint `exp(B)·O` of the group geodesic, adding
/// the relative Jacobian singular value where the chart is defined around `B`.
pub fn classify_conjugate_tangent(b: &TangentCoord, tol: f64) -> Result<LocusVerdict> {
    if b.signature() != Signature::Compact {
        return Err(Error::Precondition(
            "conjugate classification is defined on the compact side".into(),
        ));
    }
    let mut verdict = classify_conjugate(&geodesic_group(b, 1.0)?, tol)?;
    verdict.min_jacobian_sv = match conjugate_test_jacobian(b, CONJUGATE_TOL) {
        Ok(probe) => Some(probe.relative()),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn h(v: &[f64]) -> CartanDirection {
        CartanDirection::new(v.to_vec()).unwrap()
    }

    fn find(params: &[ConjugateParam], family: ConjugateFamily, p: usize, lambda: i32) -> f64 {
        params
            .iter()
            .find(|c| c.family == family && c.p == p && c.lambda == lambda)
            .unwrap()
            .t
    }

    #[test]
    fn direction_validation() {
        assert!(CartanDirection::new(alloc::vec![0.8, 0.5]).is_err());
        assert!(CartanDirection::new(alloc::vec![]).is_err());
        let d = CartanDirection::normalized(&[3.0, 4.0]).unwrap();
        assert!((d.h()[0] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn radii_for_reference_direction() {
        let params = tangent_conjugate_params(&h(&[0.8, 0.6]), 2, 2, 1).unwrap();
        assert_eq!(params.len(), 4);
        assert!((find(&params, ConjugateFamily::T1Minus, 1, 1) - 15.708).abs() < 1e-3);
        assert!((find(&params, ConjugateFamily::T1Plus, 1, 1) - 2.2440).abs() < 1e-4);
        assert!((find(&params, ConjugateFamily::T2, 1, 1) - 1.9635).abs() < 1e-4);
        assert!((find(&params, ConjugateFamily::T2, 2, 1) - 2.6180).abs() < 1e-4);
        assert!(params.windows(2).all(|w| w[0].t <= w[1].t));
        assert!(params.iter().all(|c| c.family != ConjugateFamily::T3));
    }

    #[test]
    fn multiplicities() {
        let params = tangent_conjugate_params(&h(&[0.8, 0.6]), 2, 5, 2).unwrap();
        for c in &params {
            let expected = match c.family {
                ConjugateFamily::T1Plus | ConjugateFamily::T1Minus => 2,
                ConjugateFamily::T2 => 1,
                ConjugateFamily::T3 => 6,
            };
            assert_eq!(c.multiplicity, expected);
        }
        assert_eq!(params.iter().filter(|c| c.family == ConjugateFamily::T3).count(), 4);
    }

    #[test]
    fn degenerate_direction_skips_infinite_radii() {
        let params = tangent_conjugate_params(&h(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]), 2, 2, 1).unwrap();
        assert!(params.iter().all(|c| c.family != ConjugateFamily::T1Minus));
        let plus = find(&params, ConjugateFamily::T1Plus, 1, 1);
        let t2 = find(&params, ConjugateFamily::T2, 1, 1);
        assert!((plus - PI / core::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((plus - t2).abs() < 1e-12);
    }

    #[test]
    fn wrong_rank_rejected() {
        assert!(tangent_conjugate_params(&h(&[1.0]), 2, 2, 1).is_err());
    }

    #[test]
    fn tangent_from_direction() {
        let d = h(&[0.8, 0.6]);
        assert_eq!(
            cartan_to_tangent(&d, 0.0, 2, 2).unwrap().b(),
            &ComplexMatrix::zeros(2, 2)
        );
        let b = cartan_to_tangent(&h(&[1.0]), PI / 4.0, 1, 1).unwrap();
        assert!((b.b()[(0, 0)].re - PI / 4.0).abs() < 1e-15);
        let b = cartan_to_tangent(&d, PI / 1.4, 2, 2).unwrap();
        assert!((b.b()[(0, 0)].re - 1.7952).abs() < 1e-4);
        assert!((b.b()[(1, 1)].re - 1.3464).abs() < 1e-4);
        let wide = cartan_to_tangent(&d, 1.0, 2, 3).unwrap();
        let s = singular_values(wide.b()).unwrap();
        assert!((s[0] - 0.8).abs() < 1e-15 && (s[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn cut_time_examples() {
        assert!((cut_time(&h(&[1.0])) - FRAC_PI_2).abs() < 1e-15);
        assert!((cut_time(&h(&[0.8, 0.6])) - 1.9635).abs() < 1e-4);
        assert!((cut_time(&h(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])) - 2.2214).abs() < 1e-4);
    }

    #[test]
    fn jacobian_at_origin_is_identity() {
        let probe = conjugate_test_jacobian(&TangentCoord::zero(2, 2, Signature::Compact), CONJUGATE_TOL).unwrap();
        assert!((probe.relative() - 1.0).abs() < 1e-9);
        assert!(!probe.is_conjugate);
    }

    #[test]
    fn scalar_case_is_never_conjugate() {
        for k in 1..30 {
            let b = k as f64 * 0.05;
            let probe =
                conjugate_test_jacobian(&cartan_to_tangent(&h(&[1.0]), b, 1, 1).unwrap(), CONJUGATE_TOL).unwrap();
            // singular values sec²b and tan(b)/b
            let expected = (libm::tan(b) / b) / (1.0 / (libm::cos(b) * libm::cos(b)));
            assert!((probe.relative() - expected).abs() < 1e-6, "b = {b}");
            assert!(!probe.is_conjugate);
        }
    }

    #[test]
    fn dip_at_t1plus() {
        let d = h(&[0.8, 0.6]);
        let at = conjugate_test_jacobian(&cartan_to_tangent(&d, PI / 1.4, 2, 2).unwrap(), CONJUGATE_TOL).unwrap();
        assert!(at.is_conjugate, "{at:?}");
        let before =
            conjugate_test_jacobian(&cartan_to_tangent(&d, 0.9 * PI / 1.4, 2, 2).unwrap(), CONJUGATE_TOL).unwrap();
        assert!(!before.is_conjugate);
    }

    #[test]
    fn stencil_escape_is_domain_error() {
        let b = cartan_to_tangent(&h(&[1.0]), FRAC_PI_2, 1, 1).unwrap();
        assert!(matches!(
            conjugate_test_jacobian(&b, CONJUGATE_TOL),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn classification_examples() {
        let d = h(&[0.8, 0.6]);
        let b = cartan_to_tangent(&d, PI / 1.4, 2, 2).unwrap();
        let z = exp0(&b).unwrap();
        // tan(0.8π/1.4) = −tan(0.6π/1.4)
        assert!((z.z()[(0, 0)].re + 4.381286).abs() < 1e-6);
        assert!((z.z()[(1, 1)].re - 4.381286).abs() < 1e-6);
        let verdict = classify_conjugate_tangent(&b, 1e-6).unwrap();
        assert_eq!(verdict.conj_class, ConjugateClass::Interior);
        let a = verdict.angle_spectrum.angles();
        let expected = 0.6 * PI / 1.4;
        assert!((a[0] - expected).abs() < 1e-9 && (a[1] - expected).abs() < 1e-9);
        assert!(verdict.min_jacobian_sv.unwrap() < CONJUGATE_TOL);
        assert!(!verdict.in_cut_locus);

        let perp = Plane::new(ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]))
        .unwrap();
        let v = classify_conjugate(&perp, 1e-6).unwrap();
        assert_eq!(v.conj_class, ConjugateClass::Wong);
        assert!(v.in_cut_locus && v.min_jacobian_sv.is_none());

        let generic = cartan_to_tangent(&d, 1.0, 2, 2).unwrap();
        let v = classify_conjugate_tangent(&generic, 1e-6).unwrap();
        assert_eq!(v.conj_class, ConjugateClass::None);
    }

    #[test]
    fn resampling_leaves_clear_verdicts_alone() {
        let d = h(&[0.8, 0.6]);
        let (t, probe) = probe_along(&d, 1.0, 2, 2, Signature::Compact, CONJUGATE_TOL).unwrap();
        assert_eq!(t, 1.0);
        assert_eq!(probe.band(), JacobianBand::Regular);
    }
}
