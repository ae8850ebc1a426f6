//! Dense scans of the exponential-map Jacobian along a flat direction.

use std::io::Write;

use grassmann_core::grassmann::{
    exp0, geodesic_group, normalized_pairing, overlap, plucker, ChartPoint, Plane, Signature,
};
use grassmann_core::loci::{
    cartan_to_tangent_with, classify_conjugate, conjugate_test_jacobian, tangent_conjugate_params, CartanDirection,
    ConjugateClass, ConjugateParam, JacobianBand, CONJUGATE_TOL,
};
use grassmann_core::numkernel::singular_values;
use grassmann_core::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Column order of the scan CSV.
pub const SCAN_HEADER: [&str; 10] = [
    "t",
    "family",
    "p",
    "q",
    "lambda",
    "min_jac_sv",
    "max_angle",
    "second_angle",
    "overlap_abs",
    "class",
];

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub n: usize,
    pub m: usize,
    pub signature: Signature,
    /// Relative singular value below which a row counts as conjugate.
    pub tol: f64,
    pub lambda_max: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            n: 2,
            m: 2,
            signature: Signature::Compact,
            tol: CONJUGATE_TOL,
            lambda_max: 2,
        }
    }
}

/// One grid point. `family`, `p`, `q`, `lambda` name the nearest conjugate radius
/// within half a grid step. On the noncompact side the angles are the hyperbolic
/// ones, `t·|hᵢ|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub t: f64,
    pub family: Option<String>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub lambda: Option<i32>,
    /// Relative smallest Jacobian singular value; absent where the chart escapes.
    pub min_jac_sv: Option<f64>,
    pub max_angle: f64,
    pub second_angle: Option<f64>,
    pub overlap_abs: f64,
    pub class: String,
}

/// Scans `t ∈ (t_min, t_max]` in `steps` equal steps.
pub fn scan_conjugate(
    h: &CartanDirection,
    t_min: f64,
    t_max: f64,
    steps: usize,
    cfg: &ScanConfig,
) -> Result<Vec<ScanRow>> {
    if !(t_min >= 0.0 && t_max > t_min && t_max.is_finite()) || steps == 0 {
        return Err(Error::Precondition(format!(
            "scan needs 0 <= t_min < t_max and steps >= 1, got ({t_min}, {t_max}] in {steps} steps"
        )));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::Precondition("scan tolerance must be positive".into()));
    }
    let params = match cfg.signature {
        Signature::Compact => tangent_conjugate_params(h, cfg.n, cfg.m, cfg.lambda_max)?,
        Signature::Noncompact => {
            // validates the rank of h; there are no radii on this side
            tangent_conjugate_params(h, cfg.n, cfg.m, cfg.lambda_max)?;
            Vec::new()
        }
    };
    let dt = (t_max - t_min) / steps as f64;
    (1..=steps)
        .into_par_iter()
        .map(|k| scan_row(h, t_min + dt * k as f64, dt, &params, cfg))
        .collect()
}

fn nearest(params: &[ConjugateParam], t: f64, dt: f64) -> Option<&ConjugateParam> {
    params
        .iter()
        .filter(|c| (c.t - t).abs() <= 0.5 * dt)
        .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
}

fn band_class(band: JacobianBand) -> &'static str {
    match band {
        JacobianBand::Conjugate => "conjugate",
        JacobianBand::Indeterminate => "indeterminate",
        JacobianBand::Regular => "regular",
    }
}

fn scan_row(h: &CartanDirection, t: f64, dt: f64, params: &[ConjugateParam], cfg: &ScanConfig) -> Result<ScanRow> {
    let b = cartan_to_tangent_with(h, t, cfg.n, cfg.m, cfg.signature)?;
    let near = nearest(params, t, dt);
    let mut row = ScanRow {
        t,
        family: near.map(|c| c.family.name().to_owned()),
        p: near.map(|c| c.p),
        q: near.and_then(|c| c.q),
        lambda: near.map(|c| c.lambda),
        min_jac_sv: None,
        max_angle: 0.0,
        second_angle: None,
        overlap_abs: 0.0,
        class: String::new(),
    };
    let probe = match conjugate_test_jacobian(&b, cfg.tol) {
        Ok(probe) => Some(probe),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    row.min_jac_sv = probe.map(|p| p.relative());
    let band = probe.map(|p| {
        if p.relative() < cfg.tol {
            JacobianBand::Conjugate
        } else {
            p.band()
        }
    });
    match cfg.signature {
        Signature::Compact => {
            let plane = geodesic_group(&b, 1.0)?;
            let origin = Plane::origin(cfg.n, cfg.m);
            row.overlap_abs = normalized_pairing(&plucker(&plane), &plucker(&origin))?;
            // angles drift apart at most at rate 2·max|hᵢ|, so a grid point can
            // miss an exact coincidence by that much
            let angle_tol = (2.0 * dt * h.max_abs()).max(1e-6);
            let verdict = classify_conjugate(&plane, angle_tol)?;
            let angles = verdict.angle_spectrum.angles();
            row.max_angle = angles[0];
            row.second_angle = angles.get(1).copied();
            row.class = match band {
                None => "pole".into(),
                Some(JacobianBand::Conjugate) => match verdict.conj_class {
                    ConjugateClass::Wong => "wong".into(),
                    ConjugateClass::Interior => "interior".into(),
                    ConjugateClass::None => "conjugate".into(),
                },
                Some(other) => band_class(other).into(),
            };
        }
        Signature::Noncompact => {
            let mut angles = singular_values(b.b())?;
            angles.truncate(cfg.n.min(cfg.m));
            row.max_angle = angles[0];
            row.second_angle = angles.get(1).copied();
            let z = exp0(&b)?;
            let origin = ChartPoint::origin(cfg.n, cfg.m, Signature::Noncompact);
            row.overlap_abs = overlap(&origin, &z)?.norm() / overlap(&z, &z)?.norm().sqrt();
            row.class = band_class(band.expect("noncompact exponential is global")).into();
        }
    }
    Ok(row)
}

fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the header and rows with `,` separators and LF line endings.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(SCAN_HEADER)?;
    for r in rows {
        w.write_record([
            r.t.to_string(),
            r.family.clone().unwrap_or_default(),
            fmt_opt(r.p),
            fmt_opt(r.q),
            fmt_opt(r.lambda),
            fmt_opt(r.min_jac_sv),
            r.max_angle.to_string(),
            fmt_opt(r.second_angle),
            r.overlap_abs.to_string(),
            r.class.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Indices of interior grid points whose `min_jac_sv` is below `threshold` and
/// strictly below both neighbours.
pub fn find_dips(rows: &[ScanRow], threshold: f64) -> Vec<usize> {
    (1..rows.len().saturating_sub(1))
        .filter(
            |&i| match (rows[i - 1].min_jac_sv, rows[i].min_jac_sv, rows[i + 1].min_jac_sv) {
                (Some(a), Some(v), Some(b)) => v < threshold && v < a && v < b,
                _ => false,
            },
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: &[f64]) -> CartanDirection {
        CartanDirection::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_ranges() {
        let d = h(&[1.0]);
        let cfg = ScanConfig {
            n: 1,
            m: 1,
            ..ScanConfig::default()
        };
        assert!(scan_conjugate(&d, 1.0, 1.0, 10, &cfg).is_err());
        assert!(scan_conjugate(&d, -1.0, 1.0, 10, &cfg).is_err());
        assert!(scan_conjugate(&d, 0.0, 1.0, 0, &cfg).is_err());
        assert!(scan_conjugate(&h(&[0.8, 0.6]), 0.0, 1.0, 3, &cfg).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = scan_conjugate(&h(&[0.8, 0.6]), 0.0, 3.0, 30, &ScanConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_scan_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(!text.contains('\r'));
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SCAN_HEADER.join(","));
        assert_eq!(lines.count(), 30);
    }

    #[test]
    fn dip_at_the_first_t1_radius() {
        let rows = scan_conjugate(&h(&[0.8, 0.6]), 0.0, 3.0, 3000, &ScanConfig::default()).unwrap();
        let target = std::f64::consts::PI / 1.4;
        let hit = find_dips(&rows, CONJUGATE_TOL)
            .into_iter()
            .map(|i| &rows[i])
            .find(|r| (r.t - target).abs() <= 1e-3)
            .expect("dip next to pi/1.4");
        assert_eq!(hit.family.as_deref(), Some("t1plus"));
        assert_eq!(hit.class, "interior");
    }

    #[test]
    fn noncompact_scan_has_no_dips() {
        let cfg = ScanConfig {
            signature: Signature::Noncompact,
            ..ScanConfig::default()
        };
        let rows = scan_conjugate(&h(&[0.8, 0.6]), 0.0, 3.0, 300, &cfg).unwrap();
        assert!(find_dips(&rows, CONJUGATE_TOL).is_empty());
        assert!(rows.iter().all(|r| r.family.is_none() && r.min_jac_sv.is_some()));
        assert!((rows[299].max_angle - 2.4).abs() < 1e-12);
    }

    #[test]
    fn scalar_scan_has_no_dips() {
        let cfg = ScanConfig {
            n: 1,
            m: 1,
            ..ScanConfig::default()
        };
        let rows = scan_conjugate(&h(&[1.0]), 0.0, 1.5, 150, &cfg).unwrap();
        assert!(find_dips(&rows, CONJUGATE_TOL).is_empty());
        assert!(rows.iter().all(|r| r.class != "pole"));
    }

    #[test]
    fn pole_rows_have_no_jacobian() {
        let cfg = ScanConfig {
            n: 1,
            m: 1,
            ..ScanConfig::default()
        };
        // t = π/2 is the 100th grid point
        let rows = scan_conjugate(&h(&[1.0]), 0.0, std::f64::consts::PI, 200, &cfg).unwrap();
        let pole = &rows[99];
        assert_eq!(pole.class, "pole");
        assert!(pole.min_jac_sv.is_none());
        assert!((pole.max_angle - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
