use core::f64::consts::FRAC_PI_2;

use crate::grassmann::{angles_to_origin, normalized_pairing, plucker, Plane};
use crate::{Error, Result};

/// Tolerance of the Cayley-distance check.
pub const CAYLEY_TOL: f64 = 1e-9;

/// Both views of a plane's position relative to the cut locus of `O`.
#[derive(Clone, Debug, PartialEq)]
pub struct CutReport {
    pub in_cut_locus: bool,
    pub max_angle: f64,
    /// `|⟨P, O⟩| / ‖P‖`, the product of the cosines of the stationary angles.
    pub pairing: f64,
}

fn pairing_with_origin(p: &Plane) -> Result<f64> {
    normalized_pairing(&plucker(p), &plucker(&Plane::origin(p.n(), p.m())))
}

/// Cut-locus test with both the angle spectrum and the Plücker pairing against `O`.
///
/// The verdict is `max θ ≥ π/2 − tol`. The pairing must agree with `Π cos θᵢ`, and
/// must be at most `sin(tol)` whenever the verdict is positive; otherwise the two
/// computations contradict each other and [`Error::InternalConsistency`] is returned.
pub fn cut_locus_report(p: &Plane, tol: f64) -> Result<CutReport> {
    if !(tol >= 0.0) {
        return Err(Error::Precondition("cut-locus tolerance must be non-negative".into()));
    }
    let angles = angles_to_origin(p)?;
    let pairing = pairing_with_origin(p)?;
    let in_cut_locus = angles.max() >= FRAC_PI_2 - tol;
    let slack = 1e-9;
    if (pairing - angles.cosine_product()).abs() > slack || (in_cut_locus && pairing > libm::sin(tol) + slack) {
        return Err(Error::InternalConsistency(alloc::format!(
            "angle route (max {:.17e}, cosine product {:.3e}) disagrees with Plücker pairing {pairing:.3e}",
            angles.max(),
            angles.cosine_product()
        )));
    }
    Ok(CutReport {
        in_cut_locus,
        max_angle: angles.max(),
        pairing,
    })
}

/// Whether `P` lies in the cut locus of `O`, i.e. meets `O⊥`.
pub fn cut_locus_test(p: &Plane, tol: f64) -> Result<bool> {
    Ok(cut_locus_report(p, tol)?.in_cut_locus)
}

/// Cut-locus membership from the Cayley distance alone: `d_c(P, O) = π/2` up to
/// [`CAYLEY_TOL`].
pub fn cayley_cut_check(p: &Plane) -> Result<bool> {
    let d_c = libm::acos(pairing_with_origin(p)?);
    Ok(d_c >= FRAC_PI_2 - CAYLEY_TOL)
}
