//! The property registry. Each check draws its inputs from the trial generator and
//! returns one number, compared against the property's bound.

use std::f64::consts::FRAC_PI_2;

use grassmann_core::grassmann::random::{gaussian_matrix, haar_random_plane_with};
use grassmann_core::grassmann::{
    angles_to_origin, chart_to_plane, cos_cayley, exp0, geodesic_chart, geodesic_group, geodesic_residual, log0,
    normalized_pairing, overlap, plucker, plucker_pairing, stationary_angles_svd, stationary_angles_w, ChartPoint,
    Plane, PluckerVector, Signature, TangentCoord,
};
use grassmann_core::loci::{
    cartan_to_tangent, cayley_cut_check, conjugate_test_jacobian, cut_locus_report, cut_locus_test, is_generic,
    probe_along, schubert_generic_sample_with, schubert_membership, tangent_conjugate_params, v_pl_symbol,
    ConjugateFamily, SchubertSymbol, CONJUGATE_TOL,
};
use grassmann_core::numkernel::{fd_jacobian, herm_eig, singular_values, svd, ComplexMatrix};
use grassmann_core::{Complex64, Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::samplers::{clear_of_poles, cut_plane, gaussian_chart, random_direction, tangent_below};

/// Pass condition on a trial value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    /// Pass when the value is at most the bound.
    Upper(f64),
    /// Pass when the value is at least the bound.
    Lower(f64),
}

impl Bound {
    pub fn holds(self, value: f64) -> bool {
        match self {
            Bound::Upper(b) => value <= b,
            Bound::Lower(b) => value >= b,
        }
    }

    pub fn limit(self) -> f64 {
        match self {
            Bound::Upper(b) | Bound::Lower(b) => b,
        }
    }

    pub fn with_limit(self, limit: f64) -> Self {
        match self {
            Bound::Upper(_) => Bound::Upper(limit),
            Bound::Lower(_) => Bound::Lower(limit),
        }
    }

    /// The worse of two values under this bound.
    pub fn worse(self, a: f64, b: f64) -> f64 {
        match self {
            Bound::Upper(_) => a.max(b),
            Bound::Lower(_) => a.min(b),
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            Bound::Upper(_) => "upper",
            Bound::Lower(_) => "lower",
        }
    }
}

/// The overlap and pairing kernels the suite checks against each other. Swapping
/// one out lets tests confirm that the suite notices a broken kernel.
#[derive(Clone, Copy)]
pub struct Kernels {
    pub overlap: fn(&ChartPoint, &ChartPoint) -> Result<Complex64>,
    pub plucker_pairing: fn(&PluckerVector, &PluckerVector) -> Result<Complex64>,
}

impl Default for Kernels {
    fn default() -> Self {
        Self {
            overlap,
            plucker_pairing,
        }
    }
}

pub struct Ctx<'a> {
    pub n: usize,
    pub m: usize,
    pub lambda_max: u32,
    pub kernels: &'a Kernels,
}

pub type Check = fn(&Ctx, &mut ChaCha8Rng) -> Result<f64>;

pub struct Property {
    pub name: &'static str,
    pub bound: Bound,
    pub check: Check,
}

/// Names every suite run must include.
pub const REQUIRED: [&str; 22] = [
    "svd_reconstruction",
    "hermitian_eigen",
    "fd_exp_identity",
    "lemma2_cayley_cosine_product",
    "lemma1_eigen_vs_svd",
    "binet_cauchy",
    "overlap_conjugate_symmetry",
    "plucker_basis_invariance",
    "exp_log_roundtrip",
    "noncompact_roundtrip",
    "angles_from_tangent",
    "group_chart_agreement",
    "geodesic_ode_compact",
    "geodesic_ode_noncompact",
    "cut_locus_polar_divisor",
    "cayley_cut_criterion",
    "schubert_cut_equivalence",
    "schubert_sampling_soundness",
    "conjugate_radii",
    "conjugate_midpoints",
    "conjugate_classification",
    "noncompact_no_conjugate",
];

pub fn registry() -> Vec<Property> {
    let p = |name, bound, check| Property { name, bound, check };
    vec![
        p("svd_reconstruction", Bound::Upper(1e-12), svd_reconstruction),
        p("hermitian_eigen", Bound::Upper(1e-12), hermitian_eigen),
        p("fd_exp_identity", Bound::Upper(1e-9), fd_exp_identity),
        p("lemma2_cayley_cosine_product", Bound::Upper(1e-10), cayley_vs_cosines),
        p("lemma1_eigen_vs_svd", Bound::Upper(1e-9), chart_vs_basis_angles),
        p("binet_cauchy", Bound::Upper(1e-10), binet_cauchy),
        p("overlap_conjugate_symmetry", Bound::Upper(1e-12), overlap_symmetry),
        p("plucker_basis_invariance", Bound::Upper(1e-12), plucker_invariance),
        p("exp_log_roundtrip", Bound::Upper(1e-9), exp_log_roundtrip),
        p("noncompact_roundtrip", Bound::Upper(1e-9), noncompact_roundtrip),
        p("angles_from_tangent", Bound::Upper(1e-9), angles_from_tangent),
        p("group_chart_agreement", Bound::Upper(1e-9), group_chart_agreement),
        p("geodesic_ode_compact", Bound::Upper(1e-4), geodesic_ode_compact),
        p("geodesic_ode_noncompact", Bound::Upper(1e-4), geodesic_ode_noncompact),
        p("cut_locus_polar_divisor", Bound::Upper(1e-10), cut_polar_divisor),
        p("cayley_cut_criterion", Bound::Upper(0.0), cayley_criterion),
        p("schubert_cut_equivalence", Bound::Upper(0.0), schubert_cut_equivalence),
        p("schubert_sampling_soundness", Bound::Upper(0.0), schubert_soundness),
        p("conjugate_radii", Bound::Upper(CONJUGATE_TOL), conjugate_radii),
        p("conjugate_midpoints", Bound::Lower(1e-1), conjugate_midpoints),
        p("conjugate_classification", Bound::Upper(1e-6), conjugate_classification),
        p("noncompact_no_conjugate", Bound::Lower(1e-1), noncompact_no_conjugate),
    ]
}

/// Largest singular value of `t·B` kept in the compact tests, clear of the first pole.
const SAFE_SIGMA: f64 = FRAC_PI_2 - 0.1;
/// Minimum distance of `t·|hᵢ|` from a pole for a Jacobian probe.
const POLE_MARGIN: f64 = 0.05;
/// Times along a random noncompact geodesic in the conjugate control.
const NONCOMPACT_HORIZON: f64 = 3.0;

fn svd_reconstruction(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let a = gaussian_matrix(ctx.n + 1, ctx.m + 1, rng);
    let dec = svd(&a)?;
    let recon = dec.recompose().max_abs_diff(&a);
    let ortho = (&dec.u.adjoint() * &dec.u).max_abs_diff(&ComplexMatrix::identity(dec.u.cols()));
    Ok(recon.max(ortho))
}

fn hermitian_eigen(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let g = gaussian_matrix(ctx.n + ctx.m, ctx.n + ctx.m, rng);
    let h = (&g + &g.adjoint()).scale(0.5);
    let eig = herm_eig(&h)?;
    let lambda = ComplexMatrix::from_real_diagonal(eig.values.len(), eig.values.len(), &eig.values);
    Ok((&h * &eig.vectors).max_abs_diff(&(&eig.vectors * &lambda)))
}

fn fd_exp_identity(ctx: &Ctx, _rng: &mut ChaCha8Rng) -> Result<f64> {
    let (n, m) = (ctx.n, ctx.m);
    let probe = conjugate_test_jacobian(&TangentCoord::zero(n, m, Signature::Compact), CONJUGATE_TOL)?;
    let k = n * m;
    let map = |x: &[f64]| -> Result<Vec<f64>> {
        let b = ComplexMatrix::from_fn(n, m, |i, j| Complex64::new(x[i * m + j], x[k + i * m + j]));
        let z = exp0(&TangentCoord::compact(b)?)?;
        let s = z.z().as_slice();
        Ok(s.iter().map(|c| c.re).chain(s.iter().map(|c| c.im)).collect())
    };
    let jac = fd_jacobian(map, &vec![0.0; 2 * k], 1e-5)?;
    let mut dev = (probe.relative() - 1.0).abs();
    for i in 0..2 * k {
        for j in 0..2 * k {
            dev = dev.max((jac[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    Ok(dev)
}

fn chart_pair(ctx: &Ctx, rng: &mut ChaCha8Rng) -> (ChartPoint, ChartPoint) {
    let a = gaussian_chart(ctx.n, ctx.m, Signature::Compact, rng);
    let b = gaussian_chart(ctx.n, ctx.m, Signature::Compact, rng);
    (a, b)
}

fn cayley_vs_cosines(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (zp, z) = chart_pair(ctx, rng);
    let angles = stationary_angles_svd(&chart_to_plane(&zp), &chart_to_plane(&z))?;
    Ok((cos_cayley(&zp, &z)? - angles.cosine_product()).abs())
}

fn chart_vs_basis_angles(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (zp, z) = loop {
        let (zp, z) = chart_pair(ctx, rng);
        if overlap(&zp, &z)?.norm() > 1e-6 {
            break (zp, z);
        }
    };
    let w = stationary_angles_w(&zp, &z)?;
    let s = stationary_angles_svd(&chart_to_plane(&zp), &chart_to_plane(&z))?;
    Ok(w.angles()
        .iter()
        .zip(s.angles())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

fn binet_cauchy(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (zp, z) = chart_pair(ctx, rng);
    let pairing = (ctx.kernels.plucker_pairing)(&plucker(&chart_to_plane(&z)), &plucker(&chart_to_plane(&zp)))?;
    Ok((pairing - (ctx.kernels.overlap)(&zp, &z)?).norm())
}

fn overlap_symmetry(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut dev: f64 = 0.0;
    for sig in [Signature::Compact, Signature::Noncompact] {
        let a = gaussian_chart(ctx.n, ctx.m, sig, rng);
        let b = gaussian_chart(ctx.n, ctx.m, sig, rng);
        let ab = (ctx.kernels.overlap)(&a, &b)?;
        let ba = (ctx.kernels.overlap)(&b, &a)?;
        dev = dev.max((ab - ba.conj()).norm() / ab.norm().max(1.0));
    }
    Ok(dev)
}

fn plucker_invariance(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let p = haar_random_plane_with(ctx.n, ctx.m, rng);
    let q = haar_random_plane_with(ctx.n, ctx.m, rng);
    let change = gaussian_matrix(ctx.n, ctx.n, rng);
    let Ok(moved) = Plane::new(&change * p.basis()) else {
        return Ok(0.0);
    };
    let before = normalized_pairing(&plucker(&p), &plucker(&q))?;
    let after = normalized_pairing(&plucker(&moved), &plucker(&q))?;
    Ok((before - after).abs())
}

fn exp_log_roundtrip(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let b = tangent_below(ctx.n, ctx.m, SAFE_SIGMA, Signature::Compact, rng);
    Ok((log0(&exp0(&b)?)?.b() - b.b()).frobenius_norm())
}

fn noncompact_roundtrip(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let b = tangent_below(ctx.n, ctx.m, 6.0, Signature::Noncompact, rng);
    Ok((log0(&exp0(&b)?)?.b() - b.b()).frobenius_norm())
}

fn angles_from_tangent(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let b = tangent_below(ctx.n, ctx.m, SAFE_SIGMA, Signature::Compact, rng);
    let angles = angles_to_origin(&chart_to_plane(&exp0(&b)?))?;
    let sigmas = singular_values(b.b())?;
    Ok(angles
        .angles()
        .iter()
        .zip(&sigmas)
        .map(|(a, s)| (a - s).abs())
        .fold(0.0, f64::max))
}

fn group_chart_agreement(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let b = tangent_below(ctx.n, ctx.m, SAFE_SIGMA, Signature::Compact, rng);
    let t: f64 = rng.random();
    let group = geodesic_group(&b, t)?;
    let chart = chart_to_plane(&geodesic_chart(&b, t)?);
    Ok(stationary_angles_svd(&group, &chart)?.max())
}

/// Largest residual of the geodesic equation over ten interior times of a random
/// unit-speed geodesic on `[0, horizon/σ_max]`.
fn ode_residual(ctx: &Ctx, rng: &mut ChaCha8Rng, signature: Signature, horizon: f64) -> Result<f64> {
    let b = grassmann_core::grassmann::random::random_unit_tangent(ctx.n, ctx.m, signature, rng);
    let t_max = horizon / singular_values(b.b())?[0];
    (1..=10).try_fold(0.0f64, |acc, k| {
        Ok(acc.max(geodesic_residual(&b, k as f64 * t_max / 11.0, 1e-3)?))
    })
}

fn geodesic_ode_compact(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    ode_residual(ctx, rng, Signature::Compact, 1.2)
}

fn geodesic_ode_noncompact(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    ode_residual(ctx, rng, Signature::Noncompact, 3.0)
}

/// A plane at angle `π/2` from `O` must have zero pairing and test positive; a random
/// chart plane must have pairing above `1e-8` and test negative. Returns the
/// pairing of the constructed plane, or infinity if any verdict is wrong.
fn cut_polar_divisor(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let cut = cut_locus_report(&cut_plane(ctx.n, ctx.m, rng), 1e-9)?;
    let chart = cut_locus_report(
        &chart_to_plane(&gaussian_chart(ctx.n, ctx.m, Signature::Compact, rng)),
        1e-9,
    )?;
    if !cut.in_cut_locus || chart.in_cut_locus || chart.pairing <= 1e-8 {
        return Ok(f64::INFINITY);
    }
    Ok(cut.pairing)
}

/// Planes on both sides of the cut locus, with their true membership.
fn cut_test_planes(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<Vec<(Plane, bool)>> {
    let symbol = v_pl_symbol(ctx.m, 1, ctx.n, ctx.m)?;
    Ok(vec![
        (cut_plane(ctx.n, ctx.m, rng), true),
        (schubert_generic_sample_with(&symbol, rng).plane(), true),
        (
            chart_to_plane(&gaussian_chart(ctx.n, ctx.m, Signature::Compact, rng)),
            false,
        ),
    ])
}

fn cayley_criterion(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut mismatches = 0;
    for (plane, truth) in cut_test_planes(ctx, rng)? {
        let test = cut_locus_test(&plane, 1e-9)?;
        mismatches += usize::from(test != truth) + usize::from(cayley_cut_check(&plane)? != test);
    }
    Ok(mismatches as f64)
}

fn schubert_cut_equivalence(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let symbol = v_pl_symbol(ctx.m, 1, ctx.n, ctx.m)?;
    let mut mismatches = 0;
    for (plane, truth) in cut_test_planes(ctx, rng)? {
        let test = cut_locus_test(&plane, 1e-9)?;
        mismatches += usize::from(test != truth) + usize::from(schubert_membership(&plane, &symbol)? != test);
    }
    Ok(mismatches as f64)
}

fn schubert_soundness(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut omega: Vec<usize> = (0..ctx.n).map(|_| rng.random_range(0..=ctx.m)).collect();
    omega.sort_unstable();
    let symbol = SchubertSymbol::new(omega, ctx.m)?;
    let plane = schubert_generic_sample_with(&symbol, rng).plane();
    let member = schubert_membership(&plane, &symbol)?;
    let generic = is_generic(&plane, &symbol)?;
    Ok(f64::from(u8::from(!member) + u8::from(!generic)))
}

/// Largest relative Jacobian singular value over the pole-free conjugate radii of a
/// random direction.
fn conjugate_radii(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = random_direction(ctx.n.min(ctx.m), rng);
    let mut worst: f64 = 0.0;
    for param in tangent_conjugate_params(&h, ctx.n, ctx.m, ctx.lambda_max)? {
        if clear_of_poles(&h, param.t, POLE_MARGIN) {
            let probe = conjugate_test_jacobian(&cartan_to_tangent(&h, param.t, ctx.n, ctx.m)?, CONJUGATE_TOL)?;
            worst = worst.max(probe.relative());
        }
    }
    Ok(worst)
}

/// Smallest relative Jacobian singular value at the pole-free midpoints between
/// consecutive conjugate radii of a random direction.
fn conjugate_midpoints(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = random_direction(ctx.n.min(ctx.m), rng);
    let mut times: Vec<f64> = tangent_conjugate_params(&h, ctx.n, ctx.m, ctx.lambda_max)?
        .iter()
        .map(|c| c.t)
        .collect();
    times.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let mut worst = f64::INFINITY;
    for pair in times.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        if clear_of_poles(&h, mid, POLE_MARGIN) {
            let (_, probe) = probe_along(&h, mid, ctx.n, ctx.m, Signature::Compact, CONJUGATE_TOL)?;
            worst = worst.min(probe.relative());
        }
    }
    Ok(worst)
}

/// For every `t1` radius where the Jacobian degenerates, the gap between the
/// closest two angles with `O`; for every `t2` radius, the distance of the nearest
/// angle to `0` or `π/2`. Returns the largest.
fn conjugate_classification(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let r = ctx.n.min(ctx.m);
    let h = random_direction(r, rng);
    let mut worst: f64 = 0.0;
    for param in tangent_conjugate_params(&h, ctx.n, ctx.m, ctx.lambda_max)? {
        let b = cartan_to_tangent(&h, param.t, ctx.n, ctx.m)?;
        let spectrum = angles_to_origin(&geodesic_group(&b, 1.0)?)?;
        let top = &spectrum.angles()[..r];
        if param.family.is_t1() {
            if !clear_of_poles(&h, param.t, POLE_MARGIN) || !conjugate_test_jacobian(&b, CONJUGATE_TOL)?.is_conjugate {
                continue;
            }
            let gap = top.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
            worst = worst.max(gap);
        } else if param.family == ConjugateFamily::T2 {
            let edge = top.iter().map(|&a| a.min(FRAC_PI_2 - a)).fold(f64::INFINITY, f64::min);
            worst = worst.max(edge);
        }
    }
    Ok(worst)
}

/// Smallest relative Jacobian singular value along a random unit noncompact
/// geodesic at `t = 0.3, 0.6, …, 3`.
fn noncompact_no_conjugate(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<f64> {
    let b = grassmann_core::grassmann::random::random_unit_tangent(ctx.n, ctx.m, Signature::Noncompact, rng);
    (1..=10).try_fold(f64::INFINITY, |acc, k| {
        let t = NONCOMPACT_HORIZON * k as f64 / 10.0;
        let probe = conjugate_test_jacobian(&b.scaled(t), CONJUGATE_TOL)?;
        Ok::<f64, Error>(acc.min(probe.relative()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_covers_required_names() {
        let names: Vec<&str> = registry().iter().map(|p| p.name).collect();
        for required in REQUIRED {
            assert!(names.contains(&required), "missing property {required}");
        }
        let mut unique = names.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), names.len());
    }

    #[test]
    fn bounds() {
        assert!(Bound::Upper(1.0).holds(1.0) && !Bound::Upper(1.0).holds(1.5));
        assert!(Bound::Lower(0.1).holds(0.2) && !Bound::Lower(0.1).holds(0.05));
        assert_eq!(Bound::Lower(0.1).worse(0.2, 0.3), 0.2);
        assert!(!Bound::Upper(1.0).holds(f64::NAN));
    }
}
