//! Random inputs shared by the property suite and the tests.

use std::f64::consts::{FRAC_PI_2, PI};

use grassmann_core::grassmann::random::{gaussian_matrix, random_tangent_with_spectrum, random_unitary};
use grassmann_core::grassmann::{exp0, ChartPoint, Plane, Signature, TangentCoord};
use grassmann_core::loci::CartanDirection;
use grassmann_core::numkernel::ComplexMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Generator for one trial, keyed by the suite seed and the (property, trial) pair.
pub fn trial_rng(seed: u64, property: usize, trial: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(property as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(trial as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Chart point with standard complex Gaussian `Z` (compact), or `tanh` of a tangent
/// vector with singular values in `[0, 3)` (noncompact).
pub fn gaussian_chart<R: Rng>(n: usize, m: usize, signature: Signature, rng: &mut R) -> ChartPoint {
    match signature {
        Signature::Compact => ChartPoint::compact(gaussian_matrix(n, m, rng)).expect("finite"),
        Signature::Noncompact => {
            let b = tangent_below(n, m, 3.0, Signature::Noncompact, rng);
            exp0(&b).expect("noncompact exponential is global")
        }
    }
}

/// Tangent vector with Haar singular vectors and singular values uniform in `[0, max)`.
pub fn tangent_below<R: Rng>(n: usize, m: usize, max: f64, signature: Signature, rng: &mut R) -> TangentCoord {
    let sigmas: Vec<f64> = (0..n.min(m)).map(|_| rng.random::<f64>() * max).collect();
    random_tangent_with_spectrum(n, m, &sigmas, signature, rng).expect("finite spectrum")
}

/// Plane at angle exactly `π/2` from `O` in one direction: rows
/// `cos θᵢ·uᵢ + sin θᵢ·vᵢ` with `θ₁ = π/2`, the other angles uniform in `[0, 0.45π)`,
/// `uᵢ` orthonormal in `O` and `vᵢ` orthonormal in `O⊥`.
pub fn cut_plane<R: Rng>(n: usize, m: usize, rng: &mut R) -> Plane {
    let u = random_unitary(n, rng);
    let v = random_unitary(m, rng);
    let r = n.min(m);
    let mut basis = ComplexMatrix::zeros(n, n + m);
    for i in 0..n {
        let theta = match i {
            0 => FRAC_PI_2,
            i if i < r => rng.random::<f64>() * 0.45 * PI,
            _ => 0.0,
        };
        let (s, c) = theta.sin_cos();
        for k in 0..n {
            basis[(i, k)] = u[(i, k)] * c;
        }
        if i < r {
            for k in 0..m {
                basis[(i, n + k)] = v[(i, k)] * s;
            }
        }
    }
    Plane::new(basis).expect("orthonormal rows")
}

/// Uniformly random unit vector in `R^r`.
pub fn random_direction<R: Rng>(r: usize, rng: &mut R) -> CartanDirection {
    loop {
        let v: Vec<f64> = (0..r).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(h) = CartanDirection::normalized(&v) {
            return h;
        }
    }
}

/// Whether every `t·|hᵢ|` keeps a distance above `margin` from the poles `π/2 + kπ`.
pub fn clear_of_poles(h: &CartanDirection, t: f64, margin: f64) -> bool {
    h.h().iter().all(|x| {
        let s = (t * x).abs();
        let offset = (s - FRAC_PI_2).rem_euclid(PI);
        offset.min(PI - offset) > margin
    })
}
