//! Seeded random planes, chart points and tangent vectors.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{plane_to_chart, ChartPoint, Plane, Signature, TangentCoord};
use crate::numkernel::{orthonormal_rows, svd, ComplexMatrix};
use crate::Result;

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian sample (`E|z|² = 1`).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed `n×n` unitary (rows of an orthonormalized Gaussian matrix).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        if let Ok(q) = orthonormal_rows(&gaussian_matrix(n, n, rng)) {
            return q;
        }
    }
}

/// Uniformly distributed plane: orthonormalized rows of an `n×(n+m)` Gaussian matrix.
pub fn haar_random_plane_with<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Plane {
    assert!(n >= 1 && m >= 1, "haar_random_plane needs n, m >= 1");
    loop {
        if let Ok(q) = orthonormal_rows(&gaussian_matrix(n, n + m, rng)) {
            if let Ok(p) = Plane::new(q) {
                return p;
            }
        }
    }
}

pub fn haar_random_plane(n: usize, m: usize, seed: u64) -> Plane {
    haar_random_plane_with(n, m, &mut seeded_rng(seed))
}

/// Uniform plane conditioned on lying in the chart, as compact chart coordinates.
pub fn haar_random_chart_with<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> ChartPoint {
    loop {
        if let Ok(z) = plane_to_chart(&haar_random_plane_with(n, m, rng)) {
            return z;
        }
    }
}

pub fn haar_random_chart(n: usize, m: usize, seed: u64) -> ChartPoint {
    haar_random_chart_with(n, m, &mut seeded_rng(seed))
}

/// `B = U·diag(σ)·V*` with Haar-random singular vectors and the given singular values.
pub fn random_tangent_with_spectrum<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    sigmas: &[f64],
    signature: Signature,
    rng: &mut R,
) -> Result<TangentCoord> {
    let dec = svd(&gaussian_matrix(n, m, rng))?;
    let mut values: Vec<f64> = sigmas.to_vec();
    values.resize(dec.s.len(), 0.0);
    TangentCoord::new(dec.recompose_with(&values), signature)
}

/// Gaussian direction scaled to unit Frobenius norm.
pub fn random_unit_tangent<R: Rng + ?Sized>(n: usize, m: usize, signature: Signature, rng: &mut R) -> TangentCoord {
    loop {
        let g = gaussian_matrix(n, m, rng);
        let norm = g.frobenius_norm();
        if norm > 1e-12 {
            return TangentCoord::new(g.scale(1.0 / norm), signature).expect("finite");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{angles_to_origin, stationary_angles_svd};

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(haar_random_plane(2, 3, 7), haar_random_plane(2, 3, 7));
        let a = haar_random_plane(2, 2, 11);
        let b = haar_random_plane(2, 2, 12);
        assert!(stationary_angles_svd(&a, &b).unwrap().max() > 1e-6);
        assert_eq!(haar_random_chart(1, 2, 5), haar_random_chart(1, 2, 5));
    }

    #[test]
    fn uniform_lines_have_mean_cos_squared_one_half() {
        // cos²θ of a uniform line in C² against a fixed line is uniform on [0, 1]
        let mut rng = seeded_rng(2024);
        let trials = 10_000;
        let mean: f64 = (0..trials)
            .map(|_| libm::cos(angles_to_origin(&haar_random_plane_with(1, 1, &mut rng)).unwrap().max()).powi(2))
            .sum::<f64>()
            / trials as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean cos² = {mean}");
    }

    #[test]
    fn prescribed_spectrum() {
        let mut rng = seeded_rng(3);
        let b = random_tangent_with_spectrum(2, 3, &[0.7, 0.2], Signature::Compact, &mut rng).unwrap();
        let s = svd(b.b()).unwrap().s;
        assert!((s[0] - 0.7).abs() < 1e-13 && (s[1] - 0.2).abs() < 1e-13);
    }
}
