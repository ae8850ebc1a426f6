use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::numkernel::{orthonormal_rows, rank_tol, svd, ComplexMatrix};
use crate::{Error, Result};

/// Which member of the dual pair a point or tangent vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    /// `G_n(C^(n+m)) = SU(n+m)/S(U(n)×U(m))`.
    Compact,
    /// `SU(n,m)/S(U(n)×U(m))` in its bounded realization.
    Noncompact,
}

impl Signature {
    /// `+1` for the compact Grassmannian, `−1` for its dual.
    pub fn epsilon(self) -> f64 {
        match self {
            Signature::Compact => 1.0,
            Signature::Noncompact => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Compact => "compact",
            Signature::Noncompact => "noncompact",
        }
    }
}

impl core::str::FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compact" => Ok(Signature::Compact),
            "noncompact" => Ok(Signature::Noncompact),
            other => Err(Error::Precondition(alloc::format!("unknown signature `{other}`"))),
        }
    }
}

/// Pontrjagin coordinates `Z` (`n×m`) of a plane in the chart `V₀` around `O`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    z: ComplexMatrix,
    signature: Signature,
}

impl ChartPoint {
    /// Validates finiteness and, on the noncompact side, `‖Z‖₂ < 1`.
    pub fn new(z: ComplexMatrix, signature: Signature) -> Result<Self> {
        if !z.is_finite() {
            return Err(Error::Precondition("chart coordinates must be finite".into()));
        }
        if z.rows() == 0 || z.cols() == 0 {
            return Err(Error::Precondition("chart coordinates need n, m >= 1".into()));
        }
        if signature == Signature::Noncompact {
            let top = svd(&z)?.s[0];
            if !(top < 1.0) {
                return Err(Error::Domain(alloc::format!(
                    "noncompact chart point needs singular values < 1, got {top}"
                )));
            }
        }
        Ok(Self { z, signature })
    }

    pub fn compact(z: ComplexMatrix) -> Result<Self> {
        Self::new(z, Signature::Compact)
    }

    pub fn noncompact(z: ComplexMatrix) -> Result<Self> {
        Self::new(z, Signature::Noncompact)
    }

    /// `Z = 0`, the base plane `O`.
    pub fn origin(n: usize, m: usize, signature: Signature) -> Self {
        Self {
            z: ComplexMatrix::zeros(n, m),
            signature,
        }
    }

    #[inline]
    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.z
    }

    #[inline]
    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// Plane dimension.
    #[inline]
    pub fn n(&self) -> usize {
        self.z.rows()
    }

    /// Codimension.
    #[inline]
    pub fn m(&self) -> usize {
        self.z.cols()
    }
}

/// Normal coordinates `B` (`n×m`) at `O`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCoord {
    b: ComplexMatrix,
    signature: Signature,
}

impl TangentCoord {
    pub fn new(b: ComplexMatrix, signature: Signature) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::Precondition("tangent coordinates must be finite".into()));
        }
        if b.rows() == 0 || b.cols() == 0 {
            return Err(Error::Precondition("tangent coordinates need n, m >= 1".into()));
        }
        Ok(Self { b, signature })
    }

    pub fn compact(b: ComplexMatrix) -> Result<Self> {
        Self::new(b, Signature::Compact)
    }

    pub fn noncompact(b: ComplexMatrix) -> Result<Self> {
        Self::new(b, Signature::Noncompact)
    }

    pub fn zero(n: usize, m: usize, signature: Signature) -> Self {
        Self {
            b: ComplexMatrix::zeros(n, m),
            signature,
        }
    }

    #[inline]
    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.b
    }

    #[inline]
    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    /// `t·B`.
    pub fn scaled(&self, t: f64) -> Self {
        Self {
            b: self.b.scale(t),
            signature: self.signature,
        }
    }

    /// Frobenius norm, the geodesic length of `t ↦ exp(t·B)` on `[0, 1]`.
    pub fn norm(&self) -> f64 {
        self.b.frobenius_norm()
    }
}

/// An `n`-dimensional subspace of `C^N` given by `n` spanning rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    basis: ComplexMatrix,
}

impl Plane {
    /// Rank tolerance for accepting a spanning set.
    pub const RANK_TOL: f64 = 1e-9;

    pub fn new(basis: ComplexMatrix) -> Result<Self> {
        if !basis.is_finite() {
            return Err(Error::Precondition("plane basis must be finite".into()));
        }
        let (n, big_n) = basis.shape();
        if n == 0 || n >= big_n {
            return Err(Error::Precondition(alloc::format!(
                "plane basis must be n×N with 1 <= n < N, got {n}×{big_n}"
            )));
        }
        let rank = rank_tol(&basis, Self::RANK_TOL)?;
        if rank != n {
            return Err(Error::Precondition(alloc::format!(
                "plane basis rows are dependent (rank {rank} < {n})"
            )));
        }
        Ok(Self { basis })
    }

    /// The base plane `O = span(e_1, …, e_n)` in `C^(n+m)`.
    pub fn origin(n: usize, m: usize) -> Self {
        Self {
            basis: ComplexMatrix::identity(n).hstack(&ComplexMatrix::zeros(n, m)),
        }
    }

    #[inline]
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    /// Ambient dimension `N = n + m`.
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.ambient_dim() - self.n()
    }

    /// Orthonormal rows spanning the same subspace.
    pub fn orthonormal_basis(&self) -> Result<ComplexMatrix> {
        orthonormal_rows(&self.basis)
    }
}

/// Stationary angles between two planes, sorted descending, each in `[0, π/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSpectrum {
    angles: Vec<f64>,
}

impl AngleSpectrum {
    pub fn new(mut angles: Vec<f64>) -> Result<Self> {
        if angles.iter().any(|a| !(0.0..=FRAC_PI_2 + 1e-12).contains(a)) {
            return Err(Error::Precondition("stationary angles must lie in [0, π/2]".into()));
        }
        angles.iter_mut().for_each(|a| *a = a.min(FRAC_PI_2));
        angles.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { angles })
    }

    #[inline]
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn max(&self) -> f64 {
        self.angles.first().copied().unwrap_or(0.0)
    }

    /// `Π cos θᵢ`, the cosine of the Cayley distance.
    pub fn cosine_product(&self) -> f64 {
        self.angles.iter().map(|&a| libm::cos(a)).product()
    }

    /// `√(Σ θᵢ²)`, the geodesic distance on the compact Grassmannian.
    pub fn geodesic_length(&self) -> f64 {
        libm::sqrt(self.angles.iter().map(|a| a * a).sum())
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.angles
    }
}

/// Plücker coordinates: the `n×n` minors of a basis over increasing column tuples,
/// in lexicographic order of the (0-based) tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerVector {
    pub(crate) n: usize,
    pub(crate) ambient_dim: usize,
    pub(crate) coords: Vec<Complex64>,
}

impl PluckerVector {
    pub fn new(n: usize, ambient_dim: usize, coords: Vec<Complex64>) -> Result<Self> {
        let expected = super::plucker::binomial(ambient_dim, n);
        if coords.len() != expected {
            return Err(Error::Precondition(alloc::format!(
                "C({ambient_dim},{n}) = {expected} coordinates expected, got {}",
                coords.len()
            )));
        }
        Ok(Self { n, ambient_dim, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Coordinate for an increasing 0-based column tuple.
    pub fn get(&self, tuple: &[usize]) -> Option<Complex64> {
        super::plucker::tuple_rank(tuple, self.ambient_dim)
            .filter(|_| tuple.len() == self.n)
            .map(|k| self.coords[k])
    }

    /// `(tuple, coordinate)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, Complex64)> + '_ {
        super::plucker::Combinations::new(self.ambient_dim, self.n).zip(self.coords.iter().copied())
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.coords.iter().map(|z| z.norm_sqr()).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_rejects_dependent_rows() {
        let dep = ComplexMatrix::from_real_rows(&[&[1.0, 0.0, 0.0], &[2.0, 0.0, 0.0]]);
        assert!(Plane::new(dep).is_err());
        let square = ComplexMatrix::identity(2);
        assert!(Plane::new(square).is_err());
    }

    #[test]
    fn noncompact_chart_point_is_bounded() {
        let inside = ComplexMatrix::from_real_diagonal(1, 1, &[0.9]);
        assert!(ChartPoint::noncompact(inside).is_ok());
        let outside = ComplexMatrix::from_real_diagonal(1, 1, &[1.0]);
        assert!(ChartPoint::noncompact(outside.clone()).is_err());
        assert!(ChartPoint::compact(outside).is_ok());
    }

    #[test]
    fn spectrum_sorts_and_summarizes() {
        let s = AngleSpectrum::new(alloc::vec![0.3, 0.4]).unwrap();
        assert_eq!(s.angles(), &[0.4, 0.3]);
        assert!((s.geodesic_length() - 0.5).abs() < 1e-15);
        assert!(AngleSpectrum::new(alloc::vec![2.0]).is_err());
    }

    #[test]
    fn signature_parsing() {
        assert_eq!("compact".parse::<Signature>().unwrap(), Signature::Compact);
        assert_eq!("noncompact".parse::<Signature>().unwrap().epsilon(), -1.0);
        assert!("flat".parse::<Signature>().is_err());
    }
}
