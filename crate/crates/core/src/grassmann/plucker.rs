use alloc::vec::Vec;

use num_complex::Complex64;

use super::{Plane, PluckerVector};
use crate::numkernel::determinant;
use crate::{Error, Result};

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Increasing `k`-tuples from `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Position of an increasing tuple in lexicographic order, if valid.
pub(crate) fn tuple_rank(tuple: &[usize], n: usize) -> Option<usize> {
    let k = tuple.len();
    if tuple.windows(2).any(|w| w[0] >= w[1]) || tuple.last().is_some_and(|&l| l >= n) {
        return None;
    }
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in tuple.iter().enumerate() {
        for skipped in prev..c {
            rank += binomial(n - skipped - 1, k - i - 1);
        }
        prev = c + 1;
    }
    Some(rank)
}

/// Plücker coordinates of a plane: `n×n` minors of its basis matrix.
///
/// Scaling a basis row scales every coordinate by the same factor.
pub fn plucker(plane: &Plane) -> PluckerVector {
    let basis = plane.basis();
    let (n, big_n) = basis.shape();
    let coords = Combinations::new(big_n, n)
        .map(|cols| determinant(&basis.select_columns(&cols)).expect("minor is square"))
        .collect();
    PluckerVector {
        n,
        ambient_dim: big_n,
        coords,
    }
}

/// `Σ_I A^I · conj(B^I)`.
///
/// For hat bases of chart points `Z` (in `a`) and `Z′` (in `b`) this is the
/// overlap `det(1 + Z·Z′*)` by the Binet–Cauchy identity.
pub fn plucker_pairing(a: &PluckerVector, b: &PluckerVector) -> Result<Complex64> {
    if a.n != b.n || a.ambient_dim != b.ambient_dim {
        return Err(Error::ShapeMismatch {
            expected: (a.n, a.ambient_dim),
            got: (b.n, b.ambient_dim),
        });
    }
    Ok(a.coords.iter().zip(&b.coords).map(|(x, y)| x * y.conj()).sum())
}

/// `|⟨A, B⟩| / (‖A‖·‖B‖)`, the cosine of the Cayley distance between the
/// Plücker images. Independent of the chosen bases.
pub fn normalized_pairing(a: &PluckerVector, b: &PluckerVector) -> Result<f64> {
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        return Err(Error::Precondition("Plücker vector is zero".into()));
    }
    Ok((plucker_pairing(a, b)?.norm() / denom).min(1.0))
}
