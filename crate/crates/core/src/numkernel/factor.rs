//! LU, Cholesky and row orthonormalization for small dense matrices.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

/// LU factorization with partial pivoting, `P·A = L·U` packed in one matrix.
#[derive(Clone, Debug)]
pub struct Lu {
    packed: ComplexMatrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Precondition("LU needs a square matrix".into()));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(Self {
            packed: lu,
            perm,
            sign,
            singular,
        })
    }

    pub fn determinant(&self) -> Complex64 {
        if self.singular {
            return Complex64::new(0.0, 0.0);
        }
        let n = self.packed.rows();
        (0..n).fold(Complex64::new(self.sign, 0.0), |acc, i| acc * self.packed[(i, i)])
    }

    /// Solves `A·X = rhs`.
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.packed.rows();
        if rhs.rows() != n {
            return Err(Error::ShapeMismatch {
                expected: (n, rhs.cols()),
                got: rhs.shape(),
            });
        }
        if self.singular {
            return Err(Error::Domain("matrix is singular".into()));
        }
        let mut x = ComplexMatrix::from_fn(n, rhs.cols(), |i, j| rhs[(self.perm[i], j)]);
        for c in 0..rhs.cols() {
            for i in 0..n {
                let mut s = x[(i, c)];
                for k in 0..i {
                    s -= self.packed[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= self.packed[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = s / self.packed[(i, i)];
            }
        }
        Ok(x)
    }
}

pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    Ok(Lu::new(a)?.determinant())
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Lu::new(a)?.solve(&ComplexMatrix::identity(a.rows()))
}

/// Lower-triangular `L` with `A = L·L*` for Hermitian positive definite `A`.
pub fn cholesky(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::Precondition("Cholesky needs a square matrix".into()));
    }
    let n = a.rows();
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::Domain("matrix is not positive definite".into()));
        }
        let d = libm::sqrt(d);
        l[(j, j)] = Complex64::new(d, 0.0);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// Solves `L·X = rhs` for lower-triangular `L`.
pub fn solve_lower(l: &ComplexMatrix, rhs: &ComplexMatrix) -> ComplexMatrix {
    let n = l.rows();
    let mut x = rhs.clone();
    for c in 0..rhs.cols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Orthonormal basis for the row space of `a` (rows of the result satisfy `Q·Q* = I`).
///
/// Uses modified Gram–Schmidt with one reorthogonalization pass. Fails when a row
/// becomes dependent on the previous ones to within `1e-13` relative.
pub fn orthonormal_rows(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (r, c) = a.shape();
    let scale = (0..r)
        .map(|i| libm::sqrt(a.row(i).iter().map(|z| z.norm_sqr()).sum()))
        .fold(0.0, f64::max);
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut v: Vec<Complex64> = a.row(i).to_vec();
        for _pass in 0..2 {
            for u in &q {
                let proj: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vk, uk) in v.iter_mut().zip(u) {
                    *vk -= proj * uk;
                }
            }
        }
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        if !(norm > 1e-13 * scale.max(f64::MIN_POSITIVE)) {
            return Err(Error::Domain("rows are linearly dependent".into()));
        }
        v.iter_mut().for_each(|z| *z /= norm);
        q.push(v);
    }
    Ok(ComplexMatrix::from_fn(r, c, |i, j| q[i][j]))
}
