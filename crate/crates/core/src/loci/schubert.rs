//! Schubert varieties of `G_n(C^(n+m))` relative to a flag adapted to `O`.
//!
//! The flag is `F^p = span(f_1, …, f_p)` with `f = (e_{n+1}, …, e_{n+m}, e_1, …, e_n)`,
//! so that `F^m = O⊥`. With `σ(i) = ω(i) + i`, the variety `Z(ω)` is the set of
//! planes with `dim(X ∩ F^{σ(i)}) ≥ i` for every `i`, and `Z(m−1, m, …, m)` is the
//! set of planes meeting `O⊥`, the cut locus of `O`.

use alloc::vec::Vec;

use rand::Rng;

use crate::grassmann::random::{complex_gaussian, seeded_rng};
use crate::grassmann::{ChartPoint, Plane};
use crate::numkernel::{rank_tol, ComplexMatrix};
use crate::{Error, Result};

/// Relative rank tolerance for intersection dimensions.
pub const INTERSECTION_TOL: f64 = 1e-9;

/// A nondecreasing sequence `0 ≤ ω(1) ≤ … ≤ ω(n) ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchubertSymbol {
    omega: Vec<usize>,
    m: usize,
}

impl SchubertSymbol {
    pub fn new(omega: Vec<usize>, m: usize) -> Result<Self> {
        if omega.is_empty() || m == 0 {
            return Err(Error::Precondition("Schubert symbol needs n, m >= 1".into()));
        }
        if omega.windows(2).any(|w| w[0] > w[1]) || omega.iter().any(|&w| w > m) {
            return Err(Error::Precondition(alloc::format!(
                "Schubert symbol {omega:?} must be nondecreasing with entries in [0, {m}]"
            )));
        }
        Ok(Self { omega, m })
    }

    /// The symbol `(m, …, m)` of the whole Grassmannian.
    pub fn full(n: usize, m: usize) -> Result<Self> {
        Self::new(alloc::vec![m; n], m)
    }

    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `σ(i) = ω(i) + i`, 1-based `i`.
    pub fn sigma(&self, i: usize) -> usize {
        self.omega[i - 1] + i
    }

    /// Complex dimension `Σ ω(i)` of the variety.
    pub fn dimension(&self) -> usize {
        self.omega.iter().sum()
    }
}

/// The flag vector `f_k` (1-based) as an index into `C^(n+m)`.
fn flag_index(k: usize, n: usize, m: usize) -> usize {
    if k <= m {
        n + k - 1
    } else {
        k - m - 1
    }
}

/// Rows `f_1, …, f_p` of the reference flag.
pub fn flag_space(p: usize, n: usize, m: usize) -> ComplexMatrix {
    let mut rows = ComplexMatrix::zeros(p, n + m);
    for k in 1..=p {
        rows[(k - 1, flag_index(k, n, m))] = 1.0.into();
    }
    rows
}

/// `dim(X ∩ F^p) = n + p − rank([basis X; f_1 … f_p])`.
pub fn intersection_dim(x: &Plane, p: usize) -> Result<usize> {
    let n = x.n();
    let m = x.m();
    if p > n + m {
        return Err(Error::Precondition(alloc::format!(
            "flag index {p} exceeds N = {}",
            n + m
        )));
    }
    if p == 0 {
        return Ok(0);
    }
    let stacked = x.orthonormal_basis()?.vstack(&flag_space(p, n, m));
    Ok(n + p - rank_tol(&stacked, INTERSECTION_TOL)?)
}

fn check_dims(x: &Plane, w: &SchubertSymbol) -> Result<()> {
    if x.n() != w.n() || x.m() != w.m() {
        return Err(Error::ShapeMismatch {
            expected: (w.n(), w.n() + w.m()),
            got: x.basis().shape(),
        });
    }
    Ok(())
}

/// Whether `X ∈ Z(ω)`: `dim(X ∩ F^{σ(i)}) ≥ i` for `i = 1, …, n`.
pub fn schubert_membership(x: &Plane, w: &SchubertSymbol) -> Result<bool> {
    check_dims(x, w)?;
    for i in 1..=w.n() {
        if intersection_dim(x, w.sigma(i))? < i {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indices `i` (1-based) where `ω` strictly increases, followed by `n`.
pub fn jumps(w: &SchubertSymbol) -> Vec<usize> {
    let n = w.n();
    let mut out: Vec<usize> = (1..n).filter(|&i| w.omega[i - 1] < w.omega[i]).collect();
    out.push(n);
    out
}

/// Whether `X` is a generic point of `Z(ω)`: a member with
/// `dim(X ∩ F^{σ(i)}) = i` exactly at every jump `i`.
pub fn is_generic(x: &Plane, w: &SchubertSymbol) -> Result<bool> {
    if !schubert_membership(x, w)? {
        return Ok(false);
    }
    for i in jumps(w) {
        if intersection_dim(x, w.sigma(i))? != i {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Plane of the Schubert cell of `ω` with coordinates `z` (`n×m`, `z_ij = 0` for
/// `j > ω(i)`): row `i` is `f_{σ(i)} + Σ_{j ≤ ω(i)} z_ij·g_j`, where `g_1, …, g_m` are
/// the flag vectors not used as pivots, in flag order.
///
/// For `ω = (m, …, m)` this is the chart plane `(1 | Z)`.
pub fn schubert_cell_plane(w: &SchubertSymbol, z: &ComplexMatrix) -> Result<Plane> {
    let (n, m) = (w.n(), w.m());
    z.check_shape((n, m))?;
    for i in 0..n {
        for j in w.omega[i]..m {
            if z[(i, j)].norm() != 0.0 {
                return Err(Error::Precondition(alloc::format!(
                    "cell coordinate ({}, {}) lies beyond the staircase of {:?}",
                    i + 1,
                    j + 1,
                    w.omega
                )));
            }
        }
    }
    let pivots: Vec<usize> = (1..=n).map(|i| w.sigma(i)).collect();
    let free: Vec<usize> = (1..=n + m).filter(|k| !pivots.contains(k)).collect();
    let mut basis = ComplexMatrix::zeros(n, n + m);
    for i in 0..n {
        basis[(i, flag_index(pivots[i], n, m))] = 1.0.into();
        for (j, &k) in free.iter().enumerate().take(w.omega[i]) {
            basis[(i, flag_index(k, n, m))] = z[(i, j)];
        }
    }
    Plane::new(basis)
}

/// A point of a Schubert cell in staircase coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CellPoint {
    pub symbol: SchubertSymbol,
    /// `n×m`, zero beyond the staircase `j > ω(i)`.
    pub coords: ComplexMatrix,
}

impl CellPoint {
    pub fn plane(&self) -> Plane {
        schubert_cell_plane(&self.symbol, &self.coords).expect("staircase enforced at construction")
    }

    /// The same plane in Pontrjagin coordinates, when the cell is the open one.
    pub fn chart_point(&self) -> Option<ChartPoint> {
        (self.symbol.omega.iter().all(|&w| w == self.symbol.m))
            .then(|| ChartPoint::compact(self.coords.clone()).expect("finite"))
    }
}

/// Random point of the open cell of `Z(ω)`: Gaussian entries on the staircase
/// `j ≤ ω(i)`, exact zeros beyond it.
pub fn schubert_generic_sample_with<R: Rng + ?Sized>(w: &SchubertSymbol, rng: &mut R) -> CellPoint {
    let coords = ComplexMatrix::from_fn(w.n(), w.m(), |i, j| {
        if j < w.omega[i] {
            complex_gaussian(rng)
        } else {
            0.0.into()
        }
    });
    CellPoint {
        symbol: w.clone(),
        coords,
    }
}

pub fn schubert_generic_sample(w: &SchubertSymbol, seed: u64) -> CellPoint {
    schubert_generic_sample_with(w, &mut seeded_rng(seed))
}

/// `ω^p_l = (p−l, …, p−l, m, …, m)` with `l` leading entries; `V^p_l = Z(ω^p_l)`.
pub fn v_pl_symbol(p: usize, l: usize, n: usize, m: usize) -> Result<SchubertSymbol> {
    if l > n.min(p) || p - l > m {
        return Err(Error::Precondition(alloc::format!(
            "V^p_l needs 0 <= l <= min(n, p) and p - l <= m; got p = {p}, l = {l}, n = {n}, m = {m}"
        )));
    }
    let mut omega = alloc::vec![p - l; l];
    omega.resize(n, m);
    SchubertSymbol::new(omega, m)
}
