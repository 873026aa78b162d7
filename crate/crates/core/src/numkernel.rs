//! Dense complex vectors and Hermitian matrices.
//!
//! Inner products are conjugate-linear in the first argument, so
//! `inner_product(u, v) = Σ conj(u_i) v_i` reads as the bra-ket `⟨u|v⟩`.

use num_complex::Complex64;

use crate::error::{ensure_dim, Error, Result};

/// Relative tolerance used by [`check_hermitian`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// A dense complex column vector with at least one entry, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<Complex64>,
}

impl Vector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if !entries.iter().all(|z| z.is_finite()) {
            return Err(Error::NonFinite { context: "vector" });
        }
        Ok(Self { entries })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    /// The `k`-th standard basis vector of dimension `dim`.
    pub fn unit(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if k >= dim {
            return Err(Error::LevelOutOfRange { level: k, dim });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim];
        entries[k] = Complex64::new(1.0, 0.0);
        Ok(Self { entries })
    }

    /// Wraps entries produced by arithmetic on already-validated values.
    pub(crate) fn from_raw(entries: Vec<Complex64>) -> Self {
        debug_assert!(!entries.is_empty());
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::from_raw(self.entries.iter().map(|z| z * c).collect())
    }

    /// Returns `self / ‖self‖`.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self::from_raw(self.entries.iter().map(|z| z / n).collect()))
    }

    /// Returns `self - other`.
    pub fn sub(&self, other: &Vector) -> Result<Self> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(Self::from_raw(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }
}

/// Dense, row-major, complex self-adjoint matrix.
///
/// Construction validates hermiticity with [`check_hermitian`] and then
/// replaces the entries by `(A + A†)/2`, so `a[i][j] == conj(a[j][i])` holds
/// bit-exactly afterwards and the diagonal is exactly real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        ensure_dim(dim * dim, entries.len())?;
        if !entries.iter().all(|z| z.is_finite()) {
            return Err(Error::NonFinite { context: "matrix" });
        }
        let violation = hermiticity_violation(dim, &entries);
        if violation > HERMITICITY_TOL * max_abs(&entries) {
            return Err(Error::NonHermitianInput {
                max_violation: violation,
            });
        }
        let mut data = entries;
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(data[i * dim + i].re, 0.0);
            for j in (i + 1)..dim {
                let avg = (data[i * dim + j] + data[j * dim + i].conj()) * 0.5;
                data[i * dim + j] = avg;
                data[j * dim + i] = avg.conj();
            }
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            ensure_dim(dim, row.len())?;
            entries.extend_from_slice(row);
        }
        Self::from_entries(dim, entries)
    }

    /// Builds a real symmetric matrix from row-major values.
    pub fn from_real(dim: usize, values: &[f64]) -> Result<Self> {
        Self::from_entries(
            dim,
            values.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        )
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &v) in values.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(v, 0.0);
        }
        Self::from_entries(dim, entries)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![0.0; dim])
    }

    /// Wraps entries that are Hermitian by construction.
    pub(crate) fn from_raw(dim: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }
}

fn max_abs(entries: &[Complex64]) -> f64 {
    entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest `|a[i][j] - conj(a[j][i])|` over a square row-major array.
pub fn hermiticity_violation(dim: usize, entries: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in i..dim {
            let d = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// True iff the square row-major array is Hermitian to within
/// `1e-12 · max|entry|`.
///
/// Returns false when `entries` is not `dim * dim` long or holds non-finite
/// values.
pub fn check_hermitian(dim: usize, entries: &[Complex64]) -> bool {
    if entries.len() != dim * dim || !entries.iter().all(|z| z.is_finite()) {
        return false;
    }
    hermiticity_violation(dim, entries) <= HERMITICITY_TOL * max_abs(entries)
}

/// `⟨u|v⟩ = Σ conj(u_i) v_i`.
pub fn inner_product(u: &Vector, v: &Vector) -> Result<Complex64> {
    ensure_dim(u.dim(), v.dim())?;
    Ok(u.entries
        .iter()
        .zip(&v.entries)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// `A v`.
pub fn matvec(a: &HermitianMatrix, v: &Vector) -> Result<Vector> {
    ensure_dim(a.dim, v.dim())?;
    let n = a.dim;
    let out = (0..n)
        .map(|i| {
            a.data[i * n..(i + 1) * n]
                .iter()
                .zip(&v.entries)
                .map(|(aij, vj)| aij * vj)
                .sum()
        })
        .collect();
    Ok(Vector::from_raw(out))
}

/// `⟨u|A|v⟩`. When `u` and `v` are the same vector the value is real for
/// Hermitian `A` and is returned with its imaginary part set to zero.
pub fn matrix_element(u: &Vector, a: &HermitianMatrix, v: &Vector) -> Result<Complex64> {
    ensure_dim(u.dim(), v.dim())?;
    let z = inner_product(u, &matvec(a, v)?)?;
    if u == v {
        Ok(Complex64::new(z.re, 0.0))
    } else {
        Ok(z)
    }
}

/// `A + x B`.
pub fn add_scaled(a: &HermitianMatrix, b: &HermitianMatrix, x: f64) -> Result<HermitianMatrix> {
    ensure_dim(a.dim, b.dim)?;
    if !x.is_finite() {
        return Err(Error::NonFinite {
            context: "strength",
        });
    }
    // Real x keeps conj-symmetry exact, so no re-symmetrization is needed.
    let data = a.data.iter().zip(&b.data).map(|(p, q)| p + q * x).collect();
    Ok(HermitianMatrix::from_raw(a.dim, data))
}
