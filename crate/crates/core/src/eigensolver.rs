//! Cyclic complex Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `A[p][q]` with a
//! diagonal unitary, then applies the real Jacobi rotation that annihilates
//! the now-real pivot. Sweeps run over the strict upper triangle in row
//! order until the off-diagonal Frobenius norm drops below
//! `1e-12 · ‖A‖_F`.

use num_complex::Complex64;

use crate::error::{ensure_dim, Error, Result};
use crate::numkernel::{HermitianMatrix, Vector};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Off-diagonal norm at which the iteration stops, relative to `‖A‖_F`.
pub const CONVERGENCE_TOL: f64 = 1e-12;

/// Relative width of the magnitude band treated as a tie in [`fix_phase`].
const PHASE_TIE_TOL: f64 = 1e-12;

/// Eigenvalues in ascending order and the matching orthonormal eigenvectors.
///
/// Column `m` of the eigenvector matrix is the basis vector `φ_m` for level
/// `E_m`; every column has its largest-magnitude entry real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vector>,
}

impl SpectralDecomposition {
    /// Assembles a decomposition from precomputed parts.
    ///
    /// Eigenvalues must be ascending and the vectors orthonormal to within
    /// `1e-10` in Frobenius norm. Phases are taken as given.
    pub fn from_parts(eigenvalues: Vec<f64>, eigenvectors: Vec<Vector>) -> Result<Self> {
        let dim = eigenvalues.len();
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        ensure_dim(dim, eigenvectors.len())?;
        for v in &eigenvectors {
            ensure_dim(dim, v.dim())?;
        }
        if !eigenvalues.iter().all(|e| e.is_finite()) {
            return Err(Error::NonFinite {
                context: "eigenvalues",
            });
        }
        if eigenvalues.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::ParseError {
                line: 0,
                reason: "eigenvalues must be ascending".into(),
            });
        }
        let spec = Self {
            eigenvalues,
            eigenvectors,
        };
        if spec.orthonormality_error() > 1e-10 {
            return Err(Error::ParseError {
                line: 0,
                reason: "eigenvectors are not orthonormal".into(),
            });
        }
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vector] {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, m: usize) -> &Vector {
        &self.eigenvectors[m]
    }

    /// Entry `(i, m)` of the eigenvector matrix `V`.
    #[inline]
    pub fn v(&self, i: usize, m: usize) -> Complex64 {
        self.eigenvectors[m].entries()[i]
    }

    /// Maps eigenbasis coordinates `b` to `Σ_j b_j φ_j` in the original basis.
    pub fn expand(&self, coefficients: &[Complex64]) -> Result<Vector> {
        ensure_dim(self.dim(), coefficients.len())?;
        let n = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (b, phi) in coefficients.iter().zip(&self.eigenvectors) {
            for (o, p) in out.iter_mut().zip(phi.entries()) {
                *o += b * p;
            }
        }
        Ok(Vector::from_raw(out))
    }

    /// `‖V†V − I‖_F`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for a in 0..n {
            for b in 0..n {
                let dot: Complex64 = self.eigenvectors[a]
                    .entries()
                    .iter()
                    .zip(self.eigenvectors[b].entries())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                acc += (dot - target).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖AV − VΛ‖_F` for the given source matrix.
    pub fn eigen_residual(&self, a: &HermitianMatrix) -> Result<f64> {
        ensure_dim(self.dim(), a.dim())?;
        let n = self.dim();
        let mut acc = 0.0;
        for m in 0..n {
            for i in 0..n {
                let av: Complex64 = (0..n).map(|j| a.get(i, j) * self.v(j, m)).sum();
                acc += (av - self.v(i, m) * self.eigenvalues[m]).norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }

    /// Row-major entries of `VΛV†`.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n)
                    .map(|m| self.v(i, m) * self.eigenvalues[m] * self.v(j, m).conj())
                    .sum();
            }
        }
        out
    }
}

/// Full eigendecomposition of `a` by cyclic Jacobi rotations.
pub fn jacobi_eigendecompose(
    a: &HermitianMatrix,
    max_sweeps: usize,
) -> Result<SpectralDecomposition> {
    let n = a.dim();
    let mut w: Vec<Complex64> = a.entries().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let target = CONVERGENCE_TOL * a.frobenius_norm();
    let mut sweep = 0;
    while off_diagonal_norm(&w, n) > target {
        if sweep == max_sweeps {
            return Err(Error::NoConvergence { sweeps: max_sweeps });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, n, p, q);
            }
        }
        sweep += 1;
    }

    let diag: Vec<f64> = (0..n).map(|i| w[i * n + i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep the order the rotations left them in
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));

    let eigenvalues = order.iter().map(|&m| diag[m]).collect();
    let eigenvectors = order
        .iter()
        .map(|&m| fix_phase(&Vector::from_raw((0..n).map(|i| v[i * n + m]).collect())))
        .collect::<Result<Vec<_>>>()?;

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(w: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Applies `W ← U† W U`, `V ← V U` with the unitary that zeroes `W[p][q]`.
fn rotate(w: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    // e^{-iφ} where A[p][q] = r e^{iφ}
    let unphase = apq.conj() / r;
    let app = w[p * n + p].re;
    let aqq = w[q * n + q].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta < 0.0 { -1.0 } else { 1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = w[k * n + p];
        let akq = w[k * n + q];
        let new_kp = akp * c - unphase * akq * s;
        let new_kq = akp * s + unphase * akq * c;
        w[k * n + p] = new_kp;
        w[k * n + q] = new_kq;
        w[p * n + k] = new_kp.conj();
        w[q * n + k] = new_kq.conj();
    }
    w[p * n + p] = Complex64::new(app - t * r, 0.0);
    w[q * n + q] = Complex64::new(aqq + t * r, 0.0);
    w[p * n + q] = Complex64::new(0.0, 0.0);
    w[q * n + p] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c - unphase * vkq * s;
        v[k * n + q] = vkp * s + unphase * vkq * c;
    }
}

/// Multiplies `column` by the unit scalar that makes its dominant entry real
/// and positive.
///
/// The dominant entry is the lowest-index entry whose magnitude is within a
/// relative `1e-12` of the maximum, so rounding noise between entries of equal
/// nominal size cannot flip the choice.
pub fn fix_phase(column: &Vector) -> Result<Vector> {
    let mags: Vec<f64> = column.entries().iter().map(|z| z.norm()).collect();
    let max = mags.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::ZeroVector);
    }
    let k = mags
        .iter()
        .position(|&m| m >= max * (1.0 - PHASE_TIE_TOL))
        .expect("maximum is attained");
    let pivot = column.entries()[k];
    let phase = pivot.conj() / mags[k];
    let mut entries: Vec<Complex64> = column.entries().iter().map(|z| z * phase).collect();
    entries[k] = Complex64::new(mags[k], 0.0);
    Ok(Vector::from_raw(entries))
}
