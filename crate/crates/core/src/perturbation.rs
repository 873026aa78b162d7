//! First-order energies and eigenstate by summation over the eigenbasis.
//!
//! A state `ψ = Σ_j b_j φ_j` is given by its coordinates `b` in the
//! eigenbasis of `H`. With `E = Σ_m |b_m|² E_m` and
//! `E' = Σ_n |b_n|² ⟨φ_n|H'|φ_n⟩`, the first-order results are
//!
//! ```text
//! E_1n = E_n + x ⟨φ_n|H'|φ_n⟩
//! E_1  = E + x E'
//! a_m  = (⟨φ_m|H'|ψ⟩ − E' b_m) / (E − E_m)
//! ψ_1  = ψ + x Σ_m a_m φ_m
//! ```
//!
//! When `b` is a basis vector (eigenstate mode) these are the textbook
//! Rayleigh–Schrödinger expressions; for a general `b` (superposition mode)
//! `E_1` is the `|b_n|²`-weighted average of the perturbed levels.

use num_complex::Complex64;

use crate::eigensolver::{jacobi_eigendecompose, SpectralDecomposition, DEFAULT_MAX_SWEEPS};
use crate::error::{ensure_dim, Error, Result};
use crate::numkernel::{add_scaled, matrix_element, matvec, HermitianMatrix, Vector};

/// Allowed deviation of `Σ|b_j|²` from one.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Coordinates `b_j` of a normalized state in the eigenbasis of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    coefficients: Vec<Complex64>,
}

impl StateVector {
    /// Accepts coefficients whose squared norm is within `1e-10` of one.
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        let v = Vector::new(coefficients)?;
        let norm = v.norm();
        if (v.norm_sqr() - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            coefficients: v.into_entries(),
        })
    }

    /// Rescales arbitrary nonzero coefficients to unit norm.
    pub fn normalize(coefficients: Vec<Complex64>) -> Result<Self> {
        let v = Vector::new(coefficients)?.normalized()?;
        Ok(Self {
            coefficients: v.into_entries(),
        })
    }

    /// The eigenstate `φ_level`, i.e. `b = e_level`.
    pub fn basis(dim: usize, level: usize) -> Result<Self> {
        Ok(Self {
            coefficients: Vector::unit(dim, level)?.into_entries(),
        })
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Occupation weights `|b_j|²`.
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.coefficients.iter().map(|b| b.norm_sqr())
    }

    /// The level index if this is exactly a basis vector.
    pub fn as_basis_level(&self) -> Option<usize> {
        let one = Complex64::new(1.0, 0.0);
        let pos = self.coefficients.iter().position(|&b| b == one)?;
        self.coefficients
            .iter()
            .enumerate()
            .all(|(j, b)| j == pos || b.norm_sqr() == 0.0)
            .then_some(pos)
    }
}

/// Thresholds for the `m`-th correction coefficient.
///
/// A denominator `|E − E_m|` counts as zero when it is at most
/// `degen · (E_max − E_min + 1)`. In that case a numerator of magnitude at
/// most `num · ‖H'‖_F` gives `a_m = 0`; anything larger is a degenerate level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub degen: f64,
    pub num: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            degen: 1e-9,
            num: 1e-9,
        }
    }
}

/// Everything the first-order expansion produces for one state and strength.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderResult {
    pub x: f64,
    /// Unperturbed levels `E_n`, ascending.
    pub levels: Vec<f64>,
    /// `E = Σ|b_m|² E_m`.
    pub expected_energy: f64,
    /// `E'_n = ⟨φ_n|H'|φ_n⟩`.
    pub level_shifts: Vec<f64>,
    /// `E_1n = E_n + x E'_n`.
    pub perturbed_levels: Vec<f64>,
    /// `E' = Σ|b_n|² E'_n`.
    pub total_first_order: f64,
    /// `E_1 = E + x E'`.
    pub total_energy: f64,
    /// Coordinates `a_m` of `ψ'` in the eigenbasis.
    pub corrections: Vec<Complex64>,
    /// `b + x a` in eigenbasis coordinates, not normalized.
    pub perturbed_state: Vector,
    pub perturbed_state_normalized: Vector,
}

/// `Σ_m |b_m|² E_m`.
pub fn expected_energy(b: &StateVector, spec: &SpectralDecomposition) -> Result<f64> {
    ensure_dim(spec.dim(), b.dim())?;
    Ok(b.weights()
        .zip(spec.eigenvalues())
        .map(|(w, e)| w * e)
        .sum())
}

/// `⟨φ_n|H'|φ_n⟩` for every level `n`.
pub fn level_shifts(hp: &HermitianMatrix, spec: &SpectralDecomposition) -> Result<Vec<f64>> {
    ensure_dim(spec.dim(), hp.dim())?;
    spec.eigenvectors()
        .iter()
        .map(|phi| matrix_element(phi, hp, phi).map(|z| z.re))
        .collect()
}

/// Returns `(E', E_1)` with `E' = Σ|b_n|² shifts_n` and `E_1 = E + x E'`.
pub fn total_energy(e: f64, shifts: &[f64], b: &StateVector, x: f64) -> Result<(f64, f64)> {
    ensure_dim(b.dim(), shifts.len())?;
    let e_prime: f64 = b.weights().zip(shifts).map(|(w, s)| w * s).sum();
    Ok((e_prime, e + x * e_prime))
}

/// First-order state coefficients `a_m = (⟨φ_m|H'|ψ⟩ − E' b_m) / (E − E_m)`.
///
/// A vanishing denominator paired with a vanishing numerator yields
/// `a_m = 0`, which keeps `ψ'` orthogonal to `ψ` in eigenstate mode.
pub fn correction_coefficients(
    hp: &HermitianMatrix,
    spec: &SpectralDecomposition,
    b: &StateVector,
    e: f64,
    e_prime: f64,
    tol: Tolerances,
) -> Result<Vec<Complex64>> {
    ensure_dim(spec.dim(), hp.dim())?;
    ensure_dim(spec.dim(), b.dim())?;
    let levels = spec.eigenvalues();
    let spread = levels[levels.len() - 1] - levels[0];
    let denom_floor = tol.degen * (spread + 1.0);
    let num_floor = tol.num * hp.frobenius_norm();

    let psi = spec.expand(b.coefficients())?;
    spec.eigenvectors()
        .iter()
        .zip(levels)
        .zip(b.coefficients())
        .enumerate()
        .map(|(m, ((phi, &e_m), &b_m))| {
            let numerator = matrix_element(phi, hp, &psi)? - b_m * e_prime;
            let denom = e - e_m;
            if denom.abs() > denom_floor {
                Ok(numerator / denom)
            } else if numerator.norm() <= num_floor {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                Err(Error::DegenerateDenominator { index: m })
            }
        })
        .collect()
}

/// Returns `(b + x a, (b + x a)/‖b + x a‖)`.
pub fn perturbed_state(b: &StateVector, a: &[Complex64], x: f64) -> Result<(Vector, Vector)> {
    ensure_dim(b.dim(), a.len())?;
    let psi1 = Vector::new(
        b.coefficients()
            .iter()
            .zip(a)
            .map(|(bm, am)| bm + am * x)
            .collect(),
    )?;
    let normalized = psi1.normalized()?;
    Ok((psi1, normalized))
}

/// `‖(H + xH')ψ_1 − E_1 ψ_1‖ / ‖ψ_1‖`, with `ψ_1` in the original basis.
pub fn residual_norm(
    h: &HermitianMatrix,
    hp: &HermitianMatrix,
    x: f64,
    e1: f64,
    psi1: &Vector,
) -> Result<f64> {
    ensure_dim(h.dim(), psi1.dim())?;
    let norm = psi1.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let h1 = add_scaled(h, hp, x)?;
    let lhs = matvec(&h1, psi1)?;
    let r = lhs.sub(&psi1.scaled(Complex64::new(e1, 0.0)))?;
    Ok(r.norm() / norm)
}

/// An unperturbed Hamiltonian, a perturbation, and the eigensystem of `H`.
#[derive(Debug, Clone)]
pub struct PerturbedSystem {
    h: HermitianMatrix,
    hp: HermitianMatrix,
    spectrum: SpectralDecomposition,
}

impl PerturbedSystem {
    /// Diagonalizes `h` and pairs it with the perturbation `hp`.
    pub fn new(h: HermitianMatrix, hp: HermitianMatrix) -> Result<Self> {
        ensure_dim(h.dim(), hp.dim())?;
        let spectrum = jacobi_eigendecompose(&h, DEFAULT_MAX_SWEEPS)?;
        Ok(Self { h, hp, spectrum })
    }

    pub fn h(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn hp(&self) -> &HermitianMatrix {
        &self.hp
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Runs the full first-order expansion for state `b` at strength `x`.
    pub fn first_order(
        &self,
        b: &StateVector,
        x: f64,
        tol: Tolerances,
    ) -> Result<FirstOrderResult> {
        if !x.is_finite() {
            return Err(Error::NonFinite {
                context: "strength",
            });
        }
        let spec = &self.spectrum;
        let e = expected_energy(b, spec)?;
        let shifts = level_shifts(&self.hp, spec)?;
        let perturbed_levels = spec
            .eigenvalues()
            .iter()
            .zip(&shifts)
            .map(|(e_n, s)| e_n + x * s)
            .collect();
        let (e_prime, e1) = total_energy(e, &shifts, b, x)?;
        let corrections = correction_coefficients(&self.hp, spec, b, e, e_prime, tol)?;
        let (psi1, psi1_normalized) = perturbed_state(b, &corrections, x)?;
        Ok(FirstOrderResult {
            x,
            levels: spec.eigenvalues().to_vec(),
            expected_energy: e,
            level_shifts: shifts,
            perturbed_levels,
            total_first_order: e_prime,
            total_energy: e1,
            corrections,
            perturbed_state: psi1,
            perturbed_state_normalized: psi1_normalized,
        })
    }

    /// `ψ_1` of `result` mapped back to the original basis.
    pub fn perturbed_state_in_original_basis(&self, result: &FirstOrderResult) -> Result<Vector> {
        self.spectrum.expand(result.perturbed_state.entries())
    }

    /// Residual of `(H + xH')ψ_1 = E_1 ψ_1` for a computed result.
    pub fn residual(&self, result: &FirstOrderResult) -> Result<f64> {
        let psi1 = self.perturbed_state_in_original_basis(result)?;
        residual_norm(&self.h, &self.hp, result.x, result.total_energy, &psi1)
    }
}
