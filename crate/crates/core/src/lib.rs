//! First-order perturbation theory by summation over a finite eigenbasis.
//!
//! A Hermitian Hamiltonian `H` is diagonalized with a cyclic complex Jacobi
//! solver to obtain levels `E_m` and basis vectors `φ_m`. A state is written
//! as `ψ = Σ_j b_j φ_j`; given a Hermitian perturbation `H'` and a strength
//! `x`, the crate computes
//!
//! * the level shifts `E'_n = ⟨φ_n|H'|φ_n⟩` and perturbed levels
//!   `E_1n = E_n + x E'_n`,
//! * the total energy `E_1 = E + x Σ_n |b_n|² E'_n` with `E = Σ_m |b_m|² E_m`,
//! * the first-order state `ψ_1 = ψ + x Σ_m a_m φ_m` with
//!   `a_m = (⟨φ_m|H'|ψ⟩ − E' b_m) / (E − E_m)`.
//!
//! The [`verify`] module diagonalizes `H + xH'` exactly and measures how the
//! first-order error shrinks with `x`, which is the check that the formulas
//! are correct to first order.

pub mod eigensolver;
mod error;
pub mod models;
pub mod numkernel;
pub mod perturbation;
pub mod textio;
pub mod verify;

pub use eigensolver::{
    fix_phase, jacobi_eigendecompose, SpectralDecomposition, DEFAULT_MAX_SWEEPS,
};
pub use error::{Error, Result};
pub use models::{
    box_hamiltonian, box_potential_matrix, random_hermitian, BoxModelSpec, Potential,
};
pub use num_complex::Complex64;
pub use numkernel::{
    add_scaled, check_hermitian, inner_product, matrix_element, matvec, HermitianMatrix, Vector,
};
pub use perturbation::{
    correction_coefficients, expected_energy, level_shifts, perturbed_state, residual_norm,
    total_energy, FirstOrderResult, PerturbedSystem, StateVector, Tolerances,
};
pub use verify::{
    convergence_order, exact_levels, pair_and_errors, OrderFit, SweepRecord, DEFAULT_GRID,
};
