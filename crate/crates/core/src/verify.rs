//! Exact-diagonalization oracle and convergence-order fits.
//!
//! The oracle diagonalizes `H + xH'` directly. First-order quantities differ
//! from it by `O(x²)`, so a least-squares fit of `log₁₀ error` against
//! `log₁₀ x` should have slope close to 2. Perturbative and exact levels are
//! paired by ascending order, which is only meaningful while `x‖H'‖` stays
//! small next to the level spacing.

use std::fmt;

use crate::eigensolver::{jacobi_eigendecompose, DEFAULT_MAX_SWEEPS};
use crate::error::{ensure_dim, Error, Result};
use crate::models::random_hermitian;
use crate::numkernel::{add_scaled, HermitianMatrix};
use crate::perturbation::{PerturbedSystem, StateVector, Tolerances};

/// Strengths used when no grid is requested.
pub const DEFAULT_GRID: [f64; 5] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];

/// Errors at or below this are treated as exact.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Minimum fitted slope accepted as second-order error.
pub const SLOPE_THRESHOLD: f64 = 1.8;

/// Which energy a sweep row compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// A single perturbed level `E_1n`.
    Index(usize),
    /// The weighted total `E_1` against `Σ|b_n|² exact_n`.
    Total,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Index(n) => write!(f, "{n}"),
            Level::Total => f.write_str("total"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub x: f64,
    pub level: Level,
    pub perturbative: f64,
    pub exact: f64,
    pub abs_error: f64,
}

impl SweepRecord {
    pub fn new(x: f64, level: Level, perturbative: f64, exact: f64) -> Self {
        Self {
            x,
            level,
            perturbative,
            exact,
            abs_error: (perturbative - exact).abs(),
        }
    }
}

/// Least-squares line through `(log₁₀ x, log₁₀ error)`.
///
/// `slope` and `intercept` are `None` when fewer than two points lie above
/// the noise floor, in which case `floored` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderFit {
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub n_points: usize,
    pub floored: bool,
}

impl OrderFit {
    /// True if the fit shows at least `threshold` order, or the errors are
    /// all below the noise floor.
    pub fn passes(&self, threshold: f64) -> bool {
        self.floored || self.slope.is_some_and(|s| s >= threshold)
    }
}

impl fmt::Display for OrderFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slope {
            Some(s) => write!(f, "{s:.6}"),
            None => f.write_str("floored"),
        }
    }
}

/// Ascending eigenvalues of `H + xH'`.
pub fn exact_levels(h: &HermitianMatrix, hp: &HermitianMatrix, x: f64) -> Result<Vec<f64>> {
    let h1 = add_scaled(h, hp, x)?;
    Ok(jacobi_eigendecompose(&h1, DEFAULT_MAX_SWEEPS)?
        .eigenvalues()
        .to_vec())
}

/// One record per level, pairing both inputs by ascending order.
pub fn pair_and_errors(perturbative: &[f64], exact: &[f64], x: f64) -> Result<Vec<SweepRecord>> {
    ensure_dim(perturbative.len(), exact.len())?;
    let mut p = perturbative.to_vec();
    let mut e = exact.to_vec();
    p.sort_by(f64::total_cmp);
    e.sort_by(f64::total_cmp);
    Ok(p.into_iter()
        .zip(e)
        .enumerate()
        .map(|(n, (pv, ev))| SweepRecord::new(x, Level::Index(n), pv, ev))
        .collect())
}

/// Fits the error order of `records`, which should all belong to one level.
pub fn convergence_order(records: &[SweepRecord], floor: f64) -> Result<OrderFit> {
    let points: Vec<(f64, f64)> = records.iter().map(|r| (r.x, r.abs_error)).collect();
    fit_order(&points, floor)
}

/// Fits `log₁₀ err = slope · log₁₀ x + intercept` over `(x, err)` pairs.
///
/// Needs at least two distinct positive `x` values; points with
/// `err <= floor` are dropped before fitting.
pub fn fit_order(points: &[(f64, f64)], floor: f64) -> Result<OrderFit> {
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 2 || xs.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::InsufficientData { points: xs.len() });
    }

    let kept: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.1 > floor)
        .map(|&(x, e)| (x.log10(), e.log10()))
        .collect();
    let distinct = {
        let mut lx: Vec<f64> = kept.iter().map(|p| p.0).collect();
        lx.sort_by(f64::total_cmp);
        lx.dedup();
        lx.len()
    };
    if distinct < 2 {
        return Ok(OrderFit {
            slope: None,
            intercept: None,
            n_points: kept.len(),
            floored: true,
        });
    }

    let n = kept.len() as f64;
    let mean_x = kept.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = kept.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = kept.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = kept.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(OrderFit {
        slope: Some(slope),
        intercept: Some(mean_y - slope * mean_x),
        n_points: kept.len(),
        floored: false,
    })
}

/// `points` strengths spaced evenly in `log x`, from `x_max` down to `x_min`.
pub fn log_grid(x_min: f64, x_max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InsufficientData { points });
    }
    if !(x_min > 0.0 && x_max > x_min && x_max.is_finite()) {
        return Err(Error::InsufficientData { points: 1 });
    }
    let (lo, hi) = (x_min.log10(), x_max.log10());
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|k| match k {
            0 => x_max,
            k if k == points - 1 => x_min,
            k => 10f64.powf(hi - step * k as f64),
        })
        .collect())
}

/// Comparison of first-order results with exact diagonalization over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    /// Per-level rows, grouped by strength in grid order, then by level; in
    /// superposition mode each strength also gets a [`Level::Total`] row.
    pub records: Vec<SweepRecord>,
    /// `(x, residual)` of `ψ_1` at each strength.
    pub residuals: Vec<(f64, f64)>,
}

impl Sweep {
    /// Runs `first_order` and the exact oracle at every strength in `grid`.
    ///
    /// The weighted-total rows are emitted only when `state` is not a basis
    /// vector, since otherwise they duplicate the level row.
    pub fn run(
        system: &PerturbedSystem,
        state: &StateVector,
        grid: &[f64],
        tol: Tolerances,
    ) -> Result<Self> {
        let superposition = state.as_basis_level().is_none();
        let mut records = Vec::new();
        let mut residuals = Vec::with_capacity(grid.len());
        for &x in grid {
            let result = system.first_order(state, x, tol)?;
            let exact = exact_levels(system.h(), system.hp(), x)?;
            records.extend(pair_and_errors(&result.perturbed_levels, &exact, x)?);
            if superposition {
                let weighted: f64 = state.weights().zip(&exact).map(|(w, e)| w * e).sum();
                records.push(SweepRecord::new(
                    x,
                    Level::Total,
                    result.total_energy,
                    weighted,
                ));
            }
            residuals.push((x, system.residual(&result)?));
        }
        Ok(Self { records, residuals })
    }

    /// Distinct levels in first-appearance order.
    pub fn levels(&self) -> Vec<Level> {
        let mut out = Vec::new();
        for r in &self.records {
            if !out.contains(&r.level) {
                out.push(r.level);
            }
        }
        out
    }

    pub fn records_for(&self, level: Level) -> Vec<SweepRecord> {
        self.records
            .iter()
            .filter(|r| r.level == level)
            .copied()
            .collect()
    }

    /// Order fit for every level, in [`Sweep::levels`] order.
    pub fn orders(&self, floor: f64) -> Result<Vec<(Level, OrderFit)>> {
        self.levels()
            .into_iter()
            .map(|l| Ok((l, convergence_order(&self.records_for(l), floor)?)))
            .collect()
    }

    pub fn residual_order(&self, floor: f64) -> Result<OrderFit> {
        fit_order(&self.residuals, floor)
    }
}

/// Smallest gap between adjacent ascending levels, over the full spread.
pub fn relative_min_gap(levels: &[f64]) -> f64 {
    if levels.len() < 2 {
        return 0.0;
    }
    let spread = levels[levels.len() - 1] - levels[0];
    if spread == 0.0 {
        return 0.0;
    }
    let gap = levels
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    gap / spread
}

/// Seeded random `(H, H')` of dimension `n` whose `H` has every adjacent
/// level gap at least a tenth of its spread.
///
/// `H` is drawn with unit scale and `H'` with `perturbation_scale`; seeds
/// `seed, seed + 2^32, seed + 2·2^32, ...` are tried until the gap condition
/// holds.
pub fn random_nondegenerate_pair(
    seed: u64,
    n: usize,
    perturbation_scale: f64,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    const MIN_RELATIVE_GAP: f64 = 0.1;
    for attempt in 0u64.. {
        let s = seed.wrapping_add(attempt << 32);
        let h = random_hermitian(s, n, 1.0)?;
        let levels = jacobi_eigendecompose(&h, DEFAULT_MAX_SWEEPS)?;
        if n == 1 || relative_min_gap(levels.eigenvalues()) >= MIN_RELATIVE_GAP {
            let hp = random_hermitian(s ^ 0x9E37_79B9_7F4A_7C15, n, perturbation_scale)?;
            return Ok((h, hp));
        }
    }
    unreachable!("u64 range exhausted")
}
