//! Test Hamiltonians: seeded random Hermitian matrices and a truncated
//! particle-in-a-box basis.
//!
//! Natural units (`ħ = m = 1`) throughout. The box basis functions are
//! `√(2/L) sin(nπx/L)`, `n = 1..n_levels`, and matrix index `i` stands for
//! quantum number `n = i + 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numkernel::HermitianMatrix;

pub const DEFAULT_QUADRATURE_INTERVALS: usize = 2048;

/// Perturbing potential `V(x)` on `[0, L]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// `V(x) = V₀`
    Constant(f64),
    /// `V(x) = λx`
    Linear(f64),
    /// `V(x) = κx²`
    Quadratic(f64),
}

impl Potential {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Potential::Constant(v0) => v0,
            Potential::Linear(lambda) => lambda * x,
            Potential::Quadratic(kappa) => kappa * x * x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxModelSpec {
    pub n_levels: usize,
    pub width: f64,
    pub potential: Potential,
}

impl BoxModelSpec {
    pub fn new(n_levels: usize, width: f64, potential: Potential) -> Result<Self> {
        if n_levels == 0 {
            return Err(Error::EmptyDimension);
        }
        let param = match potential {
            Potential::Constant(p) | Potential::Linear(p) | Potential::Quadratic(p) => p,
        };
        if !(width.is_finite() && width > 0.0) || !param.is_finite() {
            return Err(Error::NonFinite {
                context: "box model parameters",
            });
        }
        Ok(Self {
            n_levels,
            width,
            potential,
        })
    }
}

/// Random Hermitian matrix from a ChaCha8 stream seeded with `seed`.
///
/// Draw order: for each row `i`, the real diagonal entry uniform in
/// `[-scale, scale]`, then for each `j > i` a modulus uniform in `[0, scale)`
/// and a phase uniform in `[0, 2π)`. The lower triangle is the conjugate
/// mirror, so every entry has magnitude at most `scale`.
pub fn random_hermitian(seed: u64, n: usize, scale: f64) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::NonFinite { context: "scale" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        data[i * n + i] = Complex64::new(rng.gen_range(-scale..=scale), 0.0);
        for j in (i + 1)..n {
            let r = scale * rng.gen::<f64>();
            let theta = 2.0 * PI * rng.gen::<f64>();
            let z = Complex64::from_polar(r, theta);
            data[i * n + j] = z;
            data[j * n + i] = z.conj();
        }
    }
    Ok(HermitianMatrix::from_raw(n, data))
}

/// Diagonal `E_n = n²π²/(2L²)` for `n = 1..n_levels`.
pub fn box_hamiltonian(spec: &BoxModelSpec) -> HermitianMatrix {
    let levels: Vec<f64> = (1..=spec.n_levels)
        .map(|n| {
            let n = n as f64;
            n * n * PI * PI / (2.0 * spec.width * spec.width)
        })
        .collect();
    HermitianMatrix::diagonal(&levels).expect("n_levels >= 1")
}

/// `⟨m|V|n⟩ = (2/L) ∫₀ᴸ sin(mπx/L) V(x) sin(nπx/L) dx` by composite Simpson.
///
/// `intervals` is rounded up to the next even number (minimum 2).
pub fn box_potential_matrix(spec: &BoxModelSpec, intervals: usize) -> HermitianMatrix {
    let intervals = intervals.max(2).next_multiple_of(2);
    let n = spec.n_levels;
    let l = spec.width;
    let h = l / intervals as f64;

    // Simpson weights times V at each node, shared by all entries.
    let nodes: Vec<(f64, f64)> = (0..=intervals)
        .map(|k| {
            let x = k as f64 * h;
            let w = if k == 0 || k == intervals {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (x, w * spec.potential.eval(x))
        })
        .collect();

    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let (ki, kj) = ((i + 1) as f64 * PI / l, (j + 1) as f64 * PI / l);
            let sum: f64 = nodes
                .iter()
                .map(|&(x, wv)| wv * (ki * x).sin() * (kj * x).sin())
                .sum();
            let value = Complex64::new(2.0 / l * sum * h / 3.0, 0.0);
            data[i * n + j] = value;
            data[j * n + i] = value;
        }
    }
    HermitianMatrix::from_raw(n, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::check_hermitian;

    fn spec(n: usize, l: f64, v: Potential) -> BoxModelSpec {
        BoxModelSpec::new(n, l, v).unwrap()
    }

    /// `⟨m|x|n⟩` for the unit-normalized box basis, from the antiderivative.
    fn analytic_position(m: usize, n: usize, l: f64) -> f64 {
        if m == n {
            l / 2.0
        } else if (m + n).is_multiple_of(2) {
            0.0
        } else {
            let (m, n) = (m as f64, n as f64);
            -8.0 * l * m * n / (PI * PI * (m * m - n * n).powi(2))
        }
    }

    #[test]
    fn random_hermitian_contracts() {
        let a = random_hermitian(42, 6, 2.5).unwrap();
        assert!(check_hermitian(6, a.entries()));
        assert!(a.entries().iter().all(|z| z.norm() <= 2.5));
        assert_eq!(a, random_hermitian(42, 6, 2.5).unwrap());
        assert_ne!(a, random_hermitian(43, 6, 2.5).unwrap());

        let one = random_hermitian(7, 1, 0.5).unwrap();
        assert_eq!(one.dim(), 1);
        assert_eq!(one.get(0, 0).im, 0.0);
        assert!(one.get(0, 0).re.abs() <= 0.5);

        assert_eq!(random_hermitian(1, 0, 1.0), Err(Error::EmptyDimension));
        assert!(random_hermitian(1, 2, 0.0).is_err());
    }

    #[test]
    fn box_levels() {
        let h = box_hamiltonian(&spec(3, PI, Potential::Constant(0.0)));
        let diag: Vec<f64> = (0..3).map(|i| h.get(i, i).re).collect();
        for (got, want) in diag.iter().zip([0.5, 2.0, 4.5]) {
            assert!((got - want).abs() < 1e-15);
        }
        let h1 = box_hamiltonian(&spec(1, PI, Potential::Constant(0.0)));
        assert!((h1.get(0, 0).re - 0.5).abs() < 1e-15);

        let h = box_hamiltonian(&spec(12, 0.37, Potential::Linear(1.0)));
        assert!((1..12).all(|i| h.get(i, i).re > h.get(i - 1, i - 1).re));
    }

    #[test]
    fn constant_potential_is_scaled_identity() {
        let s = spec(6, 2.0, Potential::Constant(1.7));
        let v = box_potential_matrix(&s, DEFAULT_QUADRATURE_INTERVALS);
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { 1.7 } else { 0.0 };
                assert!((v.get(i, j).re - want).abs() <= 1e-10, "({i},{j})");
            }
        }
    }

    #[test]
    fn linear_potential_matches_analytic_elements() {
        let s = spec(5, PI, Potential::Linear(1.0));
        let v = box_potential_matrix(&s, DEFAULT_QUADRATURE_INTERVALS);
        for i in 0..5 {
            assert!((v.get(i, i).re - PI / 2.0).abs() <= 1e-10);
            for j in 0..5 {
                let want = analytic_position(i + 1, j + 1, PI);
                assert!((v.get(i, j).re - want).abs() <= 1e-10, "({i},{j})");
            }
        }
        assert!((v.get(0, 1).re + 16.0 / (9.0 * PI)).abs() <= 1e-10);
        assert!((v.get(0, 1).re + 0.56588).abs() < 1e-5);
    }

    #[test]
    fn quadrature_is_converged_at_default_resolution() {
        for pot in [Potential::Linear(0.8), Potential::Quadratic(1.3)] {
            let s = spec(8, 1.5, pot);
            let coarse = box_potential_matrix(&s, DEFAULT_QUADRATURE_INTERVALS);
            let fine = box_potential_matrix(&s, 2 * DEFAULT_QUADRATURE_INTERVALS);
            for (a, b) in coarse.entries().iter().zip(fine.entries()) {
                assert!((a - b).norm() <= 1e-10);
            }
            assert!(check_hermitian(8, coarse.entries()));
        }
    }

    #[test]
    fn odd_interval_counts_round_up() {
        let s = spec(3, 1.0, Potential::Quadratic(2.0));
        assert_eq!(
            box_potential_matrix(&s, 2047),
            box_potential_matrix(&s, 2048)
        );
        assert_eq!(box_potential_matrix(&s, 0), box_potential_matrix(&s, 2));
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            BoxModelSpec::new(0, 1.0, Potential::Constant(0.0)),
            Err(Error::EmptyDimension)
        );
        assert!(BoxModelSpec::new(2, -1.0, Potential::Constant(0.0)).is_err());
        assert!(BoxModelSpec::new(2, 1.0, Potential::Linear(f64::NAN)).is_err());
    }
}
