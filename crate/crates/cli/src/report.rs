//! Line-oriented `key = value` reports and the sweep CSV.
//!
//! Numbers use Rust's shortest round-trip scientific notation; complex
//! vectors are comma-joined `(re,im)` lists.

use std::fmt::Write as _;

use firstorder::verify::{Level, OrderFit, Sweep};
use firstorder::{Complex64, FirstOrderResult, SpectralDecomposition};

pub const CSV_HEADER: &str = "x,level,perturbative,exact,abs_error";

pub fn num(v: f64) -> String {
    format!("{v:e}")
}

pub fn complex_list(values: &[Complex64]) -> String {
    values
        .iter()
        .map(|z| format!("({},{})", num(z.re), num(z.im)))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn spectrum(spec: &SpectralDecomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim = {}", spec.dim());
    for (m, e) in spec.eigenvalues().iter().enumerate() {
        let _ = writeln!(out, "E_{m} = {}", num(*e));
    }
    for (m, v) in spec.eigenvectors().iter().enumerate() {
        let _ = writeln!(out, "phi_{m} = {}", complex_list(v.entries()));
    }
    out
}

/// Report keys, in order:
///
/// ```text
/// dim, x, mode
/// E_n, Eprime_n, E1_n        for every level n
/// E, Eprime, E1, a, psi1, psi1_normalized, residual
/// ```
pub fn first_order(result: &FirstOrderResult, level: Option<usize>, residual: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim = {}", result.levels.len());
    let _ = writeln!(out, "x = {}", num(result.x));
    match level {
        Some(n) => {
            let _ = writeln!(out, "mode = level {n}");
        }
        None => {
            let _ = writeln!(out, "mode = state");
        }
    }
    for (n, ((e, s), e1)) in result
        .levels
        .iter()
        .zip(&result.level_shifts)
        .zip(&result.perturbed_levels)
        .enumerate()
    {
        let _ = writeln!(out, "E_{n} = {}", num(*e));
        let _ = writeln!(out, "Eprime_{n} = {}", num(*s));
        let _ = writeln!(out, "E1_{n} = {}", num(*e1));
    }
    let _ = writeln!(out, "E = {}", num(result.expected_energy));
    let _ = writeln!(out, "Eprime = {}", num(result.total_first_order));
    let _ = writeln!(out, "E1 = {}", num(result.total_energy));
    let _ = writeln!(out, "a = {}", complex_list(&result.corrections));
    let _ = writeln!(
        out,
        "psi1 = {}",
        complex_list(result.perturbed_state.entries())
    );
    let _ = writeln!(
        out,
        "psi1_normalized = {}",
        complex_list(result.perturbed_state_normalized.entries())
    );
    let _ = writeln!(out, "residual = {}", num(residual));
    out
}

pub fn sweep_csv(sweep: &Sweep, orders: &[(Level, OrderFit)]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &sweep.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(r.x),
            r.level,
            num(r.perturbative),
            num(r.exact),
            num(r.abs_error)
        );
    }
    for (level, fit) in orders {
        let _ = writeln!(out, "# order level={level} slope={fit}");
    }
    out
}

/// Reads a `key = value` report back into pairs.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
