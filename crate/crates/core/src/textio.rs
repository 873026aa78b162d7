//! Plain-text matrix and vector files.
//!
//! ```text
//! % comment lines start with '%'
//! 2
//! (0,0) (0,1)
//! (0,-1) 0
//! ```
//!
//! The first significant line holds the dimension `N`. A matrix follows with
//! `N` lines of `N` whitespace-separated tokens; a vector follows with `N`
//! tokens on any number of lines. A token is a decimal real (imaginary part
//! zero) or `(re,im)` with no interior whitespace. Values are written with 17
//! significant digits, which round-trips every `f64` exactly.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::HermitianMatrix;
use crate::perturbation::StateVector;

/// A vector is accepted and renormalized if its norm is this close to one.
pub const VECTOR_NORM_TOL: f64 = 1e-6;

/// Renders `value` with 17 significant digits in scientific notation.
pub fn format_real(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn format_token(z: Complex64) -> String {
    if z.im == 0.0 {
        format_real(z.re)
    } else {
        format!("({},{})", format_real(z.re), format_real(z.im))
    }
}

pub fn format_matrix(m: &HermitianMatrix) -> String {
    let n = m.dim();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_token(m.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_vector(entries: &[Complex64]) -> String {
    let mut out = format!("{}\n", entries.len());
    let tokens: Vec<String> = entries.iter().map(|&z| format_token(z)).collect();
    let _ = writeln!(out, "{}", tokens.join(" "));
    out
}

fn parse_error(line: usize, reason: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        reason: reason.into(),
    }
}

fn parse_real(s: &str, line: usize) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| parse_error(line, format!("invalid number `{s}`")))?;
    if !v.is_finite() {
        return Err(parse_error(line, format!("non-finite number `{s}`")));
    }
    Ok(v)
}

/// Parses one token, either `re` or `(re,im)`.
pub fn parse_token(token: &str, line: usize) -> Result<Complex64> {
    if let Some(inner) = token.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| parse_error(line, format!("unterminated complex token `{token}`")))?;
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| parse_error(line, format!("complex token `{token}` needs a comma")))?;
        Ok(Complex64::new(parse_real(re, line)?, parse_real(im, line)?))
    } else {
        Ok(Complex64::new(parse_real(token, line)?, 0.0))
    }
}

/// Significant lines as `(1-based line number, tokens)`.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let trimmed = l.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<(usize, usize)> {
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| parse_error(0, "missing dimension header"))?;
    if tokens.len() != 1 {
        return Err(parse_error(line, "header must be a single dimension"));
    }
    let dim: usize = tokens[0]
        .parse()
        .map_err(|_| parse_error(line, format!("invalid dimension `{}`", tokens[0])))?;
    if dim == 0 {
        return Err(parse_error(line, "dimension must be at least 1"));
    }
    Ok((line, dim))
}

/// Reads a Hermitian matrix, rejecting input that fails the hermiticity
/// check and symmetrizing what passes.
pub fn parse_matrix(text: &str) -> Result<HermitianMatrix> {
    let mut lines = significant_lines(text);
    let (header_line, n) = parse_header(&mut lines)?;
    let mut entries = Vec::with_capacity(n * n);
    let mut last_line = header_line;
    for row in 0..n {
        let (line, tokens) = lines
            .next()
            .ok_or_else(|| parse_error(last_line, format!("expected {n} rows, found {row}")))?;
        if tokens.len() != n {
            return Err(parse_error(
                line,
                format!("expected {n} entries, found {}", tokens.len()),
            ));
        }
        for t in tokens {
            entries.push(parse_token(t, line)?);
        }
        last_line = line;
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_error(line, "unexpected content after matrix"));
    }
    HermitianMatrix::from_entries(n, entries)
}

/// Reads eigenbasis coefficients `b_j`, renormalizing when the norm is
/// within `1e-6` of one.
pub fn parse_vector(text: &str) -> Result<StateVector> {
    let mut lines = significant_lines(text);
    let (header_line, n) = parse_header(&mut lines)?;
    let mut entries = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line, tokens) in lines {
        for t in tokens {
            if entries.len() == n {
                return Err(parse_error(line, format!("more than {n} entries")));
            }
            entries.push(parse_token(t, line)?);
        }
        last_line = line;
    }
    if entries.len() != n {
        return Err(parse_error(
            last_line,
            format!("expected {n} entries, found {}", entries.len()),
        ));
    }
    let norm = entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > VECTOR_NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    StateVector::normalize(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_complex_tokens() {
        let m = parse_matrix("2\n(0,0) (0,1)\n(0,-1) (0,0)\n").unwrap();
        assert_eq!(m.get(0, 0), c(0.0, 0.0));
        assert_eq!(m.get(0, 1), c(0.0, 1.0));
        assert_eq!(m.get(1, 0), c(0.0, -1.0));
        assert_eq!(m.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn parses_real_shorthand_and_comments() {
        let m = parse_matrix("% sigma x\n2\n\n0 1\n  % mid comment\n1 0\n").unwrap();
        assert_eq!(
            m,
            HermitianMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
        );
    }

    #[test]
    fn rejects_non_hermitian() {
        assert!(matches!(
            parse_matrix("2\n0 1\n0 0\n"),
            Err(Error::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn reports_malformed_input_with_line_numbers() {
        let cases = [
            ("", 0),
            ("two\n", 1),
            ("0\n", 1),
            ("2 2\n0 1\n1 0\n", 1),
            ("2\n0 1\n1\n", 3),
            ("2\n0 1\n", 2),
            ("2\n0 x\n1 0\n", 2),
            ("2\n0 (1,0\n1 0\n", 2),
            ("2\n0 (1;0)\n1 0\n", 2),
            ("2\n0 1\n1 0\n7\n", 4),
            ("1\nNaN\n", 2),
            ("1\ninf\n", 2),
        ];
        for (text, want_line) in cases {
            match parse_matrix(text) {
                Err(Error::ParseError { line, .. }) => assert_eq!(line, want_line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn vector_examples() {
        let b = parse_vector("2\n1 0\n").unwrap();
        assert_eq!(b.coefficients(), &[c(1.0, 0.0), c(0.0, 0.0)]);

        let b = parse_vector("2\n0.7071067811865476 0.7071067811865476\n").unwrap();
        assert!((b.coefficients()[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
        assert_eq!(b.coefficients()[0], b.coefficients()[1]);

        match parse_vector("2\n1 1\n") {
            Err(Error::NotNormalized { norm }) => assert!((norm - 2f64.sqrt()).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vector_tokens_may_span_lines() {
        let b = parse_vector("3\n(0,1)\n0\n0\n").unwrap();
        assert_eq!(b.coefficients()[0], c(0.0, 1.0));
        assert!(matches!(
            parse_vector("2\n1 0 0\n"),
            Err(Error::ParseError { line: 2, .. })
        ));
        assert!(matches!(
            parse_vector("2\n1\n"),
            Err(Error::ParseError { line: 2, .. })
        ));
    }

    #[test]
    fn nearly_normalized_vectors_are_renormalized() {
        let b = parse_vector("2\n1.0000004 0\n").unwrap();
        assert_eq!(b.coefficients()[0], c(1.0, 0.0));
    }

    #[test]
    fn writes_seventeen_significant_digits() {
        assert_eq!(format_real(0.1), "1.0000000000000001e-1");
        assert_eq!(format_token(c(2.0, 0.0)), "2.0000000000000000e0");
        assert_eq!(
            format_token(c(0.0, -1.0)),
            "(0.0000000000000000e0,-1.0000000000000000e0)"
        );
        let m = HermitianMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
        let v = [c(0.6, 0.0), c(0.0, 0.8)];
        assert_eq!(parse_vector(&format_vector(&v)).unwrap().coefficients(), &v);
    }
}
