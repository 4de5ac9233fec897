//! Truncated von Mangoldt explicit formula
//! `ψ₀(x) = x − Σ_ρ x^ρ/ρ − log 2π − ½ log(1 − x^{−2})`
//! over a table of zeta zeros `ρ = ½ + iγ`, each paired with its conjugate.

use std::path::Path;

use crate::chebyshev::ChebyshevLookup;
use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// `ζ'(0)/ζ(0) = log 2π`.
pub const LOG_2PI: f64 = 1.837_877_066_409_345_6;

/// Imaginary part of the first nontrivial zero.
pub const FIRST_GAMMA: f64 = 14.134_725_141_734_693;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    source: String,
}

impl ZeroTable {
    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// The first 1000 zeros shipped with the crate.
    pub fn bundled() -> Self {
        parse_zeros(crate::golden::ZEROS_1000, "bundled zeros_1000.txt").expect("bundled zeros are valid")
    }
}

/// Parse one decimal per line; blank lines and `#` comments are skipped.
pub fn parse_zeros(text: &str, source: &str) -> Result<ZeroTable> {
    let mut gammas: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |msg: String| Error::Format { line: i + 1, msg };
        let g: f64 = line.parse().map_err(|_| fail(format!("not a number: {line:?}")))?;
        if !(g > 0.0) || !g.is_finite() {
            return Err(fail(format!("zero ordinates must be positive, got {g}")));
        }
        match gammas.last() {
            None if (g - FIRST_GAMMA).abs() > 0.01 => {
                return Err(fail(format!("first ordinate {g} is not the first zeta zero {FIRST_GAMMA:.6}")));
            }
            Some(&prev) if g <= prev => {
                return Err(fail(format!("ordinates must increase: {g} after {prev}")));
            }
            _ => {}
        }
        gammas.push(g);
    }
    Ok(ZeroTable { gammas, source: source.to_string() })
}

pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_zeros(&text, &path.display().to_string())
}

/// `2·Re(x^ρ/ρ)` for `ρ = ½ + iγ`, `x = e^L`.
fn pair_term(sqrt_x: f64, log_x: f64, gamma: f64) -> f64 {
    let (s, c) = (gamma * log_x).sin_cos();
    2.0 * sqrt_x * (0.5 * c + gamma * s) / (0.25 + gamma * gamma)
}

/// The explicit formula truncated after the first `k` zeros.
pub fn psi0_explicit(x: f64, zeros: &ZeroTable, k: usize) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::domain(format!("explicit formula needs x > 1, got {x}")));
    }
    if k > zeros.len() {
        return Err(Error::range(format!("{k} zeros requested, table has {}", zeros.len())));
    }
    let (sqrt_x, log_x) = (x.sqrt(), x.ln());
    let mut acc = CompensatedSum::new();
    acc += x;
    acc += -LOG_2PI;
    acc += -0.5 * (-(x * x).recip()).ln_1p();
    for &g in &zeros.gammas[..k] {
        acc += -pair_term(sqrt_x, log_x, g);
    }
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub x: u64,
    pub k: usize,
    /// `|ψ₀ explicit at x + ½ − ψ(x)|`.
    pub residual: f64,
}

/// `start, 2·start, 4·start, …` below `max`, then `max` itself.
pub fn doubling_schedule(start: usize, max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = start.max(1);
    while k < max {
        out.push(k);
        k *= 2;
    }
    out.push(max);
    out
}

/// Residuals at the half-integers `x + ½`, where `ψ₀ = ψ(x)` and no jump interferes.
pub fn convergence_report(
    xs: &[u64],
    zeros: &ZeroTable,
    schedule: &[usize],
    cheb: &impl ChebyshevLookup,
) -> Result<Vec<ConvergenceRow>> {
    let mut out = Vec::with_capacity(xs.len() * schedule.len());
    for &x in xs {
        let target = cheb.psi(x)?;
        for &k in schedule {
            let v = psi0_explicit(x as f64 + 0.5, zeros, k)?;
            out.push(ConvergenceRow { x, k, residual: (v - target).abs() });
        }
    }
    Ok(out)
}

/// Median residual for each truncation level, in schedule order.
pub fn median_by_k(rows: &[ConvergenceRow]) -> Vec<(usize, f64)> {
    let mut ks: Vec<usize> = rows.iter().map(|r| r.k).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .map(|k| {
            let mut v: Vec<f64> = rows.iter().filter(|r| r.k == k).map(|r| r.residual).collect();
            v.sort_by(f64::total_cmp);
            let n = v.len();
            let med = if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) };
            (k, med)
        })
        .collect()
}
