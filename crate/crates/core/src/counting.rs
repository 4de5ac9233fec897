//! Prime counting approximations: `li(x)`, Riemann's `R(x)` and
//! `η_N(x) = Σ_{n<=N} μ(n)/n · li(ψ(x)^{1/n}) − π(x)`.

use rayon::prelude::*;

use crate::chebyshev::ChebyshevLookup;
use crate::logint::{self, EULER_GAMMA};
use crate::sieve::{PrimePower, PrimeTable};
use crate::sum::CompensatedSum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MobiusValue {
    pub n: u64,
    pub value: i8,
}

/// `μ(n)` by trial division.
pub fn mobius(n: u64) -> Result<MobiusValue> {
    if n == 0 {
        return Err(Error::domain("μ(0) is undefined"));
    }
    let mut m = n;
    let mut value = 1i8;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return Ok(MobiusValue { n, value: 0 });
            }
            value = -value;
        }
        d += 1;
    }
    if m > 1 {
        value = -value;
    }
    Ok(MobiusValue { n, value })
}

/// `μ(0..=n)` by a linear sieve; entry 0 is 0.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let Some(ip) = i.checked_mul(p).filter(|&v| v <= n) else { break };
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// `ζ(s)` at an integer `s >= 2`, Euler–Maclaurin with ten explicit terms.
pub fn zeta_int(s: u32) -> f64 {
    assert!(s >= 2, "zeta_int needs s >= 2");
    if s >= 64 {
        return 1.0 + 0.5f64.powi(s as i32);
    }
    const N: u32 = 10;
    // B_{2j}/(2j)!
    const B: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30_240.0,
        -1.0 / 1_209_600.0,
        1.0 / 47_900_160.0,
        -691.0 / 1_307_674_368_000.0,
        1.0 / 74_724_249_600.0,
        -3617.0 / 10_670_622_842_880_000.0,
    ];
    let sf = s as f64;
    let nf = N as f64;
    let mut acc = CompensatedSum::new();
    for n in (1..N).rev() {
        acc += (n as f64).powi(-(s as i32));
    }
    let n_s = nf.powf(-sf);
    acc += 0.5 * n_s;
    acc += nf * n_s / (sf - 1.0);
    // rising = s(s+1)...(s+2j−2), power = N^{−s−2j+1}
    let mut rising = sf;
    let mut power = n_s / nf;
    for (j, b) in B.iter().enumerate() {
        acc += b * rising * power;
        let k = 2.0 * j as f64;
        rising *= (sf + k + 1.0) * (sf + k + 2.0);
        power /= nf * nf;
    }
    acc.value()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiemannMode {
    /// `Σ μ(n)/n · li(x^{1/n})` over `x^{1/n} >= 2`, plus a closed-form tail.
    MobiusSum,
    /// `1 + Σ_{k>=1} (log x)^k / (k!·k·ζ(k+1))`.
    Gram,
}

/// Riemann's prime counting function `R(x)`, `x >= 2`.
pub fn riemann_r(x: f64, mode: RiemannMode) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::domain(format!("R(x) needs finite x >= 2, got {x}")));
    }
    Ok(match mode {
        RiemannMode::Gram => gram(x.ln()),
        RiemannMode::MobiusSum => mobius_sum(x.ln()),
    })
}

fn gram(u: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    acc += 1.0;
    let mut power = 1.0; // u^k / k!
    let mut k = 1u32;
    loop {
        power *= u / k as f64;
        let term = power / (k as f64 * zeta_int(k + 1));
        acc += term;
        if k as f64 > u && term < 1e-18 * acc.value() {
            break;
        }
        k += 1;
    }
    acc.value()
}

/// Terms with `x^{1/n} >= 2` are summed directly. For `n > M` the expansion
/// `li(e^v) = γ + log v + Σ v^k/(k·k!)` turns the tail into sums over `μ(n)`
/// with known totals: `Σ μ(n)/n = 0`, `Σ μ(n) log n / n = −1` and
/// `Σ μ(n)/n^s = 1/ζ(s)`.
fn mobius_sum(u: f64) -> f64 {
    let m = (u / std::f64::consts::LN_2).floor().max(1.0) as usize;
    let mu = mobius_table(m);
    let mut head = CompensatedSum::new();
    for n in 1..=m {
        if mu[n] != 0 {
            head += mu[n] as f64 / n as f64 * logint::ei(u / n as f64).expect("u/n > 0");
        }
    }
    let partial = |f: &dyn Fn(f64) -> f64| -> f64 {
        (1..=m).filter(|&n| mu[n] != 0).map(|n| mu[n] as f64 * f(n as f64)).sum()
    };
    let m1 = partial(&|n| 1.0 / n);
    let m2 = partial(&|n| n.ln() / n);
    let mut tail = CompensatedSum::new();
    tail += -(EULER_GAMMA + u.ln()) * m1;
    tail += 1.0 + m2;

    // Σ_{n>M} μ(n)/n^s: subtract from 1/ζ(s) while the tail is large, sum it
    // directly once it is below the cancellation noise.
    let direct_mu = mobius_table(4000);
    let mut coef = 1.0; // u^k / k!
    let mut k = 1u32;
    loop {
        coef *= u / k as f64;
        let s = k + 1;
        let lead = ((m + 1) as f64).powi(-(s as i32));
        let rest = if lead > 1e-8 {
            1.0 / zeta_int(s) - partial(&|n| n.powi(-(s as i32)))
        } else {
            (m + 1..direct_mu.len())
                .filter(|&n| direct_mu[n] != 0)
                .map(|n| direct_mu[n] as f64 * (n as f64).powi(-(s as i32)))
                .sum()
        };
        let term = coef / k as f64 * rest;
        tail += term;
        if k as f64 > u && (coef / k as f64 * lead).abs() < 1e-18 {
            break;
        }
        k += 1;
    }
    head.value() + tail.value()
}

fn mobius_prefix(n_terms: usize) -> Result<Vec<i8>> {
    if n_terms == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    Ok(mobius_table(n_terms))
}

/// `Σ_{n<=N} μ(n)/n · li(y^{1/n})` for `y > 0`, `y != 1`.
fn truncated_r(y: f64, mu: &[i8]) -> Result<f64> {
    let u = y.ln();
    let mut acc = CompensatedSum::new();
    for (n, &m) in mu.iter().enumerate().skip(1) {
        if m != 0 {
            acc += m as f64 / n as f64 * logint::ei(u / n as f64)?;
        }
    }
    Ok(acc.value())
}

fn check_x(x: u64, cheb: &impl ChebyshevLookup) -> Result<()> {
    if x < 2 {
        return Err(Error::domain(format!("x must be at least 2, got {x}")));
    }
    if x > cheb.range() {
        return Err(Error::range(format!("x = {x} beyond range {}", cheb.range())));
    }
    Ok(())
}

/// `η_N(x)`.
pub fn eta(x: u64, n_terms: usize, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<f64> {
    let mu = mobius_prefix(n_terms)?;
    check_x(x, cheb)?;
    eta_with(x, &mu, primes, cheb)
}

fn eta_with(x: u64, mu: &[i8], primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<f64> {
    Ok(truncated_r(cheb.psi(x)?, mu)? - primes.pi(x) as f64)
}

/// `Σ_{n<=N} μ(n)/n · li(x^{1/n}) − π(x)`.
pub fn riemann_error(x: u64, n_terms: usize, primes: &PrimeTable) -> Result<f64> {
    let mu = mobius_prefix(n_terms)?;
    if x < 2 || x > primes.limit() {
        return Err(Error::range(format!("x = {x} outside [2, {}]", primes.limit())));
    }
    Ok(truncated_r(x as f64, &mu)? - primes.pi(x) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: u64,
    pub value: f64,
}

/// Larger `|value|` wins, ties go to the smaller `x`. Associative and
/// commutative, so the parallel reduction does not depend on chunking.
fn pick(a: Extremum, b: Extremum) -> Extremum {
    match a.value.abs().partial_cmp(&b.value.abs()) {
        Some(std::cmp::Ordering::Greater) => a,
        Some(std::cmp::Ordering::Less) => b,
        _ if a.x <= b.x => a,
        _ => b,
    }
}

fn scan_every(limit: u64, f: impl Fn(u64) -> Result<f64> + Sync) -> Result<Extremum> {
    if limit < 2 {
        return Err(Error::domain("scan limit must be at least 2"));
    }
    (2..=limit)
        .into_par_iter()
        .map(|x| f(x).map(|value| Extremum { x, value }))
        .try_reduce_with(|a, b| Ok(pick(a, b)))
        .expect("non-empty range")
}

/// Signed extremum of `η_N` over integers in `[2, limit]`.
///
/// `η_N` only moves at prime powers, so each prime power stands for the run
/// of integers up to the next one. [`max_error_scan_exhaustive`] visits every
/// integer and must agree.
pub fn max_error_scan(limit: u64, n_terms: usize, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<Extremum> {
    let mu = mobius_prefix(n_terms)?;
    check_x(limit, cheb)?;
    let pps: Vec<PrimePower> = primes.prime_powers(limit, u32::MAX)?;
    pps.par_iter()
        .map(|pp| eta_with(pp.value, &mu, primes, cheb).map(|value| Extremum { x: pp.value, value }))
        .try_reduce_with(|a, b| Ok(pick(a, b)))
        .expect("2 is a prime power")
}

pub fn max_error_scan_exhaustive(
    limit: u64,
    n_terms: usize,
    primes: &PrimeTable,
    cheb: &impl ChebyshevLookup,
) -> Result<Extremum> {
    let mu = mobius_prefix(n_terms)?;
    check_x(limit, cheb)?;
    scan_every(limit, |x| eta_with(x, &mu, primes, cheb))
}

/// Signed extremum of the truncated Riemann error over integers in `[2, limit]`.
pub fn max_riemann_error_scan(limit: u64, n_terms: usize, primes: &PrimeTable) -> Result<Extremum> {
    let mu = mobius_prefix(n_terms)?;
    if limit > primes.limit() {
        return Err(Error::range(format!("limit {limit} beyond sieve limit {}", primes.limit())));
    }
    scan_every(limit, |x| Ok(truncated_r(x as f64, &mu)? - primes.pi(x) as f64))
}

/// The run of integers around `x` (clipped to `[2, limit]`) containing no
/// prime power other than possibly its first element. `ψ`, `π` and hence
/// `η_N` are constant on it.
pub fn constant_run(x: u64, limit: u64) -> (u64, u64) {
    let is_pp = |n: u64| crate::chebyshev::prime_power_decompose(n).is_some();
    let mut start = x;
    while start > 2 && !is_pp(start) {
        start -= 1;
    }
    let mut end = x;
    while end < limit && !is_pp(end + 1) {
        end += 1;
    }
    (start, end)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaJump {
    /// The prime power `p^l` where the step happens.
    pub x: u64,
    pub l: u32,
    /// `η_N(x) − η_N(x − 1)`.
    pub jump: f64,
    /// `jump` for primes, `jump − 1/l` for higher powers.
    pub excess: f64,
    /// The step is not negative at a prime, or not positive at a higher power.
    pub sign_counterexample: bool,
    /// A higher power with `jump − 1/l <= 0`. Always false at primes.
    pub bound_counterexample: bool,
}

impl EtaJump {
    pub fn counterexample(&self) -> bool {
        self.sign_counterexample || self.bound_counterexample
    }
}

/// Steps of `η_N` at every prime power `<= limit`. Expected: negative at
/// primes; positive and above `1/l` at `p^l`, `l > 1`. Failures are flagged.
pub fn eta_jump_report(limit: u64, n_terms: usize, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<Vec<EtaJump>> {
    if n_terms < 2 {
        return Err(Error::domain("the jump report needs N > 1"));
    }
    let mu = mobius_prefix(n_terms)?;
    check_x(limit, cheb)?;
    let mut out = Vec::new();
    for pp in primes.prime_powers(limit, u32::MAX)? {
        // η(1) is not defined; the first step sits at 3.
        if pp.value == 2 {
            continue;
        }
        let before = cheb.psi(pp.value - 1)?;
        let w = (pp.base as f64).ln();
        let (ua, ub) = (before.ln(), (before + w).ln());
        let mut acc = CompensatedSum::new();
        acc += logint::li_jump(before, w)?;
        for (n, &m) in mu.iter().enumerate().skip(2) {
            if m != 0 {
                let nf = n as f64;
                acc += m as f64 / nf * (logint::ei(ub / nf)? - logint::ei(ua / nf)?);
            }
        }
        let jump = acc.value() - if pp.exponent == 1 { 1.0 } else { 0.0 };
        let prime = pp.exponent == 1;
        let excess = if prime { jump } else { jump - 1.0 / pp.exponent as f64 };
        let sign_counterexample = if prime { jump >= 0.0 } else { jump <= 0.0 };
        let bound_counterexample = !prime && excess <= 0.0;
        out.push(EtaJump {
            x: pp.value,
            l: pp.exponent,
            jump,
            excess,
            sign_counterexample,
            bound_counterexample,
        });
    }
    Ok(out)
}

/// `(x, η_N(x))` for every integer `x` in `[2, limit]`.
pub fn eta_series(limit: u64, n_terms: usize, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<Vec<(u64, f64)>> {
    let mu = mobius_prefix(n_terms)?;
    check_x(limit, cheb)?;
    (2..=limit).map(|x| Ok((x, eta_with(x, &mu, primes, cheb)?))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingErrorRow {
    pub x: u64,
    pub n: usize,
    pub eta_n: f64,
    /// `R(x) − π(x)` with the full `R`.
    pub riemann_err: f64,
    /// `li(x) − π(x)`.
    pub gauss_err: f64,
}

pub fn counting_row(x: u64, n_terms: usize, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<CountingErrorRow> {
    let eta_n = eta(x, n_terms, primes, cheb)?;
    let pi = primes.pi(x) as f64;
    let xf = x as f64;
    Ok(CountingErrorRow {
        x,
        n: n_terms,
        eta_n,
        riemann_err: riemann_r(xf, RiemannMode::Gram)? - pi,
        gauss_err: logint::li(xf)?.value - pi,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonKind {
    Theta,
    Psi,
}

/// Integers `x` in `[2, limit]` with `li(f(x)) − π(x) <= 0`, `f` being `θ` or `ψ`.
pub fn epsilon_violations(
    kind: EpsilonKind,
    limit: u64,
    primes: &PrimeTable,
    cheb: &impl ChebyshevLookup,
) -> Result<Vec<u64>> {
    check_x(limit, cheb)?;
    let pps = primes.prime_powers(limit, u32::MAX)?;
    let mut out = Vec::new();
    for (i, pp) in pps.iter().enumerate() {
        let f = match kind {
            EpsilonKind::Theta => cheb.theta(pp.value)?,
            EpsilonKind::Psi => cheb.psi(pp.value)?,
        };
        if logint::li(f)?.value - primes.pi(pp.value) as f64 <= 0.0 {
            let end = pps.get(i + 1).map_or(limit, |next| next.value - 1);
            out.extend(pp.value..=end);
        }
    }
    Ok(out)
}
