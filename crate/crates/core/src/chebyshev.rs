//! The von Mangoldt function and the Chebyshev functions `θ`, `ψ`, `ψ₀`.
//!
//! All logarithms are natural. Sums are compensated; at `x = 10^8` the
//! accumulated error stays around `10^-9` absolute.
//!
//! Arguments are integers throughout. `θ` and `ψ` are step functions, so a
//! real argument reduces to its floor.

use crate::sieve::{self, PrimePower, PrimeTable};
use crate::sum::CompensatedSum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MangoldtValue {
    pub n: u64,
    pub value: f64,
    pub base: Option<u64>,
    pub exponent: Option<u32>,
}

/// `Λ(n)`: `log p` when `n = p^l`, zero otherwise.
pub fn mangoldt(n: u64) -> Result<MangoldtValue> {
    if n == 0 {
        return Err(Error::domain("Λ(0) is undefined"));
    }
    Ok(match prime_power_decompose(n) {
        Some((p, l)) => MangoldtValue {
            n,
            value: (p as f64).ln(),
            base: Some(p),
            exponent: Some(l),
        },
        None => MangoldtValue { n, value: 0.0, base: None, exponent: None },
    })
}

/// `Some((p, l))` when `n = p^l` for a prime `p` and `l >= 1`.
pub fn prime_power_decompose(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    let mut l = 0;
    while m.is_multiple_of(p) {
        m /= p;
        l += 1;
    }
    (m == 1).then_some((p, l))
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// Running `θ` and `ψ` as the argument advances through the integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct ChebyshevAccumulator {
    x: u64,
    theta: CompensatedSum,
    psi: CompensatedSum,
}

impl ChebyshevAccumulator {
    /// State at `x = 1`: both sums empty.
    pub fn new() -> Self {
        Self { x: 1, ..Default::default() }
    }

    /// Move to `pp.value`, adding `Λ(pp.value)`; `θ` also grows when `pp` is prime.
    /// Prime powers must arrive in increasing order.
    pub fn push(&mut self, pp: PrimePower) {
        debug_assert!(pp.value > self.x || (self.x == 1 && pp.value >= 1));
        let lg = (pp.base as f64).ln();
        self.psi.add(lg);
        if pp.exponent == 1 {
            self.theta.add(lg);
        }
        self.x = pp.value;
    }

    /// Advance to `x` across integers that are not prime powers.
    pub fn advance_flat(&mut self, x: u64) {
        debug_assert!(x >= self.x);
        self.x = x;
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn theta(&self) -> f64 {
        self.theta.value()
    }

    pub fn psi(&self) -> f64 {
        self.psi.value()
    }

    /// The Kahan residuals `(theta, psi)`.
    pub fn compensation(&self) -> (f64, f64) {
        (self.theta.parts().1, self.psi.parts().1)
    }
}

fn check_range(x: u64, table: &PrimeTable) -> Result<()> {
    if x > table.limit() {
        return Err(Error::range(format!("argument {x} beyond sieve limit {}", table.limit())));
    }
    Ok(())
}

/// `θ(x) = Σ_{p <= x} log p`, evaluated directly from the prime list.
pub fn theta(x: u64, table: &PrimeTable) -> Result<f64> {
    check_range(x, table)?;
    let k = table.pi(x) as usize;
    let s: CompensatedSum = table.primes()[..k].iter().map(|&p| (p as f64).ln()).collect();
    Ok(s.value())
}

/// `ψ(x) = Σ_{n <= x} Λ(n) = Σ_{p <= x} ⌊log_p x⌋ log p`.
pub fn psi(x: u64, table: &PrimeTable) -> Result<f64> {
    check_range(x, table)?;
    let k = table.pi(x) as usize;
    let s: CompensatedSum = table.primes()[..k]
        .iter()
        .map(|&p| {
            let mut count = 0u32;
            let mut q = p;
            loop {
                count += 1;
                match q.checked_mul(p) {
                    Some(next) if next <= x => q = next,
                    _ => break,
                }
            }
            count as f64 * (p as f64).ln()
        })
        .collect();
    Ok(s.value())
}

/// `ψ₀(x)`: `ψ(x) − Λ(x)/2` at prime powers, `ψ(x)` elsewhere.
pub fn psi0(x: u64, table: &PrimeTable) -> Result<f64> {
    let value = psi(x, table)?;
    Ok(match prime_power_decompose(x) {
        Some((p, _)) => value - 0.5 * (p as f64).ln(),
        None => value,
    })
}

/// Random access to `θ` and `ψ` at integer arguments.
pub trait ChebyshevLookup: Sync {
    /// Largest argument for which values are available.
    fn range(&self) -> u64;

    fn theta(&self, x: u64) -> Result<f64>;

    fn psi(&self, x: u64) -> Result<f64>;

    fn psi0(&self, x: u64) -> Result<f64> {
        let value = self.psi(x)?;
        Ok(match prime_power_decompose(x) {
            Some((p, _)) => value - 0.5 * (p as f64).ln(),
            None => value,
        })
    }
}

/// Cumulative `θ` and `ψ` at every prime power of a [`PrimeTable`].
///
/// Lookups are a binary search over the prime powers; values between
/// consecutive prime powers are constant.
#[derive(Debug, Clone)]
pub struct ChebyshevTable {
    limit: u64,
    powers: Vec<u64>,
    bases: Vec<u64>,
    theta: Vec<f64>,
    psi: Vec<f64>,
}

impl ChebyshevTable {
    pub fn build(table: &PrimeTable) -> Self {
        let pps = table
            .prime_powers(table.limit(), u32::MAX)
            .expect("limit equals the table limit");
        let mut acc = ChebyshevAccumulator::new();
        let n = pps.len();
        let mut out = Self {
            limit: table.limit(),
            powers: Vec::with_capacity(n),
            bases: Vec::with_capacity(n),
            theta: Vec::with_capacity(n),
            psi: Vec::with_capacity(n),
        };
        for pp in pps {
            acc.push(pp);
            out.powers.push(pp.value);
            out.bases.push(pp.base);
            out.theta.push(acc.theta());
            out.psi.push(acc.psi());
        }
        out
    }

    /// Prime powers covered, ascending.
    pub fn prime_powers(&self) -> &[u64] {
        &self.powers
    }

    fn slot(&self, x: u64) -> Result<Option<usize>> {
        if x > self.limit {
            return Err(Error::range(format!("argument {x} beyond table limit {}", self.limit)));
        }
        let k = self.powers.partition_point(|&q| q <= x);
        Ok(k.checked_sub(1))
    }
}

impl ChebyshevLookup for ChebyshevTable {
    fn range(&self) -> u64 {
        self.limit
    }

    fn theta(&self, x: u64) -> Result<f64> {
        Ok(self.slot(x)?.map_or(0.0, |k| self.theta[k]))
    }

    fn psi(&self, x: u64) -> Result<f64> {
        Ok(self.slot(x)?.map_or(0.0, |k| self.psi[k]))
    }

    fn psi0(&self, x: u64) -> Result<f64> {
        Ok(match self.slot(x)? {
            Some(k) if self.powers[k] == x => self.psi[k] - 0.5 * (self.bases[k] as f64).ln(),
            Some(k) => self.psi[k],
            None => 0.0,
        })
    }
}

/// `θ` and `ψ` recorded at a fixed set of arguments during one streaming pass.
///
/// Used when the range is too large to keep a [`ChebyshevTable`] in memory,
/// e.g. `ψ(p^4 − 1)` near `10^8`.
#[derive(Debug, Clone)]
pub struct ChebyshevSamples {
    points: Vec<u64>,
    theta: Vec<f64>,
    psi: Vec<f64>,
}

impl ChebyshevSamples {
    /// Stream prime powers up to the largest query and record `θ`, `ψ` at each query.
    pub fn collect(queries: impl IntoIterator<Item = u64>) -> Self {
        let mut points: Vec<u64> = queries.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        let limit = points.last().copied().unwrap_or(0);
        let mut theta = Vec::with_capacity(points.len());
        let mut psi = Vec::with_capacity(points.len());
        let mut next = 0;
        let mut record = |upto: u64, th: f64, ps: f64| {
            while next < points.len() && points[next] < upto {
                theta.push(th);
                psi.push(ps);
                next += 1;
            }
        };
        let mut last = (0.0, 0.0);
        scan_prime_powers(limit, |pp, th, ps| {
            record(pp.value, last.0, last.1);
            last = (th, ps);
        });
        record(u64::MAX, last.0, last.1);
        Self { points, theta, psi }
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    fn slot(&self, x: u64) -> Result<usize> {
        self.points
            .binary_search(&x)
            .map_err(|_| Error::range(format!("argument {x} was not sampled")))
    }
}

impl ChebyshevLookup for ChebyshevSamples {
    fn range(&self) -> u64 {
        self.points.last().copied().unwrap_or(0)
    }

    fn theta(&self, x: u64) -> Result<f64> {
        Ok(self.theta[self.slot(x)?])
    }

    fn psi(&self, x: u64) -> Result<f64> {
        Ok(self.psi[self.slot(x)?])
    }
}

/// Stream every prime power `<= limit` in increasing order together with
/// `θ` and `ψ` evaluated at it.
pub fn scan_prime_powers(limit: u64, mut visit: impl FnMut(PrimePower, f64, f64)) {
    if limit < 2 {
        return;
    }
    // Powers with exponent >= 2 have bases up to sqrt(limit); there are few.
    let root = sieve::isqrt(limit);
    let mut higher = Vec::new();
    if root >= 2 {
        let small = sieve::sieve_range(root).expect("root >= 2");
        for &p in small.primes() {
            let mut l = 2;
            while let Some(pp) = PrimePower::new(p, l).filter(|pp| pp.value <= limit) {
                higher.push(pp);
                l += 1;
            }
        }
        higher.sort_unstable_by_key(|pp| pp.value);
    }
    let mut acc = ChebyshevAccumulator::new();
    let mut h = 0;
    sieve::for_each_prime(limit, |p| {
        while h < higher.len() && higher[h].value < p {
            acc.push(higher[h]);
            visit(higher[h], acc.theta(), acc.psi());
            h += 1;
        }
        let pp = PrimePower { base: p, exponent: 1, value: p };
        acc.push(pp);
        visit(pp, acc.theta(), acc.psi());
    });
    for &pp in &higher[h..] {
        acc.push(pp);
        visit(pp, acc.theta(), acc.psi());
    }
}

/// Visit every integer `x` in `[2, limit]` with `θ(x)` and `ψ(x)`, in order.
pub fn scan_accumulate(limit: u64, mut visit: impl FnMut(u64, f64, f64)) -> Result<()> {
    if limit < 2 {
        return Err(Error::domain(format!("scan limit must be at least 2, got {limit}")));
    }
    let mut x = 2;
    let mut state = (0.0, 0.0);
    scan_prime_powers(limit, |pp, th, ps| {
        while x < pp.value {
            visit(x, state.0, state.1);
            x += 1;
        }
        state = (th, ps);
        visit(x, th, ps);
        x += 1;
    });
    while x <= limit {
        visit(x, state.0, state.1);
        x += 1;
    }
    Ok(())
}

/// Integers `x <= limit` with `θ(x) >= x`. Expected to be empty; a non-empty
/// result is a finding to report.
pub fn theta_exceedances(limit: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    scan_accumulate(limit, |x, th, _| {
        if th >= x as f64 {
            out.push(x);
        }
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::sieve_range;

    const LN2: f64 = std::f64::consts::LN_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn mangoldt_examples() {
        assert_eq!(mangoldt(1).unwrap().value, 0.0);
        let m = mangoldt(8).unwrap();
        assert_eq!(m.value, LN2);
        assert_eq!((m.base, m.exponent), (Some(2), Some(3)));
        assert_eq!(mangoldt(12).unwrap().value, 0.0);
        assert_eq!(mangoldt(12).unwrap().base, None);
        assert!(matches!(mangoldt(0), Err(Error::Domain(_))));
        assert_eq!(mangoldt(97).unwrap().base, Some(97));
        assert_eq!(prime_power_decompose(3u64.pow(20)), Some((3, 20)));
    }

    #[test]
    fn pointwise_small_values() {
        let t = sieve_range(100).unwrap();
        assert_eq!(theta(1, &t).unwrap(), 0.0);
        assert_eq!(psi(1, &t).unwrap(), 0.0);
        assert!(close(theta(10, &t).unwrap(), 210f64.ln(), 1e-15));
        assert!(close(psi(10, &t).unwrap(), 2520f64.ln(), 1e-15));
        assert_eq!(psi(2, &t).unwrap(), LN2);
        assert!(close(psi0(9, &t).unwrap(), psi(9, &t).unwrap() - 3f64.ln() / 2.0, 1e-15));
        assert_eq!(psi0(10, &t).unwrap(), psi(10, &t).unwrap());
        assert_eq!(psi0(2, &t).unwrap(), LN2 / 2.0);
        assert!(matches!(psi(101, &t), Err(Error::Range(_))));
    }

    /// log lcm(1..x) with exact integer arithmetic: exponents of each prime in
    /// the lcm, then `Σ e_p log p`, with no floating cumulative sum of ψ involved.
    fn log_lcm_oracle(x: u64) -> f64 {
        let mut total = 0.0f64;
        let mut terms = Vec::new();
        for p in 2..=x {
            if (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                continue;
            }
            let mut e = 0u32;
            let mut q = p;
            while q <= x {
                e += 1;
                q *= p;
            }
            terms.push(e as f64 * (p as f64).ln());
        }
        // Sum smallest first for a tight oracle.
        terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for t in terms {
            total += t;
        }
        total
    }

    #[test]
    fn psi_is_log_lcm() {
        let t = sieve_range(10_000).unwrap();
        for x in [1u64, 2, 10, 97, 1000, 4096, 9999, 10_000] {
            let v = psi(x, &t).unwrap();
            assert!((v - log_lcm_oracle(x)).abs() <= 1e-9 * v.max(1.0), "x={x}");
        }
    }

    #[test]
    fn psi_from_theta_at_roots() {
        let t = sieve_range(10_000).unwrap();
        for x in (2..=10_000u64).step_by(37) {
            let mut s = 0.0;
            let mut l = 1;
            loop {
                let r = root_floor(x, l);
                if r < 2 {
                    break;
                }
                s += theta(r, &t).unwrap();
                l += 1;
            }
            assert!((s - psi(x, &t).unwrap()).abs() <= 1e-8, "x={x}");
        }
    }

    fn root_floor(x: u64, l: u32) -> u64 {
        let mut r = (x as f64).powf(1.0 / l as f64).round() as u64;
        while r.pow(l) > x {
            r -= 1;
        }
        while (r + 1).pow(l) <= x {
            r += 1;
        }
        r
    }

    #[test]
    fn table_agrees_with_pointwise() {
        let t = sieve_range(20_000).unwrap();
        let c = ChebyshevTable::build(&t);
        for x in [1u64, 2, 3, 4, 1000, 1024, 19_997, 20_000] {
            assert!(close(c.theta(x).unwrap(), theta(x, &t).unwrap(), 1e-13));
            assert!(close(c.psi(x).unwrap(), psi(x, &t).unwrap(), 1e-13));
            assert!(close(c.psi0(x).unwrap(), psi0(x, &t).unwrap(), 1e-13));
        }
        assert!(c.psi(20_001).is_err());
    }

    #[test]
    fn jumps_at_prime_powers_are_log_p() {
        let t = sieve_range(100_000).unwrap();
        let c = ChebyshevTable::build(&t);
        for pp in t.prime_powers(100_000, 32).unwrap() {
            let d = c.psi(pp.value).unwrap() - c.psi(pp.value - 1).unwrap();
            let lg = (pp.base as f64).ln();
            // Both ends near 10^5 carry ~1e-11 absolute rounding.
            assert!((d - lg).abs() <= 1e-12 * c.psi(pp.value).unwrap(), "{pp:?}");
        }
    }

    #[test]
    fn scan_small_cases() {
        let mut seen = Vec::new();
        scan_accumulate(10, |x, th, ps| seen.push((x, th, ps))).unwrap();
        assert_eq!(seen.len(), 9);
        let (x, th, ps) = *seen.last().unwrap();
        assert_eq!(x, 10);
        assert!(close(th, 210f64.ln(), 1e-15));
        assert!(close(ps, 2520f64.ln(), 1e-15));

        let mut seen = Vec::new();
        scan_accumulate(2, |x, th, ps| seen.push((x, th, ps))).unwrap();
        assert_eq!(seen, vec![(2, LN2, LN2)]);
        assert!(scan_accumulate(1, |_, _, _| {}).is_err());
    }

    #[test]
    fn scan_matches_pointwise() {
        let limit = 100_000;
        let t = sieve_range(limit).unwrap();
        let mut last = (0, 0.0, 0.0);
        let mut prev = (0.0, 0.0);
        scan_accumulate(limit, |x, th, ps| {
            assert!(th <= ps);
            assert!(th >= prev.0 && ps >= prev.1);
            prev = (th, ps);
            if x % 9973 == 0 {
                assert!(close(ps, psi(x, &t).unwrap(), 1e-9));
                assert!(close(th, theta(x, &t).unwrap(), 1e-9));
            }
            last = (x, th, ps);
        })
        .unwrap();
        assert_eq!(last.0, limit);
        assert!(close(last.2, psi(limit, &t).unwrap(), 1e-9));
    }

    #[test]
    fn samples_match_table() {
        let t = sieve_range(50_000).unwrap();
        let c = ChebyshevTable::build(&t);
        let q = [2u64, 3, 4, 100, 1023, 1024, 1025, 49_999, 50_000, 7];
        let s = ChebyshevSamples::collect(q);
        assert_eq!(s.points().len(), q.len());
        for &x in &q {
            assert!(close(s.psi(x).unwrap(), c.psi(x).unwrap(), 1e-13));
            assert!(close(s.theta(x).unwrap(), c.theta(x).unwrap(), 1e-13));
            assert!(close(s.psi0(x).unwrap(), c.psi0(x).unwrap(), 1e-13));
        }
        assert!(s.psi(5).is_err());
    }

    #[test]
    fn theta_stays_below_x() {
        assert!(theta_exceedances(1_000_000).unwrap().is_empty());
    }
}
