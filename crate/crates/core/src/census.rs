//! Chebyshev primes of every index, their gaps and offsets from `p_{2n}`,
//! and Riemann primes (left-to-right maxima of `|ψ(p^l) − p^l|` or
//! `|θ(p^l) − p^l|`).

use std::f64::consts::PI;

use crate::chebyshev::{ChebyshevLookup, ChebyshevSamples};
use crate::jumps::{self, JumpKind};
use crate::sieve::{self, PrimeTable};
use crate::{Error, Result, Tables};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevPrimeRecord {
    /// `n` in `Ch_n`, 1-indexed.
    pub rank: usize,
    pub p: u64,
    pub l: u32,
    /// `K − 1/l`, negative by definition.
    pub margin: f64,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChampionRecord {
    pub p: u64,
    pub l: u32,
    pub kind: JumpKind,
    /// `f(p^l) − p^l` with `f` one of `ψ`, `θ`.
    pub deviation: f64,
    pub abs_deviation: f64,
    /// `r = deviation/√x` for ψ, `s = deviation/(√x log²x / 8π)` for θ, `x = p^l`.
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecordGap {
    pub gap: u64,
    pub start: u64,
}

/// `⌊n^{1/l}⌋`.
pub fn iroot(n: u64, l: u32) -> u64 {
    match l {
        0 => panic!("iroot with l = 0"),
        1 => n,
        2 => sieve::isqrt(n),
        _ => {
            let mut r = (n as f64).powf(1.0 / l as f64).round() as u64;
            while r > 0 && r.checked_pow(l).is_none_or(|v| v > n) {
                r -= 1;
            }
            while (r + 1).checked_pow(l).is_some_and(|v| v <= n) {
                r += 1;
            }
            r
        }
    }
}

fn check_cover(limit: u64, l: u32, primes: &PrimeTable) -> Result<()> {
    if l == 0 {
        return Err(Error::domain("index must be at least 1"));
    }
    let root = iroot(limit, l);
    if root > primes.limit() {
        return Err(Error::range(format!(
            "primes up to {root} are needed but the table stops at {}",
            primes.limit()
        )));
    }
    Ok(())
}

fn bases(limit: u64, l: u32, primes: &PrimeTable) -> impl Iterator<Item = (u64, u64)> + '_ {
    primes
        .primes()
        .iter()
        .map_while(move |&p| p.checked_pow(l).filter(|&q| q <= limit).map(|q| (p, q)))
}

/// Prime table to `⌊limit^{1/l}⌋` and `θ`, `ψ` sampled at every `p^l` and `p^l − 1`.
///
/// For `l >= 2` this avoids holding a full table up to `limit`.
pub fn power_samples(limit: u64, l: u32) -> Result<(PrimeTable, ChebyshevSamples)> {
    if l == 0 {
        return Err(Error::domain("index must be at least 1"));
    }
    let primes = sieve::sieve_range(iroot(limit, l).max(2))?;
    let samples = ChebyshevSamples::collect(bases(limit, l, &primes).flat_map(|(_, q)| [q - 1, q]));
    Ok((primes, samples))
}

/// Odd primes `p` with `p^l <= limit` whose ψ-jump is below `1/l`, ascending.
pub fn chebyshev_primes(
    limit: u64,
    l: u32,
    primes: &PrimeTable,
    cheb: &impl ChebyshevLookup,
) -> Result<Vec<ChebyshevPrimeRecord>> {
    check_cover(limit, l, primes)?;
    let mut out = Vec::new();
    for r in jumps::psi_jumps(limit, l, primes, cheb)? {
        if r.below_threshold {
            out.push(ChebyshevPrimeRecord {
                rank: out.len() + 1,
                p: r.p,
                l,
                margin: r.margin,
                ambiguous: r.ambiguous,
            });
        }
    }
    Ok(out)
}

/// Number of records with `p < 10^k` for `k = 1..=k_max`.
pub fn decade_counts_of(records: &[ChebyshevPrimeRecord], k_max: u32) -> Vec<usize> {
    (1..=k_max)
        .map(|k| records.partition_point(|r| r.p < 10u64.pow(k)))
        .collect()
}

/// Counts of index-`l` Chebyshev primes below `10^k`, `k = 1..=k_max`.
pub fn decade_counts(l: u32, k_max: u32, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<Vec<usize>> {
    let top = 10u64
        .checked_pow(k_max)
        .and_then(|d| d.checked_pow(l))
        .ok_or_else(|| Error::range("decade range overflows u64"))?;
    let records = chebyshev_primes(top, l, primes, cheb)?;
    Ok(decade_counts_of(&records, k_max))
}

/// Strictly increasing record gaps between consecutive records.
pub fn record_gaps_of(records: &[ChebyshevPrimeRecord]) -> Vec<RecordGap> {
    let mut best = 0;
    let mut out = Vec::new();
    for w in records.windows(2) {
        let gap = w[1].p - w[0].p;
        if gap > best {
            best = gap;
            out.push(RecordGap { gap, start: w[0].p });
        }
    }
    out
}

/// Record gaps among index-1 Chebyshev primes up to `limit`.
pub fn record_gaps(limit: u64, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<Vec<RecordGap>> {
    Ok(record_gaps_of(&chebyshev_primes(limit, 1, primes, cheb)?))
}

/// `(n, Ch_n − p_{2n})` for every rank where both sides are available.
pub fn offsets(records: &[ChebyshevPrimeRecord], primes: &PrimeTable) -> Vec<(usize, i64)> {
    records
        .iter()
        .map_while(|r| {
            let p2n = primes.nth_prime(2 * r.rank).ok()?;
            Some((r.rank, r.p as i64 - p2n as i64))
        })
        .collect()
}

/// Ranks `n <= limit_rank` with `Ch_n = p_{2n}`, together with `Ch_n`.
pub fn offset_zeros(
    limit_rank: usize,
    records: &[ChebyshevPrimeRecord],
    primes: &PrimeTable,
) -> Result<Vec<(usize, u64)>> {
    if records.len() < limit_rank {
        return Err(Error::range(format!(
            "{limit_rank} ranks requested but only {} Chebyshev primes available",
            records.len()
        )));
    }
    let mut out = Vec::new();
    for r in &records[..limit_rank] {
        if primes.nth_prime(2 * r.rank)? == r.p {
            out.push((r.rank, r.p));
        }
    }
    Ok(out)
}

/// Tables and index-1 census large enough for `ranks` offsets.
///
/// Starts from `p_{2n} ≈ 2n log 2n` and doubles until both the census and the
/// prime table reach far enough.
pub fn census_for_ranks(ranks: usize) -> Result<(Tables, Vec<ChebyshevPrimeRecord>)> {
    let m = (2 * ranks.max(1)) as f64;
    let mut limit = ((m * (m.ln() + m.ln().ln().max(1.0))) * 1.2).max(1000.0) as u64;
    loop {
        let tables = Tables::new(limit)?;
        let records = chebyshev_primes(limit, 1, &tables.primes, &tables.cheb)?;
        if records.len() >= ranks && tables.primes.len() >= 2 * ranks {
            return Ok((tables, records));
        }
        limit = limit.checked_mul(2).ok_or_else(|| Error::range("rank target too large"))?;
    }
}

/// Champions of `|f(p^l) − p^l|` over primes with `p^l <= limit`; `p = 2` opens the list.
pub fn riemann_primes(
    kind: JumpKind,
    l: u32,
    limit: u64,
    primes: &PrimeTable,
    cheb: &impl ChebyshevLookup,
) -> Result<Vec<ChampionRecord>> {
    check_cover(limit, l, primes)?;
    let mut best = f64::NEG_INFINITY;
    let mut out = Vec::new();
    for (p, q) in bases(limit, l, primes) {
        let x = q as f64;
        let f = match kind {
            JumpKind::Psi => cheb.psi(q)?,
            JumpKind::Theta => cheb.theta(q)?,
        };
        let deviation = f - x;
        let abs_deviation = deviation.abs();
        if abs_deviation > best {
            best = abs_deviation;
            let scale = match kind {
                JumpKind::Psi => x.sqrt(),
                JumpKind::Theta => x.sqrt() * x.ln().powi(2) / (8.0 * PI),
            };
            out.push(ChampionRecord {
                p,
                l,
                kind,
                deviation,
                abs_deviation,
                ratio: deviation / scale,
            });
        }
    }
    Ok(out)
}

/// `ψ₀(p^l) > p^l`.
pub fn psi0_criterion(p: u64, l: u32, cheb: &impl ChebyshevLookup) -> Result<bool> {
    let q = p
        .checked_pow(l)
        .ok_or_else(|| Error::range(format!("{p}^{l} overflows u64")))?;
    Ok(cheb.psi0(q)? > q as f64)
}
