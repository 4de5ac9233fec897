//! Segmented sieve of Eratosthenes over odd numbers.
//!
//! Segments hold one bit per odd integer. Sieving a range segment by segment,
//! sequentially or on the rayon pool, yields exactly the same prime list; the
//! parallel path only changes who computes each segment, never the merge order.
//!
//! Arguments are `u64`; the largest range exercised by the test suite is
//! about `1.4·10^8` (the index-4 Chebyshev prime census). `sieve_range`
//! materialises every prime, so ranges much beyond `10^10` are limited by
//! memory rather than by the algorithm; use [`for_each_prime`] to stream.

use rayon::prelude::*;

use crate::{Error, Result};

/// Integers covered by one segment. 2^18 integers are 2^17 odd bits, 16 KiB.
pub const DEFAULT_SEGMENT: u64 = 1 << 18;

/// Largest `limit` accepted by [`sieve_range`].
pub const MAX_LIMIT: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub base: u64,
    pub exponent: u32,
    pub value: u64,
}

impl PrimePower {
    /// `None` when `base^exponent` overflows.
    pub fn new(base: u64, exponent: u32) -> Option<Self> {
        base.checked_pow(exponent).map(|value| Self { base, exponent, value })
    }
}

/// Every prime in `[2, limit]`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `π(x)`, counting only primes in the table; exact for `x <= limit`.
    pub fn pi(&self, x: u64) -> u64 {
        self.primes.partition_point(|&p| p <= x) as u64
    }

    /// Membership test for `n <= limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// The `n`-th prime, 1-indexed (`p_1 = 2`).
    pub fn nth_prime(&self, n: usize) -> Result<u64> {
        if n == 0 || n > self.primes.len() {
            return Err(Error::range(format!(
                "prime index {n} outside 1..={} (sieved to {})",
                self.primes.len(),
                self.limit
            )));
        }
        Ok(self.primes[n - 1])
    }

    /// Largest prime `<= x`, if any.
    pub fn prev_prime(&self, x: u64) -> Option<u64> {
        let k = self.pi(x) as usize;
        (k > 0).then(|| self.primes[k - 1])
    }

    /// All `p^l <= limit` with `1 <= l <= l_max`, sorted by value.
    pub fn prime_powers(&self, limit: u64, l_max: u32) -> Result<Vec<PrimePower>> {
        if limit > self.limit {
            return Err(Error::range(format!(
                "prime powers up to {limit} requested from a table sieved to {}",
                self.limit
            )));
        }
        let mut out = Vec::with_capacity(self.pi(limit) as usize);
        for &p in &self.primes {
            if p > limit {
                break;
            }
            let mut value = p;
            let mut exponent = 1;
            while exponent <= l_max {
                out.push(PrimePower { base: p, exponent, value });
                match value.checked_mul(p) {
                    Some(v) if v <= limit => value = v,
                    _ => break,
                }
                exponent += 1;
            }
        }
        out.sort_unstable_by_key(|pp| pp.value);
        Ok(out)
    }
}

/// Primes in `[2, limit]` using the default segment size, segments sieved in parallel.
pub fn sieve_range(limit: u64) -> Result<PrimeTable> {
    sieve_range_with(limit, DEFAULT_SEGMENT, true)
}

/// As [`sieve_range`] with an explicit segment size (rounded up to an even
/// number, at least 2) and choice of parallel or sequential segment processing.
pub fn sieve_range_with(limit: u64, segment: u64, parallel: bool) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::domain(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > MAX_LIMIT {
        return Err(Error::domain(format!("sieve limit {limit} exceeds 2^40")));
    }
    let segment = segment.max(2).next_multiple_of(2);
    let base = base_primes(isqrt(limit));
    let end = limit + 1;
    let starts: Vec<u64> = (0..end.div_ceil(segment)).map(|k| k * segment).collect();

    let primes = if parallel {
        let chunks: Vec<Vec<u64>> = starts
            .par_iter()
            .map(|&lo| {
                let mut out = Vec::new();
                sieve_segment(lo, (lo + segment).min(end), &base, &mut out);
                out
            })
            .collect();
        chunks.concat()
    } else {
        let mut out = Vec::new();
        for &lo in &starts {
            sieve_segment(lo, (lo + segment).min(end), &base, &mut out);
        }
        out
    };
    Ok(PrimeTable { limit, primes })
}

/// Stream the primes `<= limit` in ascending order without materialising them.
pub fn for_each_prime(limit: u64, mut f: impl FnMut(u64)) {
    if limit < 2 {
        return;
    }
    let base = base_primes(isqrt(limit));
    let end = limit + 1;
    let mut buf = Vec::new();
    let mut lo = 0;
    while lo < end {
        let hi = (lo + DEFAULT_SEGMENT).min(end);
        buf.clear();
        sieve_segment(lo, hi, &base, &mut buf);
        buf.iter().for_each(|&p| f(p));
        lo = hi;
    }
}

/// `floor(sqrt(n))`, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Odd primes `<= n` by a plain sieve; `2` is handled by the segment code.
fn base_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

/// Append the primes in `[lo, hi)` to `out`. `base` must hold every odd prime
/// up to `sqrt(hi - 1)`.
fn sieve_segment(lo: u64, hi: u64, base: &[u64], out: &mut Vec<u64>) {
    if hi <= lo {
        return;
    }
    if lo <= 2 && 2 < hi {
        out.push(2);
    }
    let start = lo | 1;
    if start >= hi {
        return;
    }
    let n_bits = ((hi - start) as usize).div_ceil(2);
    let mut bits = vec![u64::MAX; n_bits.div_ceil(64)];

    for &p in base {
        let sq = p * p;
        if sq >= hi {
            break;
        }
        let mut m = if sq >= start { sq } else { start.div_ceil(p) * p };
        if m % 2 == 0 {
            m += p;
        }
        let mut idx = ((m - start) / 2) as usize;
        while idx < n_bits {
            bits[idx >> 6] &= !(1u64 << (idx & 63));
            idx += p as usize;
        }
    }

    for (w, &word) in bits.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            let idx = (w << 6) | b;
            if idx >= n_bits {
                break;
            }
            let n = start + 2 * idx as u64;
            if n > 1 {
                out.push(n);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    fn trial_count(limit: u64) -> usize {
        (2..=limit).filter(|&n| is_prime_trial(n)).count()
    }

    #[test]
    fn small_limits() {
        assert_eq!(sieve_range(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_range(2).unwrap().primes(), &[2]);
        assert_eq!(sieve_range(3).unwrap().primes(), &[2, 3]);
        assert!(matches!(sieve_range(1), Err(Error::Domain(_))));
        assert!(matches!(sieve_range(0), Err(Error::Domain(_))));
    }

    #[test]
    fn counts_match_trial_division() {
        for k in 1..=6 {
            let limit = 10u64.pow(k);
            assert_eq!(sieve_range(limit).unwrap().len(), trial_count(limit), "10^{k}");
        }
        assert_eq!(sieve_range(10_000).unwrap().len(), 1229);
        assert_eq!(sieve_range(1_000_000).unwrap().len(), 78498);
    }

    #[test]
    fn every_prime_passes_trial_division() {
        let t = sieve_range(200_000).unwrap();
        assert!(t.primes().windows(2).all(|w| w[0] < w[1]));
        assert!(t.primes().iter().all(|&p| is_prime_trial(p)));
    }

    #[test]
    fn nth_prime_is_one_indexed() {
        let t = sieve_range(10_000).unwrap();
        assert_eq!(t.nth_prime(1).unwrap(), 2);
        assert_eq!(t.nth_prime(3).unwrap(), 5);
        assert_eq!(t.nth_prime(1229).unwrap(), 9973);
        assert!(matches!(t.nth_prime(0), Err(Error::Range(_))));
        assert!(matches!(t.nth_prime(1230), Err(Error::Range(_))));
    }

    #[test]
    fn pi_lookups() {
        let t = sieve_range(100).unwrap();
        assert_eq!(t.pi(1), 0);
        assert_eq!(t.pi(2), 1);
        assert_eq!(t.pi(10), 4);
        assert_eq!(t.pi(100), 25);
        assert_eq!(t.prev_prime(100), Some(97));
        assert_eq!(t.prev_prime(1), None);
    }

    #[test]
    fn prime_powers_examples() {
        let t = sieve_range(100).unwrap();
        let pp: Vec<(u64, u32, u64)> = t
            .prime_powers(10, 4)
            .unwrap()
            .into_iter()
            .map(|p| (p.base, p.exponent, p.value))
            .collect();
        assert_eq!(
            pp,
            vec![(2, 1, 2), (3, 1, 3), (2, 2, 4), (5, 1, 5), (7, 1, 7), (2, 3, 8), (3, 2, 9)]
        );
        let pp = t.prime_powers(2, 1).unwrap();
        assert_eq!(pp, vec![PrimePower { base: 2, exponent: 1, value: 2 }]);
        let pp = t.prime_powers(32, 5).unwrap();
        assert!(pp.contains(&PrimePower { base: 2, exponent: 5, value: 32 }));
        assert!(t.prime_powers(101, 2).is_err());
    }

    #[test]
    fn exponent_one_restriction_is_the_prime_list() {
        let t = sieve_range(50_000).unwrap();
        let pp = t.prime_powers(50_000, 20).unwrap();
        let ones: Vec<u64> = pp.iter().filter(|p| p.exponent == 1).map(|p| p.value).collect();
        assert_eq!(ones, t.primes());
        assert!(pp.windows(2).all(|w| w[0].value < w[1].value));
        assert!(pp.iter().all(|p| p.base.pow(p.exponent) == p.value));
    }

    #[test]
    fn streaming_matches_table() {
        let t = sieve_range(1_000_003).unwrap();
        let mut streamed = Vec::new();
        for_each_prime(1_000_003, |p| streamed.push(p));
        assert_eq!(streamed, t.primes());
    }

    #[test]
    fn isqrt_exact() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, 99, 100, u64::MAX, (1 << 40) + 7] {
            let r = isqrt(n);
            assert!(r.checked_mul(r).unwrap() <= n);
            assert!((r + 1).checked_mul(r + 1).is_none_or(|sq| sq > n));
        }
    }

    proptest! {
        #[test]
        fn segmentation_does_not_change_output(limit in 2u64..60_000, seg in 2u64..5_000, par: bool) {
            let reference = sieve_range_with(limit, DEFAULT_SEGMENT, false).unwrap();
            let other = sieve_range_with(limit, seg, par).unwrap();
            prop_assert_eq!(reference, other);
        }
    }
}
