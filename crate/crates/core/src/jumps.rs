//! Jumps of `li∘θ`, `li∘ψ` and `li` at primes and prime powers.
//!
//! A jump is keyed by the prime `p` (and exponent `l`) at which the step
//! happens: the θ-jump `J_n` lives at `p_{n+1}`, the ψ-jump of index `l` at `p^l`.
//!
//! Every jump is `∫_a^{a+w} dt/log t` where `a` is the value of the step
//! function just before the step and `w = log p` is the step height. The
//! width is passed exactly, so the result does not inherit the rounding of
//! `a + w` at large `a`.

use crate::chebyshev::ChebyshevLookup;
use crate::logint;
use crate::sieve::PrimeTable;
use crate::{Error, Result};

/// Records with `|margin|` below this are flagged ambiguous.
pub const AMBIGUITY_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JumpKind {
    Theta,
    Psi,
}

impl JumpKind {
    pub fn name(self) -> &'static str {
        match self {
            JumpKind::Theta => "theta",
            JumpKind::Psi => "psi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpRecord {
    pub p: u64,
    pub l: u32,
    pub kind: JumpKind,
    /// Value of `θ` or `ψ` just before the step.
    pub start: f64,
    /// Step height, `log p`.
    pub width: f64,
    pub exact: f64,
    /// Midpoint approximation `log p / log(start + width/2)`; ψ-kind only.
    pub approx: Option<f64>,
    pub below_threshold: bool,
    /// `exact − 1/l`.
    pub margin: f64,
    pub ambiguous: bool,
}

impl JumpRecord {
    fn new(p: u64, l: u32, kind: JumpKind, start: f64, width: f64) -> Result<Self> {
        let exact = logint::li_jump(start, width)?;
        let margin = exact - 1.0 / l as f64;
        let approx = match kind {
            JumpKind::Psi => Some(midpoint_approx(start, width)),
            JumpKind::Theta => None,
        };
        Ok(Self {
            p,
            l,
            kind,
            start,
            width,
            exact,
            approx,
            below_threshold: margin < 0.0,
            margin,
            ambiguous: margin.abs() < AMBIGUITY_BAND,
        })
    }

    pub fn threshold(&self) -> f64 {
        1.0 / self.l as f64
    }

    /// `approx − 1/l`, when an approximation exists.
    pub fn approx_margin(&self) -> Option<f64> {
        self.approx.map(|k| k - self.threshold())
    }

    /// `(log p / log end, log p / log start)`, the bounds from the monotonicity
    /// of `1/log t`; `None` when the interval does not lie above `t = 1`.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        let end = self.start + self.width;
        (self.start > 1.0).then(|| (self.width / end.ln(), self.width / self.start.ln()))
    }
}

fn midpoint_approx(start: f64, width: f64) -> f64 {
    width / (start + 0.5 * width).ln()
}

fn ensure_odd_prime(p: u64, primes: &PrimeTable) -> Result<()> {
    if p == 2 {
        return Err(Error::domain("jumps of li∘ψ are defined for odd primes only"));
    }
    let prime = if p <= primes.limit() {
        primes.is_prime(p)
    } else {
        crate::chebyshev::prime_power_decompose(p) == Some((p, 1))
    };
    if !prime {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(())
}

fn power(p: u64, l: u32) -> Result<u64> {
    if l == 0 {
        return Err(Error::domain("exponent must be at least 1"));
    }
    p.checked_pow(l)
        .ok_or_else(|| Error::range(format!("{p}^{l} overflows u64")))
}

/// `J_n = li θ(p_{n+1}) − li θ(p_n)`, recorded at `p = p_{n+1}` with `l = 1`.
pub fn theta_jump(n: usize, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<JumpRecord> {
    let p_n = primes.nth_prime(n)?;
    let p_next = primes.nth_prime(n + 1)?;
    let start = cheb.theta(p_n)?;
    JumpRecord::new(p_next, 1, JumpKind::Theta, start, (p_next as f64).ln())
}

/// `K^{(l)} = li ψ(p^l) − li ψ(p^l − 1)` for an odd prime `p`.
pub fn psi_jump(p: u64, l: u32, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<JumpRecord> {
    ensure_odd_prime(p, primes)?;
    let q = power(p, l)?;
    let start = cheb.psi(q - 1)?;
    JumpRecord::new(p, l, JumpKind::Psi, start, (p as f64).ln())
}

/// `K̃^{(l)} = log p / log[(ψ(p^l) + ψ(p^l − 1))/2]`.
pub fn psi_jump_approx(p: u64, l: u32, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<f64> {
    ensure_odd_prime(p, primes)?;
    let q = power(p, l)?;
    let lo = cheb.psi(q - 1)?;
    let hi = cheb.psi(q)?;
    Ok((p as f64).ln() / (0.5 * (lo + hi)).ln())
}

/// `j(p_n) = li(p_n) − li(p_n − 1)`. Undefined for `n = 1` (`li(1) = −∞`).
pub fn plain_li_jump(n: usize, primes: &PrimeTable) -> Result<f64> {
    let p = primes.nth_prime(n)? as f64;
    logint::li_diff(p - 1.0, p)
}

/// θ-jumps at every prime `p_{n+1} <= limit`, `n >= 1`.
pub fn theta_jumps(limit: u64, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<Vec<JumpRecord>> {
    let count = primes.pi(limit) as usize;
    (1..count).map(|n| theta_jump(n, primes, cheb)).collect()
}

/// ψ-jumps of index `l` at every odd prime with `p^l <= limit`.
pub fn psi_jumps(limit: u64, l: u32, primes: &PrimeTable, cheb: &impl ChebyshevLookup) -> Result<Vec<JumpRecord>> {
    let mut out = Vec::new();
    for &p in primes.primes().iter().skip(1) {
        match p.checked_pow(l) {
            Some(q) if q <= limit => out.push(psi_jump(p, l, primes, cheb)?),
            _ => break,
        }
    }
    Ok(out)
}

/// Largest `|exact − approx|·p^{2l}` over ψ-records with `p` in `[lo, hi]`:
/// the empirical constant in `K − K̃ = O(p^{−2l})`.
pub fn approx_error_constant(records: &[JumpRecord], lo: u64, hi: u64) -> f64 {
    records
        .iter()
        .filter(|r| (lo..=hi).contains(&r.p))
        .filter_map(|r| r.approx.map(|k| (r.exact - k).abs() * (r.p as f64).powi(2 * r.l as i32)))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tables;

    fn tables() -> Tables {
        Tables::new(200_000).unwrap()
    }

    #[test]
    fn first_theta_jump_exceeds_one() {
        let t = tables();
        let j = theta_jump(1, &t.primes, &t.cheb).unwrap();
        assert_eq!(j.p, 3);
        // li(log 6) − li(log 2), crossing t = 1.
        let want = logint::li(6f64.ln()).unwrap().value - logint::li(2f64.ln()).unwrap().value;
        assert!((j.exact - want).abs() < 1e-14);
        assert!(j.exact > 1.0 && !j.below_threshold);
        assert!(j.bounds().is_none());
    }

    #[test]
    fn theta_jump_sandwich_at_25() {
        let t = tables();
        let j = theta_jump(25, &t.primes, &t.cheb).unwrap();
        let p_next = t.primes.nth_prime(26).unwrap() as f64;
        let th_n = t.cheb.theta(t.primes.nth_prime(25).unwrap()).unwrap();
        let th_next = t.cheb.theta(p_next as u64).unwrap();
        let lower = p_next.ln() / th_next.ln();
        let upper = p_next.ln() / th_n.ln();
        assert!(lower <= j.exact && j.exact <= upper);
        assert!(j.exact > 1.0);
    }

    #[test]
    fn theta_jump_out_of_range() {
        let t = Tables::new(10).unwrap();
        assert!(theta_jump(3, &t.primes, &t.cheb).is_ok());
        assert!(matches!(theta_jump(4, &t.primes, &t.cheb), Err(Error::Range(_))));
    }

    #[test]
    fn psi_jump_classification() {
        let t = tables();
        assert!(psi_jump(109, 1, &t.primes, &t.cheb).unwrap().below_threshold);
        assert!(!psi_jump(107, 1, &t.primes, &t.cheb).unwrap().below_threshold);
        let r = psi_jump(17, 2, &t.primes, &t.cheb).unwrap();
        assert!(r.below_threshold && r.margin < 0.0 && r.threshold() == 0.5);
        assert!(matches!(psi_jump(2, 1, &t.primes, &t.cheb), Err(Error::Domain(_))));
        assert!(matches!(psi_jump(9, 1, &t.primes, &t.cheb), Err(Error::Domain(_))));
    }

    #[test]
    fn approx_examples() {
        let t = tables();
        let r = psi_jump(109, 1, &t.primes, &t.cheb).unwrap();
        let k = psi_jump_approx(109, 1, &t.primes, &t.cheb).unwrap();
        assert_eq!(r.approx, Some(midpoint_approx(r.start, r.width)));
        assert!((k - r.approx.unwrap()).abs() < 1e-14);
        assert!(k < 1.0 && r.exact < 1.0);

        let k3 = psi_jump_approx(3, 1, &t.primes, &t.cheb).unwrap();
        let want = 3f64.ln() / ((6f64.ln() + 2f64.ln()) / 2.0).ln();
        assert!((k3 - want).abs() < 1e-15);
    }

    #[test]
    fn approx_error_is_order_inverse_square() {
        let t = tables();
        let recs = psi_jumps(100_000, 1, &t.primes, &t.cheb).unwrap();
        let c = approx_error_constant(&recs, 1_000, 100_000);
        // Midpoint rule error is w³ f''/24 ≈ log p / 24 per p^-2; C is of that size.
        assert!(c > 0.0 && c < 1.0, "C = {c}");
    }

    #[test]
    fn plain_jumps() {
        let t = Tables::new(10_000).unwrap();
        let j5 = plain_li_jump(3, &t.primes).unwrap();
        assert!((0.667..0.668).contains(&j5));
        let js: Vec<f64> = (3..=1000).map(|n| plain_li_jump(n, &t.primes).unwrap()).collect();
        assert!(js.windows(2).all(|w| w[1] < w[0]));
        assert!(js.iter().all(|&j| j < 1.0));
        assert!(plain_li_jump(1, &t.primes).is_err());
    }

    #[test]
    fn sandwich_bounds_hold() {
        let t = tables();
        for r in theta_jumps(100_000, &t.primes, &t.cheb)
            .unwrap()
            .into_iter()
            .chain(psi_jumps(100_000, 1, &t.primes, &t.cheb).unwrap())
        {
            assert!(r.exact > 0.0);
            assert_eq!(r.below_threshold, r.margin < 0.0);
            if let Some((lo, hi)) = r.bounds() {
                assert!(lo <= r.exact * (1.0 + 1e-14) && r.exact <= hi * (1.0 + 1e-14), "{r:?}");
            }
        }
    }

    #[test]
    fn one_directional_implications() {
        let t = tables();
        for r in psi_jumps(100_000, 1, &t.primes, &t.cheb).unwrap() {
            let psi_p = t.cheb.psi(r.p).unwrap();
            let psi_before = t.cheb.psi(r.p - 1).unwrap();
            if r.below_threshold {
                assert!(psi_p > r.p as f64, "p={}", r.p);
            }
            if psi_before > r.p as f64 {
                assert!(r.below_threshold, "p={}", r.p);
            }
        }
    }
}
