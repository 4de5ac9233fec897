//! Chebyshev functions, jumps of the logarithmic integral along θ and ψ,
//! Chebyshev primes, Riemann primes, and a prime counting function built
//! on `li(ψ(x))`.
//!
//! The crate is organised bottom-up:
//!
//! * [`sieve`]: segmented sieve of Eratosthenes, `π(x)`, `p_n`, prime powers.
//! * [`sum`]: compensated (Neumaier) summation.
//! * [`chebyshev`]: `Λ(n)`, `θ(x)`, `ψ(x)`, `ψ₀(x)` and streaming scans.
//! * [`logint`]: `li(x)` through `Ei(log x)` and cancellation-free `∫ dt/log t`.
//! * [`jumps`]: jumps of `li∘θ`, `li∘ψ` and plain `li` at primes and prime powers.
//! * [`census`]: Chebyshev primes of every index, gaps, zeros of `Ch_n − p_{2n}`,
//!   Riemann primes.
//! * [`counting`]: Möbius function, Riemann `R(x)` (two routes), `η_N(x)` and
//!   the error tables.
//! * [`explicit`]: truncated von Mangoldt explicit formula over zeta zeros.
//! * [`golden`]: published reference data embedded in the crate.

pub mod census;
pub mod chebyshev;
pub mod counting;
mod error;
pub mod explicit;
pub mod golden;
pub mod jumps;
pub mod logint;
pub mod quadrature;
pub mod sieve;
pub mod sum;

pub use error::{Error, Result};

use chebyshev::ChebyshevTable;
use sieve::PrimeTable;

/// A prime table together with the cumulative Chebyshev functions over it.
///
/// Most scans need both; building them once and sharing the pair is the
/// normal way to drive the higher level modules.
#[derive(Debug, Clone)]
pub struct Tables {
    pub primes: PrimeTable,
    pub cheb: ChebyshevTable,
}

impl Tables {
    pub fn new(limit: u64) -> Result<Self> {
        let primes = sieve::sieve_range(limit)?;
        let cheb = ChebyshevTable::build(&primes);
        Ok(Self { primes, cheb })
    }

    pub fn limit(&self) -> u64 {
        self.primes.limit()
    }
}
