//! Logarithmic integral.
//!
//! `li(x)` is evaluated as `Ei(log x)`:
//!
//! * `0 < u <= 40`: `γ + log u + Σ u^k/(k·k!)`; every term is positive.
//! * `u > 40`: the asymptotic series `e^u/u · Σ k!/u^k`, cut at its smallest term.
//! * `−1 <= u < 0`: the same power series (alternating, terms below 1).
//! * `u < −1`: `Ei(u) = −E₁(−u)` with E₁ from its continued fraction.
//!
//! The power series form is the principal value across `t = 1`.
//!
//! Differences `∫_a^b dt/log t` are never formed as `li(b) − li(a)`; they are
//! integrated directly, so a jump of size ~1 at `a ~ 10^7` keeps its full
//! relative precision.

use crate::quadrature;
use crate::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The Ramanujan–Soldner constant, the unique positive zero of `li`.
pub const SOLDNER: f64 = 1.451_369_234_883_381;

/// Relative tolerance requested from the adaptive quadrature in [`li_diff`].
pub const DIFF_REL_TOL: f64 = 1e-12;

const SERIES_MAX: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiValue {
    pub x: f64,
    pub value: f64,
    pub est_abs_error: f64,
}

/// Principal value of `∫_0^x dt/log t`.
pub fn li(x: f64) -> Result<LiValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("li(x) needs finite x > 0, got {x}")));
    }
    if x == 1.0 {
        return Err(Error::domain("li has a logarithmic singularity at x = 1"));
    }
    let (value, est_abs_error) = ei_with_error(x.ln());
    Ok(LiValue { x, value, est_abs_error })
}

/// `Ei(u)` for `u != 0`; equals `li(e^u)` without forming `e^u`.
pub fn ei(u: f64) -> Result<f64> {
    if u == 0.0 || u.is_nan() {
        return Err(Error::domain(format!("Ei(u) needs u != 0, got {u}")));
    }
    Ok(ei_with_error(u).0)
}

/// `li(x^{1/n})`, computed as `Ei(log(x)/n)` so roots close to 1 keep their precision.
pub fn li_root(x: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("root index must be at least 1"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("li_root needs finite x > 0, got {x}")));
    }
    let u = x.ln() / n as f64;
    if u == 0.0 {
        return Err(Error::domain(format!("x^(1/{n}) is exactly 1 for x = {x}")));
    }
    Ok(ei_with_error(u).0)
}

fn ei_with_error(u: f64) -> (f64, f64) {
    const EPS: f64 = f64::EPSILON;
    if u > SERIES_MAX {
        return ei_asymptotic(u);
    }
    if u < -1.0 {
        let v = e1_continued_fraction(-u);
        return (-v, 8.0 * EPS * v.abs());
    }
    // Power series; `abs_sum` bounds the rounding of the alternating case too.
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut abs_sum = 0.0;
    let mut k = 1.0;
    loop {
        term *= u / k;
        let t = term / k;
        let s = sum + t;
        comp += (sum - s) + t;
        sum = s;
        abs_sum += t.abs();
        if t.abs() <= EPS * 1e-2 * abs_sum.max(1e-300) {
            break;
        }
        k += 1.0;
    }
    let lg = u.abs().ln();
    let value = EULER_GAMMA + lg + (sum + comp);
    let err = 4.0 * EPS * (EULER_GAMMA + lg.abs() + abs_sum) + EPS * k * EPS * abs_sum;
    (value, err)
}

fn ei_asymptotic(u: f64) -> (f64, f64) {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * k / u;
        if next >= term || next < f64::EPSILON * 1e-3 {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    let scale = u.exp() / u;
    let value = scale * sum;
    (value, scale * term + 4.0 * f64::EPSILON * value)
}

/// `E₁(v) = ∫_v^∞ e^{−t}/t dt` for `v >= 1`, modified Lentz evaluation.
fn e1_continued_fraction(v: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = v + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-v).exp()
}

/// `∫_a^b dt/log t` for `1 < a <= b`, relative error about `10^-12`.
pub fn li_diff(a: f64, b: f64) -> Result<f64> {
    if !(a > 1.0) || !b.is_finite() {
        return Err(Error::domain(format!("li_diff needs 1 < a, got a = {a}")));
    }
    if b < a {
        return Err(Error::domain(format!("li_diff needs a <= b, got a = {a}, b = {b}")));
    }
    if a == b {
        return Ok(0.0);
    }
    if b <= 2.0 * a {
        return li_diff_width(a, b - a);
    }
    // Wide intervals: t = e^u spreads the steep part near t = 1.
    let (ua, ub) = (a.ln(), b.ln());
    Ok(quadrature::adaptive(|u| u.exp() / u, ua, ub, DIFF_REL_TOL).value)
}

/// `∫_a^{a+w} dt/log t`, with the width passed exactly rather than as `b − a`.
pub fn li_diff_width(a: f64, w: f64) -> Result<f64> {
    if !(a > 1.0) || !(w >= 0.0) || !w.is_finite() {
        return Err(Error::domain(format!("li_diff_width needs a > 1, w >= 0; got a = {a}, w = {w}")));
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    Ok(quadrature::adaptive(|s| w / (a + w * s).ln(), 0.0, 1.0, DIFF_REL_TOL).value)
}

/// Jump of `li` between two points of a step function, `li(b) − li(a)`.
///
/// Uses [`li_diff_width`] whenever `a > 1`. Only when the interval starts at or
/// below the singularity (e.g. `θ(2) = log 2`) is the principal-value
/// difference of `li` itself taken; such intervals are wide, so no cancellation
/// arises.
pub fn li_jump(a: f64, w: f64) -> Result<f64> {
    if a > 1.0 {
        li_diff_width(a, w)
    } else {
        let b = a + w;
        Ok(li(b)?.value - li(a)?.value)
    }
}
