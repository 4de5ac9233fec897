//! Gauss–Legendre panels with adaptive bisection.

use std::sync::OnceLock;

use crate::sum::CompensatedSum;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of `P_n`, found by Newton iteration from the
    /// Chebyshev-type initial guess `cos(π(i − 1/4)/(n + 1/2))`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f`.
    pub fn integrate(&self, f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = a + half;
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        half * s
    }
}

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// The 16-point rule used by [`adaptive`].
pub fn gl16() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum over accepted panels of |two halves − whole|; an upper bound in practice.
    pub est_error: f64,
    pub panels: usize,
}

const MAX_DEPTH: u32 = 60;

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol`, bisecting a
/// panel whenever the 16-point rule on the panel and on its two halves disagree.
pub fn adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, est_error: 0.0, panels: 0 };
    }
    let rule = gl16();
    let whole = rule.integrate(&f, a, b);
    let tol = (rel_tol * whole.abs()).max(f64::MIN_POSITIVE);
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut panels = 0;
    bisect(&f, rule, a, b, whole, tol, 0, &mut acc, &mut err, &mut panels);
    Quadrature { value: acc.value(), est_error: err, panels }
}

#[allow(clippy::too_many_arguments)]
fn bisect(
    f: &impl Fn(f64) -> f64,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    acc: &mut CompensatedSum,
    err: &mut f64,
    panels: &mut usize,
) {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    let diff = (left + right - whole).abs();
    if diff <= tol || depth >= MAX_DEPTH || mid <= a || mid >= b {
        acc.add(left);
        acc.add(right);
        *err += diff;
        *panels += 2;
        return;
    }
    bisect(f, rule, a, mid, left, 0.5 * tol, depth + 1, acc, err, panels);
    bisect(f, rule, mid, b, right, 0.5 * tol, depth + 1, acc, err, panels);
}
