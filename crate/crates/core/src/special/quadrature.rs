use std::f64::consts::PI;

use crate::error::{domain, Result};

const MAX_POINTS: usize = 512;

/// A Gauss-Legendre rule mapped to `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Legendre polynomial `P_m(x)` and its derivative by the three-term recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=m {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let dp = m as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// `m`-point Gauss-Legendre rule on `[a, b]`, exact for polynomials of degree `2m - 1`.
pub fn gauss_legendre(m: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if m == 0 || m > MAX_POINTS {
        return domain(format!("gauss_legendre needs 1 <= m <= {MAX_POINTS}, got {m}"));
    }
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return domain(format!("gauss_legendre needs finite a < b, got [{a}, {b}]"));
    }

    let mut ref_nodes = vec![0.0; m];
    let mut ref_weights = vec![0.0; m];
    let mf = m as f64;
    // roots are symmetric; solve for the positive half
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        ref_nodes[i] = -x;
        ref_nodes[m - 1 - i] = x;
        ref_weights[i] = w;
        ref_weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        ref_nodes[m / 2] = 0.0;
    }

    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        nodes: ref_nodes.iter().map(|&t| mid + half * t).collect(),
        weights: ref_weights.iter().map(|&w| half * w).collect(),
        interval: (a, b),
    })
}
