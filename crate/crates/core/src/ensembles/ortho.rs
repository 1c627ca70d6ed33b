use super::weight::DiscreteWeight;
use crate::error::{precondition, Error, Result};

/// Orthonormal polynomials `p_0, ..., p_K` for a discrete weight, with
/// `x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoPolySystem {
    /// `a_k`, `k = 0..=K`.
    pub alpha: Vec<f64>,
    /// `b_k`, `k = 0..=K`; `b_0 = 0` by convention.
    pub beta: Vec<f64>,
    /// `||pi_k||`, the weighted norm of the monic `pi_k`.
    pub norm: Vec<f64>,
    /// `kappa_{k-1} / kappa_k`, equal to `b_k`; entry 0 is zero.
    pub kappa_ratio: Vec<f64>,
    /// `q_k(x) = p_k(x) sqrt(w(x))` on the support, row `k`.
    weighted: Vec<Vec<f64>>,
}

impl OrthoPolySystem {
    /// Highest degree `K`.
    pub fn degree(&self) -> usize {
        self.alpha.len() - 1
    }

    /// `p_k(x) sqrt(w(x))` at a support point.
    pub fn weighted_value(&self, k: usize, x: usize) -> f64 {
        self.weighted[k][x]
    }

    /// `p_k(x)` by the recurrence, for any real `x`.
    pub fn evaluate(&self, k: usize, x: f64) -> f64 {
        let mut prev = 0.0;
        let mut cur = 1.0 / self.norm[0];
        for j in 0..k {
            let next = ((x - self.alpha[j]) * cur - self.beta[j] * prev) / self.beta[j + 1];
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Discrete Stieltjes procedure on the weighted vectors `p_k sqrt(w)`, with one
/// re-orthogonalization pass against all earlier vectors.
pub fn stieltjes_system(weight: &DiscreteWeight, k_max: usize) -> Result<OrthoPolySystem> {
    let size = weight.len();
    if k_max + 1 > size {
        return precondition(format!("degree {k_max} needs at least {} support points, have {size}", k_max + 1));
    }
    let mass = weight.mass();
    let xs: Vec<f64> = (0..size).map(|x| x as f64).collect();
    let mut weighted: Vec<Vec<f64>> = vec![weight.values().iter().map(|w| (w / mass).sqrt()).collect()];
    let mut alpha = Vec::with_capacity(k_max + 1);
    let mut beta = vec![0.0];
    let mut norm = vec![mass.sqrt()];
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for k in 0..=k_max {
        let q = &weighted[k];
        let a_k: f64 = q.iter().zip(&xs).map(|(v, x)| x * v * v).sum();
        alpha.push(a_k);
        if k == k_max {
            break;
        }
        let mut v: Vec<f64> = (0..size)
            .map(|i| {
                let back = if k > 0 { beta[k] * weighted[k - 1][i] } else { 0.0 };
                (xs[i] - a_k) * q[i] - back
            })
            .collect();
        for prev in &weighted {
            let c = dot(&v, prev);
            v.iter_mut().zip(prev).for_each(|(vi, p)| *vi -= c * p);
        }
        let b = dot(&v, &v).sqrt();
        // the scale of x q_k on the support bounds how small b may honestly get
        let scale = xs.last().copied().unwrap_or(1.0).max(1.0);
        if !(b > 1e-10 * scale) {
            return Err(Error::Conditioning(format!(
                "recurrence coefficient b_{} = {b:e} lost to cancellation",
                k + 1
            )));
        }
        v.iter_mut().for_each(|vi| *vi /= b);
        beta.push(b);
        norm.push(norm[k] * b);
        weighted.push(v);
    }
    let kappa_ratio = beta.clone();
    Ok(OrthoPolySystem { alpha, beta, norm, kappa_ratio, weighted })
}
