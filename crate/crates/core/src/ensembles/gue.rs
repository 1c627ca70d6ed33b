use nalgebra::DMatrix;

use crate::error::{domain, Error, Result};
use crate::limits::{fredholm_determinant, TW_FREDHOLM_TOLERANCE};

const MAX_N: usize = 100;

/// Hermite functions `phi_0..phi_{n-1}` at `x`, orthonormal on the real line
/// for the weight `e^{-x^2}` absorbed into the functions.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp());
    if n > 1 {
        out.push(std::f64::consts::SQRT_2 * x * out[0]);
    }
    for k in 1..n.saturating_sub(1) {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// `P[(sqrt(2N) x_max - 2N) / N^{1/3} <= xi]` for the `N x N` GUE with weight
/// `e^{-x^2}`, as a Fredholm determinant of the Hermite kernel in the scaled
/// variable `s`, `x = (2N + s N^{1/3}) / sqrt(2N)`.
pub fn gue_xmax_cdf(n: usize, xi: f64) -> Result<f64> {
    if n == 0 || n > MAX_N {
        return domain(format!("GUE size must lie in 1..={MAX_N}, got {n}"));
    }
    if xi.is_nan() {
        return domain("xi is NaN");
    }
    let nf = n as f64;
    let (c, r) = (nf.powf(1.0 / 3.0), (2.0 * nf).sqrt());
    let to_x = |s: f64| (2.0 * nf + s * c) / r;
    if to_x(xi) > 40.0 {
        return Ok(1.0);
    }
    // all N eigenvalues lie right of the cut when it sits far left of the bulk
    if to_x(xi) < -(r + 40.0) {
        return Ok(0.0);
    }
    let jac = c / r;
    let kernel = |s: &[f64]| {
        let phi: Vec<Vec<f64>> = s.iter().map(|&si| hermite_functions(n, to_x(si))).collect();
        DMatrix::from_fn(s.len(), s.len(), |i, j| jac * phi[i].iter().zip(&phi[j]).map(|(a, b)| a * b).sum::<f64>())
    };
    // cover the edge window and, for cuts inside the bulk, everything to the right of it
    let bulk = (r + 2.0 - to_x(xi)).max(0.0);
    let extra = (4.0 * bulk * r / std::f64::consts::PI).ceil() as usize;
    let coarse = (60 + extra).min(400);
    let fine = (80 + extra + extra / 3).min(512);
    let coarse_v = fredholm_determinant(kernel, xi, (14.0f64).max(14.0 - xi), coarse)?;
    let fine_v = fredholm_determinant(kernel, xi, (18.0f64).max(18.0 - xi), fine)?;
    let err = (fine_v - coarse_v).abs();
    if err > TW_FREDHOLM_TOLERANCE {
        return Err(Error::Accuracy { message: format!("GUE edge determinant at N = {n}, xi = {xi}"), achieved: err });
    }
    Ok(fine_v.clamp(0.0, 1.0))
}
