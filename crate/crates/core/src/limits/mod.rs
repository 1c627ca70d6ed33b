//! Limit kernels and the Tracy-Widom law `F2`.
//!
//! `F2` is computed twice, independently: as a Nystrom-discretized Fredholm
//! determinant of the Airy kernel, and from the Hastings-McLeod solution of
//! Painleve II. The discrete Bessel kernel gives the exact law of `L(alpha)`.

mod airy_kernel;
mod bessel_kernel;
mod fredholm;
mod painleve;
mod table;

pub use airy_kernel::{airy_kernel, tw2_fredholm, TW_FREDHOLM_TOLERANCE};
pub use bessel_kernel::{discrete_bessel_kernel, discrete_bessel_kernel_quotient, l_alpha_cdf, LAlphaValue};
pub use fredholm::{fredholm_determinant, NystromEstimate};
pub use painleve::{hastings_mcleod, hastings_mcleod_with_tolerance, tw2_painleve, HastingsMcLeodSolution};
pub use table::{Tw2Method, Tw2Table, TW_XI_MAX, TW_XI_MIN};

use crate::error::{domain, Result};

/// Centering and scale `(omega, sigma)` for `G([gamma N], N)` with geometric(q) weights:
/// `G ~ omega N + sigma N^{1/3} chi`, `chi ~ F2`.
pub fn lpp_scaling(gamma: f64, q: f64) -> Result<(f64, f64)> {
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return domain(format!("gamma must be finite and >= 1, got {gamma}"));
    }
    if !(q > 0.0 && q < 1.0) {
        return domain(format!("q must lie in (0, 1), got {q}"));
    }
    let sq = (q * gamma).sqrt();
    let omega = (1.0 + sq).powi(2) / (1.0 - q) - 1.0;
    let sigma = (q / gamma).powf(1.0 / 6.0) * (gamma.sqrt() + q.sqrt()).powf(2.0 / 3.0) * (1.0 + sq).powf(2.0 / 3.0)
        / (1.0 - q);
    Ok((omega, sigma))
}

/// `(2 sqrt(alpha), alpha^{1/6})`: `L(alpha) ~ 2 sqrt(alpha) + alpha^{1/6} chi`.
pub fn poisson_scaling(alpha: f64) -> (f64, f64) {
    (2.0 * alpha.sqrt(), alpha.powf(1.0 / 6.0))
}
