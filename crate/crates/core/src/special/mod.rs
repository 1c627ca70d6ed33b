//! Airy function, integer-order Bessel J and Gauss-Legendre rules.
//!
//! Everything here is a pure function of its arguments.

mod airy;
mod bessel;
mod dd;
mod quadrature;

pub use airy::{airy, AiryValue};
pub use bessel::{bessel_j, bessel_j_sequence};
pub use quadrature::{gauss_legendre, QuadratureRule};

/// Magnitudes below this are reported as exactly zero.
pub const UNDERFLOW_FLUSH: f64 = 1e-300;

#[inline]
pub(crate) fn flush_underflow(v: f64) -> f64 {
    if v.abs() < UNDERFLOW_FLUSH {
        0.0
    } else {
        v
    }
}
