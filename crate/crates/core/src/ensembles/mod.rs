//! Orthogonal polynomial ensembles on finite (or truncated) subsets of the
//! non-negative integers, their Christoffel-Darboux kernels and gap
//! probabilities, plus the Hermite/GUE edge law.

mod brute;
mod gue;
mod kernel;
mod ortho;
mod weight;

pub use brute::{brute_correlation, fredholm_expectation_check, BRUTE_MAX_N, BRUTE_MAX_SUPPORT, FREDHOLM_CHECK_MAX_N};
pub use gue::{gue_xmax_cdf, hermite_functions};
pub use kernel::{cd_kernel, correlation_fn, meixner_lpp_cdf, xmax_cdf_discrete, Ensemble, KernelMatrix};
pub use ortho::{stieltjes_system, OrthoPolySystem};
pub use weight::{meixner_weight, DiscreteWeight, TAIL_TOLERANCE};
