//! Seeded simulators for last-passage percolation, polynuclear growth and
//! Hammersley's process, with the exact couplings between them.
//!
//! Batches are parallel over samples; sample `i` of a batch always draws
//! from stream `base + i`, so results do not depend on the worker count.

mod hammersley;
mod lpp;
mod png;
mod rng;

pub use hammersley::{hammersley_batch, hammersley_sample, lpp_to_l_alpha_limit_check, LimitReport};
pub use lpp::{lpp_batch, lpp_maximal_path, lpp_table, lpp_value, transversal_deviation, LppGrid, UpRightPath};
pub use png::{png_evolve, Nucleations, PngField};
pub use rng::{sample_geometric, sample_poisson, SeededStream, POISSON_INVERSION_MAX};
