//! Random growth, determinantal point processes and the Tracy-Widom law.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`] evaluates Ai, integer-order J and Gauss-Legendre rules.
//! * [`combinatorics`] does exact partition/Schur/RSK algebra over the rationals.
//! * [`growth`] simulates last-passage percolation, polynuclear growth and
//!   Hammersley's process from seeded, splittable random streams.
//! * [`ensembles`] builds discrete orthogonal polynomial ensembles and their
//!   Christoffel-Darboux kernels, including the Meixner and GUE cases.
//! * [`limits`] holds the Airy and discrete Bessel kernels and both routes
//!   to the Tracy-Widom distribution `F2`.
//! * [`toeplitz`] covers Toeplitz determinants, the Gessel and MacMahon
//!   identities, CUE moments and Haar-unitary Monte Carlo.
//! * [`stats`] turns samples into empirical CDFs and KS distances.

pub mod combinatorics;
pub mod ensembles;
mod error;
pub mod growth;
pub mod limits;
pub mod linalg;
pub mod special;
pub mod stats;
pub mod toeplitz;

pub use error::{Error, Result};
