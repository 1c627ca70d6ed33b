//! Toeplitz determinants of Fourier symbols, the exact identities they satisfy
//! (Heine, Gessel, MacMahon) and circular unitary ensemble moments.

mod cue;
mod det;
mod symbol;

pub use cue::{
    cue_moment_exact, cue_moment_mc, haar_unitary, weyl_mc_check, McEstimate, UnitarySample, CUE_EXACT_MAX_K,
    CUE_EXACT_MAX_N,     CUE_MC_MAX_K, HAAR_MAX_N, WEYL_MAX_DEGREE, WEYL_MAX_N,
};
pub use det::{
    gessel_check, heine_check, macmahon_toeplitz_check, poissonized_toeplitz, poissonized_toeplitz_estimate,
    toeplitz_det, DetValue,
    ALIASING_TOLERANCE, GESSEL_CHECK_MAX_ORDER, GESSEL_CHECK_MAX_VARS, HEINE_MAX_ORDER, HEINE_MAX_SUPPORT,
    MACMAHON_MAX_ORDER, MACMAHON_MAX_SIDE, POISSONIZED_MAX_ALPHA, POISSONIZED_MAX_ORDER,
};
pub use symbol::{
    fourier_coeffs_exact, fourier_coeffs_numeric, macmahon_symbol, FourierSymbol, EXACT_SYMBOL_MAX_VARS, FOURIER_GRID,
};
