use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::symbol::{exact_scale, fourier_coeffs_exact, fourier_coeffs_numeric, macmahon_symbol, FourierSymbol, FOURIER_GRID};
use crate::combinatorics::{gessel_rhs, macmahon_product, ExactScalar};
use crate::error::{domain, precondition, resource, Error, Result};
use crate::linalg::{bareiss_determinant, lu_determinant};

/// Bounds for [`heine_check`].
pub const HEINE_MAX_SUPPORT: usize = 12;
pub const HEINE_MAX_ORDER: usize = 4;
/// Bounds for [`gessel_check`].
pub const GESSEL_CHECK_MAX_ORDER: usize = 5;
pub const GESSEL_CHECK_MAX_VARS: usize = 3;
/// Bounds for [`macmahon_toeplitz_check`].
pub const MACMAHON_MAX_SIDE: usize = 4;
pub const MACMAHON_MAX_ORDER: usize = 5;
/// Bounds for [`poissonized_toeplitz`].
pub const POISSONIZED_MAX_ALPHA: f64 = 100.0;
pub const POISSONIZED_MAX_ORDER: usize = 40;
/// Largest relative aliasing error accepted for numeric symbols.
pub const ALIASING_TOLERANCE: f64 = 1e-12;

/// A Toeplitz determinant, exact when the symbol is exact.
#[derive(Debug, Clone, PartialEq)]
pub enum DetValue {
    Exact(ExactScalar),
    Numeric(Complex64),
}

impl DetValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            DetValue::Exact(v) => Complex64::new(crate::combinatorics::to_f64(v), 0.0),
            DetValue::Numeric(z) => *z,
        }
    }
}

/// `D_n = det(f_{i-j})_{1<=i,j<=n}`, with `D_0 = 1`.
pub fn toeplitz_det(symbol: &FourierSymbol, n: usize) -> Result<DetValue> {
    if symbol.is_exact() {
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| symbol.exact(i as i64 - j as i64).expect("exact symbol")).collect())
            .collect();
        return Ok(DetValue::Exact(bareiss_determinant(&rows)));
    }
    if n > symbol.k_max() + 1 {
        return precondition(format!("order {n} needs coefficients up to |k| = {}, symbol has {}", n - 1, symbol.k_max()));
    }
    let mat = DMatrix::from_fn(n, n, |i, j| symbol.numeric(i as i64 - j as i64).expect("index checked"));
    Ok(DetValue::Numeric(lu_determinant(mat).value))
}

fn exact_toeplitz(symbol: &FourierSymbol, n: usize) -> ExactScalar {
    match toeplitz_det(symbol, n).expect("exact symbols cover every order") {
        DetValue::Exact(v) => v,
        DetValue::Numeric(_) => unreachable!("exact symbol"),
    }
}

/// Heine identity on a finite set: `(1/n!) sum_{x in Omega^n} det(phi_i(x_j)) det(psi_i(x_j)) prod w(x_j)`
/// against `det(sum_x phi_i(x) psi_j(x) w(x))`. Functions are tables over `Omega`.
pub fn heine_check(
    weight: &[ExactScalar],
    phi: &[Vec<ExactScalar>],
    psi: &[Vec<ExactScalar>],
) -> Result<(ExactScalar, ExactScalar)> {
    let (size, n) = (weight.len(), phi.len());
    if size > HEINE_MAX_SUPPORT || n > HEINE_MAX_ORDER {
        return resource(format!("Heine check limited to |Omega| <= {HEINE_MAX_SUPPORT}, n <= {HEINE_MAX_ORDER}"));
    }
    if psi.len() != n || phi.iter().chain(psi).any(|f| f.len() != size) {
        return precondition("phi and psi need n tables, each over the whole support");
    }
    let mut lhs = BigRational::zero();
    let mut xs = vec![0usize; n];
    for code in 0..size.pow(n as u32) {
        let mut c = code;
        for x in xs.iter_mut() {
            *x = c % size;
            c /= size;
        }
        let a: Vec<Vec<BigRational>> = phi.iter().map(|f| xs.iter().map(|&x| f[x].clone()).collect()).collect();
        let b: Vec<Vec<BigRational>> = psi.iter().map(|f| xs.iter().map(|&x| f[x].clone()).collect()).collect();
        let w: BigRational = xs.iter().map(|&x| weight[x].clone()).product();
        lhs += bareiss_determinant(&a) * bareiss_determinant(&b) * w;
    }
    let n_fact: BigInt = (1..=n).map(BigInt::from).product();
    lhs /= BigRational::from_integer(n_fact);
    let moments: Vec<Vec<BigRational>> = phi
        .iter()
        .map(|f| psi.iter().map(|g| (0..size).map(|x| &f[x] * &g[x] * &weight[x]).sum()).collect())
        .collect();
    Ok((lhs, bareiss_determinant(&moments)))
}

/// Toeplitz determinant of `prod (1 + a/z)(1 + b z)` against the Schur sum over
/// partitions with `lambda_1 <= n`.
pub fn gessel_check(n: usize, a: &[ExactScalar], b: &[ExactScalar]) -> Result<(ExactScalar, ExactScalar)> {
    if n > GESSEL_CHECK_MAX_ORDER || a.len() > GESSEL_CHECK_MAX_VARS || b.len() > GESSEL_CHECK_MAX_VARS {
        return resource(format!(
            "Gessel check limited to n <= {GESSEL_CHECK_MAX_ORDER} and <= {GESSEL_CHECK_MAX_VARS} parameters"
        ));
    }
    let unit = BigRational::one();
    if a.iter().chain(b).any(|v| *v < BigRational::zero() || *v >= unit) {
        return domain("Gessel parameters must lie in [0, 1)");
    }
    let symbol = fourier_coeffs_exact(a, b)?;
    Ok((exact_toeplitz(&symbol, n), gessel_rhs(n, a, b)?))
}

/// `e^{-alpha} D_n(e^{2 sqrt(alpha) cos theta})`, which equals `P[L(alpha) <= n]`.
pub fn poissonized_toeplitz(alpha: f64, n: usize) -> Result<f64> {
    poissonized_toeplitz_estimate(alpha, n).map(|(v, _)| v)
}

/// [`poissonized_toeplitz`] together with the relative aliasing error of the
/// symbol's coefficients.
pub fn poissonized_toeplitz_estimate(alpha: f64, n: usize) -> Result<(f64, f64)> {
    if !(alpha >= 0.0 && alpha <= POISSONIZED_MAX_ALPHA) {
        return domain(format!("alpha must lie in [0, {POISSONIZED_MAX_ALPHA}], got {alpha}"));
    }
    if n > POISSONIZED_MAX_ORDER {
        return resource(format!("order limited to {POISSONIZED_MAX_ORDER}, got {n}"));
    }
    if n == 0 {
        return Ok(((-alpha).exp(), 0.0));
    }
    let s = 2.0 * alpha.sqrt();
    // D_n(c f) = c^n D_n(f), so scaling by e^{-alpha/n} absorbs the e^{-alpha}
    let shift = alpha / n as f64;
    let symbol = fourier_coeffs_numeric(|t| Complex64::new((s * t.cos() - shift).exp(), 0.0), n, FOURIER_GRID)?;
    let relative = symbol.aliasing_error() / exact_scale(&symbol);
    if relative > ALIASING_TOLERANCE {
        return Err(Error::Accuracy { message: format!("symbol aliasing at alpha = {alpha}"), achieved: relative });
    }
    Ok((toeplitz_det(&symbol, n)?.to_complex().re, relative))
}

/// Toeplitz determinant of `(1 - e^{-i theta})^a (1 - e^{i theta})^b` at order `n`
/// against MacMahon's box product with `c = n`.
pub fn macmahon_toeplitz_check(a: usize, b: usize, n: usize) -> Result<(ExactScalar, ExactScalar)> {
    if a > MACMAHON_MAX_SIDE || b > MACMAHON_MAX_SIDE || n > MACMAHON_MAX_ORDER {
        return resource(format!("MacMahon check limited to a, b <= {MACMAHON_MAX_SIDE}, n <= {MACMAHON_MAX_ORDER}"));
    }
    Ok((exact_toeplitz(&macmahon_symbol(a, b), n), macmahon_product(a, b, n)))
}
