use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::det::toeplitz_det;
use super::symbol::{fourier_coeffs_numeric, FOURIER_GRID};
use crate::combinatorics::ExactScalar;
use crate::error::{domain, precondition, resource, Result};
use crate::growth::SeededStream;
use crate::linalg::lu_determinant;

/// Bounds for [`cue_moment_exact`].
pub const CUE_EXACT_MAX_N: usize = 400;
pub const CUE_EXACT_MAX_K: usize = 30;
/// Largest matrix size for Haar sampling.
pub const HAAR_MAX_N: usize = 64;
/// Largest moment order for [`cue_moment_mc`].
pub const CUE_MC_MAX_K: usize = 4;
/// Bounds for [`weyl_mc_check`].
pub const WEYL_MAX_N: usize = 16;
pub const WEYL_MAX_DEGREE: i64 = 3;

/// `prod_{j=0}^{n-1} j! (j + 2k)! / ((j + k)!)^2`, the `2k`-th moment of
/// `|det(I - U)|` over `n x n` Haar unitaries.
pub fn cue_moment_exact(n: usize, k: usize) -> Result<ExactScalar> {
    if n > CUE_EXACT_MAX_N || k > CUE_EXACT_MAX_K {
        return resource(format!("exact CUE moments limited to n <= {CUE_EXACT_MAX_N}, k <= {CUE_EXACT_MAX_K}"));
    }
    let fact = |m: usize| -> BigInt { (1..=m).map(BigInt::from).product() };
    let mut r = BigRational::from_integer(BigInt::from(1));
    for j in 0..n {
        let den = fact(j + k);
        r *= BigRational::new(fact(j) * fact(j + 2 * k), &den * &den);
    }
    assert!(r.is_integer(), "CUE moment must be an integer, got {r}");
    Ok(r)
}

/// An `n x n` unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarySample {
    pub matrix: DMatrix<Complex64>,
}

impl UnitarySample {
    /// `max |(U* U - I)_{ij}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        let g = self.matrix.adjoint() * &self.matrix;
        (g - DMatrix::<Complex64>::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn det(&self) -> Complex64 {
        lu_determinant(self.matrix.clone()).value
    }

    /// `tr U^k` for any integer `k`, with `U^{-1} = U*`.
    pub fn trace_power(&self, k: i64) -> Complex64 {
        let base = if k < 0 { self.matrix.adjoint() } else { self.matrix.clone() };
        let n = self.matrix.nrows();
        let mut p = DMatrix::<Complex64>::identity(n, n);
        for _ in 0..k.unsigned_abs() {
            p = &p * &base;
        }
        p.trace()
    }
}

/// Haar unitary: QR of a complex Gaussian matrix, with each column of `Q`
/// rotated so the matching diagonal entry of `R` is real positive.
pub fn haar_unitary(n: usize, rng: &mut SeededStream) -> Result<UnitarySample> {
    if n == 0 || n > HAAR_MAX_N {
        return domain(format!("Haar sampling needs 1 <= n <= {HAAR_MAX_N}, got {n}"));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut z = DMatrix::<Complex64>::zeros(n, n);
    // row-major fill keeps the draw order independent of storage layout
    for i in 0..n {
        for j in 0..n {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            z[(i, j)] = Complex64::new(re * scale, im * scale);
        }
    }
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        q.column_mut(j).scale_mut_complex(phase);
    }
    Ok(UnitarySample { matrix: q })
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, c: Complex64);
}

impl<S: nalgebra::StorageMut<Complex64, nalgebra::Dyn, nalgebra::U1>> ScaleComplex
    for nalgebra::Matrix<Complex64, nalgebra::Dyn, nalgebra::U1, S>
{
    fn scale_mut_complex(&mut self, c: Complex64) {
        self.iter_mut().for_each(|v| *v *= c);
    }
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl McEstimate {
    fn from_values(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Self { mean, stderr: (var / n).sqrt(), samples: values.len() }
    }
}

fn haar_values(n: usize, samples: usize, seed: u64, f: impl Fn(&UnitarySample) -> f64 + Sync) -> Result<Vec<f64>> {
    if samples == 0 {
        return precondition("Monte Carlo needs at least one sample");
    }
    (0..samples as u64)
        .into_par_iter()
        .map(|s| haar_unitary(n, &mut SeededStream::new(seed, s)).map(|u| f(&u)))
        .collect()
}

/// Mean of `|det(I - U e^{-i theta})|^{2k}` over Haar unitaries; sample `s`
/// uses stream `s` of `seed`.
pub fn cue_moment_mc(n: usize, k: usize, theta: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    if k > CUE_MC_MAX_K {
        return resource(format!("moment order limited to {CUE_MC_MAX_K}, got {k}"));
    }
    let rot = Complex64::from_polar(1.0, -theta);
    let values = haar_values(n, samples, seed, |u| {
        let m = DMatrix::<Complex64>::identity(n, n) - u.matrix.map(|z| z * rot);
        lu_determinant(m).value.norm().powi(2 * k as i32)
    })?;
    Ok(McEstimate::from_values(&values))
}

/// `E[e^{tr g(U)}]` by Monte Carlo, with `tr g(U) = sum_k g_k tr U^k`, against
/// the Toeplitz determinant `D_n(e^g)`. `g` lists `(k, g_k)` with `|k| <= 3`.
pub fn weyl_mc_check(g: &[(i64, Complex64)], n: usize, samples: usize, seed: u64) -> Result<(McEstimate, f64)> {
    if n == 0 || n > WEYL_MAX_N {
        return resource(format!("Weyl check limited to 1 <= n <= {WEYL_MAX_N}"));
    }
    if g.iter().any(|(k, _)| k.abs() > WEYL_MAX_DEGREE) {
        return precondition(format!("g must be a Laurent polynomial of degree <= {WEYL_MAX_DEGREE}"));
    }
    let values = haar_values(n, samples, seed, |u| {
        let tr: Complex64 = g.iter().map(|&(k, c)| c * u.trace_power(k)).sum();
        tr.exp().re
    })?;
    let symbol = fourier_coeffs_numeric(
        |t| g.iter().map(|&(k, c)| c * Complex64::from_polar(1.0, k as f64 * t)).sum::<Complex64>().exp(),
        n,
        FOURIER_GRID,
    )?;
    let det_side = toeplitz_det(&symbol, n)?.to_complex().re;
    Ok((McEstimate::from_values(&values), det_side))
}
