use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::combinatorics::{elementary_all, to_f64, ExactScalar};
use crate::error::{domain, precondition, resource, Result};

/// Default trapezoid grid for numeric Fourier coefficients.
pub const FOURIER_GRID: usize = 4096;
/// Longest parameter lists accepted by [`fourier_coeffs_exact`].
pub const EXACT_SYMBOL_MAX_VARS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
enum Coefficients {
    /// A Laurent polynomial: every coefficient outside the stored range is zero.
    Exact(Vec<ExactScalar>),
    Numeric(Vec<Complex64>),
}

/// Fourier coefficients `f_k`, `-K <= k <= K`, of a symbol on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSymbol {
    k_max: i64,
    coeffs: Coefficients,
    /// Largest coefficient change under grid doubling; zero for exact symbols.
    aliasing_error: f64,
}

impl FourierSymbol {
    /// Exact Laurent polynomial from coefficients `f_{-K}, ..., f_K`.
    pub fn from_exact(k_max: usize, coeffs: Vec<ExactScalar>) -> Result<Self> {
        if coeffs.len() != 2 * k_max + 1 {
            return precondition(format!("expected {} coefficients, got {}", 2 * k_max + 1, coeffs.len()));
        }
        Ok(Self { k_max: k_max as i64, coeffs: Coefficients::Exact(coeffs), aliasing_error: 0.0 })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coefficients::Exact(_))
    }

    pub fn k_max(&self) -> usize {
        self.k_max as usize
    }

    pub fn aliasing_error(&self) -> f64 {
        self.aliasing_error
    }

    /// Exact `f_k`; zero outside the stored range. `None` for numeric symbols.
    pub fn exact(&self, k: i64) -> Option<ExactScalar> {
        match &self.coeffs {
            Coefficients::Exact(c) if k.abs() <= self.k_max => Some(c[(k + self.k_max) as usize].clone()),
            Coefficients::Exact(_) => Some(BigRational::zero()),
            Coefficients::Numeric(_) => None,
        }
    }

    /// `f_k` as a complex float, `None` when a numeric symbol does not store `k`.
    pub fn numeric(&self, k: i64) -> Option<Complex64> {
        match &self.coeffs {
            Coefficients::Exact(_) => self.exact(k).map(|v| Complex64::new(to_f64(&v), 0.0)),
            Coefficients::Numeric(c) if k.abs() <= self.k_max => Some(c[(k + self.k_max) as usize]),
            Coefficients::Numeric(_) => None,
        }
    }

    /// Whether `f_{-k} = conj(f_k)` (exactly, or to `tol` times the largest
    /// coefficient for numeric symbols), i.e. the symbol is real on the circle.
    pub fn is_real_on_circle(&self, tol: f64) -> bool {
        match &self.coeffs {
            Coefficients::Exact(c) => c.iter().eq(c.iter().rev()),
            Coefficients::Numeric(c) => {
                let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
                c.iter().zip(c.iter().rev()).all(|(a, b)| (a - b.conj()).norm() <= tol * scale)
            }
        }
    }
}

fn trapezoid(f: &dyn Fn(f64) -> Complex64, k_max: usize, grid: usize) -> Result<Vec<Complex64>> {
    let samples: Vec<(f64, Complex64)> = (0..grid)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / grid as f64;
            (theta, f(theta))
        })
        .collect();
    if let Some((theta, v)) = samples.iter().find(|(_, v)| !(v.re.is_finite() && v.im.is_finite())) {
        return domain(format!("symbol is not finite at theta = {theta}: {v}"));
    }
    let k = k_max as i64;
    Ok((-k..=k)
        .map(|m| {
            let sum: Complex64 = samples.iter().map(|&(t, v)| v * Complex64::from_polar(1.0, -(m as f64) * t)).sum();
            sum / grid as f64
        })
        .collect())
}

/// `f_k = (1/2pi) int f(theta) e^{-ik theta} d theta` for `|k| <= K` by the
/// trapezoid rule on `grid` points, with the aliasing error estimated by one
/// grid doubling.
pub fn fourier_coeffs_numeric(f: impl Fn(f64) -> Complex64, k_max: usize, grid: usize) -> Result<FourierSymbol> {
    if !grid.is_power_of_two() || grid < 4 * k_max.max(1) {
        return precondition(format!("grid must be a power of two >= 4K = {}, got {grid}", 4 * k_max));
    }
    let coarse = trapezoid(&f, k_max, grid)?;
    let fine = trapezoid(&f, k_max, 2 * grid)?;
    let aliasing_error = coarse.iter().zip(&fine).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(FourierSymbol { k_max: k_max as i64, coeffs: Coefficients::Numeric(coarse), aliasing_error })
}

/// Laurent coefficients of `prod_l (1 + a_l / z) prod_l (1 + b_l z)`:
/// `f_k = sum_m e_m(a) e_{m+k}(b)`.
pub fn fourier_coeffs_exact(a: &[ExactScalar], b: &[ExactScalar]) -> Result<FourierSymbol> {
    if a.len() > EXACT_SYMBOL_MAX_VARS || b.len() > EXACT_SYMBOL_MAX_VARS {
        return resource(format!("exact symbols take at most {EXACT_SYMBOL_MAX_VARS} parameters per side"));
    }
    let (ea, eb) = (elementary_all(a), elementary_all(b));
    let k_max = a.len().max(b.len());
    let coeffs = (-(k_max as i64)..=k_max as i64)
        .map(|k| {
            (0..ea.len() as i64)
                .filter(|m| m + k >= 0 && ((m + k) as usize) < eb.len())
                .map(|m| &ea[m as usize] * &eb[(m + k) as usize])
                .sum()
        })
        .collect();
    FourierSymbol::from_exact(k_max, coeffs)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Integer coefficients of `(1 - e^{-i theta})^a (1 - e^{i theta})^b`.
pub fn macmahon_symbol(a: usize, b: usize) -> FourierSymbol {
    let signed = |n: usize, i: usize| {
        let c = binomial(n, i);
        if i % 2 == 1 {
            -c
        } else {
            c
        }
    };
    let k_max = a.max(b);
    let coeffs = (-(k_max as i64)..=k_max as i64)
        .map(|k| {
            let total: BigInt = (0..=a as i64)
                .filter(|i| i + k >= 0 && i + k <= b as i64)
                .map(|i| signed(a, i as usize) * signed(b, (i + k) as usize))
                .sum();
            BigRational::from_integer(total)
        })
        .collect();
    FourierSymbol::from_exact(k_max, coeffs).expect("coefficient count matches")
}

/// Largest absolute exact coefficient, as a float.
pub(crate) fn exact_scale(symbol: &FourierSymbol) -> f64 {
    match &symbol.coeffs {
        Coefficients::Exact(c) => c.iter().map(|v| to_f64(&v.abs())).fold(0.0, f64::max),
        Coefficients::Numeric(c) => c.iter().map(|z| z.norm()).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ratio;

    fn ints(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| ratio(x, 1)).collect()
    }

    #[test]
    fn constant_and_cosine() {
        let one = fourier_coeffs_numeric(|_| Complex64::new(1.0, 0.0), 3, 64).unwrap();
        assert!((one.numeric(0).unwrap() - 1.0).norm() < 1e-15);
        assert!((1..=3).all(|k| one.numeric(k).unwrap().norm() < 1e-15 && one.numeric(-k).unwrap().norm() < 1e-15));
        let cos = fourier_coeffs_numeric(|t| Complex64::new(2.0 * t.cos(), 0.0), 4, 64).unwrap();
        for k in -4i64..=4 {
            let expect = if k.abs() == 1 { 1.0 } else { 0.0 };
            assert!((cos.numeric(k).unwrap() - expect).norm() < 1e-14, "k={k}");
        }
        assert!(cos.is_real_on_circle(1e-12));
        assert!(cos.numeric(5).is_none());
    }

    #[test]
    fn exponential_cosine_zeroth_coefficient() {
        // sum 1/(m!)^2 = I_0(2)
        let mut term = 1.0;
        let mut oracle = 1.0;
        for m in 1..40 {
            term /= (m * m) as f64;
            oracle += term;
        }
        let s = fourier_coeffs_numeric(|t| Complex64::new((2.0 * t.cos()).exp(), 0.0), 4, FOURIER_GRID).unwrap();
        assert!((s.numeric(0).unwrap().re - oracle).abs() < 1e-14);
        assert!((oracle - 2.279_585_302_336_067).abs() < 1e-14);
        assert!(s.aliasing_error() < 1e-14);
    }

    #[test]
    fn grid_validation() {
        let f = |_| Complex64::new(1.0, 0.0);
        assert!(fourier_coeffs_numeric(f, 4, 12).is_err());
        assert!(fourier_coeffs_numeric(f, 4, 8).is_err());
        assert!(fourier_coeffs_numeric(|t: f64| Complex64::new(1.0 / t, 0.0), 1, 16).is_err());
    }

    #[test]
    fn exact_expansions() {
        let empty = fourier_coeffs_exact(&[], &[]).unwrap();
        assert_eq!(empty.exact(0), Some(ratio(1, 1)));
        assert_eq!(empty.exact(3), Some(ratio(0, 1)));
        let s = fourier_coeffs_exact(&ints(&[1]), &ints(&[1])).unwrap();
        assert_eq!((s.exact(-1), s.exact(0), s.exact(1)), (Some(ratio(1, 1)), Some(ratio(2, 1)), Some(ratio(1, 1))));
        let s = fourier_coeffs_exact(&ints(&[1, 1]), &[]).unwrap();
        let got: Vec<_> = (-2..=2).map(|k| s.exact(k).unwrap()).collect();
        assert_eq!(got, ints(&[1, 2, 1, 0, 0]));
        assert!(!s.is_real_on_circle(0.0));
        assert!(fourier_coeffs_exact(&ints(&[1; 9]), &[]).is_err());
    }

    #[test]
    fn exact_matches_numeric() {
        let (a, b) = ([ratio(1, 2), ratio(1, 3)], [ratio(1, 5)]);
        let exact = fourier_coeffs_exact(&a, &b).unwrap();
        let f = |t: f64| {
            let z = Complex64::from_polar(1.0, t);
            (1.0 + 0.5 / z) * (1.0 + 1.0 / (3.0 * z)) * (1.0 + z / 5.0)
        };
        let num = fourier_coeffs_numeric(f, 3, 64).unwrap();
        for k in -3..=3 {
            assert!((num.numeric(k).unwrap() - exact.numeric(k).unwrap()).norm() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn macmahon_symbol_coefficients() {
        let s = macmahon_symbol(1, 1);
        let got: Vec<_> = (-1..=1).map(|k| s.exact(k).unwrap()).collect();
        assert_eq!(got, ints(&[-1, 2, -1]));
        assert!(s.is_real_on_circle(0.0));
        let s = macmahon_symbol(2, 0);
        let got: Vec<_> = (-2..=2).map(|k| s.exact(k).unwrap()).collect();
        assert_eq!(got, ints(&[1, -2, 1, 0, 0]));
    }
}
