use nalgebra::DMatrix;

use super::fredholm::{refined, NystromEstimate};
use crate::error::{domain, Error, Result};
use crate::special::{airy, AiryValue};

/// Largest accepted refinement discrepancy for [`tw2_fredholm`].
pub const TW_FREDHOLM_TOLERANCE: f64 = 1e-8;

const COARSE: (usize, f64) = (60, 14.0);
const FINE: (usize, f64) = (80, 18.0);

fn kernel_from_values(x: f64, a: AiryValue, y: f64, b: AiryValue) -> f64 {
    if x == y {
        a.ai_prime * a.ai_prime - x * a.ai * a.ai
    } else {
        (a.ai * b.ai_prime - a.ai_prime * b.ai) / (x - y)
    }
}

/// `A(x, y) = (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y)`, with
/// `A(x, x) = Ai'(x)^2 - x Ai(x)^2` on the diagonal.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    if !(x.abs() <= 50.0 && y.abs() <= 50.0) {
        return domain(format!("airy_kernel needs |x|, |y| <= 50, got ({x}, {y})"));
    }
    Ok(kernel_from_values(x, airy(x)?, y, airy(y)?))
}

pub(crate) fn airy_kernel_matrix(nodes: &[f64]) -> DMatrix<f64> {
    let vals: Vec<AiryValue> = nodes.iter().map(|&x| airy(x).expect("nodes lie in the Airy domain")).collect();
    let m = nodes.len();
    DMatrix::from_fn(m, m, |i, j| kernel_from_values(nodes[i], vals[i], nodes[j], vals[j]))
}

/// `F2(xi) = det(I - A)` on `L^2(xi, inf)`, truncated to `(xi, xi + L)`.
///
/// A 60-point rule on length 14 is refined to 80 points on length 18; the
/// refined value is returned and the difference reported as `est_error`.
pub fn tw2_fredholm(xi: f64) -> Result<NystromEstimate> {
    if !(-10.0..=6.0).contains(&xi) {
        return domain(format!("tw2_fredholm needs xi in [-10, 6], got {xi}"));
    }
    let est = refined(airy_kernel_matrix, xi, COARSE, FINE)?;
    if est.est_error > TW_FREDHOLM_TOLERANCE {
        return Err(Error::Accuracy {
            message: format!("Nystrom refinement at xi = {xi} disagrees"),
            achieved: est.est_error,
        });
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gauss_legendre;

    #[test]
    fn symmetric_and_origin_value() {
        for (x, y) in [(0.3, -1.2), (2.0, 5.0), (-7.5, 1.0)] {
            assert_eq!(airy_kernel(x, y).unwrap(), airy_kernel(y, x).unwrap());
        }
        let a00 = airy_kernel(0.0, 0.0).unwrap();
        assert!((a00 - 0.066_987_483_779_664_0).abs() < 1e-15);
        // diagonal limit against the off-diagonal quotient
        let h = 1e-4;
        assert!((airy_kernel(h, 0.0).unwrap() - a00).abs() < 1e-5);
        assert!(airy_kernel(51.0, 0.0).is_err());
    }

    #[test]
    fn integral_representation() {
        // A(x,y) = int_0^inf Ai(x+t) Ai(y+t) dt
        let mut total = 0.0;
        for k in 0..6 {
            let rule = gauss_legendre(40, 5.0 * k as f64, 5.0 * (k + 1) as f64).unwrap();
            total += rule.integrate(|t| airy(1.0 + t).unwrap().ai * airy(2.0 + t).unwrap().ai);
        }
        assert!((total - airy_kernel(1.0, 2.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn tails() {
        let right = tw2_fredholm(4.0).unwrap();
        assert!(right.value < 1.0 && 1.0 - right.value < 1e-6);
        assert!(tw2_fredholm(-8.0).unwrap().value < 1e-3);
        assert!(tw2_fredholm(6.5).is_err());
        assert!(tw2_fredholm(-10.5).is_err());
    }

    #[test]
    fn reference_values() {
        // 100- and 120-point Nystrom runs with 30-digit Airy values agree to 1e-14 here
        let f0 = tw2_fredholm(0.0).unwrap();
        assert!((f0.value - 0.969_372_828_355_26).abs() < 1e-12, "{}", f0.value);
        let fm2 = tw2_fredholm(-2.0).unwrap();
        assert!((fm2.value - 0.413_224_142_505_13).abs() < 1e-12, "{}", fm2.value);
        assert!(f0.est_error < 1e-12);
    }
}
