use nalgebra::DMatrix;

use crate::error::{domain, precondition, Error, Result};
use crate::linalg::lu_determinant;
use crate::special::bessel_j_sequence;

const MAX_ALPHA: f64 = 1e4;
const MAX_SITE: i64 = 10_000;
/// `ln` of the bound below which `J_t(z)` is treated as zero.
const LOG_NEGLIGIBLE: f64 = -40.0;
const DET_CHANGE: f64 = 1e-12;
const MAX_TRUNCATION: usize = 8192;

/// Smallest order `t >= z + 1` with `(z/2)^t / t! < e^-40`; `|J_u(z)|` is
/// below that bound for every `u >= t`.
fn negligible_order(z: f64) -> usize {
    let mut t = z.ceil() as usize + 1;
    let half_ln = (z / 2.0).ln();
    let mut ln_fact: f64 = (1..=t).map(|k| (k as f64).ln()).sum();
    while t as f64 * half_ln - ln_fact > LOG_NEGLIGIBLE {
        t += 1;
        ln_fact += (t as f64).ln();
    }
    t
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=MAX_ALPHA).contains(&alpha) {
        return domain(format!("alpha must lie in [0, {MAX_ALPHA}], got {alpha}"));
    }
    Ok(())
}

/// `J_t` with `J_{-t} = (-1)^t J_t`, zero past the computed range.
fn j_signed(seq: &[f64], t: i64) -> f64 {
    let v = seq.get(t.unsigned_abs() as usize).copied().unwrap_or(0.0);
    if t < 0 && t % 2 != 0 {
        -v
    } else {
        v
    }
}

fn sequence_for(alpha: f64, reach: usize) -> Result<(Vec<f64>, usize)> {
    let z = 2.0 * alpha.sqrt();
    let top = negligible_order(z);
    Ok((bessel_j_sequence(top.max(reach), z)?, top))
}

/// `B(x, y) = sum_{s >= 1} J_{x+s}(2 sqrt(alpha)) J_{y+s}(2 sqrt(alpha))`.
pub fn discrete_bessel_kernel(alpha: f64, x: i64, y: i64) -> Result<f64> {
    check_alpha(alpha)?;
    if x.abs() > MAX_SITE || y.abs() > MAX_SITE {
        return domain(format!("discrete Bessel sites must satisfy |x|, |y| <= {MAX_SITE}"));
    }
    let (seq, top) = sequence_for(alpha, x.unsigned_abs().max(y.unsigned_abs()) as usize + 1)?;
    let top = top as i64;
    let lo = x.min(y);
    let mut sum = 0.0;
    for s in 1..=(top - lo).max(0) {
        let (a, b) = (x + s, y + s);
        if a.abs() <= top && b.abs() <= top {
            sum += j_signed(&seq, a) * j_signed(&seq, b);
        }
    }
    Ok(sum)
}

/// Closed form `sqrt(alpha) (J_x J_{y+1} - J_{x+1} J_y) / (x - y)`, off the diagonal only.
pub fn discrete_bessel_kernel_quotient(alpha: f64, x: i64, y: i64) -> Result<f64> {
    check_alpha(alpha)?;
    if x == y {
        return precondition("the quotient form is undefined on the diagonal");
    }
    let reach = x.unsigned_abs().max(y.unsigned_abs()) as usize + 1;
    let (seq, _) = sequence_for(alpha, reach)?;
    let j = |t: i64| j_signed(&seq, t);
    Ok(alpha.sqrt() * (j(x) * j(y + 1) - j(x + 1) * j(y)) / (x - y) as f64)
}

/// `P[L(alpha) <= n]` with the truncation used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LAlphaValue {
    pub value: f64,
    /// Change of the determinant under the last doubling of the truncation.
    pub est_error: f64,
    pub truncation: usize,
}

/// `det(I - B)` on `{n, ..., n + k - 1}`.
fn block_determinant(alpha: f64, n: usize, k: usize) -> Result<f64> {
    let (seq, top) = sequence_for(alpha, 0)?;
    let j = |t: usize| seq.get(t).copied().unwrap_or(0.0);
    let upper = top.max(n + k);
    let mut mat = DMatrix::<f64>::identity(k, k);
    // B(n+i, n+i+d) = sum_{u > n+i} J_u J_{u+d}, accumulated downward in u
    for d in 0..k {
        let mut acc = 0.0;
        for u in (n + 1..=upper).rev() {
            acc += j(u) * j(u + d);
            let i = u - 1 - n;
            if i + d < k {
                mat[(i, i + d)] -= acc;
                if d > 0 {
                    mat[(i + d, i)] -= acc;
                }
            }
        }
    }
    Ok(lu_determinant(mat).value)
}

/// `P[L(alpha) <= n] = det(I - B)` on `l^2({n, n+1, ...})`, truncated to
/// `k` sites; `k` starts at `ceil(4 sqrt(alpha)) + 40` and doubles until the
/// determinant moves by less than `1e-12`.
pub fn l_alpha_cdf(alpha: f64, n: usize) -> Result<LAlphaValue> {
    check_alpha(alpha)?;
    if alpha == 0.0 {
        return Ok(LAlphaValue { value: 1.0, est_error: 0.0, truncation: 0 });
    }
    let mut k = (4.0 * alpha.sqrt()).ceil() as usize + 40;
    let mut prev = block_determinant(alpha, n, k)?;
    loop {
        let next = block_determinant(alpha, n, 2 * k)?;
        let change = (next - prev).abs();
        if change < DET_CHANGE {
            return Ok(LAlphaValue { value: next, est_error: change, truncation: 2 * k });
        }
        k *= 2;
        if k > MAX_TRUNCATION {
            return Err(Error::Accuracy {
                message: format!("l_alpha_cdf({alpha}, {n}) did not settle by truncation {k}"),
                achieved: change,
            });
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{lis_law, to_f64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `sum_N e^{-alpha} alpha^N / N! P[l_N <= n]` over `N <= 40`.
    fn poisson_sum(alpha: f64, n: usize) -> f64 {
        let mut weight = (-alpha).exp();
        let mut total = 0.0;
        for big_n in 0..=40usize {
            if big_n > 0 {
                weight *= alpha / big_n as f64;
            }
            let p = if big_n <= n { 1.0 } else { to_f64(&lis_law(big_n).unwrap()[n]) };
            total += weight * p;
        }
        total
    }

    #[test]
    fn series_is_symmetric() {
        for (x, y) in [(2, 5), (-3, 4), (0, 0), (-7, -2)] {
            let a = discrete_bessel_kernel(4.0, x, y).unwrap();
            let b = discrete_bessel_kernel(4.0, y, x).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn series_matches_quotient() {
        let a = discrete_bessel_kernel(4.0, 2, 5).unwrap();
        let b = discrete_bessel_kernel_quotient(4.0, 2, 5).unwrap();
        assert!((a - b).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..50 {
            let alpha = rng.random_range(0.1..50.0);
            let x = rng.random_range(-20i64..30);
            let y = rng.random_range(-20i64..30);
            if x == y {
                continue;
            }
            let s = discrete_bessel_kernel(alpha, x, y).unwrap();
            let q = discrete_bessel_kernel_quotient(alpha, x, y).unwrap();
            assert!((s - q).abs() < 1e-10, "alpha {alpha} ({x},{y}): {s} vs {q}");
        }
        assert!(discrete_bessel_kernel_quotient(1.0, 3, 3).is_err());
    }

    #[test]
    fn vanishing_intensity() {
        assert_eq!(discrete_bessel_kernel(0.0, 0, 3).unwrap(), 0.0);
        assert_eq!(discrete_bessel_kernel(0.0, -2, -2).unwrap(), 1.0);
        assert_eq!(l_alpha_cdf(0.0, 0).unwrap().value, 1.0);
        assert!(l_alpha_cdf(-1.0, 0).is_err());
        assert!(discrete_bessel_kernel(1e5, 0, 0).is_err());
    }

    #[test]
    fn anchor_value() {
        let v = l_alpha_cdf(1.0, 1).unwrap().value;
        assert!((v - 0.838_612_567_126_026).abs() < 1e-12, "{v}");
        assert!(((-1.0f64).exp() - l_alpha_cdf(1.0, 0).unwrap().value).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_poissonized_lis_law() {
        for alpha in [0.5, 1.0, 2.0] {
            for n in 1..=6 {
                let v = l_alpha_cdf(alpha, n).unwrap().value;
                assert!((v - poisson_sum(alpha, n)).abs() < 1e-10, "alpha {alpha} n {n}");
            }
        }
    }

    #[test]
    fn cdf_shape() {
        let mut prev = 0.0;
        for n in 0..=10 {
            let v = l_alpha_cdf(1.0, n).unwrap().value;
            assert!(v >= prev && v <= 1.0 + 1e-15);
            prev = v;
        }
        assert!(prev > 1.0 - 1e-10);
        let far = (4.0 * 100f64.sqrt()).ceil() as usize + 41;
        assert!((l_alpha_cdf(100.0, far).unwrap().value - 1.0).abs() < 1e-10);
    }
}
