use nalgebra::DMatrix;

use super::kernel::Ensemble;
use super::weight::DiscreteWeight;
use crate::error::{domain, precondition, resource, Result};
use crate::linalg::lu_determinant;

/// Largest particle count for [`brute_correlation`].
pub const BRUTE_MAX_N: usize = 3;
/// Largest particle count for [`fredholm_expectation_check`].
pub const FREDHOLM_CHECK_MAX_N: usize = 4;
/// Largest support either brute-force routine accepts.
pub const BRUTE_MAX_SUPPORT: usize = 30;

/// Unnormalized ensemble weight `prod_{i<j} (x_i - x_j)^2 prod_j w(x_j)`.
fn configuration_weight(w: &[f64], xs: &[usize]) -> f64 {
    let mut v: f64 = xs.iter().map(|&x| w[x]).product();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            v *= (xs[i] as f64 - xs[j] as f64).powi(2);
        }
    }
    v
}

/// Calls `visit` on every strictly increasing `n`-tuple from `0..size`.
fn for_each_subset(size: usize, n: usize, mut visit: impl FnMut(&[usize])) {
    if n > size {
        return;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..n).rev().find(|&i| idx[i] < size - n + i) else { return };
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_size(weight: &DiscreteWeight, n: usize, max_n: usize) -> Result<()> {
    if n == 0 {
        return precondition("ensemble needs at least one particle");
    }
    if n > max_n || weight.len() > BRUTE_MAX_SUPPORT {
        return resource(format!(
            "direct summation supports N <= {max_n} and |support| <= {BRUTE_MAX_SUPPORT}, got N = {n}, |support| = {}",
            weight.len()
        ));
    }
    Ok(())
}

/// `rho_m` by summing the ensemble density over the free coordinates:
/// `N!/(N-m)! sum u_N(points, free)` over ordered free tuples.
pub fn brute_correlation(weight: &DiscreteWeight, n: usize, points: &[usize]) -> Result<f64> {
    check_size(weight, n, BRUTE_MAX_N)?;
    let m = points.len();
    if m > n {
        return precondition(format!("{m} points exceed N = {n}"));
    }
    if let Some(&p) = points.iter().find(|&&p| p >= weight.len()) {
        return domain(format!("point {p} is off the support"));
    }
    let w = weight.values();
    let mut z = 0.0;
    for_each_subset(w.len(), n, |xs| z += configuration_weight(w, xs));
    // z sums over sets; ordered tuples carry an extra N!
    let n_fact: f64 = (1..=n).map(|k| k as f64).product();
    let z_ordered = z * n_fact;
    let free = n - m;
    let mut total = 0.0;
    let mut tuple = points.to_vec();
    tuple.resize(n, 0);
    let combos = w.len().pow(free as u32);
    for code in 0..combos {
        let mut c = code;
        for slot in tuple[m..].iter_mut() {
            *slot = c % w.len();
            c /= w.len();
        }
        total += configuration_weight(w, &tuple);
    }
    let falling: f64 = (free + 1..=n).map(|k| k as f64).product();
    Ok(falling * total / z_ordered)
}

/// `E[prod_j (1 + f(x_j))]` by direct summation against `det(I + f K_N)` over
/// the support.
pub fn fredholm_expectation_check(weight: &DiscreteWeight, n: usize, f: impl Fn(usize) -> f64) -> Result<(f64, f64)> {
    check_size(weight, n, FREDHOLM_CHECK_MAX_N)?;
    let w = weight.values();
    let fv: Vec<f64> = (0..w.len()).map(&f).collect();
    let (mut z, mut acc) = (0.0, 0.0);
    for_each_subset(w.len(), n, |xs| {
        let u = configuration_weight(w, xs);
        z += u;
        acc += u * xs.iter().map(|&x| 1.0 + fv[x]).product::<f64>();
    });
    let lhs = acc / z;
    let k = Ensemble::new(weight.clone(), n)?.kernel_matrix().entries;
    let size = w.len();
    let mat = DMatrix::from_fn(size, size, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta + fv[i] * k[(i, j)]
    });
    Ok((lhs, lu_determinant(mat).value))
}
