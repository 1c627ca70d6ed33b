use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{conjugate, partitions_in_box, Partition};
use super::ExactScalar;
use crate::error::{domain, precondition, resource, Result};
use crate::linalg::bareiss_determinant;

/// Enumeration bounds for [`schur_tableaux`].
pub const TABLEAU_MAX_CELLS: usize = 12;
pub const TABLEAU_MAX_VARS: usize = 5;
/// Bounds for [`gessel_rhs`].
pub const GESSEL_MAX_ORDER: usize = 6;
pub const GESSEL_MAX_VARS: usize = 3;

/// Coefficients `e_0, ..., e_len` of `prod_j (1 + a_j z)`.
pub fn elementary_all(a: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut e = vec![BigRational::one()];
    for aj in a {
        e.push(BigRational::zero());
        for m in (1..e.len()).rev() {
            let add = &e[m - 1] * aj;
            e[m] += add;
        }
    }
    e
}

/// `e_m(a)`, the coefficient of `z^m` in `prod_j (1 + a_j z)`; zero outside `0..=len(a)`.
pub fn elementary_symmetric(a: &[ExactScalar], m: i64) -> ExactScalar {
    if m < 0 || m as usize > a.len() {
        return BigRational::zero();
    }
    elementary_all(a).swap_remove(m as usize)
}

/// Schur polynomial by the dual Jacobi-Trudi determinant
/// `s_lambda(a) = det(e_{lambda'_i - i + j}(a))` of size `n >= lambda_1`.
pub fn schur_jacobi_trudi(lambda: &Partition, a: &[ExactScalar], n: usize) -> Result<ExactScalar> {
    if lambda.first() > n {
        return precondition(format!("Jacobi-Trudi size n = {n} is smaller than lambda_1 = {}", lambda.first()));
    }
    let e = elementary_all(a);
    let e_at = |k: i64| -> ExactScalar {
        if k < 0 || k as usize >= e.len() {
            BigRational::zero()
        } else {
            e[k as usize].clone()
        }
    };
    let conj = conjugate(lambda);
    let rows: Vec<Vec<ExactScalar>> = (1..=n)
        .map(|i| {
            let li = conj.part(i - 1) as i64;
            (1..=n).map(|j| e_at(li - i as i64 + j as i64)).collect()
        })
        .collect();
    Ok(bareiss_determinant(&rows))
}

/// `s_lambda(a)` with the minimal Jacobi-Trudi size `n = lambda_1`.
pub fn schur(lambda: &Partition, a: &[ExactScalar]) -> ExactScalar {
    schur_jacobi_trudi(lambda, a, lambda.first()).expect("n = lambda_1 is always valid")
}

/// Schur polynomial as the generating sum over semistandard Young tableaux
/// of shape `lambda` with entries in `1..=len(a)`.
pub fn schur_tableaux(lambda: &Partition, a: &[ExactScalar]) -> Result<ExactScalar> {
    if lambda.size() > TABLEAU_MAX_CELLS || a.len() > TABLEAU_MAX_VARS {
        return resource(format!(
            "tableau enumeration limited to |lambda| <= {TABLEAU_MAX_CELLS} and <= {TABLEAU_MAX_VARS} variables"
        ));
    }
    let shape = lambda.parts().to_vec();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut total = BigRational::zero();
    fill(0, &cells, &mut grid, a, BigRational::one(), &mut total);
    Ok(total)
}

fn fill(
    idx: usize,
    cells: &[(usize, usize)],
    grid: &mut [Vec<usize>],
    a: &[ExactScalar],
    weight: ExactScalar,
    total: &mut ExactScalar,
) {
    if idx == cells.len() {
        *total += weight;
        return;
    }
    let (r, c) = cells[idx];
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=a.len() {
        grid[r][c] = v;
        let w = &weight * &a[v - 1];
        fill(idx + 1, cells, grid, a, w, total);
    }
    grid[r][c] = 0;
}

fn in_unit_interval(v: &ExactScalar) -> bool {
    *v >= BigRational::zero() && *v < BigRational::one()
}

/// Schur measure weight `prod_{i,j}(1 - a_i b_j) s_lambda(a) s_lambda(b)`.
pub fn schur_measure_weight(lambda: &Partition, a: &[ExactScalar], b: &[ExactScalar]) -> Result<ExactScalar> {
    if !a.iter().chain(b).all(in_unit_interval) {
        return domain("Schur measure parameters must lie in [0, 1)");
    }
    let mut norm = BigRational::one();
    for ai in a {
        for bj in b {
            norm *= BigRational::one() - ai * bj;
        }
    }
    Ok(norm * schur(lambda, a) * schur(lambda, b))
}

/// `sum s_lambda(a) s_lambda(b)` over partitions with `lambda_1 <= n`; terms with
/// more parts than variables vanish and are skipped.
pub fn gessel_rhs(n: usize, a: &[ExactScalar], b: &[ExactScalar]) -> Result<ExactScalar> {
    if n > GESSEL_MAX_ORDER || a.len() > GESSEL_MAX_VARS || b.len() > GESSEL_MAX_VARS {
        return resource(format!(
            "gessel_rhs limited to n <= {GESSEL_MAX_ORDER} and <= {GESSEL_MAX_VARS} variables"
        ));
    }
    let rows = a.len().min(b.len());
    Ok(partitions_in_box(rows, n)
        .iter()
        .map(|lambda| schur(lambda, a) * schur(lambda, b))
        .sum())
}
