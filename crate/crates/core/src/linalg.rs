//! Dense determinants: pivoted LU for floating point, Bareiss for exact rationals.

use nalgebra::{ComplexField, DMatrix};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Pivot-ratio above which a floating determinant is flagged as ill-conditioned.
pub const CONDITION_FLAG: f64 = 1e12;

/// Determinant of a floating matrix together with a cheap condition estimate
/// (ratio of largest to smallest LU pivot magnitude).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivotedDeterminant<T> {
    pub value: T,
    pub condition_estimate: f64,
}

impl<T> PivotedDeterminant<T> {
    pub fn is_flagged(&self) -> bool {
        !(self.condition_estimate <= CONDITION_FLAG)
    }
}

/// Partial-pivoting LU determinant; works for real and complex entries.
pub fn lu_determinant<T>(m: DMatrix<T>) -> PivotedDeterminant<T>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return PivotedDeterminant { value: T::one(), condition_estimate: 1.0 };
    }
    let lu = m.lu();
    let value = lu.determinant();
    let u = lu.u();
    let (mut big, mut small) = (0.0f64, f64::INFINITY);
    for i in 0..n {
        let p = u[(i, i)].modulus();
        big = big.max(p);
        small = small.min(p);
    }
    let condition_estimate = if small == 0.0 { f64::INFINITY } else { big / small };
    PivotedDeterminant { value, condition_estimate }
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
/// The empty matrix has determinant one.
pub fn bareiss_determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut sign = BigRational::one();
    let mut prev = BigRational::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigRational::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Leibniz expansion; only for tiny matrices.
    fn leibniz(a: &[Vec<BigRational>]) -> BigRational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut v = p.clone();
                    v.insert(pos, n - 1);
                    out.push(v);
                }
            }
            out
        }
        let n = a.len();
        let mut total = BigRational::zero();
        for p in perms(n) {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            let mut term = BigRational::one();
            for (i, &pi) in p.iter().enumerate() {
                term *= &a[i][pi];
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        total
    }

    #[test]
    fn bareiss_matches_leibniz_with_zero_pivots() {
        let a = vec![
            vec![q(0, 1), q(1, 2), q(2, 1), q(1, 3)],
            vec![q(3, 1), q(0, 1), q(-1, 5), q(1, 1)],
            vec![q(1, 7), q(2, 1), q(0, 1), q(4, 3)],
            vec![q(5, 2), q(1, 1), q(1, 1), q(0, 1)],
        ];
        assert_eq!(bareiss_determinant(&a), leibniz(&a));
    }

    #[test]
    fn bareiss_singular_and_empty() {
        assert_eq!(bareiss_determinant(&[]), BigRational::one());
        let a = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(bareiss_determinant(&a).is_zero());
    }

    #[test]
    fn lu_determinant_of_small_matrix() {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0]);
        let d = lu_determinant(m);
        assert!((d.value - 4.0).abs() < 1e-14);
        assert!(!d.is_flagged());
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(lu_determinant(singular).is_flagged());
    }
}
