//! Exact combinatorics over the rationals: partitions, Schur polynomials,
//! RSK, longest increasing subsequences and boxed plane partitions.
//!
//! No floating point is used anywhere in this module.

mod lis;
mod partition;
mod plane;
mod rsk;
mod symmetric;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use lis::{
    exhaustive_lis_law, lis_law, lis_length, longest_increasing, longest_weakly_increasing, Permutation,
    EXHAUSTIVE_LIS_MAX, SHAPE_LIS_MAX,
};
pub use partition::{conjugate, partitions_in_box, partitions_of, Partition};
pub use plane::{macmahon_product, plane_partition_count, PLANE_MAX_CELLS, PLANE_MAX_HEIGHT};
pub use rsk::{rsk, Tableau, RSK_MAX_LETTERS};
pub use symmetric::{
    elementary_all, elementary_symmetric, gessel_rhs, schur, schur_jacobi_trudi, schur_measure_weight,
    schur_tableaux, GESSEL_MAX_ORDER, GESSEL_MAX_VARS, TABLEAU_MAX_CELLS, TABLEAU_MAX_VARS,
};

/// Exact rational scalar; always kept in lowest terms with a positive denominator.
pub type ExactScalar = BigRational;

/// Shorthand for the rational `num / den`.
pub fn ratio(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Decimal rendering of an exact scalar with `digits` fractional digits
/// (integers are printed exactly).
pub fn to_decimal_string(v: &ExactScalar, digits: usize) -> String {
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    if v.is_integer() {
        return v.numer().to_string();
    }
    let neg = v.is_negative();
    let num = v.numer().abs();
    let den = v.denom().clone();
    let (int_part, mut rem) = num.div_rem(&den);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    s.push('.');
    let ten = BigInt::from(10);
    for _ in 0..digits {
        rem *= &ten;
        let (d, r) = rem.div_rem(&den);
        s.push_str(&d.to_string());
        rem = r;
        if rem.is_zero() {
            break;
        }
    }
    s
}

/// Nearest `f64` to an exact scalar.
pub fn to_f64(v: &ExactScalar) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}
