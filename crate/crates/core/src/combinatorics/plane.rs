use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ExactScalar;
use crate::error::resource;
use crate::Result;

/// Bounds for [`plane_partition_count`].
pub const PLANE_MAX_CELLS: usize = 9;
pub const PLANE_MAX_HEIGHT: usize = 4;

/// MacMahon's box product `prod_{i<=a, j<=b, k<=c} (i+j+k-1)/(i+j+k-2)`.
///
/// The value is always an integer; the denominator is asserted to be one.
pub fn macmahon_product(a: usize, b: usize, c: usize) -> ExactScalar {
    let mut r = BigRational::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                let s = (i + j + k) as i64;
                r *= BigRational::new(BigInt::from(s - 1), BigInt::from(s - 2));
            }
        }
    }
    assert!(r.is_integer(), "MacMahon product must be an integer, got {r}");
    r
}

/// Number of `a x b` arrays with entries in `0..=c`, weakly decreasing along
/// rows and columns (plane partitions in an `a x b x c` box), by enumeration.
pub fn plane_partition_count(a: usize, b: usize, c: usize) -> Result<u64> {
    if a * b > PLANE_MAX_CELLS || c > PLANE_MAX_HEIGHT {
        return resource(format!(
            "plane partition enumeration limited to a*b <= {PLANE_MAX_CELLS} and c <= {PLANE_MAX_HEIGHT}"
        ));
    }
    if a == 0 || b == 0 {
        return Ok(1);
    }
    let mut grid = vec![vec![0usize; b]; a];
    Ok(count_fill(0, a, b, c, &mut grid))
}

fn count_fill(idx: usize, a: usize, b: usize, c: usize, grid: &mut [Vec<usize>]) -> u64 {
    if idx == a * b {
        return 1;
    }
    let (r, col) = (idx / b, idx % b);
    let mut cap = c;
    if r > 0 {
        cap = cap.min(grid[r - 1][col]);
    }
    if col > 0 {
        cap = cap.min(grid[r][col - 1]);
    }
    let mut total = 0;
    for v in 0..=cap {
        grid[r][col] = v;
        total += count_fill(idx + 1, a, b, c, grid);
    }
    total
}
