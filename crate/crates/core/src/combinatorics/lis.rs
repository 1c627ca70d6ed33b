use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{partitions_of, Partition};
use super::ExactScalar;
use crate::error::{precondition, resource, Result};

/// Largest `N` handled by [`exhaustive_lis_law`].
pub const EXHAUSTIVE_LIS_MAX: usize = 10;
/// Largest `N` handled by [`lis_law`].
pub const SHAPE_LIS_MAX: usize = 60;

/// A permutation of `{1, ..., N}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return precondition(format!("not a permutation of 1..{n}: {images:?}"));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0/1 matrix with a one at `(i, sigma(i))`, 0-based.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        let mut m = vec![vec![0u64; n]; n];
        for (i, &v) in self.images.iter().enumerate() {
            m[i][v - 1] = 1;
        }
        m
    }
}

/// Patience sorting: length of the longest strictly increasing subsequence.
pub fn longest_increasing<T: PartialOrd + Copy>(seq: &[T]) -> usize {
    let mut tops: Vec<T> = Vec::new();
    for &x in seq {
        let pile = tops.partition_point(|t| *t < x);
        if pile == tops.len() {
            tops.push(x);
        } else {
            tops[pile] = x;
        }
    }
    tops.len()
}

/// Length of the longest weakly increasing subsequence.
pub fn longest_weakly_increasing<T: PartialOrd + Copy>(seq: &[T]) -> usize {
    let mut tops: Vec<T> = Vec::new();
    for &x in seq {
        let pile = tops.partition_point(|t| *t <= x);
        if pile == tops.len() {
            tops.push(x);
        } else {
            tops[pile] = x;
        }
    }
    tops.len()
}

/// `l_N(sigma)` in `O(N log N)`.
pub fn lis_length(sigma: &Permutation) -> usize {
    longest_increasing(&sigma.images)
}

fn cdf_from_counts(counts: &[BigInt], total: &BigInt) -> Vec<ExactScalar> {
    let mut acc = BigInt::zero();
    counts
        .iter()
        .map(|c| {
            acc += c;
            BigRational::new(acc.clone(), total.clone())
        })
        .collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `P[l_N <= n]` for `n = 0..=N` by visiting all `N!` permutations.
pub fn exhaustive_lis_law(n_points: usize) -> Result<Vec<ExactScalar>> {
    if n_points == 0 {
        return precondition("exhaustive_lis_law needs N >= 1");
    }
    if n_points > EXHAUSTIVE_LIS_MAX {
        return resource(format!(
            "exhaustive_lis_law enumerates N! permutations; N must be <= {EXHAUSTIVE_LIS_MAX}, got {n_points}"
        ));
    }
    let mut counts = vec![0u64; n_points + 1];
    // Heap's algorithm
    let mut a: Vec<usize> = (1..=n_points).collect();
    let mut c = vec![0usize; n_points];
    counts[longest_increasing(&a)] += 1;
    let mut i = 0;
    while i < n_points {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            counts[longest_increasing(&a)] += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let counts: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Ok(cdf_from_counts(&counts, &factorial(n_points)))
}

/// Number of standard Young tableaux of every shape with at most `n` cells,
/// built by adding one corner at a time (paths in Young's lattice).
fn standard_tableaux_counts(n: usize) -> HashMap<Partition, BigInt> {
    let mut counts: HashMap<Partition, BigInt> = HashMap::new();
    counts.insert(Partition::empty(), BigInt::one());
    for size in 1..=n {
        for lambda in partitions_of(size) {
            let parts = lambda.parts();
            let mut total = BigInt::zero();
            for r in 0..parts.len() {
                // removable corner in row r
                if r + 1 == parts.len() || parts[r] > parts[r + 1] {
                    let mut smaller = parts.to_vec();
                    smaller[r] -= 1;
                    let smaller = Partition::new(smaller).expect("corner removal keeps a partition");
                    total += &counts[&smaller];
                }
            }
            counts.insert(lambda, total);
        }
    }
    counts
}

/// `P[l_N <= n]` for `n = 0..=N`, via the RSK shape count
/// `#{sigma : l_N(sigma) <= n} = sum over lambda with lambda_1 <= n of f_lambda^2`,
/// with `f_lambda` counted on Young's lattice. Exact for `N` up to 60.
pub fn lis_law(n_points: usize) -> Result<Vec<ExactScalar>> {
    if n_points > SHAPE_LIS_MAX {
        return resource(format!("lis_law supports N <= {SHAPE_LIS_MAX}, got {n_points}"));
    }
    let f = standard_tableaux_counts(n_points);
    let mut counts = vec![BigInt::zero(); n_points + 1];
    for lambda in partitions_of(n_points) {
        let fl = &f[&lambda];
        counts[lambda.first()] += fl * fl;
    }
    Ok(cdf_from_counts(&counts, &factorial(n_points)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Exhaustive subsequence search, `O(2^N)`.
    fn lis_by_subsets(v: &[usize]) -> usize {
        let n = v.len();
        (0u32..1 << n)
            .filter(|mask| {
                let picked: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).collect();
                picked.windows(2).all(|w| w[0] < w[1])
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn lis_examples() {
        let p = |v: &[usize]| Permutation::new(v.to_vec()).unwrap();
        assert_eq!(lis_length(&p(&[1, 2, 3])), 3);
        assert_eq!(lis_length(&p(&[3, 1, 2])), 2);
        let s = [2, 7, 4, 1, 5, 6, 3];
        assert_eq!(lis_by_subsets(&s), 4);
        assert_eq!(lis_length(&p(&s)), 4);
    }

    #[test]
    fn patience_agrees_with_subset_search() {
        // every permutation of 6, in lexicographic order
        let mut v: Vec<usize> = (1..=6).collect();
        let mut checked = 0;
        loop {
            assert_eq!(longest_increasing(&v), lis_by_subsets(&v));
            checked += 1;
            // next lexicographic permutation
            let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else { break };
            let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
            v.swap(i, j);
            v[i + 1..].reverse();
        }
        assert_eq!(checked, 720);
    }

    #[test]
    fn weakly_increasing_counts_repeats() {
        assert_eq!(longest_weakly_increasing(&[2, 2, 1, 2, 3, 3]), 5);
        assert_eq!(longest_increasing(&[2, 2, 1, 2, 3, 3]), 3);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
    }

    #[test]
    fn exhaustive_law_examples() {
        let law1 = exhaustive_lis_law(1).unwrap();
        assert_eq!(law1[1], q(1, 1));
        let law3 = exhaustive_lis_law(3).unwrap();
        assert_eq!(law3[2], q(5, 6));
        let law2 = exhaustive_lis_law(2).unwrap();
        // E[l] = sum_n P[l > n]
        let mean: BigRational = (0..2).map(|n| q(1, 1) - &law2[n]).sum();
        assert_eq!(mean, q(3, 2));
        assert!(exhaustive_lis_law(11).is_err());
        assert!(exhaustive_lis_law(0).is_err());
    }

    #[test]
    fn shape_count_matches_exhaustive_enumeration() {
        for n in 1..=9 {
            assert_eq!(lis_law(n).unwrap(), exhaustive_lis_law(n).unwrap(), "N={n}");
        }
    }

    #[test]
    fn law_decreases_in_n() {
        for n in 1..=8 {
            let (small, big) = (exhaustive_lis_law(n).unwrap(), exhaustive_lis_law(n + 1).unwrap());
            for k in 0..=n {
                assert!(big[k] <= small[k], "N={n} n={k}");
            }
        }
    }

    #[test]
    fn standard_tableaux_of_staircase() {
        // f^(3,2,1) = 16 by the hook formula, computed by hand
        let f = standard_tableaux_counts(6);
        assert_eq!(f[&Partition::new(vec![3, 2, 1]).unwrap()], BigInt::from(16));
    }
}
