use std::fmt;

use crate::error::{precondition, Result};

/// An integer partition: a weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return precondition(format!("partition parts must be positive: {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return precondition(format!("partition parts must be weakly decreasing: {parts:?}"));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of non-zero parts, `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|lambda|`
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Largest part `lambda_1`, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `lambda'_i = #{j : lambda_j >= i}`.
pub fn conjugate(lambda: &Partition) -> Partition {
    let parts = (1..=lambda.first())
        .map(|i| lambda.parts.iter().take_while(|&&p| p >= i).count())
        .collect();
    Partition { parts }
}

/// Every partition with at most `max_len` parts, each at most `max_part`.
pub fn partitions_in_box(max_len: usize, max_part: usize) -> Vec<Partition> {
    fn go(prefix: &mut Vec<usize>, max_len: usize, cap: usize, out: &mut Vec<Partition>) {
        out.push(Partition { parts: prefix.clone() });
        if prefix.len() == max_len {
            return;
        }
        for p in 1..=cap {
            prefix.push(p);
            go(prefix, max_len, p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_len, max_part, &mut out);
    out
}

/// Every partition of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&p(&[2, 1])), p(&[2, 1]));
        assert_eq!(conjugate(&p(&[3])), p(&[1, 1, 1]));
        assert_eq!(conjugate(&p(&[4, 2, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![3, 1, 0, 0]).unwrap().parts(), &[3, 1]);
    }

    #[test]
    fn partition_counts() {
        // p(n) for n = 0..10
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n).len(), want);
        }
        // binomial(a+b, a) partitions fit in an a x b box
        assert_eq!(partitions_in_box(2, 3).len(), 10);
        assert_eq!(partitions_in_box(3, 3).len(), 20);
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(mut parts in proptest::collection::vec(1usize..8, 0..8)) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lambda = Partition::new(parts).unwrap();
            let c = conjugate(&lambda);
            prop_assert_eq!(c.size(), lambda.size());
            prop_assert_eq!(conjugate(&c), lambda);
        }
    }
}
