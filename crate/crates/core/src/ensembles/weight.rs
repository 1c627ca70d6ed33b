use crate::error::{domain, precondition, resource, Result};

/// Relative mass a truncation of the non-negative integers may drop.
pub const TAIL_TOLERANCE: f64 = 1e-14;
const MAX_SUPPORT: usize = 100_000;

/// Positive weight on `{0, 1, ..., M_cut}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteWeight {
    values: Vec<f64>,
    /// Bound on the excluded mass relative to the kept mass; zero for finite supports.
    tail_bound: f64,
}

impl DiscreteWeight {
    /// A weight with finite support, given point by point.
    pub fn finite(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return precondition("weight needs a non-empty support");
        }
        if values.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return domain("weight values must be positive and finite");
        }
        Ok(Self { values, tail_bound: 0.0 })
    }

    /// Truncates a weight on the non-negative integers at the first `x` where
    /// `w(x+1) / (1 - r)`, `r = w(x+2)/w(x+1)`, is below `1e-14` of the kept
    /// mass. The bound is valid when the ratios `w(y+1)/w(y)` are eventually
    /// non-increasing and below one, as for Meixner weights.
    pub fn truncated(w: impl Fn(usize) -> f64) -> Result<Self> {
        let mut values: Vec<f64> = Vec::new();
        let mut total = 0.0;
        for x in 0..MAX_SUPPORT {
            let v = w(x);
            if !(v > 0.0 && v.is_finite()) {
                return domain(format!("weight must be positive and finite, w({x}) = {v}"));
            }
            values.push(v);
            total += v;
            let (next, after) = (w(x + 1), w(x + 2));
            let r = after / next;
            if r < 1.0 {
                let tail = next / (1.0 - r);
                if tail < TAIL_TOLERANCE * total {
                    return Ok(Self { values, tail_bound: tail / total });
                }
            }
        }
        resource(format!("weight tail did not fall below {TAIL_TOLERANCE:e} within {MAX_SUPPORT} sites"))
    }

    /// Meixner weight `binom(M - N + x, x) q^x`, truncated.
    pub fn meixner(m: usize, n: usize, q: f64) -> Result<Self> {
        meixner_weight(m, n, q, 0)?;
        Self::truncated(|x| meixner_weight(m, n, q, x).expect("parameters checked"))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest support point `M_cut`.
    pub fn max_point(&self) -> usize {
        self.values.len() - 1
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn mass(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// `binom(M - N + x, x) q^x`.
///
/// The `q^x` factor makes the weight summable and gives the geometric law at
/// `M = N = 1`.
pub fn meixner_weight(m: usize, n: usize, q: f64, x: usize) -> Result<f64> {
    if n == 0 || m < n {
        return precondition(format!("Meixner weight needs M >= N >= 1, got M = {m}, N = {n}"));
    }
    if !(q > 0.0 && q < 1.0) {
        return domain(format!("q must lie in (0, 1), got {q}"));
    }
    let shift = (m - n) as f64;
    let mut w = 1.0;
    for i in 1..=x {
        w *= q * (shift + i as f64) / i as f64;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meixner_examples() {
        for x in 0..6 {
            let w = meixner_weight(1, 1, 0.3, x).unwrap();
            assert!((w - 0.3f64.powi(x as i32)).abs() < 1e-16);
        }
        assert!((meixner_weight(2, 1, 0.5, 3).unwrap() - 0.5).abs() < 1e-15);
        assert!(meixner_weight(1, 2, 0.5, 0).is_err());
        assert!(meixner_weight(2, 2, 1.0, 0).is_err());
    }

    #[test]
    fn truncation_certifies_tail() {
        let w = DiscreteWeight::meixner(1, 1, 0.5).unwrap();
        // exact mass 2, tail after M_cut is 0.5^{M_cut+1} / (1 - 0.5)
        let cut = w.max_point() as i32;
        let exact_tail = 0.5f64.powi(cut + 1) * 2.0;
        assert!(exact_tail / w.mass() < TAIL_TOLERANCE);
        assert!(w.tail_bound() < TAIL_TOLERANCE);
        assert!((w.mass() - 2.0).abs() < 1e-13);
        let wide = DiscreteWeight::meixner(5, 2, 0.7).unwrap();
        assert!(wide.tail_bound() < TAIL_TOLERANCE && wide.len() > 50);
    }

    #[test]
    fn finite_weight_validation() {
        assert!(DiscreteWeight::finite(vec![]).is_err());
        assert!(DiscreteWeight::finite(vec![1.0, 0.0]).is_err());
        let w = DiscreteWeight::finite(vec![1.0, 2.0]).unwrap();
        assert_eq!((w.len(), w.max_point(), w.tail_bound()), (2, 1, 0.0));
        assert!(DiscreteWeight::truncated(|_| 1.0).is_err());
    }
}
