//! Empirical distributions and Kolmogorov-Smirnov distances.

use std::io::{self, Write};

use crate::error::{domain, precondition, Result};

/// Where a Monte Carlo sample set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub seed: u64,
    /// Half-open range of stream ids used, one per sample.
    pub streams: (u64, u64),
}

/// Sorted sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
    provenance: Option<Provenance>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return precondition("empirical distribution needs at least one sample");
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return domain("samples must be finite");
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { samples, provenance: None })
    }

    pub fn from_integers<I: IntoIterator<Item = u64>>(values: I) -> Result<Self> {
        Self::new(values.into_iter().map(|v| v as f64).collect())
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.samples[0]
    }

    pub fn max(&self) -> f64 {
        self.samples[self.samples.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }

    /// Lower median.
    pub fn median(&self) -> f64 {
        self.samples[(self.len() - 1) / 2]
    }

    /// Applies a strictly increasing map to every sample.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut out = Self::new(self.samples.iter().map(|&v| f(v)).collect())?;
        out.provenance = self.provenance;
        Ok(out)
    }

    /// `F_n(x)`, the fraction of samples `<= x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.count_le(x) as f64 / self.len() as f64
    }

    fn count_le(&self, x: f64) -> usize {
        self.samples.partition_point(|&s| s <= x)
    }

    fn count_lt(&self, x: f64) -> usize {
        self.samples.partition_point(|&s| s < x)
    }

    /// Distinct sample values with the ECDF just after each.
    pub fn steps(&self) -> Vec<(f64, f64)> {
        let n = self.len() as f64;
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (i, &v) in self.samples.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 = (i + 1) as f64 / n,
                _ => out.push((v, (i + 1) as f64 / n)),
            }
        }
        out
    }

    /// `integral_0^inf (1 - F_n(x)) dx`; equals the mean for non-negative samples.
    pub fn survival_integral(&self) -> f64 {
        let n = self.len() as f64;
        let mut total = 0.0;
        let mut prev = 0.0f64;
        for (i, &v) in self.samples.iter().enumerate() {
            if v > prev {
                total += (v - prev) * (n - i as f64) / n;
                prev = v;
            }
        }
        total
    }

    /// CSV with header `value,ecdf`, one row per distinct value.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "value,ecdf")?;
        for (v, f) in self.steps() {
            writeln!(out, "{v:.16e},{f:.16e}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`EmpiricalDistribution::ecdf`].
pub fn ecdf(dist: &EmpiricalDistribution, x: f64) -> f64 {
    dist.ecdf(x)
}

const MONOTONE_SLACK: f64 = 1e-12;

/// `sup_x |F_n(x) - F(x)|` for a continuous reference CDF, checked on both
/// sides of every jump.
pub fn ks_distance(dist: &EmpiricalDistribution, cdf: impl Fn(f64) -> f64) -> Result<f64> {
    let n = dist.len() as f64;
    let mut sup = 0.0f64;
    let mut prev_f = f64::NEG_INFINITY;
    for (v, after) in dist.steps() {
        let f = cdf(v);
        if !(-MONOTONE_SLACK..=1.0 + MONOTONE_SLACK).contains(&f) || f < prev_f - MONOTONE_SLACK {
            return domain(format!("reference cdf is not monotone in [0, 1] near x = {v}"));
        }
        prev_f = f;
        let before = dist.count_lt(v) as f64 / n;
        sup = sup.max((after - f).abs()).max((before - f).abs());
    }
    Ok(sup)
}

/// KS distance for integer-valued samples against a law on the integers:
/// `sup_k |F_n(k) - F(k)|` over `k` from one below the smallest sample to the
/// largest. `cdf(k)` is the reference `P[X <= k]`; a continuity-corrected
/// comparison against a continuous law passes `|k| F(scale(k + 0.5))`.
pub fn ks_distance_lattice(dist: &EmpiricalDistribution, cdf: impl Fn(i64) -> f64) -> Result<f64> {
    if dist.samples.iter().any(|v| v.fract() != 0.0) {
        return domain("lattice KS needs integer-valued samples");
    }
    let lo = dist.min() as i64 - 1;
    let hi = dist.max() as i64;
    let mut sup = 0.0f64;
    let mut prev_f = f64::NEG_INFINITY;
    for k in lo..=hi {
        let f = cdf(k);
        if !(-MONOTONE_SLACK..=1.0 + MONOTONE_SLACK).contains(&f) || f < prev_f - MONOTONE_SLACK {
            return domain(format!("reference cdf is not monotone in [0, 1] at k = {k}"));
        }
        prev_f = f;
        sup = sup.max((dist.ecdf(k as f64) - f).abs());
    }
    Ok(sup)
}

/// Two-sample KS distance `sup_x |F_a(x) - F_b(x)|`.
pub fn ks_two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    a.samples
        .iter()
        .chain(&b.samples)
        .map(|&x| (a.ecdf(x) - b.ecdf(x)).abs())
        .fold(0.0, f64::max)
}
