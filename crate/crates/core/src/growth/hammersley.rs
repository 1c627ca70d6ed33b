use rayon::prelude::*;

use super::lpp::lpp_batch;
use super::rng::{sample_poisson, SeededStream};
use crate::combinatorics::longest_increasing;
use crate::error::{domain, Result};
use crate::stats::{ks_two_sample, EmpiricalDistribution, Provenance};

/// Length of the longest up/right chain among Poisson(alpha) uniform points
/// in the unit square, i.e. one draw of `L(alpha)`.
pub fn hammersley_sample(alpha: f64, rng: &mut SeededStream) -> Result<u64> {
    if !(alpha > 0.0 && alpha <= 1e6) {
        return domain(format!("Hammersley intensity must lie in (0, 1e6], got {alpha}"));
    }
    let k = sample_poisson(alpha, rng)? as usize;
    let mut pts: Vec<(f64, f64)> = (0..k).map(|_| (rng.uniform(), rng.uniform())).collect();
    // a repeated coordinate would make the rank permutation ambiguous; redraw it
    loop {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut ys: Vec<(f64, usize)> = pts.iter().enumerate().map(|(i, p)| (p.1, i)).collect();
        ys.sort_by(|a, b| a.0.total_cmp(&b.0));
        let clash_x = pts.windows(2).position(|w| w[0].0 == w[1].0);
        let clash_y = ys.windows(2).find(|w| w[0].0 == w[1].0).map(|w| w[1].1);
        match clash_x.or(clash_y) {
            Some(i) => pts[i] = (rng.uniform(), rng.uniform()),
            None => break,
        }
    }
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    Ok(longest_increasing(&ys) as u64)
}

/// `samples` draws of `L(alpha)`; sample `s` uses stream `base + s`.
pub fn hammersley_batch(alpha: f64, seed: u64, base: u64, samples: usize) -> Result<Vec<u64>> {
    (0..samples as u64)
        .into_par_iter()
        .map(|s| hammersley_sample(alpha, &mut SeededStream::new(seed, base + s)))
        .collect()
}

/// Two-sample comparison of `G(N, N)` at `q = alpha / N^2` with `L(alpha)`.
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub alpha: f64,
    pub n: usize,
    pub q: f64,
    pub lpp: EmpiricalDistribution,
    pub hammersley: EmpiricalDistribution,
    pub ks: f64,
}

/// Streams `0..samples` feed the LPP draws and `samples..2*samples` the
/// Hammersley draws.
pub fn lpp_to_l_alpha_limit_check(alpha: f64, n: usize, seed: u64, samples: usize) -> Result<LimitReport> {
    let q = alpha / (n * n) as f64;
    if !(q > 0.0 && q < 1.0) {
        return domain(format!("alpha / N^2 = {q} must lie in (0, 1)"));
    }
    let s = samples as u64;
    let lpp = EmpiricalDistribution::from_integers(lpp_batch(n, n, q, seed, 0, samples)?)?
        .with_provenance(Provenance { seed, streams: (0, s) });
    let hammersley = EmpiricalDistribution::from_integers(hammersley_batch(alpha, seed, s, samples)?)?
        .with_provenance(Provenance { seed, streams: (s, 2 * s) });
    let ks = ks_two_sample(&lpp, &hammersley);
    Ok(LimitReport { alpha, n, q, lpp, hammersley, ks })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `e^{-alpha} sum_N alpha^N / (N!)^2`, using `P[l_N <= 1] = 1/N!`.
    fn p_l_le_1(alpha: f64) -> f64 {
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 1..60 {
            term *= alpha / (n * n) as f64;
            sum += term;
        }
        (-alpha).exp() * sum
    }

    #[test]
    fn empty_square_and_single_point() {
        let mut rng = SeededStream::new(1, 0);
        assert!((0..1000).all(|_| hammersley_sample(1e-12, &mut rng).unwrap() == 0));
        assert!(hammersley_sample(0.0, &mut rng).is_err());
    }

    #[test]
    fn law_at_one_point_is_one() {
        // a draw with exactly one point must give L = 1
        for s in 0..2000 {
            let mut probe = SeededStream::new(4, s);
            let k = sample_poisson(0.3, &mut probe).unwrap();
            let l = hammersley_sample(0.3, &mut SeededStream::new(4, s)).unwrap();
            if k == 1 {
                assert_eq!(l, 1);
            }
            assert!(l <= k);
        }
    }

    #[test]
    fn probability_of_at_most_one() {
        let oracle = p_l_le_1(1.0);
        assert!((oracle - 0.838_612_567_126_026).abs() < 1e-14);
        let draws = hammersley_batch(1.0, 1, 0, 1_000_000).unwrap();
        let p = draws.iter().filter(|&&l| l <= 1).count() as f64 / draws.len() as f64;
        assert!((p - oracle).abs() < 0.002, "p = {p}");
    }

    #[test]
    fn mean_growth_band() {
        // E[L(100)]/10 is about 1.674, below the asymptotic band
        let mut prev = 0.0;
        for (n, lo) in [(100.0, 1.60), (400.0, 1.70), (900.0, 1.70)] {
            let draws = hammersley_batch(n, 17, 0, 4000).unwrap();
            let ratio = draws.iter().sum::<u64>() as f64 / draws.len() as f64 / f64::sqrt(n);
            assert!(ratio > prev && (lo..=2.0).contains(&ratio), "alpha {n}: {ratio}");
            prev = ratio;
        }
    }

    #[test]
    fn limit_check_small_case() {
        let r = lpp_to_l_alpha_limit_check(1.0, 30, 2, 20_000).unwrap();
        assert!(r.ks < 0.02, "ks = {}", r.ks);
        let far = lpp_to_l_alpha_limit_check(1.0, 2, 2, 2000).unwrap();
        assert!(far.ks >= 0.0);
        assert!(lpp_to_l_alpha_limit_check(4.0, 2, 0, 10).is_err());
    }
}
