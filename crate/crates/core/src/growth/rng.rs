use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{domain, Result};

/// Largest mean sampled by sequential inversion; larger means use rejection.
pub const POISSON_INVERSION_MAX: f64 = 30.0;

/// A reproducible random stream identified by `(seed, stream_id)`.
///
/// Backed by ChaCha8 with the stream id selecting one of 2^64 independent
/// keystreams for the same key.
#[derive(Debug, Clone)]
pub struct SeededStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl SeededStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for SeededStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `P[k] = (1 - q) q^k` on `k = 0, 1, 2, ...`, by inversion.
pub fn sample_geometric(q: f64, rng: &mut SeededStream) -> Result<u64> {
    if !(q > 0.0 && q < 1.0) {
        return domain(format!("geometric parameter must lie in (0, 1), got {q}"));
    }
    Ok(geometric_unchecked(q.ln(), rng))
}

#[inline]
pub(crate) fn geometric_unchecked(ln_q: f64, rng: &mut SeededStream) -> u64 {
    (rng.uniform().ln() / ln_q).floor() as u64
}

/// Poisson(alpha) draw.
pub fn sample_poisson(alpha: f64, rng: &mut SeededStream) -> Result<u64> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return domain(format!("Poisson mean must be finite and non-negative, got {alpha}"));
    }
    if alpha == 0.0 {
        return Ok(0);
    }
    if alpha <= POISSON_INVERSION_MAX {
        let u = rng.uniform();
        let mut k = 0u64;
        let mut p = (-alpha).exp();
        let mut cum = p;
        // cap guards against cum stalling just below u in the far tail
        while u > cum && k < 1000 {
            k += 1;
            p *= alpha / k as f64;
            cum += p;
        }
        return Ok(k);
    }
    let dist = Poisson::new(alpha).map_err(|e| crate::Error::Domain(e.to_string()))?;
    Ok(dist.sample(rng) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draws(seed: u64, stream: u64) -> Vec<u64> {
        let mut s = SeededStream::new(seed, stream);
        (0..8).map(|_| s.next_u64()).collect()
    }

    #[test]
    fn same_stream_same_draws() {
        assert_eq!(draws(7, 3), draws(7, 3));
        assert_ne!(draws(7, 3), draws(7, 4));
        assert_ne!(draws(7, 3), draws(8, 3));
    }

    #[test]
    fn uniform_is_open() {
        let mut s = SeededStream::new(1, 0);
        for _ in 0..10_000 {
            let u = s.uniform();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn geometric_moments() {
        let n = 1_000_000;
        let mut s = SeededStream::new(2024, 0);
        let mean = (0..n).map(|_| sample_geometric(0.5, &mut s).unwrap()).sum::<u64>() as f64 / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
        let zeros = (0..n).filter(|_| sample_geometric(0.25, &mut s).unwrap() == 0).count() as f64 / n as f64;
        assert!((zeros - 0.75).abs() < 0.005, "P[0] {zeros}");
        let tiny = (0..1000).all(|_| sample_geometric(1e-12, &mut s).unwrap() == 0);
        assert!(tiny);
    }

    #[test]
    fn geometric_rejects_bad_q() {
        let mut s = SeededStream::new(0, 0);
        for q in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(sample_geometric(q, &mut s).is_err());
        }
    }

    #[test]
    fn poisson_means_on_both_branches() {
        let mut s = SeededStream::new(5, 0);
        for alpha in [0.5, 4.0, 29.0, 31.0, 400.0] {
            let n = 200_000;
            let draws: Vec<f64> = (0..n).map(|_| sample_poisson(alpha, &mut s).unwrap() as f64).collect();
            let mean = draws.iter().sum::<f64>() / n as f64;
            let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let se = (alpha / n as f64).sqrt();
            assert!((mean - alpha).abs() < 5.0 * se, "alpha {alpha}: mean {mean}");
            assert!((var / alpha - 1.0).abs() < 0.03, "alpha {alpha}: var {var}");
        }
        assert_eq!(sample_poisson(0.0, &mut s).unwrap(), 0);
        assert!(sample_poisson(-1.0, &mut s).is_err());
    }

    #[test]
    fn poisson_inversion_point_masses() {
        let mut s = SeededStream::new(6, 0);
        let n = 400_000;
        let mut counts = [0usize; 4];
        for _ in 0..n {
            let k = sample_poisson(1.0, &mut s).unwrap() as usize;
            if k < 4 {
                counts[k] += 1;
            }
        }
        let e = (-1.0f64).exp();
        for (k, expect) in [e, e, e / 2.0, e / 6.0].iter().enumerate() {
            assert!((counts[k] as f64 / n as f64 - expect).abs() < 0.003, "k={k}");
        }
    }
}
