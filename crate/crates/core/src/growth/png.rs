use super::lpp::LppGrid;
use crate::error::{precondition, Result};

/// Nucleation heights `a(x, t)` for `1 <= t <= T`, `|x| <= T`.
/// Only sites with `x - t` odd may carry a nucleation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nucleations {
    t_max: usize,
    a: Vec<Vec<u64>>,
}

impl Nucleations {
    pub fn zeros(t_max: usize) -> Self {
        Self { t_max, a: vec![vec![0; 2 * t_max + 1]; t_max] }
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn set(&mut self, x: i64, t: usize, value: u64) -> Result<()> {
        let reach = self.t_max as i64;
        if t == 0 || t > self.t_max || x.abs() > reach {
            return precondition(format!("nucleation site ({x}, {t}) outside the window of size {}", self.t_max));
        }
        if value != 0 && (x - t as i64).rem_euclid(2) == 0 {
            return precondition(format!("nucleation at ({x}, {t}) where x - t is even"));
        }
        self.a[t - 1][(x + reach) as usize] = value;
        Ok(())
    }

    pub fn get(&self, x: i64, t: usize) -> u64 {
        let reach = self.t_max as i64;
        if t == 0 || t > self.t_max || x.abs() > reach {
            return 0;
        }
        self.a[t - 1][(x + reach) as usize]
    }

    /// The coupling `a(i - j, i + j - 1) = w(i, j)`, over `T = M + N - 1` steps.
    pub fn from_lpp(grid: &LppGrid) -> Self {
        let mut out = Self::zeros(grid.m() + grid.n() - 1);
        for i in 1..=grid.m() {
            for j in 1..=grid.n() {
                out.set(i as i64 - j as i64, i + j - 1, grid.weight(i, j))
                    .expect("coupled sites have x - t odd");
            }
        }
        out
    }
}

/// Heights `h(x, t)` for `0 <= t <= T` on the window `|x| <= T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PngField {
    t_max: usize,
    h: Vec<Vec<u64>>,
    a: Nucleations,
}

impl PngField {
    pub fn t_max(&self) -> usize {
        self.t_max
    }

    /// `h(x, t)`, zero outside the window.
    pub fn height(&self, x: i64, t: usize) -> u64 {
        let reach = self.t_max as i64;
        if t > self.t_max || x.abs() > reach {
            return 0;
        }
        self.h[t][(x + reach) as usize]
    }

    pub fn nucleations(&self) -> &Nucleations {
        &self.a
    }
}

/// Runs `h(x, t) = max(h(x-1, t-1), h(x, t-1), h(x+1, t-1)) + a(x, t)` from
/// `h(., 0) = 0`, with zero heights outside `|x| <= T`.
pub fn png_evolve(a: &Nucleations) -> PngField {
    let t_max = a.t_max;
    let width = 2 * t_max + 1;
    let mut h = vec![vec![0u64; width]; t_max + 1];
    for t in 1..=t_max {
        let (done, rest) = h.split_at_mut(t);
        let prev = &done[t - 1];
        let cur = &mut rest[0];
        for k in 0..width {
            let left = if k > 0 { prev[k - 1] } else { 0 };
            let right = if k + 1 < width { prev[k + 1] } else { 0 };
            cur[k] = left.max(prev[k]).max(right) + a.a[t - 1][k];
        }
    }
    PngField { t_max, h, a: a.clone() }
}
