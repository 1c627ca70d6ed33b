use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;

use super::airy_kernel::tw2_fredholm;
use super::painleve::tw2_painleve_with_tolerance;
use crate::error::{domain, Result};

/// Range on which both `F2` routes are trusted.
pub const TW_XI_MIN: f64 = -10.0;
pub const TW_XI_MAX: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tw2Method {
    Fredholm,
    Painleve,
}

impl fmt::Display for Tw2Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tw2Method::Fredholm => "fredholm",
            Tw2Method::Painleve => "painleve",
        })
    }
}

/// `F2` on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Tw2Table {
    pub xi_grid: Vec<f64>,
    pub f2_values: Vec<f64>,
    pub est_errors: Vec<f64>,
    /// Points outside `[TW_XI_MIN, TW_XI_MAX]` hold the value at the nearest end.
    pub clamped: Vec<bool>,
    pub method: Tw2Method,
    pub tolerance: f64,
}

impl Tw2Table {
    /// Grid `xi_min + k step`, `k = 0..=round((xi_max - xi_min) / step)`,
    /// evaluated in parallel.
    pub fn build(xi_min: f64, xi_max: f64, step: f64, method: Tw2Method) -> Result<Self> {
        if !(xi_min.is_finite() && xi_max.is_finite() && step > 0.0 && xi_min <= xi_max) {
            return domain(format!("bad F2 grid [{xi_min}, {xi_max}] step {step}"));
        }
        let count = ((xi_max - xi_min) / step).round() as usize + 1;
        if count > 1_000_000 {
            return domain("F2 grid has more than 10^6 points");
        }
        let xi_grid: Vec<f64> = (0..count).map(|k| xi_min + k as f64 * step).collect();
        let evaluated: Vec<(f64, f64, bool)> = xi_grid
            .par_iter()
            .map(|&xi| {
                let at = xi.clamp(TW_XI_MIN, TW_XI_MAX);
                let (v, e) = match method {
                    Tw2Method::Fredholm => {
                        let est = tw2_fredholm(at)?;
                        (est.value, est.est_error)
                    }
                    Tw2Method::Painleve => {
                        let v = tw2_painleve_with_tolerance(at, 1e-12)?;
                        let loose = tw2_painleve_with_tolerance(at, 1e-11)?;
                        (v, (v - loose).abs())
                    }
                };
                Ok((v, e, at != xi))
            })
            .collect::<Result<_>>()?;
        let tolerance = match method {
            Tw2Method::Fredholm => super::TW_FREDHOLM_TOLERANCE,
            Tw2Method::Painleve => 1e-8,
        };
        Ok(Self {
            xi_grid,
            f2_values: evaluated.iter().map(|e| e.0).collect(),
            est_errors: evaluated.iter().map(|e| e.1).collect(),
            clamped: evaluated.iter().map(|e| e.2).collect(),
            method,
            tolerance,
        })
    }

    /// Piecewise-linear interpolation, constant beyond the grid ends.
    pub fn cdf(&self, xi: f64) -> f64 {
        let g = &self.xi_grid;
        if xi <= g[0] {
            return self.f2_values[0];
        }
        if xi >= g[g.len() - 1] {
            return self.f2_values[g.len() - 1];
        }
        let k = g.partition_point(|&x| x <= xi) - 1;
        let t = (xi - g[k]) / (g[k + 1] - g[k]);
        self.f2_values[k] * (1.0 - t) + self.f2_values[k + 1] * t
    }

    /// `int xi dF2` with the mass outside the grid placed on its ends:
    /// `b - int_a^b F2`, by the trapezoid rule.
    pub fn mean(&self) -> f64 {
        let g = &self.xi_grid;
        let f = &self.f2_values;
        let integral: f64 = (1..g.len()).map(|k| 0.5 * (g[k] - g[k - 1]) * (f[k] + f[k - 1])).sum();
        g[g.len() - 1] - integral
    }

    pub fn is_monotone(&self) -> bool {
        self.f2_values.windows(2).all(|w| w[1] >= w[0])
    }

    /// CSV with header `xi,f2,method,est_error`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "xi,f2,method,est_error")?;
        for k in 0..self.xi_grid.len() {
            writeln!(
                out,
                "{:.16e},{:.16e},{},{:.16e}",
                self.xi_grid[k], self.f2_values[k], self.method, self.est_errors[k]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape_and_clamping() {
        let t = Tw2Table::build(-11.0, 7.0, 1.0, Tw2Method::Fredholm).unwrap();
        assert_eq!(t.xi_grid.len(), 19);
        assert!(t.clamped[0] && t.clamped[18] && !t.clamped[5]);
        assert!(t.is_monotone());
        assert!(t.f2_values[0] < 1e-3 && t.f2_values[18] > 1.0 - 1e-6);
        assert!(Tw2Table::build(1.0, 0.0, 0.1, Tw2Method::Painleve).is_err());
    }

    #[test]
    fn interpolation() {
        let t = Tw2Table::build(-1.0, 1.0, 1.0, Tw2Method::Painleve).unwrap();
        assert_eq!(t.cdf(-5.0), t.f2_values[0]);
        assert_eq!(t.cdf(0.0), t.f2_values[1]);
        assert!((t.cdf(0.5) - 0.5 * (t.f2_values[1] + t.f2_values[2])).abs() < 1e-15);
    }
}
