use growthlab::ensembles::{DiscreteWeight, Ensemble};
use growthlab::limits::l_alpha_cdf;
use growthlab::toeplitz::poissonized_toeplitz_estimate;

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::output::{real, Csv};
use crate::Outcome;

/// `exact_<method>.csv` with `n,cdf_value,method,est_error`.
///
/// For meixner, `n` is the passage-time level `t` of `P[G(M, N) <= t]` and
/// `est_error` the certified relative mass dropped by truncating the weight.
pub fn exact(cfg: &ExperimentConfig) -> CliResult<Outcome> {
    let method: String = cfg.require("method")?;
    let mut csv = Csv::new(&["n", "cdf_value", "method", "est_error"]);
    match method.as_str() {
        "meixner" => {
            let (m, n, q): (usize, usize, f64) = (cfg.require("M")?, cfg.require("N")?, cfg.require("q")?);
            let (big, small) = (m.max(n), m.min(n));
            let weight = DiscreteWeight::meixner(big, small, q)?;
            let tail = weight.tail_bound();
            let ens = Ensemble::new(weight, small)?;
            let table = ens.xmax_cdf_table()?;
            let last = table.len() - small;
            let t_max = cfg.or("n", last)?;
            for t in 0..=t_max {
                let v = table.get(t + small - 1).copied().unwrap_or(1.0);
                csv.row(&[t.to_string(), real(v), method.clone(), real(tail)]);
            }
        }
        "bessel" | "toeplitz" => {
            let alpha: f64 = cfg.require("alpha")?;
            let n_max: usize = cfg.require("n")?;
            for n in 0..=n_max {
                let (v, e) = if method == "bessel" {
                    let r = l_alpha_cdf(alpha, n)?;
                    (r.value, r.est_error)
                } else {
                    poissonized_toeplitz_estimate(alpha, n)?
                };
                csv.row(&[n.to_string(), real(v), method.clone(), real(e)]);
            }
        }
        other => return Err(CliError::Usage(format!("unknown method {other:?}; expected meixner, bessel or toeplitz"))),
    }
    let path = csv.write(&cfg.output_path(&format!("exact_{method}.csv"))?)?;
    Ok(Outcome::ok(vec![format!("exact {method} -> {}", path.display())], vec![path]))
}
