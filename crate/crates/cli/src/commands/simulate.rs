use rayon::prelude::*;

use growthlab::growth::{hammersley_batch, lpp_batch, lpp_value, png_evolve, LppGrid, Nucleations, SeededStream};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::output::Csv;
use crate::Outcome;

/// `simulate_<model>.csv` with `sample_index,value`; sample `s` uses stream `s`.
/// The png model adds a `g` column holding `G(M, N)` of the same weights, and
/// `value` is the coupled height `h(M - N, M + N - 1)`.
pub fn simulate(cfg: &ExperimentConfig) -> CliResult<Outcome> {
    let model: String = cfg.require("model")?;
    let (seed, samples) = (cfg.seed()?, cfg.samples()?);
    let mut csv;
    match model.as_str() {
        "lpp" => {
            let (m, n, q) = (cfg.require("M")?, cfg.require("N")?, cfg.require("q")?);
            csv = Csv::new(&["sample_index", "value"]);
            for (s, v) in lpp_batch(m, n, q, seed, 0, samples)?.into_iter().enumerate() {
                csv.row(&[s.to_string(), v.to_string()]);
            }
        }
        "hammersley" => {
            let alpha = cfg.require("alpha")?;
            csv = Csv::new(&["sample_index", "value"]);
            for (s, v) in hammersley_batch(alpha, seed, 0, samples)?.into_iter().enumerate() {
                csv.row(&[s.to_string(), v.to_string()]);
            }
        }
        "png" => {
            let (m, n, q): (usize, usize, f64) = (cfg.require("M")?, cfg.require("N")?, cfg.require("q")?);
            let pairs: Vec<(u64, u64)> = (0..samples as u64)
                .into_par_iter()
                .map(|s| {
                    let grid = LppGrid::sample(m, n, q, &mut SeededStream::new(seed, s))?;
                    let field = png_evolve(&Nucleations::from_lpp(&grid));
                    Ok((field.height(m as i64 - n as i64, m + n - 1), lpp_value(&grid)))
                })
                .collect::<growthlab::Result<_>>()?;
            csv = Csv::new(&["sample_index", "value", "g"]);
            for (s, (h, g)) in pairs.into_iter().enumerate() {
                csv.row(&[s.to_string(), h.to_string(), g.to_string()]);
            }
        }
        other => return Err(CliError::Usage(format!("unknown model {other:?}; expected lpp, png or hammersley"))),
    }
    let path = csv.write(&cfg.output_path(&format!("simulate_{model}.csv"))?)?;
    Ok(Outcome::ok(vec![format!("simulate {model}: {samples} samples, seed {seed} -> {}", path.display())], vec![path]))
}
