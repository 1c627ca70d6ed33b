use serde::Serialize;

use growthlab::limits::{Tw2Method, Tw2Table, TW_XI_MAX, TW_XI_MIN};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::output::{real, write_json, Csv};
use crate::Outcome;

/// Default largest allowed `|fredholm - painleve|` for method both.
pub const DISCREPANCY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Serialize)]
struct TableSummary {
    method: String,
    xi_min: f64,
    xi_max: f64,
    step: f64,
    points: usize,
    mean: f64,
    right_end: f64,
    monotone: bool,
    max_discrepancy: Option<f64>,
}

/// `tw2_table.csv` (`xi,f2,method,est_error`, plus `discrepancy` for method
/// both) and `tw2_summary.json`.
pub fn tw_table(cfg: &ExperimentConfig) -> CliResult<Outcome> {
    let xi_min = cfg.or("xi_min", -8.0)?;
    let xi_max = cfg.or("xi_max", 4.0)?;
    let step = cfg.or("step", 0.1)?;
    let method: String = cfg.or("method", "fredholm".to_string())?;
    let tolerance = cfg.or("tolerance", DISCREPANCY_TOLERANCE)?;
    if !(TW_XI_MIN..=TW_XI_MAX).contains(&xi_min) || !(TW_XI_MIN..=TW_XI_MAX).contains(&xi_max) || xi_min > xi_max {
        return Err(CliError::Usage(format!("xi range must lie within [{TW_XI_MIN}, {TW_XI_MAX}]")));
    }
    let (table, csv, max_discrepancy) = match method.as_str() {
        "fredholm" | "painleve" => {
            let m = if method == "fredholm" { Tw2Method::Fredholm } else { Tw2Method::Painleve };
            let table = Tw2Table::build(xi_min, xi_max, step, m)?;
            let mut csv = Csv::new(&["xi", "f2", "method", "est_error"]);
            for k in 0..table.xi_grid.len() {
                csv.row(&[real(table.xi_grid[k]), real(table.f2_values[k]), method.clone(), real(table.est_errors[k])]);
            }
            (table, csv, None)
        }
        "both" => {
            let f = Tw2Table::build(xi_min, xi_max, step, Tw2Method::Fredholm)?;
            let p = Tw2Table::build(xi_min, xi_max, step, Tw2Method::Painleve)?;
            let mut csv = Csv::new(&["xi", "f2", "method", "est_error", "discrepancy"]);
            let mut worst = 0.0f64;
            for k in 0..f.xi_grid.len() {
                let d = (f.f2_values[k] - p.f2_values[k]).abs();
                worst = worst.max(d);
                let e = f.est_errors[k].max(p.est_errors[k]);
                csv.row(&[real(f.xi_grid[k]), real(f.f2_values[k]), method.clone(), real(e), real(d)]);
            }
            (f, csv, Some(worst))
        }
        other => return Err(CliError::Usage(format!("unknown method {other:?}; expected fredholm, painleve or both"))),
    };
    let csv_path = csv.write(&cfg.output_path("tw2_table.csv")?)?;
    let summary = TableSummary {
        method: method.clone(),
        xi_min,
        xi_max,
        step,
        points: table.xi_grid.len(),
        mean: table.mean(),
        right_end: *table.f2_values.last().expect("grid is non-empty"),
        monotone: table.is_monotone(),
        max_discrepancy,
    };
    let json_path = write_json(&cfg.output_path("tw2_summary.json")?, &summary)?;
    let mut lines = vec![format!(
        "tw-table {method}: {} points, mean {:.6}, F2({xi_max}) = {:.12}",
        summary.points, summary.mean, summary.right_end
    )];
    if let Some(d) = max_discrepancy {
        lines.push(format!("max |fredholm - painleve| = {d:.3e}"));
        if d > tolerance {
            return Err(CliError::Accuracy(format!("F2 methods disagree by {d:e} > {tolerance:e}")));
        }
    }
    Ok(Outcome::ok(lines, vec![csv_path, json_path]))
}
