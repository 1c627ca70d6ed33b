use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use growthlab::ensembles::gue_xmax_cdf;
use growthlab::growth::{hammersley_batch, lpp_batch, lpp_maximal_path, transversal_deviation, LppGrid, SeededStream};
use growthlab::limits::{lpp_scaling, poisson_scaling, Tw2Method, Tw2Table};
use growthlab::stats::{ks_distance_lattice, EmpiricalDistribution};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::output::{real, write_json, Csv};
use crate::svg::{line_chart, Series};
use crate::Outcome;

/// Default KS threshold; exceeding it exits with code 4.
pub const KS_THRESHOLD: f64 = 0.05;
/// Curve grid for the ECDF-vs-F2 artifacts.
const CURVE_RANGE: (f64, f64, f64) = (-6.0, 4.0, 0.05);

#[derive(Debug, Serialize)]
struct Summary {
    experiment: String,
    parameters: Value,
    samples: usize,
    seed: Option<u64>,
    ks: Option<f64>,
    threshold: Option<f64>,
    pass: bool,
    report: Value,
}

fn f2_table() -> CliResult<Tw2Table> {
    Ok(Tw2Table::build(-10.0, 6.0, 0.02, Tw2Method::Fredholm)?)
}

fn curve_grid() -> Vec<f64> {
    let (lo, hi, step) = CURVE_RANGE;
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|k| lo + k as f64 * step).collect()
}

/// Runs one of `thm32` (alias `lpp_edge`), `thm33` (`poisson_edge`),
/// `gue_edge` or `transversal` and writes `<name>_samples.csv`,
/// `<name>_curve.csv`, `<name>.svg` and `<name>_summary.json`.
pub fn experiment(cfg: &ExperimentConfig) -> CliResult<Outcome> {
    let name: String = cfg.require("experiment")?;
    match name.as_str() {
        "thm32" | "lpp_edge" => lattice_edge(cfg, &name, Edge::Lpp),
        "thm33" | "poisson_edge" => lattice_edge(cfg, &name, Edge::Poisson),
        "gue_edge" => gue_edge(cfg, &name),
        "transversal" => transversal(cfg, &name),
        other => Err(CliError::Usage(format!(
            "unknown experiment {other:?}; expected thm32, thm33, gue_edge or transversal"
        ))),
    }
}

#[derive(Debug, Clone, Copy)]
enum Edge {
    Lpp,
    Poisson,
}

fn lattice_edge(cfg: &ExperimentConfig, name: &str, edge: Edge) -> CliResult<Outcome> {
    let (seed, samples) = (cfg.seed()?, cfg.samples()?);
    let threshold = cfg.or("threshold", KS_THRESHOLD)?;
    // (values, center, scale, continuity offset, parameters)
    let (values, center, scale, offset, parameters) = match edge {
        Edge::Lpp => {
            let gamma: f64 = cfg.or("gamma", 1.0)?;
            let q: f64 = cfg.or("q", 0.25)?;
            let n: usize = cfg.or("N", 200)?;
            let (omega, sigma) = lpp_scaling(gamma, q)?;
            let m = (gamma * n as f64).floor() as usize;
            let values = lpp_batch(m, n, q, seed, 0, samples)?;
            let nf = n as f64;
            let params = json!({"gamma": gamma, "q": q, "M": m, "N": n, "omega": omega, "sigma": sigma});
            (values, omega * nf, sigma * nf.cbrt(), 0.5, params)
        }
        Edge::Poisson => {
            let alpha: f64 = cfg.or("alpha", 400.0)?;
            let (center, scale) = poisson_scaling(alpha);
            let values = hammersley_batch(alpha, seed, 0, samples)?;
            (values, center, scale, 0.0, json!({"alpha": alpha}))
        }
    };
    let rescale = move |v: f64| (v + offset - center) / scale;
    let table = f2_table()?;
    let dist = EmpiricalDistribution::from_integers(values.iter().copied())?;
    let ks = ks_distance_lattice(&dist, |k| table.cdf(rescale(k as f64)))?;

    let mut samples_csv = Csv::new(&["sample_index", "value", "rescaled"]);
    for (s, &v) in values.iter().enumerate() {
        samples_csv.row(&[s.to_string(), v.to_string(), real(rescale(v as f64))]);
    }
    let rescaled = dist.map(rescale)?;
    let mut files = vec![samples_csv.write(&cfg.output_path(&format!("{name}_samples.csv"))?)?];
    files.extend(write_curve(cfg, name, |xi| rescaled.ecdf(xi), &table, "ecdf")?);
    let pass = ks <= threshold;
    let summary = Summary {
        experiment: name.to_string(),
        parameters: json!({"model": parameters, "continuity_offset": offset}),
        samples,
        seed: Some(seed),
        ks: Some(ks),
        threshold: Some(threshold),
        pass,
        report: json!({"mean_rescaled": rescaled.mean(), "median_rescaled": rescaled.median()}),
    };
    files.push(write_json(&cfg.output_path(&format!("{name}_summary.json"))?, &summary)?);
    finish(name, ks, threshold, pass, files)
}

fn gue_edge(cfg: &ExperimentConfig, name: &str) -> CliResult<Outcome> {
    let n: usize = cfg.or("N", 50)?;
    let threshold = cfg.or("threshold", KS_THRESHOLD)?;
    let table = f2_table()?;
    let grid: Vec<f64> = curve_grid().into_iter().filter(|xi| (-4.0..=2.0).contains(xi)).collect();
    let gue: Vec<f64> = grid.par_iter().map(|&xi| gue_xmax_cdf(n, xi)).collect::<growthlab::Result<_>>()?;
    let mut values_csv = Csv::new(&["xi", "gue_cdf"]);
    for (xi, g) in grid.iter().zip(&gue) {
        values_csv.row(&[real(*xi), real(*g)]);
    }
    let mut files = vec![values_csv.write(&cfg.output_path(&format!("{name}_samples.csv"))?)?];
    let lookup = |xi: f64| {
        let k = grid.partition_point(|&g| g < xi - 1e-9).min(grid.len() - 1);
        gue[k]
    };
    let ks = grid.iter().zip(&gue).map(|(&xi, g)| (g - table.cdf(xi)).abs()).fold(0.0, f64::max);
    let mut csv = Csv::new(&["xi", "gue_cdf", "f2"]);
    let mut points = (Vec::new(), Vec::new());
    for &xi in &grid {
        csv.row(&[real(xi), real(lookup(xi)), real(table.cdf(xi))]);
        points.0.push((xi, lookup(xi)));
        points.1.push((xi, table.cdf(xi)));
    }
    files.push(csv.write(&cfg.output_path(&format!("{name}_curve.csv"))?)?);
    files.push(write_svg(cfg, name, &format!("GUE largest eigenvalue, N = {n}"), "gue_cdf", points)?);
    let checkpoints: Vec<Value> = [-2.0, 0.0, 1.0]
        .iter()
        .map(|&xi| Ok(json!({"xi": xi, "gue": gue_xmax_cdf(n, xi)?, "f2": table.cdf(xi)})))
        .collect::<growthlab::Result<_>>()?;
    let pass = ks <= threshold;
    let summary = Summary {
        experiment: name.to_string(),
        parameters: json!({"N": n}),
        samples: 0,
        seed: None,
        ks: Some(ks),
        threshold: Some(threshold),
        pass,
        report: json!({"checkpoints": checkpoints}),
    };
    files.push(write_json(&cfg.output_path(&format!("{name}_summary.json"))?, &summary)?);
    finish(name, ks, threshold, pass, files)
}

fn transversal(cfg: &ExperimentConfig, name: &str) -> CliResult<Outcome> {
    let (seed, samples) = (cfg.seed()?, cfg.samples()?);
    let q: f64 = cfg.or("q", 0.25)?;
    let sizes: Vec<usize> = cfg.list("sizes")?.unwrap_or_else(|| vec![64, 128, 256]);
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(CliError::Usage("sizes must be positive".into()));
    }
    let mut csv = Csv::new(&["N", "sample_index", "deviation"]);
    let mut medians = Vec::new();
    for &n in &sizes {
        let devs: Vec<usize> = (0..samples as u64)
            .into_par_iter()
            .map(|s| {
                let grid = LppGrid::sample(n, n, q, &mut SeededStream::new(seed, s))?;
                transversal_deviation(&lpp_maximal_path(&grid))
            })
            .collect::<growthlab::Result<_>>()?;
        for (s, d) in devs.iter().enumerate() {
            csv.row(&[n.to_string(), s.to_string(), d.to_string()]);
        }
        let dist = EmpiricalDistribution::new(devs.iter().map(|&d| d as f64).collect())?;
        medians.push((n, dist.median()));
    }
    let mut files = vec![csv.write(&cfg.output_path(&format!("{name}_samples.csv"))?)?];
    let mut curve = Csv::new(&["N", "median_deviation", "median_over_n_2_3"]);
    for &(n, med) in &medians {
        curve.row(&[n.to_string(), real(med), real(med / (n as f64).powf(2.0 / 3.0))]);
    }
    files.push(curve.write(&cfg.output_path(&format!("{name}_curve.csv"))?)?);
    let series = Series {
        label: "median deviation".into(),
        color: "#1f77b4",
        points: medians.iter().map(|&(n, m)| (n as f64, m)).collect(),
    };
    let svg = line_chart("Transversal deviation of the maximal path", "N", "median max |i - j|", &[series]);
    let svg_path = cfg.output_path(&format!("{name}.svg"))?;
    std::fs::write(&svg_path, svg)?;
    files.push(svg_path);
    let growing = medians.windows(2).all(|w| w[1].1 > w[0].1);
    let summary = Summary {
        experiment: name.to_string(),
        parameters: json!({"q": q, "sizes": sizes}),
        samples,
        seed: Some(seed),
        ks: None,
        threshold: None,
        pass: true,
        report: json!({
            "medians": medians.iter().map(|&(n, m)| json!({"N": n, "median": m})).collect::<Vec<_>>(),
            "median_increasing": growing,
        }),
    };
    files.push(write_json(&cfg.output_path(&format!("{name}_summary.json"))?, &summary)?);
    let mut lines = vec![format!("experiment {name}: q = {q}, {samples} samples per size, seed {seed}")];
    for (n, m) in &medians {
        lines.push(format!("  N = {n}: median deviation {m}"));
    }
    Ok(Outcome::ok(lines, files))
}

fn write_curve(
    cfg: &ExperimentConfig,
    name: &str,
    ecdf: impl Fn(f64) -> f64,
    table: &Tw2Table,
    label: &str,
) -> CliResult<Vec<std::path::PathBuf>> {
    let mut csv = Csv::new(&["xi", label, "f2"]);
    let mut points = (Vec::new(), Vec::new());
    for xi in curve_grid() {
        let (e, f) = (ecdf(xi), table.cdf(xi));
        csv.row(&[real(xi), real(e), real(f)]);
        points.0.push((xi, e));
        points.1.push((xi, f));
    }
    let curve = csv.write(&cfg.output_path(&format!("{name}_curve.csv"))?)?;
    let svg = write_svg(cfg, name, &format!("{name}: empirical CDF against F2"), label, points)?;
    Ok(vec![curve, svg])
}

fn write_svg(
    cfg: &ExperimentConfig,
    name: &str,
    title: &str,
    label: &str,
    (empirical, f2): (Vec<(f64, f64)>, Vec<(f64, f64)>),
) -> CliResult<std::path::PathBuf> {
    let series = [
        Series { label: label.into(), color: "#1f77b4", points: empirical },
        Series { label: "F2".into(), color: "#d62728", points: f2 },
    ];
    let path = cfg.output_path(&format!("{name}.svg"))?;
    std::fs::write(&path, line_chart(title, "xi", "CDF", &series))?;
    Ok(path)
}

fn finish(name: &str, ks: f64, threshold: f64, pass: bool, files: Vec<std::path::PathBuf>) -> CliResult<Outcome> {
    let verdict = if pass { "within" } else { "ABOVE" };
    let lines = vec![format!("experiment {name}: KS = {ks:.5} ({verdict} threshold {threshold})")];
    Ok(Outcome { exit_code: if pass { 0 } else { 4 }, lines, files })
}
