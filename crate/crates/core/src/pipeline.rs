//! Command pipelines behind the `vorwave` binary. Each writes its files to
//! the configured output directory and a short human-readable summary to
//! `out`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::continuation::{
    find_bifurcation_points, sweep_surface, trace_branch_until, BifurcationPoint, BranchStart, SweepSpec,
};
use crate::error::{Error, Result};
use crate::field::{find_stagnation, reconstruct, surface_geometry};
use crate::io::{self, fmt_f64, FieldRecord, SweepTable};
use crate::wave::{
    bifurcating_flux, dispersion_lambdas, stagnation_criterion, stagnation_line_height, transversality,
    PhysicalParams, Side, StagnationCriterion,
};

/// Environment variable capping the sweep thread count.
pub const THREADS_ENV: &str = "VORWAVE_THREADS";

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Divergence { .. } | Error::Singular { .. } | Error::BranchTruncated { .. } | Error::NonFinite(_) => 3,
        Error::Rejected { .. }
        | Error::SelfIntersection { .. }
        | Error::SurfaceStagnation { .. }
        | Error::SingularMap { .. } => 4,
        Error::InvalidGrid(_)
        | Error::NonZeroMean { .. }
        | Error::InvalidParams(_)
        | Error::Domain(_)
        | Error::Config(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output_dir: Option<PathBuf>,
    pub n_modes: Option<usize>,
    pub seed_amplitude: Option<f64>,
}

/// Defaults, then `path`, then `overrides`.
pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<RunConfig> {
    let mut cfg = match path {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(dir) = &overrides.output_dir {
        cfg.output_dir = dir.clone();
    }
    if let Some(n) = overrides.n_modes {
        cfg.solver.n_modes = n;
    }
    if let Some(s) = overrides.seed_amplitude {
        cfg.solver.ds = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionRow {
    pub n: usize,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub transversality_plus: f64,
    pub transversality_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionReport {
    pub params: PhysicalParams,
    pub rows: Vec<DispersionRow>,
    pub m_plus: f64,
    pub m_minus: f64,
    pub stagnation: StagnationCriterion,
    /// Height of the laminar stagnation line, when the criterion holds.
    pub stagnation_y: Option<f64>,
}

pub fn dispersion_report(p: &PhysicalParams, n_max: usize) -> DispersionReport {
    let rows = (1..=n_max)
        .map(|n| {
            let (lp, lm) = dispersion_lambdas(n, p);
            DispersionRow {
                n,
                lambda_plus: lp,
                lambda_minus: lm,
                transversality_plus: transversality(lp, n, p),
                transversality_minus: transversality(lm, n, p),
            }
        })
        .collect();
    let (m_plus, m_minus) = bifurcating_flux(p);
    DispersionReport {
        params: *p,
        rows,
        m_plus,
        m_minus,
        stagnation: stagnation_criterion(p),
        stagnation_y: stagnation_line_height(p),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_else(|| "none".into())
}

pub fn cmd_dispersion(cfg: &RunConfig, out: &mut dyn Write) -> Result<DispersionReport> {
    let report = dispersion_report(&cfg.params, cfg.mode_n);
    ensure_dir(&cfg.output_dir)?;
    io::write_json(&cfg.output_dir.join("dispersion.json"), &report)?;
    writeln!(out, "n\tlambda_plus\tlambda_minus")?;
    for r in &report.rows {
        writeln!(out, "{}\t{}\t{}", r.n, fmt_f64(r.lambda_plus), fmt_f64(r.lambda_minus))?;
    }
    writeln!(out, "m_plus\t{}", fmt_f64(report.m_plus))?;
    writeln!(out, "m_minus\t{}", fmt_f64(report.m_minus))?;
    let s = &report.stagnation;
    writeln!(out, "stagnation_criterion\t{}\t{} <= {}", s.holds, fmt_f64(s.lhs), fmt_f64(s.rhs))?;
    match report.stagnation_y {
        Some(y) => writeln!(out, "stagnation_line_y\t{}", fmt_f64(y))?,
        None => writeln!(out, "stagnation_line_y\tno stagnation")?,
    }
    writeln!(out, "critical_k\t{}", opt(s.critical_k))?;
    writeln!(out, "critical_gamma\t{}", opt(s.critical_gamma))?;
    Ok(report)
}

pub fn cmd_bifurcate(cfg: &RunConfig, out: &mut dyn Write) -> Result<Vec<BifurcationPoint>> {
    let points = find_bifurcation_points(&cfg.params, cfg.mode_n, cfg.solver.n_modes);
    ensure_dir(&cfg.output_dir)?;
    io::write_json(&cfg.output_dir.join("bifurcation.json"), &points)?;
    writeln!(out, "n\tside\tlambda_star\tsigma_min\tsigma_second\tnull_overlap\ttransversality")?;
    for b in &points {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            b.mode,
            b.side.label(),
            fmt_f64(b.lambda_star),
            fmt_f64(b.sigma_min),
            fmt_f64(b.sigma_second),
            fmt_f64(b.null_overlap),
            fmt_f64(b.transversality)
        )?;
    }
    Ok(points)
}

pub fn branch_file_name(side: Side) -> String {
    format!("branch_{}.jsonl", side.label())
}

/// Traces one branch and writes it; a truncated branch is still written
/// before the error is returned.
pub fn cmd_trace(cfg: &RunConfig, side: Side, n_points: usize, out: &mut dyn Write) -> Result<PathBuf> {
    let start = BranchStart::from_dispersion(&cfg.params, cfg.mode_n, side);
    let branch = trace_branch_until(&cfg.params, start, n_points, cfg.trace.max_amplitude, &cfg.solver)?;
    ensure_dir(&cfg.output_dir)?;
    let path = cfg.output_dir.join(branch_file_name(side));
    io::write_branch(&path, &branch)?;
    let last = branch.points.last().expect("branch has its bifurcation point");
    writeln!(
        out,
        "{}: {} points, lambda_star {}, final s {}, folds {:?}",
        path.display(),
        branch.points.len(),
        fmt_f64(start.lambda_star),
        fmt_f64(last.amplitude),
        branch.folds
    )?;
    if let Some(reason) = branch.truncated {
        return Err(Error::BranchTruncated { points: branch.points.len(), reason });
    }
    Ok(path)
}

/// Files written by [`cmd_reconstruct`].
#[derive(Debug, Clone)]
pub struct ReconstructOutput {
    pub field: PathBuf,
    pub stagnation: PathBuf,
    pub surface: PathBuf,
}

pub fn cmd_reconstruct(
    cfg: &RunConfig,
    branch_file: &Path,
    index: usize,
    emit_gnuplot: bool,
    out: &mut dyn Write,
) -> Result<ReconstructOutput> {
    let records = io::read_branch(branch_file)
        .map_err(|e| Error::Config(format!("cannot read branch {}: {e}", branch_file.display())))?;
    let record = records.get(index).ok_or_else(|| {
        Error::Config(format!("index {index} out of range, {} has {} points", branch_file.display(), records.len()))
    })?;
    let state = record.to_state()?;
    let curve = surface_geometry(&state, 0.0)?;
    let field = reconstruct(&state, 0.0, cfg.grid_spec())?;
    let report = find_stagnation(&field)?;

    ensure_dir(&cfg.output_dir)?;
    let paths = ReconstructOutput {
        field: cfg.output_dir.join(format!("field_{index}.json")),
        stagnation: cfg.output_dir.join(format!("stagnation_{index}.json")),
        surface: cfg.output_dir.join(format!("surface_{index}.csv")),
    };
    io::write_json(&paths.field, &FieldRecord::from_field(&field))?;
    io::write_json(&paths.stagnation, &report)?;
    io::write_surface_csv(&paths.surface, &io::surface_rows(&curve))?;
    if emit_gnuplot {
        let csv = format!("surface_{index}.csv");
        io::write_gnuplot(&cfg.output_dir.join(format!("surface_{index}.gp")), &csv, "X", &["Y"], "free surface")?;
    }
    writeln!(
        out,
        "point {index}: s {}, {} stagnation points, critical layer {}",
        fmt_f64(record.s),
        report.points.len(),
        report.has_critical_layer
    )?;
    Ok(paths)
}

/// Thread count from [`THREADS_ENV`], if set.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

pub fn cmd_sweep(cfg: &RunConfig, emit_gnuplot: bool, out: &mut dyn Write) -> Result<PathBuf> {
    let s = &cfg.sweep;
    let p = &cfg.params;
    let mut spec = SweepSpec::uniform(p.gamma, p.g, p.k, s.h_min, s.h_max, s.count)?;
    spec.branch_points = s.branch_points;
    spec.mode = cfg.mode_n;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let result = pool.install(|| sweep_surface(&spec, &cfg.solver))?;

    ensure_dir(&cfg.output_dir)?;
    let path = cfg.output_dir.join("sweep.csv");
    io::write_sweep_csv(&path, &SweepTable::from_result(&result))?;
    if emit_gnuplot {
        io::write_gnuplot(&cfg.output_dir.join("sweep.gp"), "sweep.csv", "h", &["m_plus", "m_minus"], "bifurcating fluxes")?;
    }
    writeln!(out, "h_flux_zero\t{}", opt(result.h_flux_zero))?;
    writeln!(out, "h_stagnation\t{}", opt(result.h_stagnation))?;
    writeln!(out, "cells\t{}", result.cells.len())?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_stable() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::Divergence { iterations: 1, history: vec![] }), 3);
        assert_eq!(
            exit_code(&Error::Rejected { condition: crate::error::Condition::Positive, detail: None }),
            4
        );
    }

    #[test]
    fn overrides_take_precedence() {
        let ov = Overrides { output_dir: Some("elsewhere".into()), n_modes: Some(16), seed_amplitude: Some(2e-3) };
        let cfg = load_config(None, &ov).unwrap();
        assert_eq!(cfg.output_dir, PathBuf::from("elsewhere"));
        assert_eq!(cfg.solver.n_modes, 16);
        assert_eq!(cfg.solver.ds, 2e-3);
    }
}
