//! File formats. Every float is written with 17 significant digits so that
//! reading a file back reproduces the same doubles.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::continuation::{Branch, SweepCell, SweepResult};
use crate::error::{Error, Result};
use crate::field::{StripField, SurfaceCurve, Validity};
use crate::spectral::{CoefficientRecord, PeriodicFunction};
use crate::wave::{PhysicalParams, WaveState};

/// `serde_json` formatter printing doubles as `d.ddddddddddddddddde±x`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactFloats;

impl serde_json::ser::Formatter for ExactFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with exact floats.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = to_json(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    from_json(&fs::read_to_string(path)?)
}

/// A float for CSV and tables, 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(field: &str) -> Result<f64> {
    field.trim().parse().map_err(|_| Error::Config(format!("not a number: `{field}`")))
}

fn parse_bool(field: &str) -> Result<bool> {
    field.trim().parse().map_err(|_| Error::Config(format!("not a boolean: `{field}`")))
}

/// One line of a branch file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchRecord {
    /// Amplitude: the `cos(n x)` coefficient of `w`.
    pub s: f64,
    pub arclength: f64,
    pub lambda: f64,
    pub mu: f64,
    pub m: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub params: PhysicalParams,
    pub w: CoefficientRecord,
    pub residual_norm: f64,
    pub validity: Validity,
}

impl BranchRecord {
    pub fn to_state(&self) -> Result<WaveState> {
        WaveState::new(self.params, self.lambda, self.mu, PeriodicFunction::from_record(&self.w)?)
    }
}

pub fn branch_records(branch: &Branch) -> Vec<BranchRecord> {
    branch
        .points
        .iter()
        .map(|pt| BranchRecord {
            s: pt.amplitude,
            arclength: pt.arclength,
            lambda: pt.state.lambda,
            mu: pt.state.mu,
            m: pt.state.m(),
            q: pt.state.q(),
            params: pt.state.params,
            w: pt.state.w().to_record(),
            residual_norm: pt.residual_norm,
            validity: pt.validity,
        })
        .collect()
}

/// Writes a branch as JSON lines, one point per line.
pub fn write_branch(path: &Path, branch: &Branch) -> Result<()> {
    write_jsonl(path, &branch_records(branch))
}

pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    let mut text = String::new();
    for r in records {
        text.push_str(&to_json(r)?);
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

pub fn read_branch(path: &Path) -> Result<Vec<BranchRecord>> {
    let file = fs::File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(from_json(&line)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRecord {
    pub nx: usize,
    pub ny: usize,
    pub depth: f64,
}

/// Field file: conformal coordinates on the grid and the flow at each point.
///
/// Arrays are row-major with `x` running fastest, index `j * nx + i`; row `0` is the bed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRecord {
    pub grid: GridRecord,
    pub params: PhysicalParams,
    pub a_offset: f64,
    pub m: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(rename = "U")]
    pub u: Vec<f64>,
    #[serde(rename = "V")]
    pub v: Vec<f64>,
    pub zeta: Vec<f64>,
    pub psi: Vec<f64>,
    pub velocity_x: Vec<f64>,
    pub velocity_y: Vec<f64>,
}

impl FieldRecord {
    pub fn from_field(field: &StripField) -> Self {
        Self {
            grid: GridRecord {
                nx: field.grid.nx,
                ny: field.grid.ny,
                depth: field.grid.depth,
            },
            params: field.params,
            a_offset: field.a_offset,
            m: field.m,
            q: field.q,
            x: field.grid.xs(),
            y: field.grid.ys(),
            u: field.u.clone(),
            v: field.v.clone(),
            zeta: field.zeta.clone(),
            psi: field.psi.clone(),
            velocity_x: field.velocity.0.clone(),
            velocity_y: field.velocity.1.clone(),
        }
    }
}

/// Surface rows `x, X, Y, theta0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceRow {
    pub x: f64,
    pub big_x: f64,
    pub big_y: f64,
    pub theta0: f64,
}

pub fn surface_rows(curve: &SurfaceCurve) -> Vec<SurfaceRow> {
    let n = curve.theta0.n_modes();
    curve
        .points
        .iter()
        .zip(curve.theta0.values())
        .enumerate()
        .map(|(j, (&(big_x, big_y), &theta0))| SurfaceRow { x: crate::spectral::grid_point(n, j), big_x, big_y, theta0 })
        .collect()
}

pub fn write_surface_csv(path: &Path, rows: &[SurfaceRow]) -> Result<()> {
    let mut text = String::from("x,X,Y,theta0\n");
    for r in rows {
        text.push_str(&format!("{},{},{},{}\n", fmt_f64(r.x), fmt_f64(r.big_x), fmt_f64(r.big_y), fmt_f64(r.theta0)));
    }
    fs::write(path, text)?;
    Ok(())
}

pub fn read_surface_csv(path: &Path) -> Result<Vec<SurfaceRow>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some("x,X,Y,theta0") {
        return Err(Error::Config(format!("{}: unexpected surface header", path.display())));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 4 {
                return Err(Error::Config(format!("bad surface row `{l}`")));
            }
            Ok(SurfaceRow { x: parse_f64(f[0])?, big_x: parse_f64(f[1])?, big_y: parse_f64(f[2])?, theta0: parse_f64(f[3])? })
        })
        .collect()
}

const SWEEP_HEADER: &str = "h,m_plus,m_minus,stp_holds,h_star_bracket,gap_plus,gap_minus";

/// Sweep table with the bisected depths as `# key = value` header lines.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub gamma: f64,
    pub g: f64,
    pub k: f64,
    pub h_flux_zero: Option<f64>,
    pub h_stagnation: Option<f64>,
    pub cells: Vec<SweepCell>,
}

impl SweepTable {
    pub fn from_result(r: &SweepResult) -> Self {
        Self {
            gamma: r.spec.gamma,
            g: r.spec.g,
            k: r.spec.k,
            h_flux_zero: r.h_flux_zero,
            h_stagnation: r.h_stagnation,
            cells: r.cells.clone(),
        }
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_else(|| "none".into())
}

fn parse_opt(s: &str) -> Result<Option<f64>> {
    if s.trim() == "none" {
        Ok(None)
    } else {
        parse_f64(s).map(Some)
    }
}

pub fn write_sweep_csv(path: &Path, table: &SweepTable) -> Result<()> {
    let mut text = String::new();
    text.push_str(&format!("# gamma = {}\n", fmt_f64(table.gamma)));
    text.push_str(&format!("# g = {}\n", fmt_f64(table.g)));
    text.push_str(&format!("# k = {}\n", fmt_f64(table.k)));
    text.push_str(&format!("# h_flux_zero = {}\n", fmt_opt(table.h_flux_zero)));
    text.push_str(&format!("# h_stagnation = {}\n", fmt_opt(table.h_stagnation)));
    text.push_str(SWEEP_HEADER);
    text.push('\n');
    for c in &table.cells {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_f64(c.h),
            fmt_f64(c.m_plus),
            fmt_f64(c.m_minus),
            c.stp_holds,
            c.h_star_bracket,
            fmt_f64(c.gap_plus),
            fmt_f64(c.gap_minus)
        ));
    }
    fs::write(path, text)?;
    Ok(())
}

pub fn read_sweep_csv(path: &Path) -> Result<SweepTable> {
    let text = fs::read_to_string(path)?;
    let mut meta = std::collections::HashMap::new();
    let mut cells = Vec::new();
    let mut seen_header = false;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        if let Some(rest) = line.strip_prefix('#') {
            let (key, value) =
                rest.split_once('=').ok_or_else(|| Error::Config(format!("bad sweep metadata `{line}`")))?;
            meta.insert(key.trim().to_string(), value.trim().to_string());
        } else if !seen_header {
            if line != SWEEP_HEADER {
                return Err(Error::Config(format!("unexpected sweep header `{line}`")));
            }
            seen_header = true;
        } else {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(Error::Config(format!("bad sweep row `{line}`")));
            }
            cells.push(SweepCell {
                h: parse_f64(f[0])?,
                m_plus: parse_f64(f[1])?,
                m_minus: parse_f64(f[2])?,
                stp_holds: parse_bool(f[3])?,
                h_star_bracket: parse_bool(f[4])?,
                gap_plus: parse_f64(f[5])?,
                gap_minus: parse_f64(f[6])?,
            });
        }
    }
    let get = |key: &str| meta.get(key).ok_or_else(|| Error::Config(format!("sweep metadata `{key}` missing")));
    Ok(SweepTable {
        gamma: parse_f64(get("gamma")?)?,
        g: parse_f64(get("g")?)?,
        k: parse_f64(get("k")?)?,
        h_flux_zero: parse_opt(get("h_flux_zero")?)?,
        h_stagnation: parse_opt(get("h_stagnation")?)?,
        cells,
    })
}

/// Companion plotting script for a CSV with named columns.
pub fn write_gnuplot(path: &Path, csv_name: &str, x_col: &str, y_cols: &[&str], title: &str) -> Result<()> {
    let mut text = String::new();
    text.push_str("set datafile separator ','\n");
    text.push_str("set key autotitle columnhead\n");
    text.push_str(&format!("set title '{title}'\n"));
    let plots: Vec<String> = y_cols
        .iter()
        .map(|c| format!("'{csv_name}' using '{x_col}':'{c}' with lines"))
        .collect();
    text.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    fs::write(path, text)?;
    Ok(())
}
