//! Parameter sweeps over normalised time and their tabular output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::decoherence::{evolve, ChannelScenario, ChannelTime};
use crate::error::{Error, Result};
use crate::gaussian::{EnvironmentModeSpec, TwoModeSqueezedSpec};
use crate::separability::verdict;

pub const DEFAULT_POINTS: usize = 401;
/// Significant digits written for every number.
pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Tsv,
}

impl TableFormat {
    pub fn delimiter(self) -> char {
        match self {
            TableFormat::Csv => ',',
            TableFormat::Tsv => '\t',
        }
    }
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "tsv" => Ok(TableFormat::Tsv),
            other => Err(format!("unknown format '{other}' (expected csv or tsv)")),
        }
    }
}

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits in plain
/// positional notation.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let magnitude = if x == 0.0 { 0 } else { x.abs().log10().floor() as i32 };
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can leave "-0.000…"
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// `points` evenly spaced values from 0 to 1 inclusive.
pub fn uniform_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 points, got {points}")));
    }
    let last = (points - 1) as f64;
    Ok((0..points).map(|k| k as f64 / last).collect())
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(Error::InvalidGrid(format!("value {bad} outside [0, 1]")));
    }
    if let Some(w) = grid.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!(
            "values must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRequest {
    pub scenario: ChannelScenario,
    pub grid: Vec<f64>,
    pub output_path: PathBuf,
    pub format: TableFormat,
}

impl SweepRequest {
    /// Request on the default 401-point grid.
    pub fn new(scenario: ChannelScenario, output_path: impl Into<PathBuf>) -> Self {
        Self {
            scenario,
            grid: uniform_grid(DEFAULT_POINTS).expect("default grid"),
            output_path: output_path.into(),
            format: TableFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub r: f64,
    pub delta: f64,
    pub separable: bool,
    pub oracle_nu: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Evaluates every grid point. Rows come back in grid order regardless of
    /// how the work is scheduled.
    pub fn compute(scenario: &ChannelScenario, grid: &[f64]) -> Result<Self> {
        validate_grid(grid)?;
        let rows = grid
            .par_iter()
            .map(|&r| {
                let v = verdict(&evolve(scenario, ChannelTime::new(r)?))?;
                Ok(SweepRow {
                    r,
                    delta: v.delta,
                    separable: v.separable,
                    oracle_nu: v.oracle_nu,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    pub fn to_table(&self, format: TableFormat) -> String {
        let d = format.delimiter();
        let mut out = format!("r{d}delta{d}separable{d}oracle_nu\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{}{d}{}{d}{}{d}{}",
                format_number(row.r),
                format_number(row.delta),
                row.separable,
                format_number(row.oracle_nu)
            );
        }
        out
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Evaluates the sweep and writes it to `request.output_path`.
pub fn run_sweep(request: &SweepRequest) -> Result<SweepResult> {
    let result = SweepResult::compute(&request.scenario, &request.grid)?;
    write_file(&request.output_path, &result.to_table(request.format))?;
    Ok(result)
}

/// Parameters of the two curves compared in the thermal-versus-squeezed figure.
pub const FIGURE1_S_C: f64 = 1.0;
pub const FIGURE1_N_BAR: f64 = 1.0;
pub const FIGURE1_S_E1: f64 = 0.5;

/// Thermal reservoirs on both modes versus a squeezed reservoir on mode `a`.
pub fn figure1_scenarios() -> (ChannelScenario, ChannelScenario) {
    let system = TwoModeSqueezedSpec::new(FIGURE1_S_C).expect("valid");
    let thermal = EnvironmentModeSpec::thermal(FIGURE1_N_BAR).expect("valid");
    let squeezed = EnvironmentModeSpec::new(FIGURE1_N_BAR, FIGURE1_S_E1, 0.0).expect("valid");
    (
        ChannelScenario::symmetric(system, thermal),
        ChannelScenario::new(system, squeezed, thermal),
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Figure1Row {
    pub r: f64,
    pub delta_thermal: f64,
    pub delta_squeezed: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Figure1Table {
    pub rows: Vec<Figure1Row>,
}

impl Figure1Table {
    pub fn compute(points: usize) -> Result<Self> {
        let grid = uniform_grid(points)?;
        let (thermal, squeezed) = figure1_scenarios();
        let th = SweepResult::compute(&thermal, &grid)?;
        let sq = SweepResult::compute(&squeezed, &grid)?;
        let rows = th
            .rows
            .iter()
            .zip(&sq.rows)
            .map(|(a, b)| Figure1Row {
                r: a.r,
                delta_thermal: a.delta,
                delta_squeezed: b.delta,
            })
            .collect();
        Ok(Self { rows })
    }

    pub fn to_table(&self, format: TableFormat) -> String {
        let d = format.delimiter();
        let mut out = format!("r{d}delta_thermal{d}delta_squeezed\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{}{d}{}{d}{}",
                format_number(row.r),
                format_number(row.delta_thermal),
                format_number(row.delta_squeezed)
            );
        }
        out
    }

    pub fn write(&self, path: &Path, format: TableFormat) -> Result<()> {
        write_file(path, &self.to_table(format))
    }
}
