//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid arguments, 2 computation-domain error,
//! 3 I/O error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::decoherence::{evolve, ChannelScenario, ChannelTime};
use crate::error::Error;
use crate::gaussian::{EnvironmentModeSpec, TwoModeSqueezedSpec};
use crate::separability::{separation_time, verdict, Lifetime};
use crate::sweep::{
    format_number, run_sweep, uniform_grid, Figure1Table, SweepRequest, TableFormat,
    DEFAULT_POINTS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_ARGS: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "squeezed-bath",
    version,
    about = "Entanglement of two-mode squeezed states in squeezed thermal reservoirs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate delta, verdict and PPT eigenvalue on a grid of normalised times
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Number of grid points on [0, 1]
        #[arg(long)]
        points: Option<usize>,
        /// Output file
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv or tsv
        #[arg(long)]
        format: Option<TableFormat>,
    },
    /// Print the normalised time at which the state becomes separable
    Lifetime {
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Separability of the state at a single normalised time
    Check {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Normalised time in [0, 1]
        #[arg(long, allow_hyphen_values = true)]
        r: Option<f64>,
    },
    /// Thermal versus one-mode-squeezed reservoir curves (s_c = 1, n_bar = 1, s_e1 = 0.5)
    Figure1 {
        /// Output file
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long, default_value = "csv")]
        format: TableFormat,
    },
}

#[derive(Args, Debug, Default)]
struct ScenarioArgs {
    /// key=value scenario file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Two-mode squeezing of the initial state
    #[arg(long, allow_hyphen_values = true)]
    sc: Option<f64>,
    /// Mean thermal photon number of both reservoirs
    #[arg(long, allow_hyphen_values = true)]
    nbar: Option<f64>,
    /// Squeezing of the reservoir of mode a
    #[arg(long, allow_hyphen_values = true)]
    se1: Option<f64>,
    /// Squeezing of the reservoir of mode b
    #[arg(long, allow_hyphen_values = true)]
    se2: Option<f64>,
    /// Squeezing phase of the reservoir of mode a
    #[arg(long, allow_hyphen_values = true)]
    phi1: Option<f64>,
    /// Squeezing phase of the reservoir of mode b
    #[arg(long, allow_hyphen_values = true)]
    phi2: Option<f64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_INVALID_ARGS,
            CliError::Core(Error::Io { .. }) => EXIT_IO,
            CliError::Core(e) if e.is_invalid_input() => EXIT_INVALID_ARGS,
            CliError::Core(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

const CONFIG_KEYS: &[&str] = &[
    "sc", "nbar", "se1", "se2", "phi1", "phi2", "r", "points", "out", "format",
];

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
        let key = key.trim().trim_start_matches("--");
        if !CONFIG_KEYS.contains(&key) {
            return Err(format!("line {}: unknown key '{key}'", lineno + 1));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Config(BTreeMap::new()));
        };
        let text = fs::read_to_string(path).map_err(|source| {
            CliError::Core(Error::Io {
                path: path.to_path_buf(),
                source,
            })
        })?;
        parse_config(&text)
            .map(Config)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    fn value<T: std::str::FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key '{key}': {e}"))),
        }
    }

    fn required<T: std::str::FromStr>(&self, key: &str, flag: Option<T>) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.value(key, flag)?
            .ok_or_else(|| CliError::Usage(format!("missing required --{key}")))
    }
}

fn build_scenario(args: &ScenarioArgs, cfg: &Config) -> Result<ChannelScenario, CliError> {
    let sc = cfg.required("sc", args.sc)?;
    let nbar = cfg.required("nbar", args.nbar)?;
    let se1 = cfg.value("se1", args.se1)?.unwrap_or(0.0);
    let se2 = cfg.value("se2", args.se2)?.unwrap_or(0.0);
    let phi1 = cfg.value("phi1", args.phi1)?.unwrap_or(0.0);
    let phi2 = cfg.value("phi2", args.phi2)?.unwrap_or(0.0);
    Ok(ChannelScenario::new(
        TwoModeSqueezedSpec::new(sc)?,
        EnvironmentModeSpec::new(nbar, se1, phi1)?,
        EnvironmentModeSpec::new(nbar, se2, phi2)?,
    ))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| {
        CliError::Core(Error::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        })
    };
    match cli.command {
        Command::Sweep {
            scenario,
            points,
            out: path,
            format,
        } => {
            let cfg = Config::load(scenario.config.as_deref())?;
            let scen = build_scenario(&scenario, &cfg)?;
            let points = cfg.value("points", points)?.unwrap_or(DEFAULT_POINTS);
            let path: PathBuf = cfg.required("out", path)?;
            let format = cfg.value("format", format)?.unwrap_or_default();
            let request = SweepRequest {
                scenario: scen,
                grid: uniform_grid(points)?,
                output_path: path,
                format,
            };
            let result = run_sweep(&request)?;
            writeln!(
                out,
                "wrote {} rows to {}",
                result.rows.len(),
                request.output_path.display()
            )
            .map_err(io)?;
        }
        Command::Lifetime { scenario } => {
            let cfg = Config::load(scenario.config.as_deref())?;
            let scen = build_scenario(&scenario, &cfg)?;
            let line = match separation_time(&scen)? {
                Lifetime::Separates(r) => format_number(r),
                Lifetime::NeverSeparable => "never-separable".to_string(),
                Lifetime::InitiallySeparable => "initially-separable".to_string(),
            };
            writeln!(out, "{line}").map_err(io)?;
        }
        Command::Check { scenario, r } => {
            let cfg = Config::load(scenario.config.as_deref())?;
            let scen = build_scenario(&scenario, &cfg)?;
            let r = cfg.required("r", r)?;
            let v = verdict(&evolve(&scen, ChannelTime::new(r)?))?;
            writeln!(out, "delta = {}", format_number(v.delta)).map_err(io)?;
            writeln!(
                out,
                "verdict = {}",
                if v.separable { "separable" } else { "entangled" }
            )
            .map_err(io)?;
            writeln!(out, "oracle_nu = {}", format_number(v.oracle_nu)).map_err(io)?;
        }
        Command::Figure1 {
            out: path,
            points,
            format,
        } => {
            let table = Figure1Table::compute(points)?;
            table.write(&path, format)?;
            writeln!(out, "wrote {} rows to {}", table.rows.len(), path.display()).map_err(io)?;
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID_ARGS
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let map = parse_config("# scenario\nsc = 1\n--nbar=2 # trailing\n\nse1=0.5\n").unwrap();
        assert_eq!(map["sc"], "1");
        assert_eq!(map["nbar"], "2");
        assert_eq!(map["se1"], "0.5");
        assert!(parse_config("bogus=1").is_err());
        assert!(parse_config("sc 1").is_err());
    }

    #[test]
    fn flags_override_config() {
        let cfg = Config(parse_config("sc=2\nnbar=1").unwrap());
        let args = ScenarioArgs {
            sc: Some(0.5),
            ..Default::default()
        };
        let scen = build_scenario(&args, &cfg).unwrap();
        assert_eq!(scen.system.s_c(), 0.5);
        assert_eq!(scen.env_a.n_bar(), 1.0);
        assert_eq!(scen.env_b.s_e(), 0.0);
    }

    #[test]
    fn missing_required_flag() {
        let cfg = Config(BTreeMap::new());
        let err = build_scenario(&ScenarioArgs::default(), &cfg).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INVALID_ARGS);
    }

    #[test]
    fn exit_code_mapping() {
        let domain = CliError::Core(Error::Unphysical { min_nu: 0.5 });
        assert_eq!(domain.exit_code(), EXIT_DOMAIN);
        let restricted = CliError::Core(Error::Restriction("phase"));
        assert_eq!(restricted.exit_code(), EXIT_DOMAIN);
        let io = CliError::Core(Error::Io {
            path: PathBuf::from("x"),
            source: std::io::Error::other("boom"),
        });
        assert_eq!(io.exit_code(), EXIT_IO);
        assert_eq!(CliError::Core(Error::NonFinite { name: "r", value: f64::NAN }).exit_code(), EXIT_INVALID_ARGS);
    }

    #[test]
    fn run_captures_output() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["squeezed-bath", "lifetime", "--sc", "1", "--nbar", "0"], &mut out, &mut err);
        assert_eq!(code, EXIT_OK);
        assert_eq!(String::from_utf8(out).unwrap(), "never-separable\n");
        assert!(err.is_empty());
    }
}
