//! Command-line front end. Every subcommand renders one dataset as CSV or JSON.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical failure or an
//! uncertified revival.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::dynamics;
use crate::error::Error;
use crate::lattice::Dimension;
use crate::reports::{self, Format, Hamiltonian, RunConfig, StateSpec};
use crate::spectral;
use crate::theta;
use crate::wigner::WignerSource;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fingauss", version, about = "Finite Gaussians, the finite oscillator and discrete Wigner functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Odd dimension d >= 3
    #[arg(long, global = true, default_value_t = 9, allow_negative_numbers = true)]
    pub d: i64,
    /// Gaussian width parameter
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub kappa: f64,
    /// Truncation threshold for wrapped sums and theta series
    #[arg(long, global = true, default_value_t = theta::DEFAULT_TERM_TOL)]
    pub term_tol: f64,
    /// Eigensolver residual bound relative to the matrix scale
    #[arg(long, global = true, default_value_t = spectral::DEFAULT_EIG_TOL)]
    pub eig_tol: f64,
    /// Relative tolerance for level merging and rational reconstruction
    #[arg(long, global = true, default_value_t = dynamics::DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    /// Largest denominator tried for level ratios
    #[arg(long, global = true, default_value_t = dynamics::DEFAULT_MAX_DEN)]
    pub max_den: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// g_kappa, g+_kappa and the naive sampled Gaussian
    Gauss,
    /// Imaginary parts of the eigenvalues of [Q, P], ascending
    Commutator,
    /// Uncertainty product of g_kappa for several dimensions
    Uncertainty {
        /// Comma-separated odd dimensions
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,9,11,13,15")]
        d_list: Vec<i64>,
    },
    /// Energy levels, descending, with consecutive gaps
    Spectrum {
        #[arg(long, value_enum, default_value_t = Hamiltonian::Osc)]
        ham: Hamiltonian,
    },
    /// Residual of g_1 as a quasi-eigenstate of the oscillator
    Quasi,
    /// Wigner function grid, rows n and columns m
    Wigner {
        #[arg(long, value_enum, default_value_t = WignerSource::Definition)]
        source: WignerSource,
        /// Also compare the defining sum with the closed form
        #[arg(long)]
        check: bool,
    },
    /// Revival period of an initial state, certified by direct evolution
    Revival {
        #[arg(long, value_enum, default_value_t = Hamiltonian::Free)]
        ham: Hamiltonian,
        /// gauss | delta <n> | coherent <alpha> <beta>
        #[arg(long, num_args = 1..=3, allow_negative_numbers = true, default_values_t = ["gauss".to_string()])]
        state: Vec<String>,
        /// Populations at or below this are ignored
        #[arg(long, default_value_t = dynamics::DEFAULT_WEIGHT_FLOOR)]
        weight_floor: f64,
        /// Accept a period whose autocorrelation reaches this value
        #[arg(long)]
        min_autocorr: Option<f64>,
    },
}

/// Result of a command before it is written out.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub body: String,
    /// Summary lines destined for stderr.
    pub diagnostics: Option<String>,
    pub status: i32,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(e) if is_usage(e) => EXIT_USAGE,
            CliError::Compute(_) | CliError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidDimension(_) | Error::InvalidParameter { .. } | Error::OutOfRange { .. } | Error::UnsupportedOrder { .. }
    )
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

fn parse_state(words: &[String]) -> Result<StateSpec, CliError> {
    let int = |s: &String| {
        s.parse::<i64>()
            .map_err(|_| CliError::Usage(format!("error: invalid integer `{s}` in --state")))
    };
    match words {
        [k] if k == "gauss" => Ok(StateSpec::Gauss),
        [k, n] if k == "delta" => Ok(StateSpec::Delta(int(n)?)),
        [k, a, b] if k == "coherent" => Ok(StateSpec::Coherent(int(a)?, int(b)?)),
        _ => Err(CliError::Usage(format!(
            "error: --state expects `gauss`, `delta <n>` or `coherent <alpha> <beta>`, got `{}`",
            words.join(" ")
        ))),
    }
}

impl GlobalArgs {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let cfg = RunConfig {
            d: Dimension::new(self.d)?,
            kappa: self.kappa,
            term_tol: self.term_tol,
            eig_tol: self.eig_tol,
            rel_tol: self.rel_tol,
            max_den: self.max_den,
            format: self.format,
            output_path: self.out.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Runs a parsed command and returns its output without writing it.
pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    let cfg = cli.global.config()?;
    let done = |t: reports::Table| Rendered {
        body: t.render(cfg.format),
        diagnostics: None,
        status: EXIT_OK,
    };
    Ok(match &cli.command {
        Command::Gauss => done(reports::gauss_table(&cfg)?),
        Command::Commutator => done(reports::commutator_table(&cfg)?),
        Command::Uncertainty { d_list } => {
            let dims = d_list.iter().map(|&d| Dimension::new(d)).collect::<Result<Vec<_>, _>>()?;
            done(reports::uncertainty_table(&cfg, &dims)?)
        }
        Command::Spectrum { ham } => done(reports::spectrum_table(&cfg, *ham)?),
        Command::Quasi => done(reports::quasi_table(&cfg)?),
        Command::Wigner { source, check } => {
            let grid = reports::wigner_grid(&cfg, *source)?;
            let summary = reports::wigner_summary(&cfg, &grid, *check)?;
            let failed = *check && summary.rows[0].last() == Some(&reports::Cell::Bool(false));
            Rendered {
                body: reports::wigner_table(&grid).render(cfg.format),
                diagnostics: Some(summary.render(cfg.format)),
                status: if failed { EXIT_NUMERICAL } else { EXIT_OK },
            }
        }
        Command::Revival {
            ham,
            state,
            weight_floor,
            min_autocorr,
        } => {
            let state = parse_state(state)?;
            let out = reports::revival_report(&cfg, *ham, state, *weight_floor, *min_autocorr)?;
            Rendered {
                body: out.table.render(cfg.format),
                diagnostics: out.diagnostic,
                status: if out.certified { EXIT_OK } else { EXIT_NUMERICAL },
            }
        }
    })
}

/// Parses `args` (program name first) and renders the result.
pub fn render<I, T>(args: I) -> Result<Rendered, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.render().to_string()))?;
    execute(&cli)
}

/// Full entry point: parse, compute, write. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = execute(&cli).and_then(|r| {
        match &cli.global.out {
            Some(path) => std::fs::write(path, &r.body).map_err(CliError::Io)?,
            None => std::io::stdout().write_all(r.body.as_bytes()).map_err(CliError::Io)?,
        }
        Ok(r)
    });
    match outcome {
        Ok(r) => {
            if let Some(diag) = &r.diagnostics {
                eprint!("{diag}");
                if !diag.ends_with('\n') {
                    eprintln!();
                }
            }
            r.status
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

/// Named argument lists whose output is checked in under `tests/golden/`.
pub fn golden_cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("gauss_d31_k1", vec!["gauss", "--d", "31", "--kappa", "1"]),
        ("gauss_d31_k3", vec!["gauss", "--d", "31", "--kappa", "3"]),
        ("gauss_d31_k1_3", vec!["gauss", "--d", "31", "--kappa", "0.3333333333333333"]),
        ("gauss_d3_k1", vec!["gauss", "--d", "3", "--kappa", "1"]),
        ("commutator_d15", vec!["commutator", "--d", "15"]),
        ("uncertainty_k1", vec!["uncertainty", "--kappa", "1", "--d-list", "3,5,7,9,11,13,15"]),
        ("spectrum_osc_d3", vec!["spectrum", "--d", "3", "--ham", "osc"]),
        ("spectrum_osc_d5", vec!["spectrum", "--d", "5", "--ham", "osc"]),
        ("spectrum_osc_d7", vec!["spectrum", "--d", "7", "--ham", "osc"]),
        ("spectrum_osc_d9", vec!["spectrum", "--d", "9", "--ham", "osc"]),
        ("spectrum_osc_d11", vec!["spectrum", "--d", "11", "--ham", "osc"]),
        ("spectrum_osc_d13", vec!["spectrum", "--d", "13", "--ham", "osc"]),
        ("spectrum_free_d5", vec!["spectrum", "--d", "5", "--ham", "free"]),
        ("quasi_d3", vec!["quasi", "--d", "3"]),
        ("quasi_d5", vec!["quasi", "--d", "5"]),
        ("quasi_d7", vec!["quasi", "--d", "7"]),
        ("quasi_d9", vec!["quasi", "--d", "9"]),
        ("quasi_d11", vec!["quasi", "--d", "11"]),
        ("wigner_d3_k1", vec!["wigner", "--d", "3", "--kappa", "1"]),
        ("wigner_d31_k4_3", vec!["wigner", "--d", "31", "--kappa", "1.3333333333333333"]),
        ("wigner_theta_d9", vec!["wigner", "--d", "9", "--source", "theta-form"]),
    ]
}

/// Renders every golden case with `fingauss` as the program name.
pub fn render_golden(args: &[&str]) -> Result<String, CliError> {
    let full = std::iter::once("fingauss").chain(args.iter().copied());
    Ok(render(full)?.body)
}
