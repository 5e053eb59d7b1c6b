//! Command-line parameters and the optional JSON config file beneath them.
//!
//! Every subcommand accepts the same flattened parameter set. Values given on
//! the command line win over values from `--config`; afterwards each
//! subcommand rejects parameters that do not apply to it, so a stray
//! `--alpha` on `poly --family bessel` is a usage error rather than being
//! silently ignored.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "relheat", version, about = "Relativistic heat polynomials and square-root evolution solvers")]
pub struct Cli {
    /// JSON file with parameter defaults, keyed by long flag name.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Poly,
    Verify,
    Evolve,
    Figures,
    Expand,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact coefficients of a polynomial family as JSON.
    Poly(Params),
    /// Run an identity or invariant suite; exit 1 on any failure.
    Verify(Params),
    /// Solve an evolution problem on a grid and write CSV.
    Evolve(Params),
    /// Write the data behind figures 1-3 at t = 0, 1, 2.
    Figures(Params),
    /// Coefficients of a function in relativistic heat polynomials.
    Expand(Params),
}

impl Command {
    pub fn split(self) -> (CommandKind, Params) {
        match self {
            Command::Poly(p) => (CommandKind::Poly, p),
            Command::Verify(p) => (CommandKind::Verify, p),
            Command::Evolve(p) => (CommandKind::Evolve, p),
            Command::Figures(p) => (CommandKind::Figures, p),
            Command::Expand(p) => (CommandKind::Expand, p),
        }
    }
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    Bessel,
    Hkdf,
    Rnp,
    Rhp,
    GenAb,
    GenLk,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Polynomials,
    Stable,
    Quadrature,
    Moments,
    Evolution,
    Expansion,
    Dirac,
    All,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Equation {
    SqrtDrift,
    RelHeat,
    GenAb,
    GenLk,
    Telegrapher,
    Dirac,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Method {
    /// Lévy-convolution quadrature in real space.
    #[default]
    Convolution,
    /// Symbol evolution in Fourier space.
    Spectral,
    /// The dedicated Gaussian solvers.
    Closed,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum IcArg {
    #[default]
    Gaussian,
    Monomial,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum GeneratorArg {
    #[default]
    Factorized,
    Halved,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Deserialize, Debug, Clone, Default, PartialEq)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Params {
    /// Polynomial family (poly).
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Verification suite (verify).
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Evolution equation (evolve).
    #[arg(long, value_enum)]
    pub equation: Option<Equation>,
    /// Solution route for the scalar equations (evolve).
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Built-in initial condition (evolve).
    #[arg(long, value_enum)]
    pub ic: Option<IcArg>,
    /// CSV file `x,F` on a uniform grid, used as tabulated data (evolve, expand).
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Dirac generator convention (evolve --equation dirac).
    #[arg(long, value_enum)]
    pub generator: Option<GeneratorArg>,
    /// Which figure to reproduce (figures).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: Option<u8>,
    /// Polynomial index, or monomial degree for `--ic monomial`.
    #[arg(long)]
    pub n: Option<u32>,
    /// Largest index checked or expanded (verify, expand).
    #[arg(long)]
    pub nmax: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Power of the derivative inside the fractional symbol (gen_lk).
    #[arg(long)]
    pub mu: Option<u32>,
    /// Rational (`p/q` or decimal) for poly, real for evolve.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<f64>,
    /// Comma-separated polynomial coefficients, constant term first (expand).
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    /// Number of grid points, ends included.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Output file (poly, evolve, expand) or directory (figures). Defaults to stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

macro_rules! each_field {
    ($m:ident) => {
        $m!(
            family, suite, equation, method, ic, input, generator, which, n, nmax, l, k, mu, alpha, beta, t, y, poly,
            x_min, x_max, points, rel_tol, abs_tol, out, format
        )
    };
}

impl Params {
    /// Fills every parameter left unset on the command line from `file`.
    pub fn merged_over(self, file: Params) -> Params {
        macro_rules! merge {
            ($($f:ident),*) => { Params { $($f: self.$f.or(file.$f)),* } };
        }
        each_field!(merge)
    }

    /// Flag names of the parameters that are set.
    pub fn set_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        macro_rules! collect {
            ($($f:ident),*) => { $(if self.$f.is_some() { names.push(flag_name(stringify!($f))); })* };
        }
        each_field!(collect);
        names
    }

    /// Usage error naming every set parameter outside `allowed`.
    pub fn only(&self, context: &str, allowed: &[&str]) -> Result<(), CliError> {
        let stray: Vec<String> =
            self.set_names().into_iter().filter(|n| !allowed.contains(n)).map(|n| format!("--{n}")).collect();
        if stray.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{} not valid for {context}", stray.join(", "))))
        }
    }
}

fn flag_name(field: &'static str) -> &'static str {
    match field {
        "x_min" => "x-min",
        "x_max" => "x-max",
        "rel_tol" => "rel-tol",
        "abs_tol" => "abs-tol",
        other => other,
    }
}

pub fn load_config(path: &Path) -> Result<Params, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

pub fn require<T: Clone>(value: &Option<T>, flag: &str, context: &str) -> Result<T, CliError> {
    value.clone().ok_or_else(|| CliError::Usage(format!("--{flag} is required for {context}")))
}
