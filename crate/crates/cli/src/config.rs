use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qch_core::hecke::HeckeSymmetry;
use qch_core::nc::{default_degree_bound, Algebra};
use qch_core::scalar::parse_scalar;
use qch_core::{Error, Result, Scalar};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "qch", version, about = "Quantum Cayley-Hamilton identities, orbits and line bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        target: VerifyTarget,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate the numeric coefficients and the generating-function verdict.
    Coeffs {
        target: CoeffsTarget,
        /// Largest p in the table.
        #[arg(long, default_value_t = 6)]
        max_p: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide which line bundles over an orbit are nontrivial.
    Orbit {
        target: OrbitTarget,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// Yang-Baxter, Hecke, evenness and closedness.
    Hecke,
    /// Cayley-Hamilton identity of the chosen algebra.
    Ch,
    /// Projector family of an orbit.
    Projectors,
    /// Cubic identity of the symmetric-square extension.
    Lplus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffsTarget {
    /// Every coefficient row plus the generating-function verdicts.
    Table,
    /// Only the generating-function verdicts.
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrbitTarget {
    /// Triviality of the bundle for each `--nu`.
    Bundles,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    /// `standard:n` or a Hecke symmetry JSON file.
    #[arg(long)]
    pub hecke: Option<String>,
    /// RE, REqh or Ugl.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Comma-separated roots.
    #[arg(long)]
    pub mu: Option<String>,
    /// Comma-separated bundle parameters.
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long, env = "QCH_DEGREE_BOUND")]
    pub degree_bound: Option<usize>,
    /// Orbit description JSON; explicit flags take precedence.
    #[arg(long)]
    pub orbit: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Orbit description file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitFile {
    pub algebra: String,
    pub hecke: String,
    pub mu: Vec<String>,
    pub degree_bound: Option<usize>,
}

/// Validated settings for `verify` and `orbit`.
#[derive(Debug)]
pub struct RunConfig {
    pub hecke: HeckeSymmetry,
    pub hecke_source: String,
    pub algebra: Algebra,
    pub mu: Option<Vec<Scalar>>,
    pub nu: Option<Vec<Scalar>>,
    pub degree_bound: usize,
}

/// `standard:n` or a file path.
pub fn load_hecke(source: &str) -> Result<HeckeSymmetry> {
    match source.strip_prefix("standard:") {
        Some(n) => {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Schema(format!("bad size in `{source}`")))?;
            HeckeSymmetry::standard(n)
        }
        None => HeckeSymmetry::load(Path::new(source)),
    }
}

pub fn parse_list(text: &str) -> Result<Vec<Scalar>> {
    text.split(',').map(|item| parse_scalar(item.trim())).collect()
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self> {
        let file: Option<OrbitFile> = match &args.orbit {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                Some(serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?)
            }
            None => None,
        };
        let hecke_source = args
            .hecke
            .clone()
            .or_else(|| file.as_ref().map(|f| f.hecke.clone()))
            .unwrap_or_else(|| "standard:2".to_string());
        let hecke = load_hecke(&hecke_source)?;
        let algebra = match args.algebra.as_deref().or(file.as_ref().map(|f| f.algebra.as_str())) {
            Some(tag) => tag.parse()?,
            None => Algebra::RE,
        };
        let mu = match (&args.mu, &file) {
            (Some(text), _) => Some(parse_list(text)?),
            (None, Some(f)) => Some(
                f.mu.iter()
                    .map(|m| parse_scalar(m))
                    .collect::<Result<Vec<_>>>()?,
            ),
            (None, None) => None,
        };
        let nu = args.nu.as_deref().map(parse_list).transpose()?;
        let degree_bound = args
            .degree_bound
            .or(file.as_ref().and_then(|f| f.degree_bound))
            .unwrap_or_else(|| {
                let p = match algebra {
                    Algebra::Ugl => hecke.n(),
                    _ => hecke.rank(),
                };
                default_degree_bound(p)
            });
        Ok(RunConfig {
            hecke,
            hecke_source,
            algebra,
            mu,
            nu,
            degree_bound,
        })
    }
}
