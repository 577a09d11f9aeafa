//! Command-line arguments and their validation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use monopole_core::HalfInt;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "monopole", version, about = "Spin-1/2 particle in a monopole field: enumeration, verification, radial solves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Allowed j for every charge k in {0, ±1/2, ..., ±k}.
    Enumerate,
    /// Run a verification suite and report residuals.
    Verify,
    /// Tabulate the radial amplitudes for one (k, j).
    Radial,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Enumerate => "enumerate",
            Command::Verify => "verify",
            Command::Radial => "radial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Wigner,
    Algebra,
    Jmin,
    Gauge,
    Currents,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Wigner => "wigner",
            Suite::Algebra => "algebra",
            Suite::Jmin => "jmin",
            Suite::Gauge => "gauge",
            Suite::Currents => "currents",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Raw flags. Quantum numbers stay strings until validated.
#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Charge k = eg as a fraction ("1/2", "-3/2", "2"); the largest |k| for `enumerate`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Total angular momentum j as a fraction.
    #[arg(long, global = true)]
    pub j: Option<String>,
    /// Magnetic quantum number m as a fraction; restricts verification sweeps.
    #[arg(long = "m-num", global = true, allow_hyphen_values = true)]
    pub m_num: Option<String>,
    /// Energy.
    #[arg(long, global = true, default_value_t = 0.6, allow_hyphen_values = true)]
    pub eps: f64,
    /// Particle mass.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub mass: f64,
    /// Outer radius of the radial table.
    #[arg(long = "r-max", global = true, default_value_t = 5.0)]
    pub r_max: f64,
    /// Number of radial samples.
    #[arg(long, global = true, default_value_t = 50)]
    pub n: usize,
    /// Parity label delta = ±1 of the reduced radial pair.
    #[arg(long, global = true, default_value_t = 1, allow_hyphen_values = true)]
    pub delta: i8,
    #[arg(long, global = true, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Gauss-Legendre nodes in cos(theta).
    #[arg(long = "grid-theta", global = true, default_value_t = 64)]
    pub grid_theta: usize,
    /// Uniform nodes in phi (even).
    #[arg(long = "grid-phi", global = true, default_value_t = 64)]
    pub grid_phi: usize,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub k: Option<HalfInt>,
    pub j: Option<HalfInt>,
    pub m: Option<HalfInt>,
    pub eps: f64,
    pub mass: f64,
    pub r_max: f64,
    pub n: usize,
    pub delta: i8,
    pub suite: Suite,
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

/// Parses an exact fraction `[-+]digits[/digits]`, naming the first offending character.
pub fn parse_fraction(flag: &str, s: &str) -> Result<HalfInt, CliError> {
    let bad = |msg: String| CliError::Config(format!("invalid value '{s}' for --{flag}: {msg}"));
    if s.is_empty() {
        return Err(bad("empty fraction".into()));
    }
    let mut slash = None;
    for (pos, ch) in s.char_indices() {
        let ok = ch.is_ascii_digit() || (pos == 0 && (ch == '-' || ch == '+')) || (ch == '/' && slash.is_none() && pos > 0);
        if !ok {
            return Err(bad(format!("unexpected '{ch}' at position {}; expected a fraction such as 3/2", pos + 1)));
        }
        if ch == '/' {
            slash = Some(pos);
        }
    }
    s.trim_start_matches('+').parse::<HalfInt>().map_err(|e| bad(e.to_string()))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let o = &cli.opts;
        let frac = |flag: &str, v: &Option<String>| v.as_deref().map(|s| parse_fraction(flag, s)).transpose();
        let cfg = RunConfig {
            command: cli.command,
            k: frac("k", &o.k)?,
            j: frac("j", &o.j)?,
            m: frac("m-num", &o.m_num)?,
            eps: o.eps,
            mass: o.mass,
            r_max: o.r_max,
            n: o.n,
            delta: o.delta,
            suite: o.suite,
            grid_theta: o.grid_theta,
            grid_phi: o.grid_phi,
            tol: o.tol,
            format: o.format,
            out: o.out.clone(),
            seed: o.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let err = |m: String| Err(CliError::Config(m));
        if self.grid_theta < 8 || self.grid_phi < 8 {
            return err(format!("grid must be at least 8x8, got {}x{}", self.grid_theta, self.grid_phi));
        }
        if !self.grid_phi.is_multiple_of(2) {
            return err(format!("--grid-phi must be even, got {}", self.grid_phi));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return err(format!("--tol must be positive, got {}", self.tol));
        }
        if !self.eps.is_finite() || !self.mass.is_finite() {
            return err("--eps and --mass must be finite".into());
        }
        if self.delta != 1 && self.delta != -1 {
            return err(format!("--delta must be 1 or -1, got {}", self.delta));
        }
        if let Some(j) = self.j {
            if j.is_negative() {
                return err(format!("--j must be non-negative, got {j}"));
            }
        }
        match self.command {
            Command::Enumerate => {
                if let Some(k) = self.k {
                    if k.abs() < HalfInt::HALF {
                        return err(format!("enumerate needs |k| >= 1/2, got {k}"));
                    }
                }
            }
            Command::Radial => {
                if !(self.r_max > 0.0 && self.r_max.is_finite()) {
                    return err(format!("--r-max must be positive, got {}", self.r_max));
                }
                if self.n < 2 {
                    return err(format!("--n must be at least 2, got {}", self.n));
                }
                if self.mass <= 0.0 {
                    return err(format!("--mass must be positive, got {}", self.mass));
                }
            }
            Command::Verify => {}
        }
        Ok(())
    }
}
