//! Command line flags and the validated run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use starcat_core::linalg::is_prime;
use starcat_core::presented::DEFAULT_LENGTH_CAP;

use crate::CliError;

/// Seed used by randomized cross-checks unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 0x5e_ed0f_57a2;

#[derive(Parser, Debug, Clone)]
#[command(name = "starcat", version, about = "Exact verification suites for star algebras and their birepresentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// number of leaves of the star graph
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,

    /// largest n accepted by any command
    #[arg(long = "n-bound", global = true, default_value_t = 5)]
    pub n_bound: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// also write the JSON report to this file
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    /// `rational`, or `prime(p)` to add a randomized cross-check modulo p
    #[arg(long, global = true, default_value = "rational")]
    pub field: FieldMode,

    /// longest word examined by the rewriting system
    #[arg(long = "length-cap", global = true, default_value_t = DEFAULT_LENGTH_CAP)]
    pub length_cap: usize,

    /// worker threads; STARCAT_THREADS takes precedence
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// seed for randomized cross-checks
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// algebra dimensions, the biideal, the dimension identity and annihilation
    Verify,
    /// Hom dimensions between Reg, F_0, …, F_n with closed-form expectations
    Homtable {
        #[arg(long, value_enum, default_value_t = AlgebraKind::Star)]
        algebra: AlgebraKind,
    },
    /// one class per set partition, with certificates
    Classify {
        /// cross-check against the presented colimit when n is at most this
        #[arg(long = "presentation-bound", default_value_t = 3)]
        presentation_bound: usize,
    },
    /// s-modifications, uniqueness up to scalar and the χ invariant
    Modcheck,
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
        /// presentation file for `naturality`
        #[arg(long)]
        data: Option<PathBuf>,
        /// partition for `colimit`, e.g. "{0}{1,2}{3}"
        #[arg(long)]
        partition: Option<String>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    Zigzag,
    Star,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoKind {
    /// the coequalizer with infinite-dimensional End
    Counterexample,
    /// the naturality failure for the three-vertex algebra B
    Naturality,
    /// the presentation of a colimit category C^WR(P)
    Colimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMode {
    Rational,
    Prime(u64),
}

impl FromStr for FieldMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") || s == "Q" {
            return Ok(FieldMode::Rational);
        }
        let inner = s
            .strip_prefix("prime(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("prime:"))
            .or_else(|| s.strip_prefix("prime="))
            .ok_or_else(|| format!("expected `rational` or `prime(p)`, got `{s}`"))?;
        let p: u64 = inner.trim().parse().map_err(|_| format!("`{inner}` is not a number"))?;
        Ok(FieldMode::Prime(p))
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => write!(f, "rational"),
            FieldMode::Prime(p) => write!(f, "prime({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub n_bound: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub field: FieldMode,
    pub length_cap: usize,
    pub parallelism: usize,
    pub seed: u64,
}

impl RunConfig {
    /// Validates the flags. `threads_env` is the value of `STARCAT_THREADS`.
    pub fn from_cli(cli: Cli, threads_env: Option<&str>) -> Result<RunConfig, CliError> {
        if cli.n == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        if cli.n > cli.n_bound {
            return Err(CliError::Usage(format!("--n {} exceeds the bound {} (raise --n-bound)", cli.n, cli.n_bound)));
        }
        if cli.length_cap < 4 {
            return Err(CliError::Usage("--length-cap must be at least 4".into()));
        }
        if let FieldMode::Prime(p) = cli.field {
            if p <= 2 || !is_prime(p) || p >= 1 << 62 {
                return Err(CliError::Usage(format!("prime({p}): need an odd prime below 2^62")));
            }
        }
        let parallelism = match threads_env.map(str::trim).filter(|s| !s.is_empty()) {
            Some(s) => s
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| CliError::Usage(format!("STARCAT_THREADS={s} is not a positive integer")))?,
            None => match cli.threads {
                Some(0) => return Err(CliError::Usage("--threads must be positive".into())),
                Some(t) => t,
                None => std::thread::available_parallelism().map(|t| t.get()).unwrap_or(1),
            },
        };
        Ok(RunConfig {
            command: cli.command,
            n: cli.n,
            n_bound: cli.n_bound,
            output: cli.json,
            format: cli.format,
            field: cli.field,
            length_cap: cli.length_cap,
            parallelism,
            seed: cli.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
        RunConfig::from_cli(cli, None)
    }

    #[test]
    fn defaults() {
        let c = parse(&["starcat", "verify"]).unwrap();
        assert_eq!((c.n, c.format, c.field, c.length_cap), (3, Format::Text, FieldMode::Rational, DEFAULT_LENGTH_CAP));
        assert_eq!(c.seed, DEFAULT_SEED);
    }

    #[test]
    fn field_modes() {
        assert_eq!("prime(7)".parse::<FieldMode>().unwrap(), FieldMode::Prime(7));
        assert_eq!("prime:101".parse::<FieldMode>().unwrap(), FieldMode::Prime(101));
        assert!("real".parse::<FieldMode>().is_err());
        assert!(parse(&["starcat", "verify", "--field", "prime(2)"]).is_err());
        assert!(parse(&["starcat", "verify", "--field", "prime(9)"]).is_err());
        assert!(parse(&["starcat", "verify", "--field", "prime(11)"]).is_ok());
    }

    #[test]
    fn bounds() {
        assert!(parse(&["starcat", "classify", "--n", "0"]).is_err());
        assert!(parse(&["starcat", "classify", "--length-cap", "3"]).is_err());
        assert!(parse(&["starcat", "classify", "--n", "6"]).is_err());
        assert!(parse(&["starcat", "classify", "--n", "6", "--n-bound", "6"]).is_ok());
    }

    #[test]
    fn env_overrides_threads() {
        let cli = Cli::try_parse_from(["starcat", "classify", "--threads", "2"]).unwrap();
        assert_eq!(RunConfig::from_cli(cli.clone(), Some("5")).unwrap().parallelism, 5);
        assert_eq!(RunConfig::from_cli(cli.clone(), None).unwrap().parallelism, 2);
        assert!(RunConfig::from_cli(cli, Some("zero")).is_err());
    }
}
