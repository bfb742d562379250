use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::ispace::injcat::MAX_BOUND;

#[derive(Debug, Parser)]
#[command(name = "gammaspec", version, about = "Units of ring spectra, Γ-spaces and their Segal maps on finite simplicial models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub job: JobArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Run HR → Ω• → GL₁• → Γ-space → gl₁ for a ring and cross-check it.
    Gl1,
    /// Run the property suite (seeded) over the core modules.
    Suite,
    /// Homology of a homotopy colimit: a diagram file, or Ω•HR for a ring.
    Hocolim,
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Ring such as Z/6, F5 or F2[x]/x^2.
    #[arg(long, global = true, env = "GAMMASPEC_RING")]
    pub ring: Option<String>,
    /// Diagram in JSON table form.
    #[arg(long, global = true, value_name = "FILE", env = "GAMMASPEC_DIAGRAM")]
    pub diagram: Option<PathBuf>,
    /// Bound N of the injection category 𝕀≤N.
    #[arg(short = 'N', global = true, default_value_t = 3, env = "GAMMASPEC_N")]
    pub bound: usize,
    /// Simplicial truncation degree D.
    #[arg(short = 'D', global = true, default_value_t = 4, env = "GAMMASPEC_D")]
    pub truncation: usize,
    /// Largest n for which H(n⁺) is built.
    #[arg(long = "nmax", global = true, default_value_t = 3, env = "GAMMASPEC_NMAX")]
    pub n_max: usize,
    /// Highest homology degree checked; at most D − 2.
    #[arg(long = "kmax", global = true, default_value_t = 1, env = "GAMMASPEC_KMAX")]
    pub k_max: usize,
    #[arg(long, global = true, default_value_t = 42, env = "GAMMASPEC_SEED")]
    pub seed: u64,
    /// Where to write the JSON report.
    #[arg(long, global = true, value_name = "FILE", env = "GAMMASPEC_OUT")]
    pub out: Option<PathBuf>,
}

/// A validated job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JobConfig {
    pub command: Command,
    pub ring: Option<String>,
    pub diagram: Option<PathBuf>,
    pub bound: usize,
    pub truncation: usize,
    pub n_max: usize,
    pub k_max: usize,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl JobConfig {
    pub fn from_cli(cli: Cli) -> Result<JobConfig, Error> {
        let a = cli.job;
        let bad = |m: String| Err(Error::TruncationTooSmall(m));
        if a.truncation < 2 {
            return bad(format!("D = {} is below the minimum of 2", a.truncation));
        }
        if a.k_max + 2 > a.truncation {
            return bad(format!("--kmax {} exceeds D − 2 = {}", a.k_max, a.truncation - 2));
        }
        if a.bound == 0 || a.bound > MAX_BOUND {
            return Err(Error::Parse(format!("N must lie in 1..={MAX_BOUND}, got {}", a.bound)));
        }
        match cli.command {
            Command::Gl1 if a.ring.is_none() => return Err(Error::Parse("gl1 needs --ring".into())),
            Command::Gl1 if a.n_max < 2 => {
                return Err(Error::InsufficientGammaRange { needed: 2, available: a.n_max });
            }
            Command::Hocolim if a.ring.is_none() == a.diagram.is_none() => {
                return Err(Error::Parse("hocolim needs exactly one of --ring and --diagram".into()));
            }
            _ => {}
        }
        Ok(JobConfig {
            command: cli.command,
            ring: a.ring,
            diagram: a.diagram,
            bound: a.bound,
            truncation: a.truncation,
            n_max: a.n_max,
            k_max: a.k_max,
            seed: a.seed,
            out: a.out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<JobConfig, Error> {
        let mut full = vec!["gammaspec"];
        full.extend_from_slice(args);
        JobConfig::from_cli(Cli::try_parse_from(full).expect("clap accepts"))
    }

    #[test]
    fn defaults() {
        let c = parse(&["gl1", "--ring", "F5"]).unwrap();
        assert_eq!((c.bound, c.truncation, c.n_max, c.k_max, c.seed), (3, 4, 3, 1, 42));
    }

    #[test]
    fn kmax_is_bounded_by_the_truncation() {
        assert!(matches!(parse(&["gl1", "--ring", "F5", "--kmax", "3"]), Err(Error::TruncationTooSmall(_))));
        assert!(parse(&["gl1", "--ring", "F5", "--kmax", "3", "-D", "5"]).is_ok());
    }

    #[test]
    fn inputs_are_required() {
        assert!(parse(&["gl1"]).is_err());
        assert!(parse(&["hocolim"]).is_err());
        assert!(parse(&["hocolim", "--ring", "F5", "--diagram", "x.json"]).is_err());
        assert!(parse(&["suite"]).is_ok());
    }
}
