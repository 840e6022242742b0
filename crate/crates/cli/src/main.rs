use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lagmono::commands::{cmd_classify, cmd_invariants, cmd_mf, cmd_word};
use lagmono::verify::verify_report;
use lagmono::{merge, CliError, Config, ReportDoc};
use lagmono_core::symgeo::Family;

/// Monodromy invariants of monotone Lagrangian tori in R^4.
#[derive(Debug, Parser)]
#[command(name = "lagmono", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config file (key = value lines, or a previous JSON report).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Loop samples (power of two, at least 64).
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the subgroup generated by e.g. `f0,f3` or `g-4,f1`.
    Classify {
        #[arg(default_value = "", allow_hyphen_values = true)]
        gens: String,
    },
    /// Twist number and spectrum of a generated subgroup.
    Invariants {
        #[arg(default_value = "", allow_hyphen_values = true)]
        gens: String,
        /// Divisibility of the Maslov class.
        #[arg(long, default_value_t = 2)]
        ml: i64,
    },
    /// Fixed class and m_f of the involution f_k.
    Mf {
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 2)]
        ml: i64,
    },
    /// Reduce a word in f and g, e.g. `g^3 f g^-5`.
    Word {
        #[arg(num_args = 0.., allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// Run the numerical verification for one torus family.
    Verify { family: Family },
    /// Merge JSON reports.
    Report {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

impl Cli {
    fn config(&self, family: Option<Family>) -> Result<Config, CliError> {
        let mut cfg = match &self.config {
            Some(path) => Config::load(path, family)?,
            None => Config::default(),
        };
        if let Some(b) = self.b {
            cfg.b = b;
        }
        if let Some(eps) = self.epsilon {
            cfg.epsilon = eps;
        }
        if let Some(n) = self.samples {
            cfg.loop_samples = n;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let line = |s: String| format!("{s}\n");
    match &cli.command {
        Command::Classify { gens } => cli.emit(&line(cmd_classify(gens)?))?,
        Command::Invariants { gens, ml } => cli.emit(&line(cmd_invariants(gens, *ml)?))?,
        Command::Mf { k, ml } => cli.emit(&line(cmd_mf(*k, *ml)?))?,
        Command::Word { word } => cli.emit(&line(cmd_word(&word.join(" "))?))?,
        Command::Verify { family } => {
            let doc = verify_report(*family, &cli.config(Some(*family))?);
            cli.emit(&doc.to_json())?;
            return Ok(doc.overall_pass);
        }
        Command::Report { paths } => {
            let docs = paths
                .iter()
                .map(|p| {
                    let text =
                        std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                    ReportDoc::from_json(&text)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let merged = merge(&docs)?;
            cli.emit(&merged.to_json())?;
            eprintln!("{}", merged.verdict);
            return Ok(merged.overall_pass);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
