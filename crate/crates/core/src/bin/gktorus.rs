use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gktorus::cohomology::Degeneration;
use gktorus::runs::{self, exit_for_error, Exit, Outcome, RunOptions};
use gktorus::{Error, Result};

/// Generalized Kähler mapping tori: build, certify, compute.
#[derive(Parser)]
#[command(name = "gktorus", version)]
struct Cli {
    /// Time-grid size for pointwise certificates.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Residual tolerance for grid identities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inoue parameters (t0, p, P) for an integer matrix, or scan (m, n) ranges.
    SolveInoue {
        #[arg(required_unless_present = "enumerate")]
        file: Option<PathBuf>,
        #[arg(long, num_args = 4, value_names = ["M_LO", "M_HI", "N_LO", "N_HI"], allow_negative_numbers = true, conflicts_with = "file")]
        enumerate: Option<Vec<i64>>,
    },
    /// Assemble and certify a generalized Kähler structure.
    VerifyGk { config: PathBuf },
    /// Mapping-torus de Rham cohomology.
    Cohomology { config: PathBuf },
    /// CDGA cohomology, quasi-isomorphisms and the Jordan-block criteria.
    Formality { config: PathBuf },
    /// Borel E2 page and its collapse.
    Borel {
        config: PathBuf,
        /// Treat the sequence as degenerate at E2.
        #[arg(long, requires = "justification")]
        degenerate: bool,
        #[arg(long)]
        justification: Option<String>,
    },
    /// Every shipped example config.
    AllPaperChecks,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let opts = RunOptions { grid: cli.grid, tol: cli.tol };
    match &cli.command {
        Command::SolveInoue { file, enumerate } => match (file, enumerate) {
            (_, Some(r)) => runs::enumerate_inoue(r[0], r[1], r[2], r[3]),
            (Some(f), None) => runs::solve_inoue(&read(f)?),
            (None, None) => Err(Error::Invalid("a matrix file or --enumerate is required".into())),
        },
        Command::VerifyGk { config } => runs::verify_gk_config(&read(config)?, &opts),
        Command::Cohomology { config } => runs::cohomology_config(&read(config)?),
        Command::Formality { config } => runs::formality_config(&read(config)?),
        Command::Borel { config, degenerate, justification } => {
            let deg = if *degenerate {
                Degeneration::assumed(justification.as_deref().unwrap_or(""))?
            } else {
                Degeneration::NotAssumed
            };
            runs::borel_config(&read(config)?, deg, &opts)
        }
        Command::AllPaperChecks => runs::all_paper_checks(&opts),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("GKTORUS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { Exit::Usage.code() } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    configure_threads();
    let exit = match run(&cli) {
        Ok(out) => {
            print!("{}", out.report.render_text());
            if let Some(path) = &cli.json {
                let written = out.report.to_json().and_then(|s| {
                    std::fs::write(path, s).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
                });
                if let Err(e) = written {
                    eprintln!("error: {e}");
                    return ExitCode::from(Exit::Usage.code() as u8);
                }
            }
            out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for_error(&e)
        }
    };
    ExitCode::from(exit.code() as u8)
}
