use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use debyefit::Algorithm;
use debyefit_cli::run::write_output;
use debyefit_cli::{run_file, run_source, CliError, CliOptions, RunSummary};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Optimizer {
    Pso,
    De,
    Da,
}

impl From<Optimizer> for Algorithm {
    fn from(o: Optimizer) -> Self {
        match o {
            Optimizer::Pso => Algorithm::ParticleSwarm,
            Optimizer::De => Algorithm::DifferentialEvolution,
            Optimizer::Da => Algorithm::DualAnnealing,
        }
    }
}

/// Fit multi-pole Debye expansions to dispersive material commands.
#[derive(Debug, Parser)]
#[command(name = "debyefit", version)]
struct Args {
    /// Input file of hashtag commands (standard input if omitted).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write `#material` / `#add_dispersion_debye` lines here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pso")]
    optimizer: Optimizer,
    /// Number of log-spaced frequencies across the band.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..))]
    grid_points: u64,
    /// Directory for spectrum and convergence CSV files.
    #[arg(long)]
    csv_dir: Option<PathBuf>,
    /// Suppress the per-material fit summary on stderr.
    #[arg(long)]
    quiet: bool,
}

fn run(args: &Args) -> Result<RunSummary, CliError> {
    let options = CliOptions {
        optimizer: args.optimizer.into(),
        grid_points: args.grid_points as usize,
        csv_dir: args.csv_dir.clone(),
        base_dir: None,
    };
    match &args.input {
        Some(path) => run_file(path, &options),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io { path: "<stdin>".into(), source: e })?;
            Ok(run_source(&text, &options))
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let summary = match run(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if !args.quiet {
        for out in &summary.outputs {
            let r = &out.report;
            eprintln!(
                "{}: {} poles, error {:.3}% (real {:.3}%, imaginary {:.3}%), {:.3} s, seed {}",
                out.material_line.rsplit(' ').next().unwrap_or_default(),
                r.expansion.pole_count(),
                r.err_total,
                r.err_real,
                r.err_imag,
                r.duration,
                r.seed_used
            );
        }
    }
    for d in &summary.diagnostics {
        eprintln!("error: {d}");
    }
    let written = match &args.output {
        Some(path) => write_output(path, &summary),
        None => {
            print!("{}", summary.render());
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(summary.exit_code() as u8)
}
