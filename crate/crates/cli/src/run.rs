//! Drives the fitter for parsed commands and writes the artifacts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use debyefit::dispersion::{DEFAULT_GRID_POINTS, RawDataTable};
use debyefit::fitter::{target_spectrum, ERROR_FLOOR};
use debyefit::{eval_expansion, fit, Algorithm, ComplexSpectrum, FitConfig, FitReport, RelaxationModel};

use crate::command::{parse_command, MaterialCommand, ModelSpec};
use crate::error::CliError;
use crate::output::{dispersion_line, material_line, MaterialOutput};

#[derive(Debug, Clone, PartialEq)]
pub struct CliOptions {
    pub optimizer: Algorithm,
    pub grid_points: usize,
    /// Where `spectrum_<id>.csv` and `convergence_<id>.csv` go, if anywhere.
    pub csv_dir: Option<PathBuf>,
    /// Relative `#raw_data` paths resolve against this directory.
    pub base_dir: Option<PathBuf>,
}

impl Default for CliOptions {
    fn default() -> Self {
        Self {
            optimizer: Algorithm::ParticleSwarm,
            grid_points: DEFAULT_GRID_POINTS,
            csv_dir: None,
            base_dir: None,
        }
    }
}

fn build_model(cmd: &MaterialCommand, options: &CliOptions) -> Result<RelaxationModel, CliError> {
    Ok(match &cmd.model {
        ModelSpec::HavriliakNegami(p) => RelaxationModel::HavriliakNegami(*p),
        ModelSpec::Jonscher { .. } => {
            RelaxationModel::Jonscher(cmd.model.jonscher_params().expect("jonscher spec"))
        }
        ModelSpec::Crim(p) => RelaxationModel::Crim(p.clone()),
        ModelSpec::RawData(path) => {
            let path = match &options.base_dir {
                Some(base) if path.is_relative() => base.join(path),
                _ => path.clone(),
            };
            RelaxationModel::RawData(RawDataTable::from_csv_path(path)?)
        }
    })
}

/// Fits one command and formats its output lines, writing CSV artifacts when
/// `options.csv_dir` is set.
pub fn run_command(cmd: &MaterialCommand, options: &CliOptions) -> Result<MaterialOutput, CliError> {
    let model = build_model(cmd, options)?;
    let mut config = FitConfig::new(cmd.f_min, cmd.f_max, cmd.n_poles)
        .with_algorithm(options.optimizer)
        .with_grid_points(options.grid_points);
    config.seed = cmd.seed;
    let report = fit(&model, &config)?;

    let mut csv_paths = Vec::new();
    if let Some(dir) = &options.csv_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let target = target_spectrum(&model, &config)?;
        let fitted = eval_expansion(&report.expansion, target.grid());
        let spectrum = dir.join(format!("spectrum_{}.csv", cmd.material_id));
        write_spectrum_csv(&spectrum, &target, &fitted)?;
        let convergence = dir.join(format!("convergence_{}.csv", cmd.material_id));
        write_convergence_csv(&convergence, &report)?;
        csv_paths.push(spectrum);
        csv_paths.push(convergence);
    }

    Ok(MaterialOutput {
        material_line: material_line(cmd, &report.expansion),
        dispersion_line: dispersion_line(cmd, &report.expansion),
        csv_paths,
        report,
    })
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

/// Target and fitted spectra with pointwise relative errors in percent.
pub fn write_spectrum_csv(
    path: &Path,
    target: &ComplexSpectrum,
    fitted: &ComplexSpectrum,
) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::io(path, e.into());
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record([
        "frequency_hz",
        "eps_real_target",
        "eps_imag_target",
        "eps_real_fit",
        "eps_imag_fit",
        "rel_err_real",
        "rel_err_imag",
    ])
    .map_err(io)?;
    let rel = |fit: f64, t: f64| 100.0 * (fit - t).abs() / t.abs().max(ERROR_FLOOR);
    for (i, f) in target.grid().frequencies_hz().enumerate() {
        let (tr, ti) = (target.real(i), target.loss(i));
        let (fr, fi) = (fitted.real(i), fitted.loss(i));
        w.write_record(
            [f, tr, ti, fr, fi, rel(fr, tr), rel(fi, ti)].map(|v| v.to_string()),
        )
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_convergence_csv(path: &Path, report: &FitReport) -> Result<(), CliError> {
    report
        .write_convergence_csv(create(path)?)
        .map_err(|e| CliError::io(path, e))
}

/// A per-line failure while processing an input file.
#[derive(Debug)]
pub struct Diagnostic {
    pub line: usize,
    pub error: CliError,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

#[derive(Debug, Default)]
pub struct RunSummary {
    pub outputs: Vec<MaterialOutput>,
    pub diagnostics: Vec<Diagnostic>,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        self.diagnostics
            .iter()
            .map(|d| d.error.exit_code())
            .max()
            .unwrap_or(0)
    }

    /// Output text: two lines per material.
    pub fn render(&self) -> String {
        self.outputs
            .iter()
            .map(|o| format!("{}\n{}\n", o.material_line, o.dispersion_line))
            .collect()
    }
}

/// Processes hashtag lines in order. Blank lines and `--` comments are
/// skipped; a parse error stops processing, a fit error is recorded and the
/// next line is tried.
pub fn run_source(text: &str, options: &CliOptions) -> RunSummary {
    let mut summary = RunSummary::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("--") {
            continue;
        }
        let number = idx + 1;
        let cmd = match parse_command(line) {
            Ok(cmd) => cmd,
            Err(e) => {
                summary.diagnostics.push(Diagnostic {
                    line: number,
                    error: e.into(),
                });
                break;
            }
        };
        match run_command(&cmd, options) {
            Ok(out) => summary.outputs.push(out),
            Err(error) => summary.diagnostics.push(Diagnostic {
                line: number,
                error,
            }),
        }
    }
    summary
}

/// Reads `path` and runs every command in it. Relative `#raw_data` paths
/// resolve against the file's directory unless `options.base_dir` is set.
pub fn run_file(path: impl AsRef<Path>, options: &CliOptions) -> Result<RunSummary, CliError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut options = options.clone();
    if options.base_dir.is_none() {
        options.base_dir = path.parent().map(Path::to_path_buf);
    }
    Ok(run_source(&text, &options))
}

/// Writes the rendered output lines to `path`.
pub fn write_output(path: &Path, summary: &RunSummary) -> Result<(), CliError> {
    let mut w = create(path)?;
    w.write_all(summary.render().as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}
