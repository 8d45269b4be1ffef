//! `#material` / `#add_dispersion_debye` output lines.

use std::path::PathBuf;

use debyefit::{DebyeExpansion, FitReport};

use crate::command::MaterialCommand;

/// Formats a fitted value for an output line.
///
/// Values in `[0.1, 1)` get four decimals (`0.6736`), values in `[1, 1e4)` and
/// `[1e-3, 0.1)` five significant digits (`2.8345`, `0.012346`), anything
/// else a four-decimal mantissa in exponent form (`4.3677e-10`).
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        return "0".to_string();
    }
    if !(1e-3..1e4).contains(&a) {
        return format!("{x:.4e}");
    }
    let decimals = if (0.1..1.0).contains(&a) {
        4
    } else {
        (4 - a.log10().floor() as i32).max(0) as usize
    };
    let s = format!("{x:.decimals$}");
    // rounding can carry into the next decade, e.g. 9999.96 -> "10000.0"
    if s.trim_start_matches('-').len() > 1 && s.parse::<f64>().is_ok_and(|v| v.abs() >= 1e4) {
        return format!("{x:.4e}");
    }
    s
}

/// Output of one fitted material command.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialOutput {
    pub material_line: String,
    pub dispersion_line: String,
    pub csv_paths: Vec<PathBuf>,
    pub report: FitReport,
}

pub fn material_line(cmd: &MaterialCommand, expansion: &DebyeExpansion) -> String {
    format!(
        "#material: {} {} {} {} {}",
        format_number(expansion.eps_inf()),
        cmd.sigma.text,
        cmd.mu_r.text,
        cmd.mag_loss.text,
        cmd.material_id
    )
}

pub fn dispersion_line(cmd: &MaterialCommand, expansion: &DebyeExpansion) -> String {
    let mut line = format!("#add_dispersion_debye: {}", expansion.pole_count());
    for p in expansion.poles() {
        line.push(' ');
        line.push_str(&format_number(p.delta_eps));
        line.push(' ');
        line.push_str(&format_number(p.tau));
    }
    line.push(' ');
    line.push_str(&cmd.material_id);
    line
}

/// A parsed `#material:` line.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialLine {
    pub eps_inf: f64,
    pub sigma: String,
    pub mu_r: String,
    pub mag_loss: String,
    pub id: String,
}

/// A parsed `#add_dispersion_debye:` line, poles as `(Δε, τ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionLine {
    pub poles: Vec<(f64, f64)>,
    pub id: String,
}

fn fields<'a>(line: &'a str, tag: &str) -> Result<Vec<&'a str>, String> {
    let rest = line
        .trim()
        .strip_prefix(tag)
        .ok_or_else(|| format!("line does not start with `{tag}`"))?;
    Ok(rest.split_whitespace().collect())
}

fn finite(tok: &str) -> Result<f64, String> {
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("not a finite number: {tok:?}"))
}

pub fn parse_material_line(line: &str) -> Result<MaterialLine, String> {
    let f = fields(line, "#material:")?;
    if f.len() != 5 {
        return Err(format!("expected 5 fields, found {}", f.len()));
    }
    for tok in &f[1..4] {
        finite(tok)?;
    }
    Ok(MaterialLine {
        eps_inf: finite(f[0])?,
        sigma: f[1].to_string(),
        mu_r: f[2].to_string(),
        mag_loss: f[3].to_string(),
        id: f[4].to_string(),
    })
}

pub fn parse_dispersion_line(line: &str) -> Result<DispersionLine, String> {
    let f = fields(line, "#add_dispersion_debye:")?;
    let n: usize = f
        .first()
        .and_then(|t| t.parse().ok())
        .ok_or("missing pole count")?;
    if f.len() != 2 * n + 2 {
        return Err(format!(
            "{n} poles need {} fields, found {}",
            2 * n + 2,
            f.len()
        ));
    }
    let poles = f[1..=2 * n]
        .chunks(2)
        .map(|pair| Ok((finite(pair[0])?, finite(pair[1])?)))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(DispersionLine {
        poles,
        id: f[2 * n + 1].to_string(),
    })
}
