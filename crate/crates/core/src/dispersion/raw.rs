use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use num_complex::Complex64;

use super::{ComplexSpectrum, FrequencyGrid};
use crate::error::{Error, Result};

/// Relative slack when matching grid edges against the tabulated band, so a
/// grid built from the same Hz endpoints survives the 2π round trip.
const EDGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawDataRow {
    pub frequency_hz: f64,
    pub eps_real: f64,
    /// Loss `ε''`, nonnegative.
    pub eps_imag: f64,
}

/// Measured permittivity, ascending in frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataTable {
    rows: Vec<RawDataRow>,
}

impl RawDataTable {
    pub fn new(rows: Vec<RawDataRow>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InvalidData(format!(
                "need at least 2 rows, got {}",
                rows.len()
            )));
        }
        for (i, r) in rows.iter().enumerate() {
            if !(r.frequency_hz.is_finite() && r.frequency_hz > 0.0) {
                return Err(Error::InvalidData(format!(
                    "row {}: frequency must be positive, got {}",
                    i + 1,
                    r.frequency_hz
                )));
            }
            if !r.eps_real.is_finite() || !r.eps_imag.is_finite() || r.eps_imag < 0.0 {
                return Err(Error::InvalidData(format!(
                    "row {}: permittivity must be finite with nonnegative loss",
                    i + 1
                )));
            }
        }
        if let Some(i) = rows
            .windows(2)
            .position(|w| w[1].frequency_hz <= w[0].frequency_hz)
        {
            return Err(Error::InvalidData(format!(
                "row {}: frequencies must be strictly increasing",
                i + 2
            )));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[RawDataRow] {
        &self.rows
    }

    pub fn min_frequency(&self) -> f64 {
        self.rows[0].frequency_hz
    }

    pub fn max_frequency(&self) -> f64 {
        self.rows[self.rows.len() - 1].frequency_hz
    }

    /// Reads `frequency_hz, eps_real, eps_imag` records. A header row is
    /// recognised by a non-numeric first field.
    pub fn from_csv_reader<R: Read>(reader: R) -> std::result::Result<Self, RawReadError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut rows = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let record = record?;
            if record.iter().all(str::is_empty) {
                continue;
            }
            if idx == 0 && record.get(0).is_some_and(|t| t.parse::<f64>().is_err()) {
                continue;
            }
            if record.len() != 3 {
                return Err(Error::InvalidData(format!(
                    "line {}: expected 3 columns, found {}",
                    idx + 1,
                    record.len()
                ))
                .into());
            }
            let field = |k: usize| -> Result<f64> {
                record[k].parse::<f64>().map_err(|_| {
                    Error::InvalidData(format!(
                        "line {}: column {} is not a number: {:?}",
                        idx + 1,
                        k + 1,
                        &record[k]
                    ))
                })
            };
            rows.push(RawDataRow {
                frequency_hz: field(0)?,
                eps_real: field(1)?,
                eps_imag: field(2)?,
            });
        }
        Ok(Self::new(rows)?)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_csv_reader(file).map_err(|e| match e {
            RawReadError::Csv(source) => Error::Csv {
                path: path.to_path_buf(),
                source,
            },
            RawReadError::Table(err) => err,
        })
    }
}

/// Failure while reading a raw-data CSV stream.
#[derive(Debug, thiserror::Error)]
pub enum RawReadError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Table(#[from] Error),
}

/// Interpolates `ε'` and `ε''` linearly in log-frequency onto `grid`.
pub fn interp_raw_data(table: &RawDataTable, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    let (lo, hi) = (table.min_frequency(), table.max_frequency());
    let rows = table.rows();
    let mut values = Vec::with_capacity(grid.len());
    for &omega in grid.omegas() {
        let f = omega / (2.0 * PI);
        if f < lo * (1.0 - EDGE_SLACK) || f > hi * (1.0 + EDGE_SLACK) {
            return Err(Error::OutOfRange {
                frequency_hz: f,
                min_hz: lo,
                max_hz: hi,
            });
        }
        let f = f.clamp(lo, hi);
        // first row strictly above f, bounded so k is a valid segment start
        let upper = rows
            .partition_point(|r| r.frequency_hz <= f)
            .clamp(1, rows.len() - 1);
        let (a, b) = (rows[upper - 1], rows[upper]);
        let t = (f.ln() - a.frequency_hz.ln()) / (b.frequency_hz.ln() - a.frequency_hz.ln());
        let re = a.eps_real + t * (b.eps_real - a.eps_real);
        let loss = a.eps_imag + t * (b.eps_imag - a.eps_imag);
        values.push(Complex64::new(re, -loss));
    }
    ComplexSpectrum::new(grid.clone(), values)
}
