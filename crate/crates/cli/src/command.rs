//! Hashtag material commands (`#havriliak_negami:` and friends).

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

use debyefit::dispersion::{
    CrimComponent, CrimParams, DebyePoleParams, HavriliakNegamiParams, JonscherParams,
};
use debyefit::PoleCount;

use crate::error::ParseError;

/// Numeric field carried through to the output exactly as written.
#[derive(Debug, Clone, PartialEq)]
pub struct PassThrough {
    pub text: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    HavriliakNegami(HavriliakNegamiParams),
    Jonscher {
        eps_inf: f64,
        a_p: f64,
        /// Reference frequency in Hz.
        f_p: f64,
        n_p: f64,
    },
    Crim(CrimParams),
    RawData(PathBuf),
}

impl ModelSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::HavriliakNegami(_) => "havriliak_negami",
            Self::Jonscher { .. } => "jonscher",
            Self::Crim(_) => "crim",
            Self::RawData(_) => "raw_data",
        }
    }

    pub(crate) fn jonscher_params(&self) -> Option<JonscherParams> {
        match *self {
            Self::Jonscher {
                eps_inf,
                a_p,
                f_p,
                n_p,
            } => Some(JonscherParams {
                eps_inf,
                a_p,
                omega_p: 2.0 * PI * f_p,
                n_p,
            }),
            _ => None,
        }
    }
}

/// One parsed material command.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialCommand {
    pub model: ModelSpec,
    pub f_min: f64,
    pub f_max: f64,
    /// Conductivity, S/m.
    pub sigma: PassThrough,
    pub mu_r: PassThrough,
    /// Magnetic loss, Ω/m.
    pub mag_loss: PassThrough,
    pub n_poles: PoleCount,
    pub material_id: String,
    pub seed: Option<u64>,
}

struct Cursor<'a> {
    tokens: Vec<&'a str>,
    next: usize,
}

impl<'a> Cursor<'a> {
    /// 1-based position of the next token.
    fn position(&self) -> usize {
        self.next + 1
    }

    fn token(&mut self, field: &str) -> Result<(usize, &'a str), ParseError> {
        let position = self.position();
        let tok = self.tokens.get(self.next).ok_or_else(|| ParseError::MissingField {
            position,
            field: field.to_string(),
        })?;
        self.next += 1;
        Ok((position, tok))
    }

    fn number(&mut self, field: &str) -> Result<(usize, f64), ParseError> {
        let (position, tok) = self.token(field)?;
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok((position, v)),
            _ => Err(ParseError::NotNumeric {
                position,
                field: field.to_string(),
                token: tok.to_string(),
            }),
        }
    }

    fn checked(
        &mut self,
        field: &str,
        ok: impl Fn(f64) -> bool,
        requirement: &str,
    ) -> Result<f64, ParseError> {
        let (position, v) = self.number(field)?;
        if ok(v) {
            Ok(v)
        } else {
            Err(ParseError::OutOfRange {
                position,
                field: field.to_string(),
                reason: format!("{requirement}, got {v}"),
            })
        }
    }

    fn pass_through(
        &mut self,
        field: &str,
        ok: impl Fn(f64) -> bool,
        requirement: &str,
    ) -> Result<PassThrough, ParseError> {
        let position = self.position();
        let value = self.checked(field, ok, requirement)?;
        Ok(PassThrough {
            text: self.tokens[position - 1].to_string(),
            value,
        })
    }

    fn integer(&mut self, field: &str) -> Result<(usize, i64), ParseError> {
        let (position, tok) = self.token(field)?;
        tok.parse::<i64>()
            .map(|v| (position, v))
            .map_err(|_| ParseError::NotNumeric {
                position,
                field: field.to_string(),
                token: tok.to_string(),
            })
    }
}

fn positive(v: f64) -> bool {
    v > 0.0
}

fn unit_interval(v: f64) -> bool {
    v > 0.0 && v <= 1.0
}

fn at_least_one(v: f64) -> bool {
    v >= 1.0
}

fn nonnegative(v: f64) -> bool {
    v >= 0.0
}

/// Parses a single `#kind: fields…` line.
pub fn parse_command(line: &str) -> Result<MaterialCommand, ParseError> {
    let line = line.trim();
    let (head, rest) = line.split_once(':').ok_or(ParseError::NotACommand)?;
    let name = head
        .strip_prefix('#')
        .ok_or(ParseError::NotACommand)?
        .trim();
    let mut c = Cursor {
        tokens: rest.split_whitespace().collect(),
        next: 0,
    };

    let f_min = c.checked("f_min", positive, "must be positive")?;
    let f_max = c.checked("f_max", |v| v > f_min, "must exceed f_min")?;

    let model = match name {
        "havriliak_negami" => {
            let alpha = c.checked("alpha", unit_interval, "must lie in (0, 1]")?;
            let beta = c.checked("beta", unit_interval, "must lie in (0, 1]")?;
            let eps_inf = c.checked("eps_inf", at_least_one, "must be at least 1")?;
            let delta_eps = c.checked("delta_eps", positive, "must be positive")?;
            let tau0 = c.checked("tau", positive, "must be positive")?;
            ModelSpec::HavriliakNegami(HavriliakNegamiParams {
                eps_inf,
                delta_eps,
                tau0,
                alpha,
                beta,
            })
        }
        "jonscher" => {
            let eps_inf = c.checked("eps_inf", at_least_one, "must be at least 1")?;
            let a_p = c.checked("a_p", positive, "must be positive")?;
            let f_p = c.checked("f_p", positive, "must be positive")?;
            let n_p = c.checked("n_p", |v| (0.0..=1.0).contains(&v), "must lie in [0, 1]")?;
            ModelSpec::Jonscher {
                eps_inf,
                a_p,
                f_p,
                n_p,
            }
        }
        "crim" => {
            let shape_a = c.checked("shape_a", |v| v != 0.0, "must be nonzero")?;
            let (position, count) = c.integer("component_count")?;
            if count < 1 {
                return Err(ParseError::OutOfRange {
                    position,
                    field: "component_count".into(),
                    reason: format!("must be at least 1, got {count}"),
                });
            }
            let count = count as usize;
            let first_fraction = c.position();
            let fractions = (0..count)
                .map(|i| c.checked(&format!("fraction_{}", i + 1), unit_interval, "must lie in (0, 1]"))
                .collect::<Result<Vec<_>, _>>()?;
            let total: f64 = fractions.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(ParseError::OutOfRange {
                    position: first_fraction,
                    field: "fraction_1".into(),
                    reason: format!("volume fractions sum to {total}, expected 1"),
                });
            }
            let mut components = Vec::with_capacity(count);
            for (i, fraction) in fractions.into_iter().enumerate() {
                let k = i + 1;
                let eps_inf = c.number(&format!("eps_inf_{k}"))?.1;
                let delta_eps = c.number(&format!("delta_eps_{k}"))?.1;
                let tau = c.checked(&format!("tau_{k}"), positive, "must be positive")?;
                components.push(CrimComponent {
                    fraction,
                    constituent: DebyePoleParams {
                        eps_inf,
                        delta_eps,
                        tau,
                    },
                });
            }
            ModelSpec::Crim(CrimParams {
                shape_a,
                components,
            })
        }
        "raw_data" => ModelSpec::RawData(PathBuf::from(c.token("path")?.1)),
        other => return Err(ParseError::UnknownCommand(other.to_string())),
    };

    let sigma = c.pass_through("sigma", nonnegative, "must be nonnegative")?;
    let mu_r = c.pass_through("mu_r", at_least_one, "must be at least 1")?;
    let mag_loss = c.pass_through("mag_loss", nonnegative, "must be nonnegative")?;
    let (position, n) = c.integer("n_poles")?;
    let n_poles = PoleCount::from_signed(n).map_err(|_| ParseError::OutOfRange {
        position,
        field: "n_poles".into(),
        reason: format!("must be -1 or between 1 and 20, got {n}"),
    })?;
    let material_id = c.token("material_id")?.1.to_string();
    let seed = match c.tokens.get(c.next) {
        None => None,
        Some(tok) => {
            let position = c.position();
            let seed = tok.parse::<u64>().map_err(|_| ParseError::NotNumeric {
                position,
                field: "seed".into(),
                token: tok.to_string(),
            })?;
            c.next += 1;
            Some(seed)
        }
    };
    if let Some(tok) = c.tokens.get(c.next) {
        return Err(ParseError::ExtraToken {
            position: c.position(),
            token: tok.to_string(),
        });
    }

    Ok(MaterialCommand {
        model,
        f_min,
        f_max,
        sigma,
        mu_r,
        mag_loss,
        n_poles,
        material_id,
        seed,
    })
}

/// Shortest text that parses back to the same `f64`.
fn num(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

impl fmt::Display for MaterialCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut fields = vec![num(self.f_min), num(self.f_max)];
        match &self.model {
            ModelSpec::HavriliakNegami(p) => fields.extend(
                [p.alpha, p.beta, p.eps_inf, p.delta_eps, p.tau0].map(num),
            ),
            ModelSpec::Jonscher {
                eps_inf,
                a_p,
                f_p,
                n_p,
            } => fields.extend([*eps_inf, *a_p, *f_p, *n_p].map(num)),
            ModelSpec::Crim(p) => {
                fields.push(num(p.shape_a));
                fields.push(p.components.len().to_string());
                fields.extend(p.components.iter().map(|c| num(c.fraction)));
                for c in &p.components {
                    let d = c.constituent;
                    fields.extend([d.eps_inf, d.delta_eps, d.tau].map(num));
                }
            }
            ModelSpec::RawData(path) => fields.push(path.display().to_string()),
        }
        fields.push(self.sigma.text.clone());
        fields.push(self.mu_r.text.clone());
        fields.push(self.mag_loss.text.clone());
        fields.push(match self.n_poles {
            PoleCount::Auto => "-1".to_string(),
            PoleCount::Fixed(n) => n.to_string(),
        });
        fields.push(self.material_id.clone());
        if let Some(seed) = self.seed {
            fields.push(seed.to_string());
        }
        write!(f, "#{}: {}", self.model.tag(), fields.join(" "))
    }
}
