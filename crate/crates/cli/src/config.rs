//! Experiment configuration and the small parsers behind the CLI flags.

use std::f64::consts::PI;
use std::str::FromStr;

use weyl_billiard::gates::{InfoContent, NamedGate};
use weyl_billiard::stats::SpectralMode;
use weyl_billiard::weyl::ChamberClass;

/// Largest gate dimension `N²` accepted.
pub const MAX_DIM: usize = 1024;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] weyl_billiard::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code: 2 for configuration problems, 3 when a search ran
    /// out of budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(weyl_billiard::Error::SearchExhausted { .. }) => 3,
            CliError::Core(
                weyl_billiard::Error::InvalidArgument(_)
                | weyl_billiard::Error::NotBipartite { .. }
                | weyl_billiard::Error::NotLocal(_),
            ) => 2,
            _ => 1,
        }
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Trajectory,
    Ensemble,
    Moments,
    Spectral,
    Freeness,
    Approximate,
    Interlace,
    Tables,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Trajectory,
        Command::Ensemble,
        Command::Moments,
        Command::Spectral,
        Command::Freeness,
        Command::Approximate,
        Command::Interlace,
        Command::Tables,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Trajectory => "trajectory",
            Command::Ensemble => "ensemble",
            Command::Moments => "moments",
            Command::Spectral => "spectral",
            Command::Freeness => "freeness",
            Command::Approximate => "approximate",
            Command::Interlace => "interlace",
            Command::Tables => "tables",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| config_err(format!("unknown command '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(config_err(format!("unsupported format '{s}'"))),
        }
    }
}

/// Source of gates for the `ensemble` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleChoice {
    Cue,
    Cpe,
    Gamma,
    /// Powers of one Haar gate.
    Trajectory,
    /// Powers of one CPE diagonal gate.
    DiagonalTrajectory,
}

impl EnsembleChoice {
    pub fn name(&self) -> &'static str {
        match self {
            EnsembleChoice::Cue => "cue",
            EnsembleChoice::Cpe => "cpe",
            EnsembleChoice::Gamma => "gamma",
            EnsembleChoice::Trajectory => "trajectory",
            EnsembleChoice::DiagonalTrajectory => "diagonal-trajectory",
        }
    }
}

impl FromStr for EnsembleChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "cue" | "haar" => Ok(EnsembleChoice::Cue),
            "cpe" => Ok(EnsembleChoice::Cpe),
            "gamma" => Ok(EnsembleChoice::Gamma),
            "trajectory" => Ok(EnsembleChoice::Trajectory),
            "diagonal-trajectory" | "diagonal" => Ok(EnsembleChoice::DiagonalTrajectory),
            _ => Err(config_err(format!("unknown ensemble '{s}'"))),
        }
    }
}

/// Everything an experiment needs. Counts left as `None` take the per-command
/// defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub seed: u64,
    pub samples: Option<usize>,
    pub steps: Option<usize>,
    /// Subsystem dimension `N`; gates act on `N²`.
    pub dims: Option<usize>,
    pub class: Option<ChamberClass>,
    pub alpha: Option<InfoContent>,
    pub bins: usize,
    pub format: Format,
    pub dt: Option<f64>,
    pub target: Option<NamedGate>,
    pub fidelity: f64,
    pub ensemble: EnsembleChoice,
    pub mode: Option<SpectralMode>,
    /// Leave wall-clock time out of the header so reruns are byte-identical.
    pub reproducible: bool,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            seed: 1,
            samples: None,
            steps: None,
            dims: None,
            class: None,
            alpha: None,
            bins: 100,
            format: Format::Csv,
            dt: None,
            target: None,
            fidelity: 0.998,
            ensemble: EnsembleChoice::Cue,
            mode: None,
            reproducible: false,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples == Some(0) {
            return Err(config_err("--samples must be positive"));
        }
        if self.bins == 0 {
            return Err(config_err("--bins must be positive"));
        }
        if let Some(n) = self.dims {
            if n == 0 || n * n > MAX_DIM {
                return Err(config_err(format!(
                    "--dim {n}: need 1 ≤ N and N² ≤ {MAX_DIM}"
                )));
            }
        }
        if let Some(dt) = self.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(config_err("--dt must be positive"));
            }
        }
        if !(self.fidelity > 0.0 && self.fidelity <= 1.0) {
            return Err(config_err("--fidelity must lie in (0, 1]"));
        }
        if let Some(a) = self.alpha {
            if a.alpha.iter().any(|x| !x.is_finite()) {
                return Err(config_err("--alpha must be finite"));
            }
        }
        Ok(())
    }

    /// `(key, value)` pairs recorded in output headers.
    pub fn header_fields(&self) -> Vec<(String, String)> {
        let opt = |v: Option<usize>| v.map_or("default".to_string(), |v| v.to_string());
        vec![
            ("command".into(), self.command.name().into()),
            ("seed".into(), self.seed.to_string()),
            ("samples".into(), opt(self.samples)),
            ("steps".into(), opt(self.steps)),
            ("dim".into(), opt(self.dims)),
            (
                "class".into(),
                self.class.map_or("default".into(), |c| c.roman().into()),
            ),
            (
                "alpha".into(),
                self.alpha.map_or("default".into(), |a| {
                    format!("{},{},{}", a.alpha[0], a.alpha[1], a.alpha[2])
                }),
            ),
            ("bins".into(), self.bins.to_string()),
            ("format".into(), self.format.extension().into()),
            (
                "dt".into(),
                self.dt.map_or("none".into(), |v| v.to_string()),
            ),
            (
                "target".into(),
                self.target.map_or("default".into(), |t| t.name().into()),
            ),
            ("fidelity".into(), self.fidelity.to_string()),
            ("ensemble".into(), self.ensemble.name().into()),
            (
                "mode".into(),
                self.mode.map_or("all".into(), |m| m.name().into()),
            ),
        ]
    }
}

/// Seed as decimal or `0x`-prefixed hexadecimal.
pub fn parse_seed(s: &str) -> Result<u64, CliError> {
    let s = s.trim().replace('_', "");
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| config_err(format!("invalid seed '{s}'")))
}

/// An angle in radians written as a decimal or a rational multiple of π:
/// `0.3`, `pi`, `-pi/4`, `3pi/8`, `3*pi/8`, `pi*0.125`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let bad = || config_err(format!("invalid angle '{s}'"));
    let t = s
        .trim()
        .to_ascii_lowercase()
        .replace(['π'], "pi")
        .replace(' ', "");
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (&t[..pos], &t[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let value = if tail.is_empty() {
        coeff
    } else if let Some(den) = tail.strip_prefix('/') {
        coeff / den.parse::<f64>().map_err(|_| bad())?
    } else if let Some(f) = tail.strip_prefix('*') {
        coeff * f.parse::<f64>().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    Ok(value * PI)
}

/// Three comma-separated angles; missing trailing components are zero.
pub fn parse_alpha(s: &str) -> Result<InfoContent, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.is_empty() || parts.len() > 3 {
        return Err(config_err(format!(
            "--alpha needs 1 to 3 components, got '{s}'"
        )));
    }
    let mut a = [0.0; 3];
    for (slot, p) in a.iter_mut().zip(&parts) {
        *slot = parse_angle(p)?;
    }
    Ok(InfoContent::from_array(a))
}

pub fn parse_class(s: &str) -> Result<ChamberClass, CliError> {
    s.parse()
        .map_err(|_| config_err(format!("unknown class '{s}' (expected I, II or III)")))
}

pub fn parse_gate(s: &str) -> Result<NamedGate, CliError> {
    s.parse()
        .map_err(|_| config_err(format!("unknown gate '{s}'")))
}

pub fn parse_mode(s: &str) -> Result<SpectralMode, CliError> {
    s.parse()
        .map_err(|_| config_err(format!("unknown spectral mode '{s}'")))
}
