//! Run configuration: a TOML file, optionally patched by dotted
//! `key=value` overrides, deserialized with unknown keys rejected.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use korteweg_core::reflection::BoundaryKind;
use korteweg_core::{Complex64, MaterialParams};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Dispersion,
    Reflect,
    Transmit,
    ScatterMie,
    ScatterSolve,
    Solve,
    Pulse,
    SpecfunCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dispersion => "dispersion",
            Self::Reflect => "reflect",
            Self::Transmit => "transmit",
            Self::ScatterMie => "scatter-mie",
            Self::ScatterSolve => "scatter-solve",
            Self::Solve => "solve",
            Self::Pulse => "pulse",
            Self::SpecfunCheck => "specfun-check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default)]
    pub material: MaterialBlock,
    #[serde(default)]
    pub director: DirectorBlock,
    #[serde(default)]
    pub dispersion: DispersionBlock,
    #[serde(default)]
    pub wave: WaveBlock,
    #[serde(default)]
    pub bc: BcBlock,
    #[serde(default)]
    pub geometry: GeometryBlock,
    #[serde(default)]
    pub pulse: PulseBlock,
    #[serde(default)]
    pub specfun: SpecfunBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialBlock {
    pub c0: f64,
    pub rho0: f64,
    pub u1: f64,
    pub u2: f64,
}

impl Default for MaterialBlock {
    fn default() -> Self {
        Self {
            c0: 1.0,
            rho0: 1.0,
            u1: 0.0,
            u2: 0.0,
        }
    }
}

impl MaterialBlock {
    pub fn params(&self) -> Result<MaterialParams, CliError> {
        MaterialParams::new(self.c0, self.rho0, self.u1, self.u2).map_err(CliError::config)
    }
}

/// Director orientation. `angle` is measured from the x axis; commands that
/// sweep the director (`scatter-*`) use `xi`, the angle between the director
/// and the incident direction.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectorBlock {
    #[serde(default)]
    pub angle: f64,
    #[serde(default = "fig3_angles")]
    pub xi: Vec<f64>,
}

fn fig3_angles() -> Vec<f64> {
    vec![0.0, FRAC_PI_2]
}

impl Default for DirectorBlock {
    fn default() -> Self {
        Self {
            angle: 0.0,
            xi: fig3_angles(),
        }
    }
}

/// Sweep of the propagation angle `ξ` for the `dispersion` table.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DispersionBlock {
    pub xi_min: f64,
    pub xi_max: f64,
    pub samples: usize,
}

impl Default for DispersionBlock {
    fn default() -> Self {
        Self {
            xi_min: 0.0,
            xi_max: FRAC_PI_2,
            samples: 19,
        }
    }
}

/// Plane wave hitting the interface `x2 = 0` from above, at `incidence`
/// radians from the normal.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveBlock {
    pub incidence: f64,
    pub n: f64,
    pub n_t: f64,
}

impl Default for WaveBlock {
    fn default() -> Self {
        Self {
            incidence: 0.0,
            n: 1.0,
            n_t: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BcKindName {
    SoundSoft,
    SoundHard,
    Impedance,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BcBlock {
    pub kind: BcKindName,
    pub zeta_re: f64,
    pub zeta_im: f64,
}

impl Default for BcBlock {
    fn default() -> Self {
        Self {
            kind: BcKindName::SoundSoft,
            zeta_re: 0.0,
            zeta_im: 0.0,
        }
    }
}

impl BcBlock {
    pub fn kind(&self) -> Result<BoundaryKind, CliError> {
        let kind = match self.kind {
            BcKindName::SoundSoft => BoundaryKind::SoundSoft,
            BcKindName::SoundHard => BoundaryKind::SoundHard,
            BcKindName::Impedance => BoundaryKind::Impedance(Complex64::new(self.zeta_re, self.zeta_im)),
        };
        kind.validate().map_err(CliError::config)?;
        Ok(kind)
    }
}

/// Geometry shared by the scattering and box solves. Lengths in the
/// `*_wavelengths` keys are multiples of the incident wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryBlock {
    pub radius: f64,
    /// Incident direction angle `ψ`.
    pub psi: f64,
    pub free_wavelengths: f64,
    pub layer_wavelengths: f64,
    /// `σmax = sigma_factor·ω`.
    pub sigma_factor: f64,
    pub points_per_wavelength: f64,
    /// 0 picks the angular resolution automatically.
    pub theta_nodes: usize,
    /// Sampling of the `y,F` curves along the y axis, `|y|` in `[y_min, y_max]`.
    pub y_min: f64,
    pub y_max: f64,
    pub samples: usize,
    /// Square box `[0, box_size]²` with `cells` per side, for `solve`.
    pub box_size: f64,
    pub cells: usize,
}

impl Default for GeometryBlock {
    fn default() -> Self {
        Self {
            radius: 1.0,
            psi: -FRAC_PI_2,
            free_wavelengths: 3.0,
            layer_wavelengths: 2.0,
            sigma_factor: 3.0,
            points_per_wavelength: 16.0,
            theta_nodes: 0,
            y_min: 1.0,
            y_max: 4.0,
            samples: 61,
            box_size: 1.0,
            cells: 64,
        }
    }
}

/// Gaussian pulse on a periodic square `[-half_width, half_width]²`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PulseBlock {
    pub half_width: f64,
    pub cells: usize,
    pub width: f64,
    pub amplitude: f64,
    pub times: Vec<f64>,
    /// Fraction of the peak that marks the front.
    pub threshold: f64,
}

impl Default for PulseBlock {
    fn default() -> Self {
        Self {
            half_width: 2.0,
            cells: 256,
            width: 0.08,
            amplitude: 1.0,
            times: vec![0.3],
            threshold: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpecfunBlock {
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
    pub max_order: usize,
}

impl Default for SpecfunBlock {
    fn default() -> Self {
        Self {
            x_min: 0.1,
            x_max: 50.0,
            samples: 100,
            max_order: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputBlock {
    pub dir: PathBuf,
    /// Also write grayscale images of field magnitudes.
    pub pgm: bool,
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            pgm: true,
        }
    }
}

impl RunConfig {
    pub fn from_path(path: &Path, overrides: &[String]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text, overrides)
    }

    pub fn from_toml(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        let mut table: toml::Table = text.parse().map_err(CliError::config)?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let cfg: RunConfig = toml::Value::Table(table).try_into().map_err(CliError::config)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        self.material.params()?;
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(CliError::config(format!("omega must be positive, got {}", self.omega)));
        }
        self.bc.kind()?;
        let g = &self.geometry;
        if g.samples < 2 || g.y_max <= g.y_min {
            return Err(CliError::config("geometry needs samples >= 2 and y_max > y_min"));
        }
        if self.dispersion.samples == 0 || self.specfun.samples == 0 {
            return Err(CliError::config("sample counts must be positive"));
        }
        Ok(())
    }
}

/// Sets `a.b.c = value`, creating tables as needed. The value is parsed as
/// TOML and falls back to a plain string.
pub fn apply_override(table: &mut toml::Table, spec: &str) -> Result<(), CliError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::config(format!("override `{spec}` is not key=value")))?;
    let value = parse_value(raw.trim());
    let mut parts: Vec<&str> = key.trim().split('.').collect();
    let last = parts.pop().filter(|s| !s.is_empty()).ok_or_else(|| CliError::config("empty override key"))?;
    let mut cur = table;
    for p in parts {
        cur = cur
            .entry(p)
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .ok_or_else(|| CliError::config(format!("override key `{key}`: `{p}` is not a table")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

fn parse_value(raw: &str) -> toml::Value {
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}
