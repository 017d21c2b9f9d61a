//! Run configuration: a single JSON document, with command-line flags
//! overriding individual fields.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer};

use crate::theta::parse_theta;
use crate::CliError;

/// Phase field accepting either a number (radians) or a `pi`-fraction
/// string.
#[derive(Debug, Clone, Copy)]
pub struct Theta(pub f64);

impl<'de> Deserialize<'de> for Theta {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: Deserializer<'de>,
    {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Sym(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) => Ok(Theta(v)),
            Raw::Sym(s) => parse_theta(&s).map(Theta).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The reduced system (kappa, gamma, G, J, theta) is given directly.
    Linearized,
    /// The physical system is given; the steady state is solved and reduced
    /// first.
    Selfconsistent,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearizedBlock {
    pub kappa: f64,
    pub gamma: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub theta: Theta,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalBlock {
    pub kappa1: f64,
    pub kappa2: f64,
    pub gamma: f64,
    pub omega_m: f64,
    pub g0: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub delta_c: f64,
    /// Complex drive amplitude as `[re, im]`.
    pub eps_c: [f64; 2],
    pub eps_d: [f64; 2],
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

fn default_true() -> bool {
    true
}

fn default_scan_g0() -> f64 {
    1e-4
}

fn default_window() -> f64 {
    0.25
}

/// Oracle cross-check settings: which routes to run and at which probe
/// detuning.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleBlock {
    /// Probe detuning of the cross-check point.
    #[serde(default)]
    pub x: f64,
    /// Run the time-domain sideband-resolved route.
    #[serde(default = "default_true")]
    pub rwa: bool,
    /// Run the full-equation route (needs the physical block).
    #[serde(default)]
    pub full: bool,
    /// Integration horizon; default `40 / min(kappa, gamma)`.
    #[serde(default)]
    pub t_end: Option<f64>,
    /// Integration step; default derived from the fastest rate.
    #[serde(default)]
    pub dt: Option<f64>,
    /// Mechanical frequencies (linearized mode only): for each, synthesize
    /// the red-sideband physical system and report the full-vs-resolved
    /// deviation.
    #[serde(default)]
    pub omega_m_scan: Option<Vec<f64>>,
    /// Single-photon coupling used when synthesizing scan systems.
    #[serde(default = "default_scan_g0")]
    pub g0: f64,
    /// Trailing fraction of the trajectory used for demodulation.
    #[serde(default = "default_window")]
    pub window_fraction: f64,
}

impl Default for OracleBlock {
    fn default() -> Self {
        Self {
            x: 0.0,
            rwa: true,
            full: false,
            t_end: None,
            dt: None,
            omega_m_scan: None,
            g0: default_scan_g0(),
            window_fraction: default_window(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default)]
    pub linearized: Option<LinearizedBlock>,
    #[serde(default)]
    pub physical: Option<PhysicalBlock>,
    #[serde(default)]
    pub grid: Option<GridBlock>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub oracle: Option<OracleBlock>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    /// Exactly one parameter block, matching the mode.
    pub fn validate(&self) -> Result<(), CliError> {
        match (self.mode, &self.linearized, &self.physical) {
            (Mode::Linearized, Some(_), None) => Ok(()),
            (Mode::Selfconsistent, None, Some(_)) => Ok(()),
            (Mode::Linearized, _, Some(_)) => Err(CliError::Usage(
                "mode `linearized` takes the `linearized` block only".to_string(),
            )),
            (Mode::Selfconsistent, Some(_), _) => Err(CliError::Usage(
                "mode `selfconsistent` takes the `physical` block only".to_string(),
            )),
            (Mode::Linearized, None, None) => Err(CliError::Usage(
                "mode `linearized` needs a `linearized` block".to_string(),
            )),
            (Mode::Selfconsistent, None, None) => Err(CliError::Usage(
                "mode `selfconsistent` needs a `physical` block".to_string(),
            )),
        }?;
        if let Some(grid) = &self.grid {
            if !(grid.x_min < grid.x_max) || grid.n_points < 2 {
                return Err(CliError::Usage(format!(
                    "bad grid: x_min {} must be < x_max {} and n_points {} >= 2",
                    grid.x_min, grid.x_max, grid.n_points
                )));
            }
        }
        Ok(())
    }
}
