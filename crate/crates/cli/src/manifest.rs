use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use voronautoma::ExcitationNeighborhood;

pub const DEFAULT_RADIUS: f64 = 480.0;
pub const DEFAULT_SPACING: f64 = 5.0;
pub const DEFAULT_COUNT: usize = 15000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_ETA: f64 = 0.4;
pub const DEFAULT_SIZE: usize = 800;
pub const NU_BASELINE_ETA: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Excitation {
    First,
    Second,
}

impl From<Excitation> for ExcitationNeighborhood {
    fn from(e: Excitation) -> Self {
        match e {
            Excitation::First => ExcitationNeighborhood::FirstOrder,
            Excitation::Second => ExcitationNeighborhood::SecondOrder,
        }
    }
}

/// Every parameter a command can take. Flags and config files both land
/// here; the echoed copy has all defaults filled in.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Manifest {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tess: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raster: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excitation_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask_interior: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_from: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_to: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excitation: Option<Excitation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frames: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub history: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub render: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub svg: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

macro_rules! layer {
    ($top:expr, $bottom:expr, $($field:ident),*) => {
        Manifest { $($field: $top.$field.or($bottom.$field)),* }
    };
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: Manifest) -> Manifest {
        layer!(
            self, lower, command, radius, spacing, count, seed, tess, points, raster, state,
            excitation_radius, mask_interior, eta, eta_from, eta_to, eta_step, excitation,
            max_steps, tolerance, frames, history, render, svg, size, output
        )
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

/// Flags first, then the config file if one was named.
pub fn resolve(flags: Manifest, config: Option<&Path>) -> Result<Manifest> {
    let lower = match config {
        Some(path) => Manifest::load(path)?,
        None => Manifest::default(),
    };
    Ok(flags.over(lower))
}
