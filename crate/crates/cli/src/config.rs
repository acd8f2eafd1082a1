//! Run-configuration loading.
//!
//! A run is described by one JSON document: the mode network, the
//! section layout, the sweep range, the computation methods, and the
//! output path. Loading parses strictly (unknown fields are rejected),
//! cross-checks the declared mode count against every sized field,
//! builds the core objects, and fingerprints the exact file bytes so
//! output rows can be traced back to their input.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use ptsim_core::interference::Method;
use ptsim_core::matrix::CMatrix;
use ptsim_core::system::{ModeNetworkSpec, RotationMode, Section, SectionLayout};
use ptsim_core::Complex64;

use crate::CliError;

/// A coupling entry is either a real number or a `[re, im]` pair.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Real(f64),
    Complex([f64; 2]),
}

impl EntryRepr {
    fn to_complex(&self) -> Complex64 {
        match self {
            EntryRepr::Real(re) => Complex64::new(*re, 0.0),
            EntryRepr::Complex([re, im]) => Complex64::new(*re, *im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemConfig {
    n_modes: usize,
    coupling: Vec<Vec<EntryRepr>>,
    loss_profile: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionConfig {
    length: f64,
    loss_on: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutConfig {
    rotation_mode: String,
    sections: Vec<SectionConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfigFile {
    system: SystemConfig,
    layout: LayoutConfig,
    sweep: SweepConfig,
    #[serde(default = "default_methods")]
    methods: Vec<String>,
    #[serde(default = "default_output")]
    output_path: PathBuf,
}

fn default_methods() -> Vec<String> {
    vec!["scattering".into()]
}

fn default_output() -> PathBuf {
    PathBuf::from("curve.csv")
}

/// A fully validated run description.
#[derive(Debug)]
pub struct Prepared {
    pub spec: ModeNetworkSpec,
    pub layout: SectionLayout,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub steps: usize,
    pub methods: Vec<Method>,
    pub output_path: PathBuf,
    /// Hex SHA-256 of the configuration file bytes.
    pub digest: String,
}

/// Loads, parses and validates a configuration file.
pub fn load(path: &Path) -> Result<Prepared, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let digest = format!("{:x}", Sha256::digest(&bytes));
    let file: RunConfigFile = serde_json::from_slice(&bytes).map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let config_err = |message: String| CliError::Config { path: path.to_path_buf(), message };

    let n = file.system.n_modes;
    if file.system.coupling.len() != n {
        return Err(config_err(format!(
            "coupling has {} rows but n_modes is {}",
            file.system.coupling.len(),
            n
        )));
    }
    for (i, row) in file.system.coupling.iter().enumerate() {
        if row.len() != n {
            return Err(config_err(format!(
                "coupling row {} has {} entries but n_modes is {}",
                i,
                row.len(),
                n
            )));
        }
    }
    if file.system.loss_profile.len() != n {
        return Err(config_err(format!(
            "loss_profile has {} entries but n_modes is {}",
            file.system.loss_profile.len(),
            n
        )));
    }

    let mut data = Vec::with_capacity(n * n);
    for row in &file.system.coupling {
        data.extend(row.iter().map(EntryRepr::to_complex));
    }
    let coupling = CMatrix::new(n, n, data).map_err(CliError::Core)?;
    let spec = ModeNetworkSpec::new(coupling, file.system.loss_profile).map_err(CliError::Core)?;

    let rotation_mode = match file.layout.rotation_mode.as_str() {
        "physical" => RotationMode::Physical,
        "abstract" => RotationMode::Abstract,
        other => {
            return Err(config_err(format!(
                "unknown rotation_mode '{}' (expected physical or abstract)",
                other
            )))
        }
    };
    let sections = file
        .layout
        .sections
        .iter()
        .map(|s| Section { length: s.length, loss_on: s.loss_on })
        .collect();
    let layout = SectionLayout::new(sections, rotation_mode).map_err(CliError::Core)?;
    layout.validate_against(&spec).map_err(CliError::Core)?;

    let mut methods = Vec::new();
    for name in &file.methods {
        let method = Method::from_str(name).map_err(CliError::Core)?;
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    if methods.is_empty() {
        return Err(config_err("methods must not be empty".into()));
    }
    // Canonical output order regardless of how the list was written.
    methods.sort_by_key(|m| match m {
        Method::Scattering => 0,
        Method::Lindblad => 1,
        Method::ClosedForm => 2,
    });

    Ok(Prepared {
        spec,
        layout,
        gamma_min: file.sweep.gamma_min,
        gamma_max: file.sweep.gamma_max,
        steps: file.sweep.steps,
        methods,
        output_path: file.output_path,
        digest,
    })
}
