//! Named parameter presets and the run configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ParameterMap;

const EMBEDDED: &str = include_str!("../data/profiles.json");

/// Base bindings plus per-target replacements keyed by formula,
/// identity or integral id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub values: ParameterMap,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, ParameterMap>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub name: String,
    pub entry: ProfileEntry,
}

impl Profile {
    pub fn new(name: impl Into<String>, values: ParameterMap) -> Self {
        Profile { name: name.into(), entry: ProfileEntry { values, overrides: BTreeMap::new() } }
    }

    pub fn values(&self) -> &ParameterMap {
        &self.entry.values
    }

    /// Bindings for one target, with its override applied.
    pub fn params_for(&self, id: &str) -> ParameterMap {
        match self.entry.overrides.get(id) {
            Some(o) => self.entry.values.overlaid(o),
            None => self.entry.values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub profiles: BTreeMap<String, ProfileEntry>,
    /// Catalog of corrected formula entries, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub errata_overlay: Option<PathBuf>,
    #[serde(skip)]
    base_dir: Option<PathBuf>,
}

impl Config {
    /// The presets compiled into the crate.
    pub fn embedded() -> Self {
        serde_json::from_str(EMBEDDED).expect("embedded profiles parse")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut cfg: Config = serde_json::from_str(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn profile(&self, name: &str) -> Result<Profile> {
        self.profiles
            .get(name)
            .map(|entry| Profile { name: name.to_string(), entry: entry.clone() })
            .ok_or_else(|| Error::UnknownProfile(name.to_string()))
    }

    /// Overlay path resolved against the config file's directory.
    pub fn overlay_path(&self) -> Option<PathBuf> {
        let p = self.errata_overlay.as_ref()?;
        Some(match &self.base_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.clone(),
        })
    }
}
