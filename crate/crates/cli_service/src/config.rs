// SPDX-License-Identifier: Apache-2.0
use crate::error::LeError;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    pub bind: String,
    pub port: u16,
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { bind: "127.0.0.1".into(), port: 7878, static_dir: None }
    }
}

/// Contents of `le.toml`.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Directories searched for callees, in order.
    pub search_paths: Vec<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub service: ServiceConfig,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, LeError> {
        toml::from_str(text).map_err(|e| LeError::Usage(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Config, LeError> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::error::io_err(path, e))?;
        Self::parse(&text)
    }

    /// Every configured directory must exist.
    pub fn validate(&self) -> Result<(), LeError> {
        let dirs = self.search_paths.iter().chain(&self.output_dir).chain(&self.service.static_dir);
        for d in dirs {
            if !d.is_dir() {
                return Err(LeError::Io { path: d.display().to_string(), msg: "not a directory".into() });
            }
        }
        Ok(())
    }

    pub fn addr(&self) -> String {
        format!("{}:{}", self.service.bind, self.service.port)
    }
}
