//! JSON configuration files.

use std::path::Path;

use fdcran_core::SystemConfig;
use sha2::{Digest, Sha256};

use crate::error::{AppError, AppResult};

/// Reads and validates a configuration; missing fields take their defaults.
pub fn load_config(path: &Path) -> AppResult<SystemConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> AppResult<SystemConfig> {
    let cfg: SystemConfig = serde_json::from_str(text).map_err(|e| AppError::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

/// SHA-256 of the canonical JSON form (fixed field order, shortest round-trip floats).
pub fn config_hash(cfg: &SystemConfig) -> String {
    let canonical = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}
