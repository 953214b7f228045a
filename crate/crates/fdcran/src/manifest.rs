//! Run provenance written next to each output file.

use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use fdcran_core::SystemConfig;
use serde::Serialize;

use crate::config_io::config_hash;
use crate::error::AppResult;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub started: String,
    pub finished: String,
    pub output_paths: Vec<PathBuf>,
    pub config: SystemConfig,
}

fn stamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

impl RunManifest {
    pub fn start(command: &str, cfg: &SystemConfig) -> Self {
        let now = stamp(Utc::now());
        Self {
            command: command.to_string(),
            config_hash: config_hash(cfg),
            seed: cfg.seed,
            started: now.clone(),
            finished: now,
            output_paths: Vec::new(),
            config: cfg.clone(),
        }
    }

    pub fn finish(&mut self, outputs: &[&Path]) {
        self.finished = stamp(Utc::now());
        self.output_paths = outputs.iter().map(|p| p.to_path_buf()).collect();
    }

    /// `<output>.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    pub fn write(&self, path: &Path) -> AppResult<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}
