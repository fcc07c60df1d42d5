//! Verifier reports cached on disk as their JSON documents.

use std::path::{Path, PathBuf};

use fcspherical::report::Report;

use crate::{Check, RunConfig};

/// `(type, command, code version)`; sampled checks also carry their sampling
/// parameters in the command part, budgets bound what gets computed.
pub struct Key(String);

impl Key {
    pub fn new(config: &RunConfig, check: Check) -> Self {
        let mut command = check.name().to_string();
        if matches!(check, Check::Subspaces | Check::Fingerprints) {
            command.push_str(&format!("-t{}-s{}", config.trials, config.seed));
        }
        Key(format!(
            "{}-{}-{}-b{}",
            config.cartan_type.to_uppercase(),
            command,
            env!("CARGO_PKG_VERSION"),
            config.budget
        ))
    }

    fn path(&self, dir: &Path) -> PathBuf {
        dir.join(format!("{}.json", self.0))
    }
}

pub fn load(dir: &Path, key: &Key) -> Option<Report> {
    let text = std::fs::read_to_string(key.path(dir)).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(dir: &Path, key: &Key, report: &Report) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{}.tmp", key.0));
    std::fs::write(&tmp, report.to_json())?;
    std::fs::rename(tmp, key.path(dir))
}
