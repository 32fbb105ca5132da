use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use loxodrome::io::ActionSource;

use crate::report::Format;
use crate::tasks::{self, Task};

/// A reproducible batch of tasks. The seed is the only source of
/// randomness and results do not depend on the thread count.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub format: Format,
    /// Directory receiving one artifact per task.
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub require_certified: bool,
    /// Action used by tasks that do not name their own.
    #[serde(default)]
    pub source: Option<ActionSource>,
    pub tasks: Vec<Task>,
}

fn default_seed() -> u64 {
    0x5eed
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text).with_context(|| format!("config {} is invalid", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.tasks.is_empty() {
            bail!("config has no tasks");
        }
        if self.threads == Some(0) {
            bail!("threads must be positive");
        }
        Ok(())
    }

    /// Runs every task in order; the exit status is the largest task status.
    pub fn run(&self, out_override: Option<&Path>) -> Result<i32> {
        if let Some(n) = self.threads {
            // the pool can only be configured once per process
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        let dir = out_override.map(Path::to_path_buf).or_else(|| self.out_dir.clone());
        let ext = match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        println!("seed {}", self.seed);
        let mut code = 0;
        for (i, t) in self.tasks.iter().enumerate() {
            let report = tasks::execute(t, self.source.as_ref(), self.seed).with_context(|| format!("task {i} ({}) failed", t.name()))?;
            let path = dir.as_ref().map(|d| d.join(format!("{i:02}_{}.{ext}", t.name())));
            report.emit(self.format, path.as_deref())?;
            code = code.max(report.exit_code(self.require_certified));
        }
        Ok(code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/tour.json")).unwrap();
        let cfg: ExperimentConfig = serde_json::from_str(&text).unwrap();
        let again: ExperimentConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.tasks.len(), 9);
    }

    #[test]
    fn empty_task_list_is_invalid() {
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"tasks": []}"#).unwrap();
        assert!(cfg.validate().is_err());
    }
}
