use std::path::Path;

use serde::{Deserialize, Serialize};

pub const CONFIG_ENV: &str = "CKMOVES_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Crossing limit for the 2^n state-sum check.
    pub state_sum_guard: usize,
    /// Chord limit for alternating sums.
    pub subset_guard: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Self { state_sum_guard: 24, subset_guard: 12, seed: 7, format: Format::Tsv }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let c: Config = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        c.check()?;
        Ok(c)
    }

    /// From the file named by the environment variable, or defaults.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Self::load(Path::new(&p)),
            None => Ok(Self::default()),
        }
    }

    pub fn check(&self) -> Result<(), String> {
        if self.state_sum_guard == 0 || self.subset_guard == 0 {
            return Err("guards must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_defaults() {
        let c: Config = serde_json::from_str(r#"{"seed": 3, "format": "json"}"#).unwrap();
        assert_eq!(c, Config { seed: 3, format: Format::Json, ..Config::default() });
        let back: Config = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(Config { subset_guard: 0, ..Config::default() }.check().is_err());
        assert!(serde_json::from_str::<Config>(r#"{"sed": 3}"#).is_err());
    }
}
