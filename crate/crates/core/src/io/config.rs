use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use super::read_file;
use crate::error::{Error, Result};
use crate::model::{validate_tilts, EconParams, EntropyParams, FeasibilityParams, ImpactParams, StructuralParams};

/// Tier tilt parameters. The defaults are illustrative operator choices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tilts {
    pub kappa_a: f64,
    pub kappa_c: f64,
}

impl Tilts {
    pub const DEFAULT_KAPPA_A: f64 = 1.5;
    pub const DEFAULT_KAPPA_C: f64 = 0.5;
}

impl Default for Tilts {
    fn default() -> Self {
        Tilts {
            kappa_a: Self::DEFAULT_KAPPA_A,
            kappa_c: Self::DEFAULT_KAPPA_C,
        }
    }
}

/// One run's parameters. Relative data paths resolve against the directory
/// holding the config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub theme: String,
    pub aum_usd: f64,
    pub turnover_fraction: f64,
    pub impact: ImpactParams,
    pub econ: EconParams,
    pub structural: StructuralParams,
    pub entropy: EntropyParams,
    #[serde(default)]
    pub tilts: Tilts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core_weights: Option<PathBuf>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn params(&self) -> FeasibilityParams {
        FeasibilityParams {
            aum_usd: self.aum_usd,
            turnover_fraction: self.turnover_fraction,
            impact: self.impact.clone(),
            econ: self.econ.clone(),
            structural: self.structural.clone(),
            entropy: self.entropy.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params().validate()?;
        validate_tilts(self.tilts.kappa_a, self.tilts.kappa_c, "tilts.")
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    pub fn candidates_path(&self) -> Option<PathBuf> {
        self.candidates.as_deref().map(|p| self.resolve(p))
    }

    pub fn core_weights_path(&self) -> Option<PathBuf> {
        self.core_weights.as_deref().map(|p| self.resolve(p))
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = read_file(path)?;
    let mut config = parse_config(&text, path)?;
    config.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(config)
}

/// Parse and validate config text; `origin` only labels errors.
pub fn parse_config(text: &str, origin: &Path) -> Result<RunConfig> {
    let config: RunConfig = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let path = origin.to_path_buf();
        match e.classify() {
            Category::Data => Error::Schema { path, message },
            Category::Syntax | Category::Eof | Category::Io => Error::Parse { path, message },
        }
    })?;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "aum_usd": 100000,
        "turnover_fraction": 0.5,
        "impact": {"c": 0.1, "delta": 0.5, "impact_cap": 0.01},
        "econ": {"round_trip_cost_bps": 25, "min_effect_bps": 0.2},
        "structural": {"loss_tolerance": 0.05, "max_drawdown": 0.5},
        "entropy": {"delta_h_max": 0.5}
    }"#;

    fn parse(text: &str) -> Result<RunConfig> {
        parse_config(text, Path::new("c.json"))
    }

    #[test]
    fn minimal_config_takes_policy_defaults() {
        let c = parse(MINIMAL).unwrap();
        assert_eq!(c.structural.alpha_policy_min, 0.10);
        assert_eq!(c.structural.alpha_policy_max, 0.15);
        assert_eq!(c.tilts, Tilts::default());
        assert_eq!(c.impact.participation_cap, None);
    }

    #[test]
    fn invariant_errors_name_the_key() {
        let bad = MINIMAL.replace("\"delta\": 0.5", "\"delta\": 1.2");
        let err = parse(&bad).unwrap_err();
        assert_eq!(err.code(), "invalid_field");
        assert!(err.to_string().contains("impact.delta must lie in (0,1)"), "{err}");
    }

    #[test]
    fn unknown_keys_are_schema_errors() {
        let bad = MINIMAL.replacen('{', "{\"alpha_forecast\": 0.2,", 1);
        let err = parse(&bad).unwrap_err();
        assert_eq!(err.code(), "schema");
        assert!(err.to_string().contains("alpha_forecast"), "{err}");
        let nested = MINIMAL.replace("\"delta_h_max\": 0.5", "\"delta_h_max\": 0.5, \"extra\": 1");
        assert_eq!(parse(&nested).unwrap_err().code(), "schema");
    }

    #[test]
    fn error_kinds_are_distinct() {
        assert_eq!(parse("{\"aum_usd\": ").unwrap_err().code(), "parse");
        assert_eq!(parse("{\"aum_usd\": 1e5,}").unwrap_err().code(), "parse");
        assert_eq!(parse("{}").unwrap_err().code(), "schema");
        let missing = load_config(Path::new("/definitely/not/here.json")).unwrap_err();
        assert_eq!(missing.code(), "io");
    }

    #[test]
    fn relative_paths_resolve_against_config_dir() {
        let mut c = parse(&MINIMAL.replacen('{', "{\"candidates\": \"u.csv\",", 1)).unwrap();
        c.base_dir = PathBuf::from("/cfg");
        assert_eq!(c.candidates_path(), Some(PathBuf::from("/cfg/u.csv")));
        assert_eq!(c.core_weights_path(), None);
    }
}
