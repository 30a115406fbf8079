//! JSON configuration: dimension, pairing matrix, scheme, Fock split and
//! defaults for the randomized suites. Scalars are strings to stay exact.

use std::collections::BTreeMap;
use std::str::FromStr;

use qfa_core::{FockStructure, Monomial, PairingMatrix, Scalar, Scheme};
use serde::Deserialize;
use thiserror::Error;

pub const DEFAULT_CONFIG: &str = include_str!("../../../configs/default.json");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("invalid config: {0}")]
    Core(#[from] qfa_core::Error),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockSpec {
    /// Creation generators; `creation[k]* = annihilation[k]`.
    pub creation: Vec<usize>,
    pub annihilation: Vec<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub max_grade: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub dimension: usize,
    pub pairing: Vec<Vec<String>>,
    #[serde(default)]
    pub symmetric: bool,
    pub zeta: Option<BTreeMap<String, String>>,
    pub fock: Option<FockSpec>,
    #[serde(default)]
    pub check: CheckSpec,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub dimension: usize,
    pub pairing: PairingMatrix,
    pub scheme: Option<Scheme>,
    pub fock: Option<FockStructure>,
    pub check: CheckSpec,
}

fn scalar(text: &str, what: &str) -> Result<Scalar, ConfigError> {
    Scalar::from_str(text).map_err(|_| ConfigError::Invalid(format!("{what}: bad scalar {text:?}")))
}

/// Parses a zeta key such as `"1,1,2"`.
pub fn monomial_key(key: &str, dim: usize) -> Result<Monomial, ConfigError> {
    let bad = |why: &str| ConfigError::Invalid(format!("zeta key {key:?}: {why}"));
    let indices = key
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad("not a list of indices")))
        .collect::<Result<Vec<_>, _>>()?;
    if indices.len() < 2 {
        return Err(bad("needs at least two indices"));
    }
    if indices.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad("indices must be sorted"));
    }
    if indices.iter().any(|&k| k == 0 || k > dim) {
        return Err(bad(&format!("indices must lie in 1..={dim}")));
    }
    Ok(Monomial::from_indices(indices))
}

impl RawConfig {
    pub fn validate(self) -> Result<Config, ConfigError> {
        let d = self.dimension;
        if d == 0 {
            return Err(ConfigError::Invalid("dimension must be positive".into()));
        }
        let rows = self
            .pairing
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| scalar(x, &format!("pairing[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != d {
            return Err(ConfigError::Invalid(format!(
                "pairing has {} rows, expected {d}",
                rows.len()
            )));
        }
        let pairing = PairingMatrix::new(rows, self.symmetric)?;
        let scheme = match self.zeta {
            None => None,
            Some(map) => {
                let values = map
                    .iter()
                    .map(|(k, v)| Ok((monomial_key(k, d)?, scalar(v, &format!("zeta[{k:?}]"))?)))
                    .collect::<Result<Vec<_>, ConfigError>>()?;
                Some(Scheme::new(values)?)
            }
        };
        let fock = match self.fock {
            None => None,
            Some(spec) => {
                if spec.creation.len() != spec.annihilation.len() {
                    return Err(ConfigError::Invalid(
                        "fock: creation and annihilation lists differ in length".into(),
                    ));
                }
                let pairs: Vec<(usize, usize)> =
                    spec.creation.iter().copied().zip(spec.annihilation.iter().copied()).collect();
                Some(FockStructure::new(d, &pairs)?)
            }
        };
        Ok(Config {
            dimension: d,
            pairing,
            scheme,
            fock,
            check: self.check,
        })
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config, ConfigError> {
        serde_json::from_str::<RawConfig>(text)?.validate()
    }

    pub fn load(path: &std::path::Path) -> Result<Config, ConfigError> {
        Config::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn default_config() -> Config {
        Config::from_json(DEFAULT_CONFIG).expect("shipped default config is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_loads() {
        let c = Config::default_config();
        assert!(c.pairing.is_symmetric());
        assert!(c.scheme.is_some());
        assert!(c.fock.is_some());
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            r#"{"dimension": 2, "pairing": [["1","2"]]}"#,
            r#"{"dimension": 2, "pairing": [["1","2"],["3","4"]], "symmetric": true}"#,
            r#"{"dimension": 1, "pairing": [["1/0"]]}"#,
            r#"{"dimension": 2, "pairing": [["1","0"],["0","1"]], "zeta": {"2,1": "1"}}"#,
            r#"{"dimension": 2, "pairing": [["1","0"],["0","1"]], "zeta": {"1": "1"}}"#,
            r#"{"dimension": 2, "pairing": [["1","0"],["0","1"]], "zeta": {"1,3": "1"}}"#,
            r#"{"dimension": 2, "pairing": [["1","0"],["0","1"]], "fock": {"creation": [1], "annihilation": [1]}}"#,
            r#"{"dimension": 2, "pairing": [["1","0"],["0","1"]], "extra": 1}"#,
        ];
        for text in bad {
            assert!(Config::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn accepts_complex_entries() {
        let c = Config::from_json(
            r#"{"dimension": 2, "pairing": [["1/2", "1+1/3i"], ["1+1/3i", "-2"]], "symmetric": true,
                "zeta": {"1,1,2": "3/4-1i"}}"#,
        )
        .unwrap();
        assert_eq!(c.pairing.get(1, 2), &Scalar::complex((1, 1), (1, 3)));
    }
}
