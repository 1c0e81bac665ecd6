use serde::Deserialize;

use crate::SliceError;

/// Defaults read from a TOML file; every key mirrors a command line flag
/// and flags take precedence.
///
/// ```toml
/// c = 1.0
/// re = [-2.0, 2.0]
/// im = [-3.1, 3.1]
/// size = "200x200"
/// budget = 50000
/// threads = 8
/// out = "slice.ppm"
/// ```
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub c: Option<f64>,
    pub mu: Option<[f64; 2]>,
    pub tau: Option<[f64; 2]>,
    pub re: Option<[f64; 2]>,
    pub im: Option<[f64; 2]>,
    pub size: Option<String>,
    pub budget: Option<usize>,
    pub threads: Option<usize>,
    pub out: Option<String>,
    pub report: Option<String>,
    pub cs: Option<Vec<f64>>,
    #[serde(rename = "in")]
    pub input: Option<String>,
    pub surface: Option<String>,
    pub chain: Option<String>,
    pub json: Option<bool>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, SliceError> {
        toml::from_str(text).map_err(|e| SliceError::InvalidJob(format!("config: {e}")))
    }
}
