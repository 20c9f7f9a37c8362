use std::collections::BTreeMap;
use std::path::PathBuf;

use choquard_core::AlphaParam;
use serde::Serialize;
use thiserror::Error;

/// Named tolerances and their defaults. `--tol name=value` overrides these.
pub const TOLERANCES: &[(&str, f64)] = &[
    ("specfun", 1e-12),
    ("conformal", 1e-12),
    ("mass_density", 1e-10),
    ("mass_double", 1e-6),
    ("mass_anchor", 1e-5),
    ("riesz", 1e-5),
    ("riesz_anchor", 1e-12),
    ("orthogonality", 1e-10),
    ("residual", 1e-4),
    ("residual_quadrature", 1e-8),
    ("k_operator", 1e-4),
    ("slope", 1e-5),
    ("far_field", 1e-3),
    ("bracket", 2.0),
    ("funk_hecke_1d", 1e-8),
    ("funk_hecke_sphere", 1e-5),
    ("harmonic_norm", 1e-12),
    ("lambda_one", 1e-12),
    ("lambda_one_galerkin", 1e-6),
    ("lambda_rational", 1e-15),
    ("galerkin_offdiag", 1e-8),
    ("symmetry", 1e-10),
    ("kernel", 1e-6),
    ("kernel_gap", 0.6),
    ("kernel_residual", 1e-6),
    ("zero_limit", 1e-3),
    ("energy_ratio", 1e-8),
    ("liouville", 1e-10),
];

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("no alpha values given")]
    NoAlphas,
    #[error("alpha {0} is outside (0, 2)")]
    Alpha(f64),
    #[error("max degree must be at least 1")]
    MaxDegree,
    #[error("quadrature level {0} is below the minimum of 4")]
    QuadLevel(usize),
    #[error("unknown tolerance {0:?}")]
    UnknownTolerance(String),
    #[error("tolerance {name} must be a non-negative number, got {value:?}")]
    BadTolerance { name: String, value: String },
    #[error("malformed tolerance override {0:?}, expected name=value")]
    MalformedOverride(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub alphas: Vec<AlphaParam>,
    pub max_degree: usize,
    pub quad_level: usize,
    pub tol_overrides: BTreeMap<String, f64>,
    pub rng_seed: u64,
    pub output_path: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            alphas: [0.5, 1.0, 1.5].map(|a| AlphaParam::new(a).expect("default alpha")).to_vec(),
            max_degree: 8,
            quad_level: 24,
            tol_overrides: BTreeMap::new(),
            rng_seed: 1,
            output_path: None,
        }
    }
}

impl SuiteConfig {
    pub fn new(
        alphas: &[f64],
        max_degree: usize,
        quad_level: usize,
        tol_overrides: BTreeMap<String, f64>,
        rng_seed: u64,
        output_path: Option<PathBuf>,
    ) -> Result<Self, ConfigError> {
        if alphas.is_empty() {
            return Err(ConfigError::NoAlphas);
        }
        let alphas = alphas
            .iter()
            .map(|&a| AlphaParam::new(a).map_err(|_| ConfigError::Alpha(a)))
            .collect::<Result<Vec<_>, _>>()?;
        if max_degree < 1 {
            return Err(ConfigError::MaxDegree);
        }
        if quad_level < 4 {
            return Err(ConfigError::QuadLevel(quad_level));
        }
        for (name, &value) in &tol_overrides {
            if default_tolerance(name).is_none() {
                return Err(ConfigError::UnknownTolerance(name.clone()));
            }
            if !(value.is_finite() && value >= 0.0) {
                return Err(ConfigError::BadTolerance { name: name.clone(), value: value.to_string() });
            }
        }
        Ok(Self { alphas, max_degree, quad_level, tol_overrides, rng_seed, output_path })
    }

    /// Effective tolerance for `name`.
    ///
    /// # Panics
    /// If `name` is not in [`TOLERANCES`].
    pub fn tol(&self, name: &str) -> f64 {
        self.tol_overrides
            .get(name)
            .copied()
            .or_else(|| default_tolerance(name))
            .unwrap_or_else(|| panic!("unregistered tolerance {name}"))
    }
}

pub fn default_tolerance(name: &str) -> Option<f64> {
    TOLERANCES.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
}

/// Parses `name=value,name=value`.
pub fn parse_tol_overrides(specs: &[String]) -> Result<BTreeMap<String, f64>, ConfigError> {
    let mut out = BTreeMap::new();
    for item in specs.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item.split_once('=').ok_or_else(|| ConfigError::MalformedOverride(item.to_owned()))?;
        let (name, value) = (name.trim(), value.trim());
        let v: f64 =
            value.parse().map_err(|_| ConfigError::BadTolerance { name: name.to_owned(), value: value.to_owned() })?;
        out.insert(name.to_owned(), v);
    }
    Ok(out)
}

/// The configuration as written into the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub alphas: Vec<f64>,
    pub max_degree: usize,
    pub quad_level: usize,
    pub tol_overrides: BTreeMap<String, f64>,
    pub rng_seed: u64,
    pub output_path: Option<String>,
}

impl From<&SuiteConfig> for ConfigEcho {
    fn from(c: &SuiteConfig) -> Self {
        Self {
            alphas: c.alphas.iter().map(|a| a.value()).collect(),
            max_degree: c.max_degree,
            quad_level: c.quad_level,
            tol_overrides: c.tol_overrides.clone(),
            rng_seed: c.rng_seed,
            output_path: c.output_path.as_ref().map(|p| p.display().to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let none = BTreeMap::new;
        assert!(SuiteConfig::new(&[1.0], 8, 24, none(), 0, None).is_ok());
        assert_eq!(SuiteConfig::new(&[], 8, 24, none(), 0, None), Err(ConfigError::NoAlphas));
        assert_eq!(SuiteConfig::new(&[2.5], 8, 24, none(), 0, None), Err(ConfigError::Alpha(2.5)));
        assert_eq!(SuiteConfig::new(&[0.0], 8, 24, none(), 0, None), Err(ConfigError::Alpha(0.0)));
        assert_eq!(SuiteConfig::new(&[1.0], 0, 24, none(), 0, None), Err(ConfigError::MaxDegree));
        assert_eq!(SuiteConfig::new(&[1.0], 8, 3, none(), 0, None), Err(ConfigError::QuadLevel(3)));
        let bad = BTreeMap::from([("nope".to_owned(), 1.0)]);
        assert!(matches!(SuiteConfig::new(&[1.0], 8, 24, bad, 0, None), Err(ConfigError::UnknownTolerance(_))));
    }

    #[test]
    fn overrides() {
        let o = parse_tol_overrides(&["kernel=1e-15, riesz=1e-4".to_owned()]).unwrap();
        assert_eq!(o["kernel"], 1e-15);
        let cfg = SuiteConfig::new(&[1.0], 8, 8, o, 0, None).unwrap();
        assert_eq!(cfg.tol("kernel"), 1e-15);
        assert_eq!(cfg.tol("liouville"), 1e-10);
        assert!(matches!(parse_tol_overrides(&["kernel".to_owned()]), Err(ConfigError::MalformedOverride(_))));
        assert!(matches!(parse_tol_overrides(&["kernel=x".to_owned()]), Err(ConfigError::BadTolerance { .. })));
    }

    #[test]
    fn tolerance_names_are_unique() {
        let mut names: Vec<_> = TOLERANCES.iter().map(|(n, _)| n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), TOLERANCES.len());
    }
}
