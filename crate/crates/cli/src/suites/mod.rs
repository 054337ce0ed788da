//! Verification suites behind a name-indexed registry.
//!
//! Each suite turns one slice of the identity landscape into a list of
//! [`Check`]s: `identities` plays closed forms against brute force and
//! against each other, `bijections` exercises the structural
//! constructions, `asymptotics` pins singularity constants and growth
//! laws, `oeis` compares against bundled sequence prefixes. Suites are
//! pure given their [`SuiteConfig`]; reports are deterministic.

mod asymptotics;
mod bijections;
mod identities;
mod oeis;

use std::collections::BTreeMap;
use std::path::PathBuf;

use num::{BigInt, BigRational, BigUint};
use schroder_core::enumeration::Guards;
use schroder_core::series::frac;

use crate::report::{Check, ConfigEcho, Report};

pub use asymptotics::AsymptoticsSuite;
pub use bijections::BijectionsSuite;
pub use identities::IdentitiesSuite;
pub use oeis::OeisSuite;

/// Shared configuration. The defaults are the acceptance parameters; the
/// CLI can override the generic knobs (`--n-max`, `--trunc`, `--grid`,
/// `--offline`, `--cache-dir`).
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// highest order compared against enumeration (per-family guards cap it)
    pub n_max: usize,
    /// truncation for series-vs-series identity checks
    pub trunc: usize,
    /// marker values; the grid is this list squared
    pub grid: Vec<BigRational>,
    pub guards: Guards,
    pub offline: bool,
    pub cache_dir: PathBuf,
    /// truncation for the growth-law probes
    pub growth_trunc: usize,
    /// probe orders for the convergence diagnostic, ascending
    pub growth_probes: [usize; 3],
    /// highest order of the pyramid-weight transfer check
    pub pyramid_n_max: usize,
    /// highest order for the series-only identities
    pub deep_n_max: usize,
    /// insertion checks: base order and added-step ceilings
    pub insertion_n_max: usize,
    pub insertion_m_max: usize,
    /// highest total order of the disjoint-union reconstruction
    pub union_n_max: usize,
    /// highest order of the factorization round-trip
    pub factorization_n_max: usize,
    /// sequences checked by the oeis suite beyond the bundled ones
    pub extra_sequences: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 8,
            trunc: 64,
            grid: vec![
                frac(1, 1),
                frac(2, 1),
                frac(3, 1),
                frac(5, 1),
                frac(1, 2),
                frac(1, 3),
            ],
            guards: Guards::default(),
            offline: false,
            cache_dir: default_cache_dir(),
            growth_trunc: 256,
            growth_probes: [50, 100, 200],
            pyramid_n_max: 10,
            deep_n_max: 20,
            insertion_n_max: 5,
            insertion_m_max: 5,
            union_n_max: 7,
            factorization_n_max: 8,
            extra_sequences: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n_max: self.n_max,
            trunc: self.trunc,
            grid: self.grid.iter().map(|g| g.to_string()).collect(),
            growth_trunc: self.growth_trunc,
            offline: self.offline,
        }
    }

    /// All `(y, z)` pairs of the marker grid.
    pub fn grid_points(&self) -> Vec<(BigRational, BigRational)> {
        let mut points = Vec::with_capacity(self.grid.len() * self.grid.len());
        for y in &self.grid {
            for z in &self.grid {
                points.push((y.clone(), z.clone()));
            }
        }
        points
    }

    pub fn grid_label(&self) -> String {
        let values: Vec<String> = self.grid.iter().map(|g| g.to_string()).collect();
        format!("grid {{{}}}^2", values.join(","))
    }
}

/// Default on-disk cache for fetched sequences, overridable through
/// `SCHRODER_CACHE_DIR`.
pub fn default_cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("SCHRODER_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    if let Ok(home) = std::env::var("HOME") {
        return PathBuf::from(home).join(".cache").join("schroder").join("oeis");
    }
    PathBuf::from(".schroder-cache")
}

/// A named verification suite.
pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, config: &SuiteConfig) -> Vec<Check>;
}

/// Name-indexed suite registry; `all` runs every registered suite.
pub struct SuiteRegistry {
    suites: BTreeMap<&'static str, Box<dyn VerifySuite>>,
}

impl SuiteRegistry {
    pub fn with_builtins() -> Self {
        let mut suites: BTreeMap<&'static str, Box<dyn VerifySuite>> = BTreeMap::new();
        for suite in [
            Box::new(IdentitiesSuite) as Box<dyn VerifySuite>,
            Box::new(BijectionsSuite),
            Box::new(AsymptoticsSuite),
            Box::new(OeisSuite),
        ] {
            suites.insert(suite.name(), suite);
        }
        SuiteRegistry { suites }
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn VerifySuite> {
        self.suites.get(name).map(|s| s.as_ref())
    }

    /// Run one suite by name, or every suite for `all`.
    pub fn run(&self, name: &str, config: &SuiteConfig) -> anyhow::Result<Vec<Report>> {
        if name == "all" {
            return Ok(self
                .suites
                .values()
                .map(|s| Report::new(s.name(), config.echo(), s.run(config)))
                .collect());
        }
        let suite = self
            .get(name)
            .ok_or_else(|| anyhow::anyhow!(
                "unknown suite `{name}` (available: {}, all)",
                self.names().join(", ")
            ))?;
        Ok(vec![Report::new(suite.name(), config.echo(), suite.run(config))])
    }
}

pub(crate) fn uint_rat(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lists_builtins() {
        let reg = SuiteRegistry::with_builtins();
        assert_eq!(reg.names(), vec!["asymptotics", "bijections", "identities", "oeis"]);
        assert!(reg.get("identities").is_some());
        assert!(reg.get("nope").is_none());
        assert!(reg.run("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let reg = SuiteRegistry::with_builtins();
        let mut config = SuiteConfig::default();
        config.n_max = 3;
        config.trunc = 8;
        config.deep_n_max = 8;
        config.pyramid_n_max = 4;
        config.insertion_n_max = 2;
        config.insertion_m_max = 2;
        config.union_n_max = 3;
        config.factorization_n_max = 3;
        config.grid = vec![frac(1, 1), frac(2, 1)];
        let a = reg.run("identities", &config).unwrap()[0].to_json();
        let b = reg.run("identities", &config).unwrap()[0].to_json();
        assert_eq!(a, b);
    }
}
