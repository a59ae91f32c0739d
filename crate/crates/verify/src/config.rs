use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::suites::SuiteId;
use crate::{Result, VerifyError};

/// Environment variable that overrides the cache root.
pub const CACHE_ENV: &str = "THETA_CACHE_DIR";

/// Everything a run depends on. Paths are not serialized into reports, so
/// reports from different cache or output locations stay comparable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub qs: Vec<u32>,
    /// Use ψ_t(x) = ψ(tx) with t the least nonsquare instead of ψ.
    pub psi_twist: bool,
    /// Let O(V) act linearly on the Schrödinger model instead of through ω.
    /// The two differ by sgn^n on O(V) at Sp_2n when q ≡ 3 mod 4.
    #[serde(default)]
    pub linear_orthogonal: bool,
    /// Largest group that may be enumerated.
    pub budget: u64,
    /// Largest group whose character table may be computed.
    pub table_budget: u64,
    /// Highest Witt tower level searched for first occurrences.
    pub tower_bound: usize,
    pub suites: Vec<SuiteId>,
    /// Record wall-clock durations. Off by default so reports are reproducible.
    pub timings: bool,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub out_json: Option<PathBuf>,
    #[serde(skip)]
    pub out_text: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            qs: vec![3, 5],
            psi_twist: false,
            linear_orthogonal: false,
            budget: theta_core::groups::DEFAULT_BUDGET,
            table_budget: 200_000,
            tower_bound: 4,
            suites: SuiteId::all().to_vec(),
            timings: false,
            cache_dir: None,
            out_json: None,
            out_text: None,
        }
    }
}

fn is_supported(q: u32) -> bool {
    q % 2 == 1 && u8::try_from(q).is_ok_and(|p| theta_core::algebra::Field::prime(p).is_ok())
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.qs.is_empty() {
            return Err(VerifyError::InvalidConfig("no field sizes given".into()));
        }
        if let Some(q) = self.qs.iter().find(|&&q| !is_supported(q)) {
            return Err(VerifyError::InvalidConfig(format!("q = {q} is not a supported odd prime")));
        }
        if self.budget == 0 || self.table_budget == 0 || self.tower_bound == 0 {
            return Err(VerifyError::InvalidConfig("budgets must be positive".into()));
        }
        Ok(())
    }

    /// The cache root: the environment override, then the configured directory.
    pub fn cache_root(&self) -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV).map(PathBuf::from).or_else(|| self.cache_dir.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        for qs in [vec![], vec![4], vec![2], vec![9]] {
            assert!(RunConfig { qs, ..RunConfig::default() }.validate().is_err());
        }
        assert!(RunConfig { table_budget: 0, ..RunConfig::default() }.validate().is_err());
    }
}
