//! Verification suites for theta correspondences of small finite symplectic
//! and odd orthogonal groups, with an on-disk cache and deterministic reports.

pub mod cache;
pub mod config;
pub mod context;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use cache::Cache;
pub use config::RunConfig;
pub use context::Context;
pub use report::{emit_report, render_text, Report, Status, SuiteResult, Witness};
pub use suites::{run_all, run_suite, SuiteId};

/// Code version written into cache headers and reports.
pub const CODE_VERSION: &str = concat!("theta-verify-", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{what} has {order} elements, over the budget of {budget}")]
    BudgetExceeded { what: String, order: u128, budget: u64 },
    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Core(String),
}

macro_rules! core_error {
    ($($t:ty),*) => {$(
        impl From<$t> for VerifyError {
            fn from(e: $t) -> Self {
                VerifyError::Core(e.to_string())
            }
        }
    )*};
}

core_error!(
    theta_core::groups::GroupError,
    theta_core::chartab::ChartabError,
    theta_core::weil::WeilError,
    theta_core::weil::DecompositionError,
    theta_core::dl::DlError,
    theta_core::algebra::AlgebraError
);

pub type Result<T> = std::result::Result<T, VerifyError>;
