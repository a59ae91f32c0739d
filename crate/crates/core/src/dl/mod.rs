//! Weyl groups, maximal tori, Deligne-Lusztig characters at small rank,
//! uniform projection and series classification.

mod eval;
mod induce;
mod pan;
mod project;
mod series;
pub mod torus;
pub mod weyl;

use thiserror::Error;

pub use eval::{chi_character, DlEvaluator};
pub use induce::{levi_induce, quadratic_exponents};
pub use pan::{pan_rhs, uniform_pair_projection};
pub use project::{independent_subset, uniform_basis, uniform_project};
pub use series::{classify_series, ChainWitness, SeriesClass, SeriesLabel, SeriesWitness};
pub use torus::{theta_kl, theta_kl_prime, theta_w, TorusCharacter, TorusDescriptor, TorusFactor};
pub use weyl::{bipartitions, partitions, weyl_classes, weyl_group_order, Bipartition, SignedCycle, SignedCycleType};

use crate::algebra::AlgebraError;
use crate::chartab::ChartabError;
use crate::groups::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DlError {
    #[error("unsupported scale: {0}")]
    UnsupportedScale(String),
    #[error("not an Sp_2n or SO_2n+1 table: {0}")]
    NotClassical(String),
    #[error("torus of rank {torus} in a group of rank {group}")]
    RankMismatch { torus: usize, group: usize },
    #[error("basis of uniform functions is degenerate")]
    BasisDegenerate,
    #[error("expected a rational value: {0}")]
    NotRational(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("character table: {0}")]
    Chartab(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<ChartabError> for DlError {
    fn from(e: ChartabError) -> Self {
        DlError::Chartab(e.to_string())
    }
}
