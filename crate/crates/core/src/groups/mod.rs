//! Finite classical groups: formed spaces, enumerated group tables,
//! parabolic subgroups, spinor norms and dual-pair embeddings.

pub mod embed;
pub mod formed;
pub mod parabolic;
pub mod persist;
pub mod spinor;
pub mod table;

pub use embed::DualPairEmbedding;
pub use formed::{FormKind, FormedSpace, Sign};
pub use parabolic::{LeviDescriptor, ParabolicData};
pub use spinor::spinor_norm;
pub use table::{build_group, ConjClass, Family, GroupDescriptor, GroupTable, Subgroup, DEFAULT_BUDGET};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded { order: u128, budget: u64 },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("enumerated order {found} does not match the order formula {expected}")]
    OrderMismatch { expected: u128, found: u128 },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element is not special orthogonal for the stored form")]
    NotSpecialOrthogonal,
    #[error("descriptor is not a standard Levi: {0}")]
    NotALevi(String),
    #[error("incompatible form kinds for a dual pair")]
    IncompatibleKinds,
    #[error("bad form: {0}")]
    BadForm(String),
    #[error("corrupt group table: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
