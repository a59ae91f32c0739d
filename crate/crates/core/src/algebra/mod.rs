//! Exact arithmetic: finite fields, cyclotomic numbers, matrices over F_q and
//! quadratic forms.

pub mod cyclotomic;
pub mod field;
pub mod matrix;
pub mod quadratic;

pub use cyclotomic::{euler_phi, lcm_u32, Cyclotomic};
pub use field::{legendre, Fe, Field, FieldSpec};
pub use matrix::FqMatrix;
pub use quadratic::{diagonalize_form, form_gauss_sum, quadratic_gauss_sum, AddChar, QuadraticForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unsupported field F_{{{p}^{k}}}: need p in {{3,5,7}} and k in {{1,2}}")]
    UnsupportedField { p: u8, k: u8 },
    #[error("no multiplicative generator found")]
    NoGenerator,
    #[error("degenerate Gauss sum: a = 0 (use the count q instead)")]
    DegenerateSum,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}
