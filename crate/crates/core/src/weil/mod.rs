//! The Weil representation of Sp_{2N}(F_q) in the Schrödinger model, realized
//! through quadratic-Gaussian kernels, and its restriction to dual pairs.

pub mod bruhat;
pub mod character;
pub mod dense;
pub mod kernel;
pub mod tower;

use thiserror::Error;

use crate::algebra::{quadratic_gauss_sum, AddChar, Cyclotomic, Field};

pub use bruhat::{bruhat, levi_element, lower_unipotent_element, weil_operator, weyl_element, BruhatFactors};
pub use character::{
    decompose_dual_pair, pair_character, restrict_left, restrict_right, weil_character, DecompositionError,
    MultiplicityJson, MultiplicityMatrix,
};
pub use dense::DenseOp;
pub use kernel::QuadGaussOp;
pub use tower::{decompose_at, first_occurrence, theta_lift, theta_nonzero, Tower, TowerPoint};

#[derive(Debug, Error)]
pub enum WeilError {
    #[error("matrix is not symplectic for the standard form")]
    NotSymplectic,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("no occurrence up to level {bound}")]
    BoundExhausted { bound: usize },
    #[error("source group and tower are not a dual pair")]
    IncompatibleTower,
    #[error("unavailable: {0}")]
    Unavailable(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

/// Normalizing scalar of the one-coordinate Fourier kernel: G(−½)⁻¹ where
/// G(a) = Σ_x ψ(a x²).
pub fn fourier_scalar(f: &Field, psi: AddChar) -> Cyclotomic {
    let a = f.neg(f.half());
    let g = quadratic_gauss_sum(a, f, psi).expect("nonzero coefficient");
    g.conj().scale(1, f.q() as i128)
}
