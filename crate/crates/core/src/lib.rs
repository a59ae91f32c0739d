//! Finite symplectic and odd orthogonal groups over small fields, their exact
//! character tables, the Weil representation of dual pairs, and rank-one
//! Deligne-Lusztig characters.

pub mod algebra;
pub mod chartab;
pub mod dl;
pub mod groups;
pub mod weil;
pub mod par;
