//! Witt towers, theta lifts along them, and first occurrence.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::character::{decompose_dual_pair, pair_character, restrict_left, restrict_right, MultiplicityMatrix};
use super::WeilError;
use crate::algebra::{AddChar, Field};
use crate::chartab::{character_table, CharacterTable, ClassFunction};
use crate::groups::{build_group, DualPairEmbedding, FormKind, FormedSpace, GroupDescriptor, GroupTable, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tower {
    /// Sp_{2n'}.
    Sp,
    /// O^ε_{2n'+1}.
    OddOrth(Sign),
    /// O^+_{2n'} or O^-_{2n'+2}.
    EvenOrth(Sign),
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tower::Sp => write!(f, "Sp"),
            Tower::OddOrth(e) => write!(f, "O{e}odd"),
            Tower::EvenOrth(e) => write!(f, "O{e}even"),
        }
    }
}

impl Tower {
    pub fn space(&self, level: usize, f: &Field) -> FormedSpace {
        match *self {
            Tower::Sp => FormedSpace::symplectic(level, f),
            Tower::OddOrth(e) => FormedSpace::odd_orthogonal(level, e, f),
            Tower::EvenOrth(Sign::Plus) => FormedSpace::even_orthogonal(level, Sign::Plus, f).expect("split form"),
            Tower::EvenOrth(Sign::Minus) => {
                FormedSpace::even_orthogonal(level + 1, Sign::Minus, f).expect("anisotropic kernel")
            }
        }
    }
    pub fn descriptor(&self, level: usize, f: &Field) -> GroupDescriptor {
        let fs = f.spec();
        match *self {
            Tower::Sp => GroupDescriptor::sp(level as u32, fs),
            Tower::OddOrth(e) => GroupDescriptor::orthogonal(2 * level as u32 + 1, e, fs),
            Tower::EvenOrth(Sign::Plus) => GroupDescriptor::orthogonal(2 * level as u32, Sign::Plus, fs),
            Tower::EvenOrth(Sign::Minus) => GroupDescriptor::orthogonal(2 * level as u32 + 2, Sign::Minus, fs),
        }
    }
    pub fn is_symplectic(&self) -> bool {
        matches!(self, Tower::Sp)
    }
}

/// One level of a tower, with its group table when it fits the budget.
#[derive(Clone, Debug)]
pub struct TowerPoint {
    pub tower: Tower,
    pub level: usize,
    pub space: FormedSpace,
    pub table: Option<Arc<GroupTable>>,
}

impl TowerPoint {
    pub fn new(tower: Tower, level: usize, f: &Field) -> Self {
        TowerPoint { tower, level, space: tower.space(level, f), table: None }
    }
    /// Attach the enumerated group, if its order is within `budget`.
    pub fn with_table(mut self, f: &Field, budget: u64) -> Result<Self, WeilError> {
        let d = self.tower.descriptor(self.level, f);
        let t = build_group(&d, budget).map_err(|e| WeilError::Unavailable(e.to_string()))?;
        self.table = Some(Arc::new(t));
        Ok(self)
    }
}

/// Pair a source space with a tower space, symplectic side first.
fn embedding(source: &FormedSpace, target: &FormedSpace, f: &Field) -> Result<(DualPairEmbedding, bool), WeilError> {
    match (source.kind(), target.kind()) {
        (FormKind::Symplectic, FormKind::Symmetric) => {
            Ok((DualPairEmbedding::new(source, target, f).map_err(|e| WeilError::Unavailable(e.to_string()))?, true))
        }
        (FormKind::Symmetric, FormKind::Symplectic) => {
            Ok((DualPairEmbedding::new(target, source, f).map_err(|e| WeilError::Unavailable(e.to_string()))?, false))
        }
        _ => Err(WeilError::IncompatibleTower),
    }
}

/// Whether Θ(π) ≠ 0 at a tower point: (ω|_G, π)_G ≠ 0, which needs no table of G'.
pub fn theta_nonzero(pi: &ClassFunction, source: &FormedSpace, point: &TowerPoint, psi: AddChar) -> Result<bool, WeilError> {
    let g = pi.group();
    let f = g.field().clone();
    let (emb, source_is_left) = embedding(source, &point.space, &f)?;
    let res = if source_is_left { restrict_left(&emb, g, psi)? } else { restrict_right(&emb, g, psi)? };
    let ip = res.inner_product(pi).map_err(|e| WeilError::Internal(e.to_string()))?;
    Ok(!ip.is_zero())
}

/// Smallest level n' ≤ max_level with Θ(π) ≠ 0.
pub fn first_occurrence(
    pi: &ClassFunction,
    source: &FormedSpace,
    tower: Tower,
    max_level: usize,
    psi: AddChar,
) -> Result<usize, WeilError> {
    let f = pi.group().field().clone();
    for level in 0..=max_level {
        if theta_nonzero(pi, source, &TowerPoint::new(tower, level, &f), psi)? {
            return Ok(level);
        }
    }
    Err(WeilError::BoundExhausted { bound: max_level })
}

/// Full decomposition of ω for the source group against a tower point with a table.
/// The symplectic member is always the left factor of the result.
pub fn decompose_at(
    source: &Arc<CharacterTable>,
    source_space: &FormedSpace,
    point: &TowerPoint,
    point_table: &Arc<CharacterTable>,
    psi: AddChar,
) -> Result<MultiplicityMatrix, WeilError> {
    let f = source.group().field().clone();
    let (emb, source_is_left) = embedding(source_space, &point.space, &f)?;
    let (lt, rt) = if source_is_left { (source, point_table) } else { (point_table, source) };
    let theta = pair_character(&emb, lt.group(), rt.group(), psi)?;
    decompose_dual_pair(&theta, lt, rt).map_err(|e| WeilError::Decomposition(e.to_string()))
}

/// Θ(π_i) at a tower point: a class function on the tower group (possibly zero).
pub fn theta_lift(
    source: &Arc<CharacterTable>,
    i: usize,
    source_space: &FormedSpace,
    point: &TowerPoint,
    psi: AddChar,
) -> Result<ClassFunction, WeilError> {
    let table = point
        .table
        .clone()
        .ok_or_else(|| WeilError::Unavailable(format!("{} level {} has no table", point.tower, point.level)))?;
    let pt = Arc::new(character_table(table).map_err(|e| WeilError::Internal(e.to_string()))?);
    let mm = decompose_at(source, source_space, point, &pt, psi)?;
    Ok(if source_space.kind() == FormKind::Symplectic { mm.theta_lift(i) } else { mm.theta_lift_right(i) })
}
