//! The Weil character restricted to a dual pair, and its decomposition.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{weil_operator, WeilError};
use crate::algebra::{AddChar, Cyclotomic, FqMatrix};
use crate::chartab::{CharacterTable, ChartabError, ClassFunction, PairClassFunction};
use crate::groups::{DualPairEmbedding, GroupTable};

/// tr ω(ι(g, g')), computed from the kernel without densifying.
pub fn weil_character(emb: &DualPairEmbedding, g: &FqMatrix, gp: &FqMatrix, psi: AddChar) -> Result<Cyclotomic, WeilError> {
    if emb.half_dim() == 0 {
        return Ok(Cyclotomic::one());
    }
    let f = emb.field();
    let w = emb.embed(g, gp);
    Ok(weil_operator(&w, f, psi)?.trace(f))
}

fn check_dims(emb: &DualPairEmbedding, left: &GroupTable, right: &GroupTable) -> Result<(), WeilError> {
    if left.dim() != emb.left().dim() || right.dim() != emb.right().dim() {
        return Err(WeilError::DimensionMismatch(format!(
            "{} x {} against spaces of dimension {} and {}",
            left.label(),
            right.label(),
            emb.left().dim(),
            emb.right().dim()
        )));
    }
    Ok(())
}

/// ω_{G,G'} on all pairs of class representatives.
pub fn pair_character(
    emb: &DualPairEmbedding,
    left: &Arc<GroupTable>,
    right: &Arc<GroupTable>,
    psi: AddChar,
) -> Result<PairClassFunction, WeilError> {
    check_dims(emb, left, right)?;
    let b = right.num_classes();
    let vals = crate::par::map_range(left.num_classes() * b, |i| {
        let g = left.element(left.class(i / b).rep);
        let gp = right.element(right.class(i % b).rep);
        weil_character(emb, &g, &gp, psi)
    });
    let values = vals.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(PairClassFunction::new(left.clone(), right.clone(), values).expect("sizes match"))
}

/// g ↦ tr ω(g, 1), a class function on the left group.
pub fn restrict_left(emb: &DualPairEmbedding, left: &Arc<GroupTable>, psi: AddChar) -> Result<ClassFunction, WeilError> {
    let one = FqMatrix::identity(emb.right().dim());
    let vals = crate::par::map_range(left.num_classes(), |c| {
        weil_character(emb, &left.element(left.class(c).rep), &one, psi)
    });
    let values = vals.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(ClassFunction::new(left.clone(), values).expect("sizes match"))
}

/// g' ↦ tr ω(1, g'), a class function on the right group.
pub fn restrict_right(emb: &DualPairEmbedding, right: &Arc<GroupTable>, psi: AddChar) -> Result<ClassFunction, WeilError> {
    let one = FqMatrix::identity(emb.left().dim());
    let vals = crate::par::map_range(right.num_classes(), |c| {
        weil_character(emb, &one, &right.element(right.class(c).rep), psi)
    });
    let values = vals.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(ClassFunction::new(right.clone(), values).expect("sizes match"))
}

#[derive(Debug, thiserror::Error)]
pub enum DecompositionError {
    #[error("multiplicity of ({left}, {right}) is {value}, not a nonnegative integer")]
    NonIntegerMultiplicity { left: usize, right: usize, value: String },
    #[error("dimension bookkeeping failed: Σ m·d·d' = {found}, expected {expected}")]
    Dimension { found: u128, expected: u128 },
    #[error(transparent)]
    Chartab(#[from] ChartabError),
}

/// m_{π,π'} for ω_{G,G'} = ⊕ m_{π,π'} π ⊗ π'.
#[derive(Clone, Debug)]
pub struct MultiplicityMatrix {
    pub left: Arc<CharacterTable>,
    pub right: Arc<CharacterTable>,
    pub entries: Vec<Vec<u64>>,
    pub total_dim: u128,
}

/// Two-stage contraction: first against π on G, then against π' on G'.
pub fn decompose_dual_pair(
    theta: &PairClassFunction,
    left: &Arc<CharacterTable>,
    right: &Arc<CharacterTable>,
) -> Result<MultiplicityMatrix, DecompositionError> {
    let partial = crate::par::map_slice(left.characters(), |pi| theta.contract_left(pi));
    let mut entries = Vec::with_capacity(left.len());
    for (i, phi) in partial.into_iter().enumerate() {
        let phi = phi?;
        let mut row = Vec::with_capacity(right.len());
        for (j, pp) in right.characters().iter().enumerate() {
            let v = phi.inner_product(pp)?;
            match v.to_integer() {
                Some(m) if m >= 0 => row.push(m as u64),
                _ => return Err(DecompositionError::NonIntegerMultiplicity { left: i, right: j, value: v.to_string() }),
            }
        }
        entries.push(row);
    }
    let total_dim = theta
        .get(0, 0)
        .to_integer()
        .ok_or(DecompositionError::Dimension { found: 0, expected: 0 })? as u128;
    let mm = MultiplicityMatrix { left: left.clone(), right: right.clone(), entries, total_dim };
    mm.check_dimension()?;
    Ok(mm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrLabel {
    pub index: usize,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityJson {
    pub left_group: String,
    pub right_group: String,
    pub total_dim: String,
    pub left: Vec<IrrLabel>,
    pub right: Vec<IrrLabel>,
    /// Sparse entries (left index, right index, multiplicity).
    pub entries: Vec<(usize, usize, u64)>,
}

impl MultiplicityJson {
    /// Re-check Σ m·d·d' against the stored total dimension.
    pub fn verify_dimension(&self) -> Result<(), DecompositionError> {
        let expected: u128 = self.total_dim.parse().map_err(|_| DecompositionError::Dimension { found: 0, expected: 0 })?;
        let found: u128 = self
            .entries
            .iter()
            .map(|&(i, j, m)| m as u128 * self.left[i].degree as u128 * self.right[j].degree as u128)
            .sum();
        if found != expected {
            return Err(DecompositionError::Dimension { found, expected });
        }
        Ok(())
    }
}

impl MultiplicityMatrix {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn check_dimension(&self) -> Result<(), DecompositionError> {
        let ld = self.left.degrees();
        let rd = self.right.degrees();
        let found: u128 = self
            .entries
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &m)| (i, j, m)))
            .map(|(i, j, m)| m as u128 * ld[i] as u128 * rd[j] as u128)
            .sum();
        if found != self.total_dim {
            return Err(DecompositionError::Dimension { found, expected: self.total_dim });
        }
        Ok(())
    }

    /// Nonzero entries (left, right, multiplicity), row-major.
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m != 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Θ(π_i) = Σ_j m_ij π'_j on the right group.
    pub fn theta_lift(&self, i: usize) -> ClassFunction {
        let mut out = ClassFunction::zero(self.right.group().clone());
        for (j, &m) in self.entries[i].iter().enumerate() {
            if m != 0 {
                out = out.add(&self.right.get(j).scale_int(m as i128)).expect("same group");
            }
        }
        out
    }

    /// Θ(π'_j) on the left group.
    pub fn theta_lift_right(&self, j: usize) -> ClassFunction {
        let mut out = ClassFunction::zero(self.left.group().clone());
        for (i, row) in self.entries.iter().enumerate() {
            if row[j] != 0 {
                out = out.add(&self.left.get(i).scale_int(row[j] as i128)).expect("same group");
            }
        }
        out
    }

    pub fn to_json(&self) -> MultiplicityJson {
        let lab = |t: &CharacterTable| {
            t.degrees().into_iter().enumerate().map(|(index, degree)| IrrLabel { index, degree }).collect()
        };
        MultiplicityJson {
            left_group: self.left.group().label(),
            right_group: self.right.group().label(),
            total_dim: self.total_dim.to_string(),
            left: lab(&self.left),
            right: lab(&self.right),
            entries: self.nonzero(),
        }
    }
}
