use super::formed::{FormKind, FormedSpace};
use super::GroupError;
use crate::algebra::{Field, FqMatrix};

/// The embedding Sp(V) × O(V') → Sp(V ⊗ V').
///
/// W = V ⊗ V' carries the polarization X = span(e_i ⊗ u_j),
/// Y = span(f_i ⊗ ū_j), with ū_j the basis of V' dual to u_j under the
/// symmetric form, so W has the standard Gram [[0, I], [−I, 0]] of size 2nm.
#[derive(Clone, Debug)]
pub struct DualPairEmbedding {
    v: FormedSpace,
    vp: FormedSpace,
    s: FqMatrix,
    s_inv: FqMatrix,
    field: Field,
}

impl DualPairEmbedding {
    pub fn new(v: &FormedSpace, vp: &FormedSpace, f: &Field) -> Result<Self, GroupError> {
        if v.kind() != FormKind::Symplectic || vp.kind() != FormKind::Symmetric {
            return Err(GroupError::IncompatibleKinds);
        }
        let n = v.dim() / 2;
        let m = vp.dim();
        let gi = if m == 0 {
            FqMatrix::identity(0)
        } else {
            vp.gram().inverse(f).ok_or_else(|| GroupError::BadForm("degenerate".into()))?
        };
        let s = FqMatrix::block_diag(&[&FqMatrix::identity(n * m), &FqMatrix::identity(n).kron(&gi, f)]);
        let s_inv = FqMatrix::block_diag(&[&FqMatrix::identity(n * m), &FqMatrix::identity(n).kron(vp.gram(), f)]);
        Ok(DualPairEmbedding { v: v.clone(), vp: vp.clone(), s, s_inv, field: f.clone() })
    }

    pub fn left(&self) -> &FormedSpace {
        &self.v
    }
    pub fn right(&self) -> &FormedSpace {
        &self.vp
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    /// N with W of dimension 2N.
    pub fn half_dim(&self) -> usize {
        self.v.dim() / 2 * self.vp.dim()
    }
    /// The standard symplectic form on W.
    pub fn ambient(&self) -> FormedSpace {
        FormedSpace::symplectic(self.half_dim(), &self.field)
    }

    /// Matrix of g ⊗ g' in the standard basis of W.
    pub fn embed(&self, g: &FqMatrix, gp: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        let k = g.kron(gp, f);
        self.s_inv.mul(&k, f).mul(&self.s, f)
    }
}
