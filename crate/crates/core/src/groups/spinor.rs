use super::formed::{FormKind, FormedSpace};
use super::GroupError;
use crate::algebra::{legendre, Field, FqMatrix};

/// The spinor norm character χ(g) ∈ {±1} of g ∈ SO(V).
///
/// Uses the form (x, y) ↦ B(x, u) on the image of g − 1, where (g − 1)u = y;
/// its determinant times (−2)^r (r = rank of g − 1) is the spinor norm, the
/// normalization under which a reflection s_v has norm B(v, v).
pub fn spinor_norm(space: &FormedSpace, g: &FqMatrix, f: &Field) -> Result<i8, GroupError> {
    if space.kind() != FormKind::Symmetric || !space.preserves(g, f) || (g.rows() > 0 && g.det(f) != 1) {
        return Err(GroupError::NotSpecialOrthogonal);
    }
    Ok(spinor_class(space, g, f))
}

/// Square class of the spinor norm of any isometry g (reflections included).
pub fn spinor_class(space: &FormedSpace, g: &FqMatrix, f: &Field) -> i8 {
    let n = g.rows();
    if n == 0 {
        return 1;
    }
    let gm1 = g.sub(&FqMatrix::identity(n), f);
    let (_, piv) = gm1.rref(f);
    let r = piv.len();
    if r == 0 {
        return 1;
    }
    let mut m = FqMatrix::zeros(r, r);
    for (i, &ci) in piv.iter().enumerate() {
        let w = gm1.col(ci);
        for (j, &cj) in piv.iter().enumerate() {
            let mut u = vec![0; n];
            u[cj] = 1;
            m.set(i, j, space.pair(&w, &u, f));
        }
    }
    let d = m.det(f);
    let c = f.pow(f.neg(2), r as u64);
    legendre(f.mul(c, d), f)
}
