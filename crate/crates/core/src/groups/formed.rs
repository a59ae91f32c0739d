use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::algebra::{legendre, Fe, Field, FieldSpec, FqMatrix};

/// A sign ε ∈ {+, −}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    pub fn from_i8(s: i8) -> Self {
        if s >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Symplectic,
    Symmetric,
    Trivial,
}

/// A vector space with a nondegenerate form in a standard basis.
///
/// Symplectic spaces use (e_1..e_n, f_1..f_n) with Gram [[0, I], [−I, 0]].
/// Odd orthogonal spaces use (e_1..e_n, v_0, f_n..f_1) with Gram
/// c·antidiag(1, …, 1), where c = 1 for ε = + and c is the fixed nonsquare
/// for ε = −. Even orthogonal spaces of type − replace the middle hyperbolic
/// plane by the anisotropic plane diag(1, −c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormedSpace {
    kind: FormKind,
    gram: FqMatrix,
    eps: Option<Sign>,
    field: FieldSpec,
}

fn antidiag(n: usize, c: Fe) -> FqMatrix {
    let mut m = FqMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, n - 1 - i, c);
    }
    m
}

impl FormedSpace {
    pub fn symplectic(n: usize, f: &Field) -> Self {
        let i = FqMatrix::identity(n);
        let z = FqMatrix::zeros(n, n);
        let gram = FqMatrix::from_blocks(&z, &i, &i.neg(f), &z);
        FormedSpace { kind: FormKind::Symplectic, gram, eps: None, field: f.spec() }
    }

    pub fn odd_orthogonal(n: usize, eps: Sign, f: &Field) -> Self {
        let c = match eps {
            Sign::Plus => 1,
            Sign::Minus => f.nonsquare(),
        };
        let gram = antidiag(2 * n + 1, c);
        let s = FormedSpace { kind: FormKind::Symmetric, gram, eps: Some(eps), field: f.spec() };
        debug_assert_eq!(s.detect_sign(f), Some(eps));
        s
    }

    pub fn even_orthogonal(n: usize, eps: Sign, f: &Field) -> Result<Self, GroupError> {
        let gram = match eps {
            Sign::Plus => antidiag(2 * n, 1),
            Sign::Minus => {
                if n == 0 {
                    return Err(GroupError::UnsupportedFamily("O^-_0 does not exist".into()));
                }
                let mut g = antidiag(2 * n, 1);
                let t = f.nonsquare();
                g.set(n - 1, n, 0);
                g.set(n, n - 1, 0);
                g.set(n - 1, n - 1, 1);
                g.set(n, n, f.neg(t));
                g
            }
        };
        Ok(FormedSpace { kind: FormKind::Symmetric, gram, eps: Some(eps), field: f.spec() })
    }

    /// A space with the zero form (used for the trivial side of degenerate pairs).
    pub fn trivial(dim: usize, f: &Field) -> Self {
        FormedSpace { kind: FormKind::Trivial, gram: FqMatrix::zeros(dim, dim), eps: None, field: f.spec() }
    }

    /// Wrap an arbitrary Gram matrix, checking nondegeneracy and kind.
    pub fn from_gram(kind: FormKind, gram: FqMatrix, f: &Field) -> Result<Self, GroupError> {
        match kind {
            FormKind::Symplectic => {
                if !gram.is_alternating(f) || gram.rows() % 2 == 1 {
                    return Err(GroupError::BadForm("not alternating of even dimension".into()));
                }
            }
            FormKind::Symmetric => {
                if !gram.is_symmetric() {
                    return Err(GroupError::BadForm("not symmetric".into()));
                }
            }
            FormKind::Trivial => {}
        }
        if kind != FormKind::Trivial && gram.rows() > 0 && gram.det(f) == 0 {
            return Err(GroupError::BadForm("degenerate Gram matrix".into()));
        }
        let mut s = FormedSpace { kind, gram, eps: None, field: f.spec() };
        s.eps = s.detect_sign(f);
        Ok(s)
    }

    /// ε of a symmetric space: for odd dim 2n+1, + iff det ∈ (−1)^n·squares;
    /// for even dim 2n, + iff (−1)^n det is a square (split).
    pub fn detect_sign(&self, f: &Field) -> Option<Sign> {
        if self.kind != FormKind::Symmetric {
            return None;
        }
        let m = self.dim();
        let n = m / 2;
        let d = if m == 0 { 1 } else { self.gram.det(f) };
        let twist = if n % 2 == 1 { f.neg(1) } else { 1 };
        Some(Sign::from_i8(legendre(f.mul(d, twist), f)))
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn gram(&self) -> &FqMatrix {
        &self.gram
    }
    pub fn eps(&self) -> Option<Sign> {
        self.eps
    }
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Dimension of a maximal isotropic subspace spanned by leading basis vectors.
    pub fn witt_index(&self) -> usize {
        match self.kind {
            FormKind::Symplectic => self.dim() / 2,
            FormKind::Symmetric => {
                let m = self.dim();
                if m % 2 == 1 || self.eps == Some(Sign::Plus) {
                    m / 2
                } else {
                    m / 2 - 1
                }
            }
            FormKind::Trivial => 0,
        }
    }

    /// Basis index of the hyperbolic partner f_i of e_i (0-based i < witt index).
    pub fn partner(&self, i: usize) -> usize {
        match self.kind {
            FormKind::Symplectic => self.dim() / 2 + i,
            _ => self.dim() - 1 - i,
        }
    }

    /// gᵀ G g = G.
    pub fn preserves(&self, g: &FqMatrix, f: &Field) -> bool {
        g.rows() == self.dim() && g.transpose().mul(&self.gram, f).mul(g, f) == self.gram
    }

    /// (x, y) = xᵀ G y.
    pub fn pair(&self, x: &[Fe], y: &[Fe], f: &Field) -> Fe {
        crate::algebra::matrix::bilinear(x, &self.gram, y, f)
    }

    /// The reflection x ↦ x − 2 (x,v)/(v,v) v, for anisotropic v.
    pub fn reflection(&self, v: &[Fe], f: &Field) -> Option<FqMatrix> {
        let vv = self.pair(v, v, f);
        let inv = f.inv(vv)?;
        let gv = self.gram.mul_vec(v, f);
        let n = self.dim();
        let mut m = FqMatrix::identity(n);
        let c = f.neg(f.mul(2, inv));
        for r in 0..n {
            for col in 0..n {
                let x = f.add(m.get(r, col), f.mul(c, f.mul(v[r], gv[col])));
                m.set(r, col, x);
            }
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_witt_index() {
        for p in [3u8, 5, 7] {
            let f = Field::prime(p).unwrap();
            for n in 0..3 {
                for eps in Sign::both() {
                    let v = FormedSpace::odd_orthogonal(n, eps, &f);
                    assert_eq!(v.detect_sign(&f), Some(eps));
                    assert_eq!(v.witt_index(), n);
                }
            }
            for n in 1..3 {
                for eps in Sign::both() {
                    let v = FormedSpace::even_orthogonal(n, eps, &f).unwrap();
                    assert_eq!(v.detect_sign(&f), Some(eps), "p={p} n={n}");
                }
            }
            let s = FormedSpace::symplectic(2, &f);
            assert!(s.gram().is_alternating(&f));
        }
    }

    #[test]
    fn reflections_preserve_form() {
        let f = Field::prime(5).unwrap();
        let v = FormedSpace::odd_orthogonal(1, Sign::Minus, &f);
        let r = v.reflection(&[0, 1, 0], &f).unwrap();
        assert!(v.preserves(&r, &f));
        assert_eq!(r.det(&f), f.neg(1));
        assert!(v.reflection(&[1, 0, 0], &f).is_none());
    }
}
