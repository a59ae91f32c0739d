//! Operators on functions F_q^N → C whose kernels are quadratic Gaussians:
//! K(t, y) = γ ψ(Q(t, y)) on a subspace L of F_q^N × F_q^N, and 0 off it.

use crate::algebra::matrix::{all_vectors, coords_in_rref};
use crate::algebra::{form_gauss_sum, AddChar, Cyclotomic, Fe, Field, FqMatrix};

use super::WeilError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadGaussOp {
    n: usize,
    /// RREF basis of L, one row per basis vector, columns (t, y).
    basis: FqMatrix,
    pivots: Vec<usize>,
    /// Q in basis coordinates: Q(cᵀ basis) = cᵀ form c.
    form: FqMatrix,
    gamma: Cyclotomic,
    psi: AddChar,
}

/// b · m · bᵀ
fn congruence(b: &FqMatrix, m: &FqMatrix, f: &Field) -> FqMatrix {
    b.mul(m, f).mul(&b.transpose(), f)
}

fn symmetrize(m: &FqMatrix, f: &Field) -> FqMatrix {
    let h = f.half();
    m.add(&m.transpose(), f).scale(h, f)
}

/// Rows e_j (length n) for j outside the pivot set: a complement of the row space.
fn complement_rows(pivots: &[usize], n: usize) -> FqMatrix {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = FqMatrix::zeros(free.len(), n);
    for (i, &c) in free.iter().enumerate() {
        out.set(i, c, 1);
    }
    out
}

impl QuadGaussOp {
    /// Normalize an arbitrary independent basis of L and a form in its coordinates.
    pub fn from_parts(
        n: usize,
        basis: &FqMatrix,
        form: &FqMatrix,
        gamma: Cyclotomic,
        psi: AddChar,
        f: &Field,
    ) -> Result<Self, WeilError> {
        if basis.cols() != 2 * n || form.rows() != basis.rows() || form.cols() != basis.rows() {
            return Err(WeilError::DimensionMismatch(format!(
                "basis {}x{}, form {}x{}, N = {n}",
                basis.rows(),
                basis.cols(),
                form.rows(),
                form.cols()
            )));
        }
        let (red, pivots) = basis.rref(f);
        let k = basis.rows();
        if pivots.len() != k {
            return Err(WeilError::DimensionMismatch("support basis is dependent".into()));
        }
        let red = red.block(0, k, 0, 2 * n);
        // old = S · new, S_ij = old_i[pivot_j]; in new coordinates the form is S⁻¹ M S⁻ᵀ
        let mut s = FqMatrix::zeros(k, k);
        for i in 0..k {
            for (j, &p) in pivots.iter().enumerate() {
                s.set(i, j, basis.get(i, p));
            }
        }
        let si = s.inverse(f).expect("change of basis is invertible");
        let m = congruence(&si, &symmetrize(form, f), f);
        Ok(QuadGaussOp { n, basis: red, pivots, form: m, gamma, psi })
    }

    pub fn identity(n: usize, psi: AddChar, f: &Field) -> Self {
        let basis = FqMatrix::identity(n).hstack(&FqMatrix::identity(n));
        Self::from_parts(n, &basis, &FqMatrix::zeros(n, n), Cyclotomic::one(), psi, f).expect("identity kernel")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
    pub fn support_dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn support_basis(&self) -> &FqMatrix {
        &self.basis
    }
    pub fn form(&self) -> &FqMatrix {
        &self.form
    }
    pub fn gamma(&self) -> &Cyclotomic {
        &self.gamma
    }
    pub fn psi(&self) -> AddChar {
        self.psi
    }
    pub fn is_identity(&self, f: &Field) -> bool {
        *self == Self::identity(self.n, self.psi, f)
    }

    /// K(t, y).
    pub fn kernel(&self, t: &[Fe], y: &[Fe], f: &Field) -> Cyclotomic {
        let mut v = t.to_vec();
        v.extend_from_slice(y);
        match coords_in_rref(&self.basis, &self.pivots, &v, f) {
            Some(c) => {
                let q = crate::algebra::matrix::bilinear(&c, &self.form, &c, f);
                &self.gamma * &self.psi.value(q, f)
            }
            None => Cyclotomic::zero(),
        }
    }

    /// Σ_t K(t, t): a Gauss sum over L ∩ diagonal.
    pub fn trace(&self, f: &Field) -> Cyclotomic {
        let n = self.n;
        let k = self.basis.rows();
        // c with cᵀ(B_t − B_y) = 0
        let bt = self.basis.block(0, k, 0, n);
        let by = self.basis.block(0, k, n, 2 * n);
        let diff = bt.sub(&by, f).transpose();
        let d = diff.nullspace(f);
        let m = congruence(&d, &self.form, f);
        &self.gamma * &form_gauss_sum(&m, f, self.psi)
    }

    /// Kernel of self ∘ other: Σ_z K_A(t, z) K_B(z, y).
    pub fn compose(&self, other: &Self, f: &Field) -> Result<Self, WeilError> {
        if self.n != other.n {
            return Err(WeilError::DimensionMismatch(format!("N = {} vs {}", self.n, other.n)));
        }
        if self.psi != other.psi {
            return Err(WeilError::DimensionMismatch("different additive characters".into()));
        }
        let n = self.n;
        let (ka, kb) = (self.basis.rows(), other.basis.rows());
        let ab = ka + kb;
        // W ⊆ F^{ka} × F^{kb}: the z-parts agree
        let za = self.basis.block(0, ka, n, 2 * n);
        let zb = other.basis.block(0, kb, 0, n);
        let constraint = za.vstack(&zb.neg(f)).transpose();
        let wb = constraint.nullspace(f);
        let dw = wb.rows();
        let phi_ab = FqMatrix::block_diag(&[&self.form, &other.form]);
        let phi = congruence(&wb, &phi_ab, f);
        // projection to (t, y)
        let mut proj_ab = FqMatrix::zeros(ab, 2 * n);
        proj_ab.set_block(0, 0, &self.basis.block(0, ka, 0, n));
        proj_ab.set_block(ka, n, &other.basis.block(0, kb, n, 2 * n));
        let pm = wb.mul(&proj_ab, f);
        // fiber K = ker π, in W coordinates
        let kb_w = pm.transpose().nullspace(f);
        let (kred, kpiv) = kb_w.rref(f);
        let kdim = kpiv.len();
        let kred = kred.block(0, kdim, 0, dw);
        let phi_k = congruence(&kred, &phi, f);
        // radical R0 of Φ on K and a complement K1
        let r0 = phi_k.nullspace(f);
        let (r0red, r0piv) = r0.rref(f);
        let r0red = r0red.block(0, r0piv.len(), 0, kdim);
        let k1 = complement_rows(&r0piv, kdim);
        let r0w = r0red.mul(&kred, f);
        let k1w = k1.mul(&kred, f);
        let phi_k1 = congruence(&k1w, &phi, f);
        // section C: complement of K in W
        let cb = complement_rows(&kpiv, dw);
        let image = cb.mul(&pm, f);
        // support: d with dᵀ (C Φ R0ᵀ) = 0
        let nmat = cb.mul(&phi, f).mul(&r0w.transpose(), f);
        let dsup = nmat.transpose().nullspace(f);
        // complete the square inside K1: s + k* with k* = dᵀ T K1
        let zmat = if k1w.rows() > 0 {
            let inv = phi_k1.inverse(f).ok_or_else(|| WeilError::Internal("form on K1 is degenerate".into()))?;
            let t = cb.mul(&phi, f).mul(&k1w.transpose(), f).mul(&inv, f).neg(f);
            cb.add(&t.mul(&k1w, f), f)
        } else {
            cb.clone()
        };
        let new_basis = dsup.mul(&image, f);
        let new_form = congruence(&dsup.mul(&zmat, f), &phi, f);
        let q = f.q() as i128;
        let scale = form_gauss_sum(&phi_k1, f, self.psi).scale(q.pow(r0red.rows() as u32), 1);
        let gamma = &(&self.gamma * &other.gamma) * &scale;
        Self::from_parts(n, &new_basis, &new_form, gamma, self.psi, f)
    }

    /// Dense kernel matrix indexed by vectors in lexicographic order; only for small q^N.
    pub fn to_dense(&self, f: &Field) -> super::dense::DenseOp {
        let n = self.n;
        let q = f.q() as usize;
        let size = q.pow(n as u32);
        let index = |v: &[Fe]| v.iter().fold(0usize, |acc, &x| acc * q + x as usize);
        let mut out = super::dense::DenseOp::zeros(n, size);
        let k = self.basis.rows();
        for c in all_vectors(k, f) {
            let mut v = vec![0; 2 * n];
            for (i, &ci) in c.iter().enumerate() {
                if ci != 0 {
                    for (j, x) in v.iter_mut().enumerate() {
                        *x = f.add(*x, f.mul(ci, self.basis.get(i, j)));
                    }
                }
            }
            let qv = crate::algebra::matrix::bilinear(&c, &self.form, &c, f);
            out.set(index(&v[..n]), index(&v[n..]), &self.gamma * &self.psi.value(qv, f));
        }
        out
    }
}
