//! g = m(A1) n̄(C1) J_r m(A3) n̄(C3) with m(A) = diag(A, A⁻ᵀ),
//! n̄(C) = [[I, 0], [C, I]] and J_r the Weyl element on the first r coordinates.

use crate::algebra::{legendre, AddChar, Field, FqMatrix};

use super::kernel::QuadGaussOp;
use super::{fourier_scalar, WeilError};

pub fn levi_element(a: &FqMatrix, f: &Field) -> FqMatrix {
    let ait = a.inverse(f).expect("invertible").transpose();
    FqMatrix::block_diag(&[a, &ait])
}

pub fn lower_unipotent_element(c: &FqMatrix) -> FqMatrix {
    let n = c.rows();
    FqMatrix::from_blocks(&FqMatrix::identity(n), &FqMatrix::zeros(n, n), c, &FqMatrix::identity(n))
}

/// (x_S, ξ_S) ↦ (ξ_S, −x_S) on the first r coordinates, identity elsewhere.
pub fn weyl_element(n: usize, r: usize, f: &Field) -> FqMatrix {
    let e = e_r(n, r);
    let ie = FqMatrix::identity(n).sub(&e, f);
    FqMatrix::from_blocks(&ie, &e, &e.neg(f), &ie)
}

fn e_r(n: usize, r: usize) -> FqMatrix {
    let mut e = FqMatrix::zeros(n, n);
    for i in 0..r {
        e.set(i, i, 1);
    }
    e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatFactors {
    pub a1: FqMatrix,
    pub c1: FqMatrix,
    pub r: usize,
    pub a3: FqMatrix,
    pub c3: FqMatrix,
}

impl BruhatFactors {
    pub fn product(&self, f: &Field) -> FqMatrix {
        let n = self.a1.rows();
        levi_element(&self.a1, f)
            .mul(&lower_unipotent_element(&self.c1), f)
            .mul(&weyl_element(n, self.r, f), f)
            .mul(&levi_element(&self.a3, f), f)
            .mul(&lower_unipotent_element(&self.c3), f)
    }
}

fn is_symplectic(g: &FqMatrix, f: &Field) -> bool {
    let n = g.rows() / 2;
    let j = weyl_element(n, n, f);
    g.transpose().mul(&j, f).mul(g, f) == j
}

pub fn bruhat(g: &FqMatrix, f: &Field) -> Result<BruhatFactors, WeilError> {
    if !g.is_square() || !g.rows().is_multiple_of(2) || !is_symplectic(g, f) {
        return Err(WeilError::NotSymplectic);
    }
    let n = g.rows() / 2;
    let b = g.block(0, n, n, 2 * n);
    let (u, v, r) = b.rank_normal_form(f);
    // g1 = m(U⁻¹) g m(Vᵀ) has upper-right block E_r
    let ui = u.inverse(f).expect("invertible");
    let g1 = levi_element(&ui, f).mul(g, f).mul(&levi_element(&v.transpose(), f), f);
    let d1 = g1.block(n, 2 * n, n, 2 * n);
    let mut c = FqMatrix::zeros(n, n);
    for i in 0..r {
        for j in 0..r {
            c.set(i, j, f.neg(d1.get(i, j)));
        }
    }
    let g2 = lower_unipotent_element(&c).mul(&g1, f);
    let jinv = weyl_element(n, r, f).inverse(f).expect("invertible");
    let h = jinv.mul(&g2, f);
    if !h.block(0, n, n, 2 * n).is_zero() {
        return Err(WeilError::Internal("Bruhat cell reduction failed".into()));
    }
    let vt_inv = v.transpose().inverse(f).expect("invertible");
    let hp = h.mul(&levi_element(&vt_inv, f), f);
    let a3 = hp.block(0, n, 0, n);
    let x = hp.block(n, 2 * n, 0, n);
    let c3 = a3.transpose().mul(&x, f);
    Ok(BruhatFactors { a1: u, c1: c.neg(f), r, a3, c3 })
}

/// The Weil operator of g, assembled from its Bruhat factors.
pub fn weil_operator(g: &FqMatrix, f: &Field, psi: AddChar) -> Result<QuadGaussOp, WeilError> {
    let bf = bruhat(g, f)?;
    let n = g.rows() / 2;
    let r = bf.r;
    let h = f.half();
    let mh = f.neg(h);
    let p1 = bf.a1.inverse(f).expect("invertible");
    let e = e_r(n, r);
    // Q(t, y) = −½ tᵀ P1ᵀ C1 P1 t + (P1 t)_S·(A3 y)_S − ½ yᵀ C3 y
    let mtt = p1.transpose().mul(&bf.c1, f).mul(&p1, f).scale(mh, f);
    let mty = p1.transpose().mul(&e, f).mul(&bf.a3, f).scale(h, f);
    let myy = bf.c3.scale(mh, f);
    let full = FqMatrix::from_blocks(&mtt, &mty, &mty.transpose(), &myy);
    // support: (P1 t − A3 y) vanishes outside S
    let rows: Vec<usize> = (r..n).collect();
    let sel = |m: &FqMatrix| {
        let mut out = FqMatrix::zeros(rows.len(), n);
        for (i, &ri) in rows.iter().enumerate() {
            for c in 0..n {
                out.set(i, c, m.get(ri, c));
            }
        }
        out
    };
    let constraint = sel(&p1).hstack(&sel(&bf.a3).neg(f));
    let basis = constraint.nullspace(f);
    let form = basis.mul(&full, f).mul(&basis.transpose(), f);
    let sign = legendre(f.mul(bf.a1.det(f), bf.a3.det(f)), f) as i128;
    let gamma = fourier_scalar(f, psi).pow(r as u32).scale(sign, 1);
    QuadGaussOp::from_parts(n, &basis, &form, gamma, psi, f)
}

