//! Dense q^N × q^N matrices of Weil operators, built directly from the
//! generator formulas. Used as an oracle for the kernel calculus.

use crate::algebra::matrix::all_vectors;
use crate::algebra::{legendre, AddChar, Cyclotomic, Fe, Field, FqMatrix};

use super::fourier_scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseOp {
    n: usize,
    size: usize,
    entries: Vec<Cyclotomic>,
}

/// Largest q^N for which dense operators are built.
pub const DENSE_LIMIT: u64 = 1000;

fn index(v: &[Fe], q: usize) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q + x as usize)
}

impl DenseOp {
    pub fn zeros(n: usize, size: usize) -> Self {
        DenseOp { n, size, entries: vec![Cyclotomic::zero(); size * size] }
    }
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.entries[r * self.size + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: Cyclotomic) {
        self.entries[r * self.size + c] = v;
    }
    pub fn trace(&self) -> Cyclotomic {
        (0..self.size).map(|i| self.get(i, i).clone()).sum()
    }
    pub fn mul(&self, other: &Self) -> Self {
        let s = self.size;
        let rows = crate::par::map_range(s, |r| {
            let mut row = vec![Cyclotomic::zero(); s];
            for k in 0..s {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for (c, x) in row.iter_mut().enumerate() {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        *x = &*x + &(a * b);
                    }
                }
            }
            row
        });
        DenseOp { n: self.n, size: s, entries: rows.into_iter().flatten().collect() }
    }

    /// f ↦ χ(det A) f(A⁻¹ t), the operator of diag(A, A⁻ᵀ).
    pub fn levi(a: &FqMatrix, f: &Field) -> Self {
        let n = a.rows();
        let q = f.q() as usize;
        let ai = a.inverse(f).expect("invertible");
        let sign = Cyclotomic::from_int(legendre(a.det(f), f) as i128);
        let mut out = Self::zeros(n, q.pow(n as u32));
        for t in all_vectors(n, f) {
            out.set(index(&t, q), index(&ai.mul_vec(&t, f), q), sign.clone());
        }
        out
    }

    /// f ↦ ψ(−½ tᵀ C t) f(t), the operator of [[I, 0], [C, I]].
    pub fn lower_unipotent(c: &FqMatrix, f: &Field, psi: AddChar) -> Self {
        let n = c.rows();
        let q = f.q() as usize;
        let mh = f.neg(f.half());
        let mut out = Self::zeros(n, q.pow(n as u32));
        for t in all_vectors(n, f) {
            let v = f.mul(mh, crate::algebra::matrix::bilinear(&t, c, &t, f));
            let i = index(&t, q);
            out.set(i, i, psi.value(v, f));
        }
        out
    }

    /// Normalized Fourier transform in the first r coordinates, the operator of
    /// (x_S, ξ_S) ↦ (ξ_S, −x_S).
    pub fn partial_fourier(n: usize, r: usize, f: &Field, psi: AddChar) -> Self {
        let q = f.q() as usize;
        let c = fourier_scalar(f, psi).pow(r as u32);
        let mut out = Self::zeros(n, q.pow(n as u32));
        let vecs = all_vectors(n, f);
        for t in &vecs {
            for s in &vecs {
                if t[r..] != s[r..] {
                    continue;
                }
                let e = crate::algebra::matrix::dot(&t[..r], &s[..r], f);
                out.set(index(t, q), index(s, q), &c * &psi.value(e, f));
            }
        }
        out
    }
}
