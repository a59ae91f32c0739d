use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclotomic;
use super::field::{legendre, Fe, Field};
use super::matrix::FqMatrix;
use super::AlgebraError;

/// The additive character ψ_t(x) = ζ_p^{Tr(t·x)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AddChar {
    pub t: Fe,
}

impl AddChar {
    pub fn standard() -> Self {
        AddChar { t: 1 }
    }
    /// ψ twisted by the fixed nonsquare of `f`.
    pub fn twisted(f: &Field) -> Self {
        AddChar { t: f.nonsquare() }
    }
    /// Exponent e with ψ(x) = ζ_p^e.
    pub fn exponent(&self, x: Fe, f: &Field) -> u8 {
        f.trace(f.mul(self.t, x))
    }
    pub fn value(&self, x: Fe, f: &Field) -> Cyclotomic {
        Cyclotomic::root_of_unity(f.p() as u32, self.exponent(x, f) as i64)
    }
}

/// A symmetric bilinear form given by its Gram matrix; Q(x) = xᵀ M x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    matrix: FqMatrix,
}

impl QuadraticForm {
    pub fn new(matrix: FqMatrix) -> Result<Self, AlgebraError> {
        if !matrix.is_symmetric() {
            return Err(AlgebraError::NotSymmetric);
        }
        Ok(QuadraticForm { matrix })
    }
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }
    /// Square class of the determinant (0 when degenerate).
    pub fn discriminant_class(&self, f: &Field) -> i8 {
        legendre(self.matrix.det(f), f)
    }
}

/// Σ_{x∈F} ψ(a x²); `a = 0` is rejected.
pub fn quadratic_gauss_sum(a: Fe, f: &Field, psi: AddChar) -> Result<Cyclotomic, AlgebraError> {
    if a == 0 {
        return Err(AlgebraError::DegenerateSum);
    }
    let p = f.p() as u32;
    let mut counts = vec![0i128; p as usize];
    for x in f.elements() {
        counts[psi.exponent(f.mul(a, f.mul(x, x)), f) as usize] += 1;
    }
    Ok(Cyclotomic::from_exponent_coeffs(p, &counts))
}

/// Returns (P, d) with Pᵀ M P = diag(d).
pub fn diagonalize_form(form: &QuadraticForm, f: &Field) -> (FqMatrix, Vec<Fe>) {
    let n = form.dim();
    let mut m = form.matrix.clone();
    let mut p = FqMatrix::identity(n);
    // congruence by an elementary column op: col_i += a col_j, row_i += a row_j
    let add_to = |m: &mut FqMatrix, p: &mut FqMatrix, i: usize, j: usize, a: Fe| {
        for r in 0..n {
            let v = f.add(m.get(r, i), f.mul(a, m.get(r, j)));
            m.set(r, i, v);
            let v = f.add(p.get(r, i), f.mul(a, p.get(r, j)));
            p.set(r, i, v);
        }
        for c in 0..n {
            let v = f.add(m.get(i, c), f.mul(a, m.get(j, c)));
            m.set(i, c, v);
        }
    };
    let swap = |m: &mut FqMatrix, p: &mut FqMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for r in 0..n {
            let (a, b) = (m.get(r, i), m.get(r, j));
            m.set(r, i, b);
            m.set(r, j, a);
            let (a, b) = (p.get(r, i), p.get(r, j));
            p.set(r, i, b);
            p.set(r, j, a);
        }
        m.swap_rows(i, j);
    };
    for i in 0..n {
        if m.get(i, i) == 0 {
            if let Some(j) = (i + 1..n).find(|&j| m.get(j, j) != 0) {
                swap(&mut m, &mut p, i, j);
            } else if let Some((j, k)) =
                (i..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).find(|&(j, k)| m.get(j, k) != 0)
            {
                // both diagonal entries vanish, so e_j + e_k is anisotropic
                add_to(&mut m, &mut p, j, k, 1);
                swap(&mut m, &mut p, i, j);
            } else {
                break;
            }
        }
        let d = m.get(i, i);
        let dinv = f.inv(d).expect("nonzero pivot");
        for j in i + 1..n {
            let a = m.get(i, j);
            if a != 0 {
                add_to(&mut m, &mut p, j, i, f.neg(f.mul(a, dinv)));
            }
        }
    }
    let d = (0..n).map(|i| m.get(i, i)).collect();
    (p, d)
}

/// Σ_{x∈F^k} ψ(xᵀ M x) for a symmetric k×k matrix M.
pub fn form_gauss_sum(m: &FqMatrix, f: &Field, psi: AddChar) -> Cyclotomic {
    let form = QuadraticForm::new(m.clone()).expect("symmetric form");
    let (_, diag) = diagonalize_form(&form, f);
    let mut acc = Cyclotomic::one();
    let mut zeros = 0u32;
    for d in diag {
        if d == 0 {
            zeros += 1;
        } else {
            acc = &acc * &quadratic_gauss_sum(d, f, psi).expect("nonzero entry");
        }
    }
    acc.scale((f.q() as i128).pow(zeros), 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_sum_f3() {
        let f = Field::prime(3).unwrap();
        let g = quadratic_gauss_sum(1, &f, AddChar::standard()).unwrap();
        let expect = &Cyclotomic::one() + &Cyclotomic::root_of_unity(3, 1).scale(2, 1);
        assert_eq!(g, expect);
        assert_eq!(g.norm_sq(), Cyclotomic::from_int(3));
        assert!(matches!(quadratic_gauss_sum(0, &f, AddChar::standard()), Err(AlgebraError::DegenerateSum)));
    }

    #[test]
    fn diagonalize_examples() {
        let f = Field::prime(3).unwrap();
        let hyp = QuadraticForm::new(FqMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
        let (p, d) = diagonalize_form(&hyp, &f);
        let pt = p.transpose();
        assert_eq!(pt.mul(hyp.matrix(), &f).mul(&p, &f), FqMatrix::diag(&d));
        assert_eq!(legendre(f.mul(d[0], d[1]), &f), -1);
        let deg = QuadraticForm::new(FqMatrix::from_rows(&[vec![0, 0], vec![0, 1]])).unwrap();
        let (_, d) = diagonalize_form(&deg, &f);
        assert_eq!(d, vec![1, 0]);
    }
}
