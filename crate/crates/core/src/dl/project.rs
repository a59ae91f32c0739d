//! Orthogonal projection onto spans of Deligne-Lusztig characters.

use super::eval::DlEvaluator;
use super::torus::{TorusCharacter, TorusDescriptor};
use super::weyl::weyl_classes;
use super::DlError;
use crate::algebra::Cyclotomic;
use crate::chartab::ClassFunction;

fn rational(x: &Cyclotomic) -> Result<(i128, i128), DlError> {
    x.to_rational().ok_or_else(|| DlError::NotRational(x.to_string()))
}

/// Gram matrix ⟨b_i, b_j⟩, which must be rational.
pub(crate) fn gram(basis: &[ClassFunction]) -> Result<Vec<Vec<Cyclotomic>>, DlError> {
    let n = basis.len();
    let mut g = vec![vec![Cyclotomic::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = basis[i].inner_product(&basis[j])?;
            rational(&v)?;
            g[j][i] = v.clone();
            g[i][j] = v;
        }
    }
    Ok(g)
}

/// Solve G X = B for a rational invertible G; B has one row per row of G.
pub(crate) fn solve(gram: &[Vec<Cyclotomic>], rhs: &[Vec<Cyclotomic>]) -> Result<Vec<Vec<Cyclotomic>>, DlError> {
    let n = gram.len();
    let mut a: Vec<Vec<Cyclotomic>> = gram.to_vec();
    let mut b: Vec<Vec<Cyclotomic>> = rhs.to_vec();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(DlError::BasisDegenerate)?;
        a.swap(col, piv);
        b.swap(col, piv);
        let (pn, pd) = rational(&a[col][col])?;
        a[col] = a[col].iter().map(|x| x.scale(pd, pn)).collect();
        b[col] = b[col].iter().map(|x| x.scale(pd, pn)).collect();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let (fnum, fden) = rational(&a[r][col])?;
            let (arow, brow) = (a[col].clone(), b[col].clone());
            for (x, y) in a[r].iter_mut().zip(&arow) {
                *x = &*x - &y.scale(fnum, fden);
            }
            for (x, y) in b[r].iter_mut().zip(&brow) {
                *x = &*x - &y.scale(fnum, fden);
            }
        }
    }
    Ok(b)
}

/// f^# for the span of `basis`, which must be linearly independent.
pub fn uniform_project(f: &ClassFunction, basis: &[ClassFunction]) -> Result<ClassFunction, DlError> {
    if basis.is_empty() {
        return Ok(ClassFunction::zero(f.group().clone()));
    }
    let g = gram(basis)?;
    let rhs: Vec<Vec<Cyclotomic>> =
        basis.iter().map(|b| Ok(vec![f.inner_product(b)?])).collect::<Result<_, DlError>>()?;
    let coeffs = solve(&g, &rhs)?;
    let mut out = ClassFunction::zero(f.group().clone());
    for (b, c) in basis.iter().zip(&coeffs) {
        out = out.add(&b.scale(&c[0]))?;
    }
    Ok(out)
}

/// A maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(candidates: &[ClassFunction]) -> Result<Vec<ClassFunction>, DlError> {
    let mut kept: Vec<ClassFunction> = Vec::new();
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        let mut trial = kept.clone();
        trial.push(c.clone());
        let g = gram(&trial)?;
        match solve(&g, &vec![vec![Cyclotomic::zero()]; trial.len()]) {
            Ok(_) => kept = trial,
            Err(DlError::BasisDegenerate) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(kept)
}

/// Every R_{T,θ} at rank ≤ 1, reduced to an independent spanning set of the
/// uniform functions.
pub fn uniform_basis(ev: &DlEvaluator) -> Result<Vec<ClassFunction>, DlError> {
    if ev.rank() > 1 {
        return Err(DlError::UnsupportedScale(format!(
            "the uniform space of {} needs anisotropic tori of rank > 1",
            ev.group().label()
        )));
    }
    let mut all = Vec::new();
    for w in weyl_classes(ev.rank()) {
        let t = TorusDescriptor::from_cycle_type(&w);
        for theta in TorusCharacter::all(&t, ev.q()) {
            all.push(ev.dl_character(&theta)?);
        }
    }
    independent_subset(&all)
}
