//! Parabolic induction from the standard Levis GL_1^l × G_0.

use std::sync::Arc;

use super::DlError;
use crate::algebra::Cyclotomic;
use crate::chartab::{hc_induce, ClassFunction};
use crate::groups::{GroupTable, LeviDescriptor, ParabolicData};

/// R^G_{GL_1^l × G_0}(ν^{e_1} ⊗ … ⊗ ν^{e_l} ⊗ σ), where ν generates the
/// characters of F_q^× and σ lives on a table of G_0 (trivial when `None`).
pub fn levi_induce(g: &Arc<GroupTable>, exps: &[u64], inner: Option<&ClassFunction>) -> Result<ClassFunction, DlError> {
    let field = g.field();
    let m = field.q() as u64 - 1;
    let p = ParabolicData::new(g, &LeviDescriptor::borel(exps.len()))?;
    let lt = p.levi_table.clone();
    let vals = (0..lt.num_classes())
        .map(|c| {
            let l = lt.element(lt.class(c).rep);
            let mut v = Cyclotomic::one();
            for (k, &e) in exps.iter().enumerate() {
                let a = p.gl_block(&l, k).get(0, 0);
                let j = field.log(a).ok_or_else(|| DlError::Internal("zero torus coordinate".into()))? as u64;
                v = &v * &Cyclotomic::root_of_unity(m as u32, (e % m * j % m) as i64);
            }
            if let Some(sigma) = inner {
                let pos = sigma
                    .group()
                    .position(&p.inner_block(&l))
                    .ok_or_else(|| DlError::Internal(format!("Levi block outside {}", sigma.group().label())))?;
                v = &v * sigma.at(pos);
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, DlError>>()?;
    Ok(hc_induce(g, &p, &ClassFunction::new(lt, vals)?)?)
}

/// Exponents of a quadratic character of T_l: 0 for the trivial factor,
/// (q−1)/2 for the Legendre factor.
pub fn quadratic_exponents(q: u64, pattern: &[bool]) -> Vec<u64> {
    pattern.iter().map(|&b| if b { (q - 1) / 2 } else { 0 }).collect()
}
