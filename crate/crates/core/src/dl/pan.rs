//! The uniform projection of a class function on G × G', and the
//! right-hand side of the decomposition of ω^# for (Sp_{2n}, SO_{2n'+1}).

use super::eval::DlEvaluator;
use super::project::{gram, solve};
use super::torus::{theta_w, TorusCharacter, TorusDescriptor};
use super::weyl::{weyl_classes, weyl_group_order};
use super::DlError;
use crate::algebra::Cyclotomic;
use crate::chartab::{ClassFunction, PairClassFunction};
use crate::groups::Sign;

fn transpose(m: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// F^# onto span{b_i ⊠ b'_j}. With C_{kl} = ⟨F, b_k ⊠ b'_l⟩ the coefficient
/// matrix is A = G^{-1} C G'^{-1}.
pub fn uniform_pair_projection(
    f: &PairClassFunction,
    left: &[ClassFunction],
    right: &[ClassFunction],
) -> Result<PairClassFunction, DlError> {
    let (lg, rg) = (f.left().clone(), f.right().clone());
    if left.is_empty() || right.is_empty() {
        return Ok(PairClassFunction::from_fn(lg, rg, |_, _| Cyclotomic::zero()));
    }
    let c: Vec<Vec<Cyclotomic>> = left
        .iter()
        .map(|b| {
            let phi = f.contract_left(b)?;
            right.iter().map(|bp| Ok(phi.inner_product(bp)?)).collect::<Result<Vec<_>, DlError>>()
        })
        .collect::<Result<_, DlError>>()?;
    let x = solve(&gram(left)?, &c)?;
    let a = transpose(&solve(&gram(right)?, &transpose(&x))?);
    // inner[i][c'] = Σ_j a_ij b'_j(c')
    let inner: Vec<Vec<Cyclotomic>> = a
        .iter()
        .map(|row| {
            (0..rg.num_classes())
                .map(|cp| row.iter().zip(right).map(|(aij, bp)| aij * bp.value(cp)).sum())
                .collect()
        })
        .collect();
    Ok(PairClassFunction::from_fn(lg, rg, |cl, cp| {
        left.iter().zip(&inner).map(|(b, row)| b.value(cl) * &row[cp]).sum()
    }))
}

/// Σ_k 1/|W_k| 1/|W_{n−k}| 1/|W_{n'−k}| Σ_{v,θ,w,w'} ε_w
///   R^{Sp}_{T_v×T_w, θ⊗θ_w} ⊠ R^{SO}_{T_v×T_{w'}, θ⊗θ_{w'}},
/// with sums over elements of the Weyl groups taken class by class.
pub fn pan_rhs(sp: &DlEvaluator, so: &DlEvaluator, n: usize, np: usize) -> Result<PairClassFunction, DlError> {
    if sp.rank() != n || so.rank() != np {
        return Err(DlError::RankMismatch { torus: n, group: sp.rank() });
    }
    let q = sp.q();
    let mut acc = PairClassFunction::from_fn(sp.group().clone(), so.group().clone(), |_, _| Cyclotomic::zero());
    for k in 0..=n.min(np) {
        let norm = weyl_group_order(k) * weyl_group_order(n - k) * weyl_group_order(np - k);
        let mut term = acc.scale(&Cyclotomic::zero());
        for v in weyl_classes(k) {
            let tv = TorusDescriptor::from_cycle_type(&v);
            for theta in TorusCharacter::all(&tv, q) {
                // Σ_w ε_w R^{Sp}(θ ⊗ θ_w)
                let mut left = ClassFunction::zero(sp.group().clone());
                for w in weyl_classes(n - k) {
                    let tw = TorusDescriptor::from_cycle_type(&w);
                    let r = sp.dl_character(&theta.tensor(&theta_w(&tw, q)))?;
                    let sign = if w.epsilon() == Sign::Plus { 1 } else { -1 };
                    left = left.add(&r.scale_int(sign * w.class_size() as i128))?;
                }
                let mut right = ClassFunction::zero(so.group().clone());
                for wp in weyl_classes(np - k) {
                    let tw = TorusDescriptor::from_cycle_type(&wp);
                    let r = so.dl_character(&theta.tensor(&theta_w(&tw, q)))?;
                    right = right.add(&r.scale_int(wp.class_size() as i128))?;
                }
                let mult = v.class_size() as i128;
                term = term.add(&PairClassFunction::outer(&left.scale_int(mult), &right))?;
            }
        }
        acc = acc.add(&term.scale(&Cyclotomic::from_rational(1, norm as i128)))?;
    }
    Ok(acc)
}
