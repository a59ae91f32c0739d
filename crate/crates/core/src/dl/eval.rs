//! Deligne-Lusztig characters at supported scale: split tori by
//! Harish-Chandra induction from the Borel, the rank-one closed forms, and
//! tori with a single U_1(q) factor by induction from GL_1^{n-1} × G_1.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::torus::{theta_w, TorusCharacter, TorusDescriptor, TorusFactor};
use super::weyl::{weyl_classes, weyl_group_order};
use super::DlError;
use crate::algebra::{Cyclotomic, Field, FqMatrix};
use super::induce::levi_induce;
use crate::chartab::ClassFunction;
use crate::groups::spinor::spinor_class;
use crate::groups::{build_group, Family, GroupDescriptor, GroupTable, LeviDescriptor, ParabolicData, Sign, DEFAULT_BUDGET};

/// A rank-one torus inside its group: member positions and the discrete
/// logarithm of each member under the identification ν.
#[derive(Clone, Debug)]
struct RankOneTorus {
    members: Vec<u32>,
    logs: Vec<u64>,
}

/// Evaluates R_{T,θ} on one group, memoizing results.
pub struct DlEvaluator {
    g: Arc<GroupTable>,
    rank: usize,
    q: u64,
    field: Field,
    split: OnceLock<Result<RankOneTorus, DlError>>,
    elliptic: OnceLock<Result<RankOneTorus, DlError>>,
    inner: OnceLock<Result<Arc<DlEvaluator>, DlError>>,
    memo: Mutex<HashMap<Vec<(TorusFactor, u64)>, ClassFunction>>,
}

impl std::fmt::Debug for DlEvaluator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DlEvaluator({})", self.g.label())
    }
}

impl DlEvaluator {
    /// Accepts Sp_{2n} and SO_{2n+1} tables.
    pub fn new(g: Arc<GroupTable>) -> Result<Self, DlError> {
        let d = g.descriptor();
        let rank = match d.family {
            Family::Sp => d.dim as usize / 2,
            Family::SO if d.dim % 2 == 1 => d.dim as usize / 2,
            _ => return Err(DlError::NotClassical(g.label())),
        };
        if rank > 0 && g.space().is_none() {
            return Err(DlError::NotClassical(format!("{} has no form", g.label())));
        }
        let field = g.field().clone();
        Ok(DlEvaluator {
            q: field.q() as u64,
            field,
            rank,
            g,
            split: OnceLock::new(),
            elliptic: OnceLock::new(),
            inner: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        })
    }
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.g
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn q(&self) -> u64 {
        self.q
    }

    /// R_{T,θ} for the torus and character carried by `theta`.
    pub fn dl_character(&self, theta: &TorusCharacter) -> Result<ClassFunction, DlError> {
        if theta.torus.rank() != self.rank {
            return Err(DlError::RankMismatch { torus: theta.torus.rank(), group: self.rank });
        }
        let mut key: Vec<(TorusFactor, u64)> =
            theta.torus.factors.iter().copied().zip(theta.exponents.iter().copied()).collect();
        key.sort();
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(hit.clone());
        }
        let out = self.evaluate(&key)?;
        self.memo.lock().expect("memo lock").insert(key, out.clone());
        Ok(out)
    }

    fn evaluate(&self, key: &[(TorusFactor, u64)]) -> Result<ClassFunction, DlError> {
        if self.rank == 0 {
            return Ok(ClassFunction::trivial(self.g.clone()));
        }
        let gl1 = TorusFactor { degree: 1, sign: Sign::Plus };
        let u1 = TorusFactor { degree: 1, sign: Sign::Minus };
        let n_split = key.iter().take_while(|(f, _)| *f == gl1).count();
        let rest = &key[n_split..];
        let split_exps: Vec<u64> = key[..n_split].iter().map(|&(_, e)| e).collect();
        match rest {
            [] => self.split_character(&split_exps),
            [(f, e)] if *f == u1 => {
                if self.rank == 1 {
                    self.rank_one(false, *e)
                } else {
                    self.mixed_character(&split_exps, *e)
                }
            }
            _ => {
                let torus = TorusDescriptor { factors: key.iter().map(|&(f, _)| f).collect() };
                Err(DlError::UnsupportedScale(format!(
                    "R_T for T = {torus} in {} needs Green functions of a non-split Levi",
                    self.g.label()
                )))
            }
        }
    }

    /// Ind_B^G θ on the split torus.
    fn split_character(&self, exps: &[u64]) -> Result<ClassFunction, DlError> {
        levi_induce(&self.g, exps, None)
    }

    /// R_{GL_1^{n-1} × G_1}(θ_split ⊗ R^{G_1}_{U_1, e}).
    fn mixed_character(&self, split_exps: &[u64], e: u64) -> Result<ClassFunction, DlError> {
        let inner = self.inner_evaluator()?;
        let u1 = TorusDescriptor { factors: vec![TorusFactor { degree: 1, sign: Sign::Minus }] };
        let r1 = inner.dl_character(&TorusCharacter::new(u1, vec![e], self.q))?;
        levi_induce(&self.g, split_exps, Some(&r1))
    }

    fn inner_evaluator(&self) -> Result<Arc<DlEvaluator>, DlError> {
        self.inner
            .get_or_init(|| {
                let d = self.g.descriptor();
                let fs = d.field;
                let desc = match d.family {
                    Family::Sp => GroupDescriptor::sp(1, fs),
                    _ => GroupDescriptor::special_orthogonal(3, d.eps.unwrap_or(Sign::Plus), fs),
                };
                let t = build_group(&desc, DEFAULT_BUDGET)?;
                Ok(Arc::new(DlEvaluator::new(Arc::new(t))?))
            })
            .clone()
    }

    fn split_torus(&self) -> Result<&RankOneTorus, DlError> {
        self.split
            .get_or_init(|| {
                let p = ParabolicData::new(&self.g, &LeviDescriptor::borel(1))?;
                let lt = &p.levi_table;
                let mut members = Vec::new();
                let mut logs = Vec::new();
                for i in 0..lt.order() as u32 {
                    let a = p.gl_block(&lt.element(i), 0).get(0, 0);
                    members.push(p.levi_in_g[i as usize]);
                    logs.push(self.field.log(a).ok_or_else(|| DlError::Internal("zero torus coordinate".into()))? as u64);
                }
                Ok(RankOneTorus { members, logs })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The anisotropic torus: generated by an element t₀ of order q+1, with
    /// ν(t₀) the eigenvalue of t₀ in U_1(q) ⊂ F_{q²} of least discrete log.
    fn elliptic_torus(&self) -> Result<&RankOneTorus, DlError> {
        self.elliptic
            .get_or_init(|| {
                let f = &self.field;
                if f.degree() != 1 {
                    return Err(DlError::UnsupportedScale("anisotropic tori over non-prime fields".into()));
                }
                let m = self.q + 1;
                let g = &self.g;
                let t0 = (0..g.order() as u32)
                    .find(|&i| g.element_order(i) as u64 == m)
                    .ok_or_else(|| DlError::Internal(format!("no element of order {m} in {}", g.label())))?;
                let f2 = Field::new(f.p(), 2)?;
                let mat = g.element(t0);
                let d = mat.rows();
                let unit = f2.norm_one_elements();
                let j = (1..m)
                    .find(|&j| {
                        let lam = FqMatrix::scalar(d, unit[j as usize]);
                        mat.sub(&lam, &f2).det(&f2) == 0
                    })
                    .ok_or_else(|| DlError::Internal("anisotropic generator has no eigenvalue in U_1".into()))?;
                let j = j.min(m - j);
                let mut members = Vec::with_capacity(m as usize);
                let mut logs = Vec::with_capacity(m as usize);
                for i in 0..m {
                    members.push(g.pow(t0, i));
                    logs.push(i * j % m);
                }
                Ok(RankOneTorus { members, logs })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Closed form on Sp_2 or SO_3:
    /// R(zu) = θ(z) Q_T(u) for central z, and
    /// R(s) = |C_G(s)|/|C°(s)| Σ_{t ∈ T ∩ s^G} θ(t) otherwise.
    fn rank_one(&self, split: bool, e: u64) -> Result<ClassFunction, DlError> {
        let g = &self.g;
        let q = self.q;
        let torus = if split { self.split_torus()? } else { self.elliptic_torus()? };
        let m = if split { q - 1 } else { q + 1 };
        let theta = |j: u64| Cyclotomic::root_of_unity(m as u32, (e * j % m) as i64);
        let green_one = if split { q as i128 + 1 } else { 1 - q as i128 };
        let split_classes: Vec<usize> = self.split_torus()?.members.iter().map(|&t| g.class_of(t)).collect();
        let p = self.field.p() as u32;
        let vals = (0..g.num_classes())
            .map(|c| {
                let y = g.class(c).rep;
                let ord = g.element_order(y);
                let mut mu = 1u32;
                while (ord / mu).is_multiple_of(p) {
                    mu *= p;
                }
                let ms = ord / mu;
                let alpha = (0..ord).find(|&a| a % mu == 0 && a % ms == 1 % ms).expect("CRT");
                let s = g.pow(y, alpha as u64);
                let u = g.pow(y, (1 + ord as u64 - alpha as u64) % ord as u64);
                if g.center().contains(&s) {
                    let idx = torus
                        .members
                        .iter()
                        .position(|&t| t == s)
                        .ok_or_else(|| DlError::Internal("central element outside the torus".into()))?;
                    let green = if u == 0 { green_one } else { 1 };
                    return Ok(theta(torus.logs[idx]).scale(green, 1));
                }
                if u != 0 {
                    return Err(DlError::Internal(format!("non-central s with unipotent part in {}", g.label())));
                }
                let c0 = if split_classes.contains(&c) { q - 1 } else { q + 1 };
                let cg = g.order() / g.class(c).size;
                let sum: Cyclotomic = torus
                    .members
                    .iter()
                    .zip(&torus.logs)
                    .filter(|(&t, _)| g.class_of(t) == c)
                    .map(|(_, &j)| theta(j))
                    .sum();
                Ok(sum.scale(cg as i128, c0 as i128))
            })
            .collect::<Result<Vec<_>, DlError>>()?;
        Ok(ClassFunction::new(g.clone(), vals)?)
    }

    /// The rank-one closed form for the split torus, independent of the
    /// parabolic-induction route used by `dl_character`.
    pub fn rank_one_split_closed_form(&self, e: u64) -> Result<ClassFunction, DlError> {
        if self.rank != 1 {
            return Err(DlError::RankMismatch { torus: 1, group: self.rank });
        }
        self.rank_one(true, e)
    }

    /// (1/|W|) Σ_{w ∈ W} R_{T_w, θ_w}.
    pub fn chi_via_dl(&self) -> Result<ClassFunction, DlError> {
        let mut acc = ClassFunction::zero(self.g.clone());
        for w in weyl_classes(self.rank) {
            let t = TorusDescriptor::from_cycle_type(&w);
            let r = self.dl_character(&theta_w(&t, self.q))?;
            acc = acc.add(&r.scale_int(w.class_size() as i128))?;
        }
        Ok(acc.scale(&Cyclotomic::from_rational(1, weyl_group_order(self.rank) as i128)))
    }

    /// (1/|W|) Σ_{w ∈ W} R_{T_w, 1}.
    pub fn trivial_via_dl(&self) -> Result<ClassFunction, DlError> {
        let mut acc = ClassFunction::zero(self.g.clone());
        for w in weyl_classes(self.rank) {
            let t = TorusDescriptor::from_cycle_type(&w);
            let r = self.dl_character(&TorusCharacter::trivial(t, self.q))?;
            acc = acc.add(&r.scale_int(w.class_size() as i128))?;
        }
        Ok(acc.scale(&Cyclotomic::from_rational(1, weyl_group_order(self.rank) as i128)))
    }
}

/// χ_G by the spinor norm: SO_m directly; on O_{2n+1} = SO × {±I} it is
/// extended trivially on −I.
pub fn chi_character(g: &Arc<GroupTable>) -> Result<ClassFunction, DlError> {
    let d = g.descriptor();
    if !matches!(d.family, Family::SO | Family::O) || (d.family == Family::O && d.dim.is_multiple_of(2)) {
        return Err(DlError::NotClassical(format!("{} has no spinor norm", g.label())));
    }
    let space = g.space().ok_or_else(|| DlError::NotClassical(g.label()))?;
    let f = g.field();
    Ok(ClassFunction::from_rep(g.clone(), |pos| {
        let m = g.element(pos);
        let det = if m.rows() == 0 { 1 } else { m.det(f) };
        let m = if det == 1 { m } else { m.scale(det, f) };
        Cyclotomic::from_int(spinor_class(space, &m, f) as i128)
    }))
}
