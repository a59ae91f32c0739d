//! Induction and restriction along parabolics and subgroups.

use std::sync::Arc;

use super::{check_same, ChartabError, ClassFunction};
use crate::algebra::Cyclotomic;
use crate::groups::{GroupError, GroupTable, LeviDescriptor, ParabolicData};

fn check_parabolic(g: &GroupTable, p: &ParabolicData) -> Result<(), ChartabError> {
    if p.ambient() != g.descriptor() {
        return Err(ChartabError::GroupMismatch(g.label(), p.ambient().label()));
    }
    Ok(())
}

/// Harish-Chandra induction: inflate σ from L to P, then induce to G.
pub fn hc_induce(g: &Arc<GroupTable>, p: &ParabolicData, sigma: &ClassFunction) -> Result<ClassFunction, ChartabError> {
    check_parabolic(g, p)?;
    check_same(&p.levi_table, sigma.group())?;
    let counts = p.induce_counts();
    let values = (0..g.num_classes())
        .map(|c| {
            let s: Cyclotomic = counts[c]
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(l, &n)| sigma.value(l).scale(n as i128, 1))
                .sum();
            s.scale(g.order() as i128, p.p_order() as i128 * g.class(c).size as i128)
        })
        .collect();
    ClassFunction::new(g.clone(), values)
}

/// Harish-Chandra restriction: average over U, as a class function on L.
pub fn jacquet(g: &Arc<GroupTable>, p: &ParabolicData, pi: &ClassFunction) -> Result<ClassFunction, ChartabError> {
    check_parabolic(g, p)?;
    check_same(g, pi.group())?;
    let counts = p.jacquet_counts();
    let l = &p.levi_table;
    let values = (0..l.num_classes())
        .map(|lc| {
            let s: Cyclotomic = counts[lc]
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(c, &n)| pi.value(c).scale(n as i128, 1))
                .sum();
            s.scale(1, p.u_order() as i128)
        })
        .collect();
    ClassFunction::new(l.clone(), values)
}

/// The standard maximal parabolics GL_j × G(V_{n-j}), j = 1..Witt index.
pub fn maximal_parabolics(g: &GroupTable) -> Result<Vec<ParabolicData>, GroupError> {
    let w = g.space().map(|s| s.witt_index()).unwrap_or(0);
    (1..=w).map(|j| ParabolicData::new(g, &LeviDescriptor::maximal(j))).collect()
}

/// Cuspidal: every proper Harish-Chandra restriction vanishes.
pub fn is_cuspidal(g: &Arc<GroupTable>, pi: &ClassFunction, parabolics: &[ParabolicData]) -> Result<bool, ChartabError> {
    for p in parabolics {
        if !jacquet(g, p, pi)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How the classes of a subgroup H fuse into the classes of G.
#[derive(Clone, Debug)]
pub struct Fusion {
    pub sub: Arc<GroupTable>,
    /// counts[g_class][h_class] = #{h ∈ H : h ∈ C_g and h ∈ D_h}.
    pub counts: Vec<Vec<u64>>,
    /// G-class of each H-class.
    pub class_map: Vec<usize>,
}

impl Fusion {
    pub fn new(g: &GroupTable, sub: Arc<GroupTable>, parent_positions: &[u32]) -> Result<Self, ChartabError> {
        if parent_positions.len() as u64 != sub.order() {
            return Err(ChartabError::BadData("subgroup positions do not match its order".into()));
        }
        let mut counts = vec![vec![0u64; sub.num_classes()]; g.num_classes()];
        for (h, &pos) in parent_positions.iter().enumerate() {
            counts[g.class_of(pos)][sub.class_of(h as u32)] += 1;
        }
        let class_map = (0..sub.num_classes())
            .map(|hc| g.class_of(parent_positions[sub.class(hc).rep as usize]))
            .collect();
        Ok(Fusion { sub, counts, class_map })
    }
}

/// Ind_H^G χ(c) = |G| / (|H| |C_c|) Σ_{h ∈ H ∩ C_c} χ(h).
pub fn induce_from_subgroup(g: &Arc<GroupTable>, fusion: &Fusion, chi: &ClassFunction) -> Result<ClassFunction, ChartabError> {
    check_same(&fusion.sub, chi.group())?;
    let values = (0..g.num_classes())
        .map(|c| {
            let s: Cyclotomic = fusion.counts[c]
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(hc, &n)| chi.value(hc).scale(n as i128, 1))
                .sum();
            s.scale(g.order() as i128, fusion.sub.order() as i128 * g.class(c).size as i128)
        })
        .collect();
    ClassFunction::new(g.clone(), values)
}

pub fn restrict(g: &Arc<GroupTable>, fusion: &Fusion, chi: &ClassFunction) -> Result<ClassFunction, ChartabError> {
    check_same(g, chi.group())?;
    let values = fusion.class_map.iter().map(|&c| chi.value(c).clone()).collect();
    ClassFunction::new(fusion.sub.clone(), values)
}
