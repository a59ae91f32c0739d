use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::formed::{FormKind, FormedSpace};
use super::table::{Family, GroupDescriptor, GroupTable};
use super::GroupError;
use crate::algebra::FqMatrix;

/// A standard Levi: GL blocks of the given sizes on e_1, e_2, … followed by
/// the classical group of the orthogonal complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviDescriptor {
    pub gl_blocks: Vec<usize>,
}

impl LeviDescriptor {
    pub fn new(gl_blocks: Vec<usize>) -> Self {
        LeviDescriptor { gl_blocks }
    }
    /// GL_j × (classical group of corank j).
    pub fn maximal(j: usize) -> Self {
        LeviDescriptor { gl_blocks: vec![j] }
    }
    /// The Borel Levi GL_1^n.
    pub fn borel(n: usize) -> Self {
        LeviDescriptor { gl_blocks: vec![1; n] }
    }
    pub fn total(&self) -> usize {
        self.gl_blocks.iter().sum()
    }
}

/// Which block of a Levi a basis coordinate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Gl(usize),
    Dual(usize),
    Middle,
}

/// A standard parabolic P = L ⋉ U, the stabilizer of an isotropic flag.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    ambient: GroupDescriptor,
    levi: LeviDescriptor,
    parts: Vec<Part>,
    pub p_members: Vec<u32>,
    pub u_members: Vec<u32>,
    pub l_members: Vec<u32>,
    /// The Levi as its own table.
    pub levi_table: Arc<GroupTable>,
    /// Levi table position → ambient position.
    pub levi_in_g: Vec<u32>,
    /// For each P member (aligned with `p_members`), its Levi table position.
    pub proj: Vec<u32>,
    group_order: u64,
    induce_counts: Vec<Vec<u64>>,
    jacquet_counts: Vec<Vec<u64>>,
}

fn classical_dim_ok(space: &FormedSpace, levi: &LeviDescriptor) -> bool {
    levi.total() <= space.witt_index()
}

impl ParabolicData {
    pub fn new(g: &GroupTable, levi: &LeviDescriptor) -> Result<Self, GroupError> {
        let space = g
            .space()
            .ok_or_else(|| GroupError::NotALevi(format!("{} has no standard form", g.label())))?
            .clone();
        if space.kind() == FormKind::Trivial || !classical_dim_ok(&space, levi) || levi.gl_blocks.contains(&0) {
            return Err(GroupError::NotALevi(format!("{:?} in {}", levi.gl_blocks, g.label())));
        }
        let d = g.dim();
        let mut parts = vec![Part::Middle; d];
        let mut start = 0;
        for (b, &sz) in levi.gl_blocks.iter().enumerate() {
            for i in start..start + sz {
                parts[i] = Part::Gl(b);
                parts[space.partner(i)] = Part::Dual(b);
            }
            start += sz;
        }
        let mut flags = Vec::new();
        let mut acc = 0;
        for &sz in &levi.gl_blocks {
            acc += sz;
            flags.push(acc);
        }
        let in_p = |m: &[u8]| {
            flags.iter().all(|&fd| (fd..d).all(|r| (0..fd).all(|c| m[r * d + c] == 0)))
        };
        let project = |m: &[u8]| {
            let mut out = FqMatrix::zeros(d, d);
            for r in 0..d {
                for c in 0..d {
                    if parts[r] == parts[c] {
                        out.set(r, c, m[r * d + c]);
                    }
                }
            }
            out
        };
        let mut p_members = Vec::new();
        let mut u_members = Vec::new();
        let mut l_members = Vec::new();
        let mut proj_g = Vec::new();
        for pos in 0..g.order() as u32 {
            let m = g.elem_slice(pos);
            if !in_p(m) {
                continue;
            }
            let pr = project(m);
            let ppos = g.position(&pr).ok_or_else(|| GroupError::NotALevi("projection left the group".into()))?;
            p_members.push(pos);
            proj_g.push(ppos);
            if ppos == pos {
                l_members.push(pos);
            }
            if ppos == 0 {
                u_members.push(pos);
            }
        }
        if (l_members.len() * u_members.len()) != p_members.len() {
            return Err(GroupError::NotALevi("|P| != |L||U|".into()));
        }
        let sub = g.subgroup(&l_members, &format!("L{:?}", levi.gl_blocks))?;
        let levi_table = Arc::new(sub.table);
        let levi_in_g = sub.parent_positions;
        let mut g_to_l = std::collections::HashMap::with_capacity(levi_in_g.len());
        for (i, &p) in levi_in_g.iter().enumerate() {
            g_to_l.insert(p, i as u32);
        }
        let proj: Vec<u32> = proj_g.iter().map(|p| g_to_l[p]).collect();

        // order check against the declared block decomposition
        let fs = g.descriptor().field;
        let mut expect: u128 = levi
            .gl_blocks
            .iter()
            .map(|&b| GroupDescriptor::gl(b as u32, fs).expected_order().unwrap_or(1))
            .product();
        let inner_dim = (d - 2 * levi.total()) as u32;
        let inner = match g.descriptor().family {
            Family::Sp => GroupDescriptor::sp(inner_dim / 2, fs),
            Family::O => GroupDescriptor::orthogonal(inner_dim, space.eps().expect("ε"), fs),
            Family::SO => GroupDescriptor::special_orthogonal(inner_dim, space.eps().expect("ε"), fs),
            _ => return Err(GroupError::NotALevi(g.label())),
        };
        expect *= inner.expected_order().unwrap_or(1);
        if l_members.len() as u128 != expect {
            return Err(GroupError::NotALevi(format!("|L| = {} but the block product has order {expect}", l_members.len())));
        }

        let rg = g.num_classes();
        let rl = levi_table.num_classes();
        let mut induce_counts = vec![vec![0u64; rl]; rg];
        for (i, &p) in p_members.iter().enumerate() {
            induce_counts[g.class_of(p)][levi_table.class_of(proj[i])] += 1;
        }
        let jacquet_counts = crate::par::map_range(rl, |lc| {
            let l = levi_in_g[levi_table.class(lc).rep as usize];
            let mut row = vec![0u64; rg];
            for &u in &u_members {
                row[g.class_of(g.mul(l, u))] += 1;
            }
            row
        });

        Ok(ParabolicData {
            ambient: g.descriptor().clone(),
            levi: levi.clone(),
            parts,
            p_members,
            u_members,
            l_members,
            levi_table,
            levi_in_g,
            proj,
            group_order: g.order(),
            induce_counts,
            jacquet_counts,
        })
    }

    pub fn ambient(&self) -> &GroupDescriptor {
        &self.ambient
    }
    pub fn levi(&self) -> &LeviDescriptor {
        &self.levi
    }
    pub fn p_order(&self) -> u64 {
        self.p_members.len() as u64
    }
    pub fn u_order(&self) -> u64 {
        self.u_members.len() as u64
    }
    pub fn l_order(&self) -> u64 {
        self.l_members.len() as u64
    }
    pub fn index(&self) -> u64 {
        self.group_order / self.p_order()
    }
    /// counts[g][l] = #{p ∈ P ∩ C_g : proj(p) ∈ C_l}.
    pub fn induce_counts(&self) -> &[Vec<u64>] {
        &self.induce_counts
    }
    /// counts[l][g] = #{u ∈ U : l_rep · u ∈ C_g}.
    pub fn jacquet_counts(&self) -> &[Vec<u64>] {
        &self.jacquet_counts
    }

    /// The k-th GL block of a Levi element (given as a matrix).
    pub fn gl_block(&self, l: &FqMatrix, k: usize) -> FqMatrix {
        let idx: Vec<usize> = (0..self.parts.len()).filter(|&i| self.parts[i] == Part::Gl(k)).collect();
        sub_matrix(l, &idx)
    }
    /// The block of a Levi element on the orthogonal complement of the flag.
    pub fn inner_block(&self, l: &FqMatrix) -> FqMatrix {
        let idx: Vec<usize> = (0..self.parts.len()).filter(|&i| self.parts[i] == Part::Middle).collect();
        sub_matrix(l, &idx)
    }
}

fn sub_matrix(m: &FqMatrix, idx: &[usize]) -> FqMatrix {
    let mut out = FqMatrix::zeros(idx.len(), idx.len());
    for (a, &r) in idx.iter().enumerate() {
        for (b, &c) in idx.iter().enumerate() {
            out.set(a, b, m.get(r, c));
        }
    }
    out
}
