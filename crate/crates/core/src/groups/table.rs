use std::collections::HashMap;
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};

use serde::{Deserialize, Serialize};

use super::formed::{FormKind, FormedSpace, Sign};
use super::GroupError;
use crate::algebra::{Fe, Field, FieldSpec, FqMatrix};

/// Multiply-xorshift hasher for packed u128 element keys.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            self.write_u64(u64::from_le_bytes(buf));
        }
    }
    fn write_u64(&mut self, x: u64) {
        let h = (self.0 ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        self.0 = h ^ (h >> 29);
    }
    fn write_u128(&mut self, x: u128) {
        self.write_u64(x as u64);
        self.write_u64((x >> 64) as u64);
    }
}

pub type KeyMap = HashMap<u128, u32, BuildHasherDefault<KeyHasher>>;

/// Default enumeration budget (elements).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Sp,
    O,
    SO,
    GL,
    TorusProduct,
    Subgroup,
}

/// What a table is: family, natural-module dimension, ε and field, plus a
/// free-form note for derived subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub dim: u32,
    pub eps: Option<Sign>,
    pub field: FieldSpec,
    pub note: String,
}

impl GroupDescriptor {
    pub fn sp(n: u32, field: FieldSpec) -> Self {
        GroupDescriptor { family: Family::Sp, dim: 2 * n, eps: None, field, note: String::new() }
    }
    pub fn orthogonal(dim: u32, eps: Sign, field: FieldSpec) -> Self {
        GroupDescriptor { family: Family::O, dim, eps: Some(eps), field, note: String::new() }
    }
    pub fn special_orthogonal(dim: u32, eps: Sign, field: FieldSpec) -> Self {
        GroupDescriptor { family: Family::SO, dim, eps: Some(eps), field, note: String::new() }
    }
    pub fn gl(n: u32, field: FieldSpec) -> Self {
        GroupDescriptor { family: Family::GL, dim: n, eps: None, field, note: String::new() }
    }

    /// Classical order formula, when the family has one.
    pub fn expected_order(&self) -> Option<u128> {
        let q = self.field.q() as u128;
        let d = self.dim;
        match self.family {
            Family::Sp => {
                let n = d / 2;
                Some(q.pow(n * n) * (1..=n).map(|i| q.pow(2 * i) - 1).product::<u128>())
            }
            Family::O | Family::SO => {
                let half = if self.family == Family::SO { 1 } else { 2 };
                let n = d / 2;
                let base = if d % 2 == 1 {
                    q.pow(n * n) * (1..=n).map(|i| q.pow(2 * i) - 1).product::<u128>()
                } else if n == 0 {
                    1
                } else {
                    let t = match self.eps? {
                        Sign::Plus => q.pow(n) - 1,
                        Sign::Minus => q.pow(n) + 1,
                    };
                    q.pow(n * (n - 1)) * t * (1..n).map(|i| q.pow(2 * i) - 1).product::<u128>()
                };
                // O_0 is trivial; otherwise det = −1 has index 2
                Some(if d == 0 { 1 } else { base * half })
            }
            Family::GL => Some((0..d).map(|i| q.pow(d) - q.pow(i)).product()),
            _ => None,
        }
    }

    /// Short human label such as `Sp4(3)` or `O5+(3)`.
    pub fn label(&self) -> String {
        let q = self.field.q();
        let eps = self.eps.map(|e| e.to_string()).unwrap_or_default();
        let base = match self.family {
            Family::Sp => format!("Sp{}({q})", self.dim),
            Family::O => format!("O{}{eps}({q})", self.dim),
            Family::SO => format!("SO{}{eps}({q})", self.dim),
            Family::GL => format!("GL{}({q})", self.dim),
            Family::TorusProduct => format!("T{}({q})", self.dim),
            Family::Subgroup => format!("H{}({q})", self.dim),
        };
        if self.note.is_empty() {
            base
        } else {
            format!("{base}[{}]", self.note)
        }
    }

    /// The standard formed space this family preserves, if any.
    pub fn space(&self, f: &Field) -> Option<FormedSpace> {
        match self.family {
            Family::Sp => Some(FormedSpace::symplectic(self.dim as usize / 2, f)),
            Family::O | Family::SO => {
                let eps = self.eps?;
                if self.dim % 2 == 1 {
                    Some(FormedSpace::odd_orthogonal(self.dim as usize / 2, eps, f))
                } else {
                    FormedSpace::even_orthogonal(self.dim as usize / 2, eps, f).ok()
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub rep: u32,
    pub size: u64,
    pub order: u32,
    pub members: Vec<u32>,
}

/// A fully enumerated finite matrix group with its conjugacy classes.
///
/// Position 0 is always the identity, and classes are ordered by the
/// position of their representative, so class 0 is the identity class.
#[derive(Clone)]
pub struct GroupTable {
    descriptor: GroupDescriptor,
    field: Field,
    dim: usize,
    elems: Vec<Fe>,
    index: KeyMap,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    center: Vec<u32>,
    space: Option<FormedSpace>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable({}, |G|={}, classes={})", self.descriptor, self.order(), self.classes.len())
    }
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor && self.elems == other.elems
    }
}

#[inline]
fn mat_mul_into(a: &[Fe], b: &[Fe], out: &mut [Fe], d: usize, f: &Field) {
    for r in 0..d {
        for c in 0..d {
            let mut s = 0;
            for k in 0..d {
                s = f.add(s, f.mul(a[r * d + k], b[k * d + c]));
            }
            out[r * d + c] = s;
        }
    }
}

#[inline]
fn pack(x: &[Fe], q: u32) -> u128 {
    x.iter().fold(0u128, |k, &v| k * q as u128 + v as u128)
}

fn check_packable(d: usize, q: u32) -> Result<(), GroupError> {
    let bits = (d * d) as f64 * (q as f64).log2();
    if bits >= 127.0 {
        return Err(GroupError::UnsupportedFamily(format!("matrices of size {d} over F_{q} exceed the key width")));
    }
    Ok(())
}

/// Breadth-first closure of `gens` (right multiplication), with a hard cap.
fn closure(gens: &[FqMatrix], d: usize, f: &Field, cap: u64) -> Result<(Vec<Fe>, KeyMap), GroupError> {
    let q = f.q();
    let dd = d * d;
    let mut elems: Vec<Fe> = FqMatrix::identity(d).data().to_vec();
    let mut index = KeyMap::default();
    index.insert(pack(&elems, q), 0);
    let gdata: Vec<&[Fe]> = gens.iter().map(|g| g.data()).collect();
    let mut buf = vec![0; dd];
    if dd == 0 {
        return Ok((elems, index));
    }
    let mut i = 0usize;
    while i * dd < elems.len() {
        for g in &gdata {
            mat_mul_into(&elems[i * dd..(i + 1) * dd], g, &mut buf, d, f);
            let k = pack(&buf, q);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                let pos = (elems.len() / dd) as u32;
                if pos as u64 >= cap {
                    return Err(GroupError::BudgetExceeded { order: cap as u128 + 1, budget: cap });
                }
                e.insert(pos);
                elems.extend_from_slice(&buf);
            }
        }
        i += 1;
    }
    Ok((elems, index))
}

/// Deterministic splitmix64 stream.
pub(crate) struct Mix(u64);
impl Mix {
    pub(crate) fn new(seed: u64) -> Self {
        Mix(seed)
    }
    pub(crate) fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

impl GroupTable {
    /// Assemble a table from an element list (identity first) and generators.
    fn assemble(
        descriptor: GroupDescriptor,
        field: Field,
        dim: usize,
        elems: Vec<Fe>,
        index: KeyMap,
        generators: Vec<u32>,
        space: Option<FormedSpace>,
    ) -> Self {
        let mut t = GroupTable {
            descriptor,
            field,
            dim,
            elems,
            index,
            inverse: Vec::new(),
            generators,
            classes: Vec::new(),
            class_of: Vec::new(),
            center: Vec::new(),
            space,
        };
        t.compute_inverses();
        t.compute_classes();
        t.compute_center();
        t
    }

    fn compute_inverses(&mut self) {
        if self.dim == 0 {
            self.inverse = vec![0];
            return;
        }
        let n = self.order() as usize;
        let mut inv = vec![u32::MAX; n];
        for i in 0..n {
            if inv[i] != u32::MAX {
                continue;
            }
            let m = self.element(i as u32);
            let mi = m.inverse(&self.field).expect("group elements are invertible");
            let j = self.position(&mi).expect("closed under inverses");
            inv[i] = j;
            inv[j as usize] = i as u32;
        }
        self.inverse = inv;
    }

    fn compute_classes(&mut self) {
        let n = self.order() as usize;
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        let gens = self.generators.clone();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            class_of[start] = cid;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                for &s in &gens {
                    // s x s^{-1}
                    let y = self.mul(self.mul(s, x), self.inverse[s as usize]);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = cid;
                        members.push(y);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            let order = self.element_order(start as u32);
            classes.push(ConjClass { rep: start as u32, size: members.len() as u64, order, members });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    fn compute_center(&mut self) {
        self.center = self
            .classes
            .iter()
            .filter(|c| c.size == 1)
            .map(|c| c.rep)
            .collect();
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }
    pub fn label(&self) -> String {
        self.descriptor.label()
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn order(&self) -> u64 {
        if self.dim == 0 {
            1
        } else {
            (self.elems.len() / (self.dim * self.dim)) as u64
        }
    }
    pub fn space(&self) -> Option<&FormedSpace> {
        self.space.as_ref()
    }
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
    pub fn class(&self, c: usize) -> &ConjClass {
        &self.classes[c]
    }
    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }
    pub fn center(&self) -> &[u32] {
        &self.center
    }
    pub fn raw_elements(&self) -> &[Fe] {
        &self.elems
    }

    /// The element at `pos` as a matrix.
    pub fn element(&self, pos: u32) -> FqMatrix {
        FqMatrix::from_vec(self.dim, self.dim, self.elem_slice(pos).to_vec())
    }
    pub fn elem_slice(&self, pos: u32) -> &[Fe] {
        let dd = self.dim * self.dim;
        &self.elems[pos as usize * dd..(pos as usize + 1) * dd]
    }
    pub fn elements(&self) -> impl Iterator<Item = FqMatrix> + '_ {
        (0..self.order() as u32).map(move |i| self.element(i))
    }

    pub fn position(&self, g: &FqMatrix) -> Option<u32> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return None;
        }
        if self.dim == 0 {
            return Some(0);
        }
        self.index.get(&pack(g.data(), self.field.q())).copied()
    }
    pub fn position_of_slice(&self, x: &[Fe]) -> Option<u32> {
        if self.dim == 0 {
            return Some(0);
        }
        self.index.get(&pack(x, self.field.q())).copied()
    }

    /// Position of the product of the elements at `a` and `b`.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.dim == 0 {
            return 0;
        }
        let mut buf = [0u8; 64];
        let dd = self.dim * self.dim;
        if dd <= 64 {
            mat_mul_into(self.elem_slice(a), self.elem_slice(b), &mut buf[..dd], self.dim, &self.field);
            self.position_of_slice(&buf[..dd]).expect("group is closed")
        } else {
            let mut v = vec![0; dd];
            mat_mul_into(self.elem_slice(a), self.elem_slice(b), &mut v, self.dim, &self.field);
            self.position_of_slice(&v).expect("group is closed")
        }
    }
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut acc = 0;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    pub fn element_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn class_of(&self, pos: u32) -> usize {
        self.class_of[pos as usize] as usize
    }
    pub fn conjugacy_class_of(&self, g: &FqMatrix) -> Result<usize, GroupError> {
        self.position(g).map(|p| self.class_of(p)).ok_or(GroupError::NotInGroup)
    }
    /// Class of x^k for x in class c.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let o = self.classes[c].order as i64;
        self.class_of(self.pow(self.classes[c].rep, k.rem_euclid(o) as u64))
    }
    /// Class of x^{-1} for x in class c.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.classes[c].rep))
    }
    pub fn exponent(&self) -> u32 {
        self.classes.iter().fold(1, |e, c| crate::algebra::lcm_u32(e, c.order))
    }
    pub fn is_abelian(&self) -> bool {
        self.classes.len() as u64 == self.order()
    }

    /// Build the subgroup consisting of `members` (positions in `self`).
    pub fn subgroup(&self, members: &[u32], note: &str) -> Result<Subgroup, GroupError> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first() != Some(&0) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        let target = sorted.len();
        let mut in_h = vec![false; self.order() as usize];
        for &m in &sorted {
            in_h[m as usize] = true;
        }
        // greedy generators: add random members until the closure is everything
        let mut gens: Vec<u32> = Vec::new();
        let mut cl: Vec<u32> = vec![0];
        let mut in_cl = vec![false; self.order() as usize];
        in_cl[0] = true;
        let mut rng = Mix::new(0x7E7A_u64 ^ target as u64);
        while cl.len() < target {
            let cand = loop {
                let c = sorted[(rng.next() % target as u64) as usize];
                if !in_cl[c as usize] {
                    break c;
                }
            };
            gens.push(cand);
            // recompute closure from scratch in parent positions
            cl = vec![0];
            in_cl.iter_mut().for_each(|x| *x = false);
            in_cl[0] = true;
            let mut head = 0;
            while head < cl.len() {
                let x = cl[head];
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !in_cl[y as usize] {
                        if !in_h[y as usize] {
                            return Err(GroupError::NotASubgroup(format!("{note}: not closed")));
                        }
                        in_cl[y as usize] = true;
                        cl.push(y);
                    }
                }
                head += 1;
            }
        }
        let dd = self.dim * self.dim;
        let mut elems = Vec::with_capacity(cl.len() * dd);
        let mut index = KeyMap::default();
        let q = self.field.q();
        for (i, &p) in cl.iter().enumerate() {
            let s = self.elem_slice(p);
            index.insert(pack(s, q), i as u32);
            elems.extend_from_slice(s);
        }
        let pos_in_sub: HashMap<u32, u32> = cl.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
        let sub_gens = gens.iter().map(|g| pos_in_sub[g]).collect();
        let mut descriptor = self.descriptor.clone();
        descriptor.family = Family::Subgroup;
        descriptor.note = if descriptor.note.is_empty() {
            format!("{}:{note}", self.descriptor.label())
        } else {
            format!("{}:{note}", descriptor.note)
        };
        let table = GroupTable::assemble(descriptor, self.field.clone(), self.dim, elems, index, sub_gens, None);
        let parent_positions = cl;
        Ok(Subgroup { table, parent_positions })
    }

    /// Replace the descriptor (used when a subgroup is recognized as a named family).
    pub fn with_descriptor(mut self, d: GroupDescriptor, space: Option<FormedSpace>) -> Self {
        self.descriptor = d;
        self.space = space;
        self
    }

    pub(crate) fn from_parts(
        descriptor: GroupDescriptor,
        field: Field,
        dim: usize,
        elems: Vec<Fe>,
        generators: Vec<u32>,
        classes: Vec<ConjClass>,
        space: Option<FormedSpace>,
    ) -> Result<Self, GroupError> {
        let dd = dim * dim;
        let mut index = KeyMap::default();
        let n = if dd == 0 { 1 } else { elems.len() / dd };
        for i in 0..n {
            let k = if dd == 0 { 0 } else { pack(&elems[i * dd..(i + 1) * dd], field.q()) };
            if index.insert(k, i as u32).is_some() {
                return Err(GroupError::Corrupt("duplicate element".into()));
            }
        }
        let mut class_of = vec![u32::MAX; n];
        for (c, cl) in classes.iter().enumerate() {
            for &m in &cl.members {
                *class_of.get_mut(m as usize).ok_or_else(|| GroupError::Corrupt("class member out of range".into()))? =
                    c as u32;
            }
        }
        if class_of.contains(&u32::MAX) {
            return Err(GroupError::Corrupt("classes do not partition the group".into()));
        }
        let mut t = GroupTable {
            descriptor,
            field,
            dim,
            elems,
            index,
            inverse: Vec::new(),
            generators,
            classes,
            class_of,
            center: Vec::new(),
            space,
        };
        t.compute_inverses();
        t.compute_center();
        Ok(t)
    }
}

/// A subgroup table together with the parent positions of its elements.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub table: GroupTable,
    pub parent_positions: Vec<u32>,
}

fn sp_generators(n: usize, f: &Field) -> Vec<FqMatrix> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let m_of = |a: &FqMatrix| {
        let ait = a.inverse(f).expect("invertible").transpose();
        FqMatrix::block_diag(&[a, &ait])
    };
    for a in gl_generators(n, f) {
        gens.push(m_of(&a));
    }
    let mut b = FqMatrix::zeros(n, n);
    b.set(0, 0, 1);
    gens.push(FqMatrix::from_blocks(&FqMatrix::identity(n), &b, &FqMatrix::zeros(n, n), &FqMatrix::identity(n)));
    let i = FqMatrix::identity(n);
    let z = FqMatrix::zeros(n, n);
    gens.push(FqMatrix::from_blocks(&z, &i, &i.neg(f), &z));
    gens
}

fn gl_generators(n: usize, f: &Field) -> Vec<FqMatrix> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let mut d = FqMatrix::identity(n);
    d.set(0, 0, f.generator());
    gens.push(d);
    if n >= 2 {
        let mut e = FqMatrix::identity(n);
        e.set(0, 1, 1);
        gens.push(e);
        let mut c = FqMatrix::zeros(n, n);
        for i in 0..n {
            c.set((i + 1) % n, i, 1);
        }
        gens.push(c);
    }
    gens
}

/// Representatives (first nonzero coordinate 1) of anisotropic lines.
fn anisotropic_vectors(space: &FormedSpace, f: &Field) -> Vec<Vec<Fe>> {
    crate::algebra::matrix::all_vectors(space.dim(), f)
        .into_iter()
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .filter(|v| space.pair(v, v, f) != 0)
        .collect()
}

/// Enumerate a classical group from standard generators.
pub fn build_group(descriptor: &GroupDescriptor, budget: u64) -> Result<GroupTable, GroupError> {
    let f = Field::new(descriptor.field.p, descriptor.field.k).map_err(GroupError::Algebra)?;
    let expected = descriptor
        .expected_order()
        .ok_or_else(|| GroupError::UnsupportedFamily(format!("{:?}", descriptor.family)))?;
    if expected > budget as u128 {
        return Err(GroupError::BudgetExceeded { order: expected, budget });
    }
    let d = descriptor.dim as usize;
    check_packable(d, f.q())?;
    let space = descriptor.space(&f);
    let mut desc = descriptor.clone();
    desc.note.clear();
    let table = match descriptor.family {
        Family::Sp => {
            if d % 2 == 1 {
                return Err(GroupError::UnsupportedFamily("odd symplectic dimension".into()));
            }
            let gens = sp_generators(d / 2, &f);
            let (elems, index) = closure(&gens, d, &f, expected as u64)?;
            let gpos = gens.iter().map(|g| index[&pack(g.data(), f.q())]).collect();
            GroupTable::assemble(desc, f, d, elems, index, gpos, space)
        }
        Family::GL => {
            let gens = gl_generators(d, &f);
            let (elems, index) = closure(&gens, d, &f, expected as u64)?;
            let gpos = gens.iter().map(|g| index[&pack(g.data(), f.q())]).collect();
            GroupTable::assemble(desc, f, d, elems, index, gpos, space)
        }
        Family::O => {
            let space = space.ok_or_else(|| GroupError::UnsupportedFamily("orthogonal family needs ε".into()))?;
            build_orthogonal(desc, &space, f, expected)?
        }
        Family::SO => {
            let space = space.ok_or_else(|| GroupError::UnsupportedFamily("orthogonal family needs ε".into()))?;
            let mut od = desc.clone();
            od.family = Family::O;
            let o = build_orthogonal(od, &space, f.clone(), expected * 2)?;
            let members: Vec<u32> =
                (0..o.order() as u32).filter(|&i| o.element(i).det(&f) == 1 || d == 0).collect();
            let sub = o.subgroup(&members, "SO")?;
            sub.table.with_descriptor(desc, Some(space))
        }
        _ => return Err(GroupError::UnsupportedFamily(format!("{:?}", descriptor.family))),
    };
    if table.order() as u128 != expected {
        return Err(GroupError::OrderMismatch { expected, found: table.order() as u128 });
    }
    Ok(table)
}

fn build_orthogonal(desc: GroupDescriptor, space: &FormedSpace, f: Field, expected: u128) -> Result<GroupTable, GroupError> {
    debug_assert_eq!(space.kind(), FormKind::Symmetric);
    let d = space.dim();
    if d == 0 {
        return Ok(GroupTable::assemble(desc, f, 0, Vec::new(), KeyMap::default(), Vec::new(), Some(space.clone())));
    }
    let aniso = anisotropic_vectors(space, &f);
    let refl: Vec<FqMatrix> = aniso.iter().map(|v| space.reflection(v, &f).expect("anisotropic")).collect();
    // add pseudo-random reflections until the closure reaches the full order
    let mut rng = Mix::new(0x000D_5EED ^ d as u64);
    let mut chosen: Vec<usize> = Vec::new();
    loop {
        let mut pick = (rng.next() % refl.len() as u64) as usize;
        while chosen.contains(&pick) && chosen.len() < refl.len() {
            pick = (pick + 1) % refl.len();
        }
        chosen.push(pick);
        let gens: Vec<FqMatrix> = chosen.iter().map(|&i| refl[i].clone()).collect();
        if chosen.len() < 2 && d > 1 {
            continue;
        }
        let (elems, index) = closure(&gens, d, &f, expected as u64)?;
        let n = (elems.len() / (d * d)) as u128;
        if n == expected || chosen.len() == refl.len() {
            let gpos = gens.iter().map(|g| index[&pack(g.data(), f.q())]).collect();
            return Ok(GroupTable::assemble(desc, f, d, elems, index, gpos, Some(space.clone())));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(p: u8) -> FieldSpec {
        FieldSpec { p, k: 1 }
    }

    #[test]
    fn sp2_3() {
        let g = build_group(&GroupDescriptor::sp(1, fs(3)), DEFAULT_BUDGET).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.num_classes(), 7);
        assert_eq!(g.class(0).size, 1);
        let f = g.field().clone();
        let minus = FqMatrix::scalar(2, f.neg(1));
        assert_eq!(g.classes()[g.conjugacy_class_of(&minus).unwrap()].size, 1);
        let sizes_of_order4: Vec<u64> = g.classes().iter().filter(|c| c.order == 4).map(|c| c.size).collect();
        assert_eq!(sizes_of_order4, vec![6]);
        assert_eq!(g.center().len(), 2);
    }

    #[test]
    fn orthogonal_small() {
        let o3 = build_group(&GroupDescriptor::orthogonal(3, Sign::Plus, fs(3)), DEFAULT_BUDGET).unwrap();
        assert_eq!(o3.order(), 48);
        let so3 = build_group(&GroupDescriptor::special_orthogonal(3, Sign::Plus, fs(3)), DEFAULT_BUDGET).unwrap();
        assert_eq!(so3.order(), 24);
        assert_eq!(so3.num_classes(), 5);
        let o1 = build_group(&GroupDescriptor::orthogonal(1, Sign::Minus, fs(5)), DEFAULT_BUDGET).unwrap();
        assert_eq!(o1.order(), 2);
        let sp0 = build_group(&GroupDescriptor::sp(0, fs(3)), DEFAULT_BUDGET).unwrap();
        assert_eq!(sp0.order(), 1);
        assert_eq!(sp0.num_classes(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let e = build_group(&GroupDescriptor::sp(2, fs(3)), 1000).unwrap_err();
        assert!(matches!(e, GroupError::BudgetExceeded { order: 51840, .. }));
    }
}
