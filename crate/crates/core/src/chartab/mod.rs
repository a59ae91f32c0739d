//! Class functions and exact character tables of finite matrix groups.

pub mod dixon;
pub mod export;
mod modp;
pub mod ops;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Cyclotomic;
use crate::groups::{GroupError, GroupTable};

pub use dixon::{character_table, CharacterTable};
pub use export::{CharacterTableJson, CyclotomicJson};
pub use ops::{hc_induce, induce_from_subgroup, is_cuspidal, jacquet, maximal_parabolics, restrict, Fusion};

#[derive(Debug, Error)]
pub enum ChartabError {
    #[error("class functions live on different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("expected {expected} class values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no lift prime found below {0}")]
    NoLiftPrime(u64),
    #[error("eigenspace splitting stalled: {0}")]
    SplitFailed(String),
    #[error("exact lift failed: {0}")]
    LiftFailed(String),
    #[error("orthogonality check failed: {0}")]
    OrthogonalityFailed(String),
    #[error("multiplicity is not an integer: {0}")]
    NonIntegral(String),
    #[error("bad table data: {0}")]
    BadData(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Two handles refer to the same group when they share storage or agree on
/// descriptor, order and class count.
pub fn same_group(a: &GroupTable, b: &GroupTable) -> bool {
    std::ptr::eq(a, b)
        || (a.descriptor() == b.descriptor() && a.order() == b.order() && a.num_classes() == b.num_classes())
}

fn check_same(a: &GroupTable, b: &GroupTable) -> Result<(), ChartabError> {
    if same_group(a, b) {
        Ok(())
    } else {
        Err(ChartabError::GroupMismatch(a.label(), b.label()))
    }
}

/// A function on conjugacy classes, indexed in the table's class order.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<GroupTable>,
    values: Vec<Cyclotomic>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFunction[{}](", self.group.label())?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: Arc<GroupTable>, values: Vec<Cyclotomic>) -> Result<Self, ChartabError> {
        if values.len() != group.num_classes() {
            return Err(ChartabError::LengthMismatch { expected: group.num_classes(), found: values.len() });
        }
        Ok(ClassFunction { group, values })
    }
    pub fn from_fn(group: Arc<GroupTable>, f: impl FnMut(usize) -> Cyclotomic) -> Self {
        let values = (0..group.num_classes()).map(f).collect();
        ClassFunction { group, values }
    }
    pub fn from_ints(group: Arc<GroupTable>, values: &[i128]) -> Result<Self, ChartabError> {
        Self::new(group, values.iter().map(|&v| Cyclotomic::from_int(v)).collect())
    }
    pub fn zero(group: Arc<GroupTable>) -> Self {
        Self::from_fn(group, |_| Cyclotomic::zero())
    }
    pub fn trivial(group: Arc<GroupTable>) -> Self {
        Self::from_fn(group, |_| Cyclotomic::one())
    }
    /// The regular character.
    pub fn regular(group: Arc<GroupTable>) -> Self {
        let n = group.order() as i128;
        Self::from_fn(group, |c| if c == 0 { Cyclotomic::from_int(n) } else { Cyclotomic::zero() })
    }
    /// A function of the class representative's position.
    pub fn from_rep(group: Arc<GroupTable>, mut f: impl FnMut(u32) -> Cyclotomic) -> Self {
        let g = group.clone();
        Self::from_fn(group, |c| f(g.class(c).rep))
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }
    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }
    /// Value at a group element (by position).
    pub fn at(&self, pos: u32) -> &Cyclotomic {
        &self.values[self.group.class_of(pos)]
    }
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Self, ChartabError> {
        check_same(&self.group, &other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }
    pub fn add(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a + b)
    }
    pub fn sub(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a - b)
    }
    /// Pointwise product (tensor product of characters).
    pub fn mul(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a * b)
    }
    pub fn scale(&self, s: &Cyclotomic) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v * s).collect() }
    }
    pub fn scale_int(&self, s: i128) -> Self {
        self.scale(&Cyclotomic::from_int(s))
    }
    pub fn conj(&self) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(Cyclotomic::conj).collect() }
    }
    /// g ↦ f(g^{-1}).
    pub fn contragredient(&self) -> Self {
        let g = &self.group;
        let values = (0..g.num_classes()).map(|c| self.values[g.inverse_class(c)].clone()).collect();
        ClassFunction { group: g.clone(), values }
    }

    /// ⟨a, b⟩ = |G|^{-1} Σ_g a(g) conj(b(g)).
    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic, ChartabError> {
        check_same(&self.group, &other.group)?;
        let g = &self.group;
        let s: Cyclotomic = (0..g.num_classes())
            .map(|c| (&self.values[c] * &other.values[c].conj()).scale(g.class(c).size as i128, 1))
            .sum();
        Ok(s.scale(1, g.order() as i128))
    }
    pub fn norm_sq(&self) -> Cyclotomic {
        self.inner_product(self).expect("same group")
    }
    /// Integer multiplicity ⟨self, chi⟩, or None when not an integer.
    pub fn multiplicity(&self, chi: &Self) -> Result<Option<i128>, ChartabError> {
        Ok(self.inner_product(chi)?.to_integer())
    }
}

/// A class function on G × G', stored row-major over (class of G, class of G').
#[derive(Clone)]
pub struct PairClassFunction {
    left: Arc<GroupTable>,
    right: Arc<GroupTable>,
    values: Vec<Cyclotomic>,
}

impl fmt::Debug for PairClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairClassFunction[{} x {}]", self.left.label(), self.right.label())
    }
}

impl PairClassFunction {
    pub fn new(left: Arc<GroupTable>, right: Arc<GroupTable>, values: Vec<Cyclotomic>) -> Result<Self, ChartabError> {
        let n = left.num_classes() * right.num_classes();
        if values.len() != n {
            return Err(ChartabError::LengthMismatch { expected: n, found: values.len() });
        }
        Ok(PairClassFunction { left, right, values })
    }
    pub fn from_fn(left: Arc<GroupTable>, right: Arc<GroupTable>, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let (a, b) = (left.num_classes(), right.num_classes());
        let values = (0..a * b).map(|i| f(i / b, i % b)).collect();
        PairClassFunction { left, right, values }
    }
    /// The external tensor product a ⊠ b.
    pub fn outer(a: &ClassFunction, b: &ClassFunction) -> Self {
        Self::from_fn(a.group.clone(), b.group.clone(), |i, j| &a.values[i] * &b.values[j])
    }
    pub fn left(&self) -> &Arc<GroupTable> {
        &self.left
    }
    pub fn right(&self) -> &Arc<GroupTable> {
        &self.right
    }
    pub fn get(&self, c: usize, cp: usize) -> &Cyclotomic {
        &self.values[c * self.right.num_classes() + cp]
    }
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Self, ChartabError> {
        check_same(&self.left, &other.left)?;
        check_same(&self.right, &other.right)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(PairClassFunction { left: self.left.clone(), right: self.right.clone(), values })
    }
    pub fn add(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a + b)
    }
    pub fn sub(&self, other: &Self) -> Result<Self, ChartabError> {
        self.zip(other, |a, b| a - b)
    }
    pub fn scale(&self, s: &Cyclotomic) -> Self {
        PairClassFunction {
            left: self.left.clone(),
            right: self.right.clone(),
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// c' ↦ |G|^{-1} Σ_g Θ(g, c') conj(χ(g)): the χ-isotypic part as a class function on G'.
    pub fn contract_left(&self, chi: &ClassFunction) -> Result<ClassFunction, ChartabError> {
        check_same(&self.left, &chi.group)?;
        let b = self.right.num_classes();
        let weights: Vec<Cyclotomic> = (0..self.left.num_classes())
            .map(|c| chi.values[c].conj().scale(self.left.class(c).size as i128, self.left.order() as i128))
            .collect();
        let values = crate::par::map_range(b, |cp| {
            weights.iter().enumerate().map(|(c, w)| w * &self.values[c * b + cp]).sum()
        });
        ClassFunction::new(self.right.clone(), values)
    }

    /// c ↦ |G'|^{-1} Σ_{g'} Θ(c, g') conj(χ'(g')).
    pub fn contract_right(&self, chi: &ClassFunction) -> Result<ClassFunction, ChartabError> {
        check_same(&self.right, &chi.group)?;
        let b = self.right.num_classes();
        let weights: Vec<Cyclotomic> = (0..b)
            .map(|c| chi.values[c].conj().scale(self.right.class(c).size as i128, self.right.order() as i128))
            .collect();
        let values = crate::par::map_range(self.left.num_classes(), |c| {
            weights.iter().enumerate().map(|(cp, w)| w * &self.values[c * b + cp]).sum()
        });
        ClassFunction::new(self.left.clone(), values)
    }

    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic, ChartabError> {
        check_same(&self.left, &other.left)?;
        check_same(&self.right, &other.right)?;
        let b = self.right.num_classes();
        let s: Cyclotomic = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (x, y))| {
                let h = self.left.class(i / b).size as i128 * self.right.class(i % b).size as i128;
                (x * &y.conj()).scale(h, 1)
            })
            .sum();
        Ok(s.scale(1, self.left.order() as i128 * self.right.order() as i128))
    }
}
