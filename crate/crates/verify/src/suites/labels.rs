//! Three-valued series labels and the chain-identified cuspidals of rank two.

use std::sync::Arc;

use theta_core::algebra::FqMatrix;
use theta_core::chartab::{CharacterTable, ClassFunction};
use theta_core::dl::{chi_character, classify_series, ChainWitness, SeriesLabel};
use theta_core::groups::{Family, GroupDescriptor, GroupTable, Sign};

use crate::context::{central_sign, field_spec, model_twist, odd_o, odd_so, sgn, so_of, sp, transport, Context};
use crate::{Result, VerifyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn known(self) -> Option<bool> {
        match self {
            Tri::Yes => Some(true),
            Tri::No => Some(false),
            Tri::Unknown => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Labels {
    pub unipotent: Tri,
    pub theta: Tri,
}

/// Labels of an irreducible of Sp_{2n} or SO_{2n+1}.
///
/// A supported R_{T,1} or R_{T_w,θ_w} witness, or a chain witness, gives a
/// definite yes. At rank ≤ 1 every torus is supported, and a non-cuspidal
/// irreducible is detected by the tori of the Levi carrying its cuspidal
/// support, so in both cases the absence of a witness is a definite no.
pub fn labels(ctx: &Context, pi: &ClassFunction, chains: &[ChainWitness]) -> Result<Labels> {
    let ev = ctx.evaluator(pi.group().descriptor())?;
    if ev.rank() == 0 {
        return Ok(Labels { unipotent: Tri::Yes, theta: Tri::Yes });
    }
    let c = classify_series(&ev, pi, chains)?;
    Ok(match c.label {
        SeriesLabel::Unipotent => Labels { unipotent: Tri::Yes, theta: Tri::No },
        SeriesLabel::Theta => Labels { unipotent: Tri::No, theta: Tri::Yes },
        SeriesLabel::Other if ev.rank() <= 1 || !ctx.is_cuspidal(pi)? => Labels { unipotent: Tri::No, theta: Tri::No },
        SeriesLabel::Other => Labels { unipotent: Tri::Unknown, theta: Tri::Unknown },
    })
}

/// Labels of an irreducible of O_{2n+1}, read off its restriction to SO_{2n+1}.
pub fn o_labels(ctx: &Context, pi: &ClassFunction, chains: &[ChainWitness]) -> Result<Labels> {
    let so = ctx.group(&so_of(pi.group().descriptor()))?;
    labels(ctx, &transport(pi, &so)?, chains)
}

/// The column of `theta` belonging to an irreducible on the right, as
/// (row, multiplicity) pairs.
pub fn column(mm: &theta_core::weil::MultiplicityMatrix, j: usize) -> Vec<(usize, u64)> {
    (0..mm.entries.len()).filter(|&i| mm.entries[i][j] != 0).map(|i| (i, mm.entries[i][j])).collect()
}

pub fn row(mm: &theta_core::weil::MultiplicityMatrix, i: usize) -> Vec<(usize, u64)> {
    mm.entries[i].iter().enumerate().filter(|(_, &m)| m != 0).map(|(j, &m)| (j, m)).collect()
}

/// The single irreducible in a list of (index, multiplicity), if there is one.
pub fn single(v: &[(usize, u64)]) -> Option<usize> {
    match v {
        [(i, 1)] => Some(*i),
        _ => None,
    }
}

pub fn index_in(t: &CharacterTable, f: &ClassFunction) -> Result<usize> {
    t.index_of(f).ok_or_else(|| VerifyError::Core(format!("character not found in the table of {}", t.group().label())))
}

/// The two cuspidal θ-representations α, β of Sp_2 and the tower sign ε₀
/// in which α occurs at O_1. α is the one whose value at the transvection
/// [[1,1],[0,1]] has the larger (imaginary, real) part.
pub struct ThetaCuspidals {
    pub alpha: ClassFunction,
    pub beta: ClassFunction,
    pub eps0: Sign,
}

pub fn theta_cuspidals(ctx: &Context, q: u32) -> Result<ThetaCuspidals> {
    let d = sp(1, q);
    let t = ctx.table(&d)?;
    let g = t.group().clone();
    let mut found = Vec::new();
    for c in t.characters() {
        if ctx.is_cuspidal(c)? && labels(ctx, c, &[])?.theta == Tri::Yes {
            found.push(c.clone());
        }
    }
    if found.len() != 2 {
        return Err(VerifyError::Core(format!("{} has {} cuspidal θ-representations, not 2", g.label(), found.len())));
    }
    let u = FqMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
    let pos = g.position(&u).expect("transvection lies in Sp2");
    let key = |c: &ClassFunction| {
        let (re, im) = c.at(pos).to_complex();
        (im, re)
    };
    found.sort_by(|a, b| key(b).partial_cmp(&key(a)).expect("finite values"));
    let beta = found.pop().expect("two");
    let alpha = found.pop().expect("two");
    let mut eps0 = Vec::new();
    for eps in Sign::both() {
        let mm = ctx.decomposition(&d, &odd_o(0, eps, q))?;
        if !row(&mm, index_in(&t, &alpha)?).is_empty() {
            eps0.push(eps);
        }
    }
    match eps0[..] {
        [e] => Ok(ThetaCuspidals { alpha, beta, eps0: e }),
        _ => Err(VerifyError::Core(format!("α occurs at O1 in {} odd towers", eps0.len()))),
    }
}

/// λ₁ of Sp_4: the lift of det from O^-_2, which first occurs at Sp_4.
pub fn sp4_cuspidal_unipotent(ctx: &Context, q: u32) -> Result<ClassFunction> {
    let o2 = GroupDescriptor::orthogonal(2, Sign::Minus, field_spec(q));
    let ot = ctx.table(&o2)?;
    let s = sgn(ot.group());
    let det = index_in(&ot, &s)?;
    // ω restricted to O(V) is the linear action times χ(det h)^n, so at
    // q ≡ 3 mod 4 and odd n the linear det shows up as the trivial character.
    for n in 0..2 {
        let twisted = if model_twist(q, n) && !ctx.config().linear_orthogonal { s.mul(&s)? } else { s.clone() };
        let mm = ctx.decomposition(&sp(n, q), &o2)?;
        if !column(&mm, index_in(&ot, &twisted)?).is_empty() {
            return Err(VerifyError::Core(format!("det of O-2 already occurs at Sp{}", 2 * n)));
        }
    }
    let mm = ctx.decomposition(&sp(2, q), &o2)?;
    let i = single(&column(&mm, det)).ok_or_else(|| VerifyError::Core("Θ(det) at Sp4 is not irreducible".into()))?;
    let lambda = mm.left.get(i).clone();
    if !ctx.is_cuspidal(&lambda)? || central_sign(&lambda) != Some(1) {
        return Err(VerifyError::Core("Θ(det) at Sp4 is not a cuspidal irreducible with trivial central character".into()));
    }
    Ok(lambda)
}

/// λ'₁ of SO_5: χ times the restriction of Θ_{O^+_5}(λ₁).
pub fn so5_cuspidal_unipotent(ctx: &Context, q: u32, lambda: &ClassFunction) -> Result<ClassFunction> {
    let o5 = odd_o(2, Sign::Plus, q);
    let mm = ctx.decomposition(&sp(2, q), &o5)?;
    let i = index_in(&mm.left, lambda)?;
    let j = single(&row(&mm, i)).ok_or_else(|| VerifyError::Core("Θ(λ₁) at O5+ is not irreducible".into()))?;
    let so = ctx.group(&odd_so(2, Sign::Plus, q))?;
    let res = transport(mm.right.get(j), &so)?;
    Ok(res.mul(&chi_character(&so)?)?)
}

/// λ₁ of Sp_4 and λ'₁ of SO_5 (on the SO^+_5 table) when both tables fit.
pub struct Chains {
    pub lambda: Option<(ClassFunction, ClassFunction)>,
}

pub fn chains(ctx: &Context, q: u32) -> Result<Chains> {
    if !ctx.table_fits(&odd_o(2, Sign::Plus, q)) || !ctx.table_fits(&sp(2, q)) {
        return Ok(Chains { lambda: None });
    }
    let l = sp4_cuspidal_unipotent(ctx, q)?;
    let lp = so5_cuspidal_unipotent(ctx, q, &l)?;
    Ok(Chains { lambda: Some((l, lp)) })
}

/// λ'₁ on the table `g` of SO^±_5, which has the class ordering of SO^+_5.
pub fn on_table(f: &ClassFunction, g: &Arc<GroupTable>) -> ClassFunction {
    ClassFunction::new(g.clone(), f.values().to_vec()).expect("same class count")
}

/// The chain witnesses that apply to `g`: λ₁ on Sp_4; λ'₁ and χ·λ'₁ on SO^±_5.
pub fn chains_for(c: &Chains, g: &Arc<GroupTable>) -> Result<Vec<ChainWitness>> {
    let Some((l, lp)) = &c.lambda else { return Ok(Vec::new()) };
    let d = g.descriptor();
    Ok(match (d.family, d.dim) {
        (Family::Sp, 4) => {
            vec![ChainWitness { character: l.clone(), label: SeriesLabel::Unipotent, note: "Θ of det from O-2".into() }]
        }
        (Family::SO, 5) => {
            let u = on_table(lp, g);
            let th = u.mul(&chi_character(g)?)?;
            vec![
                ChainWitness { character: u, label: SeriesLabel::Unipotent, note: "χ·Θ(λ₁) restricted to SO5+".into() },
                ChainWitness { character: th, label: SeriesLabel::Theta, note: "χ-twist of λ'₁".into() },
            ]
        }
        _ => Vec::new(),
    })
}
