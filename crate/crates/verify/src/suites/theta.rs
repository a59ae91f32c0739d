//! Suites over computed dual-pair decompositions and Witt towers.

use std::sync::Arc;

use theta_core::algebra::Field;
use theta_core::chartab::{CharacterTable, ClassFunction, PairClassFunction};
use theta_core::dl::{
    pan_rhs, theta_w, uniform_basis, uniform_pair_projection, weyl_classes, DlError, DlEvaluator, TorusCharacter,
    TorusDescriptor,
};
use theta_core::groups::{DualPairEmbedding, Family, GroupDescriptor, Sign};
use theta_core::weil::{pair_character, theta_nonzero, Tower, TowerPoint};

use super::labels::{chains, chains_for, column, labels, row, single, Tri};
use super::Check;
use crate::context::{central_sign, model_twist, odd_o, odd_so, sgn, sp, transport, Context};
use crate::report::Witness;
use crate::Result;

pub(crate) fn field(q: u32) -> Field {
    Field::prime(q as u8).expect("validated q")
}

pub(crate) fn tower_descriptor(t: Tower, level: usize, q: u32) -> GroupDescriptor {
    t.descriptor(level, &field(q))
}

/// Constituents of Θ(π_i) from the group `src` to `target`, with the table
/// they index into. The symplectic group is always the left factor.
pub(crate) fn lift(
    ctx: &Context,
    src: &GroupDescriptor,
    i: usize,
    target: &GroupDescriptor,
) -> Result<(Vec<(usize, u64)>, Arc<CharacterTable>)> {
    if src.family == Family::Sp {
        let mm = ctx.decomposition(src, target)?;
        Ok((row(&mm, i), mm.right.clone()))
    } else {
        let mm = ctx.decomposition(target, src)?;
        Ok((column(&mm, i), mm.left.clone()))
    }
}

pub(crate) fn first_occurrence_in(ctx: &Context, pi: &ClassFunction, tower: Tower) -> Result<usize> {
    let g = pi.group();
    let space = g.space().expect("classical groups carry a form");
    let (q, bound) = (g.field().q(), ctx.config().tower_bound);
    if tower != Tower::Sp || !ctx.config().linear_orthogonal {
        return Ok(theta_core::weil::first_occurrence(pi, space, tower, bound, ctx.psi(q))?);
    }
    let twisted = pi.mul(&sgn(g))?;
    for n in 0..=bound {
        let src = if model_twist(q, n) { &twisted } else { pi };
        if theta_nonzero(src, space, &TowerPoint::new(tower, n, g.field()), ctx.psi(q))? {
            return Ok(n);
        }
    }
    Err(theta_core::weil::WeilError::BoundExhausted { bound }.into())
}

fn quadratic(t: &TorusDescriptor, on: bool, q: u64) -> TorusCharacter {
    if on && t.rank() > 0 {
        theta_w(t, q)
    } else {
        TorusCharacter::trivial(t.clone(), q)
    }
}

/// Whether π occurs in some R_{T_v × T_w, θ_v^a ⊗ θ_w^b} with v ∈ W_a, w ∈ W_b;
/// `None` when no witness was found and some term is out of scale.
fn occurs_in_family(ev: &DlEvaluator, pi: &ClassFunction, a: usize, b: usize, theta_on_v: bool) -> Result<Option<bool>> {
    let q = ev.q();
    let mut unsupported = false;
    for v in weyl_classes(a) {
        let tv = TorusDescriptor::from_cycle_type(&v);
        for w in weyl_classes(b) {
            let tw = TorusDescriptor::from_cycle_type(&w);
            let th = quadratic(&tv, theta_on_v, q).tensor(&quadratic(&tw, !theta_on_v, q));
            match ev.dl_character(&th) {
                Ok(r) => {
                    if !pi.inner_product(&r)?.is_zero() {
                        return Ok(Some(true));
                    }
                }
                Err(DlError::UnsupportedScale(_)) => unsupported = true,
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(if unsupported { None } else { Some(false) })
}

pub fn unipotent_theta(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let ch = chains(ctx, q)?;
    let mut pairs = vec![(1, 0), (1, 1)];
    if ctx.table_fits(&sp(2, q)) && ctx.table_fits(&odd_o(2, Sign::Plus, q)) {
        pairs.push((2, 2));
    }
    let mut inconclusive = 0u64;
    for (n, np) in pairs {
        for eps in Sign::both() {
            let (sd, od, sod) = (sp(n, q), odd_o(np, eps, q), odd_so(np, eps, q));
            let mm = ctx.decomposition(&sd, &od)?;
            let pair = format!("{} x {}", sd.label(), od.label());
            c.group(pair.clone());
            let (sp_ev, so_ev) = (ctx.evaluator(&sd)?, ctx.evaluator(&sod)?);
            let so = so_ev.group().clone();
            let (sp_chains, so_chains) = (chains_for(&ch, sp_ev.group())?, chains_for(&ch, &so)?);
            for (i, j, _) in mm.nonzero() {
                let pi = mm.left.get(i);
                let pip = transport(mm.right.get(j), &so)?;
                let (l, lp) = (labels(ctx, pi, &sp_chains)?, labels(ctx, &pip, &so_chains)?);
                let at = format!("{pair} constituent ({i},{j})");
                match l.unipotent {
                    Tri::Yes => {
                        if c.expect(np >= n, || Witness::value(format!("{at}: unipotent π needs n' ≥ n"), format!("n' ≥ {n}"), np)) {
                            match occurs_in_family(&so_ev, &pip, n, np - n, true)? {
                                Some(ok) => {
                                    c.expect(ok, || Witness::value(format!("{at}: π' in R(T_v×T_w', θ_v⊗1)"), true, false));
                                }
                                None => inconclusive += 1,
                            }
                        }
                    }
                    Tri::Unknown => inconclusive += 1,
                    Tri::No => {}
                }
                match lp.theta {
                    Tri::Yes => {
                        if c.expect(n >= np, || Witness::value(format!("{at}: θ-representation π' needs n ≥ n'"), format!("n ≥ {np}"), n)) {
                            match occurs_in_family(&sp_ev, pi, np, n - np, false)? {
                                Some(ok) => {
                                    c.expect(ok, || Witness::value(format!("{at}: π in R(T_v×T_w, 1⊗θ_w)"), true, false));
                                }
                                None => inconclusive += 1,
                            }
                        }
                    }
                    Tri::Unknown => inconclusive += 1,
                    Tri::No => {}
                }
                match (l.theta.known(), lp.unipotent.known()) {
                    (Some(a), Some(b)) => {
                        c.expect(a == b, || Witness::value(format!("{at}: π θ-rep iff π' unipotent"), a, b));
                    }
                    _ => inconclusive += 1,
                }
            }
        }
    }
    c.measure("inconclusive_clauses", inconclusive);
    if inconclusive > 0 {
        c.note("clauses whose labels or witnesses need tori beyond the supported scale are counted as inconclusive");
    }
    Ok(())
}

pub fn pan(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let spd = sp(1, q);
    let sp_ev = ctx.evaluator(&spd)?;
    let spg = sp_ev.group().clone();
    let sp_basis = uniform_basis(&sp_ev)?;
    for np in 0..=1 {
        for eps in Sign::both() {
            let so_ev = ctx.evaluator(&odd_so(np, eps, q))?;
            let so = so_ev.group().clone();
            let label = format!("{} x {}", spg.label(), so.label());
            c.group(label.clone());
            let emb = DualPairEmbedding::new(spg.space().expect("form"), so.space().expect("form"), spg.field())?;
            let omega = pair_character(&emb, &spg, &so, ctx.psi(q))?;
            let proj = uniform_pair_projection(&omega, &sp_basis, &uniform_basis(&so_ev)?)?;
            let chi = theta_core::dl::chi_character(&so)?;
            let lhs = PairClassFunction::from_fn(spg.clone(), so.clone(), |a, b| proj.get(a, b) * chi.value(b));
            let diff = lhs.sub(&pan_rhs(&sp_ev, &so_ev, 1, np)?)?;
            c.expect(diff.is_zero(), || Witness::ClassFunction {
                what: "uniform projection of ω times 1⊗χ minus the Deligne-Lusztig sum".into(),
                group: label,
                values: diff.values().iter().map(|v| v.to_string()).collect(),
            });
        }
    }
    Ok(())
}

/// Cuspidal irreducibles of the group described by `d`, by index.
pub(crate) fn cuspidals(ctx: &Context, d: &GroupDescriptor) -> Result<Vec<usize>> {
    let t = ctx.table(d)?;
    let mut out = Vec::new();
    for (i, pi) in t.characters().iter().enumerate() {
        if ctx.is_cuspidal(pi)? {
            out.push(i);
        }
    }
    Ok(out)
}

fn check_first_occurrence(ctx: &Context, q: u32, src: &GroupDescriptor, tower: Tower, c: &mut Check) -> Result<()> {
    let t = ctx.table(src)?;
    for i in cuspidals(ctx, src)? {
        let n0 = first_occurrence_in(ctx, t.get(i), tower)?;
        let at0 = tower_descriptor(tower, n0, q);
        if !ctx.table_fits(&at0) {
            c.note(format!("{} is over the table budget", at0.label()));
            continue;
        }
        let (lifted, tt) = lift(ctx, src, i, &at0)?;
        c.group(format!("{} -> {}", src.label(), at0.label()));
        let what = format!("Θ of cuspidal {i} of {} at {}", src.label(), at0.label());
        match single(&lifted) {
            Some(j) => {
                let cusp = ctx.is_cuspidal(tt.get(j))?;
                c.expect(cusp, || Witness::value(format!("{what} is cuspidal"), true, false));
            }
            None => {
                c.expect(false, || Witness::value(format!("{what} is irreducible"), "one constituent", format!("{lifted:?}")));
            }
        }
        for k in n0 + 1..=ctx.config().tower_bound {
            let dk = tower_descriptor(tower, k, q);
            if !ctx.table_fits(&dk) {
                break;
            }
            let (lifted, tt) = lift(ctx, src, i, &dk)?;
            let mut cusp = Vec::new();
            for &(j, _) in &lifted {
                if ctx.is_cuspidal(tt.get(j))? {
                    cusp.push(j);
                }
            }
            c.expect(cusp.is_empty(), || {
                Witness::value(format!("cuspidal constituents of Θ(cuspidal {i} of {}) at {}", src.label(), dk.label()), "[]", format!("{cusp:?}"))
            });
        }
    }
    Ok(())
}

pub fn first_occurrence(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    for eps in Sign::both() {
        check_first_occurrence(ctx, q, &sp(1, q), Tower::OddOrth(eps), c)?;
    }
    for np in 0..=1 {
        for eps in Sign::both() {
            check_first_occurrence(ctx, q, &odd_o(np, eps, q), Tower::Sp, c)?;
        }
    }
    Ok(())
}

pub fn howe(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let f = field(q);
    for n in 1..=2 {
        let d = sp(n, q);
        if n > 1 && !ctx.table_fits(&d) {
            c.note(format!("{} is over the table budget", d.label()));
            continue;
        }
        let t = ctx.table(&d)?;
        let space = t.group().space().expect("form").clone();
        c.group(format!("{} x O{}±({q})", d.label(), 2 * n + 1));
        let mut covered = 0;
        for (i, pi) in t.characters().iter().enumerate() {
            let mut hit = false;
            for eps in Sign::both() {
                hit |= theta_nonzero(pi, &space, &TowerPoint::new(Tower::OddOrth(eps), n, &f), ctx.psi(q))?;
            }
            if c.expect(hit, || Witness::value(format!("irreducible {i} of {} occurs in ω+ ⊕ ω-", d.label()), true, false)) {
                covered += 1;
            }
        }
        c.measure(&format!("covered_{}", d.label()), format!("{covered}/{}", t.len()));
    }
    Ok(())
}

pub fn conservation(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let d = sp(1, q);
    let t = ctx.table(&d)?;
    c.group(d.label());
    for i in cuspidals(ctx, &d)? {
        let plus = first_occurrence_in(ctx, t.get(i), Tower::OddOrth(Sign::Plus))?;
        let minus = first_occurrence_in(ctx, t.get(i), Tower::OddOrth(Sign::Minus))?;
        c.measure(&format!("n'+,n'- of cuspidal {i} of {}", d.label()), format!("{plus},{minus}"));
        c.expect_eq(format!("n'+ + n'- for cuspidal {i} of {}", d.label()), 2, plus + minus);
    }
    for np in 0..=1 {
        for eps in Sign::both() {
            let od = odd_o(np, eps, q);
            let t = ctx.table(&od)?;
            c.group(od.label());
            let s = sgn(t.group());
            for i in cuspidals(ctx, &od)? {
                let pi = t.get(i);
                let a = first_occurrence_in(ctx, pi, Tower::Sp)?;
                let b = first_occurrence_in(ctx, &pi.mul(&s)?, Tower::Sp)?;
                c.measure(&format!("n,n(sgn) of cuspidal {i} of {}", od.label()), format!("{a},{b}"));
                c.expect_eq(format!("n + n(⊗sgn) for cuspidal {i} of {}", od.label()), 2 * np + 1, a + b);
            }
        }
    }
    Ok(())
}

pub fn central_unipotent(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let ch = chains(ctx, q)?;
    for n in 1..=2 {
        let d = sp(n, q);
        if !ctx.table_fits(&d) {
            c.note(format!("{} is over the table budget", d.label()));
            continue;
        }
        let t = ctx.table(&d)?;
        let chs = chains_for(&ch, t.group())?;
        c.group(d.label());
        for (i, pi) in t.characters().iter().enumerate() {
            if labels(ctx, pi, &chs)?.unipotent == Tri::Yes {
                let s = central_sign(pi);
                c.expect(s == Some(1), || Witness::value(format!("central sign of unipotent {i} of {}", d.label()), 1, sign_str(s)));
            }
        }
        for np in 0..=2 {
            for eps in Sign::both() {
                let od = odd_o(np, eps, q);
                if !ctx.table_fits(&od) {
                    continue;
                }
                let mm = ctx.decomposition(&d, &od)?;
                c.group(format!("{} x {}", d.label(), od.label()));
                for (i, j, _) in mm.nonzero() {
                    if labels(ctx, mm.left.get(i), &chs)?.unipotent == Tri::Yes {
                        let s = central_sign(mm.right.get(j));
                        c.expect(s == Some(1), || {
                            Witness::value(format!("central sign of the partner {j} in {} of unipotent {i}", od.label()), 1, sign_str(s))
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn sign_str(s: Option<i128>) -> String {
    s.map_or_else(|| "not a scalar".into(), |v| v.to_string())
}
