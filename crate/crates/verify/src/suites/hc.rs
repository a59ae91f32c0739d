//! Harish-Chandra series of λ = 1 on Sp_0 and its lift λ' = 1 on O_1.

use std::collections::BTreeSet;

use theta_core::dl::{levi_induce, quadratic_exponents, theta_kl, theta_kl_prime};
use theta_core::groups::{GroupDescriptor, Sign};

use super::labels::{column, row};
use super::Check;
use crate::context::{odd_o, sp, Context};
use crate::report::Witness;
use crate::Result;

/// Constituents of R^G_{G_0 × T_l}(1 ⊗ ν^{e}) for the split torus T_l.
fn series(ctx: &Context, d: &GroupDescriptor, exps: &[u64]) -> Result<BTreeSet<usize>> {
    let t = ctx.table(d)?;
    let g = t.group();
    let r = if exps.is_empty() {
        theta_core::chartab::ClassFunction::trivial(g.clone())
    } else {
        levi_induce(g, exps, None)?
    };
    Ok(t.decompose(&r)?.into_iter().enumerate().filter(|&(_, m)| m != 0).map(|(i, _)| i).collect())
}

fn all_theta(l: usize, q: u32) -> Vec<u64> {
    quadratic_exponents(q as u64, &vec![true; l])
}

/// The pairs (m, m') ≤ 2 whose tables fit, for one tower sign.
fn pairs(ctx: &Context, q: u32, eps: Sign, c: &mut Check) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=2 {
        for mp in 0..=2 {
            let (sd, od) = (sp(m, q), odd_o(mp, eps, q));
            if ctx.table_fits(&sd) && ctx.table_fits(&od) {
                out.push((m, mp));
            } else {
                c.note(format!("{} x {} is over the table budget", sd.label(), od.label()));
            }
        }
    }
    out
}

/// Every constituent of each lift lies in `allowed`; an empty `allowed`
/// demands a zero lift.
fn contained(c: &mut Check, what: &str, lifts: Vec<(usize, Vec<(usize, u64)>)>, allowed: &BTreeSet<usize>) {
    for (g, lifted) in lifts {
        let extra: Vec<usize> = lifted.iter().map(|&(j, _)| j).filter(|j| !allowed.contains(j)).collect();
        if lifted.is_empty() && !allowed.is_empty() {
            continue;
        }
        c.expect(extra.is_empty(), || Witness::value(format!("{what}: lift of {g}"), format!("within {allowed:?}"), format!("extra {extra:?}")));
    }
}

pub fn hc_series(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let qq = q as u64;
    for eps in Sign::both() {
        for (m, mp) in pairs(ctx, q, eps, c) {
            let (sd, od) = (sp(m, q), odd_o(mp, eps, q));
            let label = format!("{} x {}", sd.label(), od.label());
            c.group(label.clone());
            let mm = ctx.decomposition(&sd, &od)?;
            let sp_theta = series(ctx, &sd, &all_theta(m, q))?;
            let sp_one = series(ctx, &sd, &vec![0; m])?;
            let o_one = series(ctx, &od, &vec![0; mp])?;
            let o_theta = series(ctx, &od, &all_theta(mp, q))?;
            // λ' is 1 on O_1 and first occurs at n' = 0, so no vanishing range applies.
            let rows = |s: &BTreeSet<usize>| s.iter().map(|&i| (i, row(&mm, i))).collect::<Vec<_>>();
            let cols = |s: &BTreeSet<usize>| s.iter().map(|&j| (j, column(&mm, j))).collect::<Vec<_>>();
            contained(c, &format!("{label} (i) θ-series to R(O)_λ'"), rows(&sp_theta), &o_one);
            contained(c, &format!("{label} (ii) R(O)_λ' to θ-series"), cols(&o_one), &sp_theta);
            let twist = series(ctx, &od, &theta_kl_prime(m, mp, qq).exponents)?;
            contained(c, &format!("{label} (iii) unipotent series to θ'_(m,m') series"), rows(&sp_one), &twist);
            let twist = series(ctx, &sd, &theta_kl(mp, m, qq).exponents)?;
            contained(c, &format!("{label} (iv) θ-series of O to θ_(m',m) series"), cols(&o_theta), &twist);
        }
    }
    Ok(())
}

pub fn hc_unipotent(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let qq = q as u64;
    for eps in Sign::both() {
        for (m, mp) in pairs(ctx, q, eps, c) {
            let (sd, od) = (sp(m, q), odd_o(mp, eps, q));
            let label = format!("{} x {}", sd.label(), od.label());
            c.group(label.clone());
            let mm = ctx.decomposition(&sd, &od)?;
            let sp_one = series(ctx, &sd, &vec![0; m])?;
            let o_theta = series(ctx, &od, &all_theta(mp, q))?;
            let lifts: Vec<_> = sp_one.iter().map(|&i| (i, row(&mm, i))).collect();
            let allowed =
                if mp < m { BTreeSet::new() } else { series(ctx, &od, &theta_kl_prime(m, mp, qq).exponents)? };
            contained(c, &format!("{label} (i) unipotent series of Sp"), lifts, &allowed);
            let lifts: Vec<_> = o_theta.iter().map(|&j| (j, column(&mm, j))).collect();
            let allowed = if m < mp { BTreeSet::new() } else { series(ctx, &sd, &theta_kl(mp, m, qq).exponents)? };
            contained(c, &format!("{label} (ii) θ-series of O"), lifts, &allowed);
        }
    }
    Ok(())
}
