//! Rank-one Deligne-Lusztig identities and the combinatorial layer.

use theta_core::algebra::Cyclotomic;
use theta_core::chartab::ClassFunction;
use theta_core::dl::{bipartitions, chi_character, theta_w, weyl_classes, TorusCharacter, TorusDescriptor};
use theta_core::groups::{GroupTable, Sign};

use super::labels::{labels, Tri};
use super::Check;
use crate::context::{odd_so, sp, Context};
use crate::report::Witness;
use crate::Result;

fn rank_one_tori() -> Vec<TorusDescriptor> {
    weyl_classes(1).iter().map(TorusDescriptor::from_cycle_type).collect()
}

pub fn triv_average(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    for d in [sp(1, q), odd_so(1, Sign::Plus, q)] {
        let ev = ctx.evaluator(&d)?;
        let g = ev.group().clone();
        c.group(g.label());
        let avg = ev.trivial_via_dl()?;
        let diff = avg.sub(&ClassFunction::trivial(g.clone()))?;
        c.expect(diff.is_zero(), || Witness::class_function(format!("average of R_T,1 minus 1 on {}", g.label()), &diff));
    }
    Ok(())
}

pub fn chi_average(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    for eps in Sign::both() {
        let ev = ctx.evaluator(&odd_so(1, eps, q))?;
        let g = ev.group().clone();
        c.group(g.label());
        let diff = ev.chi_via_dl()?.sub(&chi_character(&g)?)?;
        c.expect(diff.is_zero(), || Witness::class_function(format!("average of R_T,θ_T minus χ on {}", g.label()), &diff));
    }
    Ok(())
}

fn is_unipotent_element(g: &GroupTable, pos: u32, p: u32) -> bool {
    let mut o = g.element_order(pos);
    while o.is_multiple_of(p) {
        o /= p;
    }
    o == 1
}

pub fn chi_unipotent(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    for np in 1..=2 {
        for eps in Sign::both() {
            let d = odd_so(np, eps, q);
            if np > 1 && !ctx.table_fits(&d) {
                c.note(format!("{} is over the table budget; the direct route is not evaluated", d.label()));
                continue;
            }
            let g = ctx.group(&d)?;
            c.group(g.label());
            let chi = chi_character(&g)?;
            let bad: Vec<usize> = (0..g.num_classes())
                .filter(|&k| is_unipotent_element(&g, g.class(k).rep, q) && *chi.value(k) != Cyclotomic::one())
                .collect();
            c.expect(bad.is_empty(), || Witness::value(format!("unipotent classes of {} where χ ≠ 1", g.label()), "[]", format!("{bad:?}")));
        }
    }
    Ok(())
}

pub fn chi_twist(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    for eps in Sign::both() {
        let d = odd_so(1, eps, q);
        let (ev, t) = (ctx.evaluator(&d)?, ctx.table(&d)?);
        let g = ev.group().clone();
        c.group(g.label());
        let chi = chi_character(&g)?;
        for torus in rank_one_tori() {
            let r = ev.dl_character(&theta_w(&torus, q as u64))?;
            for (i, m) in t.decompose(&r)?.into_iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let twisted = t.get(i).mul(&chi)?;
                let l = labels(ctx, &twisted, &[])?;
                c.expect(l.unipotent == Tri::Yes, || {
                    Witness::value(format!("χ times constituent {i} of R_{torus},θ on {}", g.label()), "unipotent", format!("{:?}", l.unipotent))
                });
            }
        }
    }
    Ok(())
}

/// Geometric conjugacy class of a rank-one pair: characters of order ≤ 2
/// meet across the two tori, the rest are determined up to inversion.
fn geometric_key(t: &TorusCharacter) -> String {
    let m = t.torus.order(t.q);
    let e = t.exponents[0] % m;
    if e == 0 {
        "1".into()
    } else if 2 * e == m {
        "2".into()
    } else {
        format!("{}:{}", t.torus, e.min(m - e))
    }
}

pub fn disjointness(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let mut ds = vec![sp(1, q)];
    ds.extend(Sign::both().map(|e| odd_so(1, e, q)));
    for d in ds {
        let ev = ctx.evaluator(&d)?;
        c.group(ev.group().label());
        let mut rs = Vec::new();
        for t in rank_one_tori() {
            for th in TorusCharacter::all(&t, q as u64) {
                rs.push((geometric_key(&th), th.to_string(), ev.dl_character(&th)?));
            }
        }
        for (ka, na, ra) in &rs {
            for (kb, nb, rb) in &rs {
                if ka != kb {
                    let ip = ra.inner_product(rb)?;
                    c.expect(ip.is_zero(), || Witness::value(format!("<R({na}), R({nb})> on {}", d.label()), 0, ip));
                }
            }
        }
    }
    Ok(())
}

pub fn series_size(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    for n in 0..=6 {
        c.expect_eq(format!("|classes of W_{n}| against |bipartitions({n})|"), bipartitions(n).len(), weyl_classes(n).len());
    }
    for n in 1..=2 {
        let d = sp(n, q);
        if n > 1 && !ctx.table_fits(&d) {
            c.note(format!("{} is over the table budget", d.label()));
            continue;
        }
        let (ev, t) = (ctx.evaluator(&d)?, ctx.table(&d)?);
        c.group(d.label());
        let r = ev.dl_character(&TorusCharacter::trivial(TorusDescriptor::split(n), q as u64))?;
        let size = t.decompose(&r)?.iter().filter(|&&m| m != 0).count();
        c.measure(&format!("principal_unipotent_series_{}", d.label()), size);
        c.expect_eq(format!("|Irr({})_1|", d.label()), bipartitions(n).len(), size);
    }
    Ok(())
}
