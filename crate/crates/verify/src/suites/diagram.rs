//! Cuspidal lifts along the odd orthogonal towers and classification spot checks.

use std::sync::Arc;

use theta_core::chartab::{CharacterTable, ClassFunction};
use theta_core::dl::chi_character;
use theta_core::groups::{GroupTable, Sign};
use theta_core::weil::Tower;

use super::labels::{chains, chains_for, labels, o_labels, on_table, single, theta_cuspidals, Tri};
use super::theta::{cuspidals, first_occurrence_in, lift, sign_str};
use super::Check;
use crate::context::{central_sign, extend_from_so, odd_o, odd_so, sgn, sp, Context};
use crate::report::Witness;
use crate::Result;

/// Compare the lift of an irreducible with the expected irreducible, naming
/// the candidates in the witness.
fn expect_lift(
    c: &mut Check,
    what: String,
    lifted: &[(usize, u64)],
    table: &CharacterTable,
    expected: (&str, &ClassFunction),
    names: &[(&str, &ClassFunction)],
) {
    let found = single(lifted).map(|j| table.get(j));
    let name = |f: &ClassFunction| {
        names.iter().find(|(_, g)| *g == f).map_or_else(|| format!("central sign {}", sign_str(central_sign(f))), |(n, _)| n.to_string())
    };
    let ok = found == Some(expected.1);
    c.expect(ok, || {
        let got = match found {
            Some(f) => name(f),
            None => format!("constituents {lifted:?}"),
        };
        Witness::value(what, expected.0, got)
    });
}

fn lambda_prime(lp: &ClassFunction, o: &Arc<GroupTable>, so: &Arc<GroupTable>, chi: bool, central: i128) -> Result<ClassFunction> {
    let mut u = on_table(lp, so);
    if chi {
        u = u.mul(&chi_character(so)?)?;
    }
    extend_from_so(&u, o, central)
}

pub fn cuspidal_unipotent_lift(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let ch = chains(ctx, q)?;
    let Some((l, lp)) = &ch.lambda else {
        c.note(format!("Sp4({q}) or O5({q}) is over the table budget"));
        return Ok(());
    };
    let spd = sp(2, q);
    c.measure("degree_lambda1", l.degree());
    c.measure("degree_lambda1_prime", lp.degree());
    c.note("λ₁ is the lift of det from O-2 to Sp4; λ'₁ is χ times the restriction of its lift to O5+");
    let i = super::labels::index_in(&*ctx.table(&spd)?, l)?;
    for eps in Sign::both() {
        let n = first_occurrence_in(ctx, l, Tower::OddOrth(eps))?;
        c.measure(&format!("first_occurrence_{eps}"), n);
        c.expect_eq(format!("first occurrence of λ₁ in the {eps} odd tower"), 2, n);
        let od = odd_o(2, eps, q);
        c.group(format!("{} x {}", spd.label(), od.label()));
        let (lifted, rt) = lift(ctx, &spd, i, &od)?;
        let (o, so) = (rt.group().clone(), ctx.group(&odd_so(2, eps, q))?);
        let plus = lambda_prime(lp, &o, &so, true, 1)?;
        let minus = lambda_prime(lp, &o, &so, true, -1)?;
        expect_lift(
            c,
            format!("Θ(λ₁) at {}", od.label()),
            &lifted,
            &rt,
            ("λ'+_1,χ", &plus),
            &[("λ'+_1,χ", &plus), ("λ'-_1,χ", &minus)],
        );
    }
    Ok(())
}

pub fn cuspidal_theta(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let d = sp(1, q);
    let t = ctx.table(&d)?;
    c.group(d.label());
    let mut found = Vec::new();
    for i in cuspidals(ctx, &d)? {
        if labels(ctx, t.get(i), &[])?.theta == Tri::Yes {
            found.push(i);
        }
    }
    c.expect_eq(format!("number of cuspidal θ-representations of {}", d.label()), 2, found.len());
    let mut values = Vec::new();
    for &i in &found {
        let s = central_sign(t.get(i));
        values.push(format!("{}·deg", sign_str(s)));
        c.expect(s == Some(-1), || {
            Witness::value(format!("λ(−I) for cuspidal θ-representation {i} of {}", d.label()), "-1·deg", format!("{}·deg", sign_str(s)))
        });
    }
    c.measure("central_values", values.join(","));
    Ok(())
}

pub fn theta_diagram(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let tc = theta_cuspidals(ctx, q)?;
    let e0 = tc.eps0;
    c.measure("eps0", e0);
    let sp0 = sp(0, q);
    let lambda0 = ctx.table(&sp0)?.get(0).clone();
    let mut fo = Vec::new();
    for eps in Sign::both() {
        let od = odd_o(0, eps, q);
        c.group(format!("{} x {}", sp0.label(), od.label()));
        let n = first_occurrence_in(ctx, &lambda0, Tower::OddOrth(eps))?;
        fo.push(n);
        c.expect_eq(format!("first occurrence of λ₀ in the {eps} odd tower"), 0, n);
        let (lifted, rt) = lift(ctx, &sp0, 0, &od)?;
        let one = ClassFunction::trivial(rt.group().clone());
        let s = sgn(rt.group());
        expect_lift(c, format!("Θ(λ₀) at {}", od.label()), &lifted, &rt, ("1", &one), &[("1", &one), ("sgn", &s)]);
    }
    for eps in Sign::both() {
        let ot = ctx.table(&odd_o(0, eps, q))?;
        fo.push(first_occurrence_in(ctx, &sgn(ot.group()), Tower::Sp)?);
    }
    let spd = sp(1, q);
    let t = ctx.table(&spd)?;
    let ch = chains(ctx, q)?;
    for (name, pi, near) in [("α", &tc.alpha, e0), ("β", &tc.beta, e0.flip())] {
        let i = super::labels::index_in(&t, pi)?;
        let n = first_occurrence_in(ctx, pi, Tower::OddOrth(near))?;
        c.expect_eq(format!("first occurrence of λ_1,{name} in the {near} odd tower"), 0, n);
        let od = odd_o(0, near, q);
        c.group(format!("{} x {}", spd.label(), od.label()));
        let (lifted, rt) = lift(ctx, &spd, i, &od)?;
        let one = ClassFunction::trivial(rt.group().clone());
        let s = sgn(rt.group());
        expect_lift(c, format!("Θ(λ_1,{name}) at {}", od.label()), &lifted, &rt, ("sgn", &s), &[("1", &one), ("sgn", &s)]);

        let far = near.flip();
        let n = first_occurrence_in(ctx, pi, Tower::OddOrth(far))?;
        fo.push(n);
        c.expect_eq(format!("first occurrence of λ_1,{name} in the {far} odd tower"), 2, n);
        let od = odd_o(2, far, q);
        match &ch.lambda {
            Some((_, lp)) => {
                c.group(format!("{} x {}", spd.label(), od.label()));
                let (lifted, rt) = lift(ctx, &spd, i, &od)?;
                let (o, so) = (rt.group().clone(), ctx.group(&odd_so(2, far, q))?);
                let plus = lambda_prime(lp, &o, &so, false, 1)?;
                let minus = lambda_prime(lp, &o, &so, false, -1)?;
                expect_lift(
                    c,
                    format!("Θ(λ_1,{name}) at {}", od.label()),
                    &lifted,
                    &rt,
                    ("λ'-_1", &minus),
                    &[("λ'+_1", &plus), ("λ'-_1", &minus)],
                );
            }
            None => c.note(format!("{} is over the table budget; the lift of λ_1,{name} there is not compared", od.label())),
        }
    }
    c.measure("first_occurrences", fo.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","));
    Ok(())
}

pub fn cuspidal_classification(ctx: &Context, q: u32, c: &mut Check) -> Result<()> {
    let ch = chains(ctx, q)?;
    let d = sp(1, q);
    let t = ctx.table(&d)?;
    c.group(d.label());
    let mut n = 0;
    for i in cuspidals(ctx, &d)? {
        n += usize::from(labels(ctx, t.get(i), &[])?.unipotent == Tri::Yes);
    }
    c.expect_eq(format!("cuspidal unipotent irreducibles of {}", d.label()), 0, n);
    for eps in Sign::both() {
        let sd = odd_so(1, eps, q);
        let t = ctx.table(&sd)?;
        c.group(sd.label());
        let mut n = 0;
        for i in cuspidals(ctx, &sd)? {
            n += usize::from(labels(ctx, t.get(i), &[])?.unipotent == Tri::Yes);
        }
        c.expect_eq(format!("cuspidal unipotent irreducibles of {}", sd.label()), 0, n);
        let od = odd_o(1, eps, q);
        let t = ctx.table(&od)?;
        c.group(od.label());
        let mut n = 0;
        for i in cuspidals(ctx, &od)? {
            n += usize::from(o_labels(ctx, t.get(i), &[])?.theta == Tri::Yes);
        }
        c.expect_eq(format!("cuspidal θ-representations of {}", od.label()), 0, n);
    }
    if ch.lambda.is_none() {
        c.note(format!("Sp4({q}) or O5({q}) is over the table budget"));
        return Ok(());
    }
    for d in [sp(2, q), odd_so(2, Sign::Plus, q)] {
        let t = ctx.table(&d)?;
        let chs = chains_for(&ch, t.group())?;
        c.group(d.label());
        let (mut cusp, mut all, mut unknown) = (0, 0, 0);
        for (i, pi) in t.characters().iter().enumerate() {
            let l = labels(ctx, pi, &chs)?;
            unknown += usize::from(l.unipotent == Tri::Unknown);
            if l.unipotent == Tri::Yes {
                all += 1;
                cusp += usize::from(ctx.is_cuspidal(t.get(i))?);
            }
        }
        c.measure(&format!("identified_unipotent_{}", d.label()), all);
        c.measure(&format!("unidentified_cuspidal_{}", d.label()), unknown);
        c.expect_eq(format!("identified cuspidal unipotent irreducibles of {}", d.label()), 1, cusp);
        c.expect_eq(format!("non-cuspidal unipotent irreducibles of {}", d.label()), 5, all - cusp);
    }
    Ok(())
}
