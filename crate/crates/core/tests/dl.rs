use std::sync::Arc;

use proptest::prelude::*;
use theta_core::algebra::{AddChar, Cyclotomic, FieldSpec};
use theta_core::chartab::{character_table, maximal_parabolics, is_cuspidal, CharacterTable, ClassFunction, PairClassFunction};
use theta_core::dl::*;
use theta_core::groups::{build_group, DualPairEmbedding, GroupDescriptor, GroupTable, Sign, DEFAULT_BUDGET};
use theta_core::weil::pair_character;

fn fs(p: u8) -> FieldSpec {
    FieldSpec { p, k: 1 }
}
fn group(d: GroupDescriptor) -> Arc<GroupTable> {
    Arc::new(build_group(&d, DEFAULT_BUDGET).unwrap())
}
fn table(g: &Arc<GroupTable>) -> CharacterTable {
    character_table(g.clone()).unwrap()
}
fn split1() -> TorusDescriptor {
    TorusDescriptor::split(1)
}
fn ell1() -> TorusDescriptor {
    TorusDescriptor::from_cycle_type(&SignedCycleType::from_pairs(&[(1, Sign::Minus)]))
}

#[test]
fn weyl_and_bipartition_counts() {
    assert_eq!(weyl_classes(1).len(), 2);
    assert_eq!(weyl_classes(2).len(), 5);
    assert_eq!(weyl_classes(3).len(), 10);
    let counts: Vec<usize> = (0..=2).map(|l| bipartitions(l).len()).collect();
    assert_eq!(counts, vec![1, 2, 5]);
    for n in 0..=6 {
        assert_eq!(weyl_classes(n).len(), bipartitions(n).len());
        let p: Vec<usize> = (0..=n).map(|j| partitions(j).len()).collect();
        let expect: usize = (0..=n).map(|j| p[j] * p[n - j]).sum();
        assert_eq!(bipartitions(n).len(), expect);
    }
}

#[test]
fn theta_w_examples() {
    // GL_1(3): Legendre character, exponent 1 on C_2
    assert_eq!(theta_w(&split1(), 3).exponents, vec![1]);
    let t3 = theta_w(&ell1(), 3);
    assert_eq!(t3.exponents, vec![2]);
    // the order-2 element of C_4 has log 2: ζ_4^{4} = 1
    assert_eq!(t3.value(&[2]), Cyclotomic::one());
    assert_eq!(t3.value(&[1]), Cyclotomic::from_int(-1));
    let t5 = theta_w(&ell1(), 5);
    assert_eq!(t5.exponents, vec![3]);
    assert_eq!(t5.value(&[3]), Cyclotomic::from_int(-1));
    // order exactly 2 on every factor
    for n in 1..=3 {
        for w in weyl_classes(n) {
            let t = TorusDescriptor::from_cycle_type(&w);
            let th = theta_w(&t, 5);
            assert!(!th.is_trivial());
            assert!(th.mul(&th).is_trivial());
            assert_eq!(t.epsilon(), w.epsilon());
        }
    }
}

#[test]
fn theta_kl_examples() {
    assert_eq!(theta_kl(1, 2, 3).exponents, vec![0, 1]);
    assert!(theta_kl(3, 2, 3).is_trivial());
    assert_eq!(theta_kl_prime(1, 2, 3).exponents, vec![1, 0]);
    assert_eq!(theta_kl_prime(3, 2, 5).exponents, vec![2, 2]);
}

#[test]
fn sp2_3_examples() {
    let g = group(GroupDescriptor::sp(1, fs(3)));
    let ev = DlEvaluator::new(g.clone()).unwrap();
    let tab = table(&g);
    let rs = ev.dl_character(&TorusCharacter::trivial(split1(), 3)).unwrap();
    let re = ev.dl_character(&TorusCharacter::trivial(ell1(), 3)).unwrap();
    assert_eq!(*rs.degree(), Cyclotomic::from_int(4));
    assert_eq!(*re.degree(), Cyclotomic::from_int(-2));
    let st = tab.get(tab.of_degree(3)[0]).clone();
    let one = ClassFunction::trivial(g.clone());
    assert_eq!(rs, one.add(&st).unwrap());
    assert_eq!(re, one.sub(&st).unwrap());
    assert_eq!(ev.trivial_via_dl().unwrap(), one);
    // the closed form for the split torus agrees with parabolic induction
    for e in 0..2 {
        let th = TorusCharacter::new(split1(), vec![e], 3);
        assert_eq!(ev.rank_one_split_closed_form(e).unwrap(), ev.dl_character(&th).unwrap());
    }
}

#[test]
fn triv_and_chi_identities_at_rank_one() {
    for p in [3u8, 5] {
        let sp = group(GroupDescriptor::sp(1, fs(p)));
        let ev = DlEvaluator::new(sp.clone()).unwrap();
        assert_eq!(ev.trivial_via_dl().unwrap(), ClassFunction::trivial(sp.clone()));
        for e in 0..(p as u64 - 1) {
            assert_eq!(
                ev.rank_one_split_closed_form(e).unwrap(),
                ev.dl_character(&TorusCharacter::new(split1(), vec![e], p as u64)).unwrap()
            );
        }
        for eps in Sign::both() {
            let so = group(GroupDescriptor::special_orthogonal(3, eps, fs(p)));
            let ev = DlEvaluator::new(so.clone()).unwrap();
            assert_eq!(ev.trivial_via_dl().unwrap(), ClassFunction::trivial(so.clone()));
            assert_eq!(ev.chi_via_dl().unwrap(), chi_character(&so).unwrap());
        }
    }
}

#[test]
fn so3_3_chi_is_the_sign_of_s4() {
    let so = group(GroupDescriptor::special_orthogonal(3, Sign::Plus, fs(3)));
    let chi = chi_character(&so).unwrap();
    let tab = table(&so);
    let lin = tab.of_degree(1);
    assert_eq!(lin.len(), 2);
    let sgn = lin.iter().map(|&i| tab.get(i)).find(|c| !c.is_zero() && **c != ClassFunction::trivial(so.clone()));
    assert_eq!(Some(&chi), sgn);
    let so1 = group(GroupDescriptor::special_orthogonal(1, Sign::Plus, fs(3)));
    assert_eq!(chi_character(&so1).unwrap(), ClassFunction::trivial(so1.clone()));
}

#[test]
fn dl_characters_are_virtual_characters_and_disjoint() {
    for p in [3u8, 5] {
        let q = p as u64;
        let g = group(GroupDescriptor::sp(1, fs(p)));
        let ev = DlEvaluator::new(g.clone()).unwrap();
        let tab = table(&g);
        let mut rs = Vec::new();
        for t in [split1(), ell1()] {
            for th in TorusCharacter::all(&t, q) {
                let r = ev.dl_character(&th).unwrap();
                assert!(tab.decompose(&r).is_ok());
                let deg = if t.is_split() { q as i128 + 1 } else { 1 - q as i128 };
                assert_eq!(*r.degree(), Cyclotomic::from_int(deg));
                rs.push((th, r));
            }
        }
        // ⟨R_{T,θ}, R_{T',θ'}⟩ vanishes unless the pairs are W-conjugate
        for (a, ra) in &rs {
            for (b, rb) in &rs {
                let ip = ra.inner_product(rb).unwrap().to_integer().unwrap();
                let m = a.torus.factors[0].order(q);
                let conj = a.torus == b.torus
                    && (a.exponents[0] == b.exponents[0] || (a.exponents[0] + b.exponents[0]) % m == 0);
                if conj {
                    let stab = if (2 * a.exponents[0]) % m == 0 { 2 } else { 1 };
                    assert_eq!(ip, stab);
                } else if a.torus != b.torus && a.is_trivial() != b.is_trivial() {
                    assert_eq!(ip, 0);
                }
            }
        }
    }
}

#[test]
fn theta_w_constituents_are_chi_twists_of_unipotents() {
    for p in [3u8, 5] {
        let so = group(GroupDescriptor::special_orthogonal(3, Sign::Plus, fs(p)));
        let ev = DlEvaluator::new(so.clone()).unwrap();
        let tab = table(&so);
        let chi = chi_character(&so).unwrap();
        for t in [split1(), ell1()] {
            let r = ev.dl_character(&theta_w(&t, p as u64)).unwrap();
            for (i, m) in tab.decompose(&r).unwrap().into_iter().enumerate() {
                if m != 0 {
                    let twisted = tab.get(i).mul(&chi).unwrap();
                    let c = classify_series(&ev, &twisted, &[]).unwrap();
                    assert_eq!(c.label, SeriesLabel::Unipotent);
                }
            }
        }
    }
}

#[test]
fn classify_sp2_3() {
    let g = group(GroupDescriptor::sp(1, fs(3)));
    let ev = DlEvaluator::new(g.clone()).unwrap();
    let tab = table(&g);
    let labels: Vec<SeriesLabel> =
        tab.characters().iter().map(|c| classify_series(&ev, c, &[]).unwrap().label).collect();
    let trivial = tab.index_of(&ClassFunction::trivial(g.clone())).unwrap();
    let st = tab.of_degree(3)[0];
    assert_eq!(labels[trivial], SeriesLabel::Unipotent);
    assert_eq!(labels[st], SeriesLabel::Unipotent);
    for i in tab.of_degree(1) {
        if i != trivial {
            assert_eq!(labels[i], SeriesLabel::Theta);
            let c = classify_series(&ev, tab.get(i), &[]).unwrap();
            assert!(matches!(c.witness, SeriesWitness::DeligneLusztig { ref torus, .. } if torus.starts_with("U1")));
        }
    }
    assert_eq!(labels.iter().filter(|&&l| l == SeriesLabel::Unipotent).count(), 2);
}

#[test]
fn uniform_projection_examples() {
    let g = group(GroupDescriptor::sp(1, fs(3)));
    let ev = DlEvaluator::new(g.clone()).unwrap();
    let tab = table(&g);
    let basis = uniform_basis(&ev).unwrap();
    let one = ClassFunction::trivial(g.clone());
    assert_eq!(uniform_project(&one, &basis).unwrap(), one);
    for b in &basis {
        assert_eq!(&uniform_project(b, &basis).unwrap(), b);
    }
    let parab = maximal_parabolics(&g).unwrap();
    for c in tab.characters() {
        let pr = uniform_project(c, &basis).unwrap();
        let n_pr = pr.norm_sq().to_rational().unwrap();
        assert!(n_pr.0 <= n_pr.1);
        assert_eq!(uniform_project(&pr, &basis).unwrap(), pr);
        if c.degree() == &Cyclotomic::from_int(2) && is_cuspidal(&g, c, &parab).unwrap() {
            // discrete series with θ in general position is ± R_{T_ell,θ}
            let hit = TorusCharacter::all(&ell1(), 3).into_iter().any(|th| {
                let r = ev.dl_character(&th).unwrap();
                r == *c || r.scale_int(-1) == *c
            });
            if hit {
                assert_eq!(&pr, c);
            }
        }
    }
    assert!(matches!(uniform_project(&one, &[one.clone(), one.clone()]), Err(DlError::BasisDegenerate)));
}

#[test]
fn higher_rank_support() {
    let g = group(GroupDescriptor::sp(2, fs(3)));
    let ev = DlEvaluator::new(g.clone()).unwrap();
    let split = ev.dl_character(&TorusCharacter::trivial(TorusDescriptor::split(2), 3)).unwrap();
    assert_eq!(*split.degree(), Cyclotomic::from_int(40 * 4));
    let mixed = TorusDescriptor::from_cycle_type(&SignedCycleType::from_pairs(&[(1, Sign::Plus), (1, Sign::Minus)]));
    let rm = ev.dl_character(&TorusCharacter::trivial(mixed, 3)).unwrap();
    // ε_G ε_T |G|_{p'} / |T| = −(80·8)/(2·4)
    assert_eq!(*rm.degree(), Cyclotomic::from_int(-80));
    let ell = TorusDescriptor::from_cycle_type(&SignedCycleType::from_pairs(&[(2, Sign::Minus)]));
    assert!(matches!(ev.dl_character(&TorusCharacter::trivial(ell, 3)), Err(DlError::UnsupportedScale(_))));
}

fn pan_check(p: u8, np: usize, eps: Sign) -> PairClassFunction {
    let sp = group(GroupDescriptor::sp(1, fs(p)));
    let so = group(GroupDescriptor::special_orthogonal(2 * np as u32 + 1, eps, fs(p)));
    let sp_ev = DlEvaluator::new(sp.clone()).unwrap();
    let so_ev = DlEvaluator::new(so.clone()).unwrap();
    let emb = DualPairEmbedding::new(sp.space().unwrap(), so.space().unwrap(), sp.field()).unwrap();
    let omega = pair_character(&emb, &sp, &so, AddChar::standard()).unwrap();
    let proj = uniform_pair_projection(&omega, &uniform_basis(&sp_ev).unwrap(), &uniform_basis(&so_ev).unwrap()).unwrap();
    let chi = chi_character(&so).unwrap();
    let lhs = PairClassFunction::from_fn(sp.clone(), so.clone(), |c, cp| proj.get(c, cp) * chi.value(cp));
    let rhs = pan_rhs(&sp_ev, &so_ev, 1, np).unwrap();
    lhs.sub(&rhs).unwrap()
}

#[test]
fn pan_identity_small_rank() {
    let sp = group(GroupDescriptor::sp(1, fs(3)));
    let so1 = group(GroupDescriptor::special_orthogonal(1, Sign::Plus, fs(3)));
    let rhs = pan_rhs(&DlEvaluator::new(sp).unwrap(), &DlEvaluator::new(so1).unwrap(), 1, 0).unwrap();
    assert_eq!(*rhs.get(0, 0), Cyclotomic::from_int(3));
    for (p, np) in [(3u8, 0usize), (3, 1), (5, 0), (5, 1)] {
        for eps in Sign::both() {
            assert!(pan_check(p, np, eps).is_zero(), "q={p} n'={np} {eps}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn torus_characters_multiply(e1 in 0u64..6, e2 in 0u64..6, j in 0u64..6) {
        let t = ell1();
        let a = TorusCharacter::new(t.clone(), vec![e1], 5);
        let b = TorusCharacter::new(t, vec![e2], 5);
        prop_assert_eq!(a.mul(&b).value(&[j]), &a.value(&[j]) * &b.value(&[j]));
    }
}

fn unipotent_classes(g: &GroupTable, p: u64) -> Vec<usize> {
    (0..g.classes().len())
        .filter(|&c| {
            let mut o = g.element_order(g.class(c).rep) as u64;
            while o.is_multiple_of(p) {
                o /= p;
            }
            o == 1
        })
        .collect()
}

#[test]
fn chi_is_one_on_unipotents() {
    for (p, dim) in [(3u8, 3u32), (5, 3), (3, 5)] {
        for eps in Sign::both() {
            let so = group(GroupDescriptor::special_orthogonal(dim, eps, fs(p)));
            let chi = chi_character(&so).unwrap();
            let us = unipotent_classes(&so, p as u64);
            assert!(us.len() > 1);
            for c in us {
                assert_eq!(*chi.value(c), Cyclotomic::one(), "SO{dim}({p}) class {c}");
            }
        }
    }
}

#[test]
fn principal_series_constituents_match_bipartitions() {
    for n in 1..=2usize {
        let g = group(GroupDescriptor::sp(n as u32, fs(3)));
        let ev = DlEvaluator::new(g.clone()).unwrap();
        let tab = table(&g);
        let r = ev.dl_character(&TorusCharacter::trivial(TorusDescriptor::split(n), 3)).unwrap();
        let m = tab.decompose(&r).unwrap();
        assert_eq!(m.iter().filter(|&&x| x != 0).count(), bipartitions(n).len());
    }
}
