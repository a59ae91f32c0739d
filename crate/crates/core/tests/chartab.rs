use std::sync::Arc;

use proptest::prelude::*;
use theta_core::algebra::{Cyclotomic, FieldSpec, FqMatrix};
use theta_core::chartab::{
    character_table, hc_induce, induce_from_subgroup, is_cuspidal, jacquet, maximal_parabolics, restrict,
    CharacterTable, ClassFunction, Fusion,
};
use theta_core::groups::{build_group, GroupDescriptor, GroupTable, LeviDescriptor, ParabolicData, Sign, DEFAULT_BUDGET};

fn fs(p: u8) -> FieldSpec {
    FieldSpec { p, k: 1 }
}

fn group(d: GroupDescriptor) -> Arc<GroupTable> {
    Arc::new(build_group(&d, DEFAULT_BUDGET).unwrap())
}

fn sorted_degrees(t: &CharacterTable) -> Vec<u64> {
    let mut d = t.degrees();
    d.sort_unstable();
    d
}

#[test]
fn small_tables() {
    let sp2 = character_table(group(GroupDescriptor::sp(1, fs(3)))).unwrap();
    assert_eq!(sorted_degrees(&sp2), vec![1, 1, 1, 2, 2, 2, 3]);
    sp2.verify_columns().unwrap();
    assert!(sp2.get(0).values().iter().all(|v| *v == Cyclotomic::one()));

    let so3 = character_table(group(GroupDescriptor::special_orthogonal(3, Sign::Plus, fs(3)))).unwrap();
    assert_eq!(sorted_degrees(&so3), vec![1, 1, 2, 3, 3]);
    so3.verify_columns().unwrap();

    let o1 = character_table(group(GroupDescriptor::orthogonal(1, Sign::Plus, fs(3)))).unwrap();
    assert_eq!(o1.degrees(), vec![1, 1]);

    let sp2_5 = character_table(group(GroupDescriptor::sp(1, fs(5)))).unwrap();
    assert_eq!(sorted_degrees(&sp2_5), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    sp2_5.verify_columns().unwrap();
}

#[test]
fn sp2_3_has_irrational_values() {
    // SL_2(3) has characters with values in Q(ζ_3) and Q(√-3) style fields
    let t = character_table(group(GroupDescriptor::sp(1, fs(3)))).unwrap();
    assert!(t.characters().iter().any(|c| c.values().iter().any(|v| !v.is_rational())));
}

#[test]
fn sp4_3_table() {
    let t = character_table(group(GroupDescriptor::sp(2, fs(3)))).unwrap();
    assert_eq!(t.len(), 34);
    let d = sorted_degrees(&t);
    assert_eq!(d.iter().map(|&x| x * x).sum::<u64>(), 51840);
    assert_eq!(d[..2], [1, 4]);
    assert_eq!(*d.last().unwrap(), 81);
}

#[test]
fn principal_series_of_sp2() {
    let g = group(GroupDescriptor::sp(1, fs(3)));
    let t = character_table(g.clone()).unwrap();
    let b = ParabolicData::new(&g, &LeviDescriptor::borel(1)).unwrap();
    let one = ClassFunction::trivial(b.levi_table.clone());
    let ind = hc_induce(&g, &b, &one).unwrap();
    // oracle: Ind_B 1 is the permutation character on the q + 1 lines
    let f = g.field().clone();
    let lines = [vec![1u8, 0], vec![0, 1], vec![1, 1], vec![1, 2]];
    for c in 0..g.num_classes() {
        let m = g.element(g.class(c).rep);
        let fixed = lines
            .iter()
            .filter(|v| {
                let w = m.mul_vec(v, &f);
                FqMatrix::from_rows(&[v.to_vec(), w]).rank(&f) == 1
            })
            .count();
        assert_eq!(*ind.value(c), Cyclotomic::from_int(fixed as i128));
    }
    let m = t.decompose(&ind).unwrap();
    assert_eq!(m.iter().sum::<i128>(), 2);
    assert_eq!(m[0], 1);
    let st = t.of_degree(3);
    assert_eq!(st.len(), 1);
    assert_eq!(m[st[0]], 1);
    // Jacquet of the Steinberg character is the trivial torus character
    let j = jacquet(&g, &b, t.get(st[0])).unwrap();
    assert_eq!(j, one);
}

#[test]
fn cuspidals_of_sl2_3() {
    let g = group(GroupDescriptor::sp(1, fs(3)));
    let t = character_table(g.clone()).unwrap();
    let ps = maximal_parabolics(&g).unwrap();
    let cusp: Vec<u64> = t
        .characters()
        .iter()
        .filter(|c| is_cuspidal(&g, c, &ps).unwrap())
        .map(|c| c.degree().to_integer().unwrap() as u64)
        .collect();
    let mut cusp = cusp;
    cusp.sort_unstable();
    assert_eq!(cusp, vec![1, 1, 2]);
}

#[test]
fn induction_and_restriction_are_adjoint() {
    for d in [GroupDescriptor::sp(2, fs(3)), GroupDescriptor::orthogonal(3, Sign::Plus, fs(5))] {
        let g = group(d);
        let t = character_table(g.clone()).unwrap();
        for p in maximal_parabolics(&g).unwrap() {
            let tl = character_table(p.levi_table.clone()).unwrap();
            for s in tl.characters().iter().step_by(3) {
                let ind = hc_induce(&g, &p, s).unwrap();
                assert!(t.is_character(&ind));
                for pi in t.characters().iter().step_by(5) {
                    let lhs = ind.inner_product(pi).unwrap();
                    let rhs = s.inner_product(&jacquet(&g, &p, pi).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn frobenius_reciprocity_for_subgroups() {
    let o3 = group(GroupDescriptor::orthogonal(3, Sign::Plus, fs(3)));
    let members: Vec<u32> = (0..o3.order() as u32).filter(|&i| o3.element(i).det(o3.field()) == 1).collect();
    let sub = o3.subgroup(&members, "SO3").unwrap();
    let fusion = Fusion::new(&o3, Arc::new(sub.table), &sub.parent_positions).unwrap();
    let tg = character_table(o3.clone()).unwrap();
    let th = character_table(fusion.sub.clone()).unwrap();
    for a in th.characters() {
        let ind = induce_from_subgroup(&o3, &fusion, a).unwrap();
        for b in tg.characters() {
            let res = restrict(&o3, &fusion, b).unwrap();
            assert_eq!(ind.inner_product(b).unwrap(), a.inner_product(&res).unwrap());
        }
    }
}

#[test]
fn json_round_trip() {
    let g = group(GroupDescriptor::sp(1, fs(3)));
    let t = character_table(g.clone()).unwrap();
    let j = t.to_json();
    let text = serde_json::to_string(&j).unwrap();
    let back: theta_core::chartab::CharacterTableJson = serde_json::from_str(&text).unwrap();
    let t2 = CharacterTable::from_json(g, &back).unwrap();
    assert_eq!(t.characters(), t2.characters());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn decomposition_recovers_coefficients(coeffs in proptest::collection::vec(-3i128..4, 7)) {
        let g = group(GroupDescriptor::sp(1, fs(3)));
        let t = character_table(g.clone()).unwrap();
        let mut f = ClassFunction::zero(g);
        for (c, chi) in coeffs.iter().zip(t.characters()) {
            f = f.add(&chi.scale_int(*c)).unwrap();
        }
        prop_assert_eq!(t.decompose(&f).unwrap(), coeffs);
    }
}
