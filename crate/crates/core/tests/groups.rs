use std::collections::HashSet;

use proptest::prelude::*;
use theta_core::algebra::{Field, FieldSpec, FqMatrix};
use theta_core::groups::spinor::spinor_class;
use theta_core::groups::{
    build_group, persist, spinor_norm, DualPairEmbedding, FormedSpace, GroupDescriptor, LeviDescriptor,
    ParabolicData, Sign, DEFAULT_BUDGET,
};

fn fs(p: u8) -> FieldSpec {
    FieldSpec { p, k: 1 }
}

#[test]
fn sp4_3_order_and_classes() {
    let g = build_group(&GroupDescriptor::sp(2, fs(3)), DEFAULT_BUDGET).unwrap();
    assert_eq!(g.order(), 51840);
    assert_eq!(g.num_classes(), 34);
    let sizes = g.class_sizes();
    assert_eq!(sizes.iter().sum::<u64>(), 51840);
    assert!(sizes.iter().all(|s| 51840 % s == 0));
}

#[test]
fn class_invariants_are_constant() {
    // independent check of the orbit partition: order, trace and rank of g - 1
    let g = build_group(&GroupDescriptor::sp(2, fs(3)), DEFAULT_BUDGET).unwrap();
    let f = g.field().clone();
    for c in g.classes() {
        let inv = |p: u32| {
            let m = g.element(p);
            let tr = (0..m.rows()).fold(0, |s, i| f.add(s, m.get(i, i)));
            let r1 = m.sub(&FqMatrix::identity(4), &f).rank(&f);
            let r2 = m.add(&FqMatrix::identity(4), &f).rank(&f);
            (g.element_order(p), tr, r1, r2)
        };
        let i0 = inv(c.rep);
        for &m in c.members.iter().step_by(7) {
            assert_eq!(inv(m), i0);
        }
    }
}

#[test]
fn odd_orthogonal_tables() {
    let o5p = build_group(&GroupDescriptor::orthogonal(5, Sign::Plus, fs(3)), DEFAULT_BUDGET).unwrap();
    let o5m = build_group(&GroupDescriptor::orthogonal(5, Sign::Minus, fs(3)), DEFAULT_BUDGET).unwrap();
    assert_eq!(o5p.order(), 103680);
    // the two forms differ by a scalar, so the matrix groups coincide
    let a: HashSet<FqMatrix> = o5p.elements().collect();
    assert!(o5m.elements().all(|m| a.contains(&m)));
    let so5 = build_group(&GroupDescriptor::special_orthogonal(5, Sign::Plus, fs(3)), DEFAULT_BUDGET).unwrap();
    assert_eq!(so5.order(), 51840);
    // O = SO × {±I}
    let f = o5p.field().clone();
    let minus = FqMatrix::scalar(5, f.neg(1));
    assert!(so5.position(&minus).is_none());
    let prod: HashSet<FqMatrix> = so5.elements().flat_map(|s| [s.clone(), s.mul(&minus, &f)]).collect();
    assert_eq!(prod.len() as u64, o5p.order());
    assert!(o5p.elements().all(|m| prod.contains(&m)));
}

#[test]
fn parabolic_examples() {
    let sp4 = build_group(&GroupDescriptor::sp(2, fs(3)), DEFAULT_BUDGET).unwrap();
    let p = ParabolicData::new(&sp4, &LeviDescriptor::maximal(1)).unwrap();
    assert_eq!(p.u_order(), 27);
    assert_eq!(p.p_order(), 1296);
    assert_eq!(p.index(), 40);
    let sp2 = build_group(&GroupDescriptor::sp(1, fs(3)), DEFAULT_BUDGET).unwrap();
    let b = ParabolicData::new(&sp2, &LeviDescriptor::borel(1)).unwrap();
    assert_eq!((b.u_order(), b.p_order()), (3, 6));
    assert_eq!(b.index(), 4);
    let o3 = build_group(&GroupDescriptor::orthogonal(3, Sign::Plus, fs(3)), DEFAULT_BUDGET).unwrap();
    let po = ParabolicData::new(&o3, &LeviDescriptor::maximal(1)).unwrap();
    assert_eq!(po.index(), 4);
    assert_eq!(po.l_order(), 4);
    assert!(ParabolicData::new(&o3, &LeviDescriptor::maximal(2)).is_err());
}

#[test]
fn spinor_norm_examples_and_properties() {
    for p in [3u8, 5] {
        let f = Field::prime(p).unwrap();
        for dim in [3u32, 5] {
            if p == 5 && dim == 5 {
                continue;
            }
            let so = build_group(&GroupDescriptor::special_orthogonal(dim, Sign::Plus, fs(p)), DEFAULT_BUDGET).unwrap();
            let v = so.space().unwrap().clone();
            let chi: Vec<i8> = (0..so.order() as u32).map(|i| spinor_norm(&v, &so.element(i), &f).unwrap()).collect();
            // homomorphism on generator products and class constancy
            for i in (0..so.order() as u32).step_by(11) {
                for &s in so.generators() {
                    assert_eq!(chi[so.mul(i, s) as usize], chi[i as usize] * chi[s as usize]);
                }
            }
            for c in so.classes() {
                assert!(c.members.iter().all(|&m| chi[m as usize] == chi[c.rep as usize]));
            }
            // surjective, trivial on unipotents (order a power of p)
            assert!(chi.contains(&-1));
            for i in 0..so.order() as u32 {
                let mut o = so.element_order(i);
                while o.is_multiple_of(p as u32) {
                    o /= p as u32;
                }
                if o == 1 {
                    assert_eq!(chi[i as usize], 1);
                }
            }
            if dim == 3 && p == 3 {
                // kernel is the index-2 subgroup (A_4 in S_4)
                assert_eq!(chi.iter().filter(|&&x| x == 1).count(), 12);
            }
        }
    }
}

#[test]
fn spinor_norm_matches_reflection_words() {
    // oracle: walk words in reflections, multiplying their norms (v, v)
    let f = Field::prime(3).unwrap();
    let v = FormedSpace::odd_orthogonal(1, Sign::Minus, &f);
    let vecs: Vec<Vec<u8>> = theta_core::algebra::matrix::all_vectors(3, &f)
        .into_iter()
        .filter(|x| v.pair(x, x, &f) != 0)
        .collect();
    let mut seen = std::collections::HashMap::new();
    let mut frontier = vec![(FqMatrix::identity(3), 1i8, 0usize)];
    while let Some((g, s, len)) = frontier.pop() {
        if len % 2 == 0 {
            if let Some(&old) = seen.get(&g) {
                assert_eq!(old, s);
                continue;
            }
            seen.insert(g.clone(), s);
        }
        if len >= 4 {
            continue;
        }
        for x in &vecs {
            let r = v.reflection(x, &f).unwrap();
            let ns = s * theta_core::algebra::legendre(v.pair(x, x, &f), &f);
            frontier.push((g.mul(&r, &f), ns, len + 1));
        }
    }
    for (g, s) in seen {
        assert_eq!(spinor_class(&v, &g, &f), s);
    }
}

#[test]
fn persistence_round_trip() {
    let g = build_group(&GroupDescriptor::orthogonal(3, Sign::Minus, fs(5)), DEFAULT_BUDGET).unwrap();
    let bytes = persist::to_bytes(&g, "test");
    let h = persist::from_bytes(&bytes, "test").unwrap();
    assert_eq!(g, h);
    assert_eq!(g.classes(), h.classes());
    assert!(persist::from_bytes(&bytes, "other").is_err());
    assert!(persist::from_bytes(&bytes[..bytes.len() - 1], "test").is_err());
}

#[test]
fn embedding_examples() {
    let f = Field::prime(3).unwrap();
    let v = FormedSpace::symplectic(1, &f);
    let vp = FormedSpace::odd_orthogonal(1, Sign::Minus, &f);
    let e = DualPairEmbedding::new(&v, &vp, &f).unwrap();
    assert!(e.embed(&FqMatrix::identity(2), &FqMatrix::identity(3)).is_identity());
    let m = e.embed(&FqMatrix::scalar(2, 2), &FqMatrix::scalar(3, 2));
    assert!(m.is_identity());
    assert!(DualPairEmbedding::new(&vp, &v, &f).is_err());
}

fn sp2_and_o3() -> (theta_core::groups::GroupTable, theta_core::groups::GroupTable) {
    (
        build_group(&GroupDescriptor::sp(1, fs(3)), DEFAULT_BUDGET).unwrap(),
        build_group(&GroupDescriptor::orthogonal(3, Sign::Minus, fs(3)), DEFAULT_BUDGET).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn embedding_is_symplectic_homomorphism(a in 0u32..24, b in 0u32..24, c in 0u32..48, d in 0u32..48) {
        let (sp, o) = sp2_and_o3();
        let f = sp.field().clone();
        let e = DualPairEmbedding::new(sp.space().unwrap(), o.space().unwrap(), &f).unwrap();
        let w = e.ambient();
        let x = e.embed(&sp.element(a), &o.element(c));
        let y = e.embed(&sp.element(b), &o.element(d));
        prop_assert!(w.preserves(&x, &f));
        let xy = e.embed(&sp.element(sp.mul(a, b)), &o.element(o.mul(c, d)));
        prop_assert_eq!(x.mul(&y, &f), xy);
    }

    #[test]
    fn conjugate_elements_share_a_class(x in 0u32..24, y in 0u32..24) {
        let (sp, _) = sp2_and_o3();
        let conj = sp.mul(sp.mul(y, x), sp.inv(y));
        prop_assert_eq!(sp.class_of(conj), sp.class_of(x));
    }
}
