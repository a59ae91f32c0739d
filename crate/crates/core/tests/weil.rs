use std::sync::Arc;

use proptest::prelude::*;
use theta_core::algebra::{AddChar, Cyclotomic, Field, FieldSpec, FqMatrix};
use theta_core::chartab::{character_table, CharacterTable, ClassFunction};
use theta_core::groups::{build_group, DualPairEmbedding, FormedSpace, GroupDescriptor, GroupTable, Sign, DEFAULT_BUDGET};
use theta_core::weil::*;

fn fs(p: u8) -> FieldSpec {
    FieldSpec { p, k: 1 }
}
fn group(d: GroupDescriptor) -> Arc<GroupTable> {
    Arc::new(build_group(&d, DEFAULT_BUDGET).unwrap())
}
fn table(g: &Arc<GroupTable>) -> Arc<CharacterTable> {
    Arc::new(character_table(g.clone()).unwrap())
}
fn psi() -> AddChar {
    AddChar::standard()
}

#[test]
fn generator_examples() {
    let f = Field::prime(3).unwrap();
    let id = weil_operator(&FqMatrix::identity(2), &f, psi()).unwrap();
    assert!(id.is_identity(&f));
    assert_eq!(id.support_dim(), 1);
    assert_eq!(*id.gamma(), Cyclotomic::one());
    assert!(id.form().is_zero());
    // a genuine model forces tr ω(-I) = χ(-1)
    let mi = weil_operator(&FqMatrix::scalar(2, 2), &f, psi()).unwrap();
    assert_eq!(mi.trace(&f), Cyclotomic::from_int(-1));
    let f5 = Field::prime(5).unwrap();
    assert_eq!(weil_operator(&FqMatrix::scalar(2, 4), &f5, psi()).unwrap().trace(&f5), Cyclotomic::one());
    // Σ_x ψ(2x²) over F_3
    let u = FqMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
    let expect = &Cyclotomic::one() + &Cyclotomic::root_of_unity(3, 2).scale(2, 1);
    assert_eq!(weil_operator(&u, &f, psi()).unwrap().trace(&f), expect);
    assert!(weil_operator(&FqMatrix::from_rows(&[vec![1, 1], vec![1, 1]]), &f, psi()).is_err());
}

#[test]
fn multiplicative_on_sp2() {
    for p in [3u8, 5] {
        let f = Field::prime(p).unwrap();
        let g = group(GroupDescriptor::sp(1, fs(p)));
        let ops: Vec<QuadGaussOp> = g.elements().map(|m| weil_operator(&m, &f, psi()).unwrap()).collect();
        for a in 0..g.order() as u32 {
            for b in 0..g.order() as u32 {
                let c = ops[a as usize].compose(&ops[b as usize], &f).unwrap();
                assert_eq!(c, ops[g.mul(a, b) as usize]);
            }
            let inv = ops[a as usize].compose(&ops[g.inv(a) as usize], &f).unwrap();
            assert!(inv.is_identity(&f));
        }
    }
}

#[test]
fn kernel_matches_dense_generators() {
    // the dense model is assembled from generator formulas, independently of the kernel calculus
    let f = Field::prime(3).unwrap();
    let n = 2;
    let g = group(GroupDescriptor::sp(2, fs(3)));
    for pos in (0..g.order() as u32).step_by(997) {
        let m = g.element(pos);
        let bf = bruhat(&m, &f).unwrap();
        assert_eq!(bf.product(&f), m);
        let dense = DenseOp::levi(&bf.a1, &f)
            .mul(&DenseOp::lower_unipotent(&bf.c1, &f, psi()))
            .mul(&DenseOp::partial_fourier(n, bf.r, &f, psi()))
            .mul(&DenseOp::levi(&bf.a3, &f))
            .mul(&DenseOp::lower_unipotent(&bf.c3, &f, psi()));
        let op = weil_operator(&m, &f, psi()).unwrap();
        assert_eq!(op.to_dense(&f), dense);
        assert_eq!(op.trace(&f), dense.trace());
    }
}

#[test]
fn dense_products_match_composition() {
    let f = Field::prime(3).unwrap();
    let g = group(GroupDescriptor::sp(2, fs(3)));
    for (a, b) in [(5u32, 17u32), (1234, 40000), (51839, 777)] {
        let oa = weil_operator(&g.element(a), &f, psi()).unwrap();
        let ob = weil_operator(&g.element(b), &f, psi()).unwrap();
        assert_eq!(oa.to_dense(&f).mul(&ob.to_dense(&f)), oa.compose(&ob, &f).unwrap().to_dense(&f));
    }
}

#[test]
fn trace_norms_and_support_dims() {
    for (p, n) in [(3u8, 1u32), (5, 1), (3, 2)] {
        let f = Field::prime(p).unwrap();
        let g = group(GroupDescriptor::sp(n, fs(p)));
        let nn = n as usize;
        let step = if g.order() > 1000 { 101 } else { 1 };
        for pos in (0..g.order() as u32).step_by(step) {
            let m = g.element(pos);
            let op = weil_operator(&m, &f, psi()).unwrap();
            let tr = op.trace(&f);
            let ker = 2 * nn - m.sub(&FqMatrix::identity(2 * nn), &f).rank(&f);
            assert_eq!(tr.norm_sq(), Cyclotomic::from_int((p as i128).pow(ker as u32)));
            let b = m.block(0, nn, nn, 2 * nn).rank(&f);
            assert_eq!(op.support_dim(), nn + b);
        }
    }
}

#[test]
fn psi_twist_is_the_other_weil_representation() {
    // ω_{ψ_t} differs from ω_ψ, with the same degree and the same |trace|
    let f = Field::prime(3).unwrap();
    let u = FqMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
    let a = weil_operator(&u, &f, psi()).unwrap().trace(&f);
    let b = weil_operator(&u, &f, AddChar::twisted(&f)).unwrap().trace(&f);
    assert_ne!(a, b);
    assert_eq!(a.conj(), b);
}

#[test]
fn dual_pair_examples() {
    let f = Field::prime(3).unwrap();
    let v = FormedSpace::symplectic(1, &f);
    let vp = FormedSpace::odd_orthogonal(1, Sign::Plus, &f);
    let emb = DualPairEmbedding::new(&v, &vp, &f).unwrap();
    let one = weil_character(&emb, &FqMatrix::identity(2), &FqMatrix::identity(3), psi()).unwrap();
    assert_eq!(one, Cyclotomic::from_int(27));
    let mm = weil_character(&emb, &FqMatrix::scalar(2, 2), &FqMatrix::scalar(3, 2), psi()).unwrap();
    assert_eq!(mm, Cyclotomic::from_int(27));
}

#[test]
fn sp2_o1_dense_oracle() {
    let f = Field::prime(3).unwrap();
    for eps in Sign::both() {
        let sp = group(GroupDescriptor::sp(1, fs(3)));
        let o1 = group(GroupDescriptor::orthogonal(1, eps, fs(3)));
        let emb = DualPairEmbedding::new(sp.space().unwrap(), o1.space().unwrap(), &f).unwrap();
        for a in 0..sp.order() as u32 {
            for b in 0..2 {
                let w = emb.embed(&sp.element(a), &o1.element(b));
                let bf = bruhat(&w, &f).unwrap();
                let dense = DenseOp::levi(&bf.a1, &f)
                    .mul(&DenseOp::lower_unipotent(&bf.c1, &f, psi()))
                    .mul(&DenseOp::partial_fourier(1, bf.r, &f, psi()))
                    .mul(&DenseOp::levi(&bf.a3, &f))
                    .mul(&DenseOp::lower_unipotent(&bf.c3, &f, psi()));
                let tr = weil_character(&emb, &sp.element(a), &o1.element(b), psi()).unwrap();
                assert_eq!(tr, dense.trace());
            }
        }
    }
}

fn decompose(sp: &Arc<GroupTable>, o: &Arc<GroupTable>) -> MultiplicityMatrix {
    let f = sp.field().clone();
    let emb = DualPairEmbedding::new(sp.space().unwrap(), o.space().unwrap(), &f).unwrap();
    let theta = pair_character(&emb, sp, o, psi()).unwrap();
    decompose_dual_pair(&theta, &table(sp), &table(o)).unwrap()
}

#[test]
fn sp2_o1_decomposition() {
    let sp = group(GroupDescriptor::sp(1, fs(3)));
    for eps in Sign::both() {
        let o1 = group(GroupDescriptor::orthogonal(1, eps, fs(3)));
        let mm = decompose(&sp, &o1);
        let nz = mm.nonzero();
        assert_eq!(nz.len(), 2);
        let ld = mm.left.degrees();
        let mut pieces: Vec<(u64, usize, u64)> = nz.iter().map(|&(i, j, m)| (ld[i], j, m)).collect();
        pieces.sort_unstable();
        // q = 3: χ(-1) = -1, so the 2-dim even part pairs with sgn and the odd line with 1
        assert_eq!(pieces, vec![(1, 0, 1), (2, 1, 1)]);
        let odd = nz.iter().find(|&&(i, _, _)| ld[i] == 1).unwrap().0;
        assert_ne!(odd, 0, "the odd part is a nontrivial linear character");
        assert_eq!(mm.to_json().verify_dimension().ok(), Some(()));
    }
}

#[test]
fn sp0_o1_decomposition() {
    let sp0 = group(GroupDescriptor::sp(0, fs(3)));
    let o1 = group(GroupDescriptor::orthogonal(1, Sign::Plus, fs(3)));
    let mm = decompose(&sp0, &o1);
    assert_eq!(mm.nonzero(), vec![(0, 0, 1)]);
}

#[test]
fn sp2_o3_and_howe_exhaustion() {
    let sp = group(GroupDescriptor::sp(1, fs(3)));
    let mut seen = [false; 7];
    for eps in Sign::both() {
        let o3 = group(GroupDescriptor::orthogonal(3, eps, fs(3)));
        let mm = decompose(&sp, &o3);
        assert_eq!(mm.total_dim, 27);
        for (i, _, _) in mm.nonzero() {
            seen[i] = true;
        }
    }
    assert!(seen.iter().all(|&s| s));
}

#[test]
fn first_occurrence_examples() {
    let f = Field::prime(3).unwrap();
    let sp0 = group(GroupDescriptor::sp(0, fs(3)));
    let one = ClassFunction::trivial(sp0.clone());
    for eps in Sign::both() {
        let n = first_occurrence(&one, sp0.space().unwrap(), Tower::OddOrth(eps), 3, psi()).unwrap();
        assert_eq!(n, 0);
    }
    // conservation on O_1: n(1) + n(sgn) = 1 in the symplectic tower
    for eps in Sign::both() {
        let o1 = group(GroupDescriptor::orthogonal(1, eps, fs(3)));
        let t = table(&o1);
        let occ: Vec<usize> = t
            .characters()
            .iter()
            .map(|c| first_occurrence(c, o1.space().unwrap(), Tower::Sp, 3, psi()).unwrap())
            .collect();
        assert_eq!(occ.iter().sum::<usize>(), 1);
    }
    // conservation for the cuspidal θ-representations of Sp_2(3): n'⁺ + n'⁻ = 2
    let sp = group(GroupDescriptor::sp(1, fs(3)));
    let t = table(&sp);
    let ps = theta_core::chartab::maximal_parabolics(&sp).unwrap();
    for c in t.characters() {
        if theta_core::chartab::is_cuspidal(&sp, c, &ps).unwrap() {
            let a = first_occurrence(c, sp.space().unwrap(), Tower::OddOrth(Sign::Plus), 4, psi()).unwrap();
            let b = first_occurrence(c, sp.space().unwrap(), Tower::OddOrth(Sign::Minus), 4, psi()).unwrap();
            assert_eq!(a + b, 2, "{c:?}");
        }
    }
    let _ = f;
}

#[test]
fn bound_exhaustion_is_reported() {
    let sp = group(GroupDescriptor::sp(1, fs(3)));
    let t = table(&sp);
    let st = t.of_degree(3)[0];
    let e = first_occurrence(t.get(st), sp.space().unwrap(), Tower::OddOrth(Sign::Plus), 0, psi());
    assert!(matches!(e, Err(WeilError::BoundExhausted { bound: 0 })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn multiplicative_on_sp4(a in 0u32..51840, b in 0u32..51840) {
        let f = Field::prime(3).unwrap();
        let g = sp4();
        let oa = weil_operator(&g.element(a), &f, psi()).unwrap();
        let ob = weil_operator(&g.element(b), &f, psi()).unwrap();
        let oab = weil_operator(&g.element(g.mul(a, b)), &f, psi()).unwrap();
        prop_assert_eq!(oa.compose(&ob, &f).unwrap(), oab);
    }
}

fn sp4() -> Arc<GroupTable> {
    use std::sync::OnceLock;
    static G: OnceLock<Arc<GroupTable>> = OnceLock::new();
    G.get_or_init(|| group(GroupDescriptor::sp(2, fs(3)))).clone()
}
