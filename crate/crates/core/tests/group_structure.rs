use csorgo_loops::bundled;
use csorgo_loops::{build_group, parse_pc, ExponentVector, GroupTable, Nilpotency, PcPresentation};

fn pres(text: &str) -> PcPresentation {
    parse_pc(text).unwrap()
}

fn gv(p: &PcPresentation, word: &str) -> ExponentVector {
    p.evaluate_word(word).unwrap()
}

fn group_of(text: &str) -> (PcPresentation, GroupTable) {
    let p = pres(text);
    let g = build_group(&p).unwrap();
    (p, g)
}

fn idx(p: &PcPresentation, words: &[&str]) -> Vec<usize> {
    words.iter().map(|w| p.word_index(w).unwrap()).collect()
}

#[test]
fn presentation_of_731_reads_its_relations() {
    let p = pres(bundled::G128_731.pc);
    assert_eq!(p.ngens(), 7);
    assert!(p.rel_orders().iter().all(|&r| r == 2));
    assert_eq!(*p.power_rhs(3), gv(&p, "g7"));
    assert_eq!(p.comm_rhs(1, 0), gv(&p, "g4"));
}

#[test]
fn presentation_of_742_reads_its_relations() {
    let p = pres(bundled::G128_742.pc);
    assert_eq!(p.ngens(), 7);
    assert_eq!(p.comm_rhs(2, 1), gv(&p, "g6"));
    assert_eq!(*p.power_rhs(3), gv(&p, "g7"));
    assert_eq!(p.comm_rhs(3, 1), gv(&p, "g7"));
}

#[test]
fn single_generator_of_order_two() {
    let (p, g) = group_of("gens 1\ng1^2 = 1\n");
    assert_eq!(p.order(), 2);
    assert_eq!(g.order(), 2);
    assert_eq!(g.mul(1, 1), 0);
}

#[test]
fn collection_applies_commutator_relations() {
    let p = pres(bundled::G128_731.pc);
    let v = p.collect(&gv(&p, "g2"), &gv(&p, "g1"));
    assert_eq!(v.exps(), &[1, 1, 0, 1, 0, 0, 0]);
    assert_eq!(p.collect(&gv(&p, "g4"), &gv(&p, "g4")), gv(&p, "g7"));
    let id = ExponentVector::identity(7);
    let w = gv(&p, "g2*g3*g6");
    assert_eq!(p.collect(&id, &w), w);
}

#[test]
fn group_731_center_and_class() {
    let (p, g) = group_of(bundled::G128_731.pc);
    assert_eq!(g.order(), 128);
    assert_eq!(g.nilpotency_class(), Nilpotency::Class(3));
    let z = g.center();
    assert_eq!(z.order(), 8);
    assert_eq!(g.closure(&idx(&p, &["g5", "g6", "g7"])), z);
    assert_eq!(g.derived(), g.closure(&idx(&p, &["g4", "g5", "g6", "g7"])));
}

#[test]
fn group_742_derived_subgroup() {
    let (p, g) = group_of(bundled::G128_742.pc);
    let d = g.derived();
    assert_eq!(d.order(), 16);
    assert_eq!(g.closure(&idx(&p, &["g4", "g5", "g6", "g7"])), d);
    assert_eq!(g.nilpotency_class(), Nilpotency::Class(3));
}

#[test]
fn commutator_of_group_and_derived_in_731_is_g7() {
    let (p, g) = group_of(bundled::G128_731.pc);
    let c = g.commutator_sub(&g.whole(), &g.derived());
    assert_eq!(c, g.closure(&idx(&p, &["g7"])));
    // Brute force over all pairs (x, c).
    let d = g.derived();
    let mut seen: Vec<usize> = (0..128).flat_map(|x| d.elements().iter().map(move |&c| (x, c))).map(|(x, c)| g.comm(x, c)).collect();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen, c.elements());
}

#[test]
fn quotient_of_731_by_g7() {
    let (p, g) = group_of(bundled::G128_731.pc);
    let q = g.quotient(&g.closure(&idx(&p, &["g7"]))).unwrap();
    let k = q.quotient();
    assert_eq!(k.order(), 64);
    assert_eq!(k.derived().order(), 8);
    assert_eq!(k.derived(), k.center());
}

#[test]
fn quotient_of_742_by_its_radical() {
    let (p, g) = group_of(bundled::G128_742.pc);
    let r = g.closure(&idx(&p, &["g5", "g6", "g7"]));
    let q = g.quotient(&r).unwrap();
    assert_eq!(q.quotient().order(), 16);
    for x in 0..128 {
        assert_eq!(q.coset_of(q.section(q.coset_of(x))), q.coset_of(x));
    }
}

#[test]
fn transversal_of_derived_subgroup() {
    let (_, g) = group_of(bundled::G128_731.pc);
    let t = g.transversal(&g.derived()).unwrap();
    assert_eq!(t.len(), 8);
    assert_eq!(t[0], 0);
    assert_eq!(g.transversal(&g.whole()).unwrap(), vec![0]);
    assert_eq!(g.transversal(&g.trivial()).unwrap(), (0..128).collect::<Vec<_>>());
}

#[test]
fn normal_core_in_the_dihedral_group() {
    let (_, g) = group_of("gens 3\ng2^2 = g3\n[g2,g1] = g3\n");
    assert_eq!(g.order(), 8);
    let center = g.center();
    assert_eq!(g.normal_core(&center), center);
    assert_eq!(g.normal_core(&g.whole()), g.whole());
    // A reflection generates a non-normal subgroup of order 2.
    let refl = (1..8).find(|&x| g.element_order(x) == 2 && !g.is_normal(&g.closure(&[x]))).unwrap();
    let s = g.closure(&[refl]);
    // Brute force: intersect all conjugates.
    let core: Vec<usize> = s
        .elements()
        .iter()
        .copied()
        .filter(|&a| (0..8).all(|x| s.contains(g.conj(a, x))))
        .collect();
    assert_eq!(core, vec![0]);
    assert!(g.normal_core(&s).is_trivial());
}

#[test]
fn abelian_invariants_of_small_groups() {
    let (_, klein) = group_of("gens 2\n");
    assert_eq!(klein.abelian_invariants(&klein.whole()).unwrap(), vec![2, 2]);
    let (_, c8) = group_of("gens 3\ng1^2 = g2\ng2^2 = g3\n");
    assert_eq!(c8.abelian_invariants(&c8.whole()).unwrap(), vec![8]);
    let (_, mixed) = group_of("gens 3\ng1^2 = g2\n");
    assert_eq!(mixed.abelian_invariants(&mixed.whole()).unwrap(), vec![4, 2]);
}

#[test]
fn abelian_groups_have_class_one() {
    let (_, g) = group_of("gens 3\ng1^2 = g2\n");
    assert_eq!(g.nilpotency_class(), Nilpotency::Class(1));
    assert!(g.derived().is_trivial());
    assert_eq!(g.center(), g.whole());
}

#[test]
fn odd_order_presentation() {
    // Extraspecial group of order 27 and exponent 3.
    let (_, g) = group_of("gens 3\norders 3 3 3\n[g2,g1] = g3\n");
    assert_eq!(g.order(), 27);
    assert_eq!(g.center().order(), 3);
    assert_eq!(g.nilpotency_class(), Nilpotency::Class(2));
    assert!((0..27).all(|x| g.pow(x, 3) == 0));
}
