use csorgo_loops::bundled;
use csorgo_loops::loops::{
    associator_subloop, derived_subloop, inn, is_normal_subloop, is_solvable, loop_center, loop_from_mu, mlt,
    multiplication_groups, nilpotency_class_loop, normal_closure_subloop, quotient_loop, upper_central_orders,
    LoopTable,
};
use csorgo_loops::pipeline::{self, prepare};
use csorgo_loops::setup::Cocycle2;
use csorgo_loops::{build_group, parse_pc, Nilpotency};
use num_bigint::BigUint;

fn golden(b: bundled::Bundled) -> LoopTable {
    let (run, art) = pipeline::build(b.pc, b.frame, None);
    assert!(run.passed(), "{}", run.to_text(false));
    art.unwrap().loop_table
}

#[test]
fn trivial_mu_gives_the_group_and_its_inner_automorphisms() {
    let p = prepare(bundled::G128_731.pc, bundled::G128_731.frame).unwrap();
    let mu = Cocycle2::trivial(&p.group, &p.z, p.frame.r.clone());
    let q = loop_from_mu(&p.group, &p.z, &mu).unwrap();
    assert!(q.is_associative());
    // For a group, Inn is the inner automorphism group G/Z(G).
    let want = p.group.order() / p.group.center().order();
    assert_eq!(want, 16);
    assert_eq!(inn(&q).unwrap().order(), want);
    assert_eq!(nilpotency_class_loop(&q).unwrap(), Nilpotency::Class(3));
}

#[test]
fn upper_central_series_of_the_golden_loop() {
    let q = golden(bundled::G128_731);
    let orders = upper_central_orders(&q).unwrap();
    assert_eq!(orders.len(), 4);
    assert_eq!(orders[0], 1);
    assert_eq!(*orders.last().unwrap(), 128);
    assert!(orders.windows(2).all(|w| w[0] < w[1] && w[1] % w[0] == 0));
    assert_eq!(loop_center(&q).unwrap().order(), orders[1]);
}

#[test]
fn abelian_group_as_a_loop() {
    let g = build_group(&parse_pc("gens 3\ng1^2 = g2\n").unwrap()).unwrap();
    let q = LoopTable::from_group(&g);
    let m = multiplication_groups(&q).unwrap();
    assert_eq!(m.inn_order(), 1);
    assert_eq!(m.mlt_order(), BigUint::from(8u32));
    assert_eq!(loop_center(&q).unwrap().order(), 8);
    assert_eq!(nilpotency_class_loop(&q).unwrap(), Nilpotency::Class(1));
}

#[test]
fn normal_closure_of_nothing_is_trivial() {
    let q = golden(bundled::G128_742);
    let n = normal_closure_subloop(&q, &[]).unwrap();
    assert!(n.is_trivial());
    assert_eq!(n.elements(), &[0]);
}

#[test]
fn translations_lie_in_the_multiplication_group() {
    let q = golden(bundled::G128_731);
    let chain = mlt(&q).unwrap();
    assert_eq!(chain.order(), BigUint::from(8192u32));
    for x in [1, 17, 64, 127] {
        let p = q.left_translation(x).then(&q.right_translation(x).inverse());
        assert!(chain.contains(&p).unwrap());
    }
}

#[test]
fn divisions_undo_multiplication() {
    let q = golden(bundled::G128_742);
    for x in (0..128).step_by(5) {
        for y in 0..128 {
            assert_eq!(q.mul(x, q.ldiv(x, y)), y);
            assert_eq!(q.mul(q.rdiv(y, x), x), y);
        }
    }
}

#[test]
fn quotient_by_associator_subloop_is_a_group() {
    let q = golden(bundled::G128_731);
    let a = associator_subloop(&q).unwrap();
    assert_eq!(a.order(), 2);
    assert!(is_normal_subloop(&q, a.elements()).unwrap());
    let (k, _) = quotient_loop(&q, &a).unwrap();
    assert_eq!(k.order(), 64);
    assert!(k.is_associative());
}

#[test]
fn golden_loops_are_solvable() {
    for b in bundled::ALL {
        let q = golden(b);
        assert!(derived_subloop(&q).unwrap().order() < 128);
        assert!(is_solvable(&q).unwrap());
    }
}

#[test]
fn sixteen_point_sweep_keeps_class_three() {
    let b = bundled::G128_731;
    let space = "vary tau 2 3\nvary tau 2 4\nvary tau 3 5\nvary delta 2 3\n";
    let summary = pipeline::sweep(b.pc, b.frame, space, 2, 16).unwrap();
    assert_eq!(summary.rows.len(), 16);
    for row in &summary.rows {
        assert!(row.report.passed(), "row {}: {}", row.rank, row.point);
        let inv = row.report.invariants.as_ref().unwrap();
        assert_eq!(inv.class, Nilpotency::Class(3), "row {}", row.rank);
        assert!(inv.inn_invariants.is_some(), "row {}: Inn not abelian", row.rank);
    }
    let (golden_run, _) = pipeline::build(b.pc, b.frame, None);
    assert_eq!(summary.rows[0].report.invariants, golden_run.invariants);
}
