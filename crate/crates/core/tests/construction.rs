use csorgo_loops::bundled::{self, Bundled};
use csorgo_loops::construct::{
    build_delta, build_g_form, build_mu, check_a, check_param_set, default_param_set, extract_param_set,
    find_standard_basis, random_param_set, FreeDeltaParams, ParamFrame,
};
use csorgo_loops::pipeline::{prepare, Prepared};
use csorgo_loops::setup::{
    check_b, check_fgh, check_inclusion_chain, classify_scenario, derive_f, derive_g, is_nontrivial, mul_part, rad1,
    rad2, radical, Cocycle2, Scenario,
};
use csorgo_loops::{Error, Nilpotency};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prep(b: Bundled) -> Prepared {
    prepare(b.pc, b.frame).unwrap()
}

fn delta_of(p: &Prepared) -> Cocycle2 {
    build_delta(&p.group, &p.z, &p.basis, &p.f, &FreeDeltaParams::trivial()).unwrap().0
}

fn word(p: &Prepared, w: &str) -> usize {
    p.presentation.word_index(w).unwrap()
}

fn sub(p: &Prepared, words: &[&str]) -> csorgo_loops::Subgroup {
    let gens: Vec<usize> = words.iter().map(|w| word(p, w)).collect();
    p.group.closure(&gens)
}

#[test]
fn frames_give_the_stated_bases() {
    let p = prep(bundled::G128_731);
    assert_eq!(p.basis.e, [word(&p, "g1"), word(&p, "g2"), word(&p, "g3")]);
    assert_eq!(p.basis.scenario, Scenario::II);
    let p = prep(bundled::G128_742);
    assert_eq!(p.basis.e, [word(&p, "g1"), word(&p, "g2"), word(&p, "g2*g3")]);
    assert_eq!(p.basis.scenario, Scenario::III);
}

#[test]
fn automatic_basis_search_succeeds_on_both_frames() {
    for b in bundled::ALL {
        let p = prep(b);
        let found = find_standard_basis(&p.group, &p.frame.z, &p.frame.r, &p.frame.m, p.basis.scenario).unwrap();
        assert_eq!(found.scenario, p.basis.scenario);
        let (delta, report) = build_delta(&p.group, &p.z, &found, &derive_basis_f(&p, &found), &FreeDeltaParams::trivial()).unwrap();
        assert!(report.all_passed(), "{report}");
        assert!(check_b(&p.group, &p.z, &delta).all_passed());
    }
}

fn derive_basis_f(p: &Prepared, basis: &csorgo_loops::construct::StandardBasis) -> csorgo_loops::setup::TriMap {
    csorgo_loops::construct::build_f(&p.group, &p.z, basis).unwrap()
}

#[test]
fn alternating_form_on_the_basis() {
    let p = prep(bundled::G128_731);
    let g = build_g_form(&p.group, &p.z, &p.basis).unwrap();
    let [e1, e2, e3] = p.basis.e;
    assert_eq!(g.get(e1, e2, e3), 1);
    assert_eq!(g.get(e1, e1, e3), 0);
    let e1e2 = p.group.mul(e1, e2);
    assert_eq!(g.get(e1e2, e2, e3), 1);
}

#[test]
fn forced_values_of_f() {
    let p = prep(bundled::G128_731);
    let (g, z, f) = (&p.group, &p.z, &p.f);
    let [e1, e2, e3] = p.basis.e;
    // Z = {1, -1} written additively: -1 is exponent 1.
    let ex = |x: usize| z.exponent_of(x).unwrap();
    let b213 = ex(g.comm(e2, g.comm(e1, e3)));
    let b123 = ex(g.comm(e1, g.comm(e2, e3)));
    assert_eq!(f.get(e1, e3, e2), z.add(1, b213));
    assert_eq!(f.get(e3, e1, e2), z.add(1, b213));
    assert_eq!(f.get(e2, e3, e1), z.add(1, b123));
    assert_eq!(f.get(e1, e2, e3), z.add(1, z.add(b123, b213)));
    assert_eq!(f.get(e2, e2, e1), 0);
    // [e1,[e1,e2]] = [g1,g4] = g7, so f(e1,e2,e1) is the generator of Z.
    assert_eq!(g.comm(e1, g.comm(e1, e2)), word(&p, "g7"));
    assert_eq!(f.get(e1, e2, e1), 1);
}

#[test]
fn constructed_delta_for_731() {
    let p = prep(bundled::G128_731);
    let (delta, report) = build_delta(&p.group, &p.z, &p.basis, &p.f, &FreeDeltaParams::trivial()).unwrap();
    assert!(report.all_passed(), "{report}");
    assert!(check_b(&p.group, &p.z, &delta).all_passed());
    assert_eq!(radical(&p.group, &delta), sub(&p, &["g7"]));
    let mul = mul_part(&p.group, &delta).unwrap();
    assert_eq!(mul, p.group.derived());
    assert_eq!(mul.order(), 16);
    // f re-derived from δ agrees with the f the construction started from.
    let f = derive_f(&p.group, &p.z, &delta).unwrap();
    assert!((0..128).all(|x| (0..128).all(|y| (0..128).step_by(7).all(|w| f.get(x, y, w) == p.f.get(x, y, w)))));
}

#[test]
fn constructed_delta_for_742() {
    let p = prep(bundled::G128_742);
    let g = &p.group;
    let delta = delta_of(&p);
    let rad = radical(g, &delta);
    assert_eq!(rad, sub(&p, &["g5", "g6", "g7"]));
    let k = g.quotient(p.z.subgroup()).unwrap();
    let image = k.image(&rad);
    assert_eq!(image.order(), 4);
    assert!(k.quotient().is_elementary_abelian(&image));
    let mul = mul_part(g, &delta).unwrap();
    assert_eq!(mul, g.derived());
    assert_eq!(mul.order() / rad.order(), 2);
}

#[test]
fn setup_reports_pass_on_constructed_deltas() {
    for b in bundled::ALL {
        let p = prep(b);
        let delta = delta_of(&p);
        let r = check_fgh(&p.group, &p.z, &delta);
        assert!(r.all_passed(), "{r}");
        let chain = check_inclusion_chain(&p.group, &p.z, &delta);
        assert!(chain.all_passed(), "{chain}");
    }
}

#[test]
fn classification_of_the_two_frames() {
    for (b, want) in [(bundled::G128_731, Scenario::II), (bundled::G128_742, Scenario::III)] {
        let p = prep(b);
        let delta = delta_of(&p);
        let c = classify_scenario(&p.group, &p.z, &delta).unwrap();
        assert_eq!(c.classification.to_string(), want.to_string(), "{}", c.report);
        let w = is_nontrivial(&p.group, &delta).expect("nontrivial");
        let f = derive_f(&p.group, &p.z, &delta).unwrap();
        let g = derive_g(&f);
        assert_ne!(g.get(w[0], w[1], w[2]), 0);
        let [e1, e2, e3] = p.basis.e;
        assert_ne!(g.get(e1, e2, e3), 0);
    }
}

#[test]
fn trivial_delta_on_a_class_three_group() {
    let p = prep(bundled::G128_731);
    let g = &p.group;
    let one = Cocycle2::trivial(g, &p.z, p.z.subgroup().clone());
    let r = check_b(g, &p.z, &one);
    for name in ["B1 delta(x,x) = 1", "B2 delta(x,y) = delta(y,x)^-1"] {
        assert!(r.passed(name), "{name}");
    }
    assert!(r.checks.iter().any(|c| c.name.starts_with("B3") && c.passed));
    assert!(r.checks.iter().any(|c| c.name.starts_with("B4") && !c.passed));
    assert_eq!(g.nilpotency_class(), Nilpotency::Class(3));
    assert!(is_nontrivial(g, &one).is_none());
    assert!(matches!(classify_scenario(g, &p.z, &one), Err(Error::TrivialSetup)));
    let f = derive_f(g, &p.z, &one).unwrap();
    assert!(f.is_trivial() && derive_g(&f).is_trivial());
    assert_eq!(rad1(g, &one), g.whole());
    assert_eq!(rad2(g, &one), (0..128).collect::<Vec<_>>());
    assert_eq!(radical(g, &one), g.whole());
    assert_eq!(mul_part(g, &one).unwrap(), g.whole());
}

#[test]
fn one_flipped_value_breaks_the_table_invariant() {
    let p = prep(bundled::G128_731);
    let delta = delta_of(&p);
    let mut values = delta.values().to_vec();
    values[3 * 128 + 5] ^= 1;
    let err = Cocycle2::new(&p.group, &p.z, delta.modulus().clone(), values).unwrap_err();
    assert!(matches!(err, Error::CocycleInvariant { .. }), "{err}");
}

#[test]
fn default_parameters_are_compatible() {
    for b in bundled::ALL {
        let p = prep(b);
        let delta = delta_of(&p);
        let frame = ParamFrame::new(&p.group, &p.z, &delta).unwrap();
        let params = default_param_set(&frame);
        let r = check_param_set(&frame, &params);
        assert!(r.all_passed(), "{r}");
        // ψ_k(t) = δ(k, t) on representatives.
        let q = frame.quotient();
        for (kp, &k) in frame.nbar().iter().enumerate() {
            for t in 0..frame.gbar().order() {
                assert_eq!(params.psi[kp][t], delta.get(q.section(k), q.section(t)));
            }
        }
        assert!(params.tau[0].iter().all(|&v| v == 0));
        let mu = build_mu(&p.group, &p.z, &frame, &params).unwrap();
        assert_eq!(extract_param_set(&p.group, &p.z, &frame, &mu, &delta).unwrap(), params);
        let a = check_a(&p.group, &p.z, &frame.r, &frame.n, &mu, &delta);
        assert!(a.all_passed(), "{a}");
    }
}

#[test]
fn flipped_psi_value_breaks_the_homomorphism_condition() {
    let p = prep(bundled::G128_731);
    let delta = delta_of(&p);
    let frame = ParamFrame::new(&p.group, &p.z, &delta).unwrap();
    let mut params = default_param_set(&frame);
    let last = params.psi.len() - 1;
    params.psi[last][1] ^= 1;
    let r = check_param_set(&frame, &params);
    assert!(!r.passed("psi_k is a homomorphism"), "{r}");
}

#[test]
fn mu_on_swapped_transversal_pairs() {
    let p = prep(bundled::G128_742);
    let delta = delta_of(&p);
    let frame = ParamFrame::new(&p.group, &p.z, &delta).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = random_param_set(&frame, &mut rng);
    assert!(check_param_set(&frame, &params).all_passed());
    let mu = build_mu(&p.group, &p.z, &frame, &params).unwrap();
    let t: Vec<usize> = frame.transversal().iter().map(|&a| frame.quotient().section(a)).collect();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            assert_eq!(mu.get(t[j], t[i]), p.z.add(delta.get(t[j], t[i]), params.tau[i][j]));
        }
    }
}

#[test]
fn trivial_mu_gives_trivial_parameters() {
    let p = prep(bundled::G128_731);
    let one = Cocycle2::trivial(&p.group, &p.z, p.z.subgroup().clone());
    let frame = ParamFrame::new(&p.group, &p.z, &one).unwrap();
    let params = extract_param_set(&p.group, &p.z, &frame, &one, &one).unwrap();
    assert!(params.psi.iter().chain(&params.phi).chain(&params.tau).flatten().all(|&v| v == 0));
}

#[test]
fn normal_subgroup_missing_the_derived_subgroup_is_rejected() {
    let p = prep(bundled::G128_731);
    let delta = delta_of(&p);
    let frame = ParamFrame::new(&p.group, &p.z, &delta).unwrap();
    let mu = build_mu(&p.group, &p.z, &frame, &default_param_set(&frame)).unwrap();
    let r = check_a(&p.group, &p.z, &frame.r, &frame.r, &mu, &delta);
    assert!(!r.passed("A0 G' <= N"), "{r}");
}

#[test]
fn trivial_setup_on_an_abelian_group() {
    let pres = csorgo_loops::parse_pc("gens 3\ng1^2 = g2\n").unwrap();
    let g = csorgo_loops::build_group(&pres).unwrap();
    let zs = g.closure(&[pres.word_index("g2").unwrap()]);
    let z = csorgo_loops::setup::CentralCyclic::new(&g, &zs).unwrap();
    let one = Cocycle2::trivial(&g, &z, zs.clone());
    let r = check_a(&g, &z, &zs, &zs, &one, &one);
    assert!(r.all_passed(), "{r}");
    assert!(check_b(&g, &z, &one).all_passed());
    assert!(check_fgh(&g, &z, &one).all_passed());
}

#[test]
fn conflicting_seed_is_reported_as_ill_defined() {
    // R = <g4,g6,g7> contains [e1,e2] while f([e1,e2]-row) is nonzero.
    let b = bundled::G128_742;
    let p = prepare(b.pc, "Z = g7; R = g4,g6,g7; M = derived; basis = g1,g2,g2*g3").unwrap();
    let err = build_delta(&p.group, &p.z, &p.basis, &p.f, &FreeDeltaParams::trivial()).unwrap_err();
    assert!(matches!(err, Error::WellDefinedness { .. }), "{err}");
    let (run, art) = csorgo_loops::pipeline::build(b.pc, "Z = g7; R = g4,g6,g7; M = derived; basis = g1,g2,g2*g3", None);
    assert!(art.is_none());
    assert_eq!(run.failed_stage(), Some(csorgo_loops::pipeline::Stage::WellDefinedness));
}

#[test]
fn explicit_bases_need_not_be_normalized() {
    // Swapping e1 and e3 breaks [e1,e2]R = [e1,e3]R, yet the seed stays consistent.
    let b = bundled::G128_742;
    let p = prepare(b.pc, "Z = g7; R = g5,g6,g7; M = derived; basis = g2*g3,g2,g1").unwrap();
    let (g, r) = (&p.group, &p.frame.r);
    let [e1, e2, e3] = p.basis.e;
    assert!(r.contains(g.comm(e1, e2)) != r.contains(g.comm(e1, e3)));
    let (delta, report) = build_delta(g, &p.z, &p.basis, &p.f, &FreeDeltaParams::trivial()).unwrap();
    assert!(report.all_passed(), "{report}");
    assert_eq!(radical(g, &delta), *r);
}
