//! Compatible parameter sets (ψ, φ, τ) on (128,742): the default one read
//! off δ, a few random ones, and the round trip μ -> parameters -> μ.

use csorgo_loops::bundled;
use csorgo_loops::construct::{
    build_delta, build_mu, check_a, check_param_set, default_param_set, extract_param_set, random_param_set,
    FreeDeltaParams, ParamFrame,
};
use csorgo_loops::pipeline::prepare;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = bundled::G128_742;
    let p = prepare(b.pc, b.frame).map_err(|(s, e)| format!("{s}: {e}"))?;
    let (g, z) = (&p.group, &p.z);
    let (delta, _) = build_delta(g, z, &p.basis, &p.f, &FreeDeltaParams::trivial())?;
    let frame = ParamFrame::new(g, z, &delta)?;
    println!(
        "R order {}, N order {}, |G/R| = {}, |N/R| = {}, transversal {:?}",
        frame.r.order(),
        frame.n.order(),
        frame.gbar().order(),
        frame.nbar().len(),
        frame.transversal()
    );

    let base = default_param_set(&frame);
    println!("default set compatible: {}", check_param_set(&frame, &base).all_passed());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..4 {
        let ps = random_param_set(&frame, &mut rng);
        let compat = check_param_set(&frame, &ps);
        let mu = build_mu(g, z, &frame, &ps)?;
        let a = check_a(g, z, &frame.r, &frame.n, &mu, &delta);
        let back = extract_param_set(g, z, &frame, &mu, &delta)?;
        let nonzero_tau = ps.tau.iter().flatten().filter(|&&v| v != 0).count();
        println!(
            "random set {round}: compatible {}, A checks {}/{} pass, {nonzero_tau} nonzero τ, round trip {}",
            compat.all_passed(),
            a.checks.iter().filter(|c| c.passed).count(),
            a.checks.len(),
            if back == ps { "exact" } else { "differs" }
        );
    }
    Ok(())
}
