//! Builds δ on (128,731), runs the setup checks, then shows how a single
//! flipped value is caught.

use csorgo_loops::bundled;
use csorgo_loops::construct::{build_delta, FreeDeltaParams};
use csorgo_loops::pipeline::prepare;
use csorgo_loops::setup::{
    check_b, check_fgh, check_inclusion_chain, classify_scenario, is_nontrivial, mul_part, radical, Cocycle2,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = bundled::G128_731;
    let p = prepare(b.pc, b.frame).map_err(|(s, e)| format!("{s}: {e}"))?;
    let (g, z) = (&p.group, &p.z);
    println!("frame: {}", p.describe_frame());

    let (delta, seed) = build_delta(g, z, &p.basis, &p.f, &FreeDeltaParams::trivial())?;
    print!("{seed}");
    print!("{}", check_b(g, z, &delta));
    print!("{}", check_fgh(g, z, &delta));
    print!("{}", check_inclusion_chain(g, z, &delta));

    println!("Rad(δ) order {}, Mul(δ) order {}", radical(g, &delta).order(), mul_part(g, &delta)?.order());
    println!("g nonzero at {:?}", is_nontrivial(g, &delta));
    let c = classify_scenario(g, z, &delta)?;
    println!("scenario: {}", c.classification);

    // Flip δ on the whole Z-coset block of (t, u) so it stays well defined
    // modulo Z, and watch the checks fail.
    let (t, u) = (p.basis.e[0], p.basis.e[1]);
    let zs = z.subgroup().elements().to_vec();
    let n = g.order();
    let mut values = delta.values().to_vec();
    for &a in &zs {
        for &c in &zs {
            let (x, y) = (g.mul(t, a), g.mul(u, c));
            values[x * n + y] = z.add(values[x * n + y], 1);
        }
    }
    let bad = Cocycle2::new(g, z, delta.modulus().clone(), values)?;
    let r = check_b(g, z, &bad);
    match r.first_failure() {
        Some(f) => println!("flipped δ({t},{u}): first failure {} at {:?}", f.name, f.witness),
        None => println!("flipped δ({t},{u}): unexpectedly passes"),
    }
    Ok(())
}
