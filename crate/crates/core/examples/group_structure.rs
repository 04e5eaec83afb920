//! Centers, derived subgroups, lower and upper central series of the two
//! bundled groups.

use csorgo_loops::bundled;
use csorgo_loops::{build_group, parse_pc, GroupTable, PcPresentation, Subgroup};

/// Greedy generating set, taking elements in index order.
fn gens_of(p: &PcPresentation, g: &GroupTable, s: &Subgroup) -> String {
    let mut picked = Vec::new();
    for &x in s.elements() {
        if !g.closure(&picked).contains(x) {
            picked.push(x);
        }
    }
    let words: Vec<String> = picked.iter().map(|&x| p.vector_of(x).to_string()).collect();
    format!("<{}> order {}", words.join(", "), s.order())
}

fn main() -> csorgo_loops::Result<()> {
    for b in bundled::ALL {
        let p = parse_pc(b.pc)?;
        let g = build_group(&p)?;
        println!("== {} (order {})", b.name, g.order());
        println!("center   {}", gens_of(&p, &g, &g.center()));
        println!("derived  {}", gens_of(&p, &g, &g.derived()));
        println!("class    {:?}", g.nilpotency_class());
        let upper: Vec<usize> = g.upper_central_series().iter().map(|s| s.order()).collect();
        println!("upper central orders {upper:?}");

        let mut lower = vec![g.whole()];
        while lower.last().is_some_and(|s| !s.is_trivial()) {
            let next = g.commutator_sub(&g.whole(), lower.last().unwrap());
            lower.push(next);
        }
        let lower: Vec<usize> = lower.iter().map(|s| s.order()).collect();
        println!("lower central orders {lower:?}");

        let k = g.quotient(&g.derived())?;
        println!("G/G' invariants {:?}", k.quotient().abelian_invariants(&k.quotient().whole())?);
        let orders = g.elements().fold([0usize; 8], |mut acc, x| {
            acc[g.element_order(x).trailing_zeros() as usize] += 1;
            acc
        });
        println!("elements of order 1,2,4,8: {:?}", &orders[..4]);
    }
    Ok(())
}
