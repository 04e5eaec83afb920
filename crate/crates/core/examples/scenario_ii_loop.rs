//! End-to-end build on (128,731), where R = Z: δ, μ, the loop and its
//! invariants.

use csorgo_loops::bundled;
use csorgo_loops::loops::{
    associator_subloop, loop_center, multiplication_groups, nilpotency_class_loop, upper_central_orders,
};
use csorgo_loops::pipeline;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = bundled::G128_731;
    let (run, art) = pipeline::build(b.pc, b.frame, None);
    print!("{}", run.to_text(true));
    let art = art.ok_or("build produced no loop")?;
    let q = &art.loop_table;

    let m = multiplication_groups(q)?;
    println!("|Mlt(Q)| = {}, |Inn(Q)| = {}", m.mlt_order(), m.inn_order());
    println!("Inn(Q) abelian: {}, invariants {:?}", m.inn_is_abelian(), m.inn_invariants());
    println!("Z(Q) order {}", loop_center(q)?.order());
    println!("upper central orders {:?}", upper_central_orders(q)?);
    println!("class {:?}", nilpotency_class_loop(q)?);
    println!("A(Q) order {}", associator_subloop(q)?.order());
    println!("associative: {}, commutative: {}", q.is_associative(), q.is_commutative());

    let n = q.order();
    let (x, y, w) = (0..n * n * n)
        .map(|i| (i / (n * n), i / n % n, i % n))
        .find(|&(x, y, w)| q.mul(q.mul(x, y), w) != q.mul(x, q.mul(y, w)))
        .ok_or("loop is associative")?;
    println!("({x}*{y})*{w} = {}, {x}*({y}*{w}) = {}", q.mul(q.mul(x, y), w), q.mul(x, q.mul(y, w)));
    Ok(())
}
