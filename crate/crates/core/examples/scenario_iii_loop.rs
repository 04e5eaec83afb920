//! (128,742), where R/Z has order 4. Compares the default frame with one
//! that lets the basis search pick e1, e2, e3, and one whose R makes the
//! seed ill defined.

use csorgo_loops::bundled;
use csorgo_loops::pipeline;

fn summary(label: &str, pc: &str, frame: &str) {
    let (run, _) = pipeline::build(pc, frame, None);
    println!("-- {label}: {}", frame.trim());
    println!("   {}", run.frame);
    match (&run.invariants, run.failed_stage()) {
        (Some(inv), None) => println!(
            "   pass: scenario {:?}, class {:?}, Inn {:?}, |Mlt| {}, |A(Q)| {}",
            run.scenario, inv.class, inv.inn_invariants, inv.mlt_order, inv.associator_order
        ),
        (_, stage) => {
            let why = run.error.as_ref().map(|(_, e)| e.clone()).unwrap_or_default();
            println!("   fail at {stage:?}: {why}");
        }
    }
}

fn main() {
    let b = bundled::G128_742;
    summary("bundled frame", b.pc, b.frame);
    summary("searched basis", b.pc, "Z = g7; R = g5,g6,g7; M = derived");
    summary("different R", b.pc, "Z = g7; R = g4,g6,g7; M = derived; basis = g1,g2,g2*g3");
}
