//! Sweeps a small space of free parameters on (128,731) and buckets the
//! loops by their invariants.
//!
//!     cargo run --release --example free_parameter_sweep [jobs]

use csorgo_loops::bundled;
use csorgo_loops::pipeline;

const SPACE: &str = "\
vary tau 2 3
vary tau 3 5
vary delta 2 3
";

fn main() -> csorgo_loops::Result<()> {
    let jobs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let b = bundled::G128_731;
    let summary = pipeline::sweep(b.pc, b.frame, SPACE, jobs, 64)?;
    print!("{}", summary.to_text());
    println!("all rows pass: {}", summary.all_passed());
    Ok(())
}
