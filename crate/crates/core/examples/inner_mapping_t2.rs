//! Middle inner mappings T_x(y) = x\(yx) on the golden loops, against the
//! closed form y^x μ(y,x) μ(x,y^x).

use csorgo_loops::bundled;
use csorgo_loops::loops::check_t2;
use csorgo_loops::pipeline::{self, prepare};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for b in bundled::ALL {
        let p = prepare(b.pc, b.frame).map_err(|(s, e)| format!("{s}: {e}"))?;
        let (_, art) = pipeline::build(b.pc, b.frame, None);
        let art = art.ok_or("no loop")?;
        let (g, z, q, mu) = (&p.group, &p.z, &art.loop_table, &art.mu);

        let r = check_t2(g, z, q, mu, &p.f);
        print!("{}: {r}", b.name);

        // A few values by hand.
        for (x, y) in [(64, 32), (32, 16), (80, 48)] {
            let direct = q.middle_inner_mapping(x, y);
            let yx = g.conj(y, x);
            let closed = g.mul(yx, z.element(z.add(mu.get(y, x), mu.get(x, yx))));
            println!("  T_{x}({y}) = {direct}, closed form {closed}");
        }
    }
    Ok(())
}
