//! Parse a pc presentation, multiply words by collection and list the
//! relations back.
//!
//!     cargo run --example pc_collect [word word ...]

use csorgo_loops::bundled;
use csorgo_loops::parse_pc;

fn main() -> csorgo_loops::Result<()> {
    let p = parse_pc(bundled::G128_731.pc)?;
    println!("{} generators, order {}", p.ngens(), p.order());
    print!("{}", p.to_text());

    let words: Vec<String> = std::env::args().skip(1).collect();
    let words = if words.is_empty() { vec!["g2".into(), "g1".into(), "g4".into(), "g4".into()] } else { words };

    let mut acc = csorgo_loops::ExponentVector::identity(p.ngens());
    for w in &words {
        let v = p.evaluate_word(w)?;
        acc = p.collect(&acc, &v);
        println!("* {w:<8} -> {acc}  (index {})", p.index_of(&acc));
    }

    // g2*g1 collects to g1*g2*g4, since [g2,g1] = g4.
    let lhs = p.collect(&p.evaluate_word("g2")?, &p.evaluate_word("g1")?);
    assert_eq!(lhs, p.evaluate_word("g1*g2*g4")?);
    Ok(())
}
