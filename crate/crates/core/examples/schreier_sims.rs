//! Stabilizer chains on small permutation groups, checked against plain
//! closure.

use csorgo_loops::perm::{enumerate_closure, schreier_sims, Perm};

fn cycle(n: usize, pts: &[usize]) -> Perm {
    let mut img: Vec<usize> = (0..n).collect();
    for w in 0..pts.len() {
        img[pts[w]] = pts[(w + 1) % pts.len()];
    }
    Perm::from_images(&img).expect("valid cycle")
}

fn main() -> csorgo_loops::Result<()> {
    let cases: Vec<(&str, usize, Vec<Perm>)> = vec![
        ("S5", 5, vec![cycle(5, &[0, 1]), cycle(5, &[0, 1, 2, 3, 4])]),
        ("A5", 5, vec![cycle(5, &[0, 1, 2]), cycle(5, &[0, 1, 2, 3, 4])]),
        ("D8 on a square", 4, vec![cycle(4, &[0, 1, 2, 3]), Perm::from_images(&[0, 3, 2, 1])?]),
        ("PGL(2,5) on 6 points", 6, vec![cycle(6, &[0, 1, 2, 3, 4]), Perm::from_images(&[5, 4, 2, 3, 1, 0])?]),
        ("C2 x C2 x C2", 6, vec![cycle(6, &[0, 1]), cycle(6, &[2, 3]), cycle(6, &[4, 5])]),
    ];
    for (name, n, gens) in cases {
        let chain = schreier_sims(n, &gens, 0)?;
        let closure = enumerate_closure(n, &gens, 10_000)?;
        println!(
            "{name:<36} base {:?} orbits {:?} order {} (closure {})",
            chain.base(),
            chain.orbit_lengths(),
            chain.order(),
            closure.len()
        );
        assert_eq!(chain.order(), closure.len().into());
        for p in &closure {
            assert!(chain.contains(p)?);
        }
    }
    let chain = schreier_sims(5, &[cycle(5, &[0, 1, 2])], 0)?;
    println!("(0 1) in <(0 1 2)>: {}", chain.contains(&cycle(5, &[0, 1]))?);
    Ok(())
}
