//! Permutations and stabilizer chains on at most 65536 points.
//!
//! Composition is written left to right: `p.then(q)` applies `p` first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize + 1 {
            return Err(Error::Precondition(format!("degree {n} is too large")));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Precondition(format!("images {images:?} are not a bijection")));
            }
        }
        Ok(Perm(images.iter().map(|&i| i as u16).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Self {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut order = 1u64;
        for start in 0..self.0.len() {
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 1 {
                order = order / gcd(order, len) * len;
            }
        }
        order
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &j)| i != j as usize)
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`, for `p` in the orbit.
    transversal: Vec<Option<Perm>>,
    sifted: HashSet<Perm>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal, sifted: HashSet::new() }
    }
}

/// A base and strong generating set, built by deterministic Schreier–Sims.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

/// Builds a complete stabilizer chain for the group generated by `gens`.
/// The first base point is `preferred` whenever some generator moves it.
pub fn schreier_sims(degree: usize, gens: &[Perm], preferred: usize) -> Result<Bsgs> {
    let mut b = Bsgs { degree, levels: Vec::new() };
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, actual: g.degree() });
        }
    }
    if preferred < degree && gens.iter().any(|g| g.apply(preferred) != preferred) {
        b.levels.push(Level::new(preferred, degree));
    }
    for g in gens {
        b.add_gen(0, g.clone());
    }
    Ok(b)
}

impl Bsgs {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }

    /// Strong generators, without repetition, in the order they were added.
    pub fn strong_gens(&self) -> Vec<Perm> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, actual: p.degree() });
        }
        Ok(self.sift(0, p.clone()).1.is_identity())
    }

    /// Generators of the stabilizer of `point`, which must be the first base
    /// point (or any point when the group is trivial).
    pub fn point_stabilizer(&self, point: usize) -> Result<Vec<Perm>> {
        match self.levels.first() {
            None => Ok(Vec::new()),
            Some(l) if l.base == point => Ok(self.levels.get(1).map_or_else(Vec::new, |l| l.gens.clone())),
            Some(l) => Err(Error::Precondition(format!(
                "stabilizer requested for {point}, but the first base point is {}",
                l.base
            ))),
        }
    }

    /// Order of the stabilizer of the first base point.
    pub fn stabilizer_order(&self) -> BigUint {
        self.levels.iter().skip(1).map(|l| BigUint::from(l.orbit.len())).product()
    }

    /// Every element of the stabilizer chain from `level` down, as products of
    /// transversal elements. Fails if there are more than `bound`.
    pub fn elements_from(&self, level: usize, bound: usize) -> Result<Vec<Perm>> {
        let size: BigUint = self.levels.iter().skip(level).map(|l| BigUint::from(l.orbit.len())).product();
        if size > BigUint::from(bound) {
            let order = u128::try_from(&size).unwrap_or(u128::MAX);
            return Err(Error::TooLarge { order, bound });
        }
        let mut acc = vec![Perm::identity(self.degree)];
        for l in self.levels.iter().skip(level).rev() {
            let mut next = Vec::with_capacity(acc.len() * l.orbit.len());
            for &p in &l.orbit {
                let u = l.transversal[p].as_ref().expect("orbit point has a transversal");
                for a in &acc {
                    next.push(a.then(u));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    pub fn elements(&self, bound: usize) -> Result<Vec<Perm>> {
        self.elements_from(0, bound)
    }

    /// Sifts `g` from `level` down; returns the level where it stopped and
    /// the residue.
    fn sift(&self, level: usize, mut g: Perm) -> (usize, Perm) {
        for (i, l) in self.levels.iter().enumerate().skip(level) {
            let beta = g.apply(l.base);
            match &l.transversal[beta] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (i, g),
            }
        }
        (self.levels.len(), g)
    }

    fn add_gen(&mut self, level: usize, g: Perm) {
        if self.sift(level, g.clone()).1.is_identity() {
            return;
        }
        if level == self.levels.len() {
            let base = g.first_moved_point().expect("nonidentity permutation moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        let l = &mut self.levels[level];
        let old_points = l.orbit.len();
        let old_gens = l.gens.len();
        l.gens.push(g);

        // Old points only need the new generator; new points need all of them.
        let mut queue = VecDeque::new();
        for oi in 0..old_points {
            let beta = l.orbit[oi];
            let gamma = l.gens[old_gens].apply(beta);
            if l.transversal[gamma].is_none() {
                let u = l.transversal[beta].as_ref().expect("in orbit").then(&l.gens[old_gens]);
                l.transversal[gamma] = Some(u);
                l.orbit.push(gamma);
                queue.push_back(gamma);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for s in 0..l.gens.len() {
                let gamma = l.gens[s].apply(beta);
                if l.transversal[gamma].is_none() {
                    let u = l.transversal[beta].as_ref().expect("in orbit").then(&l.gens[s]);
                    l.transversal[gamma] = Some(u);
                    l.orbit.push(gamma);
                    queue.push_back(gamma);
                }
            }
        }

        // Schreier generators for every (point, generator) pair not seen before.
        let mut pending = Vec::new();
        for (oi, &beta) in l.orbit.iter().enumerate() {
            let gens_from = if oi < old_points { old_gens } else { 0 };
            for s in &l.gens[gens_from..] {
                let u_beta = l.transversal[beta].as_ref().expect("in orbit");
                let gamma = s.apply(beta);
                let u_gamma = l.transversal[gamma].as_ref().expect("orbit is closed");
                let sg = u_beta.then(s).then(&u_gamma.inverse());
                if !sg.is_identity() && l.sifted.insert(sg.clone()) {
                    pending.push(sg);
                }
            }
        }
        for sg in pending {
            self.add_gen(level + 1, sg);
        }
    }
}

/// All elements of the group generated by `gens`, by breadth-first closure.
/// Fails once more than `bound` elements are found.
pub fn enumerate_closure(degree: usize, gens: &[Perm], bound: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if out.len() == bound {
                    return Err(Error::TooLarge { order: bound as u128 + 1, bound });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        Perm::from_images(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>()).unwrap()
    }

    fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Perm::from_images(&v).unwrap()
    }

    #[test]
    fn trivial_group() {
        let b = schreier_sims(5, &[], 0).unwrap();
        assert_eq!(b.order(), BigUint::from(1u32));
        assert!(b.point_stabilizer(0).unwrap().is_empty());
    }

    #[test]
    fn cyclic_regular() {
        let b = schreier_sims(8, &[cycle(8)], 0).unwrap();
        assert_eq!(b.order(), BigUint::from(8u32));
        assert!(b.point_stabilizer(0).unwrap().is_empty());
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=7 {
            let b = schreier_sims(n, &[cycle(n), transposition(n, 0, 1)], 0).unwrap();
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(b.order(), BigUint::from(fact));
            assert_eq!(b.base()[0], 0);
        }
    }

    #[test]
    fn large_symmetric_group_order() {
        let n = 30;
        let b = schreier_sims(n, &[cycle(n), transposition(n, 0, 1)], 3).unwrap();
        let fact: BigUint = (1..=n as u32).map(BigUint::from).product();
        assert_eq!(b.order(), fact);
        assert_eq!(b.base()[0], 3);
    }

    #[test]
    fn preferred_base_point_ignored_when_fixed() {
        // Generators fix point 0.
        let g = Perm::from_images(&[0, 2, 1, 3]).unwrap();
        let b = schreier_sims(4, &[g], 0).unwrap();
        assert_eq!(b.base(), vec![1]);
    }

    #[test]
    fn preferred_base_point_moved_by_later_generator() {
        let fixes_zero = Perm::from_images(&[0, 2, 1, 3]).unwrap();
        let moves_zero = Perm::from_images(&[3, 1, 2, 0]).unwrap();
        let b = schreier_sims(4, &[fixes_zero, moves_zero], 0).unwrap();
        assert_eq!(b.base()[0], 0);
        assert_eq!(b.order(), BigUint::from(4u32));
    }

    #[test]
    fn membership() {
        let n = 6;
        // Alternating group A6 from 3-cycles.
        let c = |a, b, c| {
            let mut v: Vec<usize> = (0..n).collect();
            v[a] = b;
            v[b] = c;
            v[c] = a;
            Perm::from_images(&v).unwrap()
        };
        let gens: Vec<Perm> = (2..n).map(|k| c(0, 1, k)).collect();
        let b = schreier_sims(n, &gens, 0).unwrap();
        assert_eq!(b.order(), BigUint::from(360u32));
        assert!(!b.contains(&transposition(n, 0, 1)).unwrap());
        assert!(b.contains(&c(3, 4, 5)).unwrap());
        assert!(matches!(b.contains(&Perm::identity(3)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn elements_match_closure() {
        let n = 5;
        let gens = [cycle(n), transposition(n, 0, 1)];
        let b = schreier_sims(n, &gens, 0).unwrap();
        let mut from_chain = b.elements(1000).unwrap();
        let mut closure = enumerate_closure(n, &gens, 1000).unwrap();
        from_chain.sort();
        closure.sort();
        assert_eq!(from_chain, closure);
        let stab = enumerate_closure(n, &b.point_stabilizer(0).unwrap(), 1000).unwrap();
        assert_eq!(stab.len(), 24);
        assert!(stab.iter().all(|p| p.apply(0) == 0));
    }

    #[test]
    fn bad_images_rejected() {
        assert!(Perm::from_images(&[0, 0]).is_err());
        assert!(Perm::from_images(&[2, 0]).is_err());
    }
}
