//! Finite loops as Latin squares with identity 0: multiplication and inner
//! mapping groups, centers, normal subloops, quotients and the derived
//! structure used to measure nilpotency and solvability.

mod t2;

pub use t2::check_t2;

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{invariants_by_counting, GroupTable, Nilpotency};
use crate::perm::{schreier_sims, Bsgs, Perm};
use crate::setup::{CentralCyclic, Cocycle2};

/// Largest inner mapping group that is materialized element by element.
pub const INN_BOUND: usize = 20000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopTable {
    order: usize,
    mul: Vec<u32>,
    ldiv: Vec<u32>,
    rdiv: Vec<u32>,
}

impl LoopTable {
    /// Checks that the table is a Latin square with two-sided identity 0.
    pub fn from_mul_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::NotALoop(format!("table of {} entries for order {order}", mul.len())));
        }
        let mut ldiv = vec![u32::MAX; order * order];
        let mut rdiv = vec![u32::MAX; order * order];
        for x in 0..order {
            for y in 0..order {
                let v = mul[x * order + y] as usize;
                if v >= order {
                    return Err(Error::NotALoop(format!("entry {x}*{y} = {v} is out of range")));
                }
                if ldiv[x * order + v] != u32::MAX {
                    return Err(Error::NotALoop(format!("row {x} repeats {v}")));
                }
                if rdiv[v * order + y] != u32::MAX {
                    return Err(Error::NotALoop(format!("column {y} repeats {v}")));
                }
                ldiv[x * order + v] = y as u32;
                rdiv[v * order + y] = x as u32;
            }
        }
        for x in 0..order {
            if mul[x] as usize != x || mul[x * order] as usize != x {
                return Err(Error::NotALoop(format!("0 is not a two-sided identity at {x}")));
            }
        }
        Ok(LoopTable { order, mul, ldiv, rdiv })
    }

    pub fn from_group(g: &GroupTable) -> Self {
        let n = g.order();
        let mul = (0..n * n).map(|i| g.mul(i / n, i % n) as u32).collect();
        Self::from_mul_table(n, mul).expect("a group is a loop")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    /// `x \ y`, the solution `z` of `x*z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.order + y] as usize
    }

    /// `x / y`, the solution `z` of `z*y = x`.
    #[inline]
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.order + y] as usize
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// `L_x: y -> x*y`.
    pub fn left_translation(&self, x: usize) -> Perm {
        Perm::from_images(&(0..self.order).map(|y| self.mul(x, y)).collect::<Vec<_>>()).expect("rows are permutations")
    }

    /// `R_x: y -> y*x`.
    pub fn right_translation(&self, x: usize) -> Perm {
        Perm::from_images(&(0..self.order).map(|y| self.mul(y, x)).collect::<Vec<_>>())
            .expect("columns are permutations")
    }

    /// `T_x = R_x^{-1} L_x` read as `y -> x \ (y*x)`.
    pub fn middle_inner_mapping(&self, x: usize, y: usize) -> usize {
        self.ldiv(x, self.mul(y, x))
    }

    /// `(x*(y*z)) \ ((x*y)*z)`.
    pub fn associator(&self, x: usize, y: usize, z: usize) -> usize {
        self.ldiv(self.mul(x, self.mul(y, z)), self.mul(self.mul(x, y), z))
    }

    /// `(y*x) \ (x*y)`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.ldiv(self.mul(y, x), self.mul(x, y))
    }

    /// Cayley table with 1-based entries, one row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.order * self.order * 4);
        for x in 0..self.order {
            for y in 0..self.order {
                if y > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}", self.mul(x, y) + 1);
            }
            s.push('\n');
        }
        s
    }

    /// Parses a 1-based Cayley table as written by [`LoopTable::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut mul = Vec::new();
        let mut rows = 0;
        for (ln, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            rows += 1;
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::Syntax { line: ln + 1, msg: format!("not an index: {tok}") })?;
                if v == 0 {
                    return Err(Error::Syntax { line: ln + 1, msg: "entries are 1-based".into() });
                }
                mul.push(v - 1);
            }
        }
        Self::from_mul_table(rows, mul)
    }

    /// Restriction to a subloop, with the embedding into `self`.
    pub fn subloop_table(&self, members: &[usize]) -> Result<(LoopTable, Vec<usize>)> {
        let mut local = vec![u32::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i as u32;
        }
        let k = members.len();
        let mut mul = Vec::with_capacity(k * k);
        for &x in members {
            for &y in members {
                let v = local[self.mul(x, y)];
                if v == u32::MAX {
                    return Err(Error::NotALoop("subset is not closed under multiplication".into()));
                }
                mul.push(v);
            }
        }
        Ok((LoopTable::from_mul_table(k, mul)?, members.to_vec()))
    }
}

/// `x*y = xy·c^μ(x,y)`, where `c` generates `Z`.
pub fn loop_from_mu(g: &GroupTable, z: &CentralCyclic, mu: &Cocycle2) -> Result<LoopTable> {
    let n = g.order();
    if mu.group_order() != n {
        return Err(Error::NotALoop(format!("mu is defined on a group of order {}", mu.group_order())));
    }
    let mul = (0..n * n).map(|i| g.mul(g.mul(i / n, i % n), z.element(mu.get(i / n, i % n))) as u32).collect();
    LoopTable::from_mul_table(n, mul)
}

/// A subloop invariant under every inner mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubloop {
    members: Vec<bool>,
    elements: Vec<usize>,
}

impl NormalSubloop {
    fn from_members(members: Vec<bool>) -> Self {
        let elements = members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        NormalSubloop { members, elements }
    }

    /// The set as a normal subloop, if it is one.
    pub fn from_members_checked(q: &LoopTable, members: Vec<bool>) -> Option<Self> {
        let set: Vec<usize> = (0..q.order()).filter(|&x| members[x]).collect();
        is_normal_subloop(q, &set).ok()?.then(|| Self::from_members(members))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    /// Ascending.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Multiplication group, its stabilizer of the identity, and that
/// stabilizer as an abstract group.
#[derive(Clone, Debug)]
pub struct MultiplicationGroups {
    pub mlt: Bsgs,
    /// Generators of `Inn(Q)`.
    pub inn_gens: Vec<Perm>,
    /// Every inner mapping, sorted; the identity comes first.
    pub inn: Vec<Perm>,
}

impl MultiplicationGroups {
    pub fn mlt_order(&self) -> BigUint {
        self.mlt.order()
    }

    pub fn inn_order(&self) -> usize {
        self.inn.len()
    }

    pub fn inn_is_abelian(&self) -> bool {
        let g = &self.inn_gens;
        g.iter().enumerate().all(|(i, a)| g[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Invariant factors of `Inn(Q)`, or `None` when it is not abelian.
    pub fn inn_invariants(&self) -> Option<Vec<usize>> {
        if !self.inn_is_abelian() {
            return None;
        }
        let orders: Vec<u64> = self.inn.iter().map(Perm::order).collect();
        Some(invariants_by_counting(self.inn.len(), |n| orders.iter().filter(|&&o| n % o == 0).count()))
    }

    /// `inn` as a group; element `i` is `inn[i]` and `a*b` applies `a` first.
    pub fn inn_table(&self) -> Result<GroupTable> {
        let index: HashMap<&Perm, usize> = self.inn.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let k = self.inn.len();
        let mut mul = Vec::with_capacity(k * k);
        for a in &self.inn {
            for b in &self.inn {
                mul.push(index[&a.then(b)] as u32);
            }
        }
        GroupTable::from_mul_table(k, mul)
    }
}

/// `Mlt(Q) = <L_x, R_x>` via Schreier-Sims with first base point 0.
pub fn mlt(q: &LoopTable) -> Result<Bsgs> {
    let gens: Vec<Perm> = (1..q.order())
        .flat_map(|x| [q.left_translation(x), q.right_translation(x)])
        .filter(|p| !p.is_identity())
        .collect();
    schreier_sims(q.order(), &gens, 0)
}

/// Generators of `Inn(Q)`, the stabilizer of the identity in `Mlt(Q)`.
pub fn inn_generators(q: &LoopTable) -> Result<Vec<Perm>> {
    mlt(q)?.point_stabilizer(0)
}

pub fn multiplication_groups(q: &LoopTable) -> Result<MultiplicationGroups> {
    let mlt = mlt(q)?;
    let inn_gens = mlt.point_stabilizer(0)?;
    let mut inn = mlt.elements_from(1, INN_BOUND)?;
    if mlt.base().is_empty() {
        inn = vec![Perm::identity(q.order())];
    }
    inn.sort();
    Ok(MultiplicationGroups { mlt, inn_gens, inn })
}

/// `Inn(Q)` as a group table.
pub fn inn(q: &LoopTable) -> Result<GroupTable> {
    multiplication_groups(q)?.inn_table()
}

fn fixed_points(order: usize, maps: &[Perm]) -> NormalSubloop {
    NormalSubloop::from_members((0..order).map(|x| maps.iter().all(|p| p.apply(x) == x)).collect())
}

/// `Z(Q)`: the points fixed by every inner mapping.
pub fn loop_center(q: &LoopTable) -> Result<NormalSubloop> {
    Ok(fixed_points(q.order(), &inn_generators(q)?))
}

/// Smallest normal subloop containing `seed`, given generators of `Inn(Q)`.
pub fn normal_closure_with(q: &LoopTable, inn_gens: &[Perm], seed: &[usize]) -> NormalSubloop {
    let n = q.order();
    let mut members = vec![false; n];
    members[0] = true;
    let mut list = vec![0];
    let push = |x: usize, members: &mut Vec<bool>, list: &mut Vec<usize>| {
        if !members[x] {
            members[x] = true;
            list.push(x);
        }
    };
    for &s in seed {
        push(s, &mut members, &mut list);
    }
    // In a finite loop, closure under multiplication gives a subloop.
    let mut done = 0;
    while done < list.len() {
        let x = list[done];
        done += 1;
        for p in inn_gens {
            push(p.apply(x), &mut members, &mut list);
        }
        for i in 0..done {
            let y = list[i];
            push(q.mul(x, y), &mut members, &mut list);
            push(q.mul(y, x), &mut members, &mut list);
        }
    }
    NormalSubloop::from_members(members)
}

pub fn normal_closure_subloop(q: &LoopTable, seed: &[usize]) -> Result<NormalSubloop> {
    Ok(normal_closure_with(q, &inn_generators(q)?, seed))
}

/// Checks a subset against the loop axioms of a subloop and against every
/// element of `Inn(Q)`.
pub fn is_normal_subloop(q: &LoopTable, set: &[usize]) -> Result<bool> {
    let n = q.order();
    let mut members = vec![false; n];
    for &x in set {
        members[x] = true;
    }
    if !members[0] || set.iter().any(|&x| set.iter().any(|&y| !members[q.mul(x, y)])) {
        return Ok(false);
    }
    let m = multiplication_groups(q)?;
    Ok(m.inn.iter().all(|p| set.iter().all(|&x| members[p.apply(x)])))
}

/// `Q/N` with cosets numbered by ascending least element, and the coset of
/// each element of `Q`.
pub fn quotient_loop(q: &LoopTable, n: &NormalSubloop) -> Result<(LoopTable, Vec<usize>)> {
    let order = q.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &k in n.elements() {
            let y = q.mul(x, k);
            if coset_of[y] != usize::MAX && coset_of[y] != c {
                return Err(Error::NotNormalSubloop(format!("cosets of {x} and {y} overlap")));
            }
            coset_of[y] = c;
        }
    }
    let k = reps.len();
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            mul.push(coset_of[q.mul(a, b)] as u32);
        }
    }
    for x in 0..order {
        for y in 0..order {
            if mul[coset_of[x] * k + coset_of[y]] as usize != coset_of[q.mul(x, y)] {
                return Err(Error::NotNormalSubloop(format!("product of cosets of {x} and {y} is not well defined")));
            }
        }
    }
    Ok((LoopTable::from_mul_table(k, mul)?, coset_of))
}

/// Orders of `Z_1(Q) < Z_2(Q) < ...`, read off the iterated quotients
/// `Q / Z(Q)`, until the quotient is trivial or has trivial center.
pub fn upper_central_orders(q: &LoopTable) -> Result<Vec<usize>> {
    let mut orders = vec![1];
    let mut cur = q.clone();
    while cur.order() > 1 {
        let c = loop_center(&cur)?;
        if c.is_trivial() {
            break;
        }
        let (next, _) = quotient_loop(&cur, &c)?;
        orders.push(q.order() / next.order());
        cur = next;
    }
    Ok(orders)
}

pub fn nilpotency_class_loop(q: &LoopTable) -> Result<Nilpotency> {
    let orders = upper_central_orders(q)?;
    Ok(if *orders.last().expect("nonempty") == q.order() {
        Nilpotency::Class(orders.len() - 1)
    } else {
        Nilpotency::NotNilpotent
    })
}

fn all_associators(q: &LoopTable) -> Vec<usize> {
    let n = q.order();
    let mut seen = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                seen[q.associator(x, y, z)] = true;
            }
        }
    }
    (0..n).filter(|&a| seen[a]).collect()
}

fn all_commutators(q: &LoopTable) -> Vec<usize> {
    let n = q.order();
    let mut seen = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            seen[q.commutator(x, y)] = true;
        }
    }
    (0..n).filter(|&a| seen[a]).collect()
}

/// `A(Q)`: the normal closure of all associators.
pub fn associator_subloop(q: &LoopTable) -> Result<NormalSubloop> {
    normal_closure_subloop(q, &all_associators(q))
}

/// `Q'`: the normal closure of all associators and commutators.
pub fn derived_subloop(q: &LoopTable) -> Result<NormalSubloop> {
    let mut seed = all_associators(q);
    seed.extend(all_commutators(q));
    normal_closure_subloop(q, &seed)
}

/// Orders of `Q ≥ Q' ≥ Q'' ≥ ...` until the series stabilizes.
pub fn derived_series_orders(q: &LoopTable) -> Result<Vec<usize>> {
    let mut orders = vec![q.order()];
    let mut cur = q.clone();
    loop {
        let d = derived_subloop(&cur)?;
        if d.order() == cur.order() {
            return Ok(orders);
        }
        orders.push(d.order());
        if d.is_trivial() {
            return Ok(orders);
        }
        cur = cur.subloop_table(d.elements())?.0;
    }
}

pub fn is_solvable(q: &LoopTable) -> Result<bool> {
    Ok(*derived_series_orders(q)?.last().expect("nonempty") == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{build_group, parse_pc};

    fn d8() -> GroupTable {
        build_group(&parse_pc("gens 3\ng2^2 = g3\n[g2,g1] = g3\n").unwrap()).unwrap()
    }

    #[test]
    fn group_as_loop() {
        let g = d8();
        let q = LoopTable::from_group(&g);
        assert!(q.is_associative());
        let m = multiplication_groups(&q).unwrap();
        // Inner mappings of a group are its inner automorphisms.
        assert_eq!(m.inn_order(), 4);
        assert_eq!(m.mlt_order(), BigUint::from(32u32));
        assert_eq!(loop_center(&q).unwrap().elements(), &[0, 1]);
        assert_eq!(nilpotency_class_loop(&q).unwrap(), Nilpotency::Class(2));
        assert!(associator_subloop(&q).unwrap().is_trivial());
        assert_eq!(derived_subloop(&q).unwrap().order(), 2);
        assert!(is_solvable(&q).unwrap());
    }

    #[test]
    fn abelian_group_has_trivial_inn() {
        let g = build_group(&parse_pc("gens 3\n").unwrap()).unwrap();
        let q = LoopTable::from_group(&g);
        let m = multiplication_groups(&q).unwrap();
        assert_eq!(m.inn_order(), 1);
        assert_eq!(loop_center(&q).unwrap().order(), 8);
        assert_eq!(nilpotency_class_loop(&q).unwrap(), Nilpotency::Class(1));
    }

    #[test]
    fn rejects_non_latin() {
        assert!(LoopTable::from_mul_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(LoopTable::from_mul_table(2, vec![1, 0, 0, 1]).is_err());
    }

    #[test]
    fn nonassociative_loop_of_order_five() {
        // The smallest nonassociative loop; every loop of order 5 is solvable
        // only if it is a group, and this one has trivial derived quotient.
        let t = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let q = LoopTable::from_mul_table(5, t.iter().flatten().map(|&v| v as u32).collect()).unwrap();
        assert!(!q.is_associative());
        assert_eq!(derived_subloop(&q).unwrap().order(), 5);
        assert!(!is_solvable(&q).unwrap());
        assert_eq!(nilpotency_class_loop(&q).unwrap(), Nilpotency::NotNilpotent);
    }

    #[test]
    fn text_round_trip() {
        let q = LoopTable::from_group(&d8());
        assert_eq!(LoopTable::from_text(&q.to_text()).unwrap(), q);
        assert!(q.to_text().starts_with("1 2 3"));
    }

    #[test]
    fn quotient_by_non_normal_fails() {
        let g = d8();
        let q = LoopTable::from_group(&g);
        let h = g.closure(&[4]);
        let bad = NormalSubloop::from_members((0..8).map(|x| h.contains(x)).collect());
        assert!(quotient_loop(&q, &bad).is_err());
    }
}
