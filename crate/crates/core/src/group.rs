//! Finite groups as multiplication tables, with the subgroup, quotient and
//! series computations the setup calculus relies on.
//!
//! Elements are plain `usize` indices and the identity is always index 0.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A fully materialized finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

/// Result of an upper central series computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Class(usize),
    NotNilpotent,
}

impl Nilpotency {
    pub fn class(self) -> Option<usize> {
        match self {
            Nilpotency::Class(c) => Some(c),
            Nilpotency::NotNilpotent => None,
        }
    }
}

/// A subgroup, stored as a membership bitmap plus the generators it was
/// built from. Equality compares members only.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<bool>,
    elements: Vec<usize>,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    fn from_members(members: Vec<bool>, gens: Vec<usize>) -> Self {
        let elements = members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { members, elements, gens }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    /// Members in ascending index order; the identity comes first.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<bool> =
            self.members.iter().zip(&other.members).map(|(&a, &b)| a && b).collect();
        let gens = members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup::from_members(members, gens)
    }

    /// Ambient group order.
    pub fn parent_order(&self) -> usize {
        self.members.len()
    }
}

/// The canonical projection `G -> G/N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    kernel: Subgroup,
    coset_of: Vec<usize>,
    section: Vec<usize>,
    quotient: GroupTable,
}

impl QuotientMap {
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Coset index of an element of the parent group.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Minimal-index representative of a coset.
    pub fn section(&self, coset: usize) -> usize {
        self.section[coset]
    }

    pub fn quotient(&self) -> &GroupTable {
        &self.quotient
    }

    /// Preimage of a subgroup of the quotient.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let members: Vec<bool> = self.coset_of.iter().map(|&c| sub.contains(c)).collect();
        let gens = sub.gens.iter().map(|&c| self.section[c]).chain(self.kernel.gens.iter().copied()).collect();
        Subgroup::from_members(members, gens)
    }

    /// Image of a subgroup of the parent.
    pub fn image(&self, sub: &Subgroup) -> Subgroup {
        let mut members = vec![false; self.quotient.order()];
        for &x in sub.elements() {
            members[self.coset_of[x]] = true;
        }
        let gens = sub.gens.iter().map(|&x| self.coset_of[x]).collect();
        Subgroup::from_members(members, gens)
    }
}

impl GroupTable {
    /// Builds a group from a row-major multiplication table, checking every
    /// group axiom (identity at index 0, inverses, associativity).
    pub fn from_mul_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if mul.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                order * order,
                mul.len()
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&v| v as usize >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b] as usize;
                for c in 0..order {
                    let bc = mul[b * order + c] as usize;
                    if mul[ab * order + c] != mul[a * order + bc] {
                        return Err(Error::InvalidTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Self::from_associative_table(order, mul)
    }

    /// Like [`from_mul_table`](Self::from_mul_table) for tables already known
    /// to be associative.
    pub(crate) fn from_associative_table(order: usize, mul: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::InvalidTable(format!("index 0 is not neutral for {a}")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            let b = row
                .iter()
                .position(|&v| v == 0)
                .ok_or_else(|| Error::InvalidTable(format!("{a} has no inverse")))?;
            if mul[b * order + a] != 0 {
                return Err(Error::InvalidTable(format!("{a} has no two-sided inverse")));
            }
            inv[a] = b as u32;
        }
        Ok(GroupTable { order, mul, inv })
    }

    /// Group of a permutation-free table given as a closure; used for
    /// materializing groups defined by a rule.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(f(a, b) as u32);
            }
        }
        Self::from_mul_table(order, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x^-1 y^-1 x y`.
    #[inline]
    pub fn comm(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inv(yx), xy)
    }

    /// `z^-1 x z`.
    #[inline]
    pub fn conj(&self, x: usize, z: usize) -> usize {
        self.mul(self.mul(self.inv(z), x), z)
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(vec![true; self.order], self.generating_set())
    }

    pub fn trivial(&self) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        Subgroup::from_members(members, Vec::new())
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_members(members, gens.to_vec())
    }

    /// Closure of an existing subgroup together with extra elements.
    pub fn join(&self, a: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(extra);
        self.closure(&gens)
    }

    /// Subgroup generated by `A` and `B`.
    pub fn product(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.join(a, &b.gens)
    }

    /// A small generating set, chosen greedily from the highest indices down.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for x in (1..self.order).rev() {
            if current.order() == self.order {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[usize]) -> Subgroup {
        let gens_g = self.generating_set();
        let mut gens: Vec<usize> = seed.to_vec();
        let mut sub = self.closure(&gens);
        loop {
            let mut grew = false;
            for &h in sub.gens.clone().iter() {
                for &g in &gens_g {
                    let c = self.conj(h, g);
                    if !sub.contains(c) {
                        gens.push(c);
                        sub = self.closure(&gens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    pub fn is_normal(&self, a: &Subgroup) -> bool {
        self.normality_witness(a).is_none()
    }

    fn normality_witness(&self, a: &Subgroup) -> Option<(usize, usize)> {
        let gens_g = self.generating_set();
        for &x in a.elements() {
            for &g in &gens_g {
                if !a.contains(self.conj(x, g)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    /// Center, as the common centralizer of a generating set.
    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        let members: Vec<bool> = self
            .elements()
            .map(|t| gens.iter().all(|&g| self.mul(t, g) == self.mul(g, t)))
            .collect();
        let gens = self.generating_set_of(&members);
        Subgroup::from_members(members, gens)
    }

    /// `{x : [x, g] in N for all g}`; for normal `N` this is the preimage of
    /// `Z(G/N)`.
    pub fn center_modulo(&self, n: &Subgroup) -> Subgroup {
        let gens = self.generating_set();
        let members: Vec<bool> = self
            .elements()
            .map(|x| gens.iter().all(|&g| n.contains(self.comm(x, g))))
            .collect();
        let gens = self.generating_set_of(&members);
        Subgroup::from_members(members, gens)
    }

    /// Derived subgroup, as the normal closure of commutators of generators.
    pub fn derived(&self) -> Subgroup {
        let gens = self.generating_set();
        let mut seed = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                seed.push(self.comm(a, b));
            }
        }
        self.normal_closure(&seed)
    }

    /// `[A, B]`, generated by all `[a, b]`.
    pub fn commutator_sub(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order];
        let mut gens = Vec::new();
        for &x in a.elements() {
            for &y in b.elements() {
                let c = self.comm(x, y);
                if !std::mem::replace(&mut seen[c], true) && c != 0 {
                    gens.push(c);
                }
            }
        }
        let full = self.closure(&gens);
        let small = self.generating_set_of(&full.members);
        Subgroup::from_members(full.members, small)
    }

    /// Largest normal subgroup contained in `A`.
    pub fn normal_core(&self, a: &Subgroup) -> Subgroup {
        let members: Vec<bool> = self
            .elements()
            .map(|t| a.contains(t) && self.elements().all(|g| a.contains(self.conj(t, g))))
            .collect();
        let gens = self.generating_set_of(&members);
        Subgroup::from_members(members, gens)
    }

    fn generating_set_of(&self, members: &[bool]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for x in (1..self.order).rev() {
            if members[x] && !current.contains(x) {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Turns an arbitrary element set into a subgroup, checking closure.
    pub fn subgroup_from_set(&self, set: &[usize]) -> Option<Subgroup> {
        let mut members = vec![false; self.order];
        for &x in set {
            members[x] = true;
        }
        if !members[0] {
            return None;
        }
        for &a in set {
            for &b in set {
                if !members[self.mul(a, b)] {
                    return None;
                }
            }
        }
        let gens = self.generating_set_of(&members);
        Some(Subgroup::from_members(members, gens))
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientMap> {
        if let Some((element, by)) = self.normality_witness(n) {
            return Err(Error::NotNormal { element, by });
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut section = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = section.len();
            section.push(x);
            for &k in n.elements() {
                coset_of[self.mul(x, k)] = c;
            }
        }
        let q = section.len();
        let mut mul = Vec::with_capacity(q * q);
        for a in 0..q {
            for b in 0..q {
                mul.push(coset_of[self.mul(section[a], section[b])] as u32);
            }
        }
        let quotient = GroupTable::from_associative_table(q, mul)?;
        Ok(QuotientMap { kernel: n.clone(), coset_of, section, quotient })
    }

    /// Coset representatives of a normal subgroup: the identity first, then
    /// the minimal index of every other coset in ascending order.
    pub fn transversal(&self, n: &Subgroup) -> Result<Vec<usize>> {
        Ok(self.quotient(n)?.section)
    }

    /// The subgroup as a group in its own right, with the embedding
    /// (`embedding[i]` is the parent index of local element `i`).
    pub fn subgroup_table(&self, a: &Subgroup) -> (GroupTable, Vec<usize>) {
        let emb = a.elements().to_vec();
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in emb.iter().enumerate() {
            local[x] = i;
        }
        let k = emb.len();
        let mut mul = Vec::with_capacity(k * k);
        for &x in &emb {
            for &y in &emb {
                mul.push(local[self.mul(x, y)] as u32);
            }
        }
        let table = GroupTable::from_associative_table(k, mul)
            .expect("subgroup of a group is a group");
        (table, emb)
    }

    pub fn exponent(&self, a: &Subgroup) -> usize {
        a.elements().iter().fold(1, |acc, &x| lcm(acc, self.element_order(x)))
    }

    pub fn is_abelian_subgroup(&self, a: &Subgroup) -> bool {
        let e = a.elements();
        e.iter().enumerate().all(|(i, &x)| e[i + 1..].iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Abelian and of prime exponent (or trivial).
    pub fn is_elementary_abelian(&self, a: &Subgroup) -> bool {
        let e = self.exponent(a);
        self.is_abelian_subgroup(a) && (e == 1 || is_prime(e))
    }

    /// Invariant factors of an abelian subgroup, largest first; each divides
    /// its predecessor. The trivial group has no factors.
    pub fn abelian_invariants(&self, a: &Subgroup) -> Result<Vec<usize>> {
        let e = a.elements();
        for (i, &x) in e.iter().enumerate() {
            if let Some(&y) = e[i + 1..].iter().find(|&&y| self.mul(x, y) != self.mul(y, x)) {
                return Err(Error::NotAbelian { a: x, b: y });
            }
        }
        Ok(invariants_by_counting(a.order(), |pk| e.iter().filter(|&&x| self.pow(x, pk) == 0).count()))
    }

    /// `Z_0 = 1, Z_1 = Z(G), ...` up to the point where the series stops
    /// growing. The last entry is `G` exactly when `G` is nilpotent.
    pub fn upper_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.trivial()];
        loop {
            let last = series.last().expect("nonempty");
            if last.order() == self.order {
                return series;
            }
            let next = self.center_modulo(last);
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> Nilpotency {
        let series = self.upper_central_series();
        if series.last().expect("nonempty").order() == self.order {
            Nilpotency::Class(series.len() - 1)
        } else {
            Nilpotency::NotNilpotent
        }
    }

    /// Homomorphisms `G -> Z_m`, each as a value table over `G`.
    pub fn homomorphisms_to_cyclic(&self, m: u32) -> Vec<Vec<u32>> {
        let gens = self.generating_set();
        let mut out = Vec::new();
        let total = (m as usize).pow(gens.len() as u32);
        for code in 0..total {
            let mut c = code;
            let images: Vec<u32> = gens
                .iter()
                .map(|_| {
                    let v = (c % m as usize) as u32;
                    c /= m as usize;
                    v
                })
                .collect();
            if let Some(values) = self.extend_to_hom(&gens, &images, m) {
                out.push(values);
            }
        }
        out
    }

    fn extend_to_hom(&self, gens: &[usize], images: &[u32], m: u32) -> Option<Vec<u32>> {
        let mut values = vec![u32::MAX; self.order];
        values[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &v) in gens.iter().zip(images) {
                let y = self.mul(x, s);
                let val = (values[x] + v) % m;
                if values[y] == u32::MAX {
                    values[y] = val;
                    queue.push_back(y);
                } else if values[y] != val {
                    return None;
                }
            }
        }
        Some(values)
    }

    /// For a group `H` with `H/Z(H)` elementary abelian of order 8 and
    /// `|H'| = 4`: elements `u, v, w` generating `H` modulo `Z(H)` whose
    /// commutators `a = [u,v]`, `b = [v,w]`, `c = [w,u]` are nontrivial with
    /// `ab = c`.
    pub fn find_commutator_triangle(&self) -> Option<(usize, usize, usize)> {
        let z = self.center();
        let reps = self.transversal(&z).ok()?;
        for &u in &reps[1..] {
            for &v in &reps[1..] {
                for &w in &reps[1..] {
                    let (a, b, c) = (self.comm(u, v), self.comm(v, w), self.comm(w, u));
                    if a == 0 || b == 0 || c == 0 || self.mul(a, b) != c {
                        continue;
                    }
                    if self.join(&z, &[u, v, w]).order() == self.order {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}


/// Invariant factors of an abelian group of the given order, largest first,
/// from `count(n) = #{x : x^n = 1}` evaluated at prime powers.
pub fn invariants_by_counting(order: usize, mut count: impl FnMut(u64) -> usize) -> Vec<usize> {
    // For each prime p, c_k = #{x : x^(p^k) = 1} = p^(sum_i min(lambda_i, k)),
    // so log_p(c_k / c_(k-1)) counts the cyclic p-parts of order >= p^k.
    let mut primary: Vec<(usize, Vec<u32>)> = Vec::new();
    for p in prime_factors(order) {
        let mut parts_at_least = Vec::new();
        let mut prev = 1usize;
        let mut pk: u64 = 1;
        loop {
            pk *= p as u64;
            let c = count(pk);
            if c == prev {
                break;
            }
            parts_at_least.push(ilog(c / prev, p));
            prev = c;
        }
        // parts_at_least[k-1] = number of parts with lambda >= k.
        let nparts = parts_at_least[0] as usize;
        let mut lambdas = vec![0u32; nparts];
        for (k, &cnt) in parts_at_least.iter().enumerate() {
            for l in lambdas.iter_mut().take(cnt as usize) {
                *l = k as u32 + 1;
            }
        }
        primary.push((p, lambdas));
    }
    let width = primary.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    (0..width)
        .map(|j| {
            primary
                .iter()
                .map(|(p, l)| l.get(j).map_or(1, |&lam| p.pow(lam)))
                .product()
        })
        .collect()
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}
