//! Cocycle data over a group: the central cyclic value group, two-argument
//! cocycle tables, derived three-argument maps, radicals and the checks
//! that make `(G, Z, δ)` a setup.
//!
//! Values in `Z` are stored additively, as exponents of a fixed generator.

mod checks;
mod classify;
mod radical;

pub use checks::{
    b4_violation, check_b, check_fgh, check_fgh_with, check_inclusion_chain, check_inclusion_chain_with, derive_f, derive_g, derive_h,
    is_nontrivial, SetupData,
};
pub use classify::{classify_scenario, Classification, Scenario, ScenarioReport};
pub use radical::{mul_part, rad1, rad2, radical, radical3};

use crate::error::{Error, Result};
use crate::group::{GroupTable, QuotientMap, Subgroup};

/// A cyclic subgroup of the center with a designated generator.
#[derive(Clone, Debug)]
pub struct CentralCyclic {
    sub: Subgroup,
    gen: usize,
    powers: Vec<usize>,
    exponent_of: Vec<Option<u32>>,
}

impl CentralCyclic {
    /// The generator is the smallest-index element of full order.
    pub fn new(g: &GroupTable, z: &Subgroup) -> Result<Self> {
        let center = g.center();
        if let Some(&x) = z.elements().iter().find(|&&x| !center.contains(x)) {
            return Err(Error::NotCentralCyclic(format!("element {x} is not central")));
        }
        let m = z.order();
        let gen = *z
            .elements()
            .iter()
            .find(|&&x| g.element_order(x) == m)
            .ok_or_else(|| Error::NotCentralCyclic(format!("no element of order {m}")))?;
        Ok(Self::with_generator(g, z, gen))
    }

    fn with_generator(g: &GroupTable, z: &Subgroup, gen: usize) -> Self {
        let m = z.order();
        let mut powers = Vec::with_capacity(m);
        let mut exponent_of = vec![None; g.order()];
        let mut x = 0;
        for e in 0..m {
            powers.push(x);
            exponent_of[x] = Some(e as u32);
            x = g.mul(x, gen);
        }
        CentralCyclic { sub: z.clone(), gen, powers, exponent_of }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    pub fn generator(&self) -> usize {
        self.gen
    }

    /// `|Z|`, the modulus of the exponent arithmetic.
    pub fn modulus(&self) -> u32 {
        self.powers.len() as u32
    }

    pub fn exponent_of(&self, x: usize) -> Option<u32> {
        self.exponent_of[x]
    }

    /// The element `gen^e`.
    pub fn element(&self, e: u32) -> usize {
        self.powers[(e % self.modulus()) as usize]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.modulus()
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.modulus() - a % self.modulus()) % self.modulus()
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

/// A map `G × G -> Z` that is constant on cosets of `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    order: usize,
    m: u32,
    modulus: Subgroup,
    values: Vec<u32>,
}

impl Cocycle2 {
    /// Validates range, normalization and coset-constancy.
    pub fn new(g: &GroupTable, z: &CentralCyclic, modulus: Subgroup, values: Vec<u32>) -> Result<Self> {
        let c = Self::new_unchecked(g, z, modulus, values);
        c.validate(g)?;
        Ok(c)
    }

    /// Skips validation. Intended for building deliberately broken tables.
    pub fn new_unchecked(g: &GroupTable, z: &CentralCyclic, modulus: Subgroup, values: Vec<u32>) -> Self {
        assert_eq!(values.len(), g.order() * g.order(), "cocycle table has the wrong size");
        Cocycle2 { order: g.order(), m: z.modulus(), modulus, values }
    }

    pub fn from_fn(
        g: &GroupTable,
        z: &CentralCyclic,
        modulus: Subgroup,
        f: impl Fn(usize, usize) -> u32,
    ) -> Result<Self> {
        let n = g.order();
        let values = (0..n * n).map(|i| f(i / n, i % n) % z.modulus()).collect();
        Self::new(g, z, modulus, values)
    }

    pub fn trivial(g: &GroupTable, z: &CentralCyclic, modulus: Subgroup) -> Self {
        Self::new_unchecked(g, z, modulus, vec![0; g.order() * g.order()])
    }

    pub fn validate(&self, g: &GroupTable) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let v = self.get(x, y);
                if v >= self.m {
                    return Err(Error::CocycleInvariant { x, y, msg: format!("value {v} is not reduced mod {}", self.m) });
                }
            }
        }
        for x in 0..n {
            if self.get(0, x) != 0 || self.get(x, 0) != 0 {
                return Err(Error::CocycleInvariant { x, y: 0, msg: "not normalized".into() });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let v = self.get(x, y);
                for &k in self.modulus.gens() {
                    if self.get(g.mul(x, k), y) != v || self.get(x, g.mul(y, k)) != v {
                        return Err(Error::CocycleInvariant {
                            x,
                            y,
                            msg: format!("value changes under multiplication by modulus element {k}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.values[x * self.order + y]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn modulus(&self) -> &Subgroup {
        &self.modulus
    }

    /// `|Z|`.
    pub fn value_modulus(&self) -> u32 {
        self.m
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The same values, declared constant on a larger or smaller subgroup.
    pub fn with_modulus(&self, g: &GroupTable, modulus: Subgroup) -> Result<Self> {
        let c = Cocycle2 { modulus, ..self.clone() };
        c.validate(g)?;
        Ok(c)
    }
}

/// A map `G × G × G -> Z`, stored over the classes of a normal subgroup it
/// is constant on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMap {
    class_of: Vec<usize>,
    n: usize,
    m: u32,
    values: Vec<u32>,
}

impl TriMap {
    /// Evaluates `f` on coset representatives of `q`.
    pub fn over_quotient(q: &QuotientMap, m: u32, f: impl Fn(usize, usize, usize) -> u32) -> Self {
        let n = q.quotient().order();
        let class_of = (0..q.kernel().parent_order()).map(|x| q.coset_of(x)).collect();
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.push(f(q.section(a), q.section(b), q.section(c)) % m);
                }
            }
        }
        TriMap { class_of, n, m, values }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        let (a, b, c) = (self.class_of[x], self.class_of[y], self.class_of[z]);
        self.values[(a * self.n + b) * self.n + c]
    }

    /// `|G|`.
    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    pub fn value_modulus(&self) -> u32 {
        self.m
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise combination of maps sharing the same class structure.
    pub fn combine(&self, other: &TriMap, f: impl Fn(u32, u32) -> u32) -> TriMap {
        assert_eq!(self.class_of, other.class_of, "maps live on different quotients");
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b) % self.m).collect();
        TriMap { values, ..self.clone() }
    }
}

/// Lexicographically least triple on which `pred` fails.
pub fn first_triple(n: usize, mut pred: impl FnMut(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !pred(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Lexicographically least pair on which `pred` fails.
pub fn first_pair(n: usize, mut pred: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if !pred(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{build_group, parse_pc};

    fn d8() -> GroupTable {
        build_group(&parse_pc("gens 3\ng2^2 = g3\n[g2,g1] = g3\n").unwrap()).unwrap()
    }

    #[test]
    fn central_cyclic_rejects_noncentral() {
        let g = d8();
        assert!(CentralCyclic::new(&g, &g.closure(&[4])).is_err());
        let z = CentralCyclic::new(&g, &g.center()).unwrap();
        assert_eq!(z.modulus(), 2);
        assert_eq!(z.element(1), 1);
        assert_eq!(z.exponent_of(1), Some(1));
        assert_eq!(z.exponent_of(2), None);
    }

    #[test]
    fn central_cyclic_rejects_noncyclic() {
        let g = build_group(&parse_pc("gens 2\n").unwrap()).unwrap();
        assert!(CentralCyclic::new(&g, &g.whole()).is_err());
    }

    #[test]
    fn cocycle_invariants() {
        let g = d8();
        let z = CentralCyclic::new(&g, &g.center()).unwrap();
        let triv = Cocycle2::trivial(&g, &z, g.center());
        assert!(triv.validate(&g).is_ok());
        let mut v = triv.values().to_vec();
        v[2 * 8 + 4] = 1;
        let err = Cocycle2::new(&g, &z, g.center(), v.clone()).unwrap_err();
        assert!(matches!(err, Error::CocycleInvariant { .. }));
        // Trivial modulus accepts the same table.
        assert!(Cocycle2::new(&g, &z, g.trivial(), v).is_ok());
        let mut w = triv.values().to_vec();
        w[3] = 1;
        assert!(Cocycle2::new(&g, &z, g.trivial(), w).is_err());
    }
}
