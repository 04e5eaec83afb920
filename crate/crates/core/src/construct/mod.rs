//! Building a setup from a bare group: a standard basis, the forms `g` and
//! `f` it forces, the cocycle `δ`, and from there compatible parameter sets
//! and the loop cocycle `μ`.

mod params;

pub use params::{
    build_mu, check_a, check_param_set, default_param_set, extract_param_set, random_param_set,
    ParamFrame, ParamSet,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{GroupTable, QuotientMap, Subgroup};
use crate::report::{Check, Report};
use crate::setup::{check_b, first_triple, mul_part, radical, CentralCyclic, Cocycle2, Scenario, TriMap};

/// Elements `e1, e2, e3` whose classes form a basis of `G/M`, with
/// commutators `[e1,e2], [e1,e3], [e2,e3]` forming a basis of `M/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub e: [usize; 3],
    pub z: Subgroup,
    pub r: Subgroup,
    pub m: Subgroup,
    pub scenario: Scenario,
}

/// Scenario implied by a subgroup frame: `R = Z` gives (ii), `|R/Z| = 4`
/// gives (iii).
pub fn frame_scenario(z: &Subgroup, r: &Subgroup) -> Result<Scenario> {
    if !z.is_subset(r) {
        return Err(Error::Precondition("Z is not contained in R".into()));
    }
    match r.order() / z.order() {
        1 => Ok(Scenario::II),
        4 => Ok(Scenario::III),
        k => Err(Error::Precondition(format!("|R/Z| = {k}, expected 1 or 4"))),
    }
}

fn frame_preconditions(g: &GroupTable, z: &Subgroup, r: &Subgroup, m: &Subgroup) -> Result<()> {
    if !z.is_subset(r) || !r.is_subset(m) {
        return Err(Error::Precondition("frame must satisfy Z <= R <= M".into()));
    }
    for (name, s) in [("Z", z), ("R", r), ("M", m)] {
        if !g.is_normal(s) {
            return Err(Error::Precondition(format!("{name} is not normal")));
        }
    }
    Ok(())
}

/// Classes of the eight products `a^i b^j c^k` under `class`, or `None` if
/// two coincide.
fn independent(g: &GroupTable, [a, b, c]: [usize; 3], class: impl Fn(usize) -> usize) -> Option<[usize; 8]> {
    let mut out = [0; 8];
    for (bits, slot) in out.iter_mut().enumerate() {
        let mut x = 0;
        if bits & 1 != 0 {
            x = g.mul(x, a);
        }
        if bits & 2 != 0 {
            x = g.mul(x, b);
        }
        if bits & 4 != 0 {
            x = g.mul(x, c);
        }
        *slot = class(x);
    }
    let mut sorted = out;
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1]).then_some(out)
}

struct BasisContext {
    qm: QuotientMap,
    qz: QuotientMap,
    qr: QuotientMap,
}

impl BasisContext {
    fn new(g: &GroupTable, z: &Subgroup, r: &Subgroup, m: &Subgroup) -> Result<Self> {
        frame_preconditions(g, z, r, m)?;
        let ctx = BasisContext { qm: g.quotient(m)?, qz: g.quotient(z)?, qr: g.quotient(r)? };
        let gm = ctx.qm.quotient();
        if gm.order() != 8 || !gm.is_elementary_abelian(&gm.whole()) {
            return Err(Error::NoBasis(format!("G/M has order {} and is not elementary abelian of order 8", gm.order())));
        }
        let mz = ctx.qz.image(m);
        if mz.order() != 8 || !ctx.qz.quotient().is_elementary_abelian(&mz) {
            return Err(Error::NoBasis(format!("M/Z has order {} and is not elementary abelian of order 8", mz.order())));
        }
        Ok(ctx)
    }

    /// Why `e` is not a basis. With `normalized`, scenario (iii) also asks
    /// for `[e1,e2]R = [e1,e3]R`, which the search may assume but an explicit
    /// basis need not satisfy; the seed extension then decides.
    fn why_not(&self, g: &GroupTable, m: &Subgroup, scenario: Scenario, e: [usize; 3], normalized: bool) -> Option<String> {
        if independent(g, e, |x| self.qm.coset_of(x)).is_none() {
            return Some("classes modulo M are not a basis of G/M".into());
        }
        let c = [g.comm(e[0], e[1]), g.comm(e[0], e[2]), g.comm(e[1], e[2])];
        if c.iter().any(|&x| !m.contains(x)) || independent(g, c, |x| self.qz.coset_of(x)).is_none() {
            return Some("commutators are not a basis of M/Z".into());
        }
        if normalized && scenario == Scenario::III && self.qr.coset_of(c[0]) != self.qr.coset_of(c[1]) {
            return Some("[e1,e2]R != [e1,e3]R".into());
        }
        None
    }
}

/// Checks an explicitly given basis.
pub fn validate_basis(
    g: &GroupTable,
    z: &Subgroup,
    r: &Subgroup,
    m: &Subgroup,
    scenario: Scenario,
    e: [usize; 3],
) -> Result<StandardBasis> {
    let ctx = BasisContext::new(g, z, r, m)?;
    match ctx.why_not(g, m, scenario, e, false) {
        Some(msg) => Err(Error::NoBasis(format!("{e:?}: {msg}"))),
        None => Ok(StandardBasis { e, z: z.clone(), r: r.clone(), m: m.clone(), scenario }),
    }
}

/// The lexicographically least standard basis (by element index, over all
/// ordered triples).
pub fn find_standard_basis(
    g: &GroupTable,
    z: &Subgroup,
    r: &Subgroup,
    m: &Subgroup,
    scenario: Scenario,
) -> Result<StandardBasis> {
    let ctx = BasisContext::new(g, z, r, m)?;
    let n = g.order();
    for a in (0..n).filter(|&x| !m.contains(x)) {
        for b in (0..n).filter(|&x| !m.contains(x)) {
            for c in (0..n).filter(|&x| !m.contains(x)) {
                if ctx.why_not(g, m, scenario, [a, b, c], true).is_none() {
                    return Ok(StandardBasis { e: [a, b, c], z: z.clone(), r: r.clone(), m: m.clone(), scenario });
                }
            }
        }
    }
    Err(Error::NoBasis("no triple satisfies the basis conditions".into()))
}

/// Coordinates over GF(2) of every class of `G/M` in the basis.
fn coordinates(g: &GroupTable, qm: &QuotientMap, e: [usize; 3]) -> Vec<[u32; 3]> {
    let classes = independent(g, e, |x| qm.coset_of(x)).expect("basis was validated");
    let mut coords = vec![[0; 3]; qm.quotient().order()];
    for (bits, &c) in classes.iter().enumerate() {
        coords[c] = [(bits & 1) as u32, (bits >> 1 & 1) as u32, (bits >> 2 & 1) as u32];
    }
    coords
}

fn det3(a: [u32; 3], b: [u32; 3], c: [u32; 3]) -> u32 {
    let d = a[0] * (b[1] * c[2] + b[2] * c[1]) + a[1] * (b[0] * c[2] + b[2] * c[0]) + a[2] * (b[0] * c[1] + b[1] * c[0]);
    d % 2
}

fn require_order_two(z: &CentralCyclic) -> Result<()> {
    if z.modulus() != 2 {
        return Err(Error::Precondition(format!("|Z| = {}, expected 2", z.modulus())));
    }
    Ok(())
}

/// The alternating trilinear form on `G/M` with `g(e1,e2,e3) = -1`.
pub fn build_g_form(g: &GroupTable, z: &CentralCyclic, basis: &StandardBasis) -> Result<TriMap> {
    require_order_two(z)?;
    let qm = g.quotient(&basis.m)?;
    let coords = coordinates(g, &qm, basis.e);
    Ok(TriMap::over_quotient(&qm, 2, |x, y, w| {
        det3(coords[qm.coset_of(x)], coords[qm.coset_of(y)], coords[qm.coset_of(w)])
    }))
}

/// The trilinear map `f` on `G/M` forced by the basis, checked against `g`.
pub fn build_f(g: &GroupTable, z: &CentralCyclic, basis: &StandardBasis) -> Result<TriMap> {
    require_order_two(z)?;
    let e = basis.e;
    let h = |i: usize, j: usize, k: usize| -> Result<u32> {
        let c = g.comm(e[i], g.comm(e[j], e[k]));
        z.exponent_of(c).ok_or(Error::CommutatorOutsideZ { x: e[i], y: e[j], z: e[k] })
    };
    let mut fb = [[[0u32; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let v = h(i, i, j)?;
                fb[i][j][i] = v;
                fb[j][i][i] = v;
            }
        }
    }
    let v123 = (1 + h(0, 1, 2)? + h(1, 0, 2)?) % 2;
    fb[0][1][2] = v123;
    fb[1][0][2] = v123;
    let v132 = (1 + h(1, 0, 2)?) % 2;
    fb[0][2][1] = v132;
    fb[2][0][1] = v132;
    let v231 = (1 + h(0, 1, 2)?) % 2;
    fb[1][2][0] = v231;
    fb[2][1][0] = v231;

    let qm = g.quotient(&basis.m)?;
    let coords = coordinates(g, &qm, e);
    let f = TriMap::over_quotient(&qm, 2, |x, y, w| {
        let (a, b, c) = (coords[qm.coset_of(x)], coords[qm.coset_of(y)], coords[qm.coset_of(w)]);
        let mut s = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    s += a[i] * b[j] * c[k] * fb[i][j][k];
                }
            }
        }
        s % 2
    });
    let gf = build_g_form(g, z, basis)?;
    for a in 0..qm.quotient().order() {
        for b in 0..qm.quotient().order() {
            for c in 0..qm.quotient().order() {
                let (x, y, w) = (qm.section(a), qm.section(b), qm.section(c));
                let sum = (f.get(x, y, w) + f.get(y, w, x) + f.get(w, x, y)) % 2;
                if sum != gf.get(x, y, w) {
                    return Err(Error::Precondition(format!(
                        "forced values of f do not reproduce g at ({x}, {y}, {w})"
                    )));
                }
            }
        }
    }
    Ok(f)
}

/// The arbitrary values `δ(t_i, t_j)` for `1 < i < j <= n`, keyed by
/// 1-based transversal positions. Missing entries are trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeDeltaParams {
    pub values: BTreeMap<(usize, usize), u32>,
}

impl FreeDeltaParams {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        if v == 0 {
            self.values.remove(&(i, j));
        } else {
            self.values.insert((i, j), v);
        }
    }

    fn validate(&self, n: usize, m: u32) -> Result<()> {
        for (&(i, j), &v) in &self.values {
            if !(1 < i && i < j && j <= n) {
                return Err(Error::Precondition(format!("free parameter ({i},{j}) is not in 1 < i < j <= {n}")));
            }
            if v >= m {
                return Err(Error::Precondition(format!("free parameter ({i},{j}) = {v} is not reduced mod {m}")));
            }
        }
        Ok(())
    }
}

/// Transversal of `M` in `G`, identity first, used to index free parameters.
pub fn delta_transversal(g: &GroupTable, basis: &StandardBasis) -> Result<Vec<usize>> {
    g.transversal(&basis.m)
}

/// Extends the seed `δ([e_i,e_j], e_k) = f(e_i,e_j,e_k)` to a cocycle on
/// `G/R`, then checks the result. Fails if the seed does not define a map on
/// `M/R`.
pub fn build_delta(
    g: &GroupTable,
    z: &CentralCyclic,
    basis: &StandardBasis,
    f: &TriMap,
    params: &FreeDeltaParams,
) -> Result<(Cocycle2, Report)> {
    require_order_two(z)?;
    let e = basis.e;
    let qm = g.quotient(&basis.m)?;
    let qr = g.quotient(&basis.r)?;
    let coords = coordinates(g, &qm, e);
    let transversal = qm.quotient().elements().map(|c| qm.section(c)).collect::<Vec<_>>();
    params.validate(transversal.len(), 2)?;

    // Seed on M/R: each product of commutator generators gets the matching
    // combination of f-values; two products in one coset must agree.
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let comms = pairs.map(|(i, j)| g.comm(e[i], e[j]));
    let mut seed: BTreeMap<usize, ([u32; 3], String)> = BTreeMap::new();
    for bits in 0..8usize {
        let mut x = 0;
        let mut values = [0u32; 3];
        let mut names = Vec::new();
        for (p, &(i, j)) in pairs.iter().enumerate() {
            if bits >> p & 1 == 1 {
                x = g.mul(x, comms[p]);
                names.push(format!("[e{},e{}]", i + 1, j + 1));
                for (k, v) in values.iter_mut().enumerate() {
                    *v = (*v + f.get(e[i], e[j], e[k])) % 2;
                }
            }
        }
        let name = if names.is_empty() { "1".to_string() } else { names.join("*") };
        let coset = qr.coset_of(x);
        match seed.get(&coset) {
            Some((prev, prev_name)) if *prev != values => {
                return Err(Error::WellDefinedness {
                    first: format!("{prev_name} -> {prev:?}"),
                    second: format!("{name} -> {values:?}"),
                });
            }
            Some(_) => {}
            None => {
                seed.insert(coset, (values, name));
            }
        }
    }
    let m_classes: Vec<usize> = {
        let mut v: Vec<usize> = basis.m.elements().iter().map(|&x| qr.coset_of(x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if let Some(c) = m_classes.iter().find(|c| !seed.contains_key(c)) {
        return Err(Error::Precondition(format!("commutators of the basis do not reach coset {c} of M/R")));
    }

    // δ(m, w) for m in M and any w: linear in the coordinates of w.
    let delta_m = |mm: usize, w: usize| -> u32 {
        let (vals, _) = &seed[&qr.coset_of(mm)];
        let c = coords[qm.coset_of(w)];
        (0..3).map(|k| c[k] * vals[k]).sum::<u32>() % 2
    };
    let delta_t = |i: usize, j: usize| -> u32 {
        // 1-based positions.
        match i.cmp(&j) {
            std::cmp::Ordering::Less if i > 1 => params.get(i, j),
            std::cmp::Ordering::Greater if j > 1 => z.neg(params.get(j, i)),
            _ => 0,
        }
    };
    let decompose = |x: usize| -> (usize, usize) {
        let c = qm.coset_of(x);
        (g.mul(x, g.inv(transversal[c])), c + 1)
    };
    let n = g.order();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        let (mx, ix) = decompose(x);
        for y in 0..n {
            let (my, iy) = decompose(y);
            let v = delta_m(mx, transversal[iy - 1]) + z.neg(delta_m(my, transversal[ix - 1])) + delta_t(ix, iy);
            values.push(v % 2);
        }
    }
    let delta = Cocycle2::new(g, z, basis.r.clone(), values)?;

    let mut report = check_b(g, z, &delta);
    report.title = "constructed delta".into();
    report.push(Check::from_witness(
        "delta([x,y],z) = f(x,y,z)",
        first_triple(n, |x, y, w| delta.get(g.comm(x, y), w) == f.get(x, y, w)),
    ));
    let rad = radical(g, &delta);
    report.push(Check::from_bool("rad delta = R", rad == basis.r, format!("|rad delta| = {}", rad.order())));
    match mul_part(g, &delta) {
        Ok(mul) => report.push(Check::from_bool("mul delta = M", mul == basis.m, format!("|mul delta| = {}", mul.order()))),
        Err(e) => report.push(Check::fail("mul delta = M", Vec::new(), e.to_string())),
    }
    Ok((delta, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{build_group, parse_pc};

    #[test]
    fn elementary_abelian_has_no_basis() {
        let g = build_group(&parse_pc("gens 3\n").unwrap()).unwrap();
        let z = g.closure(&[1]);
        let err = find_standard_basis(&g, &z, &z, &g.whole(), Scenario::II).unwrap_err();
        assert!(matches!(err, Error::NoBasis(_)));
    }

    #[test]
    fn determinant_is_alternating() {
        let e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(det3(e[0], e[1], e[2]), 1);
        assert_eq!(det3(e[1], e[0], e[2]), 1);
        assert_eq!(det3(e[0], e[0], e[2]), 0);
        assert_eq!(det3([1, 1, 0], e[1], e[2]), 1);
    }
}
