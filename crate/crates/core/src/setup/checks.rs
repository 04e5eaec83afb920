use crate::error::{Error, Result};
use crate::group::{GroupTable, Nilpotency, Subgroup};
use crate::report::{Check, Report};

use super::{first_pair, first_triple, mul_part, radical, radical3, CentralCyclic, Cocycle2, TriMap};

/// Lexicographically least `(x, y, z)` violating
/// `z^(yx) δ([z,y],x) = z^(xy) δ([z,x],y)`.
pub fn b4_violation(g: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Option<Vec<usize>> {
    first_triple(g.order(), |x, y, w| {
        let (xy, yx) = (g.mul(x, y), g.mul(y, x));
        let lhs = g.mul(g.conj(w, yx), z.element(delta.get(g.comm(w, y), x)));
        let rhs = g.mul(g.conj(w, xy), z.element(delta.get(g.comm(w, x), y)));
        lhs == rhs
    })
}

fn constant_mod(g: &GroupTable, delta: &Cocycle2, k: &Subgroup) -> Option<Vec<usize>> {
    first_pair(g.order(), |x, y| {
        let v = delta.get(x, y);
        k.gens().iter().all(|&s| delta.get(g.mul(x, s), y) == v && delta.get(x, g.mul(y, s)) == v)
    })
}

/// Conditions B0–B4 of a setup `(G, Z, δ)`.
pub fn check_b(g: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Report {
    let n = g.order();
    let mut r = Report::new("setup conditions B0-B4");
    let center = g.center();
    let outside = z.subgroup().elements().iter().copied().find(|&x| !center.contains(x));
    r.push(Check::from_witness("B0 Z <= Z(G)", outside.map(|x| vec![x])));
    r.push(Check::from_witness("B0 delta constant modulo Z", constant_mod(g, delta, z.subgroup())));
    r.push(Check::from_witness(
        "B1 delta(x,x) = 1",
        (0..n).find(|&x| delta.get(x, x) != 0).map(|x| vec![x]),
    ));
    r.push(Check::from_witness(
        "B2 delta(x,y) = delta(y,x)^-1",
        first_pair(n, |x, y| z.add(delta.get(x, y), delta.get(y, x)) == 0),
    ));
    let derived = g.derived();
    r.push(Check::from_witness(
        "B3 delta(xy,z) = delta(x,z) delta(y,z) when {x,y,z} meets G'",
        first_triple(n, |x, y, w| {
            if !(derived.contains(x) || derived.contains(y) || derived.contains(w)) {
                return true;
            }
            delta.get(g.mul(x, y), w) == z.add(delta.get(x, w), delta.get(y, w))
        }),
    ));
    r.push(Check::from_witness("B4 z^(yx) delta([z,y],x) = z^(xy) delta([z,x],y)", b4_violation(g, z, delta)));
    r
}

/// `f(x,y,z) = δ([x,y], z)`.
pub fn derive_f(g: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Result<TriMap> {
    if let Some(w) = constant_mod(g, delta, z.subgroup()) {
        return Err(Error::CocycleInvariant { x: w[0], y: w[1], msg: "not constant modulo Z".into() });
    }
    let q = g.quotient(z.subgroup())?;
    Ok(TriMap::over_quotient(&q, z.modulus(), |x, y, w| delta.get(g.comm(x, y), w)))
}

/// `g(x,y,z) = f(x,y,z) f(y,z,x) f(z,x,y)`.
pub fn derive_g(f: &TriMap) -> TriMap {
    let n = f.n;
    let at = |a: usize, b: usize, c: usize| f.values[(a * n + b) * n + c];
    let mut values = Vec::with_capacity(f.values.len());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                values.push((at(a, b, c) + at(b, c, a) + at(c, a, b)) % f.m);
            }
        }
    }
    TriMap { values, ..f.clone() }
}

/// `h(x,y,z) = [x,[y,z]]`, which must land in `Z`.
pub fn derive_h(g: &GroupTable, z: &CentralCyclic) -> Result<TriMap> {
    if let Some(w) = first_triple(g.order(), |x, y, v| z.exponent_of(g.comm(x, g.comm(y, v))).is_some()) {
        return Err(Error::CommutatorOutsideZ { x: w[0], y: w[1], z: w[2] });
    }
    let q = g.quotient(z.subgroup())?;
    Ok(TriMap::over_quotient(&q, z.modulus(), |x, y, v| {
        z.exponent_of(g.comm(x, g.comm(y, v))).expect("checked above")
    }))
}

/// Lexicographically least triple with `g(x,y,z) != 1`, if any.
pub fn is_nontrivial(g: &GroupTable, delta: &Cocycle2) -> Option<Vec<usize>> {
    let m = delta.value_modulus();
    first_triple(g.order(), |x, y, w| {
        let v = delta.get(g.comm(x, y), w) + delta.get(g.comm(y, w), x) + delta.get(g.comm(w, x), y);
        v % m == 0
    })
}

/// Witness against multiplicativity in some slot, using the criterion
/// `φ(..., xs, ...) = φ(..., x, ...) φ(..., s, ...)` for `s` in a generating set.
fn multiplicativity_violation(g: &GroupTable, gens: &[usize], phi: &TriMap) -> Option<Vec<usize>> {
    let n = g.order();
    let m = phi.value_modulus();
    for slot in 0..3 {
        for x in 0..n {
            for &s in gens {
                let xs = g.mul(x, s);
                for a in 0..n {
                    for b in 0..n {
                        let (l, r1, r2) = match slot {
                            0 => (phi.get(xs, a, b), phi.get(x, a, b), phi.get(s, a, b)),
                            1 => (phi.get(a, xs, b), phi.get(a, x, b), phi.get(a, s, b)),
                            _ => (phi.get(a, b, xs), phi.get(a, b, x), phi.get(a, b, s)),
                        };
                        if l != (r1 + r2) % m {
                            return Some(vec![slot, x, s, a, b]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Everything derived from a setup once, shared by the checks below.
#[derive(Clone, Debug)]
pub struct SetupData {
    pub f: Result<TriMap>,
    pub g: Option<TriMap>,
    pub h: Result<TriMap>,
    pub rad_delta: Subgroup,
    pub mul_delta: Result<Subgroup>,
    pub rad_f: Result<Subgroup>,
    pub rad_g: Result<Subgroup>,
    pub rad_h: Result<Subgroup>,
}

impl SetupData {
    pub fn new(grp: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Self {
        let f = derive_f(grp, z, delta);
        let g = f.as_ref().ok().map(derive_g);
        let h = derive_h(grp, z);
        let rad_f = f.as_ref().map_err(Clone::clone).and_then(|f| radical3(grp, f));
        let rad_g = match &g {
            Some(g) => radical3(grp, g),
            None => Err(Error::Precondition("g is undefined".into())),
        };
        let rad_h = h.as_ref().map_err(Clone::clone).and_then(|h| radical3(grp, h));
        SetupData {
            f,
            g,
            h,
            rad_delta: radical(grp, delta),
            mul_delta: mul_part(grp, delta),
            rad_f,
            rad_g,
            rad_h,
        }
    }
}

fn subset_check(name: &str, a: &Result<Subgroup>, b: &Result<Subgroup>) -> Check {
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let w = a.elements().iter().copied().find(|&x| !b.contains(x));
            Check::from_witness(name, w.map(|x| vec![x]))
        }
        (Err(e), _) | (_, Err(e)) => Check::fail(name, Vec::new(), e.to_string()),
    }
}

fn map_check(name: &str, map: &Result<TriMap>, test: impl FnOnce(&TriMap) -> Option<Vec<usize>>) -> Check {
    match map {
        Ok(m) => Check::from_witness(name, test(m)),
        Err(e) => Check::fail(name, Vec::new(), e.to_string()),
    }
}

/// The properties of `f`, `g`, `h` that every setup must have.
pub fn check_fgh(grp: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Report {
    let d = SetupData::new(grp, z, delta);
    check_fgh_with(grp, z, &d)
}

pub fn check_fgh_with(grp: &GroupTable, z: &CentralCyclic, d: &SetupData) -> Report {
    let n = grp.order();
    let gens = grp.generating_set();
    let mut r = Report::new("maps f, g, h");
    let g_res: Result<TriMap> = d.g.clone().ok_or_else(|| Error::Precondition("g is undefined".into()));

    let outside = first_triple(n, |x, y, w| z.exponent_of(grp.comm(x, grp.comm(y, w))).is_some());
    r.push(Check::from_witness("(i) [G,G'] <= Z", outside.clone()));
    let k = grp.quotient(z.subgroup()).map(|q| q.quotient().nilpotency_class());
    r.push(Check::from_bool(
        "(i) cl(G/Z) <= 2",
        matches!(k, Ok(Nilpotency::Class(c)) if c <= 2),
        format!("{k:?}"),
    ));
    let cl = grp.nilpotency_class();
    r.push(Check::from_bool("(i) cl(G) <= 3", matches!(cl, Nilpotency::Class(c) if c <= 3), format!("{cl:?}")));
    r.push(Check::from_witness(
        "(i) z^-(xy) z^(yx) = [z,[y^-1,x^-1]]^(xy)",
        first_triple(n, |x, y, w| {
            let (xy, yx) = (grp.mul(x, y), grp.mul(y, x));
            let lhs = grp.mul(grp.inv(grp.conj(w, xy)), grp.conj(w, yx));
            lhs == grp.conj(grp.comm(w, grp.comm(grp.inv(y), grp.inv(x))), xy)
        }),
    ));
    // Two expressions for the same value: the commutator [z,[y,x]] and the
    // quotient f(z,x,y) f(z,y,x)^-1 of f-values. Both are computed and compared.
    r.push(match (&d.f, &d.h) {
        (Ok(f), Ok(h)) => Check::from_witness(
            "(i) f(z,x,y) = h(z,y,x) f(z,y,x)",
            first_triple(n, |w, x, y| f.get(w, x, y) == z.add(h.get(w, y, x), f.get(w, y, x))),
        ),
        (Err(e), _) | (_, Err(e)) => Check::fail("(i) f(z,x,y) = h(z,y,x) f(z,y,x)", Vec::new(), e.to_string()),
    });

    r.push(map_check("(ii) f multiplicative", &d.f, |f| multiplicativity_violation(grp, &gens, f)));
    r.push(subset_check("(ii) mul delta <= rad f", &d.mul_delta, &d.rad_f));
    r.push(map_check("(ii) f(x,y,z) = f(y,x,z)^-1", &d.f, |f| {
        first_triple(n, |x, y, w| z.add(f.get(x, y, w), f.get(y, x, w)) == 0)
    }));

    r.push(map_check("(iii) g multiplicative", &g_res, |g| multiplicativity_violation(grp, &gens, g)));
    r.push(subset_check("(iii) rad f <= rad g", &d.rad_f, &d.rad_g));
    r.push(map_check("(iii) g(x,y,z) = g(y,z,x)", &g_res, |g| {
        first_triple(n, |x, y, w| g.get(x, y, w) == g.get(y, w, x))
    }));
    r.push(map_check("(iii) g(x,y,z) = g(y,x,z)^-1", &g_res, |g| {
        first_triple(n, |x, y, w| z.add(g.get(x, y, w), g.get(y, x, w)) == 0)
    }));

    r.push(map_check("(iv) h multiplicative", &d.h, |h| multiplicativity_violation(grp, &gens, h)));
    r.push(Check::from_witness("(iv) im h <= Z", outside));
    r.push(subset_check("(iv) rad f <= rad h", &d.rad_f, &d.rad_h));
    r.push(map_check("(iv) h(x,y,z) = h(x,z,y)^-1", &d.h, |h| {
        first_triple(n, |x, y, w| z.add(h.get(x, y, w), h.get(x, w, y)) == 0)
    }));

    r.push(map_check("(v) g(x,y,z)^2 = 1", &g_res, |g| first_triple(n, |x, y, w| z.add(g.get(x, y, w), g.get(x, y, w)) == 0)));
    r.push(map_check("(v) g(x,x,y) = 1", &g_res, |g| first_pair(n, |x, y| g.get(x, x, y) == 0)));
    r.push(match &d.rad_g {
        Ok(rg) => match grp.quotient(rg) {
            Ok(q) => {
                let qt = q.quotient();
                let ok = qt.exponent(&qt.whole()) <= 2;
                Check::from_bool("(v) G/rad g elementary abelian 2-group", ok, format!("order {}", qt.order()))
            }
            Err(e) => Check::fail("(v) G/rad g elementary abelian 2-group", Vec::new(), e.to_string()),
        },
        Err(e) => Check::fail("(v) G/rad g elementary abelian 2-group", Vec::new(), e.to_string()),
    });
    r.push(Check::from_witness(
        "(v) [x,[y,z]][y,[z,x]][z,[x,y]] = 1",
        first_triple(n, |x, y, w| {
            let a = grp.comm(x, grp.comm(y, w));
            let b = grp.comm(y, grp.comm(w, x));
            let c = grp.comm(w, grp.comm(x, y));
            grp.mul(grp.mul(a, b), c) == 0
        }),
    ));
    r.push(Check::from_witness(
        "(v) Hall-Witt identity",
        first_triple(n, |x, y, w| {
            let a = grp.conj(grp.comm(grp.comm(x, grp.inv(y)), w), y);
            let b = grp.conj(grp.comm(grp.comm(y, grp.inv(w)), x), w);
            let c = grp.conj(grp.comm(grp.comm(w, grp.inv(x)), y), x);
            grp.mul(grp.mul(a, b), c) == 0
        }),
    ));
    r
}

/// `G >= rad g >= rad f >= mul δ >= rad δ >= Z`.
pub fn check_inclusion_chain(grp: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Report {
    let d = SetupData::new(grp, z, delta);
    check_inclusion_chain_with(z, &d)
}

pub fn check_inclusion_chain_with(z: &CentralCyclic, d: &SetupData) -> Report {
    let mut r = Report::new("inclusion chain");
    let rad_delta = Ok(d.rad_delta.clone());
    r.push(subset_check("rad f <= rad g", &d.rad_f, &d.rad_g));
    r.push(subset_check("mul delta <= rad f", &d.mul_delta, &d.rad_f));
    r.push(subset_check("rad delta <= mul delta", &rad_delta, &d.mul_delta));
    r.push(subset_check("Z <= rad delta", &Ok(z.subgroup().clone()), &rad_delta));
    r
}
