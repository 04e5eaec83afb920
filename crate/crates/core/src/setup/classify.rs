use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupTable, Nilpotency, Subgroup};
use crate::report::{Check, Report};

use super::checks::SetupData;
use super::{is_nontrivial, CentralCyclic, Cocycle2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    I,
    II,
    III,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::I => "i",
            Scenario::II => "ii",
            Scenario::III => "iii",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Scenario(Scenario),
    /// The first clause that failed.
    NotMinimalShape(String),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Scenario(s) => write!(f, "{s}"),
            Classification::NotMinimalShape(c) => write!(f, "not-minimal-shape ({c})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub classification: Classification,
    /// Every clause that was evaluated, in order.
    pub report: Report,
}

/// `A` and `B` as sets.
fn same(a: &Subgroup, b: &Subgroup) -> bool {
    a == b
}

/// `A/B` is an elementary abelian 2-group (B normal in A).
fn elementary_2_quotient(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> bool {
    let e = a.elements();
    e.iter().all(|&x| b.contains(g.mul(x, x))) && e.iter().all(|&x| e.iter().all(|&y| b.contains(g.comm(x, y))))
}

/// Sorts a minimal setup of order 128 into one of the three scenarios.
pub fn classify_scenario(g: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Result<ScenarioReport> {
    if g.order() != 128 {
        return Err(Error::WrongOrder { expected: 128, actual: g.order() });
    }
    if is_nontrivial(g, delta).is_none() {
        return Err(Error::TrivialSetup);
    }
    let d = SetupData::new(g, z, delta);
    let (rad_f, rad_g, mul) = match (&d.rad_f, &d.rad_g, &d.mul_delta) {
        (Ok(a), Ok(b), Ok(c)) => (a.clone(), b.clone(), c.clone()),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Err(e.clone()),
    };
    let zs = z.subgroup();
    let rad = &d.rad_delta;
    let derived = g.derived();
    let g_prime_z = g.product(&derived, zs);
    let mut r = Report::new("scenario clauses");

    r.push(Check::from_bool("|Z| = 2", zs.order() == 2, format!("|Z| = {}", zs.order())));
    r.push(Check::from_bool("rad g = rad f", same(&rad_g, &rad_f), ""));
    r.push(Check::from_bool("rad f = mul delta", same(&rad_f, &mul), ""));
    r.push(Check::from_bool("mul delta = G'Z", same(&mul, &g_prime_z), ""));
    r.push(Check::from_bool(
        "mul delta / rad delta elementary abelian 2-group",
        rad.is_subset(&mul) && elementary_2_quotient(g, &mul, rad),
        "",
    ));
    r.push(Check::from_bool(
        "G / rad g elementary abelian of order 8",
        g.order() == 8 * rad_g.order() && elementary_2_quotient(g, &g.whole(), &rad_g),
        format!("|G/rad g| = {}", g.order() / rad_g.order()),
    ));
    let k = g.quotient(zs)?;
    let kt = k.quotient();
    let (k_der, k_cen) = (kt.derived(), kt.center());
    r.push(Check::from_bool("K = G/Z has order 64", kt.order() == 64, format!("|K| = {}", kt.order())));
    r.push(Check::from_bool("|K'| = 8", k_der.order() == 8, format!("|K'| = {}", k_der.order())));
    r.push(Check::from_bool("K' = Z(K)", same(&k_der, &k_cen), ""));

    let ratio = mul.order() / rad.order();
    let gbar_center = g.center_modulo(rad);
    let gbar_derived = g.product(&derived, rad);
    let center_in_radf = gbar_center.is_subset(&rad_f);
    let g_g_prime = g.commutator_sub(&g.whole(), &derived);
    let scenario = match g.nilpotency_class() {
        Nilpotency::Class(2) => {
            r.push(Check::from_bool("(i) G' < mul delta", derived.is_subset(&mul) && derived.order() < mul.order(), ""));
            r.push(Check::from_bool("(i) mul delta = Z(G)", same(&mul, &g.center()), ""));
            r.push(Check::from_bool("(i) Z(G/rad delta) = rad f / rad delta", same(&gbar_center, &rad_f), ""));
            r.push(Check::from_bool("(i) rad f / rad delta = (G/rad delta)'", same(&rad_f, &gbar_derived), ""));
            r.push(Check::from_bool("(i) |mul delta / rad delta| = 8", ratio == 8, format!("{ratio}")));
            r.push(Check::from_bool("(i) rad delta = Z", same(rad, zs), ""));
            let f_eq_g = match (&d.f, &d.g) {
                (Ok(f), Some(gm)) => f == gm,
                _ => false,
            };
            r.push(Check::from_bool("(i) f = g", f_eq_g, ""));
            Some(Scenario::I)
        }
        Nilpotency::Class(3) if center_in_radf => {
            r.push(Check::from_bool("(ii) Z = [G,G']", same(zs, &g_g_prime), ""));
            r.push(Check::from_bool("(ii) G' = mul delta", same(&derived, &mul), ""));
            r.push(Check::from_bool("(ii) Z(G/rad delta) = rad f / rad delta", same(&gbar_center, &rad_f), ""));
            r.push(Check::from_bool("(ii) rad f / rad delta = (G/rad delta)'", same(&rad_f, &gbar_derived), ""));
            r.push(Check::from_bool("(ii) |mul delta / rad delta| = 8", ratio == 8, format!("{ratio}")));
            r.push(Check::from_bool("(ii) rad delta = Z", same(rad, zs), ""));
            Some(Scenario::II)
        }
        Nilpotency::Class(3) => {
            r.push(Check::from_bool("(iii) Z = [G,G']", same(zs, &g_g_prime), ""));
            r.push(Check::from_bool("(iii) Z <= G'", zs.is_subset(&derived), ""));
            r.push(Check::from_bool("(iii) G' = mul delta", same(&derived, &mul), ""));
            r.push(Check::pass("(iii) Z(G/rad delta) not inside rad f / rad delta"));
            r.push(Check::from_bool("(iii) |mul delta / rad delta| = 2", ratio == 2, format!("{ratio}")));
            let klein = rad.order() == 4 * zs.order()
                && zs.is_subset(rad)
                && rad.elements().iter().all(|&x| zs.contains(g.mul(x, x)));
            r.push(Check::from_bool("(iii) rad delta / Z is the Klein group", klein, format!("|rad delta| = {}", rad.order())));
            Some(Scenario::III)
        }
        other => {
            r.push(Check::fail("cl(G) in {2, 3}", Vec::new(), format!("{other:?}")));
            None
        }
    };
    let classification = match (r.first_failure(), scenario) {
        (Some(c), _) => Classification::NotMinimalShape(c.name.clone()),
        (None, Some(s)) => Classification::Scenario(s),
        (None, None) => unreachable!("a failing clause was pushed"),
    };
    Ok(ScenarioReport { classification, report: r })
}
