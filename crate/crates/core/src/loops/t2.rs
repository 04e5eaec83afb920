use crate::group::GroupTable;
use crate::report::{Check, Report};
use crate::setup::{first_pair, CentralCyclic, Cocycle2, TriMap};

use super::LoopTable;

/// The middle inner mappings of `Q = G[μ]` against the group: the formula
/// `T_x(y) = y^x μ(y,x) μ(x,y^x)`, its square
/// `T_x^2(y) = y^(x^2) f(y,x,x)`, and a pair showing some `T_x^2` is not the
/// identity although `f(y,x,x) = 1`.
pub fn check_t2(g: &GroupTable, z: &CentralCyclic, q: &LoopTable, mu: &Cocycle2, f: &TriMap) -> Report {
    let n = g.order();
    let mut r = Report::new("middle inner mappings");
    r.push(Check::from_witness(
        "T_x(y) = y^x mu(y,x) mu(x,y^x)",
        first_pair(n, |x, y| {
            let yx = g.conj(y, x);
            let e = z.add(mu.get(y, x), mu.get(x, yx));
            q.middle_inner_mapping(x, y) == g.mul(yx, z.element(e))
        }),
    ));
    r.push(Check::from_witness(
        "T_x^2(y) = y^(x^2) f(y,x,x)",
        first_pair(n, |x, y| {
            let t = q.middle_inner_mapping(x, q.middle_inner_mapping(x, y));
            t == g.mul(g.conj(y, g.mul(x, x)), z.element(f.get(y, x, x)))
        }),
    ));
    let witness = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| {
        g.comm(y, g.mul(x, x)) != 0
            && g.comm(x, g.comm(x, y)) == 0
            && f.get(y, x, x) == 0
            && q.middle_inner_mapping(x, q.middle_inner_mapping(x, y)) != y
    });
    let mut c = Check::from_bool(
        "some T_x^2 is not the identity: [y,x^2] != 1, [x,[x,y]] = 1",
        witness.is_some(),
        "no such pair",
    );
    if let Some((x, y)) = witness {
        c.witness = vec![x, y];
    }
    r.push(c);
    r
}
