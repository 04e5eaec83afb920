use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};

use super::{Cocycle2, TriMap};

/// `{t : φ(tx,y) = φ(xt,y) = φ(x,ty) = φ(x,yt) = φ(x,y) for all x, y}`.
pub fn rad1(g: &GroupTable, phi: &Cocycle2) -> Subgroup {
    let n = g.order();
    let members: Vec<usize> = (0..n)
        .filter(|&t| {
            (0..n).all(|x| {
                let (tx, xt) = (g.mul(t, x), g.mul(x, t));
                (0..n).all(|y| {
                    let v = phi.get(x, y);
                    phi.get(tx, y) == v
                        && phi.get(xt, y) == v
                        && phi.get(x, g.mul(t, y)) == v
                        && phi.get(x, g.mul(y, t)) == v
                })
            })
        })
        .collect();
    g.subgroup_from_set(&members).expect("insertion-invariant elements form a subgroup")
}

/// `{t : φ(t,x) = φ(x,t) = 1 for all x}`, as an ascending element list. This
/// need not be a subgroup.
pub fn rad2(g: &GroupTable, phi: &Cocycle2) -> Vec<usize> {
    let n = g.order();
    (0..n).filter(|&t| (0..n).all(|x| phi.get(t, x) == 0 && phi.get(x, t) == 0)).collect()
}

/// Normal core of [`rad1`].
pub fn radical(g: &GroupTable, phi: &Cocycle2) -> Subgroup {
    g.normal_core(&rad1(g, phi))
}

/// `{t : φ(t,x,y) = φ(x,t,y) = φ(x,y,t) = 1 for all x, y}` for a
/// multiplicative three-argument map.
pub fn radical3(g: &GroupTable, phi: &TriMap) -> Result<Subgroup> {
    let n = g.order();
    let members: Vec<usize> = (0..n)
        .filter(|&t| {
            (0..n).all(|x| (0..n).all(|y| phi.get(t, x, y) == 0 && phi.get(x, t, y) == 0 && phi.get(x, y, t) == 0))
        })
        .collect();
    g.subgroup_from_set(&members)
        .ok_or_else(|| Error::Precondition("radical of a non-multiplicative map is not a subgroup".into()))
}

/// Elements in which `φ` is multiplicative in every position.
pub fn mul_part(g: &GroupTable, phi: &Cocycle2) -> Result<Subgroup> {
    let n = g.order();
    let m = phi.value_modulus();
    let add = |a: u32, b: u32| (a + b) % m;
    let members: Vec<usize> = (0..n)
        .filter(|&t| {
            (0..n).all(|x| {
                let (tx, xt) = (g.mul(t, x), g.mul(x, t));
                (0..n).all(|y| {
                    let (ty, yt, xy) = (g.mul(t, y), g.mul(y, t), g.mul(x, y));
                    let left = add(phi.get(t, y), phi.get(x, y));
                    let right = add(phi.get(x, t), phi.get(x, y));
                    phi.get(tx, y) == left
                        && phi.get(xt, y) == left
                        && phi.get(x, ty) == right
                        && phi.get(x, yt) == right
                        && phi.get(xy, t) == add(phi.get(x, t), phi.get(y, t))
                        && phi.get(t, xy) == add(phi.get(t, x), phi.get(t, y))
                })
            })
        })
        .collect();
    g.subgroup_from_set(&members)
        .ok_or_else(|| Error::Precondition("multiplicative part is not closed; is the map normalized?".into()))
}
