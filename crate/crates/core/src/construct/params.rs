use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{GroupTable, QuotientMap, Subgroup};
use crate::report::{Check, Report};
use crate::setup::{b4_violation, first_pair, first_triple, radical, CentralCyclic, Cocycle2};

/// `R = rad δ`, `N = G'R`, `Ḡ = G/R`, `N̄ = N/R` and a transversal
/// `t_1 = 1, ..., t_n` of `N̄` in `Ḡ`, with every element of `Ḡ` written
/// as `k·t`.
///
/// Elements of `Ḡ` are indices into `quotient().quotient()`.
#[derive(Clone, Debug)]
pub struct ParamFrame {
    pub r: Subgroup,
    pub n: Subgroup,
    qr: QuotientMap,
    /// Elements of `N̄`, ascending.
    nbar: Vec<usize>,
    /// Position in `nbar`, for elements of `N̄`.
    k_pos: Vec<Option<usize>>,
    /// `t_1, ..., t_n` as elements of `Ḡ` (0-based storage).
    t: Vec<usize>,
    /// `ā = nbar[decomp[ā].0] · t[decomp[ā].1]`.
    decomp: Vec<(usize, usize)>,
    /// δ on `Ḡ`.
    delta: Vec<u32>,
    m: u32,
}

impl ParamFrame {
    pub fn new(g: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) -> Result<Self> {
        let r = radical(g, delta);
        if !z.subgroup().is_subset(&r) {
            return Err(Error::Precondition("Z is not contained in rad delta".into()));
        }
        let n = g.product(&g.derived(), &r);
        let qr = g.quotient(&r)?;
        let gbar = qr.quotient();
        let nsub = qr.image(&n);
        let nbar = nsub.elements().to_vec();
        let mut k_pos = vec![None; gbar.order()];
        for (i, &k) in nbar.iter().enumerate() {
            k_pos[k] = Some(i);
        }
        let t = gbar.transversal(&nsub)?;
        let qn = gbar.quotient(&nsub)?;
        let decomp = (0..gbar.order())
            .map(|a| {
                let c = qn.coset_of(a);
                let k = gbar.mul(a, gbar.inv(t[c]));
                (k_pos[k].expect("a t^-1 lies in N"), c)
            })
            .collect();
        let q = gbar.order();
        let dv = (0..q * q).map(|i| delta.get(qr.section(i / q), qr.section(i % q))).collect();
        Ok(ParamFrame { r, n, qr, nbar, k_pos, t, decomp, delta: dv, m: z.modulus() })
    }

    pub fn quotient(&self) -> &QuotientMap {
        &self.qr
    }

    pub fn gbar(&self) -> &GroupTable {
        self.qr.quotient()
    }

    /// Elements of `N̄` as elements of `Ḡ`, ascending.
    pub fn nbar(&self) -> &[usize] {
        &self.nbar
    }

    /// Transversal `t_1, ..., t_n` as elements of `Ḡ`; `t_1` is the identity.
    pub fn transversal(&self) -> &[usize] {
        &self.t
    }

    /// `|Z|`.
    pub fn value_modulus(&self) -> u32 {
        self.m
    }

    /// Number of transversal elements.
    pub fn width(&self) -> usize {
        self.t.len()
    }

    /// Position of an element of `Ḡ` in `nbar`, if it lies in `N̄`.
    pub fn k_position(&self, a: usize) -> Option<usize> {
        self.k_pos[a]
    }

    fn delta_bar(&self, a: usize, b: usize) -> u32 {
        self.delta[a * self.gbar().order() + b]
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.m
    }

    /// Representative in `G` of an element of `Ḡ`.
    fn lift(&self, a: usize) -> usize {
        self.qr.section(a)
    }
}

/// A compatible parameter set: `ψ_k` for `k ∈ N̄` (tables over `Ḡ`),
/// `φ_i` for transversal positions (tables over `N̄`), and `τ_ij` for
/// `i ≤ j`. Indices are 0-based; position 0 is `t_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamSet {
    pub psi: Vec<Vec<u32>>,
    pub phi: Vec<Vec<u32>>,
    /// `tau[i][j]`, meaningful for `i <= j`.
    pub tau: Vec<Vec<u32>>,
}

/// `ψ_k = δ(k,-)`, `φ_i = δ(-,t_i)`, `τ_ij = δ(t_i,t_j)`.
pub fn default_param_set(frame: &ParamFrame) -> ParamSet {
    let q = frame.gbar().order();
    let psi = frame.nbar.iter().map(|&k| (0..q).map(|x| frame.delta_bar(k, x)).collect()).collect();
    let phi = frame.t.iter().map(|&t| frame.nbar.iter().map(|&k| frame.delta_bar(k, t)).collect()).collect();
    let tau = frame
        .t
        .iter()
        .enumerate()
        .map(|(i, &a)| frame.t.iter().enumerate().map(|(j, &b)| if j < i { 0 } else { frame.delta_bar(a, b) }).collect())
        .collect();
    ParamSet { psi, phi, tau }
}

/// A compatible parameter set perturbing the default one:
/// `ψ_k = δ(k,-) + α(k)β + β(k)α` for random homomorphisms `α, β: Ḡ -> Z`,
/// `φ_i(k) = ψ_k(t_i)`, and random `τ_ij` for `2 <= i <= j`.
pub fn random_param_set(frame: &ParamFrame, rng: &mut impl Rng) -> ParamSet {
    let homs = frame.gbar().homomorphisms_to_cyclic(frame.m);
    let alpha = homs.choose(rng).expect("the trivial homomorphism exists");
    let beta = homs.choose(rng).expect("the trivial homomorphism exists");
    let q = frame.gbar().order();
    let m = frame.m;
    let psi: Vec<Vec<u32>> = frame
        .nbar
        .iter()
        .map(|&k| (0..q).map(|x| (frame.delta_bar(k, x) + alpha[k] * beta[x] + beta[k] * alpha[x]) % m).collect())
        .collect();
    let phi = frame.t.iter().map(|&t| psi.iter().map(|row| row[t]).collect()).collect();
    let n = frame.width();
    let tau = (0..n)
        .map(|i| (0..n).map(|j| if i == 0 || j < i { 0 } else { rng.gen_range(0..m) }).collect())
        .collect();
    ParamSet { psi, phi, tau }
}

/// The five compatibility conditions, checked exhaustively. Witnesses are
/// representatives in `G`.
pub fn check_param_set(frame: &ParamFrame, p: &ParamSet) -> Report {
    let gbar = frame.gbar();
    let q = gbar.order();
    let nk = frame.nbar.len();
    let n = frame.width();
    let mut r = Report::new("compatible parameter set");
    let shape = p.psi.len() == nk
        && p.psi.iter().all(|row| row.len() == q)
        && p.phi.len() == n
        && p.phi.iter().all(|row| row.len() == nk)
        && p.tau.len() == n
        && p.tau.iter().all(|row| row.len() == n);
    r.push(Check::from_bool("table shapes", shape, format!("|N| = {nk}, |G/R| = {q}, n = {n}")));
    if !shape {
        return r;
    }
    let reduced = p.psi.iter().chain(&p.phi).chain(&p.tau).flatten().all(|&v| v < frame.m);
    r.push(Check::from_bool("values lie in Z", reduced, ""));
    if !reduced {
        return r;
    }
    let lift = |a: usize| frame.lift(a);
    let hom_witness = (0..nk).find_map(|kp| {
        first_pair(q, |x, y| p.psi[kp][gbar.mul(x, y)] == frame.add(p.psi[kp][x], p.psi[kp][y]))
            .map(|w| vec![lift(frame.nbar[kp]), lift(w[0]), lift(w[1])])
    });
    r.push(Check::from_witness("psi_k is a homomorphism", hom_witness));
    r.push(Check::from_witness(
        "psi_k'(k) = delta(k',k) psi_k(k')",
        first_pair(nk, |a, b| {
            let (k, k2) = (frame.nbar[a], frame.nbar[b]);
            p.psi[b][k] == frame.add(frame.delta_bar(k2, k), p.psi[a][k2])
        })
        .map(|w| vec![lift(frame.nbar[w[0]]), lift(frame.nbar[w[1]])]),
    ));
    let phi_witness = (0..n).find_map(|i| {
        first_pair(nk, |a, b| {
            let ab = frame.k_pos[gbar.mul(frame.nbar[a], frame.nbar[b])].expect("N is a subgroup");
            p.phi[i][ab] == frame.add(p.phi[i][a], p.phi[i][b])
        })
        .map(|w| vec![i + 1, lift(frame.nbar[w[0]]), lift(frame.nbar[w[1]])])
    });
    r.push(Check::from_witness("phi_i is a homomorphism", phi_witness));
    r.push(Check::from_witness(
        "psi_k(t_i) = phi_i(k)",
        first_pair(nk, |a, i| i >= n || p.psi[a][frame.t[i]] == p.phi[i][a])
            .map(|w| vec![lift(frame.nbar[w[0]]), w[1] + 1]),
    ));
    r.push(Check::from_witness("tau_1i = 1", (0..n).find(|&i| p.tau[0][i] != 0).map(|i| vec![1, i + 1])));
    r
}

/// `μ_P` from the six-line definition, as a cocycle on `G` with modulus `R`.
/// The overlapping cases of the first five lines are rechecked and any
/// disagreement is reported as an incompatibility.
pub fn build_mu(g: &GroupTable, z: &CentralCyclic, frame: &ParamFrame, p: &ParamSet) -> Result<Cocycle2> {
    let report = check_param_set(frame, p);
    if let Some(c) = report.checks.iter().find(|c| !c.passed && (c.name == "table shapes" || c.name == "values lie in Z")) {
        return Err(Error::Incompatible(format!("{}: {}", c.name, c.note)));
    }
    let q = frame.gbar().order();
    let n = frame.width();
    let mut base: Vec<Option<u32>> = vec![None; q * q];
    let mut assign = |a: usize, b: usize, v: u32, line: usize| -> Result<()> {
        match base[a * q + b] {
            Some(prev) if prev != v => Err(Error::Incompatible(format!(
                "line {line} gives mu({}, {}) = {v}, earlier lines gave {prev}",
                frame.lift(a),
                frame.lift(b)
            ))),
            _ => {
                base[a * q + b] = Some(v);
                Ok(())
            }
        }
    };
    for (a, &k) in frame.nbar.iter().enumerate() {
        for (b, &k2) in frame.nbar.iter().enumerate() {
            let _ = b;
            assign(k, k2, p.psi[a][k2], 1)?;
        }
    }
    for (a, &k) in frame.nbar.iter().enumerate() {
        for i in 0..n {
            assign(k, frame.t[i], p.phi[i][a], 2)?;
        }
    }
    for (a, &k) in frame.nbar.iter().enumerate() {
        for i in 0..n {
            let t = frame.t[i];
            assign(t, k, frame.add(frame.delta_bar(t, k), p.phi[i][a]), 3)?;
        }
    }
    for i in 0..n {
        for j in i..n {
            assign(frame.t[i], frame.t[j], p.tau[i][j], 4)?;
        }
    }
    for i in 0..n {
        for j in i..n {
            let (ti, tj) = (frame.t[i], frame.t[j]);
            assign(tj, ti, frame.add(frame.delta_bar(tj, ti), p.tau[i][j]), 5)?;
        }
    }
    let at = |a: usize, b: usize| base[a * q + b].expect("lines one to five cover (N u T)^2");
    let mut mubar = vec![0u32; q * q];
    for x in 0..q {
        let (kx, tx) = frame.decomp[x];
        let (k, t) = (frame.nbar[kx], frame.t[tx]);
        for y in 0..q {
            let (ky, ty) = frame.decomp[y];
            let (k2, t2) = (frame.nbar[ky], frame.t[ty]);
            let v = at(k, k2) + at(k, t2) + at(t, k2) + at(t, t2);
            mubar[x * q + y] = v % frame.m;
        }
    }
    // The sixth line must agree with the first five where they overlap.
    for x in 0..q {
        for y in 0..q {
            if let Some(v) = base[x * q + y] {
                if v != mubar[x * q + y] {
                    return Err(Error::Incompatible(format!(
                        "line 6 gives mu({}, {}) = {}, earlier lines gave {v}",
                        frame.lift(x),
                        frame.lift(y),
                        mubar[x * q + y]
                    )));
                }
            }
        }
    }
    let qr = frame.quotient();
    Cocycle2::from_fn(g, z, frame.r.clone(), |x, y| mubar[qr.coset_of(x) * q + qr.coset_of(y)])
}

/// Reads a compatible parameter set back off `μ`: `ψ_k = μ(k,-)`,
/// `φ_i = μ(-,t_i)` on `N̄`, `τ_ij = μ(t_i,t_j)`. Fails unless `μ`
/// satisfies (A1)–(A3).
pub fn extract_param_set(
    g: &GroupTable,
    z: &CentralCyclic,
    frame: &ParamFrame,
    mu: &Cocycle2,
    delta: &Cocycle2,
) -> Result<ParamSet> {
    let report = check_a(g, z, &frame.r, &frame.n, mu, delta);
    for name in ["mu constant modulo R", "mu normalized", "A1 delta(x,y) = mu(x,y) mu(y,x)^-1", "A2", "A3"] {
        if let Some(c) = report.checks.iter().find(|c| c.name.starts_with(name) && !c.passed) {
            return Err(Error::Incompatible(format!("{} fails at {:?}", c.name, c.witness)));
        }
    }
    let q = frame.gbar().order();
    let mb = |a: usize, b: usize| mu.get(frame.lift(a), frame.lift(b));
    let psi = frame.nbar.iter().map(|&k| (0..q).map(|x| mb(k, x)).collect()).collect();
    let phi = frame.t.iter().map(|&t| frame.nbar.iter().map(|&k| mb(k, t)).collect()).collect();
    let tau = frame
        .t
        .iter()
        .enumerate()
        .map(|(i, &a)| frame.t.iter().enumerate().map(|(j, &b)| if j < i { 0 } else { mb(a, b) }).collect())
        .collect();
    Ok(ParamSet { psi, phi, tau })
}

/// The original-setup conditions: the subgroup frame (A0), normalization of
/// `μ`, (A1) re-deriving `δ` from `μ`, (A2)/(A3) on triples meeting `N`,
/// and (A4).
pub fn check_a(
    g: &GroupTable,
    z: &CentralCyclic,
    r: &Subgroup,
    n: &Subgroup,
    mu: &Cocycle2,
    delta: &Cocycle2,
) -> Report {
    let size = g.order();
    let zs = z.subgroup();
    let mut rep = Report::new("original setup A0-A4");
    rep.push(Check::from_bool("A0 Z <= R <= N", zs.is_subset(r) && r.is_subset(n), ""));
    rep.push(Check::from_witness(
        "A0 Z <= Z(G)",
        zs.elements().iter().find(|&&x| !g.center().contains(x)).map(|&x| vec![x]),
    ));
    rep.push(Check::from_bool("A0 R normal in G", g.is_normal(r), ""));
    rep.push(Check::from_bool("A0 N normal in G", g.is_normal(n), ""));
    let derived = g.derived();
    rep.push(Check::from_witness(
        "A0 G' <= N",
        derived.elements().iter().find(|&&x| !n.contains(x)).map(|&x| vec![x]),
    ));
    rep.push(Check::from_witness(
        "A0 N/R <= Z(G/R)",
        first_pair(size, |x, y| !n.contains(x) || r.contains(g.comm(x, y))),
    ));
    let mod_r = |phi: &Cocycle2| {
        first_pair(size, |x, y| {
            let v = phi.get(x, y);
            r.gens().iter().all(|&s| phi.get(g.mul(x, s), y) == v && phi.get(x, g.mul(y, s)) == v)
        })
    };
    rep.push(Check::from_witness("mu constant modulo R", mod_r(mu)));
    rep.push(Check::from_witness("delta constant modulo R", mod_r(delta)));
    rep.push(Check::from_witness(
        "mu normalized",
        (0..size).find(|&x| mu.get(0, x) != 0 || mu.get(x, 0) != 0).map(|x| vec![x]),
    ));
    rep.push(Check::from_witness(
        "A1 delta(x,y) = mu(x,y) mu(y,x)^-1",
        first_pair(size, |x, y| delta.get(x, y) == z.sub(mu.get(x, y), mu.get(y, x))),
    ));
    let meets = |x: usize, y: usize, w: usize| n.contains(x) || n.contains(y) || n.contains(w);
    rep.push(Check::from_witness(
        "A2 mu(xy,z) = mu(x,z) mu(y,z) when {x,y,z} meets N",
        first_triple(size, |x, y, w| !meets(x, y, w) || mu.get(g.mul(x, y), w) == z.add(mu.get(x, w), mu.get(y, w))),
    ));
    rep.push(Check::from_witness(
        "A3 mu(x,yz) = mu(x,y) mu(x,z) when {x,y,z} meets N",
        first_triple(size, |x, y, w| !meets(x, y, w) || mu.get(x, g.mul(y, w)) == z.add(mu.get(x, y), mu.get(x, w))),
    ));
    rep.push(Check::from_witness("A4 z^(yx) delta([z,y],x) = z^(xy) delta([z,x],y)", b4_violation(g, z, delta)));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{build_group, parse_pc};

    #[test]
    fn trivial_delta_gives_trivial_parameters_and_mu() {
        let g = build_group(&parse_pc("gens 3\ng2^2 = g3\n[g2,g1] = g3\n").unwrap()).unwrap();
        let z = CentralCyclic::new(&g, &g.center()).unwrap();
        let delta = Cocycle2::trivial(&g, &z, g.center());
        let frame = ParamFrame::new(&g, &z, &delta).unwrap();
        let p = default_param_set(&frame);
        assert!(p.psi.iter().chain(&p.phi).chain(&p.tau).flatten().all(|&v| v == 0));
        assert!(check_param_set(&frame, &p).all_passed());
        let mu = build_mu(&g, &z, &frame, &p).unwrap();
        assert!(mu.is_trivial());
        assert_eq!(extract_param_set(&g, &z, &frame, &mu, &delta).unwrap(), p);
    }
}
