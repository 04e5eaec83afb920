//! Text formats for frames, cocycle tables, parameter overrides and sweep
//! spaces.
//!
//! All formats are line oriented; `#` starts a comment and blank lines are
//! ignored.

use std::fmt::Write as _;

use crate::construct::{FreeDeltaParams, ParamFrame, ParamSet};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::pcgroup::PcPresentation;
use crate::setup::{CentralCyclic, Cocycle2};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Derived,
    Words(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisSpec {
    Auto,
    Words([String; 3]),
}

/// `Z = <words>; R = <words>; M = derived|<words>; basis = auto|<w1,w2,w3>`.
///
/// Clauses are separated by `;` or newlines. `R` defaults to `Z`, `M` to
/// `derived` and `basis` to `auto`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSpec {
    pub z: Vec<String>,
    pub r: Option<Vec<String>>,
    pub m: SubgroupSpec,
    pub basis: BasisSpec,
}

/// Subgroups and basis elements named by a [`FrameSpec`].
#[derive(Clone, Debug)]
pub struct ResolvedFrame {
    pub z: Subgroup,
    pub r: Subgroup,
    pub m: Subgroup,
    pub basis: Option<[usize; 3]>,
}

fn word_list(s: &str) -> Vec<String> {
    s.split(',').map(|w| w.trim().to_string()).filter(|w| !w.is_empty()).collect()
}

pub fn parse_frame(text: &str) -> Result<FrameSpec> {
    let mut z = None;
    let mut r = None;
    let mut m = SubgroupSpec::Derived;
    let mut basis = BasisSpec::Auto;
    for (ln, line) in content_lines(text) {
        for clause in line.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, value) = clause.split_once('=').ok_or_else(|| syntax(ln, format!("expected key = value: {clause}")))?;
            let value = value.trim();
            match key.trim() {
                "Z" => z = Some(word_list(value)),
                "R" => r = Some(word_list(value)),
                "M" if value == "derived" => m = SubgroupSpec::Derived,
                "M" => m = SubgroupSpec::Words(word_list(value)),
                "basis" if value == "auto" => basis = BasisSpec::Auto,
                "basis" => {
                    let w = word_list(value);
                    let arr: [String; 3] =
                        w.try_into().map_err(|_| syntax(ln, "basis needs exactly three words"))?;
                    basis = BasisSpec::Words(arr);
                }
                other => return Err(syntax(ln, format!("unknown frame key {other}"))),
            }
        }
    }
    let z = z.ok_or_else(|| syntax(0, "frame does not name Z"))?;
    Ok(FrameSpec { z, r, m, basis })
}

impl FrameSpec {
    pub fn resolve(&self, p: &PcPresentation, g: &GroupTable) -> Result<ResolvedFrame> {
        let sub = |words: &[String]| -> Result<Subgroup> {
            let idx = words.iter().map(|w| p.word_index(w)).collect::<Result<Vec<_>>>()?;
            Ok(g.closure(&idx))
        };
        let z = sub(&self.z)?;
        let r = match &self.r {
            Some(w) => sub(w)?,
            None => z.clone(),
        };
        let m = match &self.m {
            SubgroupSpec::Derived => g.derived(),
            SubgroupSpec::Words(w) => sub(w)?,
        };
        let basis = match &self.basis {
            BasisSpec::Auto => None,
            BasisSpec::Words(w) => Some([p.word_index(&w[0])?, p.word_index(&w[1])?, p.word_index(&w[2])?]),
        };
        Ok(ResolvedFrame { z, r, m, basis })
    }
}

impl std::fmt::Display for FrameSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z = {}", self.z.join(","))?;
        if let Some(r) = &self.r {
            write!(f, "; R = {}", r.join(","))?;
        }
        match &self.m {
            SubgroupSpec::Derived => write!(f, "; M = derived")?,
            SubgroupSpec::Words(w) => write!(f, "; M = {}", w.join(","))?,
        }
        match &self.basis {
            BasisSpec::Auto => write!(f, "; basis = auto"),
            BasisSpec::Words(w) => write!(f, "; basis = {}", w.join(",")),
        }
    }
}

/// `cocycle <|G|> <|Z|> modulus=<generators>` followed by `x y e` rows
/// (0-based element indices) for every nonzero value.
pub fn write_cocycle(c: &Cocycle2) -> String {
    let gens: Vec<String> = c.modulus().gens().iter().map(|x| x.to_string()).collect();
    let mut s = format!("cocycle {} {} modulus={}\n", c.group_order(), c.value_modulus(), gens.join(","));
    let n = c.group_order();
    for x in 0..n {
        for y in 0..n {
            let v = c.get(x, y);
            if v != 0 {
                let _ = writeln!(s, "{x} {y} {v}");
            }
        }
    }
    s
}

/// Parses a cocycle table and validates it against `g` and `z`.
pub fn parse_cocycle(text: &str, g: &GroupTable, z: &CentralCyclic) -> Result<Cocycle2> {
    let c = parse_cocycle_unchecked(text, g, z)?;
    c.validate(g)?;
    Ok(c)
}

/// Like [`parse_cocycle`] but only checks shape and ranges, so that a table
/// which is not constant on cosets of its modulus can still be inspected.
pub fn parse_cocycle_unchecked(text: &str, g: &GroupTable, z: &CentralCyclic) -> Result<Cocycle2> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| syntax(1, "empty cocycle file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let (n, m, modulus) = match parts.as_slice() {
        ["cocycle", n, m, modulus] => (*n, *m, *modulus),
        ["cocycle", n, m] => (*n, *m, "modulus="),
        _ => return Err(syntax(ln, "expected: cocycle <order> <|Z|> modulus=<generators>")),
    };
    let n: usize = n.parse().map_err(|_| syntax(ln, "bad order"))?;
    let m: u32 = m.parse().map_err(|_| syntax(ln, "bad |Z|"))?;
    if n != g.order() {
        return Err(Error::WrongOrder { expected: g.order(), actual: n });
    }
    if m != z.modulus() {
        return Err(syntax(ln, format!("table has |Z| = {m}, frame has {}", z.modulus())));
    }
    let gens = modulus
        .strip_prefix("modulus=")
        .ok_or_else(|| syntax(ln, "expected modulus=<generators>"))?
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().ok().filter(|&x| x < n).ok_or_else(|| syntax(ln, format!("bad element {s}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![0u32; n * n];
    let mut seen = vec![false; n * n];
    for (ln, line) in lines {
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| syntax(ln, format!("not a number: {t}"))))
            .collect::<Result<_>>()?;
        let [x, y, e] = nums[..] else {
            return Err(syntax(ln, "expected: x y e"));
        };
        let (x, y) = (x as usize, y as usize);
        if x >= n || y >= n {
            return Err(syntax(ln, format!("element out of range for order {n}")));
        }
        if std::mem::replace(&mut seen[x * n + y], true) {
            return Err(syntax(ln, format!("duplicate entry for ({x}, {y})")));
        }
        values[x * n + y] = (e % m as u64) as u32;
    }
    Ok(Cocycle2::new_unchecked(g, z, g.closure(&gens), values))
}

/// Explicit parameter choices layered over the defaults.
///
/// * `delta i j e`: free value `δ(t_i, t_j)` (1-based transversal positions
///   of `M` in `G`, `1 < i < j`).
/// * `tau i j e`: `τ_ij` (1-based transversal positions of `N̄` in `Ḡ`).
/// * `psi k x e`: `ψ_k(x)`, with `k`, `x` words or 0-based element indices.
/// * `phi i k e`: `φ_i(k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamOverrides {
    pub delta: FreeDeltaParams,
    pub tau: Vec<(usize, usize, u32)>,
    pub psi: Vec<(String, String, u32)>,
    pub phi: Vec<(usize, String, u32)>,
}

fn element(p: &PcPresentation, tok: &str) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(i) if i < p.order() => Ok(i),
        Ok(i) => Err(Error::Precondition(format!("element {i} out of range"))),
        Err(_) => p.word_index(tok),
    }
}

pub fn parse_params(text: &str) -> Result<ParamOverrides> {
    let mut out = ParamOverrides::default();
    for (ln, line) in content_lines(text) {
        let t: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| syntax(ln, format!("not a number: {s}")));
        match t.as_slice() {
            ["delta", i, j, e] => {
                let (i, j) = (num(i)?, num(j)?);
                if out.delta.values.contains_key(&(i, j)) {
                    return Err(syntax(ln, format!("duplicate delta {i} {j}")));
                }
                out.delta.values.insert((i, j), num(e)? as u32);
            }
            ["tau", i, j, e] => out.tau.push((num(i)?, num(j)?, num(e)? as u32)),
            ["psi", k, x, e] => out.psi.push((k.to_string(), x.to_string(), num(e)? as u32)),
            ["phi", i, k, e] => out.phi.push((num(i)?, k.to_string(), num(e)? as u32)),
            _ => return Err(syntax(ln, format!("unrecognized parameter line: {line}"))),
        }
    }
    Ok(out)
}

impl ParamOverrides {
    pub fn is_empty(&self) -> bool {
        self.delta.values.is_empty() && self.tau.is_empty() && self.psi.is_empty() && self.phi.is_empty()
    }

    /// The free δ parameters with zero entries dropped and values reduced.
    pub fn free_delta(&self, m: u32) -> FreeDeltaParams {
        let mut d = FreeDeltaParams::trivial();
        for (&(i, j), &v) in &self.delta.values {
            d.set(i, j, v % m);
        }
        d
    }

    /// Overrides entries of `base`. Positions and elements are checked
    /// against `frame`; compatibility is left to the checker.
    pub fn apply(&self, p: &PcPresentation, frame: &ParamFrame, mut base: ParamSet) -> Result<ParamSet> {
        let m = frame.value_modulus();
        let n = frame.width();
        let qr = frame.quotient();
        let k_pos = |tok: &str| -> Result<usize> {
            let x = qr.coset_of(element(p, tok)?);
            frame.k_position(x).ok_or_else(|| Error::Precondition(format!("{tok} does not lie in N")))
        };
        for &(i, j, e) in &self.tau {
            if !(1 <= i && i <= j && j <= n) {
                return Err(Error::Precondition(format!("tau {i} {j} is not in 1 <= i <= j <= {n}")));
            }
            base.tau[i - 1][j - 1] = e % m;
        }
        for (k, x, e) in &self.psi {
            let kp = k_pos(k)?;
            base.psi[kp][qr.coset_of(element(p, x)?)] = e % m;
        }
        for (i, k, e) in &self.phi {
            if !(1 <= *i && *i <= n) {
                return Err(Error::Precondition(format!("phi {i} is not in 1 <= i <= {n}")));
            }
            base.phi[i - 1][k_pos(k)?] = e % m;
        }
        Ok(base)
    }
}

/// One free coordinate of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Delta(usize, usize),
    Tau(usize, usize),
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Delta(i, j) => write!(f, "delta {i} {j}"),
            Axis::Tau(i, j) => write!(f, "tau {i} {j}"),
        }
    }
}

/// `vary delta i j` and `vary tau i j` lines; each axis ranges over `Z`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSpace {
    pub axes: Vec<Axis>,
}

pub fn parse_sweep(text: &str) -> Result<SweepSpace> {
    let mut axes = Vec::new();
    for (ln, line) in content_lines(text) {
        let t: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| syntax(ln, format!("not a number: {s}")));
        let axis = match t.as_slice() {
            ["vary", "delta", i, j] => Axis::Delta(num(i)?, num(j)?),
            ["vary", "tau", i, j] => Axis::Tau(num(i)?, num(j)?),
            _ => return Err(syntax(ln, format!("expected: vary delta|tau i j, got {line}"))),
        };
        if axes.contains(&axis) {
            return Err(syntax(ln, format!("axis {axis} repeated")));
        }
        axes.push(axis);
    }
    Ok(SweepSpace { axes })
}

impl SweepSpace {
    /// Number of points when every axis takes `m` values; an empty space has
    /// no points.
    pub fn size(&self, m: u32) -> u128 {
        if self.axes.is_empty() {
            0
        } else {
            (m as u128).saturating_pow(self.axes.len() as u32)
        }
    }

    /// The point of the given rank: the last axis varies fastest.
    pub fn point(&self, rank: u128, m: u32) -> ParamOverrides {
        let mut out = ParamOverrides::default();
        let mut r = rank;
        for axis in self.axes.iter().rev() {
            let v = (r % m as u128) as u32;
            r /= m as u128;
            match *axis {
                Axis::Delta(i, j) => {
                    out.delta.values.insert((i, j), v);
                }
                Axis::Tau(i, j) => out.tau.push((i, j, v)),
            }
        }
        out.tau.reverse();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{build_group, parse_pc};

    #[test]
    fn frame_round_trip() {
        let f = parse_frame("Z = g7; R = g5,g6,g7; M = derived; basis = g1,g2,g2*g3").unwrap();
        assert_eq!(f.r.as_ref().unwrap().len(), 3);
        assert_eq!(f.basis, BasisSpec::Words(["g1".into(), "g2".into(), "g2*g3".into()]));
        assert_eq!(parse_frame(&f.to_string()).unwrap(), f);
        assert!(parse_frame("R = g1").is_err());
        assert!(parse_frame("Z = g1; basis = g1,g2").is_err());
    }

    #[test]
    fn cocycle_round_trip() {
        let p = parse_pc("gens 3\ng2^2 = g3\n[g2,g1] = g3\n").unwrap();
        let g = build_group(&p).unwrap();
        let z = CentralCyclic::new(&g, &g.center()).unwrap();
        let c = Cocycle2::from_fn(&g, &z, g.trivial(), |x, y| ((x & y) != 0 && x != y) as u32).unwrap();
        let text = write_cocycle(&c);
        let back = parse_cocycle(&text, &g, &z).unwrap();
        assert_eq!(back.values(), c.values());
        assert!(parse_cocycle("cocycle 8 2 modulus=\n0 0 1\n", &g, &z).is_err());
        assert!(parse_cocycle("cocycle 16 2 modulus=\n", &g, &z).is_err());
    }

    #[test]
    fn sweep_ranks() {
        let s = parse_sweep("vary delta 2 3\nvary tau 2 2\n").unwrap();
        assert_eq!(s.size(2), 4);
        let p = s.point(1, 2);
        assert_eq!(p.delta.get(2, 3), 0);
        assert_eq!(p.tau, vec![(2, 2, 1)]);
        let p = s.point(2, 2);
        assert_eq!(p.delta.get(2, 3), 1);
        assert_eq!(p.tau, vec![(2, 2, 0)]);
        assert_eq!(SweepSpace::default().size(2), 0);
    }

    #[test]
    fn params_lines() {
        let o = parse_params("delta 2 3 1\ntau 2 4 1 # comment\npsi g4 g1 1\nphi 2 g4 0\n").unwrap();
        assert_eq!(o.delta.get(2, 3), 1);
        assert_eq!(o.tau, vec![(2, 4, 1)]);
        assert_eq!(o.psi.len(), 1);
        assert!(parse_params("gamma 1 2 3").is_err());
    }
}
