//! Power-commutator presentations of finite p-groups.
//!
//! A presentation on generators `g1, ..., gn` fixes a relative order `p_i`
//! for each generator, a power relation `gi^p_i = w` and a commutator
//! relation `[gj,gi] = w` for every `j > i`, where each right-hand side is a
//! normal word in strictly higher generators. Every element then has a unique
//! normal form `g1^e1 * ... * gn^en` with `0 <= ei < p_i`, which is what
//! [`ExponentVector`] stores.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! gens 3
//! orders 2 2 2
//! g1^2 = g2
//! [g2,g1] = g3
//! ```
//!
//! Omitted relations are trivial. `orders` defaults to all 2.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupTable;

/// Normal form of a pc-group element: one exponent per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn identity(ngens: usize) -> Self {
        ExponentVector(vec![0; ngens])
    }

    /// The normal form of generator `gen` (0-based).
    pub fn generator(ngens: usize, gen: usize) -> Self {
        let mut v = vec![0; ngens];
        v[gen] = 1;
        ExponentVector(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    /// Lowest generator with a nonzero exponent.
    fn leading(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "g{}", i + 1)?;
                first = false;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A power-commutator presentation. Generator indices are 0-based in the
/// API and 1-based in text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    rel_orders: Vec<u32>,
    power_rhs: Vec<ExponentVector>,
    /// `comm_rhs[(j, i)]` with `j > i` is the normal form of `[gj, gi]`;
    /// absent keys are the identity.
    comm_rhs: BTreeMap<(usize, usize), ExponentVector>,
}

impl PcPresentation {
    /// A presentation with all relations trivial.
    pub fn new(rel_orders: Vec<u32>) -> Result<Self> {
        if let Some(&p) = rel_orders.iter().find(|&&p| p < 2) {
            return Err(Error::Precondition(format!("relative order {p} is not a prime")));
        }
        let n = rel_orders.len();
        Ok(PcPresentation {
            rel_orders,
            power_rhs: vec![ExponentVector::identity(n); n],
            comm_rhs: BTreeMap::new(),
        })
    }

    pub fn ngens(&self) -> usize {
        self.rel_orders.len()
    }

    pub fn rel_orders(&self) -> &[u32] {
        &self.rel_orders
    }

    pub fn power_rhs(&self, i: usize) -> &ExponentVector {
        &self.power_rhs[i]
    }

    /// Right-hand side of `[gj, gi]`, `j > i`.
    pub fn comm_rhs(&self, j: usize, i: usize) -> ExponentVector {
        assert!(j > i, "commutator relations are indexed by j > i");
        self.comm_rhs
            .get(&(j, i))
            .cloned()
            .unwrap_or_else(|| ExponentVector::identity(self.ngens()))
    }

    /// Sets `gi^p_i = rhs`. The right-hand side must live in generators above `i`.
    pub fn set_power(&mut self, i: usize, rhs: ExponentVector) -> Result<()> {
        self.check_rhs(&rhs, i, 0, || format!("g{}^{}", i + 1, self.rel_orders[i]))?;
        self.power_rhs[i] = rhs;
        Ok(())
    }

    /// Sets `[gj, gi] = rhs` for `j > i`. The right-hand side must live above `j`.
    pub fn set_commutator(&mut self, j: usize, i: usize, rhs: ExponentVector) -> Result<()> {
        if j <= i {
            return Err(Error::Precondition(format!(
                "commutator [g{},g{}] must have j > i",
                j + 1,
                i + 1
            )));
        }
        self.check_rhs(&rhs, j, 0, || format!("[g{},g{}]", j + 1, i + 1))?;
        if rhs.is_identity() {
            self.comm_rhs.remove(&(j, i));
        } else {
            self.comm_rhs.insert((j, i), rhs);
        }
        Ok(())
    }

    fn check_rhs(
        &self,
        rhs: &ExponentVector,
        above: usize,
        line: usize,
        lhs: impl Fn() -> String,
    ) -> Result<()> {
        if rhs.0.len() != self.ngens() {
            return Err(Error::Syntax { line, msg: "word has the wrong length".into() });
        }
        for (k, &e) in rhs.0.iter().enumerate() {
            if e >= self.rel_orders[k] {
                return Err(Error::Syntax {
                    line,
                    msg: format!("exponent {e} of g{} is not reduced", k + 1),
                });
            }
        }
        if let Some(k) = rhs.leading() {
            if k <= above {
                return Err(Error::Triangularity { line, lhs: lhs(), rhs: k + 1 });
            }
        }
        Ok(())
    }

    /// Number of elements, `prod p_i`.
    pub fn order(&self) -> usize {
        self.rel_orders.iter().map(|&p| p as usize).product()
    }

    /// Lexicographic rank of a normal form; the identity has index 0.
    pub fn index_of(&self, v: &ExponentVector) -> usize {
        v.0.iter()
            .zip(&self.rel_orders)
            .fold(0usize, |acc, (&e, &p)| acc * p as usize + e as usize)
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn vector_of(&self, mut index: usize) -> ExponentVector {
        let mut exps = vec![0; self.ngens()];
        for k in (0..self.ngens()).rev() {
            let p = self.rel_orders[k] as usize;
            exps[k] = (index % p) as u32;
            index /= p;
        }
        ExponentVector(exps)
    }

    /// Element index of generator `gen` (0-based).
    pub fn generator_index(&self, gen: usize) -> usize {
        self.index_of(&ExponentVector::generator(self.ngens(), gen))
    }

    /// Product `u * v` of two normal forms, by collection from the left.
    pub fn collect(&self, u: &ExponentVector, v: &ExponentVector) -> ExponentVector {
        let mut exps = u.0.clone();
        // Uncollected letters, next letter on top.
        let mut stack: Vec<usize> = letters(v).rev().collect();
        let n = self.ngens();
        let mut pending = Vec::new();
        while let Some(k) = stack.pop() {
            pending.clear();
            exps[k] += 1;
            if exps[k] == self.rel_orders[k] {
                exps[k] = 0;
                pending.extend(letters(&self.power_rhs[k]));
            }
            // Move g_k left across the collected tail: g_j^{g_k} = g_j [g_j, g_k].
            for j in k + 1..n {
                for _ in 0..exps[j] {
                    pending.push(j);
                    if let Some(c) = self.comm_rhs.get(&(j, k)) {
                        pending.extend(letters(c));
                    }
                }
                exps[j] = 0;
            }
            stack.extend(pending.iter().rev());
        }
        ExponentVector(exps)
    }

    /// Evaluates a word such as `g2*g3`, `g2g3^2` or `1`.
    pub fn evaluate_word(&self, word: &str) -> Result<ExponentVector> {
        let factors = parse_factors(word, 0)?;
        let mut acc = ExponentVector::identity(self.ngens());
        for (g, e) in factors {
            if g == 0 || g > self.ngens() {
                return Err(Error::Syntax { line: 0, msg: format!("no generator g{g}") });
            }
            let gen = ExponentVector::generator(self.ngens(), g - 1);
            for _ in 0..e {
                acc = self.collect(&acc, &gen);
            }
        }
        Ok(acc)
    }

    /// Element index of a word; see [`evaluate_word`](Self::evaluate_word).
    pub fn word_index(&self, word: &str) -> Result<usize> {
        Ok(self.index_of(&self.evaluate_word(word)?))
    }

    /// Canonical text form, accepted by [`parse_pc`].
    pub fn to_text(&self) -> String {
        let mut out = format!("gens {}\n", self.ngens());
        if self.rel_orders.iter().any(|&p| p != 2) {
            let orders: Vec<String> = self.rel_orders.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("orders {}\n", orders.join(" ")));
        }
        for i in 0..self.ngens() {
            if !self.power_rhs[i].is_identity() {
                out.push_str(&format!(
                    "g{}^{} = {}\n",
                    i + 1,
                    self.rel_orders[i],
                    self.power_rhs[i]
                ));
            }
        }
        for (&(j, i), rhs) in &self.comm_rhs {
            out.push_str(&format!("[g{},g{}] = {}\n", j + 1, i + 1, rhs));
        }
        out
    }
}

fn letters(v: &ExponentVector) -> impl DoubleEndedIterator<Item = usize> + '_ {
    v.0.iter()
        .enumerate()
        .flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
}

/// Splits `g1*g2^3` (or `g1g2^3`) into `(generator, exponent)` pairs with
/// 1-based generator numbers. `1` is the empty word.
fn parse_factors(word: &str, line: usize) -> Result<Vec<(usize, u32)>> {
    let w: String = word.chars().filter(|c| !c.is_whitespace()).collect();
    if w == "1" {
        return Ok(Vec::new());
    }
    let syntax = |msg: String| Error::Syntax { line, msg };
    if w.is_empty() {
        return Err(syntax("empty word".into()));
    }
    let bytes = w.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let number = |pos: &mut usize| -> Option<usize> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        w[start..*pos].parse().ok()
    };
    while pos < bytes.len() {
        if !out.is_empty() && bytes[pos] == b'*' {
            pos += 1;
        }
        if pos >= bytes.len() || bytes[pos] != b'g' {
            return Err(syntax(format!("expected a generator in word `{w}`")));
        }
        pos += 1;
        let g = number(&mut pos).ok_or_else(|| syntax(format!("bad generator in `{w}`")))?;
        let mut e = 1u32;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            e = number(&mut pos).ok_or_else(|| syntax(format!("bad exponent in `{w}`")))? as u32;
        }
        out.push((g, e));
    }
    Ok(out)
}

/// Parses the presentation text format described in the module docs.
pub fn parse_pc(text: &str) -> Result<PcPresentation> {
    let mut pres: Option<PcPresentation> = None;
    let mut seen_relation = false;
    let mut seen_power = Vec::new();
    let mut seen_comm = std::collections::BTreeSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let syntax = |msg: String| Error::Syntax { line, msg };
        if let Some(rest) = s.strip_prefix("gens") {
            if pres.is_some() {
                return Err(syntax("repeated `gens` header".into()));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| syntax(format!("bad generator count `{}`", rest.trim())))?;
            pres = Some(PcPresentation::new(vec![2; n])?);
            seen_power = vec![false; n];
            continue;
        }
        let Some(p) = pres.as_mut() else {
            return Err(syntax("`gens n` must come first".into()));
        };
        if let Some(rest) = s.strip_prefix("orders") {
            if seen_relation {
                return Err(syntax("`orders` must precede all relations".into()));
            }
            let orders: Vec<u32> = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| syntax(format!("bad order `{t}`"))))
                .collect::<Result<_>>()?;
            if orders.len() != p.ngens() {
                return Err(syntax(format!("expected {} orders, got {}", p.ngens(), orders.len())));
            }
            if let Some(q) = orders.iter().find(|&&q| !is_prime(q)) {
                return Err(syntax(format!("relative order {q} is not prime")));
            }
            *p = PcPresentation::new(orders)?;
            continue;
        }
        seen_relation = true;
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected a relation, got `{s}`")))?;
        let lhs = lhs.trim();
        let rhs_factors = parse_factors(rhs, line)?;
        let rhs_vec = normal_word(p, &rhs_factors, line)?;

        if let Some(inner) = lhs.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| syntax(format!("bad commutator `{lhs}`")))?;
            let j = single_generator(a, p.ngens(), line)?;
            let i = single_generator(b, p.ngens(), line)?;
            if j <= i {
                return Err(syntax(format!("commutator `{lhs}` must be written [gj,gi] with j > i")));
            }
            if !seen_comm.insert((j, i)) {
                return Err(Error::DuplicateRelation { line, lhs: lhs.to_string() });
            }
            let lhs_name = lhs.to_string();
            p.check_rhs(&rhs_vec, j, line, || lhs_name.clone())?;
            p.set_commutator(j, i, rhs_vec)?;
        } else {
            let (g, e) = lhs
                .split_once('^')
                .ok_or_else(|| syntax(format!("bad left-hand side `{lhs}`")))?;
            let i = single_generator(g, p.ngens(), line)?;
            let e: u32 = e.trim().parse().map_err(|_| syntax(format!("bad exponent in `{lhs}`")))?;
            if e != p.rel_orders[i] {
                return Err(syntax(format!(
                    "power relation `{lhs}` must use the relative order {}",
                    p.rel_orders[i]
                )));
            }
            if std::mem::replace(&mut seen_power[i], true) {
                return Err(Error::DuplicateRelation { line, lhs: lhs.to_string() });
            }
            let lhs_name = lhs.to_string();
            p.check_rhs(&rhs_vec, i, line, || lhs_name.clone())?;
            p.set_power(i, rhs_vec)?;
        }
    }
    pres.ok_or(Error::Syntax { line: 0, msg: "missing `gens n` header".into() })
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn single_generator(s: &str, ngens: usize, line: usize) -> Result<usize> {
    let s = s.trim();
    let g: usize = s
        .strip_prefix('g')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::Syntax { line, msg: format!("expected a generator, got `{s}`") })?;
    if g == 0 || g > ngens {
        return Err(Error::Syntax { line, msg: format!("generator g{g} out of range") });
    }
    Ok(g - 1)
}

/// Right-hand sides must already be normal words: generators in
/// nondecreasing order with reduced exponents.
fn normal_word(p: &PcPresentation, factors: &[(usize, u32)], line: usize) -> Result<ExponentVector> {
    let mut exps = vec![0u32; p.ngens()];
    let mut last = 0;
    for &(g, e) in factors {
        if g == 0 || g > p.ngens() {
            return Err(Error::Syntax { line, msg: format!("generator g{g} out of range") });
        }
        if g < last {
            return Err(Error::Syntax {
                line,
                msg: "right-hand side must list generators in increasing order".into(),
            });
        }
        last = g;
        exps[g - 1] += e;
        if exps[g - 1] >= p.rel_orders[g - 1] {
            return Err(Error::Syntax {
                line,
                msg: format!("exponent of g{g} is not reduced modulo {}", p.rel_orders[g - 1]),
            });
        }
    }
    Ok(ExponentVector(exps))
}

/// Materializes the group: every normal form in lexicographic order, the
/// full multiplication table by collection, and an exhaustive associativity
/// check that doubles as a consistency test of the presentation.
pub fn build_group(pres: &PcPresentation) -> Result<GroupTable> {
    let n = pres.order();
    let vectors: Vec<ExponentVector> = (0..n).map(|i| pres.vector_of(i)).collect();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = pres.index_of(&pres.collect(&vectors[a], &vectors[b])) as u32;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mul[a * n + b] as usize;
            for c in 0..n {
                let bc = mul[b * n + c] as usize;
                if mul[ab * n + c] != mul[a * n + bc] {
                    return Err(Error::Inconsistent { a, b, c });
                }
            }
        }
    }
    GroupTable::from_associative_table(n, mul)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYCLIC8: &str = "gens 3\ng1^2 = g2\ng2^2 = g3\n";

    #[test]
    fn parses_minimal_presentation() {
        let p = parse_pc("gens 1\ng1^2 = 1\n").unwrap();
        assert_eq!(p.ngens(), 1);
        assert_eq!(p.order(), 2);
        let g = build_group(&p).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn elementary_abelian_when_all_relations_trivial() {
        let g = build_group(&parse_pc("gens 3\n").unwrap()).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(&g.whole()), 2);
    }

    #[test]
    fn identity_is_neutral_for_collection() {
        let p = parse_pc(CYCLIC8).unwrap();
        for i in 0..p.order() {
            let v = p.vector_of(i);
            assert_eq!(p.collect(&ExponentVector::identity(3), &v), v);
            assert_eq!(p.collect(&v, &ExponentVector::identity(3)), v);
        }
    }

    #[test]
    fn cyclic_of_order_eight() {
        let p = parse_pc(CYCLIC8).unwrap();
        let g = build_group(&p).unwrap();
        let g1 = p.generator_index(0);
        assert_eq!(g.element_order(g1), 8);
    }

    #[test]
    fn odd_primes_are_accepted() {
        let p = parse_pc("gens 3\norders 3 3 3\n[g2,g1] = g3\n").unwrap();
        let g = build_group(&p).unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
    }

    #[test]
    fn index_roundtrip() {
        let p = parse_pc("gens 3\norders 2 3 5\n").unwrap();
        for i in 0..p.order() {
            assert_eq!(p.index_of(&p.vector_of(i)), i);
        }
        assert_eq!(p.index_of(&ExponentVector::identity(3)), 0);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_pc("gens 2\n\ng1^2 = g3\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");
        let err = parse_pc("gens 2\nfoo\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        assert!(matches!(parse_pc("g1^2 = 1\n"), Err(Error::Syntax { line: 1, .. })));
    }

    #[test]
    fn triangularity_is_enforced() {
        let err = parse_pc("gens 3\n[g3,g1] = g2\n").unwrap_err();
        assert!(matches!(err, Error::Triangularity { line: 2, rhs: 2, .. }), "{err:?}");
        let err = parse_pc("gens 3\ng2^2 = g1\n").unwrap_err();
        assert!(matches!(err, Error::Triangularity { rhs: 1, .. }));
        let err = parse_pc("gens 3\ng2^2 = g2\n").unwrap_err();
        assert!(matches!(err, Error::Triangularity { rhs: 2, .. }));
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = parse_pc("gens 3\n[g2,g1] = g3\n[g2,g1] = 1\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateRelation { line: 3, .. }));
        let err = parse_pc("gens 3\ng1^2 = 1\ng1^2 = g3\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateRelation { line: 3, .. }));
    }

    #[test]
    fn inconsistent_presentation_is_detected() {
        // g1^2 = g2 forces g1 to commute with g2, contradicting [g2,g1] = g3.
        let p = parse_pc("gens 3\ng1^2 = g2\n[g2,g1] = g3\n").unwrap();
        assert!(matches!(build_group(&p), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn text_roundtrip() {
        let p = parse_pc("gens 4\norders 2 2 3 2\ng1^2 = g4\n[g2,g1] = g3^2*g4\n").unwrap();
        assert_eq!(parse_pc(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn words_evaluate_by_collection() {
        let p = parse_pc("gens 3\n[g2,g1] = g3\n").unwrap();
        // g2*g1 = g1*g2*[g2,g1]
        assert_eq!(p.evaluate_word("g2*g1").unwrap(), ExponentVector(vec![1, 1, 1]));
        assert_eq!(p.evaluate_word("g2g1").unwrap(), ExponentVector(vec![1, 1, 1]));
        assert_eq!(p.evaluate_word("1").unwrap(), ExponentVector(vec![0, 0, 0]));
        assert!(p.evaluate_word("g4").is_err());
    }
}
