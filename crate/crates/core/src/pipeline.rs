//! End-to-end runs: presentation and frame in, δ, μ, the loop and a
//! [`RunReport`] out.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::construct::{
    build_delta, build_f, build_mu, check_a, check_param_set, default_param_set, find_standard_basis, frame_scenario,
    validate_basis, ParamFrame, StandardBasis,
};
use crate::error::{Error, Result};
use crate::formats::{parse_cocycle_unchecked, parse_frame, parse_params, parse_sweep, ParamOverrides, ResolvedFrame};
use crate::group::{GroupTable, Nilpotency, Subgroup};
use crate::loops::{associator_subloop, check_t2, loop_from_mu, multiplication_groups, nilpotency_class_loop, quotient_loop, LoopTable, NormalSubloop};
use crate::pcgroup::{build_group, parse_pc, PcPresentation};
use crate::report::{Check, Report};
use crate::setup::{
    check_b, check_fgh_with, check_inclusion_chain_with, classify_scenario, derive_f, is_nontrivial, CentralCyclic,
    Classification, Cocycle2, Scenario, SetupData, TriMap,
};

/// Pipeline stages, in order. A run reports the first stage that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Parse,
    Frame,
    Basis,
    WellDefinedness,
    B,
    A,
    Loop,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Parse => "parse",
            Stage::Frame => "frame",
            Stage::Basis => "basis",
            Stage::WellDefinedness => "well-definedness",
            Stage::B => "B",
            Stage::A => "A",
            Stage::Loop => "loop",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopInvariants {
    pub order: usize,
    pub class: Nilpotency,
    pub inn_order: usize,
    /// `None` when `Inn(Q)` is not abelian.
    pub inn_invariants: Option<Vec<usize>>,
    pub mlt_order: BigUint,
    pub associator_order: usize,
    pub is_group: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    /// SHA-256 of every input, in order.
    pub digest: String,
    pub frame: String,
    pub scenario: Option<Scenario>,
    pub reports: Vec<(Stage, Report)>,
    pub invariants: Option<LoopInvariants>,
    /// A stage that stopped with an error rather than a failed check.
    pub error: Option<(Stage, String)>,
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    fn new(inputs: &[&str]) -> Self {
        let mut h = Sha256::new();
        for i in inputs {
            h.update((i.len() as u64).to_le_bytes());
            h.update(i.as_bytes());
        }
        RunReport { digest: hex::encode(h.finalize()), ..Default::default() }
    }

    fn fail(mut self, stage: Stage, e: impl fmt::Display) -> Self {
        self.error = Some((stage, e.to_string()));
        self
    }

    fn push(&mut self, stage: Stage, report: Report) {
        self.reports.push((stage, report));
    }

    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.push((name.to_string(), t.elapsed()));
        out
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.reports.iter().all(|(_, r)| r.all_passed())
    }

    /// Stage of the first failed report in run order, else of the error.
    pub fn failed_stage(&self) -> Option<Stage> {
        self.reports
            .iter()
            .find(|(_, r)| !r.all_passed())
            .map(|(s, _)| *s)
            .or(self.error.as_ref().map(|(s, _)| *s))
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(!self.passed())
    }

    pub fn report(&self, title: &str) -> Option<&Report> {
        self.reports.iter().map(|(_, r)| r).find(|r| r.title == title)
    }

    fn status(&self) -> String {
        match self.failed_stage() {
            None => "pass".into(),
            Some(s) => format!("fail at {s}"),
        }
    }

    /// Human-readable form. Timings are left out unless asked for, so that
    /// equal inputs give byte-identical text.
    pub fn to_text(&self, timings: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digest: {}", self.digest);
        let _ = writeln!(s, "frame: {}", self.frame);
        if let Some(sc) = self.scenario {
            let _ = writeln!(s, "scenario: {sc}");
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(
                s,
                "loop: order {}, class {}, Inn {} (order {}), Mlt {}, |A(Q)| {}",
                inv.order,
                class_text(inv.class),
                invariants_text(&inv.inn_invariants),
                inv.inn_order,
                inv.mlt_order,
                inv.associator_order
            );
        }
        if let Some((stage, e)) = &self.error {
            let _ = writeln!(s, "error at {stage}: {e}");
        }
        let _ = writeln!(s, "status: {}", self.status());
        for (stage, r) in &self.reports {
            let _ = write!(s, "\n({stage}) {r}");
        }
        if timings {
            s.push('\n');
            for (name, d) in &self.timings {
                let _ = writeln!(s, "time {name}: {:.3} s", d.as_secs_f64());
            }
        }
        s
    }

    /// `key = value` lines.
    pub fn to_kv(&self, timings: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digest = {}", self.digest);
        let _ = writeln!(s, "frame = {}", self.frame);
        let _ = writeln!(s, "scenario = {}", self.scenario.map_or("none".to_string(), |x| x.to_string()));
        if let Some(inv) = &self.invariants {
            let _ = writeln!(s, "loop.order = {}", inv.order);
            let _ = writeln!(s, "loop.class = {}", class_text(inv.class));
            let _ = writeln!(s, "loop.inn_order = {}", inv.inn_order);
            let _ = writeln!(s, "loop.inn_invariants = {}", invariants_text(&inv.inn_invariants));
            let _ = writeln!(s, "loop.mlt_order = {}", inv.mlt_order);
            let _ = writeln!(s, "loop.associator_order = {}", inv.associator_order);
            let _ = writeln!(s, "loop.is_group = {}", inv.is_group);
        }
        if let Some((stage, e)) = &self.error {
            let _ = writeln!(s, "error = {stage}: {e}");
        }
        let _ = writeln!(s, "status = {}", self.status());
        for (stage, r) in &self.reports {
            for c in &r.checks {
                let verdict = if c.passed { "pass" } else { "fail" };
                let _ = write!(s, "check.{stage} = {verdict} | {} | {}", r.title, c.name);
                if !c.witness.is_empty() {
                    let _ = write!(s, " | witness {:?}", c.witness);
                }
                s.push('\n');
            }
        }
        if timings {
            for (name, d) in &self.timings {
                let _ = writeln!(s, "timing.{name} = {:.3}", d.as_secs_f64());
            }
        }
        s
    }
}

fn class_text(c: Nilpotency) -> String {
    match c {
        Nilpotency::Class(k) => k.to_string(),
        Nilpotency::NotNilpotent => "not-nilpotent".into(),
    }
}

fn invariants_text(inv: &Option<Vec<usize>>) -> String {
    match inv {
        Some(v) => format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        None => "non-abelian".into(),
    }
}

/// Tables produced by a build.
#[derive(Clone, Debug)]
pub struct Artifacts {
    pub delta: Cocycle2,
    pub mu: Cocycle2,
    pub loop_table: LoopTable,
}

/// The parts of a build that do not depend on free parameters.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub presentation: PcPresentation,
    pub group: GroupTable,
    pub z: CentralCyclic,
    pub frame: ResolvedFrame,
    pub basis: StandardBasis,
    pub f: TriMap,
    frame_text: String,
    pc_text: String,
}

/// A subgroup by a greedy generating set, taking elements in index order.
fn describe(p: &PcPresentation, g: &GroupTable, s: &Subgroup) -> String {
    let mut picked: Vec<usize> = Vec::new();
    let mut span = g.trivial();
    for &x in s.elements() {
        if !span.contains(x) {
            picked.push(x);
            span = g.closure(&picked);
        }
    }
    let gens: Vec<String> = picked.iter().rev().map(|&x| p.vector_of(x).to_string()).collect();
    format!("<{}> (order {})", gens.join(","), s.order())
}

fn element_word(p: &PcPresentation, x: usize) -> String {
    p.vector_of(x).to_string()
}

/// Parses, resolves the frame, and finds or checks the basis and `f`.
pub fn prepare(pc_text: &str, frame_text: &str) -> std::result::Result<Prepared, (Stage, Error)> {
    let presentation = parse_pc(pc_text).map_err(|e| (Stage::Parse, e))?;
    let spec = parse_frame(frame_text).map_err(|e| (Stage::Parse, e))?;
    let group = build_group(&presentation).map_err(|e| (Stage::Parse, e))?;
    let frame = spec.resolve(&presentation, &group).map_err(|e| (Stage::Frame, e))?;
    let z = CentralCyclic::new(&group, &frame.z).map_err(|e| (Stage::Frame, e))?;
    let scenario = frame_scenario(&frame.z, &frame.r).map_err(|e| (Stage::Frame, e))?;
    let basis_stage = |e: Error| match e {
        Error::NoBasis(_) => (Stage::Basis, e),
        e => (Stage::Frame, e),
    };
    let basis = match frame.basis {
        Some(e) => validate_basis(&group, &frame.z, &frame.r, &frame.m, scenario, e),
        None => find_standard_basis(&group, &frame.z, &frame.r, &frame.m, scenario),
    }
    .map_err(basis_stage)?;
    let f = build_f(&group, &z, &basis).map_err(|e| (Stage::Frame, e))?;
    Ok(Prepared {
        presentation,
        group,
        z,
        frame,
        basis,
        f,
        frame_text: frame_text.to_string(),
        pc_text: pc_text.to_string(),
    })
}

impl Prepared {
    pub fn describe_frame(&self) -> String {
        let p = &self.presentation;
        let e = self.basis.e.map(|x| element_word(p, x));
        format!(
            "Z = {}; R = {}; M = {}; basis = {},{},{}",
            describe(p, &self.group, &self.frame.z),
            describe(p, &self.group, &self.frame.r),
            describe(p, &self.group, &self.frame.m),
            e[0],
            e[1],
            e[2]
        )
    }
}

/// Setup checks on a new setup `(G, Z, δ)`: B0-B4, the maps f, g, h, the
/// inclusion chain and, for nontrivial setups of order 128, the scenario
/// clauses.
fn new_setup_reports(run: &mut RunReport, g: &GroupTable, z: &CentralCyclic, delta: &Cocycle2) {
    let b = run.time("check_b", || check_b(g, z, delta));
    run.push(Stage::B, b);
    let d = run.time("setup_data", || SetupData::new(g, z, delta));
    let fgh = run.time("check_fgh", || check_fgh_with(g, z, &d));
    run.push(Stage::B, fgh);
    run.push(Stage::B, check_inclusion_chain_with(z, &d));
    if g.order() == 128 && is_nontrivial(g, delta).is_some() {
        match run.time("classify", || classify_scenario(g, z, delta)) {
            Ok(c) => {
                if let Classification::Scenario(s) = c.classification {
                    run.scenario = Some(s);
                }
                run.push(Stage::B, c.report);
            }
            Err(e) => run.push(Stage::B, failed_report("scenario clauses", "classification", e)),
        }
    }
}

fn failed_report(title: &str, name: &str, e: Error) -> Report {
    let mut r = Report::new(title);
    r.push(Check::fail(name, Vec::new(), e.to_string()));
    r
}

/// Builds `Q = G[μ]` and records its invariants and the loop-level checks.
fn loop_reports(
    run: &mut RunReport,
    g: &GroupTable,
    z: &CentralCyclic,
    delta: &Cocycle2,
    mu: &Cocycle2,
) -> Option<LoopTable> {
    let q = match loop_from_mu(g, z, mu) {
        Ok(q) => q,
        Err(e) => {
            run.error = Some((Stage::Loop, e.to_string()));
            return None;
        }
    };
    // The class and Inn claims only hold for tables that satisfy the setup.
    let genuine = run.passed();
    let result = run.time("loop_structure", || -> Result<(LoopInvariants, Report)> {
        let m = multiplication_groups(&q)?;
        let inn_invariants = m.inn_invariants();
        let inn_abelian = inn_invariants.is_some();
        let class = nilpotency_class_loop(&q)?;
        let a = associator_subloop(&q)?;
        let inv = LoopInvariants {
            order: q.order(),
            class,
            inn_order: m.inn_order(),
            inn_invariants,
            mlt_order: m.mlt_order(),
            associator_order: a.order(),
            is_group: a.is_trivial(),
        };
        let mut r = Report::new("loop");
        if genuine {
            r.push(Check::from_bool("cl(Q) <= 3", matches!(class, Nilpotency::Class(c) if c <= 3), class_text(class)));
            r.push(Check::from_bool("Inn(Q) abelian", inn_abelian, ""));
            let nontrivial = is_nontrivial(g, delta).is_some();
            r.push(Check::from_bool(
                "cl(Q) = 3 iff the setup is nontrivial",
                (class == Nilpotency::Class(3)) == nontrivial,
                format!("class {}, nontrivial {nontrivial}", class_text(class)),
            ));
        }
        r.push(Check::from_bool(
            "|Mlt(Q)| = |Q| |Inn(Q)|",
            m.mlt_order() == BigUint::from(q.order() * m.inn_order()),
            "",
        ));
        r.push(quotient_by_z_check(g, z, &q));
        Ok((inv, r))
    });
    match result {
        Ok((inv, r)) => {
            run.invariants = Some(inv);
            run.push(Stage::Loop, r);
        }
        Err(e) => run.error = Some((Stage::Loop, e.to_string())),
    }
    if genuine && z.modulus() == 2 {
        if let Ok(f) = derive_f(g, z, delta) {
            let t2 = run.time("check_t2", || check_t2(g, z, &q, mu, &f));
            run.push(Stage::Loop, t2);
        }
    }
    Some(q)
}

/// `Q/Z` and `G/Z` agree as tables on the same coset representatives.
pub fn quotient_by_z_check(g: &GroupTable, z: &CentralCyclic, q: &LoopTable) -> Check {
    let name = "Q/Z = G/Z";
    let members: Vec<bool> = (0..g.order()).map(|x| z.subgroup().contains(x)).collect();
    let zq = NormalSubloop::from_members_checked(q, members);
    let (Some(zq), Ok(gq)) = (zq, g.quotient(z.subgroup())) else {
        return Check::fail(name, Vec::new(), "Z is not a normal subloop");
    };
    match quotient_loop(q, &zq) {
        Ok((lq, coset_of)) => {
            let same_labels = (0..g.order()).all(|x| coset_of[x] == gq.coset_of(x));
            let k = lq.order();
            let same_table = (0..k).all(|a| (0..k).all(|b| lq.mul(a, b) == gq.quotient().mul(a, b)));
            Check::from_bool(name, same_labels && same_table, "")
        }
        Err(e) => Check::fail(name, Vec::new(), e.to_string()),
    }
}

/// `build`: basis, `f`, `δ` from the free parameters, the default parameter
/// set with overrides, `μ`, and the loop.
pub fn build(pc_text: &str, frame_text: &str, params_text: Option<&str>) -> (RunReport, Option<Artifacts>) {
    let mut run = RunReport::new(&[pc_text, frame_text, params_text.unwrap_or("")]);
    let overrides = match params_text.map(parse_params).transpose() {
        Ok(o) => o.unwrap_or_default(),
        Err(e) => return (run.fail(Stage::Parse, e), None),
    };
    let prep = match run.time("prepare", || prepare(pc_text, frame_text)) {
        Ok(p) => p,
        Err((stage, e)) => return (run.fail(stage, e), None),
    };
    build_prepared_into(run, &prep, &overrides)
}

/// `build` on an already prepared frame.
pub fn build_prepared(prep: &Prepared, overrides: &ParamOverrides) -> (RunReport, Option<Artifacts>) {
    let run = RunReport::new(&[&prep.pc_text, &prep.frame_text, &format!("{overrides:?}")]);
    build_prepared_into(run, prep, overrides)
}

fn build_prepared_into(
    mut run: RunReport,
    prep: &Prepared,
    overrides: &ParamOverrides,
) -> (RunReport, Option<Artifacts>) {
    let (g, z) = (&prep.group, &prep.z);
    run.frame = prep.describe_frame();
    let free = overrides.free_delta(z.modulus());
    let (delta, construction) = match run.time("build_delta", || build_delta(g, z, &prep.basis, &prep.f, &free)) {
        Ok(x) => x,
        Err(e @ Error::WellDefinedness { .. }) => return (run.fail(Stage::WellDefinedness, e), None),
        Err(e) => return (run.fail(Stage::Frame, e), None),
    };
    run.push(Stage::B, construction);
    new_setup_reports(&mut run, g, z, &delta);
    if let Some(s) = run.scenario {
        let mut r = Report::new("frame agreement");
        r.push(Check::from_bool(
            "classification matches the frame",
            s == prep.basis.scenario,
            format!("frame {}, classified {s}", prep.basis.scenario),
        ));
        run.push(Stage::B, r);
    }

    let frame = match ParamFrame::new(g, z, &delta) {
        Ok(f) => f,
        Err(e) => return (run.fail(Stage::A, e), None),
    };
    let params = match overrides.apply(&prep.presentation, &frame, default_param_set(&frame)) {
        Ok(p) => p,
        Err(e) => return (run.fail(Stage::Parse, e), None),
    };
    run.push(Stage::A, check_param_set(&frame, &params));
    let mu = match build_mu(g, z, &frame, &params) {
        Ok(mu) => mu,
        Err(e) => return (run.fail(Stage::A, e), None),
    };
    let a = run.time("check_a", || check_a(g, z, &frame.r, &frame.n, &mu, &delta));
    run.push(Stage::A, a);
    let q = loop_reports(&mut run, g, z, &delta, &mu);
    let artifacts = q.map(|loop_table| Artifacts { delta, mu, loop_table });
    (run, artifacts)
}

fn parse_group_and_z(
    run: &mut RunReport,
    pc_text: &str,
    frame_text: &str,
) -> std::result::Result<(PcPresentation, GroupTable, ResolvedFrame, CentralCyclic), (Stage, Error)> {
    let p = parse_pc(pc_text).map_err(|e| (Stage::Parse, e))?;
    let spec = parse_frame(frame_text).map_err(|e| (Stage::Parse, e))?;
    let g = build_group(&p).map_err(|e| (Stage::Parse, e))?;
    let frame = spec.resolve(&p, &g).map_err(|e| (Stage::Frame, e))?;
    let z = CentralCyclic::new(&g, &frame.z).map_err(|e| (Stage::Frame, e))?;
    run.frame = format!("Z = {}; R = {}", describe(&p, &g, &frame.z), describe(&p, &g, &frame.r));
    Ok((p, g, frame, z))
}

/// `verify` on a δ table: the new-setup checks, then the default μ and the
/// loop built from it.
pub fn verify_delta(pc_text: &str, frame_text: &str, delta_text: &str) -> RunReport {
    let mut run = RunReport::new(&[pc_text, frame_text, delta_text]);
    let (_, g, _, z) = match parse_group_and_z(&mut run, pc_text, frame_text) {
        Ok(x) => x,
        Err((s, e)) => return run.fail(s, e),
    };
    let delta = match parse_cocycle_unchecked(delta_text, &g, &z) {
        Ok(d) => d,
        Err(e) => return run.fail(Stage::Parse, e),
    };
    if delta.validate(&g).is_err() {
        // check_b names the offending pair; later stages need a valid table.
        let b = run.time("check_b", || check_b(&g, &z, &delta));
        run.push(Stage::B, b);
        return run;
    }
    new_setup_reports(&mut run, &g, &z, &delta);
    if !run.passed() {
        return run;
    }
    let frame = match ParamFrame::new(&g, &z, &delta) {
        Ok(f) => f,
        Err(e) => return run.fail(Stage::A, e),
    };
    let params = default_param_set(&frame);
    run.push(Stage::A, check_param_set(&frame, &params));
    let mu = match build_mu(&g, &z, &frame, &params) {
        Ok(mu) => mu,
        Err(e) => return run.fail(Stage::A, e),
    };
    let a = run.time("check_a", || check_a(&g, &z, &frame.r, &frame.n, &mu, &delta));
    run.push(Stage::A, a);
    loop_reports(&mut run, &g, &z, &delta, &mu);
    run
}

/// `verify` on a μ table: δ is re-derived by `δ(x,y) = μ(x,y) μ(y,x)^-1`,
/// and the frame's `R` with `N = G'R` is audited.
pub fn verify_mu(pc_text: &str, frame_text: &str, mu_text: &str) -> RunReport {
    let mut run = RunReport::new(&[pc_text, frame_text, mu_text]);
    let (_, g, frame, z) = match parse_group_and_z(&mut run, pc_text, frame_text) {
        Ok(x) => x,
        Err((s, e)) => return run.fail(s, e),
    };
    let mu = match parse_cocycle_unchecked(mu_text, &g, &z) {
        Ok(m) => m,
        Err(e) => return run.fail(Stage::Parse, e),
    };
    let n = g.product(&g.derived(), &frame.r);
    let delta = Cocycle2::new_unchecked(&g, &z, mu.modulus().clone(), {
        let k = g.order();
        (0..k * k).map(|i| z.sub(mu.get(i / k, i % k), mu.get(i % k, i / k))).collect()
    });
    let a = run.time("check_a", || check_a(&g, &z, &frame.r, &n, &mu, &delta));
    run.push(Stage::A, a);
    if mu.validate(&g).is_err() || delta.validate(&g).is_err() {
        return run;
    }
    new_setup_reports(&mut run, &g, &z, &delta);
    loop_reports(&mut run, &g, &z, &delta, &mu);
    run
}

/// One row of a sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub rank: u128,
    pub point: String,
    pub report: RunReport,
}

#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
    /// Row counts keyed by scenario, Inn invariants, |Mlt| and |A(Q)|.
    pub buckets: BTreeMap<String, usize>,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.report.passed())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("rows: {}\n", self.rows.len());
        for r in &self.rows {
            let _ = writeln!(s, "row {} [{}]: {}", r.rank, r.point, row_key(&r.report));
        }
        for (k, v) in &self.buckets {
            let _ = writeln!(s, "bucket {k}: {v}");
        }
        s
    }
}

fn row_key(r: &RunReport) -> String {
    let status = if r.passed() { "pass".to_string() } else { format!("fail at {}", r.failed_stage().expect("failed")) };
    let sc = r.scenario.map_or("none".to_string(), |s| s.to_string());
    match &r.invariants {
        Some(inv) => format!(
            "{status}; scenario {sc}; class {}; Inn {}; Mlt {}; |A(Q)| {}",
            class_text(inv.class),
            invariants_text(&inv.inn_invariants),
            inv.mlt_order,
            inv.associator_order
        ),
        None => format!("{status}; scenario {sc}"),
    }
}

fn bucket_key(r: &RunReport) -> String {
    let sc = r.scenario.map_or("none".to_string(), |s| s.to_string());
    match &r.invariants {
        Some(inv) => {
            format!("scenario {sc}; Inn {}; Mlt {}; |A(Q)| {}", invariants_text(&inv.inn_invariants), inv.mlt_order, inv.associator_order)
        }
        None => format!("scenario {sc}; no loop"),
    }
}

/// Runs a build for every point of the sweep space, on `jobs` threads.
/// Rows come back in rank order regardless of scheduling.
pub fn sweep(pc_text: &str, frame_text: &str, space_text: &str, jobs: usize, budget: usize) -> Result<SweepSummary> {
    let space = parse_sweep(space_text)?;
    let prep = prepare(pc_text, frame_text).map_err(|(_, e)| e)?;
    let m = prep.z.modulus();
    let size = space.size(m);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let size = size as usize;
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<SweepRow>>> = Mutex::new(vec![None; size]);
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(size.max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= size {
                    break;
                }
                let point = space.point(i as u128, m);
                let (mut report, _) = build_prepared(&prep, &point);
                report.timings.clear();
                let desc = point_text(&space, &point);
                slots.lock().expect("no worker panicked")[i] = Some(SweepRow { rank: i as u128, point: desc, report });
            });
        }
    });
    let rows: Vec<SweepRow> = slots.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every rank ran")).collect();
    let mut buckets = BTreeMap::new();
    for r in &rows {
        *buckets.entry(bucket_key(&r.report)).or_insert(0) += 1;
    }
    Ok(SweepSummary { rows, buckets })
}

fn point_text(space: &crate::formats::SweepSpace, p: &ParamOverrides) -> String {
    let mut parts = Vec::new();
    for axis in &space.axes {
        let v = match *axis {
            crate::formats::Axis::Delta(i, j) => p.delta.get(i, j),
            crate::formats::Axis::Tau(i, j) => p.tau.iter().find(|t| (t.0, t.1) == (i, j)).map_or(0, |t| t.2),
        };
        parts.push(format!("{axis} = {v}"));
    }
    parts.join(", ")
}
