use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    center_exponent_bound, classify_pm, pgroup_lower_bound, predict_delta_cyclic_faithful, predict_epsilon_cyclic,
    predict_gamma_cyclic_sum, predict_klein, OracleError, Prediction, PredictionKind, Result,
};
use crate::gf::{Code, FieldSpec};
use crate::invariants::{cyclic_jordan_dims, InvariantEngine, SupremumResult, DEFAULT_POINT_CAP};
use crate::mpoly::Monomial;
use crate::reps::{build, KleinVariant, ModuleDescriptor, DEFAULT_GROUP_CAP};

/// What to compute. The text form (also the JSON form) is one of
/// `delta`, `gamma`, `epsilon@[c1,..,cn]`, `lemma_divide@d` or
/// `klein_absence`, optionally followed by `=value` to demand an exact
/// result. Point coordinates are element codes of the field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Target {
    pub kind: TargetKind,
    pub expected: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TargetKind {
    Delta,
    Gamma,
    Epsilon(Vec<Code>),
    LemmaDivide(u32),
    KleinAbsence,
}

impl Target {
    pub fn new(kind: TargetKind) -> Self {
        Target { kind, expected: None }
    }

    pub fn delta() -> Self {
        Target::new(TargetKind::Delta)
    }

    pub fn gamma() -> Self {
        Target::new(TargetKind::Gamma)
    }

    pub fn epsilon(point: Vec<Code>) -> Self {
        Target::new(TargetKind::Epsilon(point))
    }

    pub fn expecting(mut self, value: u64) -> Self {
        self.expected = Some(value);
        self
    }

    /// Parses a list separated by `;` or by commas outside brackets.
    pub fn parse_list(s: &str) -> Result<Vec<Target>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in s.chars() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            if (ch == ';' || ch == ',') && depth == 0 {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().parse()?);
                }
                cur.clear();
            } else {
                cur.push(ch);
            }
        }
        if !cur.trim().is_empty() {
            out.push(cur.trim().parse()?);
        }
        Ok(out)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TargetKind::Delta => write!(f, "delta")?,
            TargetKind::Gamma => write!(f, "gamma")?,
            TargetKind::Epsilon(p) => {
                let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                write!(f, "epsilon@[{}]", coords.join(","))?
            }
            TargetKind::LemmaDivide(d) => write!(f, "lemma_divide@{d}")?,
            TargetKind::KleinAbsence => write!(f, "klein_absence")?,
        }
        if let Some(v) = self.expected {
            write!(f, "={v}")?;
        }
        Ok(())
    }
}

impl FromStr for Target {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OracleError::BadTarget(s.to_string());
        let (body, expected) = match s.rsplit_once('=') {
            Some((b, v)) => (b.trim(), Some(v.trim().parse::<u64>().map_err(|_| bad())?)),
            None => (s.trim(), None),
        };
        let kind = match body.split_once('@') {
            None => match body {
                "delta" => TargetKind::Delta,
                "gamma" => TargetKind::Gamma,
                "klein_absence" => TargetKind::KleinAbsence,
                _ => return Err(bad()),
            },
            Some(("epsilon", pt)) => TargetKind::Epsilon(serde_json::from_str(pt).map_err(|_| bad())?),
            Some(("lemma_divide", d)) => TargetKind::LemmaDivide(d.trim().parse().map_err(|_| bad())?),
            Some(_) => return Err(bad()),
        };
        Ok(Target { kind, expected })
    }
}

impl From<Target> for String {
    fn from(t: Target) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for Target {
    type Error = OracleError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_pass() { "pass" } else { "fail" })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// `dim F[V]^G_d` for `d = 1, 2, ..`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_degree_dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Code>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub target: Target,
    pub quantity: String,
    pub predictions: Vec<Prediction>,
    pub computed: u64,
    /// False when `computed` is only a lower bound (search cut short).
    pub complete: bool,
    pub evidence: Evidence,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Check {
    /// The strongest prediction, for one-line summaries: an exact one if
    /// present, else the largest bound.
    pub fn headline_prediction(&self) -> Option<&Prediction> {
        self.predictions.iter().find(|p| p.exact).or_else(|| self.predictions.iter().max_by_key(|p| p.value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub descriptor: ModuleDescriptor,
    pub field: FieldSpec,
    pub group_order: usize,
    pub group_cap: usize,
    pub point_cap: usize,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub group_cap: usize,
    pub point_cap: usize,
    /// Time after which degree searches stop (once past every predicted
    /// lower bound) and report a lower bound.
    pub budget: Option<Duration>,
    /// Record wall-clock times in reports.
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { group_cap: DEFAULT_GROUP_CAP, point_cap: DEFAULT_POINT_CAP, budget: None, timings: false }
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Builds the module, runs every applicable predictor and the brute-force
/// engine for each target, and compares them.
pub fn verify(
    desc: &ModuleDescriptor,
    field: &FieldSpec,
    targets: &[Target],
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let rep = build(desc, field)?;
    let engine = InvariantEngine::new(rep).with_group_cap(opts.group_cap).with_point_cap(opts.point_cap);
    let group_order = engine.group_order()?;
    let mut sorted = targets.to_vec();
    sorted.sort();
    sorted.dedup();
    let deadline = opts.budget.map(|b| start + b);
    let mut checks: Vec<Check> =
        sorted.par_iter().map(|t| run_target(&engine, desc, t, deadline, opts)).collect::<Result<_>>()?;
    checks.sort_by(|a, b| a.target.cmp(&b.target));
    let verdict = Verdict::from_bool(checks.iter().all(|c| c.verdict.is_pass()));
    Ok(VerificationReport {
        version: VERSION.to_string(),
        name: None,
        descriptor: desc.clone(),
        field: field.clone(),
        group_order,
        group_cap: opts.group_cap,
        point_cap: opts.point_cap,
        checks,
        verdict,
        millis: opts.timings.then(|| start.elapsed().as_millis() as u64),
    })
}

fn run_target(
    engine: &InvariantEngine,
    desc: &ModuleDescriptor,
    target: &Target,
    deadline: Option<Instant>,
    opts: &VerifyOptions,
) -> Result<Check> {
    let start = Instant::now();
    let field = engine.field();
    let mut predictions = Vec::new();
    let mut evidence = Evidence::default();
    let (quantity, computed, complete) = match &target.kind {
        TargetKind::Delta => {
            predictions.extend(delta_predictions(engine, desc, field)?);
            let floor = predictions.iter().filter(|p| !p.exact).map(|p| p.value).max().unwrap_or(0) as u32;
            let r = supremum_with_budget(engine, true, deadline, floor)?;
            record_supremum(&mut evidence, &r);
            ("delta", r.value as u64, r.complete)
        }
        TargetKind::Gamma => {
            if let Ok(p) = predict_gamma_cyclic_sum(desc, field) {
                predictions.push(p);
            }
            if let Ok(p) = predict_klein(desc, field) {
                predictions.push(p);
            }
            let r = supremum_with_budget(engine, false, deadline, 0)?;
            record_supremum(&mut evidence, &r);
            ("gamma", r.value as u64, r.complete)
        }
        TargetKind::Epsilon(v) => {
            if let Some(p) = epsilon_prediction(desc, v) {
                predictions.push(p);
            }
            let r = engine.epsilon(v, None)?;
            evidence.per_degree_dims = r.per_degree_dims.clone();
            evidence.point = Some(r.point.clone());
            evidence.witness = Some(r.witness.to_string());
            ("epsilon", r.degree_found as u64, true)
        }
        TargetKind::LemmaDivide(d) => {
            let r = engine.terminal_divisibility_check(*d)?;
            predictions.push(Prediction::exact(
                PredictionKind::LemmaDivide,
                0,
                format!("p^s divides every terminal exponent of summands with n_j > p^(s-1), degree {d}"),
            ));
            evidence.per_degree_dims = vec![engine.invariant_basis(*d).dim()];
            evidence.notes.push(format!("{} terminal monomials checked", r.monomials_checked));
            evidence.notes.extend(r.violations.iter().cloned());
            ("lemma_divide", r.violations.len() as u64, true)
        }
        TargetKind::KleinAbsence => {
            let m = match desc {
                ModuleDescriptor::Klein { variant: KleinVariant::V2m { m, .. } } => *m,
                _ => return Err(OracleError::BadTarget(format!("{target} needs a klein v2m module"))),
            };
            let n = 2 * m;
            let mut present = 0;
            for d in 1..=3u32 {
                let mut e = vec![0; n];
                e[n - 1] = d;
                let mono = Monomial(e);
                let occurs = engine.monomial_in_invariants(d, &mono)?;
                evidence.per_degree_dims.push(engine.invariant_basis(d).dim());
                evidence.notes.push(format!("y{m}^{d}: {}", if occurs { "occurs" } else { "absent" }));
                present += occurs as u64;
            }
            predictions.push(Prediction::exact(
                PredictionKind::MonomialAbsence,
                0,
                format!("y{m}^d absent from invariants for d = 1, 2, 3"),
            ));
            ("klein_absence", present, true)
        }
    };
    if let Some(v) = target.expected {
        predictions.push(Prediction::exact(PredictionKind::Expected, v, "user-supplied expected value"));
    }
    if !complete {
        evidence.notes.push(format!(
            "time budget reached: invariants computed through degree {}; {quantity} >= {computed}",
            computed - 1
        ));
    }
    let verdict = Verdict::from_bool(predictions.iter().all(|p| p.holds(computed, complete)));
    Ok(Check {
        target: target.clone(),
        quantity: quantity.to_string(),
        predictions,
        computed,
        complete,
        evidence,
        verdict,
        millis: opts.timings.then(|| start.elapsed().as_millis() as u64),
    })
}

fn supremum_with_budget(
    engine: &InvariantEngine,
    delta: bool,
    deadline: Option<Instant>,
    floor: u32,
) -> Result<SupremumResult> {
    let basis = if delta {
        crate::reps::fixed_space(engine.rep())?
    } else {
        let n = engine.rep().dim();
        (0..n).map(|i| crate::reps::unit(n, i)).collect()
    };
    Ok(engine.supremum_until(&basis, deadline, floor)?)
}

fn record_supremum(ev: &mut Evidence, r: &SupremumResult) {
    ev.per_degree_dims = r.per_degree_dims.clone();
    ev.point = r.argmax.clone();
    ev.witness = r.witness.clone();
    ev.points = Some(r.points);
}

fn delta_predictions(engine: &InvariantEngine, desc: &ModuleDescriptor, field: &FieldSpec) -> Result<Vec<Prediction>> {
    let mut out = Vec::new();
    if let Ok((p, r, dims)) = cyclic_jordan_dims(desc) {
        if let Ok(pr) = predict_delta_cyclic_faithful(p, r, &dims) {
            out.push(pr);
        }
    }
    if let Ok(pr) = predict_klein(desc, field) {
        out.push(pr);
    }
    let cl = engine.closure()?;
    let p = field.p();
    if let Ok(pr) = pgroup_lower_bound(&cl, p) {
        out.push(pr);
    }
    if let Ok(pr) = center_exponent_bound(&cl, p) {
        out.push(pr);
    }
    let order = desc.group_order().map(Ok).unwrap_or_else(|| engine.group_order().map(|o| o as u64))?;
    if let Ok(pr) = classify_pm(engine, Some(order)) {
        out.push(pr);
    }
    Ok(out)
}

/// The cyclic-group formula applies when `v` is a fixed point, i.e.
/// supported on the terminal coordinates of a sum of Jordan modules.
fn epsilon_prediction(desc: &ModuleDescriptor, v: &[Code]) -> Option<Prediction> {
    let (p, _, dims) = cyclic_jordan_dims(desc).ok()?;
    if v.len() != dims.iter().sum::<usize>() {
        return None;
    }
    let mut support = Vec::new();
    let mut off = 0;
    for (j, &nj) in dims.iter().enumerate() {
        if v[off..off + nj - 1].iter().any(|&c| c != 0) {
            return None;
        }
        if v[off + nj - 1] != 0 {
            support.push(j);
        }
        off += nj;
    }
    predict_epsilon_cyclic(&dims, &support, p).ok()
}
