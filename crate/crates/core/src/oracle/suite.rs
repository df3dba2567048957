use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verify::{verify, Target, TargetKind, Verdict, VerificationReport, VerifyOptions, VERSION};
use super::{classify_pm, OracleError, Result};
use crate::gf::FieldSpec;
use crate::invariants::InvariantEngine;
use crate::reps::{build, dihedral_regular, KleinVariant, Lambda, ModuleDescriptor};

/// One module of a verification suite with its targets.
#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub name: String,
    pub descriptor: ModuleDescriptor,
    pub field: FieldSpec,
    pub targets: Vec<Target>,
    /// Time allowed before degree searches degrade to lower bounds.
    pub budget: Option<Duration>,
}

impl SuiteCase {
    fn new(name: &str, descriptor: ModuleDescriptor, targets: &str) -> Self {
        let field = descriptor.default_field().expect("suite descriptors determine their field");
        SuiteCase {
            name: name.to_string(),
            descriptor,
            field,
            targets: Target::parse_list(targets).expect("suite targets parse"),
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: String,
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub verdict: Verdict,
    pub reports: Vec<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

fn omega() -> Lambda {
    Lambda::Coords(vec![0, 1])
}

fn klein(v: KleinVariant) -> ModuleDescriptor {
    ModuleDescriptor::klein(v)
}

/// The eleven Klein four modules of the classification table.
pub fn klein_modules() -> Vec<(&'static str, ModuleDescriptor)> {
    let zero = || Lambda::Coords(vec![0]);
    vec![
        ("Vreg", klein(KleinVariant::Regular)),
        ("V2,0", klein(KleinVariant::V2m { m: 1, lambda: zero() })),
        ("V2,w", klein(KleinVariant::V2m { m: 1, lambda: omega() })),
        ("V4,0", klein(KleinVariant::V2m { m: 2, lambda: zero() })),
        ("V4,w", klein(KleinVariant::V2m { m: 2, lambda: omega() })),
        ("W2", klein(KleinVariant::W2m { m: 1 })),
        ("W4", klein(KleinVariant::W2m { m: 2 })),
        ("V3", klein(KleinVariant::VOdd { m: 1 })),
        ("V5", klein(KleinVariant::VOdd { m: 2 })),
        ("W3", klein(KleinVariant::WOdd { m: 1 })),
        ("W5", klein(KleinVariant::WOdd { m: 2 })),
    ]
}

/// Modules of order `p m` for the `{0, 1, p}` trichotomy.
pub fn pm_modules() -> Vec<(&'static str, ModuleDescriptor)> {
    let borel = || ModuleDescriptor::Borel { p: 3 };
    vec![
        ("A3 on F3^3", ModuleDescriptor::perm(3, vec![vec![1, 2, 0]], Some(3))),
        ("S3 on F3^3", ModuleDescriptor::perm(3, vec![vec![1, 2, 0], vec![1, 0, 2]], Some(3))),
        ("Borel(3) on S^1", ModuleDescriptor::sym(borel(), 1)),
        ("Borel(3) on S^2", ModuleDescriptor::sym(borel(), 2)),
        ("Z6 trivial", ModuleDescriptor::w(2, 1, 3, 1, Lambda::Coords(vec![1]))),
        ("Z6 on W1,w", ModuleDescriptor::w(2, 1, 3, 1, omega())),
    ]
}

fn unit_point(n: usize, i: usize) -> String {
    let coords: Vec<String> = (0..n).map(|j| if j == i { "1" } else { "0" }.to_string()).collect();
    format!("[{}]", coords.join(","))
}

/// Every module and target of the built-in verification suite.
pub fn reference_suite() -> Vec<SuiteCase> {
    let mut cases = Vec::new();
    for n in 1..=4 {
        let targets = if n >= 3 {
            format!("epsilon@{};delta", unit_point(n, n - 1))
        } else {
            format!("epsilon@{}", unit_point(n, n - 1))
        };
        cases.push(SuiteCase::new(&format!("Z4 on V{n}"), ModuleDescriptor::jordan(2, 2, n), &targets));
    }
    cases.push(SuiteCase::new("Z9 on V4", ModuleDescriptor::jordan(3, 2, 4), "epsilon@[0,0,0,1];delta"));

    let v3v2 = ModuleDescriptor::sum(vec![ModuleDescriptor::jordan(2, 2, 3), ModuleDescriptor::jordan(2, 2, 2)]);
    cases.push(SuiteCase::new(
        "Z4 on V3+V2",
        v3v2,
        "epsilon@[0,0,1,0,0];epsilon@[0,0,0,0,1];epsilon@[0,0,1,0,1];delta;gamma;\
         lemma_divide@1;lemma_divide@2;lemma_divide@3;lemma_divide@4;lemma_divide@5;lemma_divide@6",
    ));

    cases.push(SuiteCase::new("Z6 on W2,w", ModuleDescriptor::w(2, 1, 3, 2, omega()), "delta;gamma"));
    cases.push(SuiteCase::new(
        "Z6 on W2,1+W1,w",
        ModuleDescriptor::sum(vec![
            ModuleDescriptor::w(2, 1, 3, 2, Lambda::Coords(vec![1])),
            ModuleDescriptor::w(2, 1, 3, 1, omega()),
        ]),
        "delta;gamma",
    ));

    for (name, desc) in klein_modules() {
        let targets = if name.starts_with("V4") { "delta;gamma;klein_absence" } else { "delta;gamma" };
        cases.push(SuiteCase::new(&format!("Klein {name}"), desc, targets));
    }

    let mut d8 = SuiteCase::new("D8 regular", dihedral_regular(2), "delta");
    d8.budget = Some(Duration::from_secs(170));
    cases.push(d8);

    for (name, desc) in pm_modules() {
        cases.push(SuiteCase::new(name, desc, "delta"));
    }
    cases
}

/// Runs the cases (in parallel) and collects the reports in case order.
pub fn run_suite(name: &str, cases: &[SuiteCase], opts: &VerifyOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let reports = cases
        .par_iter()
        .map(|c| {
            let case_opts = VerifyOptions { budget: c.budget.or(opts.budget), ..opts.clone() };
            let mut r = verify(&c.descriptor, &c.field, &c.targets, &case_opts)?;
            r.name = Some(c.name.clone());
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().filter(|r| r.verdict.is_pass()).count();
    let failed = reports.len() - passed;
    Ok(SuiteReport {
        version: VERSION.to_string(),
        suite: name.to_string(),
        passed,
        failed,
        verdict: Verdict::from_bool(failed == 0),
        reports,
        millis: opts.timings.then(|| start.elapsed().as_millis() as u64),
    })
}

/// A rendered comparison of predicted and brute-force values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub verdict: Verdict,
}

impl Table {
    fn new(name: &str, rows: Vec<Vec<String>>) -> Self {
        let verdict = Verdict::from_bool(rows.iter().all(|r| r.last().is_some_and(|v| v == "pass")));
        Table {
            name: name.to_string(),
            headers: ["module", "predicted", "brute", "verdict"].iter().map(|s| s.to_string()).collect(),
            rows,
            verdict,
        }
    }

    pub fn by_name(name: &str, opts: &VerifyOptions) -> Result<Table> {
        match name {
            "klein" => klein_table(opts),
            "cyclic-epsilon" => cyclic_epsilon_table(opts),
            "pm-trichotomy" => pm_table(opts),
            other => Err(OracleError::BadTarget(format!("unknown table {other:?}"))),
        }
    }
}

pub const TABLE_NAMES: [&str; 3] = ["klein", "cyclic-epsilon", "pm-trichotomy"];

/// `delta = gamma` for each Klein four indecomposable.
pub fn klein_table(opts: &VerifyOptions) -> Result<Table> {
    let rows = klein_modules()
        .into_par_iter()
        .map(|(name, desc)| {
            let field = desc.default_field()?;
            let r = verify(&desc, &field, &[Target::delta(), Target::gamma()], opts)?;
            let predicted = r.checks[0].headline_prediction().map(|p| p.value).unwrap_or(0);
            let (d, g) = (r.checks[0].computed, r.checks[1].computed);
            let brute = if d == g { d.to_string() } else { format!("delta={d},gamma={g}") };
            Ok(vec![name.to_string(), predicted.to_string(), brute, r.verdict.to_string()])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new("klein", rows))
}

/// `epsilon(e_n)` on the Jordan modules of `Z_4` over `F_2` and `Z_9` over `F_3`.
pub fn cyclic_epsilon_table(opts: &VerifyOptions) -> Result<Table> {
    let jobs: Vec<(u32, usize)> = (1..=4).map(|n| (2, n)).chain((1..=4).map(|n| (3, n))).collect();
    let rows = jobs
        .into_par_iter()
        .map(|(p, n)| {
            let desc = ModuleDescriptor::jordan(p, 2, n);
            let field = desc.default_field()?;
            let mut point = vec![0; n];
            point[n - 1] = 1;
            let r = verify(&desc, &field, &[Target::new(TargetKind::Epsilon(point))], opts)?;
            let c = &r.checks[0];
            let predicted = c.headline_prediction().map(|p| p.value).unwrap_or(0);
            Ok(vec![
                format!("Z{} on V{n}, e{n}", p * p),
                predicted.to_string(),
                c.computed.to_string(),
                r.verdict.to_string(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new("cyclic-epsilon", rows))
}

/// The `{0, 1, p}` classification against brute-force `delta`.
pub fn pm_table(opts: &VerifyOptions) -> Result<Table> {
    let rows = pm_modules()
        .into_par_iter()
        .map(|(name, desc)| {
            let field = desc.default_field()?;
            let engine = InvariantEngine::new(build(&desc, &field)?).with_group_cap(opts.group_cap);
            let order = match desc.group_order() {
                Some(o) => o,
                None => engine.group_order()? as u64,
            };
            let predicted = classify_pm(&engine, Some(order))?.value;
            let brute = engine.delta_value()?.value as u64;
            let verdict = Verdict::from_bool(predicted == brute);
            Ok(vec![name.to_string(), predicted.to_string(), brute.to_string(), verdict.to_string()])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new("pm-trichotomy", rows))
}
