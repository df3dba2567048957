//! `sepdeg`: invariant bases, separating degrees and verification reports
//! from the command line.

mod error;
mod memo;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sepdeg_core::invariants::DEFAULT_POINT_CAP;
use sepdeg_core::oracle::{reference_suite, run_suite, Table, TABLE_NAMES, VERSION};
use sepdeg_core::reps::{build, fixed_space, DEFAULT_GROUP_CAP};
use sepdeg_core::{Code, FieldSpec, InvariantEngine, ModuleDescriptor, Target, VerifyOptions};

use error::{CliError, EXIT_FAIL};
use memo::DimMemo;
use render::{ComputeRecord, Format, InvariantsRecord};

#[derive(Parser, Debug)]
#[command(name = "sepdeg", version, about = "Separating degrees of modular representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Output format (default: a one-line listing for `invariants`,
    /// markdown for `tables`, JSON otherwise).
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest group the closure may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP, value_parser = positive)]
    group_cap: usize,
    /// Largest number of projective points a delta/gamma search may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP, value_parser = positive)]
    point_cap: usize,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,
    /// Include wall-clock times in reports (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    /// Reserved for sampling diagnostics; exact computations ignore it.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug, Default)]
struct ModuleArgs {
    /// Module descriptor as inline JSON.
    #[arg(long, conflicts_with = "desc_file")]
    desc: Option<String>,
    /// Path to a JSON module descriptor.
    #[arg(long)]
    desc_file: Option<PathBuf>,
    /// Field as JSON {"p":..,"k":..,"modulus":[..]} (default: smallest
    /// field containing the roots of unity the module needs).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a canonical basis of the degree-d invariants.
    Invariants {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Compute epsilon at a point, delta or gamma by brute force.
    Compute {
        #[arg(value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        module: ModuleArgs,
        /// Point as a JSON list of field element codes.
        #[arg(long)]
        point: Option<String>,
        /// Give up beyond this degree (default: the group order).
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Compare predictions with brute-force values.
    Verify {
        #[command(flatten)]
        module: ModuleArgs,
        /// Targets such as "delta;gamma;epsilon@[0,0,1]=4".
        #[arg(long, conflicts_with = "suite")]
        targets: Option<String>,
        /// Run a built-in suite instead of a single module.
        #[arg(long, value_enum)]
        suite: Option<SuiteName>,
    },
    /// Render a classification table with predicted and brute-force columns.
    Tables {
        /// One of klein, cyclic-epsilon, pm-trichotomy.
        name: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Quantity {
    Epsilon,
    Delta,
    Gamma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteName {
    /// Every module and target of the built-in reference suite.
    Paper,
}

/// Rendered output plus whether every verdict in it passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl ModuleArgs {
    fn descriptor(&self) -> Result<ModuleDescriptor, CliError> {
        let text = match (&self.desc, &self.desc_file) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?,
            (None, None) => return Err(CliError::input("a module is required: pass --desc or --desc-file")),
        };
        ModuleDescriptor::from_json(&text).map_err(|e| CliError::input(e.to_string()))
    }

    fn resolve(&self) -> Result<(ModuleDescriptor, FieldSpec), CliError> {
        let desc = self.descriptor()?;
        let field = match &self.field {
            Some(s) => serde_json::from_str::<FieldSpec>(s).map_err(|e| CliError::input(format!("field JSON: {e}")))?,
            None => desc.default_field()?,
        };
        Ok((desc, field))
    }
}

impl RunArgs {
    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { group_cap: self.group_cap, point_cap: self.point_cap, budget: None, timings: self.timings }
    }

    fn engine(&self, desc: &ModuleDescriptor, field: &FieldSpec) -> Result<InvariantEngine, CliError> {
        Ok(InvariantEngine::new(build(desc, field)?).with_group_cap(self.group_cap).with_point_cap(self.point_cap))
    }

    fn millis(&self, start: Instant) -> Option<u64> {
        self.timings.then(|| start.elapsed().as_millis() as u64)
    }
}

fn parse_point(s: &str) -> Result<Vec<Code>, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::input(format!("point must be a JSON list of field codes: {e}")))
}

fn cmd_invariants(run: &RunArgs, module: &ModuleArgs, degree: u32) -> Result<Outcome, CliError> {
    let (desc, field) = module.resolve()?;
    let start = Instant::now();
    let engine = run.engine(&desc, &field)?;
    let basis = engine.invariant_basis(degree);
    if let Some(m) = DimMemo::from_env() {
        m.check_and_record(&desc, &field, [(degree, basis.dim())])?;
    }
    let rec = InvariantsRecord {
        version: VERSION.to_string(),
        descriptor: desc,
        field,
        degree,
        ambient_dim: basis.ambient_dim,
        dim: basis.dim(),
        basis: basis.basis.iter().map(|p| p.to_string()).collect(),
        millis: run.millis(start),
    };
    Ok(Outcome { text: render::invariants(&rec, run.format), pass: true })
}

fn cmd_compute(
    run: &RunArgs,
    quantity: Quantity,
    module: &ModuleArgs,
    point: Option<&str>,
    degree: Option<u32>,
) -> Result<Outcome, CliError> {
    let (desc, field) = module.resolve()?;
    let start = Instant::now();
    let engine = run.engine(&desc, &field)?;
    let group_order = engine.group_order()?;
    let (quantity, point, value, complete, witness, dims, points) = match quantity {
        Quantity::Epsilon => {
            let point = parse_point(point.ok_or_else(|| CliError::input("epsilon needs --point"))?)?;
            let r = engine.epsilon(&point, degree)?;
            let q = Target::epsilon(point.clone()).to_string();
            (q, Some(point), r.degree_found, true, Some(r.witness.to_string()), r.per_degree_dims, None)
        }
        Quantity::Delta | Quantity::Gamma => {
            let (name, basis) = match quantity {
                Quantity::Delta => ("delta", fixed_space(engine.rep())?),
                _ => {
                    let n = engine.rep().dim();
                    ("gamma", (0..n).map(|i| (0..n).map(|j| (i == j) as Code).collect()).collect())
                }
            };
            let r = engine.supremum(&basis, degree)?;
            (name.to_string(), r.argmax, r.value, r.complete, r.witness, r.per_degree_dims, Some(r.points))
        }
    };
    if let Some(m) = DimMemo::from_env() {
        m.check_and_record(&desc, &field, memo::from_one(&dims))?;
    }
    let rec = ComputeRecord {
        version: VERSION.to_string(),
        descriptor: desc,
        field,
        group_order,
        group_cap: run.group_cap,
        point_cap: run.point_cap,
        quantity,
        point,
        value,
        complete,
        witness,
        per_degree_dims: dims,
        points,
        millis: run.millis(start),
    };
    Ok(Outcome { text: render::compute(&rec, run.format.unwrap_or(Format::Json)), pass: true })
}

fn cmd_verify(
    run: &RunArgs,
    module: &ModuleArgs,
    targets: Option<&str>,
    suite: Option<SuiteName>,
) -> Result<Outcome, CliError> {
    let opts = run.verify_options();
    let format = run.format.unwrap_or(Format::Json);
    let memo = DimMemo::from_env();
    if let Some(SuiteName::Paper) = suite {
        if module.desc.is_some() || module.desc_file.is_some() {
            return Err(CliError::input("--suite runs its own modules; drop --desc/--desc-file"));
        }
        let report = run_suite("paper", &reference_suite(), &opts)?;
        if let Some(m) = &memo {
            for r in &report.reports {
                for c in &r.checks {
                    m.check_and_record(&r.descriptor, &r.field, memo::from_one(&c.evidence.per_degree_dims))?;
                }
            }
        }
        return Ok(Outcome { text: render::suite(&report, format), pass: report.verdict.is_pass() });
    }
    let (desc, field) = module.resolve()?;
    let targets = targets.ok_or_else(|| CliError::input("verify needs --targets or --suite"))?;
    let targets = Target::parse_list(targets).map_err(|e| CliError::input(e.to_string()))?;
    if targets.is_empty() {
        return Err(CliError::input("no targets given"));
    }
    let report = sepdeg_core::oracle::verify(&desc, &field, &targets, &opts)?;
    if let Some(m) = &memo {
        for c in &report.checks {
            m.check_and_record(&desc, &field, memo::from_one(&c.evidence.per_degree_dims))?;
        }
    }
    Ok(Outcome { text: render::report(&report, format), pass: report.verdict.is_pass() })
}

fn cmd_tables(run: &RunArgs, name: &str) -> Result<Outcome, CliError> {
    if !TABLE_NAMES.contains(&name) {
        return Err(CliError::input(format!("unknown table {name:?}; expected one of {}", TABLE_NAMES.join(", "))));
    }
    let table = Table::by_name(name, &run.verify_options())?;
    Ok(Outcome { text: render::table(&table, run.format.unwrap_or(Format::Markdown)), pass: table.verdict.is_pass() })
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let run = &cli.run;
    match &cli.command {
        Command::Invariants { module, degree } => cmd_invariants(run, module, *degree),
        Command::Compute { quantity, module, point, degree } => {
            cmd_compute(run, *quantity, module, point.as_deref(), *degree)
        }
        Command::Verify { module, targets, suite } => cmd_verify(run, module, targets.as_deref(), *suite),
        Command::Tables { name } => cmd_tables(run, name),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Output { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.run.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("sepdeg: cannot size the worker pool: {e}");
            return ExitCode::from(error::EXIT_ENGINE);
        }
    }
    let result = dispatch(&cli).and_then(|o| emit(cli.run.out.as_ref(), &o.text).map(|()| o.pass));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("sepdeg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
