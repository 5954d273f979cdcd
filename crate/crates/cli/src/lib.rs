//! Command-line front end: argument model, dispatch and rendering.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qarev_core::revision::{
    self, simplify_conjunct, RevisionOptions, RevisionResult, RevisionStatus,
};
use qarev_core::solver::{models, realize_scenario};
use qarev_core::syntax::{parse, Constraint, Formula, Vars};
use qarev_core::{load_algebra, Algebra, AlgebraError, ParseError};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ENGINE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_ALGEBRA: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "qarev", version, about = "Belief revision and contraction over qualitative algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Revise the beliefs in --psi by --mu.
    Revise(BinaryArgs),
    /// Contract the beliefs in --psi by --mu.
    Contract(BinaryArgs),
    /// Report whether a formula has a model.
    Check(UnaryArgs),
    /// List the consistent scenarios of a formula.
    Scenarios(ScenarioArgs),
    /// Print only the revision distance between --psi and --mu.
    Distance(BinaryArgs),
    /// Check an algebra file against the algebra laws.
    ValidateAlgebra(AlgebraArg),
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// Built-in algebra (`allen`, `rcc8`) or path to an algebra file.
    #[arg(long, default_value = "allen")]
    pub algebra: String,
}

#[derive(Debug, Args)]
pub struct BinaryArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    #[arg(long)]
    pub psi: PathBuf,
    #[arg(long)]
    pub mu: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Dnf)]
    pub format: Format,
    /// Print the per-pair report to stderr.
    #[arg(long)]
    pub trace: bool,
    /// Disable branch-and-bound pruning.
    #[arg(long)]
    pub no_prune: bool,
}

#[derive(Debug, Args)]
pub struct UnaryArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    #[arg(long)]
    pub formula: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    #[arg(long)]
    pub formula: PathBuf,
    /// Append an endpoint realization to each scenario (Allen only).
    #[arg(long)]
    pub realize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dnf,
    Scenarios,
    Json,
}

/// A failure carrying its exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn io(path: &Path, e: io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        Self {
            code: EXIT_PARSE,
            message: format!("{}:{e}", path.display()),
        }
    }

    fn algebra(source: &str, e: AlgebraError) -> Self {
        Self {
            code: if e.is_syntax() { EXIT_PARSE } else { EXIT_ALGEBRA },
            message: format!("{source}: {e}"),
        }
    }

    fn engine(e: qarev_core::Error) -> Self {
        Self {
            code: EXIT_ENGINE,
            message: e.to_string(),
        }
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut text = String::new();
    let mut diag = String::new();
    let code = match dispatch(cli.command, &mut text, &mut diag) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(diag, "error: {}", f.message);
            f.code
        }
    };
    let written = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    let _ = err.write_all(diag.as_bytes());
    match written {
        Ok(()) => code,
        Err(_) => EXIT_IO,
    }
}

fn dispatch(command: Command, out: &mut String, err: &mut String) -> Result<u8, Failure> {
    match command {
        Command::Revise(args) => {
            let (alg, psi, mu) = load_pair(&args)?;
            let r = revision::revise_with(alg.get(), &psi, &mu, options(&args))
                .map_err(Failure::engine)?;
            report(alg.get(), &r, &args, Vars::of([&psi, &mu]), out, err);
        }
        Command::Contract(args) => {
            let (alg, psi, mu) = load_pair(&args)?;
            let r = revision::contract_with(alg.get(), &psi, &mu, options(&args))
                .map_err(Failure::engine)?;
            report(alg.get(), &r, &args, Vars::of([&psi, &mu]), out, err);
        }
        Command::Distance(args) => {
            let (alg, psi, mu) = load_pair(&args)?;
            let r = revision::revise_with(alg.get(), &psi, &mu, options(&args))
                .map_err(Failure::engine)?;
            if args.trace {
                trace(&r, err);
            }
            let _ = writeln!(out, "{}", delta_text(r.delta));
        }
        Command::Check(args) => {
            let alg = load(&args.algebra)?;
            let f = read_formula(alg.get(), &args.formula)?;
            let consistent =
                qarev_core::solver::is_consistent(alg.get(), &f).map_err(Failure::engine)?;
            let _ = writeln!(out, "{}", if consistent { "CONSISTENT" } else { "INCONSISTENT" });
        }
        Command::Scenarios(args) => {
            let alg = load(&args.algebra)?;
            let a = alg.get();
            let f = read_formula(a, &args.formula)?;
            let set = models(a, &f, &f.variables()).map_err(Failure::engine)?;
            for s in &set {
                let _ = write!(out, "{}", s.display(a));
                if args.realize {
                    match realize_scenario(a, s).map_err(Failure::engine)? {
                        Some(r) => {
                            let _ = write!(out, "\t{r}");
                        }
                        None => {
                            let _ = write!(out, "\tunrealizable");
                        }
                    }
                }
                out.push('\n');
            }
        }
        Command::ValidateAlgebra(args) => {
            let (label, text) = algebra_text(&args.algebra)?;
            let alg = Algebra::from_json_unchecked(&text).map_err(|e| Failure::algebra(&label, e))?;
            let report = alg.law_report();
            for check in &report.checks {
                match &check.violation {
                    None => {
                        let _ = writeln!(out, "ok\t{}", check.law);
                    }
                    Some(v) => {
                        let _ = writeln!(out, "FAIL\t{}\t{v}", check.law);
                    }
                }
            }
            if !report.passed() {
                let _ = writeln!(err, "error: {label}: algebra violates its laws");
                return Ok(EXIT_ALGEBRA);
            }
            let _ = writeln!(out, "VALID\t{} ({} base relations)", alg.name(), alg.len());
        }
    }
    Ok(EXIT_OK)
}

fn options(args: &BinaryArgs) -> RevisionOptions {
    RevisionOptions {
        prune: !args.no_prune,
    }
}

/// A built-in algebra or one loaded from a file.
enum AlgebraRef {
    Builtin(&'static Algebra),
    Loaded(Box<Algebra>),
}

impl AlgebraRef {
    fn get(&self) -> &Algebra {
        match self {
            AlgebraRef::Builtin(a) => a,
            AlgebraRef::Loaded(a) => a,
        }
    }
}

fn algebra_text(name: &str) -> Result<(String, String), Failure> {
    if let Some(a) = Algebra::builtin(name) {
        return Ok((name.to_string(), a.to_json()));
    }
    let path = Path::new(name);
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    Ok((path.display().to_string(), text))
}

fn load(arg: &AlgebraArg) -> Result<AlgebraRef, Failure> {
    if let Some(a) = Algebra::builtin(&arg.algebra) {
        return Ok(AlgebraRef::Builtin(a));
    }
    let (label, text) = algebra_text(&arg.algebra)?;
    let alg = load_algebra(&text).map_err(|e| Failure::algebra(&label, e))?;
    Ok(AlgebraRef::Loaded(Box::new(alg)))
}

fn read_formula(alg: &Algebra, path: &Path) -> Result<Formula, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    parse(alg, &text).map_err(|e| Failure::parse(path, e))
}

fn load_pair(args: &BinaryArgs) -> Result<(AlgebraRef, Formula, Formula), Failure> {
    let alg = load(&args.algebra)?;
    let psi = read_formula(alg.get(), &args.psi)?;
    let mu = read_formula(alg.get(), &args.mu)?;
    Ok((alg, psi, mu))
}

fn delta_text(delta: Option<u32>) -> String {
    delta.map_or_else(|| "undefined".to_string(), |d| d.to_string())
}

/// The result DNF as one line per disjunct, mentioning every variable of
/// `vars` at least once so that re-parsing recovers the same vocabulary.
pub fn dnf_lines(alg: &Algebra, r: &RevisionResult, vars: &Vars) -> Vec<String> {
    let mut disjuncts: Vec<Formula> = r.result_dnf.iter().map(|cf| simplify_conjunct(alg, cf)).collect();
    let mentioned = Vars::of(&disjuncts);
    let missing: Vec<_> = vars.iter().filter(|v| mentioned.index_of(v).is_none()).cloned().collect();
    if let (Some(first), false) = (disjuncts.first_mut(), missing.is_empty()) {
        let anchor = mentioned.get(0).clone();
        let mut parts = match std::mem::replace(first, Formula::And(Vec::new())) {
            Formula::And(cs) => cs,
            f => vec![f],
        };
        for v in missing {
            parts.push(Formula::Atom(Constraint::new(anchor.clone(), alg.universal(), v)));
        }
        *first = Formula::and(parts);
    }
    disjuncts
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let body = f.display(alg).to_string();
            if k == 0 {
                body
            } else {
                format!("| {body}")
            }
        })
        .collect()
}

fn trace(r: &RevisionResult, err: &mut String) {
    for p in &r.pair_report {
        let _ = writeln!(
            err,
            "{}\t{}\t{}\t{}",
            p.i,
            p.j,
            p.delta.map_or_else(|| "-".to_string(), |d| d.to_string()),
            p.pruned
        );
    }
}

#[derive(Serialize)]
struct JsonResult {
    delta: Option<u32>,
    dnf: Vec<String>,
    scenarios: Vec<String>,
    pair_report: Vec<(usize, usize, Option<u32>, bool)>,
}

fn report(alg: &Algebra, r: &RevisionResult, args: &BinaryArgs, vars: Vars, out: &mut String, err: &mut String) {
    match r.status {
        RevisionStatus::InconsistentPsi => {
            let _ = writeln!(err, "warning: the old beliefs are inconsistent; the result is the new belief");
        }
        RevisionStatus::InconsistentMu => {
            let _ = writeln!(err, "warning: the new belief is inconsistent; the result is inconsistent");
        }
        RevisionStatus::TautologyNotContracted => {
            let _ = writeln!(err, "warning: a tautology cannot be contracted; the beliefs are unchanged");
        }
        RevisionStatus::Normal => {}
    }
    if args.trace {
        trace(r, err);
    }
    let scenarios: Vec<String> = r.result_scenarios.iter().map(|s| s.display(alg).to_string()).collect();
    match args.format {
        Format::Json => {
            let doc = JsonResult {
                delta: r.delta,
                dnf: dnf_lines(alg, r, &vars)
                    .into_iter()
                    .map(|l| l.strip_prefix("| ").map(str::to_string).unwrap_or(l))
                    .collect(),
                scenarios,
                pair_report: r.pair_report.iter().map(|p| (p.i, p.j, p.delta, p.pruned)).collect(),
            };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Dnf => {
            let _ = writeln!(out, "delta = {}", delta_text(r.delta));
            if r.result_dnf.is_empty() {
                let _ = writeln!(out, "# inconsistent: no model");
            }
            for line in dnf_lines(alg, r, &vars) {
                let _ = writeln!(out, "{line}");
            }
        }
        Format::Scenarios => {
            let _ = writeln!(out, "delta = {}", delta_text(r.delta));
            for s in scenarios {
                let _ = writeln!(out, "{s}");
            }
        }
    }
}
