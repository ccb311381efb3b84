//! Command-line front end: instance I/O, one subcommand per module, and the
//! randomized self-test harness.
//!
//! Every subcommand reads instances as JSON files, writes a single JSON
//! document to standard output (pretty-printed tables with `--pretty`), and
//! exits 0 on success, 1 on domain errors, 2 on exhausted resource budgets.
//! Randomized runs derive from one seed — given via `--seed` or drawn fresh
//! and echoed in the report header — so any report can be reproduced byte
//! for byte.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use serde_json::{json, Value};

use crate::bounds;
use crate::bruteforce;
use crate::error::{Error, Result};
use crate::formulation;
use crate::instance::SetInstance;
use crate::lex::{Extremum, IntPoint, Permutation};
use crate::lexopt;
use crate::ratio;
use crate::structure;
use crate::testgen;

/// Entry point used by the binary: parses, executes, prints, maps errors to
/// exit codes. Output is built fully before printing, so failed runs emit no
/// partial JSON.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let argv: Vec<String> = std::iter::once("lexbound".to_string())
        .chain(argv)
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outcomes, not usage errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(Output { text, exit }) => {
            // A reader closing the pipe early (`… | head`) is not a failure.
            use std::io::Write;
            match writeln!(std::io::stdout(), "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
                Ok(()) => exit,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// The testable core: everything `run` does except printing and exiting.
pub fn run_to_string(argv: &[&str]) -> Result<Output> {
    let argv: Vec<String> = std::iter::once("lexbound".to_string())
        .chain(argv.iter().map(|s| s.to_string()))
        .collect();
    let cli =
        Cli::try_parse_from(&argv).map_err(|e| Error::domain(e.render().to_string()))?;
    execute(cli)
}

/// A finished run: the full document for standard output plus the exit code
/// (self-test reports print even when some checks fail).
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub exit: i32,
}

#[derive(Parser)]
#[command(
    name = "lexbound",
    version,
    about = "Lexicographic optima, lex primal/dual bounds, and independence-system formulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Seed for all randomized suites; drawn fresh and echoed when omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for per-permutation and per-instance loops.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Pretty-print JSON and render tables for humans.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Lex maximum or minimum of an instance under one permutation.
    Lexopt {
        #[arg(long)]
        instance: PathBuf,
        /// `identity`, `reverse`, or a 1-based image like `3,1,2`.
        #[arg(long, default_value = "identity")]
        perm: String,
        #[arg(long, value_enum, default_value_t = Dir::Max)]
        dir: Dir,
        #[arg(long, value_enum, default_value_t = Algo::Greedy)]
        algo: Algo,
    },
    /// Primal and dual bounds from a permutation family.
    Bounds {
        #[arg(long)]
        instance: PathBuf,
        /// Objective as comma-separated rationals, e.g. `1,1/2,-3`.
        #[arg(long)]
        c: String,
        /// `h1`, `h2`, `h3`, or `file:perms.json` (array of 1-based images).
        #[arg(long)]
        family: String,
        /// Also compute the exact optimum by enumeration.
        #[arg(long)]
        ground_truth: bool,
    },
    /// Maximal/minimal point machinery and the named instance generators.
    Structure {
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long, value_enum)]
        op: StructOp,
        /// Permutation for `maxi-lexset` / `is-lexordered`.
        #[arg(long)]
        perm: Option<String>,
        /// Threshold point for `maxi-lexset`, e.g. `1,1,1,1,2`.
        #[arg(long)]
        theta: Option<String>,
        /// Dimension for `gen-simplices` / `gen-kappa`.
        #[arg(long)]
        n: Option<usize>,
        /// Coordinate cap for `gen-simplices`.
        #[arg(long)]
        delta: Option<i64>,
        /// Scale for `gen-kappa`.
        #[arg(long)]
        kappa: Option<i64>,
    },
    /// Emit (and optionally verify) a polyhedral formulation.
    Formulate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        kind: FormKind,
        /// Check the binary solutions of the emitted system against the set.
        #[arg(long)]
        verify: bool,
    },
    /// Brute-force reference answers for differential testing.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        op: OracleOp,
        #[arg(long)]
        perm: Option<String>,
        #[arg(long, value_enum, default_value_t = Dir::Max)]
        dir: Dir,
        #[arg(long)]
        c: Option<String>,
    },
    /// Gap and ratio tables over the named instance families.
    Bench {
        #[arg(long, value_enum)]
        family: BenchFamily,
        /// Dimension range, e.g. `4..6` or a single `5`.
        #[arg(long)]
        n: String,
        /// Coordinate-cap range for the simplices family, e.g. `2..3`.
        #[arg(long)]
        delta: Option<String>,
        /// Scale range for the kappa family, e.g. `2..10`.
        #[arg(long)]
        kappa: Option<String>,
        /// Objective: only `ones` is meaningful across a dimension range.
        #[arg(long, default_value = "ones")]
        c: String,
    },
    /// Built-in checks: worked examples (`quick`) plus randomized
    /// cross-validation suites (`full`).
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    Max,
    Min,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Greedy,
    Bisect,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StructOp {
    Maximal,
    MinInfeasible,
    MaxiLexset,
    IsLexordered,
    GenSimplices,
    GenKappa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormKind {
    Cover,
    Strengthened,
    Extended,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleOp {
    Enumerate,
    Lexopt,
    Maximal,
    Optimum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFamily {
    Simplices,
    Kappa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

fn execute(cli: Cli) -> Result<Output> {
    if let Some(jobs) = cli.global.jobs {
        // Ignore failure: the global pool can only be installed once per
        // process, and ordering is canonical regardless of thread count.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let pretty = cli.global.pretty;
    match cli.command {
        Command::Lexopt { instance, perm, dir, algo } => {
            let inst = load_instance(&instance)?;
            let sigma = parse_permutation(&perm, inst.n())?;
            let doc = lexopt_doc(&inst, &sigma, dir, algo)?;
            Ok(Output { text: render(&doc, pretty), exit: 0 })
        }
        Command::Bounds { instance, c, family, ground_truth } => {
            let inst = load_instance(&instance)?;
            let c = parse_objective(&c, inst.n())?;
            let family = parse_family(&family, &inst)?;
            let report = bounds::bounds_report(&inst, &family, &c, ground_truth)?;
            let doc: Value = serde_json::from_str(&report.to_json())
                .expect("report JSON is well-formed");
            Ok(Output { text: render(&doc, pretty), exit: 0 })
        }
        Command::Structure { instance, op, perm, theta, n, delta, kappa } => {
            let doc = structure_doc(instance, op, perm, theta, n, delta, kappa)?;
            Ok(Output { text: render(&doc, pretty), exit: 0 })
        }
        Command::Formulate { instance, kind, verify } => {
            let inst = load_instance(&instance)?;
            let doc = formulate_doc(&inst, kind, verify)?;
            Ok(Output { text: render(&doc, pretty), exit: 0 })
        }
        Command::Oracle { instance, op, perm, dir, c } => {
            let inst = load_instance(&instance)?;
            let doc = oracle_doc(&inst, op, perm, dir, c)?;
            Ok(Output { text: render(&doc, pretty), exit: 0 })
        }
        Command::Bench { family, n, delta, kappa, c } => {
            bench_doc(family, &n, delta.as_deref(), kappa.as_deref(), &c, pretty)
        }
        Command::Selftest { level } => selftest_doc(level, cli.global.seed, pretty),
    }
}

// ─────────────────────────────── subcommands ───────────────────────────────

fn lexopt_doc(inst: &SetInstance, sigma: &Permutation, dir: Dir, algo: Algo) -> Result<Value> {
    let which = match dir {
        Dir::Max => Extremum::Max,
        Dir::Min => Extremum::Min,
    };
    match algo {
        Algo::Greedy => {
            let point = lexopt::lex_extreme(inst, sigma, which)?;
            Ok(json!({ "point": point.coords() }))
        }
        Algo::Bisect => {
            require_max(dir, "bisection")?;
            let (point, calls) = lexopt::lex_max_bisection(inst, sigma)?;
            Ok(json!({ "point": point.coords(), "calls": calls }))
        }
        Algo::Closed => {
            require_max(dir, "the closed forms")?;
            let point = if inst.sign_separated_view().is_some() {
                lexopt::lex_max_sign_separated(inst, sigma)?
            } else {
                match inst.body() {
                    crate::instance::Body::Submodular(_) => {
                        lexopt::lex_max_polymatroid(inst, sigma)?
                    }
                    crate::instance::Body::ExplicitLex { .. } => {
                        lexopt::lex_opt_with_lex_constraints(inst, sigma, which, None)?
                    }
                    other => {
                        return Err(Error::domain(format!(
                            "no closed form for a {} body",
                            other.kind_name()
                        )))
                    }
                }
            };
            Ok(json!({ "point": point.coords() }))
        }
    }
}

fn require_max(dir: Dir, what: &str) -> Result<()> {
    if dir == Dir::Min {
        return Err(Error::domain(format!(
            "{what} computes lex maxima; use --algo greedy for minima"
        )));
    }
    Ok(())
}

fn structure_doc(
    instance: Option<PathBuf>,
    op: StructOp,
    perm: Option<String>,
    theta: Option<String>,
    n: Option<usize>,
    delta: Option<i64>,
    kappa: Option<i64>,
) -> Result<Value> {
    let need_instance = || {
        instance
            .as_ref()
            .ok_or_else(|| Error::domain("this operation needs --instance"))
            .and_then(|p| load_instance(p))
    };
    match op {
        StructOp::Maximal => {
            let inst = need_instance()?;
            let points = structure::maximal_points(&inst)?;
            Ok(json!({ "points": coords_list(&points), "count": points.len() }))
        }
        StructOp::MinInfeasible => {
            let inst = need_instance()?;
            let points = structure::minimal_infeasible_points(&inst)?;
            Ok(json!({ "points": coords_list(&points), "count": points.len() }))
        }
        StructOp::MaxiLexset => {
            let inst = need_instance()?;
            let sigma = parse_permutation(required(&perm, "--perm")?, inst.n())?;
            let theta = parse_point(required(&theta, "--theta")?)?;
            let family = structure::maxi_of_lex_set(&sigma, &theta, inst.bounding_box())?;
            Ok(json!({ "family": coords_list(&family), "count": family.len() }))
        }
        StructOp::IsLexordered => {
            let inst = need_instance()?;
            let sigma = parse_permutation(required(&perm, "--perm")?, inst.n())?;
            let verdict = structure::is_lex_ordered(&inst, &sigma)?;
            Ok(json!({ "lex_ordered": verdict }))
        }
        StructOp::GenSimplices => {
            let n = n.ok_or_else(|| Error::domain("gen-simplices needs --n"))?;
            let delta = delta.ok_or_else(|| Error::domain("gen-simplices needs --delta"))?;
            let facts = structure::simplices_instance(n, delta)?;
            Ok(json!({
                "instance": instance_value(&facts.instance),
                "delta": facts.delta,
                "rho": facts.rho,
                "lexmax_sigma_order": facts.lexmax_sigma_order,
                "witness": facts.witness.coords(),
            }))
        }
        StructOp::GenKappa => {
            let n = n.ok_or_else(|| Error::domain("gen-kappa needs --n"))?;
            let kappa = kappa.ok_or_else(|| Error::domain("gen-kappa needs --kappa"))?;
            let facts = structure::kappa_family_instance(n, kappa)?;
            Ok(json!({
                "instance": instance_value(&facts.instance),
                "kappa": facts.kappa,
                "z_star_ones": facts.z_star_ones,
                "primal_ones": facts.primal_ones,
                "ratio": value_json(&facts.ratio),
            }))
        }
    }
}

fn formulate_doc(inst: &SetInstance, kind: FormKind, verify: bool) -> Result<Value> {
    match kind {
        FormKind::Cover | FormKind::Strengthened => {
            let rows = match kind {
                FormKind::Cover => formulation::cover_formulation(inst)?,
                _ => formulation::strengthened_formulation(inst)?,
            };
            let mut doc = json!({
                "kind": if kind == FormKind::Cover { "cover" } else { "strengthened" },
                "inequalities": serde_json::from_str::<Value>(&formulation::system_to_json(&rows))
                    .expect("system JSON is well-formed"),
                "count": rows.len(),
            });
            if verify {
                doc["verified"] = json!(formulation::verify_formulation(inst, &rows)?);
            }
            Ok(doc)
        }
        FormKind::Extended => {
            let ef = formulation::extended_formulation(inst)?;
            let mut doc: Value =
                serde_json::from_str(&ef.to_json()).expect("formulation JSON is well-formed");
            if verify {
                // The lifted system describes the convex hull; on a 0/1 box
                // its binary solutions must be exactly the feasible set.
                if !inst.bounding_box().is_binary() {
                    return Err(Error::domain(
                        "--verify for the extended formulation needs a 0/1 box",
                    ));
                }
                let ok = inst
                    .bounding_box()
                    .points()
                    .try_fold(true, |acc, x| -> Result<bool> {
                        Ok(acc && (ef.admits(&x)? == inst.contains(&x)?))
                    })?;
                doc["verified"] = json!(ok);
            }
            Ok(doc)
        }
    }
}

fn oracle_doc(
    inst: &SetInstance,
    op: OracleOp,
    perm: Option<String>,
    dir: Dir,
    c: Option<String>,
) -> Result<Value> {
    let feasible = bruteforce::enumerate(inst, inst.bounding_box())?;
    match op {
        OracleOp::Enumerate => {
            Ok(json!({ "points": coords_list(&feasible), "count": feasible.len() }))
        }
        OracleOp::Lexopt => {
            let sigma = parse_permutation(required(&perm, "--perm")?, inst.n())?;
            let which = match dir {
                Dir::Max => Extremum::Max,
                Dir::Min => Extremum::Min,
            };
            match bruteforce::oracle_lex_opt(&feasible, &sigma, which)? {
                None => Ok(json!({ "empty": true })),
                Some(point) => Ok(json!({ "point": point.coords() })),
            }
        }
        OracleOp::Maximal => {
            let maximal = bruteforce::oracle_maximal(&feasible);
            Ok(json!({ "points": coords_list(&maximal), "count": maximal.len() }))
        }
        OracleOp::Optimum => {
            let c = parse_objective(required(&c, "--c")?, inst.n())?;
            match bruteforce::oracle_optimum(&feasible, &c)? {
                None => Ok(json!({ "empty": true })),
                Some((value, point)) => Ok(json!({
                    "value": value_json(&value),
                    "argmax": point.coords(),
                })),
            }
        }
    }
}

fn bench_doc(
    family: BenchFamily,
    n: &str,
    delta: Option<&str>,
    kappa: Option<&str>,
    c: &str,
    pretty: bool,
) -> Result<Output> {
    if c != "ones" {
        return Err(Error::domain(
            "bench sweeps dimensions, so only --c ones is meaningful",
        ));
    }
    let ns = parse_range(n)?;
    let mut rows = Vec::new();
    match family {
        BenchFamily::Simplices => {
            let deltas = parse_range(delta.unwrap_or("2"))?;
            for &n in &ns {
                for &d in &deltas {
                    rows.push(simplices_row(n as usize, d)?);
                }
            }
        }
        BenchFamily::Kappa => {
            let kappas = parse_range(kappa.unwrap_or("2"))?;
            for &n in &ns {
                for &k in &kappas {
                    rows.push(kappa_row(n as usize, k)?);
                }
            }
        }
    }
    let doc = json!({ "family": match family {
        BenchFamily::Simplices => "simplices",
        BenchFamily::Kappa => "kappa",
    }, "c": "ones", "rows": rows });
    if pretty {
        Ok(Output { text: bench_table(family, &doc), exit: 0 })
    } else {
        Ok(Output { text: render(&doc, false), exit: 0 })
    }
}

/// One gap-table row: the dual bound over all of `Σ_n` stays strictly above
/// the optimum on this family.
fn simplices_row(n: usize, delta: i64) -> Result<Value> {
    use itertools::Itertools;
    let facts = structure::simplices_instance(n, delta)?;
    let inst = &facts.instance;
    let all: Vec<Permutation> = (0..n)
        .permutations(n)
        .map(|img| Permutation::new(img).expect("generated images are permutations"))
        .collect();
    let family = bounds::PermFamily::new(n, all)?;
    let c = vec![ratio::rat(1); n];
    let dual = bounds::dual_bound(inst, &family, &c)?;
    let (z_star, _) = bounds::optimum_bruteforce(inst, &c)?;
    let z_dual = dual.z_dual.expect("dual bound was computed");
    Ok(json!({
        "n": n,
        "delta": delta,
        "z_star": value_json(&z_star),
        "z_dual": value_json(&z_dual),
        "gap": value_json(&(&z_dual - &z_star)),
        "witness": facts.witness.coords(),
    }))
}

fn kappa_row(n: usize, kappa: i64) -> Result<Value> {
    let facts = structure::kappa_family_instance(n, kappa)?;
    let family = bounds::family_h1(n)?;
    let c = vec![ratio::rat(1); n];
    let primal = bounds::primal_bound(&facts.instance, &family, &c)?;
    let (z_star, _) = bounds::optimum_bruteforce(&facts.instance, &c)?;
    let z_prim = primal.z_prim.expect("primal bound was computed");
    Ok(json!({
        "n": n,
        "kappa": kappa,
        "z_prim": value_json(&z_prim),
        "z_star": value_json(&z_star),
        "ratio": value_json(&(&z_prim / &z_star)),
    }))
}

fn bench_table(family: BenchFamily, doc: &Value) -> String {
    let mut out = String::new();
    let (header, cols): (&str, [&str; 3]) = match family {
        BenchFamily::Simplices => {
            ("n  delta  z_star  z_dual  gap", ["z_star", "z_dual", "gap"])
        }
        BenchFamily::Kappa => ("n  kappa  z_prim  z_star  ratio", ["z_prim", "z_star", "ratio"]),
    };
    let _ = writeln!(out, "{header}");
    for row in doc["rows"].as_array().expect("rows is an array") {
        let second = if family == BenchFamily::Simplices { "delta" } else { "kappa" };
        let _ = write!(out, "{}  {}", row["n"], row[second]);
        for col in cols {
            let _ = write!(out, "  {}", row[col]["exact"].as_str().unwrap_or("?"));
        }
        let _ = writeln!(out);
    }
    out.pop();
    out
}

// ──────────────────────────────── self-test ────────────────────────────────

fn selftest_doc(level: Level, seed: Option<u64>, pretty: bool) -> Result<Output> {
    let seed = seed.unwrap_or_else(rand::random::<u64>);
    let mut checks: Vec<(String, bool)> = Vec::new();
    quick_checks(&mut checks)?;
    if level == Level::Full {
        full_checks(&mut checks, seed)?;
    }
    let all_pass = checks.iter().all(|(_, ok)| *ok);
    let doc = json!({
        "level": if level == Level::Quick { "quick" } else { "full" },
        "seed": seed,
        "checks": checks
            .iter()
            .map(|(name, ok)| json!({ "name": name, "pass": ok }))
            .collect::<Vec<_>>(),
        "all_pass": all_pass,
    });
    Ok(Output { text: render(&doc, pretty), exit: if all_pass { 0 } else { 1 } })
}

/// Deterministic worked examples: cheap, exact, no randomness.
fn quick_checks(checks: &mut Vec<(String, bool)>) -> Result<()> {
    use crate::instance::{Body, Monotonicity};
    use crate::lex::IntBox;

    let knapsack = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![1, 5, 4, 1, 2]))?,
        Body::Knapsack { a: vec![2, 8, 40, 150, 310], b: 825 },
        Monotonicity::Down,
    )?;
    let id = Permutation::identity(5);
    let lexmax = lexopt::lex_max_greedy(&knapsack, &id)?;
    checks.push((
        "superincreasing knapsack lex maximum".into(),
        lexmax == IntPoint::new(vec![1, 1, 1, 1, 2]),
    ));
    checks.push((
        "superincreasing knapsack is lex-ordered".into(),
        structure::is_lex_ordered(&knapsack, &id)?,
    ));

    let triangle = SetInstance::new(
        IntBox::binary(3),
        Body::IndependenceGraph { edges: vec![(0, 1), (0, 2), (1, 2)] },
        Monotonicity::Down,
    )?;
    let cover = formulation::cover_formulation(&triangle)?;
    let strong = formulation::strengthened_formulation(&triangle)?;
    checks.push((
        "triangle cover system is exact".into(),
        cover.len() == 3 && formulation::verify_formulation(&triangle, &cover)?,
    ));
    checks.push((
        "triangle strengthened system contains its covers".into(),
        formulation::verify_formulation(&triangle, &strong)?
            && formulation::dominance_report(&cover, &strong),
    ));

    let sigma = Permutation::new(vec![2, 0, 1])?;
    checks.push((
        "permutahedron closed form".into(),
        lexopt::permutahedron_lex(3, &sigma, Extremum::Max)? == IntPoint::new(vec![2, 3, 1]),
    ));

    let kappa = structure::kappa_family_instance(2, 2)?;
    checks.push((
        "kappa family facts".into(),
        kappa.z_star_ones == 2 && kappa.ratio == ratio::rat(1),
    ));

    let simplices = structure::simplices_instance(4, 2)?;
    checks.push((
        "simplices witness is infeasible".into(),
        !simplices.instance.contains(&simplices.witness)?,
    ));
    Ok(())
}

/// Randomized cross-validation suites, all derived from the run seed.
fn full_checks(checks: &mut Vec<(String, bool)>, seed: u64) -> Result<()> {
    let mut rng = testgen::rng_from(seed);

    let mut greedy_vs_oracle = true;
    for _ in 0..20 {
        let n = rand::Rng::random_range(&mut rng, 2..=5);
        let inst = testgen::integer_mixed(&mut rng, n, 3);
        let sigma = testgen::random_permutation(&mut rng, n);
        let feasible = bruteforce::enumerate(&inst, inst.bounding_box())?;
        let reference = bruteforce::oracle_lex_opt(&feasible, &sigma, Extremum::Max)?;
        greedy_vs_oracle &= Some(lexopt::lex_max_greedy(&inst, &sigma)?) == reference;
    }
    checks.push(("greedy lex maxima match enumeration".into(), greedy_vs_oracle));

    let mut bisect_agrees = true;
    for _ in 0..20 {
        let n = rand::Rng::random_range(&mut rng, 2..=5);
        let inst = testgen::integer_mixed(&mut rng, n, 3);
        let sigma = testgen::random_permutation(&mut rng, n);
        let (point, calls) = lexopt::lex_max_bisection(&inst, &sigma)?;
        bisect_agrees &= point == lexopt::lex_max_greedy(&inst, &sigma)?
            && calls <= lexopt::bisection_call_bound(inst.bounding_box());
    }
    checks.push(("bisection agrees with greedy under its call bound".into(), bisect_agrees));

    let mut closed_form = true;
    for _ in 0..20 {
        let n = rand::Rng::random_range(&mut rng, 2..=5);
        let loose = testgen::sign_separated(&mut rng, n, 3);
        // The sign-separated closed form reads optima off the box, so it
        // insists on tight bounds.
        let inst = loose.with_box(loose.tighten_bounds()?)?;
        let sigma = testgen::random_permutation(&mut rng, n);
        closed_form &= lexopt::lex_max_sign_separated(&inst, &sigma)?
            == lexopt::lex_max_greedy(&inst, &sigma)?;
    }
    checks.push(("sign-separated closed form matches greedy".into(), closed_form));

    let mut h2_tight = true;
    for _ in 0..10 {
        let n = rand::Rng::random_range(&mut rng, 2..=6);
        let inst = testgen::binary_mixed(&mut rng, n);
        let c = testgen::objective_nonneg(&mut rng, n);
        let family = bounds::family_h2(&inst)?;
        let report = bounds::primal_bound(&inst, &family, &c)?;
        let (z_star, _) = bounds::optimum_bruteforce(&inst, &c)?;
        h2_tight &= report.z_prim_max == Some(z_star);
    }
    checks.push(("maximal-point family is primally tight on 0/1 sets".into(), h2_tight));

    let mut h3_tight = true;
    for _ in 0..10 {
        let n = rand::Rng::random_range(&mut rng, 2..=6);
        let inst = testgen::binary_monotone(&mut rng, n);
        let c = testgen::objective_mixed(&mut rng, n);
        let family = bounds::family_h3(&inst)?;
        let report = bounds::dual_bound(&inst, &family, &c)?;
        let (z_star, _) = bounds::optimum_bruteforce(&inst, &c)?;
        h3_tight &= report.z_dual == Some(z_star);
    }
    checks.push(("minimal-infeasible family is dually tight".into(), h3_tight));

    let mut formulations_exact = true;
    for _ in 0..10 {
        let n = rand::Rng::random_range(&mut rng, 2..=6);
        let inst = testgen::binary_monotone(&mut rng, n);
        let cover = formulation::cover_formulation(&inst)?;
        let strong = formulation::strengthened_formulation(&inst)?;
        formulations_exact &= formulation::verify_formulation(&inst, &cover)?
            && formulation::verify_formulation(&inst, &strong)?
            && formulation::dominance_report(&cover, &strong);
    }
    checks.push(("cover and strengthened systems are exact".into(), formulations_exact));
    Ok(())
}

// ─────────────────────────────── I/O helpers ───────────────────────────────

fn load_instance(path: &PathBuf) -> Result<SetInstance> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    let inst = SetInstance::from_json(&raw)?;
    match std::env::var("LEXBOUND_NODE_CAP") {
        Ok(cap) => {
            let cap: u64 = cap.parse().map_err(|_| {
                Error::domain(format!("LEXBOUND_NODE_CAP must be an integer, got {cap:?}"))
            })?;
            Ok(inst.with_node_cap(cap))
        }
        Err(_) => Ok(inst),
    }
}

fn parse_permutation(spec: &str, n: usize) -> Result<Permutation> {
    match spec {
        "identity" => Ok(Permutation::identity(n)),
        "reverse" => Ok(Permutation::reverse(n)),
        list => {
            let image: Vec<usize> = list
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::domain(format!("bad permutation entry {tok:?}")))
                })
                .collect::<Result<_>>()?;
            if image.iter().any(|&v| v == 0) {
                return Err(Error::domain(
                    "permutation images are 1-based; 0 is not a valid entry",
                ));
            }
            let perm = Permutation::new(image.iter().map(|&v| v - 1).collect())?;
            if perm.n() != n {
                return Err(Error::domain(format!(
                    "permutation on {} letters does not act on dimension {n}",
                    perm.n()
                )));
            }
            Ok(perm)
        }
    }
}

fn parse_objective(spec: &str, n: usize) -> Result<Vec<BigRational>> {
    let c: Vec<BigRational> = spec
        .split(',')
        .map(|tok| ratio::parse_rational(tok.trim()))
        .collect::<Result<_>>()?;
    if c.len() != n {
        return Err(Error::domain(format!(
            "objective has {} entries for an {n}-dim instance",
            c.len()
        )));
    }
    Ok(c)
}

fn parse_point(spec: &str) -> Result<IntPoint> {
    let coords: Vec<i64> = spec
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Error::domain(format!("bad coordinate {tok:?}")))
        })
        .collect::<Result<_>>()?;
    Ok(IntPoint::new(coords))
}

fn parse_family(spec: &str, inst: &SetInstance) -> Result<bounds::PermFamily> {
    match spec {
        "h1" => bounds::family_h1(inst.n()),
        "h2" => bounds::family_h2(inst),
        "h3" => bounds::family_h3(inst),
        other => {
            let Some(path) = other.strip_prefix("file:") else {
                return Err(Error::domain(format!(
                    "unknown family {other:?} (expected h1, h2, h3, or file:perms.json)"
                )));
            };
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("cannot read {path}: {e}")))?;
            let images: Vec<Vec<usize>> = serde_json::from_str(&raw)
                .map_err(|e| Error::domain(format!("malformed permutation file: {e}")))?;
            let perms: Vec<Permutation> = images
                .into_iter()
                .map(|img| {
                    if img.iter().any(|&v| v == 0) {
                        return Err(Error::domain(
                            "permutation images are 1-based; 0 is not a valid entry",
                        ));
                    }
                    Permutation::new(img.into_iter().map(|v| v - 1).collect())
                })
                .collect::<Result<_>>()?;
            bounds::PermFamily::new(inst.n(), perms)
        }
    }
}

fn required<'a>(opt: &'a Option<String>, flag: &str) -> Result<&'a str> {
    opt.as_deref()
        .ok_or_else(|| Error::domain(format!("this operation needs {flag}")))
}

fn parse_range(spec: &str) -> Result<Vec<i64>> {
    let bad = || Error::domain(format!("bad range {spec:?} (expected `a..b` or `a`)"));
    match spec.split_once("..") {
        None => Ok(vec![spec.trim().parse().map_err(|_| bad())?]),
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
    }
}

fn coords_list(points: &[IntPoint]) -> Vec<Vec<i64>> {
    points.iter().map(|p| p.coords().to_vec()).collect()
}

fn instance_value(inst: &SetInstance) -> Value {
    serde_json::from_str(&inst.to_json()).expect("instance JSON is well-formed")
}

fn value_json(r: &BigRational) -> Value {
    json!({ "exact": ratio::format_rational(r), "decimal": ratio::to_f64(r) })
}

fn render(doc: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(doc).expect("document serialization")
    } else {
        serde_json::to_string(doc).expect("document serialization")
    }
}
