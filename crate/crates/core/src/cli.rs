//! Command-line front end used by the `edist` binary.
//!
//! | exit code | outcome                                   |
//! |-----------|-------------------------------------------|
//! | 0         | success, feasible solution, empty report  |
//! | 1         | usage, parse, i/o or dimension error       |
//! | 2         | meaningless variant                       |
//! | 3         | infeasible instance or violated solution  |
//! | 4         | exact-search limit exceeded               |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{tightness_bound, two_district_partition, PartitionCase};
use crate::error::{Error, Result};
use crate::exact::{solve_exact, ExactOptions};
use crate::io::{read_instance, read_solution, InstanceDocument, Number, SolutionDocument};
use crate::model::{classify, objective, validate, Assignment, BalanceSpec, Criterion, Instance, VariantSpec, Witness};
use crate::reductions::{
    build_3partition_instance, build_arms_instance, build_weighted_star_instance, random_connected_graph, PartitionInput,
    SpiderCenters,
};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::solvers::{
    export_linear_program, greedy_assign, round_fractional, solve_fractional_assignment, solve_linear, solve_trivial,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MEANINGLESS: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "edist", version, about = "Edge-based districting: classify, solve, validate and generate instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Solve in floating point (tolerance 1e-9) instead of exact rationals.
    #[arg(long, global = true)]
    pub float: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the exact solver.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Run the exact solver beyond its size limits.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complexity class of a criterion combination such as "BCIO".
    Classify { variant: String },
    /// Solve an instance document; the solution is written next to it with extension .sol.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
        solver: SolverChoice,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a solution document against an instance.
    Validate { instance: PathBuf, solution: PathBuf },
    /// Print a generated instance document.
    Generate {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
    /// Print the linearised model of an instance.
    ExportLp {
        instance: PathBuf,
        /// Criteria to model, within BOW; defaults to the instance's.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Balanced two-district partition of an instance's graph and the arms-family tolerance bound.
    Bounds {
        instance: PathBuf,
        /// District count for the tolerance bound.
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Spider graph from comma-separated 3-Partition values.
    #[command(name = "3partition")]
    ThreePartition {
        values: String,
        /// Leave centers to node selection instead of fixing them at the hub.
        #[arg(long)]
        node_selection: bool,
    },
    /// Weighted star from comma-separated 3-Partition values.
    Wstar { values: String },
    /// Random graph for the vertex-cover loop (variant INO).
    Vcover {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value = "0")]
        alpha: String,
    },
    /// Hub with p + 1 arms of k edges.
    Arms {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "0")]
        phi_l: String,
        /// Defaults to the edge count.
        #[arg(long)]
        phi_u: Option<String>,
    },
    /// Random connected graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Defaults to IOW for weighted graphs and IO otherwise.
        #[arg(long)]
        variant: Option<String>,
        /// Additive tolerance used when the variant has B.
        #[arg(long, default_value = "1/2")]
        tau: String,
        #[arg(long, default_value = "0")]
        alpha: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverChoice {
    Auto,
    Greedy,
    LpRound,
    Trivial,
    Exact,
    Lp,
}

/// Solver `auto` picks: the matching polynomial construction where one
/// exists, the exact search otherwise.
pub fn auto_solver(variant: VariantSpec) -> SolverChoice {
    use Criterion::*;
    let within = |criteria: &[Criterion]| variant.is_subset_of(VariantSpec::of(criteria));
    if !variant.integrity() && !variant.node_selection() {
        SolverChoice::Lp
    } else if variant.integrity() && within(&[Contiguity, Integrity, Objective, Weighted]) {
        SolverChoice::Greedy
    } else if variant == VariantSpec::of(&[Balance, Integrity, Objective]) {
        SolverChoice::LpRound
    } else if variant.integrity() && variant.contiguity() && within(&[Contiguity, Integrity, NodeSelection, Weighted]) {
        SolverChoice::Trivial
    } else {
        SolverChoice::Exact
    }
}

#[derive(Debug, Serialize)]
struct Digest {
    vertices: usize,
    edges: usize,
    p: usize,
    variant: String,
}

impl Digest {
    fn of<T: Scalar>(instance: &Instance<T>) -> Self {
        Digest {
            vertices: instance.graph().vertex_count(),
            edges: instance.graph().edge_count(),
            p: instance.districts(),
            variant: instance.variant().to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
struct ViolationEntry {
    group: String,
    district: Option<usize>,
    witness: serde_json::Value,
    detail: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Outcome {
    Classification {
        variant: String,
        complexity: String,
        derivation: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        caveat: Option<String>,
    },
    Solution {
        solver: SolverChoice,
        path: String,
        feasible: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        rounding_iterations: Option<usize>,
    },
    Infeasible {
        reason: String,
    },
    Violations {
        feasible: bool,
        violations: Vec<ViolationEntry>,
    },
    Partition {
        sizes: [usize; 2],
        bounds: [usize; 2],
        within_bounds: bool,
        feasible: bool,
        cut_point: usize,
        relocations: usize,
        case: String,
        labels: Vec<usize>,
        tightness: Tightness,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Serialize)]
struct Tightness {
    p: usize,
    additive_tau: Number,
    multiplicative_tau: Number,
    note: &'static str,
}

#[derive(Debug, Serialize)]
struct RunReport {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<Digest>,
    outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<Number>,
    wall_time_ms: f64,
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::MeaninglessVariant { .. } => EXIT_MEANINGLESS,
        Error::Infeasible(_) | Error::InfeasibleBounds { .. } => EXIT_INFEASIBLE,
        Error::LimitExceeded(_) => EXIT_LIMIT,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command. Reports
/// go to `out`, usage errors to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let started = Instant::now();
    let result = match &cli.command {
        Command::Generate { family, output } => {
            return finish_text(generate(&cli, family).map(|i| InstanceDocument::from_instance(&i).to_json()), output, out, err)
        }
        Command::ExportLp { instance, variant, output } => {
            return finish_text(export(instance, variant.as_deref()), output, out, err)
        }
        Command::Classify { variant } => cmd_classify(variant),
        Command::Solve { instance, solver, output } => cmd_solve(&cli, instance, *solver, output.as_deref()),
        Command::Validate { instance, solution } => cmd_validate(instance, solution),
        Command::Bounds { instance, p } => cmd_bounds(instance, *p),
    };
    let (code, instance, outcome, objective) = match result {
        Ok(done) => done,
        Err((error, digest)) => {
            let code = exit_code(&error);
            let outcome = if code == EXIT_INFEASIBLE {
                Outcome::Infeasible { reason: error.to_string() }
            } else {
                Outcome::Error { message: error.to_string() }
            };
            (code, digest, outcome, None)
        }
    };
    let report = RunReport {
        command,
        instance,
        outcome,
        objective: objective.map(Number),
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("reports always serialise"));
    code
}

type Finished = (i32, Option<Digest>, Outcome, Option<Rational>);
type Failed = (Error, Option<Digest>);

fn finish_text(result: Result<String>, output: &Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match result {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    match output {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                EXIT_USAGE
            }
        },
        None => {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
    }
}

fn cmd_classify(text: &str) -> Result<Finished, Failed> {
    let variant: VariantSpec = text.parse().map_err(|e| (e, None))?;
    let class = classify(variant).map_err(|e| (e, None))?;
    Ok((
        EXIT_OK,
        None,
        Outcome::Classification {
            variant: variant.to_string(),
            complexity: class.complexity.short().to_string(),
            derivation: class.arguments.iter().map(|a| a.label()).collect::<Vec<_>>().join(" & "),
            caveat: class.caveat.map(str::to_string),
        },
        None,
    ))
}

fn load(path: &Path) -> Result<Instance, Failed> {
    read_instance(path).map_err(|e| (e, None))
}

fn cmd_solve(cli: &Cli, path: &Path, choice: SolverChoice, output: Option<&Path>) -> Result<Finished, Failed> {
    let instance = load(path)?;
    let fail = |e: Error| (e, Some(Digest::of(&instance)));
    let choice = if choice == SolverChoice::Auto { auto_solver(instance.variant()) } else { choice };
    let options = ExactOptions { threads: cli.threads, force: cli.force, ..ExactOptions::default() };
    let (assignment, iterations) = if cli.float {
        let float: Instance<f64> = instance.convert().map_err(fail)?;
        let (a, it) = run_solver(choice, &float, &options).map_err(fail)?;
        (a.convert::<Rational>(), it)
    } else {
        run_solver(choice, &instance, &options).map_err(fail)?
    };
    let feasible = validate(&instance, &assignment).map_err(fail)?.is_feasible();
    let value = if instance.variant().objective() { Some(objective(&instance, &assignment).map_err(fail)?) } else { None };
    let target = output.map(Path::to_path_buf).unwrap_or_else(|| path.with_extension("sol"));
    std::fs::write(&target, SolutionDocument::from_assignment(&assignment, value).to_json()).map_err(|e| fail(e.into()))?;
    Ok((
        if feasible { EXIT_OK } else { EXIT_INFEASIBLE },
        Some(Digest::of(&instance)),
        Outcome::Solution { solver: choice, path: target.display().to_string(), feasible, rounding_iterations: iterations },
        value,
    ))
}

fn run_solver<T: Scalar>(
    choice: SolverChoice,
    instance: &Instance<T>,
    options: &ExactOptions,
) -> Result<(Assignment<T>, Option<usize>)> {
    Ok(match choice {
        SolverChoice::Auto => return run_solver(auto_solver(instance.variant()), instance, options),
        SolverChoice::Greedy => (greedy_assign(instance)?, None),
        SolverChoice::LpRound => {
            let fractional = solve_fractional_assignment(instance)?;
            let rounded = round_fractional(instance, &fractional)?;
            (rounded.assignment, Some(rounded.iterations))
        }
        SolverChoice::Trivial => (solve_trivial(instance)?, None),
        SolverChoice::Exact => (solve_exact(instance, options)?, None),
        SolverChoice::Lp => (solve_linear(instance)?, None),
    })
}

fn cmd_validate(instance_path: &Path, solution_path: &Path) -> Result<Finished, Failed> {
    let instance = load(instance_path)?;
    let fail = |e: Error| (e, Some(Digest::of(&instance)));
    let assignment = read_solution(solution_path).map_err(fail)?;
    let report = validate(&instance, &assignment).map_err(fail)?;
    let violations = report
        .violations
        .iter()
        .map(|v| ViolationEntry {
            group: v.group.to_string(),
            district: v.district,
            witness: match &v.witness {
                Witness::Edge(e) => serde_json::json!({ "edge": e }),
                Witness::District(d) => serde_json::json!({ "district": d }),
                Witness::EdgeSet(set) => serde_json::json!({ "edges": set }),
            },
            detail: v.detail.clone(),
        })
        .collect();
    let feasible = report.is_feasible();
    let value = if feasible && instance.variant().objective() {
        Some(objective(&instance, &assignment).map_err(fail)?)
    } else {
        None
    };
    Ok((
        if feasible { EXIT_OK } else { EXIT_INFEASIBLE },
        Some(Digest::of(&instance)),
        Outcome::Violations { feasible, violations },
        value,
    ))
}

fn cmd_bounds(path: &Path, p: usize) -> Result<Finished, Failed> {
    let instance = load(path)?;
    let fail = |e: Error| (e, Some(Digest::of(&instance)));
    if p < 2 {
        return Err(fail(Error::InvalidInstance("the tolerance bound needs p >= 2".into())));
    }
    let graph = instance.graph();
    let partition = two_district_partition(graph).map_err(fail)?;
    let m = graph.edge_count();
    let bounds = [m.div_ceil(3), 2 * m / 3];
    let sizes = partition.sizes();
    let within_bounds = sizes.iter().all(|&s| bounds[0] <= s && s <= bounds[1]);
    let check = Instance::builder(graph.with_unit_weights(), 2)
        .variant(VariantSpec::of(&[Criterion::Balance, Criterion::Contiguity, Criterion::Integrity, Criterion::NodeSelection]))
        .balance(BalanceSpec::explicit(Rational::from_int(bounds[0] as i64), Rational::from_int(bounds[1] as i64)))
        .build()
        .map_err(fail)?;
    let feasible = validate(&check, &partition.assignment).map_err(fail)?.is_feasible();
    let tight = tightness_bound(p);
    Ok((
        if feasible { EXIT_OK } else { EXIT_INFEASIBLE },
        Some(Digest::of(&instance)),
        Outcome::Partition {
            sizes,
            bounds,
            within_bounds,
            feasible,
            cut_point: partition.cut_point,
            relocations: partition.relocations,
            case: match partition.case {
                PartitionCase::SingleComponent => "single-component",
                PartitionCase::Accumulated => "accumulated",
            }
            .into(),
            labels: partition.assignment.labels().expect("partition is integral"),
            tightness: Tightness {
                p,
                additive_tau: Number(tight.additive),
                multiplicative_tau: Number(tight.multiplicative),
                note: "arms family: infeasible below the additive and above the multiplicative tolerance; \
                       balance counts edges",
            },
        },
        None,
    ))
}

fn parse_values(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("not a positive integer: {s:?}"))))
        .collect()
}

fn generate(cli: &Cli, family: &Family) -> Result<Instance> {
    match family {
        Family::ThreePartition { values, node_selection } => {
            let input = PartitionInput::new(parse_values(values)?)?;
            let centers = if *node_selection { SpiderCenters::Selected } else { SpiderCenters::Hub };
            build_3partition_instance(&input, centers)
        }
        Family::Wstar { values } => build_weighted_star_instance(&PartitionInput::new(parse_values(values)?)?),
        Family::Vcover { n, extra, p, alpha } => {
            let graph = random_connected_graph(*n, *extra, false, cli.seed);
            Instance::builder(graph, *p)
                .variant(VariantSpec::of(&[Criterion::Integrity, Criterion::NodeSelection, Criterion::Objective]))
                .alpha(parse_rational(alpha)?)
                .build()
        }
        Family::Arms { p, k, phi_l, phi_u } => {
            let upper = match phi_u {
                Some(u) => parse_rational(u)?,
                None => Rational::from_int(((p + 1) * k) as i64),
            };
            build_arms_instance(*p, *k, BalanceSpec::explicit(parse_rational(phi_l)?, upper))
        }
        Family::Random { n, extra, weighted, p, variant, tau, alpha } => {
            let graph = random_connected_graph(*n, *extra, *weighted, cli.seed);
            let variant: VariantSpec = match variant {
                Some(v) => v.parse()?,
                None if *weighted => "IOW".parse()?,
                None => "IO".parse()?,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed ^ 0x9e37_79b9_7f4a_7c15);
            let centers = (!variant.node_selection()).then(|| {
                let mut vertices: Vec<usize> = (0..*n).collect();
                vertices.shuffle(&mut rng);
                (0..*p).map(|i| if i < *n { vertices[i] } else { rng.gen_range(0..*n) }).collect()
            });
            let balance = variant.balance().then(|| parse_rational(tau).map(|tau| BalanceSpec::Additive { tau })).transpose()?;
            Instance::builder(graph, *p)
                .variant(variant)
                .maybe_centers(centers)
                .maybe_balance(balance)
                .alpha(parse_rational(alpha)?)
                .build()
        }
    }
}

fn export(path: &Path, variant: Option<&str>) -> Result<String> {
    let instance = read_instance(path)?;
    let variant = match variant {
        Some(v) => v.parse()?,
        None => instance
            .variant()
            .without(Criterion::Integrity)
            .without(Criterion::NodeSelection)
            .without(Criterion::Contiguity),
    };
    Ok(export_linear_program(&instance, variant)?.to_text())
}
