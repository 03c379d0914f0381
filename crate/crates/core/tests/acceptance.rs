//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use edgedist::bounds::two_district_partition;
use edgedist::exact::{min_vertex_cover, solve_3partition, solve_exact, ExactOptions};
use edgedist::graph::Graph;
use edgedist::model::{
    classify, objective, validate, Assignment, BalanceSpec, Complexity, ConstraintGroup, Instance, VariantSpec,
};
use edgedist::reductions::{
    build_3partition_instance, build_arms_instance, build_weighted_star_instance, random_connected_graph,
    spider_graph, vertex_cover_via_districting, PartitionInput, SpiderCenters,
};
use edgedist::scalar::Rational;
use edgedist::solvers::{greedy_assign, round_fractional, solve_fractional_assignment};
use edgedist::Error;
use rand::Rng;

struct Line {
    id: usize,
    name: &'static str,
    failures: Vec<String>,
    summary: String,
    elapsed: Duration,
    limit: Duration,
}

impl Line {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed < self.limit
    }

    fn print(&self) {
        println!(
            "{} {} {:<28} {} ({:.2} s, limit {} s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        for f in self.failures.iter().take(10) {
            println!("    - {f}");
        }
    }
}

/// Running tally for the contiguity-checker equivalence.
#[derive(Default)]
struct C1Tally {
    compared: usize,
    mismatches: Vec<String>,
}

impl C1Tally {
    fn check(&mut self, label: &str, graph: &Graph, assignment: &Assignment) {
        let (compared, bad) = c1_equivalence(graph, assignment);
        self.compared += compared;
        if bad > 0 {
            self.mismatches.push(format!("{label}: {bad} district(s) disagree"));
        }
    }
}

fn run(id: usize, name: &'static str, limit_s: u64, body: impl FnOnce(&mut Vec<String>) -> String) -> Line {
    let started = Instant::now();
    let mut failures = Vec::new();
    let summary = body(&mut failures);
    Line { id, name, failures, summary, elapsed: started.elapsed(), limit: Duration::from_secs(limit_s) }
}

// Rows (W, B, N): -, W, B, WB, N, WN, BN, WBN. Columns: O, IO, IC, CIO.
const GOLDEN: [(&str, [&str; 4]); 8] = [
    ("", ["P", "P", "P", "P"]),
    ("W", ["P", "P", "P", "P"]),
    ("B", ["P", "P", "H", "H"]),
    ("WB", ["P", "H", "H", "H"]),
    ("N", ["H", "H", "P", "H"]),
    ("WN", ["H", "H", "P", "H"]),
    ("BN", ["H", "H", "H", "H"]),
    ("WBN", ["H", "H", "H", "H"]),
];

fn criterion_1(failures: &mut Vec<String>) -> String {
    let columns = ["O", "IO", "IC", "CIO"];
    let mut cells = 0;
    for (row, expected) in GOLDEN {
        for (column, want) in columns.iter().zip(expected) {
            let text = format!("{row}{column}");
            let variant: VariantSpec = text.parse().expect("golden labels parse");
            cells += 1;
            let got = match classify(variant) {
                Ok(c) => match c.complexity {
                    Complexity::PolynomialTime => "P",
                    Complexity::NpHard => "H",
                },
                Err(e) => {
                    failures.push(format!("{text}: {e}"));
                    continue;
                }
            };
            if got != want {
                failures.push(format!("{text}: got {got}, table says {want}"));
            }
        }
    }
    let meaningful = VariantSpec::meaningful().count();
    if meaningful != 32 {
        failures.push(format!("{meaningful} meaningful variants instead of 32"));
    }
    let rejected = VariantSpec::all().filter(|v| classify(*v).is_err()).count();
    if rejected != 64 - 32 {
        failures.push(format!("{rejected} variants rejected instead of 32"));
    }
    format!("{cells}/32 cells compared, {rejected} meaningless variants rejected")
}

fn criterion_2(failures: &mut Vec<String>, tally: &mut C1Tally) -> String {
    let mut rng = rng(2);
    let iow: VariantSpec = "IOW".parse().unwrap();
    let ciow: VariantSpec = "CIOW".parse().unwrap();
    let total = 120;
    for seed in 0..total {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(n - 1..=12);
        let graph = random_connected_graph(n, m - (n - 1), true, 1000 + seed);
        let p = rng.gen_range(1..=3.min(m));
        let alpha = if rng.gen_bool(0.5) { r(0) } else { q(1, 2) };
        let centers = random_centers(&mut rng, n, p);
        let instance =
            Instance::builder(graph.clone(), p).variant(iow).centers(centers.clone()).alpha(alpha).build().unwrap();
        let greedy = greedy_assign(&instance).unwrap();
        let contiguous = instance.with_variant(ciow).unwrap();
        let report = validate(&contiguous, &greedy).unwrap();
        if !report.is_feasible() {
            failures.push(format!("seed {seed}: greedy output violates {:?}", report.violations));
        }
        tally.check(&format!("greedy seed {seed}"), &graph, &greedy);
        let exact = solve_exact(&instance, &ExactOptions::default()).unwrap();
        let (g, e) = (objective(&instance, &greedy).unwrap(), objective(&instance, &exact).unwrap());
        if g != e {
            failures.push(format!("seed {seed}: greedy {g} != exact {e}"));
        }
    }
    format!("{total} instances, contiguous and optimal")
}

fn average(solutions: &[Assignment]) -> Assignment {
    let k = Rational::from_integer(solutions.len() as i128);
    let rows = solutions[0]
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| (0..row.len()).map(|e| solutions.iter().map(|s| s.value(i, e)).sum::<Rational>() / k).collect())
        .collect();
    Assignment::new(rows, solutions[0].centers().to_vec()).unwrap()
}

fn criterion_3(failures: &mut Vec<String>, tally: &mut C1Tally) -> String {
    let mut rng = rng(3);
    let bio: VariantSpec = "BIO".parse().unwrap();
    let taus = [q(0, 1), q(1, 4), q(1, 2), q(1, 1)];
    let (mut feasible, mut infeasible, mut synthetic) = (0, 0, 0);
    let mut seed = 0;
    while feasible < 60 {
        seed += 1;
        let n = rng.gen_range(2..=7);
        let m = rng.gen_range((n - 1).max(1)..=10);
        let graph = random_connected_graph(n, m - (n - 1), false, 3000 + seed);
        let p = rng.gen_range(1..=3.min(m));
        let centers = random_centers(&mut rng, n, p);
        let balance = if rng.gen_bool(0.7) {
            BalanceSpec::Additive { tau: taus[rng.gen_range(0..taus.len())] }
        } else {
            let lo = rng.gen_range(0..=m / p);
            BalanceSpec::explicit(r(lo as i64), r(rng.gen_range(lo.max(1)..=m) as i64))
        };
        let alpha = if rng.gen_bool(0.5) { r(0) } else { q(1, 2) };
        let Ok(instance) = Instance::builder(graph.clone(), p).variant(bio).centers(centers).balance(balance).alpha(alpha).build()
        else {
            continue;
        };
        let exact = solve_exact(&instance, &ExactOptions::default());
        let flow = solve_fractional_assignment(&instance);
        let optimum = match (exact, flow) {
            (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => {
                infeasible += 1;
                continue;
            }
            (Ok(e), Ok(fractional)) => {
                let value = objective(&instance, &e).unwrap();
                let outcome = match round_fractional(&instance, &fractional) {
                    Ok(o) => o,
                    Err(err) => {
                        failures.push(format!("seed {seed}: rounding failed: {err}"));
                        continue;
                    }
                };
                check_rounded(failures, &instance, &outcome.assignment, outcome.iterations, value, &format!("seed {seed}"));
                tally.check(&format!("rounding seed {seed}"), &graph, &outcome.assignment);
                value
            }
            (e, f) => {
                failures.push(format!("seed {seed}: exact {:?} but flow {:?}", e.err(), f.err()));
                continue;
            }
        };
        feasible += 1;
        if p > 1 && p.pow(m as u32) <= 20_000 {
            if let Some((value, optima)) = enumerate_integral(&instance) {
                if value != optimum {
                    failures.push(format!("seed {seed}: enumeration {value} != exact {optimum}"));
                }
                if optima.len() >= 2 {
                    synthetic += 1;
                    let take = optima.len().min(3);
                    let mixed = average(&optima[..take]);
                    match round_fractional(&instance, &mixed) {
                        Ok(o) => check_rounded(failures, &instance, &o.assignment, o.iterations, value, &format!("seed {seed} synthetic")),
                        Err(err) => failures.push(format!("seed {seed}: synthetic rounding failed: {err}")),
                    }
                }
            }
        }
    }
    format!("{feasible} feasible ({infeasible} infeasible agreed), {synthetic} synthetic fractional optima")
}

fn check_rounded(
    failures: &mut Vec<String>,
    instance: &Instance,
    a: &Assignment,
    iterations: usize,
    optimum: Rational,
    label: &str,
) {
    if !a.is_integral() {
        failures.push(format!("{label}: rounded output is fractional"));
    }
    let report = validate(instance, a).unwrap();
    if !report.is_feasible() {
        failures.push(format!("{label}: violations {:?}", report.violations));
    }
    let value = objective(instance, a).unwrap();
    if value != optimum {
        failures.push(format!("{label}: rounded objective {value} != optimum {optimum}"));
    }
    let limit = instance.districts() * instance.graph().edge_count();
    if iterations > limit {
        failures.push(format!("{label}: {iterations} iterations exceed {limit}"));
    }
}

fn feasible(instance: &Instance, label: &str, failures: &mut Vec<String>) -> Option<bool> {
    match solve_exact(instance, &ExactOptions::unlimited()) {
        Ok(a) => {
            if !validate(instance, &a).unwrap().is_feasible() {
                failures.push(format!("{label}: exact returned an invalid solution"));
            }
            Some(true)
        }
        Err(Error::Infeasible(_)) => Some(false),
        Err(e) => {
            failures.push(format!("{label}: {e}"));
            None
        }
    }
}

fn criterion_4(failures: &mut Vec<String>) -> String {
    let mut inputs = 0;
    let mut yes = 0;
    let mut values = [4u64; 6];
    loop {
        if let Ok(input) = PartitionInput::new(values.to_vec()) {
            inputs += 1;
            let oracle = solve_3partition(&values).unwrap().is_some();
            if oracle != two_triples_bruteforce(&values) {
                failures.push(format!("{values:?}: 3-Partition oracle disagrees with brute force"));
            }
            yes += usize::from(oracle);
            let spider = build_3partition_instance(&input, SpiderCenters::Hub).unwrap();
            let star = build_weighted_star_instance(&input).unwrap();
            for (name, instance) in [("spider", &spider), ("star", &star)] {
                if let Some(f) = feasible(instance, &format!("{values:?} {name}"), failures) {
                    if f != oracle {
                        failures.push(format!("{values:?}: {name} feasible = {f}, 3-Partition = {oracle}"));
                    }
                }
            }
        }
        // next nondecreasing tuple over [4, 7]
        let Some(i) = (0..6).rev().find(|&i| values[i] < 7) else { break };
        let v = values[i] + 1;
        values[i..].fill(v);
    }

    let worked = PartitionInput::new(vec![4, 5, 5, 5, 5, 6]).unwrap();
    let spider = build_3partition_instance(&worked, SpiderCenters::Hub).unwrap();
    // arms 0, 1, 5 carry {4, 5, 6}
    let arm_of_edge: Vec<usize> = [4usize, 5, 5, 5, 5, 6].iter().enumerate().flat_map(|(i, &s)| vec![i; s]).collect();
    let labels: Vec<usize> = arm_of_edge.iter().map(|a| usize::from(![0, 1, 5].contains(a))).collect();
    let split = Assignment::from_labels(&labels, vec![0, 0]);
    if !validate(&spider, &split).unwrap().is_feasible() {
        failures.push("split {4,5,6}/{5,5,5} fails on the spider".into());
    }
    let star = build_weighted_star_instance(&worked).unwrap();
    let star_split = Assignment::from_labels(&[0, 0, 1, 1, 1, 0], vec![0, 0]);
    if !validate(&star, &star_split).unwrap().is_feasible() {
        failures.push("split {4,5,6}/{5,5,5} fails on the weighted star".into());
    }
    if feasible(&spider, "worked spider", failures) != Some(true) {
        failures.push("worked instance not feasible".into());
    }
    if spider_graph(worked.values()).edge_count() != 30 {
        failures.push("worked spider does not have 30 edges".into());
    }
    format!("{inputs} valid inputs ({yes} yes), worked split validated")
}

fn criterion_5(failures: &mut Vec<String>, tally: &mut C1Tally) -> String {
    let mut graphs = Vec::new();
    for n in 1..=5 {
        graphs.extend(connected_simple_graphs(n));
    }
    let enumerated = graphs.len();
    let mut rng = rng(5);
    for seed in 0..50 {
        graphs.push(random_connected_graph(6, rng.gen_range(0..=5), false, 5000 + seed));
    }
    let ino: VariantSpec = "INO".parse().unwrap();
    for (k, graph) in graphs.iter().enumerate() {
        let want = vertex_cover_bruteforce(graph);
        if min_vertex_cover(graph).unwrap() != want {
            failures.push(format!("graph {k}: min_vertex_cover disagrees with brute force"));
        }
        match vertex_cover_via_districting(graph, r(0)) {
            Ok(got) if got == want => {}
            Ok(got) => failures.push(format!("graph {k}: districting gives {got}, cover is {want}")),
            Err(e) => failures.push(format!("graph {k}: {e}")),
        }
        if k >= enumerated && want > 0 {
            let instance = Instance::builder(graph.clone(), want).variant(ino).build().unwrap();
            let a = solve_exact(&instance, &ExactOptions::unlimited()).unwrap();
            tally.check(&format!("cover graph {k}"), graph, &a);
        }
    }
    format!("{enumerated} enumerated + 50 random graphs")
}

fn criterion_6(failures: &mut Vec<String>, tally: &mut C1Tally) -> String {
    let mut rng = rng(6);
    let bcin: VariantSpec = "BCIN".parse().unwrap();
    for seed in 0..200u64 {
        let m = rng.gen_range(2..=40);
        let n = rng.gen_range(2..=(m + 1).min(25));
        let graph = random_connected_graph(n, m + 1 - n, false, 6000 + seed);
        let (lo, hi) = (m.div_ceil(3), 2 * m / 3);
        let partition = match two_district_partition(&graph) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let sizes = partition.sizes();
        if sizes.iter().any(|&s| s < lo || s > hi) {
            failures.push(format!("seed {seed}: sizes {sizes:?} outside [{lo}, {hi}] for m = {m}"));
        }
        let check = Instance::builder(graph.with_unit_weights(), 2)
            .variant(bcin)
            .balance(BalanceSpec::explicit(r(lo as i64), r(hi as i64)))
            .build()
            .unwrap();
        let report = validate(&check, &partition.assignment).unwrap();
        if report.of_group(ConstraintGroup::C1).next().is_some() || !report.is_feasible() {
            failures.push(format!("seed {seed}: violations {:?}", report.violations));
        }
        tally.check(&format!("partition seed {seed}"), &graph, &partition.assignment);
    }

    let arms = |lower: i64, upper: i64| build_arms_instance(2, 3, BalanceSpec::explicit(r(lower), r(upper))).unwrap();
    let mut spider_results = Vec::new();
    for (lower, upper, want) in [(0, 5, false), (4, 9, false), (3, 6, true)] {
        let got = feasible(&arms(lower, upper), &format!("arms [{lower}, {upper}]"), failures);
        if got != Some(want) {
            failures.push(format!("three-arm spider with window [{lower}, {upper}]: feasible = {got:?}, expected {want}"));
        }
        spider_results.push(format!("[{lower},{upper}]={}", if want { "feasible" } else { "infeasible" }));
    }
    format!("200 partitions balanced and contiguous; spider {}", spider_results.join(" "))
}

fn main() {
    let mut tally = C1Tally::default();
    let started = Instant::now();
    let lines = [run(1, "table-reproduction", 1, criterion_1),
        run(2, "greedy-correctness", 60, |f| criterion_2(f, &mut tally)),
        run(3, "rounding-correctness", 120, |f| criterion_3(f, &mut tally)),
        run(4, "three-partition-reduction", 300, criterion_4),
        run(5, "vertex-cover-loop", 300, |f| criterion_5(f, &mut tally)),
        run(6, "two-district-partition", 60, |f| criterion_6(f, &mut tally))];
    let seven = Line {
        id: 7,
        name: "validator-equivalence",
        summary: format!("{} districts with at most 6 edges compared", tally.compared),
        failures: tally.mismatches,
        elapsed: Duration::ZERO,
        limit: Duration::from_secs(1),
    };
    let mut ok = true;
    for line in lines.iter().chain(std::iter::once(&seven)) {
        line.print();
        ok &= line.passed();
    }
    println!("total {:.2} s", started.elapsed().as_secs_f64());
    if !ok {
        std::process::exit(1);
    }
}
