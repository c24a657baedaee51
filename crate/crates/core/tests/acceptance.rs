//! Acceptance criteria, one line of output each. Run with
//! `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use compsynth::bench::{run_bench, sweep_instance, BenchConfig, BenchParam, Sweep};
use compsynth::enumerate::{enum_systems_spec, library_product_size};
use compsynth::format::{
    parse_instance, parse_procedure, parse_selector, serialize_instance, serialize_solution,
};
use compsynth::graph::{ds_oracle, Graph};
use compsynth::model::{
    component_type_count, eval_system, normalize_system, satisfies, Action, Alphabet, Situation,
    StructureSpec, System,
};
use compsynth::reduce::{expected_parameters, reduce, verify_reduction, ReductionReport};
use compsynth::solve::{solve, solve_with, Instance, ProblemKind, SolveOptions, Strategy};
use rand::Rng;

type Verdict = Result<String, String>;
/// Per-strategy node counts and the serialized instance family of one run.
type BenchRun = (Vec<(String, u64)>, Vec<String>);

const EXAMPLE: &str = r#"
format = 1
kind = "scre-spec"
vars = 5
actions = 3
requirements = ["TTTTT a2", "TFFFT a1", "FFFFF a2", "FFFFF a2", "TTTFT a3"]

[structure]
sel_max = 2
prc_max = 3
"#;

fn example_instance() -> Instance {
    parse_instance(EXAMPLE).expect("example document parses")
}

fn example_systems(alpha: &Alphabet) -> (System, System) {
    let p = |t: &str| parse_procedure(t, alpha).unwrap();
    let s1 = System::new(
        parse_selector("if i1 elsif i5 else", alpha).unwrap(),
        vec![
            p("if i4 then a2 elsif !i3 then a1 elsif i5 then a3 else a1"),
            p("if i4 then a2 else a2"),
            p("a2"),
        ],
    )
    .unwrap();
    let s2 = System::new(
        parse_selector("*", alpha).unwrap(),
        vec![p("if !i2 then a1 elsif !i4 then a2 else a3")],
    )
    .unwrap();
    (s1, s2)
}

fn criterion_1() -> Verdict {
    let started = Instant::now();
    let inst = example_instance();
    let (s1, s2) = example_systems(&inst.alphabet);
    let (ok1, bad1) = satisfies(&s1, &inst.requirements).map_err(|e| e.to_string())?;
    let (ok2, bad2) = satisfies(&s2, &inst.requirements).map_err(|e| e.to_string())?;
    let outputs: Vec<Action> = bad2
        .iter()
        .map(|&i| eval_system(&s2, &inst.requirements[i].situation).unwrap())
        .collect();
    let elapsed = started.elapsed();
    if !ok1 || !bad1.is_empty() {
        return Err(format!("S1 violates {bad1:?}"));
    }
    if ok2 || bad2 != vec![0, 2, 3, 4] {
        return Err(format!("S2 violation set {bad2:?}"));
    }
    if outputs != vec![Action(2), Action(0), Action(0), Action(1)] {
        return Err(format!("S2 outputs {outputs:?}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "S1 satisfies r1..r5; S2 violates r1,r3,r4,r5 with a3,a1,a1,a2 ({elapsed:?})"
    ))
}

fn criterion_2() -> Verdict {
    let inst = example_instance();
    let (s1, s2) = example_systems(&inst.alphabet);
    let row = |s: &System| {
        (
            s.selector().cond_count(),
            s.max_prc(),
            s.line_bound(),
            component_type_count(s),
        )
    };
    let got = (row(&s1), row(&s2));
    if got == ((2, 3, 15, 4), (0, 2, 4, 2)) {
        Ok(format!("S1 = {:?}, S2 = {:?}", got.0, got.1))
    } else {
        Err(format!("got {got:?}"))
    }
}

struct GraphCase {
    graph: Graph,
    k: usize,
}

fn graph_sample() -> Vec<GraphCase> {
    let mut rng = common::rng(0x5eed_2024);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let p = [0.2, 0.4, 0.6, 0.8][rng.gen_range(0..4)];
            GraphCase {
                graph: common::graph(&mut rng, n, p),
                k: rng.gen_range(1..=2),
            }
        })
        .collect()
}

/// Runs every kind on every sampled graph, spread over worker threads,
/// returning reports in sample order.
fn reduction_reports(sample: &[GraphCase]) -> Vec<(usize, ReductionReport)> {
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8);
    let jobs: Vec<(usize, ProblemKind)> = (0..sample.len())
        .flat_map(|i| ProblemKind::ALL.into_iter().map(move |k| (i, k)))
        .collect();
    let mut results: Vec<(usize, usize, ReductionReport)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let jobs = &jobs;
                scope.spawn(move || {
                    jobs.iter()
                        .enumerate()
                        .filter(|(j, _)| j % workers == w)
                        .map(|(j, &(i, kind))| {
                            let case = &sample[i];
                            (
                                j,
                                i,
                                verify_reduction(kind, &case.graph, case.k, Strategy::Normalized),
                            )
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    });
    results.sort_by_key(|(j, _, _)| *j);
    results.into_iter().map(|(_, i, r)| (i, r)).collect()
}

fn criterion_3(
    reports: &[(usize, ReductionReport)],
    sample: &[GraphCase],
    elapsed: Duration,
) -> Verdict {
    let bad: Vec<String> = reports
        .iter()
        .filter(|(_, r)| !r.equivalent())
        .map(|(i, r)| {
            format!(
                "graph {i} {}: ds={} solver={:?} {:?}",
                r.kind,
                r.ds_answer(),
                r.solver_answer,
                r.error
            )
        })
        .collect();
    let params_bad: Vec<String> = sample
        .iter()
        .enumerate()
        .flat_map(|(i, c)| ProblemKind::ALL.into_iter().map(move |k| (i, c, k)))
        .filter(|(_, c, k)| {
            reduce(*k, &c.graph, c.k).parameters != expected_parameters(*k, c.graph.n(), c.k)
        })
        .map(|(i, _, k)| format!("graph {i} {k}: parameter map"))
        .collect();
    let yes = reports.iter().filter(|(_, r)| r.ds_answer()).count();
    if !bad.is_empty() || !params_bad.is_empty() {
        return Err(format!(
            "{} mismatches, first: {:?}",
            bad.len() + params_bad.len(),
            bad.iter().chain(&params_bad).next()
        ));
    }
    if elapsed >= Duration::from_secs(600) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} reports equivalent ({} yes, {} no) in {elapsed:.1?}",
        reports.len(),
        yes,
        reports.len() - yes
    ))
}

fn criterion_4(reports: &[(usize, ReductionReport)]) -> Verdict {
    let checked = reports
        .iter()
        .filter(|(_, r)| r.witness_check.is_some())
        .count();
    let failures: Vec<String> = reports
        .iter()
        .filter_map(|(i, r)| match &r.witness_check {
            Some(Err(e)) => Some(format!("graph {i} {}: {e}", r.kind)),
            _ => None,
        })
        .collect();
    let missing = reports
        .iter()
        .filter(|(_, r)| r.ds_answer() != r.witness_check.is_some())
        .count();
    if failures.is_empty() && missing == 0 {
        Ok(format!("{checked} forward witnesses accepted"))
    } else {
        Err(format!(
            "{} failures, first: {:?}",
            failures.len() + missing,
            failures.first()
        ))
    }
}

fn criterion_5() -> Verdict {
    let started = Instant::now();
    let mut compared = 0;
    let mut solutions = 0;
    for kind in ProblemKind::ALL {
        for seed in 0..100u64 {
            let inst = common::instance(
                kind,
                &common::SMALL,
                &mut common::rng(seed * 6 + kind as u64),
            );
            let answers: Vec<_> = Strategy::ALL
                .into_iter()
                .filter(|s| s.applies_to(kind))
                .map(|s| {
                    let out =
                        solve(&inst, s).map_err(|e| format!("{kind} seed {seed} {s}: {e}"))?;
                    Ok((
                        s,
                        out.solution().map(|x| (x.system.clone(), x.base.clone())),
                    ))
                })
                .collect::<Result<_, String>>()?;
            if let Some((s, _)) = answers.iter().find(|(_, a)| *a != answers[0].1) {
                return Err(format!(
                    "{kind} seed {seed}: {s} disagrees with {}",
                    answers[0].0
                ));
            }
            compared += 1;
            solutions += answers[0].1.is_some() as usize;
        }
    }
    let elapsed = started.elapsed();
    if elapsed >= Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{compared} instances, identical witnesses ({solutions} solvable) in {elapsed:.1?}"
    ))
}

fn criterion_6() -> Verdict {
    let alpha = Alphabet::new(2, 2).unwrap();
    let situations: Vec<Situation> = Situation::enumerate(2).collect();
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for s in enum_systems_spec(StructureSpec::new(alpha, 1, 2), false) {
        let n = normalize_system(&s);
        checked += 1;
        if situations
            .iter()
            .any(|sit| eval_system(&n, sit).unwrap() != eval_system(&s, sit).unwrap())
        {
            counterexamples.push(s);
        }
    }
    if counterexamples.is_empty() {
        Ok(format!("{checked} systems, 0 counterexamples"))
    } else {
        Err(format!(
            "{} counterexamples, first {:?}",
            counterexamples.len(),
            counterexamples[0]
        ))
    }
}

fn criterion_7() -> Verdict {
    let mut records = 0;
    for kind in [ProblemKind::ScreComp, ProblemKind::SrecComp] {
        let mut config = BenchConfig::new(
            kind,
            Sweep {
                param: BenchParam::LibProcedures,
                lo: 1,
                hi: 4,
            },
            7,
        );
        config.settings.push((BenchParam::SelMax, 2));
        for r in run_bench(&config).map_err(|e| e.to_string())? {
            let inst = sweep_instance(&config, r.value).map_err(|e| e.to_string())?;
            let bound = library_product_size(inst.problem.libraries().unwrap(), None);
            if r.nodes as u128 > bound {
                return Err(format!(
                    "{kind} {} lprc={}: {} nodes > {bound}",
                    r.strategy, r.value, r.nodes
                ));
            }
            records += 1;
        }
    }
    Ok(format!(
        "{records} records within the library product bound"
    ))
}

fn criterion_8() -> Verdict {
    let p4 = Graph::path(4).unwrap();
    let instances = [
        example_instance(),
        reduce(ProblemKind::SrecComp, &p4, 2).instance,
        reduce(ProblemKind::ScreCompA, &p4, 2).instance,
        reduce(ProblemKind::SrecSpec, &Graph::edgeless(3).unwrap(), 2).instance,
    ];
    for inst in &instances {
        for strategy in Strategy::ALL
            .into_iter()
            .filter(|s| s.applies_to(inst.kind()))
        {
            let docs: Vec<String> = [1, 1, 4]
                .into_iter()
                .map(|t| {
                    let out = solve_with(inst, &SolveOptions::new(strategy).threads(t)).unwrap();
                    serialize_solution(inst.kind(), strategy, &out)
                })
                .collect();
            if docs.iter().any(|d| *d != docs[0]) {
                return Err(format!(
                    "{} {strategy}: solution documents differ",
                    inst.kind()
                ));
            }
        }
    }
    for kind in ProblemKind::ALL {
        let sweep = Sweep {
            param: BenchParam::Reqs,
            lo: 2,
            hi: 4,
        };
        let runs: Vec<BenchRun> = [1, 1, 3]
            .into_iter()
            .map(|t| {
                let config = BenchConfig {
                    threads: t,
                    ..BenchConfig::new(kind, sweep, 99)
                };
                let nodes = run_bench(&config)
                    .unwrap()
                    .into_iter()
                    .map(|r| (r.strategy, r.nodes))
                    .collect();
                let family = (2..=4)
                    .map(|v| serialize_instance(&sweep_instance(&config, v).unwrap()))
                    .collect();
                (nodes, family)
            })
            .collect();
        if runs.iter().any(|r| *r != runs[0]) {
            return Err(format!("{kind}: bench runs differ"));
        }
    }
    Ok(format!(
        "{} solves and 6 bench sweeps repeated 3 times, one parallel, identical",
        instances.len()
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, v: Verdict| match v {
        Ok(detail) => println!("PASS criterion {n} ({name}): {detail}"),
        Err(detail) => {
            failed += 1;
            println!("FAIL criterion {n} ({name}): {detail}");
        }
    };
    report(1, "worked example evaluation", criterion_1());
    report(2, "worked example metrics", criterion_2());
    let sample = graph_sample();
    let started = Instant::now();
    let reports = reduction_reports(&sample);
    let elapsed = started.elapsed();
    report(
        3,
        "reduction equivalence",
        criterion_3(&reports, &sample, elapsed),
    );
    report(4, "forward witness soundness", criterion_4(&reports));
    report(5, "strategy agreement", criterion_5());
    report(6, "exhaustive normalization soundness", criterion_6());
    report(7, "library product node bound", criterion_7());
    report(8, "determinism", criterion_8());
    let ds_sizes: BTreeSet<usize> = sample
        .iter()
        .filter_map(|c| ds_oracle(&c.graph, c.k).map(|d| d.len()))
        .collect();
    println!("(sampled dominating set sizes: {ds_sizes:?})");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
