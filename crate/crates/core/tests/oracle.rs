//! A nested-loop enumerator that shares no code with the library's
//! odometer, used to check the enumerators and the solvers on small spaces.

mod common;

use std::collections::BTreeSet;

use compsynth::enumerate::{enum_procedures, enum_selectors, enum_systems_spec, system_space_size};
use compsynth::model::{
    same_skeleton, Action, Alphabet, Literal, Procedure, SelectorShape, StructureSpec, System,
};
use compsynth::solve::{
    solve, verify_solution, Instance, Problem, ProblemKind, SolveOutcome, Strategy,
};
use proptest::prelude::*;

fn all_literals(alpha: &Alphabet) -> Vec<Literal> {
    let mut out = Vec::new();
    for var in 0..alpha.num_vars() {
        out.push(Literal::pos(var));
        out.push(Literal::neg(var));
    }
    out
}

fn lit_sequences(alpha: &Alphabet, len: usize) -> Vec<Vec<Literal>> {
    let mut seqs = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for s in &seqs {
            for l in all_literals(alpha) {
                let mut t = s.clone();
                t.push(l);
                next.push(t);
            }
        }
        seqs = next;
    }
    seqs
}

fn action_sequences(alpha: &Alphabet, len: usize) -> Vec<Vec<Action>> {
    let mut seqs = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for s in &seqs {
            for a in 0..alpha.num_actions() {
                let mut t = s.clone();
                t.push(Action(a));
                next.push(t);
            }
        }
        seqs = next;
    }
    seqs
}

fn brute_procedures(alpha: &Alphabet, max_conds: usize) -> Vec<Procedure> {
    let mut out = Vec::new();
    for a in 0..alpha.num_actions() {
        out.push(Procedure::Single(Action(a)));
    }
    for c in 1..=max_conds {
        for lits in lit_sequences(alpha, c) {
            for acts in action_sequences(alpha, c + 1) {
                let branches = lits
                    .iter()
                    .copied()
                    .zip(acts[..c].iter().copied())
                    .collect();
                out.push(Procedure::Guarded {
                    branches,
                    otherwise: acts[c],
                });
            }
        }
    }
    out
}

fn brute_selectors(alpha: &Alphabet, max_conds: usize) -> Vec<SelectorShape> {
    let mut out = vec![SelectorShape::Default];
    for c in 1..=max_conds {
        out.extend(
            lit_sequences(alpha, c)
                .into_iter()
                .map(SelectorShape::Guarded),
        );
    }
    out
}

fn brute_systems(alpha: &Alphabet, sel_max: usize, prc_max: usize) -> Vec<System> {
    let procs = brute_procedures(alpha, prc_max);
    let mut out = Vec::new();
    for sel in brute_selectors(alpha, sel_max) {
        let mut fills: Vec<Vec<Procedure>> = vec![Vec::new()];
        for _ in 0..sel.slots() {
            let mut next = Vec::new();
            for f in &fills {
                for p in &procs {
                    let mut g = f.clone();
                    g.push(p.clone());
                    next.push(g);
                }
            }
            fills = next;
        }
        out.extend(
            fills
                .into_iter()
                .map(|f| System::new(sel.clone(), f).unwrap()),
        );
    }
    out
}

fn strictly_ascending<T: Ord>(items: &[T]) -> bool {
    items.windows(2).all(|w| w[0] < w[1])
}

#[test]
fn enumerators_match_nested_loops() {
    for vars in 1..=2 {
        for actions in 1..=2 {
            let alpha = Alphabet::new(vars, actions).unwrap();
            for max in 0..=1 {
                let procs: Vec<_> = enum_procedures(alpha, max, false).collect();
                assert!(strictly_ascending(&procs));
                let mut brute = brute_procedures(&alpha, max);
                brute.sort();
                assert_eq!(procs, brute);

                let sels: Vec<_> = enum_selectors(alpha, max, false).collect();
                assert!(strictly_ascending(&sels));
                let mut brute = brute_selectors(&alpha, max);
                brute.sort();
                assert_eq!(sels, brute);
            }
            for sel_max in 0..=1 {
                for prc_max in 0..=1 {
                    let spec = StructureSpec::new(alpha, sel_max, prc_max);
                    let systems: Vec<_> = enum_systems_spec(spec, false).collect();
                    assert!(
                        strictly_ascending(&systems),
                        "duplicates or disorder at {spec:?}"
                    );
                    let mut brute = brute_systems(&alpha, sel_max, prc_max);
                    brute.sort();
                    assert_eq!(systems, brute, "{spec:?}");
                    assert_eq!(systems.len() as u128, system_space_size(spec, false));
                }
            }
        }
    }
}

/// Canonically smallest answer by exhaustive pairing over the nested-loop
/// universe, checked only through `verify_solution`.
fn brute_solve(inst: &Instance) -> Option<(System, Option<System>)> {
    let (mut sel_max, mut prc_max) = (0, 0);
    if let Problem::ScreSpec { structure } | Problem::SrecSpec { structure, .. } = &inst.problem {
        sel_max = structure.sel_max;
        prc_max = structure.prc_max;
    }
    if let Some(l) = inst.problem.libraries() {
        sel_max = sel_max.max(l.max_sel());
        prc_max = prc_max.max(l.max_prc());
    }
    if let Some(b) = inst.problem.base() {
        sel_max = sel_max.max(b.selector().cond_count());
        prc_max = prc_max.max(b.max_prc());
    }
    let mut universe = brute_systems(&inst.alphabet, sel_max, prc_max);
    universe.sort();
    let Some(libs) = inst
        .problem
        .libraries()
        .filter(|_| matches!(inst.kind(), ProblemKind::ScreCompA | ProblemKind::SrecCompA))
    else {
        return universe
            .into_iter()
            .find(|s| verify_solution(inst, s, None).is_ok())
            .map(|s| (s, None));
    };
    // Pre-edit systems are library assemblies in both adapted problems.
    let pres: Vec<&System> = universe.iter().filter(|p| libs.builds(p)).collect();
    let mut best: Option<(System, Option<System>)> = None;
    for s in &universe {
        for pre in pres.iter().filter(|p| same_skeleton(p, s)) {
            if verify_solution(inst, s, Some(pre)).is_ok() {
                let cand = (s.clone(), Some((*pre).clone()));
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

const TINY: common::Limits = common::Limits {
    vars: 2,
    actions: 2,
    sel_max: 1,
    prc_max: 1,
    lsel: 2,
    lprc: 3,
    reqs: 4,
    new_reqs: 2,
    budget: 3,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Every strategy returns exactly the brute-force canonical answer, so
    /// in particular Bottom only when nothing in the full space qualifies.
    #[test]
    fn solvers_match_brute_force(seed in any::<u64>(), kind_idx in 0..6usize) {
        let kind = ProblemKind::ALL[kind_idx];
        let inst = common::instance(kind, &TINY, &mut common::rng(seed));
        let expected = brute_solve(&inst);
        for strategy in Strategy::ALL.into_iter().filter(|s| s.applies_to(kind)) {
            let got = match solve(&inst, strategy).unwrap() {
                SolveOutcome::Solution(s) => Some((s.system, s.base)),
                SolveOutcome::Bottom { .. } => None,
            };
            prop_assert_eq!(&got, &expected, "{} {}", kind, strategy);
        }
    }
}

#[test]
fn brute_universe_has_no_duplicates() {
    let alpha = Alphabet::new(2, 2).unwrap();
    let all = brute_systems(&alpha, 1, 1);
    let set: BTreeSet<_> = all.iter().cloned().collect();
    assert_eq!(set.len(), all.len());
}
