//! Shared generators for the integration tests.
#![allow(dead_code)]

use compsynth::model::{
    Action, Alphabet, Libraries, Literal, Procedure, Requirement, SelectorShape, Situation,
    StructureSpec, System,
};
use compsynth::solve::{Instance, Problem, ProblemKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Size limits for random instances.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub vars: usize,
    pub actions: usize,
    pub sel_max: usize,
    pub prc_max: usize,
    pub lsel: usize,
    pub lprc: usize,
    pub reqs: usize,
    pub new_reqs: usize,
    pub budget: usize,
}

/// The small-instance envelope used for strategy agreement.
pub const SMALL: Limits = Limits {
    vars: 3,
    actions: 2,
    sel_max: 1,
    prc_max: 2,
    lsel: 2,
    lprc: 3,
    reqs: 4,
    new_reqs: 2,
    budget: 2,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn literal(rng: &mut ChaCha8Rng, alpha: &Alphabet) -> Literal {
    Literal {
        var: rng.gen_range(0..alpha.num_vars()),
        negated: rng.gen_bool(0.5),
    }
}

pub fn action(rng: &mut ChaCha8Rng, alpha: &Alphabet) -> Action {
    Action(rng.gen_range(0..alpha.num_actions()))
}

pub fn procedure(rng: &mut ChaCha8Rng, alpha: &Alphabet, max_conds: usize) -> Procedure {
    match rng.gen_range(0..=max_conds) {
        0 => Procedure::Single(action(rng, alpha)),
        n => Procedure::Guarded {
            branches: (0..n)
                .map(|_| (literal(rng, alpha), action(rng, alpha)))
                .collect(),
            otherwise: action(rng, alpha),
        },
    }
}

pub fn selector(rng: &mut ChaCha8Rng, alpha: &Alphabet, max_conds: usize) -> SelectorShape {
    match rng.gen_range(0..=max_conds) {
        0 => SelectorShape::Default,
        n => SelectorShape::Guarded((0..n).map(|_| literal(rng, alpha)).collect()),
    }
}

pub fn system(rng: &mut ChaCha8Rng, alpha: &Alphabet, sel_max: usize, prc_max: usize) -> System {
    let sel = selector(rng, alpha, sel_max);
    let procs = (0..sel.slots())
        .map(|_| procedure(rng, alpha, prc_max))
        .collect();
    System::new(sel, procs).unwrap()
}

pub fn situation(rng: &mut ChaCha8Rng, n: usize) -> Situation {
    Situation::new((0..n).map(|_| rng.gen_bool(0.5)).collect())
}

pub fn requirement(rng: &mut ChaCha8Rng, alpha: &Alphabet) -> Requirement {
    Requirement::new(situation(rng, alpha.num_vars()), action(rng, alpha))
}

/// A valid random instance of `kind` within `lim`. Reconfiguration bases
/// label their own requirements so the preconditions hold.
pub fn instance(kind: ProblemKind, lim: &Limits, rng: &mut ChaCha8Rng) -> Instance {
    let alpha = Alphabet::new(rng.gen_range(1..=lim.vars), rng.gen_range(1..=lim.actions)).unwrap();
    let structure = StructureSpec::new(
        alpha,
        rng.gen_range(0..=lim.sel_max),
        rng.gen_range(0..=lim.prc_max),
    );
    let libraries = kind.uses_libraries().then(|| {
        let sels = (0..rng.gen_range(1..=lim.lsel))
            .map(|_| selector(rng, &alpha, lim.sel_max))
            .collect();
        let procs = (0..rng.gen_range(1..=lim.lprc))
            .map(|_| procedure(rng, &alpha, lim.prc_max))
            .collect();
        Libraries::new(sels, procs)
    });
    let base = kind.is_reconfiguration().then(|| match &libraries {
        Some(l) => {
            let sel = l.selectors().choose(rng).unwrap().clone();
            let procs = (0..sel.slots())
                .map(|_| l.procedures().choose(rng).unwrap().clone())
                .collect();
            System::new(sel, procs).unwrap()
        }
        None => system(rng, &alpha, structure.sel_max, structure.prc_max),
    });
    let n_reqs = rng.gen_range(0..=lim.reqs);
    let requirements: Vec<Requirement> = (0..n_reqs)
        .map(|_| match &base {
            Some(b) => {
                let s = situation(rng, alpha.num_vars());
                let a = b.run(&s);
                Requirement::new(s, a)
            }
            None => requirement(rng, &alpha),
        })
        .collect();
    let new_requirements: Vec<Requirement> = if base.is_some() {
        (0..rng.gen_range(0..=lim.new_reqs))
            .map(|_| requirement(rng, &alpha))
            .collect()
    } else {
        Vec::new()
    };
    let mut budget = || rng.gen_range(0..=lim.budget);
    let problem = match kind {
        ProblemKind::ScreSpec => Problem::ScreSpec { structure },
        ProblemKind::ScreComp => Problem::ScreComp {
            libraries: libraries.unwrap(),
            d: budget(),
        },
        ProblemKind::ScreCompA => {
            let (d, c_c) = (budget(), budget());
            Problem::ScreCompA {
                libraries: libraries.unwrap(),
                d,
                c_c,
            }
        }
        ProblemKind::SrecSpec => Problem::SrecSpec {
            base: base.unwrap(),
            structure,
            new_requirements,
            c_c: budget(),
        },
        ProblemKind::SrecComp => {
            let (c_l, d) = (budget(), budget());
            Problem::SrecComp {
                base: base.unwrap(),
                libraries: libraries.unwrap(),
                new_requirements,
                c_l,
                d,
            }
        }
        ProblemKind::SrecCompA => {
            let (c_l, c_c, d) = (budget(), budget(), budget());
            Problem::SrecCompA {
                base: base.unwrap(),
                libraries: libraries.unwrap(),
                new_requirements,
                c_l,
                c_c,
                d,
            }
        }
    };
    Instance::new(alpha, requirements, problem).expect("generator builds valid instances")
}

/// A random simple graph on `n` vertices with edge probability `p`.
pub fn graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> compsynth::graph::Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    compsynth::graph::Graph::new(n, edges).unwrap()
}
