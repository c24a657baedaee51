//! Seeded parameter sweeps that record how many candidates each strategy
//! explores.
//!
//! Every generated instance holds a pair of requirements that demand
//! different actions in the same situation, so no system satisfies it and
//! each strategy walks its whole space. Node counts then measure space size
//! directly.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{
    enum_procedures, enum_selectors, procedure_space_size, selector_space_size,
};
use crate::model::{
    Action, Alphabet, Libraries, Literal, Procedure, Requirement, SelectorShape, Situation,
    StructureSpec, System,
};
use crate::solve::{
    solve_with, Instance, Problem, ProblemKind, SolveError, SolveOptions, Strategy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BenchParam {
    Vars,
    Actions,
    SelMax,
    PrcMax,
    LibSelectors,
    LibProcedures,
    Reqs,
    CodeBudget,
    ComponentBudget,
    TypeBudget,
}

impl BenchParam {
    pub const ALL: [BenchParam; 10] = [
        BenchParam::Vars,
        BenchParam::Actions,
        BenchParam::SelMax,
        BenchParam::PrcMax,
        BenchParam::LibSelectors,
        BenchParam::LibProcedures,
        BenchParam::Reqs,
        BenchParam::CodeBudget,
        BenchParam::ComponentBudget,
        BenchParam::TypeBudget,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchParam::Vars => "vars",
            BenchParam::Actions => "actions",
            BenchParam::SelMax => "sel_max",
            BenchParam::PrcMax => "prc_max",
            BenchParam::LibSelectors => "lsel",
            BenchParam::LibProcedures => "lprc",
            BenchParam::Reqs => "reqs",
            BenchParam::CodeBudget => "cc",
            BenchParam::ComponentBudget => "cl",
            BenchParam::TypeBudget => "d",
        }
    }

    pub fn applies_to(self, kind: ProblemKind) -> bool {
        use BenchParam::*;
        match self {
            Vars | Actions | SelMax | PrcMax | Reqs => true,
            LibSelectors | LibProcedures | TypeBudget => kind.uses_libraries(),
            CodeBudget => matches!(
                kind,
                ProblemKind::ScreCompA | ProblemKind::SrecSpec | ProblemKind::SrecCompA
            ),
            ComponentBudget => matches!(kind, ProblemKind::SrecComp | ProblemKind::SrecCompA),
        }
    }
}

impl fmt::Display for BenchParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchParam {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        BenchParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| BenchError::UnknownParam(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("unknown sweep parameter `{0}` (expected one of vars, actions, sel_max, prc_max, lsel, lprc, reqs, cc, cl, d)")]
    UnknownParam(String),
    #[error("parameter `{param}` does not apply to {kind}")]
    Inapplicable {
        param: BenchParam,
        kind: ProblemKind,
    },
    #[error("bad sweep `{0}`: expected <param>=<lo>..<hi>")]
    BadSweep(String),
    #[error("bad setting `{0}`: expected <param>=<value>")]
    BadSetting(String),
    #[error("{param} must be at least {min}")]
    TooSmall { param: BenchParam, min: usize },
    #[error("only {available} distinct {what} fit the structure, {requested} requested")]
    LibraryTooLarge {
        what: &'static str,
        requested: usize,
        available: u128,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Inclusive sweep range over one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sweep {
    pub param: BenchParam,
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for Sweep {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let bad = || BenchError::BadSweep(s.to_string());
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
        Ok(Sweep {
            param: name.trim().parse()?,
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// Parses `name=value`.
pub fn parse_setting(s: &str) -> Result<(BenchParam, usize), BenchError> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| BenchError::BadSetting(s.to_string()))?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| BenchError::BadSetting(s.to_string()))?;
    Ok((name.trim().parse()?, value))
}

/// Parameter values for one generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSettings {
    pub vars: usize,
    pub actions: usize,
    pub sel_max: usize,
    pub prc_max: usize,
    pub lsel: usize,
    pub lprc: usize,
    pub reqs: usize,
    pub cc: usize,
    pub cl: usize,
    pub d: usize,
}

impl Default for BenchSettings {
    fn default() -> Self {
        BenchSettings {
            vars: 2,
            actions: 2,
            sel_max: 1,
            prc_max: 1,
            lsel: 2,
            lprc: 2,
            reqs: 3,
            cc: 1,
            cl: 1,
            d: 3,
        }
    }
}

impl BenchSettings {
    pub fn set(&mut self, param: BenchParam, value: usize) {
        let slot = match param {
            BenchParam::Vars => &mut self.vars,
            BenchParam::Actions => &mut self.actions,
            BenchParam::SelMax => &mut self.sel_max,
            BenchParam::PrcMax => &mut self.prc_max,
            BenchParam::LibSelectors => &mut self.lsel,
            BenchParam::LibProcedures => &mut self.lprc,
            BenchParam::Reqs => &mut self.reqs,
            BenchParam::CodeBudget => &mut self.cc,
            BenchParam::ComponentBudget => &mut self.cl,
            BenchParam::TypeBudget => &mut self.d,
        };
        *slot = value;
    }

    fn check(&self, kind: ProblemKind) -> Result<(), BenchError> {
        let min = |param, v: usize, min| {
            if v < min {
                Err(BenchError::TooSmall { param, min })
            } else {
                Ok(())
            }
        };
        min(BenchParam::Vars, self.vars, 1)?;
        // The built-in conflict needs two actions.
        min(BenchParam::Actions, self.actions, 2)?;
        if kind.uses_libraries() {
            min(BenchParam::LibSelectors, self.lsel, 1)?;
            min(BenchParam::LibProcedures, self.lprc, 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub kind: String,
    pub strategy: String,
    pub param: String,
    pub value: usize,
    pub nodes: u64,
    pub millis: u128,
    pub answer: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub kind: ProblemKind,
    pub sweep: Sweep,
    pub seed: u64,
    /// Strategies to run; all applicable ones when `None`.
    pub strategy: Option<Strategy>,
    /// Fixed values for parameters other than the swept one.
    pub settings: Vec<(BenchParam, usize)>,
    pub threads: usize,
}

impl BenchConfig {
    pub fn new(kind: ProblemKind, sweep: Sweep, seed: u64) -> Self {
        BenchConfig {
            kind,
            sweep,
            seed,
            strategy: None,
            settings: Vec::new(),
            threads: 1,
        }
    }
}

fn rng_for(seed: u64, kind: ProblemKind, value: usize) -> ChaCha8Rng {
    let kind_index = ProblemKind::ALL.iter().position(|k| *k == kind).unwrap() as u64;
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&kind_index.to_le_bytes());
    key[16..24].copy_from_slice(&(value as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn random_literal(rng: &mut ChaCha8Rng, alpha: &Alphabet) -> Literal {
    Literal {
        var: rng.gen_range(0..alpha.num_vars()),
        negated: rng.gen_bool(0.5),
    }
}

fn random_action(rng: &mut ChaCha8Rng, alpha: &Alphabet) -> Action {
    Action(rng.gen_range(0..alpha.num_actions()))
}

fn random_procedure(rng: &mut ChaCha8Rng, alpha: &Alphabet, max_conds: usize) -> Procedure {
    match rng.gen_range(0..=max_conds) {
        0 => Procedure::Single(random_action(rng, alpha)),
        n => Procedure::Guarded {
            branches: (0..n)
                .map(|_| (random_literal(rng, alpha), random_action(rng, alpha)))
                .collect(),
            otherwise: random_action(rng, alpha),
        },
    }
}

fn random_selector(rng: &mut ChaCha8Rng, alpha: &Alphabet, max_conds: usize) -> SelectorShape {
    match rng.gen_range(0..=max_conds) {
        0 => SelectorShape::Default,
        n => SelectorShape::Guarded((0..n).map(|_| random_literal(rng, alpha)).collect()),
    }
}

fn random_system(rng: &mut ChaCha8Rng, alpha: &Alphabet, sel_max: usize, prc_max: usize) -> System {
    let selector = random_selector(rng, alpha, sel_max);
    let procedures = (0..selector.slots())
        .map(|_| random_procedure(rng, alpha, prc_max))
        .collect();
    System::new(selector, procedures).expect("slot count")
}

// Spaces up to this size are listed and sampled without replacement;
// larger ones are sampled by rejection, which then rarely collides.
const LIST_LIMIT: u128 = 20_000;

fn distinct_sample<T: Ord + Clone>(
    rng: &mut ChaCha8Rng,
    wanted: usize,
    available: u128,
    what: &'static str,
    list: impl FnOnce() -> Vec<T>,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> T,
) -> Result<Vec<T>, BenchError> {
    if (wanted as u128) > available {
        return Err(BenchError::LibraryTooLarge {
            what,
            requested: wanted,
            available,
        });
    }
    if available <= LIST_LIMIT {
        let all = list();
        return Ok(all.choose_multiple(rng, wanted).cloned().collect());
    }
    let mut set = BTreeSet::new();
    while set.len() < wanted {
        set.insert(draw(rng));
    }
    Ok(set.into_iter().collect())
}

fn random_libraries(
    rng: &mut ChaCha8Rng,
    alpha: Alphabet,
    s: &BenchSettings,
) -> Result<Libraries, BenchError> {
    let selectors = distinct_sample(
        rng,
        s.lsel,
        selector_space_size(alpha, s.sel_max, false),
        "selectors",
        || enum_selectors(alpha, s.sel_max, false).collect(),
        |r| random_selector(r, &alpha, s.sel_max),
    )?;
    let procedures = distinct_sample(
        rng,
        s.lprc,
        procedure_space_size(alpha, s.prc_max, false),
        "procedures",
        || enum_procedures(alpha, s.prc_max, false).collect(),
        |r| random_procedure(r, &alpha, s.prc_max),
    )?;
    Ok(Libraries::new(selectors, procedures))
}

fn random_situation(rng: &mut ChaCha8Rng, n: usize) -> Situation {
    Situation::new((0..n).map(|_| rng.gen_bool(0.5)).collect())
}

/// Two requirements on one situation with different actions.
fn conflict_pair(rng: &mut ChaCha8Rng, alpha: &Alphabet) -> [Requirement; 2] {
    let s = random_situation(rng, alpha.num_vars());
    let a = rng.gen_range(0..alpha.num_actions());
    let b = (a + rng.gen_range(1..alpha.num_actions())) % alpha.num_actions();
    [
        Requirement::new(s.clone(), Action(a)),
        Requirement::new(s, Action(b)),
    ]
}

/// The unsatisfiable instance for one sweep point.
pub fn generate_instance(
    kind: ProblemKind,
    s: &BenchSettings,
    rng: &mut ChaCha8Rng,
) -> Result<Instance, BenchError> {
    s.check(kind)?;
    let alpha = Alphabet::new(s.vars, s.actions).expect("checked sizes");
    let structure = StructureSpec::new(alpha, s.sel_max, s.prc_max);
    let libraries = if kind.uses_libraries() {
        Some(random_libraries(rng, alpha, s)?)
    } else {
        None
    };

    // Creation problems carry the conflict in R. Reconfiguration problems
    // need R satisfied by the base system, so R is labelled by the base and
    // the conflict goes into R_new.
    let base = match (kind.is_reconfiguration(), &libraries) {
        (false, _) => None,
        (true, None) => Some(random_system(rng, &alpha, s.sel_max, s.prc_max)),
        (true, Some(libs)) => {
            let selector = libs.selectors().choose(rng).unwrap().clone();
            let procedures = (0..selector.slots())
                .map(|_| libs.procedures().choose(rng).unwrap().clone())
                .collect();
            Some(System::new(selector, procedures).expect("slot count"))
        }
    };
    let conflict = conflict_pair(rng, &alpha);
    let mut requirements = Vec::with_capacity(s.reqs);
    let mut new_requirements = Vec::new();
    match &base {
        None => {
            let extra = s.reqs.saturating_sub(2);
            requirements.extend(conflict.into_iter().take(s.reqs));
            for _ in 0..extra {
                let sit = random_situation(rng, s.vars);
                requirements.push(Requirement::new(sit, random_action(rng, &alpha)));
            }
        }
        Some(b) => {
            for _ in 0..s.reqs {
                let sit = random_situation(rng, s.vars);
                let action = b.run(&sit);
                requirements.push(Requirement::new(sit, action));
            }
            new_requirements.extend(conflict);
        }
    }
    let problem = match kind {
        ProblemKind::ScreSpec => Problem::ScreSpec { structure },
        ProblemKind::ScreComp => Problem::ScreComp {
            libraries: libraries.unwrap(),
            d: s.d,
        },
        ProblemKind::ScreCompA => Problem::ScreCompA {
            libraries: libraries.unwrap(),
            d: s.d,
            c_c: s.cc,
        },
        ProblemKind::SrecSpec => Problem::SrecSpec {
            base: base.unwrap(),
            structure,
            new_requirements,
            c_c: s.cc,
        },
        ProblemKind::SrecComp => Problem::SrecComp {
            base: base.unwrap(),
            libraries: libraries.unwrap(),
            new_requirements,
            c_l: s.cl,
            d: s.d,
        },
        ProblemKind::SrecCompA => Problem::SrecCompA {
            base: base.unwrap(),
            libraries: libraries.unwrap(),
            new_requirements,
            c_l: s.cl,
            c_c: s.cc,
            d: s.d,
        },
    };
    Ok(Instance::new(alpha, requirements, problem)?)
}

/// The instance generated for one sweep value.
pub fn sweep_instance(config: &BenchConfig, value: usize) -> Result<Instance, BenchError> {
    let mut settings = BenchSettings::default();
    for &(p, v) in &config.settings {
        settings.set(p, v);
    }
    settings.set(config.sweep.param, value);
    generate_instance(
        config.kind,
        &settings,
        &mut rng_for(config.seed, config.kind, value),
    )
}

fn check_params(config: &BenchConfig) -> Result<(), BenchError> {
    let kind = config.kind;
    for param in std::iter::once(config.sweep.param).chain(config.settings.iter().map(|(p, _)| *p))
    {
        if !param.applies_to(kind) {
            return Err(BenchError::Inapplicable { param, kind });
        }
    }
    if let Some(strategy) = config.strategy {
        if !strategy.applies_to(kind) {
            return Err(SolveError::Inapplicable { strategy, kind }.into());
        }
    }
    Ok(())
}

/// Runs every strategy on each sweep point, in sweep order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    check_params(config)?;
    let strategies: Vec<Strategy> = match config.strategy {
        Some(s) => vec![s],
        None => Strategy::ALL
            .into_iter()
            .filter(|s| s.applies_to(config.kind))
            .collect(),
    };
    let mut records = Vec::new();
    for value in config.sweep.lo..=config.sweep.hi {
        let inst = sweep_instance(config, value)?;
        for &strategy in &strategies {
            let started = Instant::now();
            let outcome = solve_with(&inst, &SolveOptions::new(strategy).threads(config.threads))?;
            records.push(BenchRecord {
                kind: config.kind.name().to_string(),
                strategy: strategy.name().to_string(),
                param: config.sweep.param.name().to_string(),
                value,
                nodes: outcome.nodes(),
                millis: started.elapsed().as_millis(),
                answer: if outcome.is_solution() { "yes" } else { "no" }.to_string(),
            });
        }
    }
    Ok(records)
}

/// Writes records as CSV with a header row.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record([
        "kind", "strategy", "param", "value", "nodes", "millis", "answer",
    ])?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
