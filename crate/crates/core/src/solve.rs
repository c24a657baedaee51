//! Exact solvers for the six creation and reconfiguration problems.
//!
//! Each solver walks a candidate space chosen by a [`Strategy`] and returns
//! the canonically smallest system that passes the problem's tests, or
//! [`SolveOutcome::Bottom`] when the space holds none. Malformed input is an
//! error, never `Bottom`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::thread;

use thiserror::Error;

use crate::enumerate::{
    enum_code_neighborhood, enum_component_neighborhood, enum_systems_comp, enum_systems_spec,
    enum_systems_token_filtered, partition, token_count,
};
use crate::model::{
    code_distance, component_distance, component_type_count, consistent_with, satisfies,
    satisfies_all, Alphabet, Libraries, ModelError, Requirement, StructureSpec, System,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProblemKind {
    ScreSpec,
    ScreComp,
    ScreCompA,
    SrecSpec,
    SrecComp,
    SrecCompA,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::ScreSpec,
        ProblemKind::ScreComp,
        ProblemKind::ScreCompA,
        ProblemKind::SrecSpec,
        ProblemKind::SrecComp,
        ProblemKind::SrecCompA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::ScreSpec => "scre-spec",
            ProblemKind::ScreComp => "scre-comp",
            ProblemKind::ScreCompA => "scre-compa",
            ProblemKind::SrecSpec => "srec-spec",
            ProblemKind::SrecComp => "srec-comp",
            ProblemKind::SrecCompA => "srec-compa",
        }
    }

    /// Problems that draw components from libraries.
    pub fn uses_libraries(self) -> bool {
        !matches!(self, ProblemKind::ScreSpec | ProblemKind::SrecSpec)
    }

    pub fn is_reconfiguration(self) -> bool {
        matches!(
            self,
            ProblemKind::SrecSpec | ProblemKind::SrecComp | ProblemKind::SrecCompA
        )
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown problem kind `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Raw token space, every property tested per candidate.
    Baseline,
    /// Variable-distinct blocks where the structure is free; derivation
    /// neighborhoods where it is pinned by a base system or library.
    #[default]
    Normalized,
    /// The library product, for library-based problems only.
    LibraryProduct,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::Baseline,
        Strategy::Normalized,
        Strategy::LibraryProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Baseline => "baseline",
            Strategy::Normalized => "normalized",
            Strategy::LibraryProduct => "library-product",
        }
    }

    pub fn applies_to(self, kind: ProblemKind) -> bool {
        self != Strategy::LibraryProduct || kind.uses_libraries()
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "baseline" => Ok(Strategy::Baseline),
            "normalized" => Ok(Strategy::Normalized),
            "library-product" => Ok(Strategy::LibraryProduct),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    ScreSpec {
        structure: StructureSpec,
    },
    ScreComp {
        libraries: Libraries,
        d: usize,
    },
    ScreCompA {
        libraries: Libraries,
        d: usize,
        c_c: usize,
    },
    SrecSpec {
        base: System,
        structure: StructureSpec,
        new_requirements: Vec<Requirement>,
        c_c: usize,
    },
    SrecComp {
        base: System,
        libraries: Libraries,
        new_requirements: Vec<Requirement>,
        c_l: usize,
        d: usize,
    },
    SrecCompA {
        base: System,
        libraries: Libraries,
        new_requirements: Vec<Requirement>,
        c_l: usize,
        c_c: usize,
        d: usize,
    },
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::ScreSpec { .. } => ProblemKind::ScreSpec,
            Problem::ScreComp { .. } => ProblemKind::ScreComp,
            Problem::ScreCompA { .. } => ProblemKind::ScreCompA,
            Problem::SrecSpec { .. } => ProblemKind::SrecSpec,
            Problem::SrecComp { .. } => ProblemKind::SrecComp,
            Problem::SrecCompA { .. } => ProblemKind::SrecCompA,
        }
    }

    pub fn libraries(&self) -> Option<&Libraries> {
        match self {
            Problem::ScreComp { libraries, .. }
            | Problem::ScreCompA { libraries, .. }
            | Problem::SrecComp { libraries, .. }
            | Problem::SrecCompA { libraries, .. } => Some(libraries),
            _ => None,
        }
    }

    pub fn base(&self) -> Option<&System> {
        match self {
            Problem::SrecSpec { base, .. }
            | Problem::SrecComp { base, .. }
            | Problem::SrecCompA { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn new_requirements(&self) -> &[Requirement] {
        match self {
            Problem::SrecSpec {
                new_requirements, ..
            }
            | Problem::SrecComp {
                new_requirements, ..
            }
            | Problem::SrecCompA {
                new_requirements, ..
            } => new_requirements,
            _ => &[],
        }
    }
}

/// A problem together with its alphabet and requirement set `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub alphabet: Alphabet,
    pub requirements: Vec<Requirement>,
    pub problem: Problem,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("invalid input: {0}")]
    Invalid(#[from] ModelError),
    #[error("structure spec alphabet ({spec:?}) differs from instance alphabet ({instance:?})")]
    AlphabetMismatch { spec: Alphabet, instance: Alphabet },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("strategy {strategy} does not apply to {kind}")]
    Inapplicable {
        strategy: Strategy,
        kind: ProblemKind,
    },
}

impl Instance {
    pub fn new(
        alphabet: Alphabet,
        requirements: Vec<Requirement>,
        problem: Problem,
    ) -> Result<Self, SolveError> {
        let instance = Instance {
            alphabet,
            requirements,
            problem,
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn kind(&self) -> ProblemKind {
        self.problem.kind()
    }

    /// `R` followed by `R_new`.
    pub fn all_requirements(&self) -> Vec<Requirement> {
        let mut all = self.requirements.clone();
        all.extend_from_slice(self.problem.new_requirements());
        all
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let alpha = &self.alphabet;
        for r in self
            .requirements
            .iter()
            .chain(self.problem.new_requirements())
        {
            r.validate(alpha)?;
        }
        let check_spec = |spec: &StructureSpec| {
            if spec.alphabet != *alpha {
                Err(SolveError::AlphabetMismatch {
                    spec: spec.alphabet,
                    instance: *alpha,
                })
            } else {
                Ok(())
            }
        };
        if let Some(libs) = self.problem.libraries() {
            libs.validate(alpha)?;
            if libs.is_empty() {
                return Err(SolveError::Precondition(
                    "both component libraries must be nonempty".into(),
                ));
            }
        }
        if let Some(base) = self.problem.base() {
            base.validate(alpha)?;
            let (ok, violated) = satisfies(base, &self.requirements)?;
            if !ok {
                return Err(SolveError::Precondition(format!(
                    "base system violates requirements {}",
                    violated
                        .iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
        }
        match &self.problem {
            Problem::ScreSpec { structure } => check_spec(structure)?,
            Problem::SrecSpec {
                base, structure, ..
            } => {
                check_spec(structure)?;
                if !consistent_with(base, structure) {
                    return Err(SolveError::Precondition(
                        "base system is not consistent with the structure spec".into(),
                    ));
                }
            }
            Problem::SrecComp {
                base, libraries, ..
            }
            | Problem::SrecCompA {
                base, libraries, ..
            } => {
                if !libraries.builds(base) {
                    return Err(SolveError::Precondition(
                        "base system is not assembled from the libraries".into(),
                    ));
                }
            }
            Problem::ScreComp { .. } | Problem::ScreCompA { .. } => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Metrics {
    /// Component types, measured on the pre-edit system for the adapted
    /// problems.
    pub types: usize,
    pub code_changes: Option<usize>,
    pub component_changes: Option<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub system: System,
    /// The library assembly (creation) or post-swap system (reconfiguration)
    /// that code edits were applied to, for the adapted problems.
    pub base: Option<System>,
    pub metrics: Metrics,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Solution),
    Bottom { nodes: u64 },
}

impl SolveOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SolveOutcome::Solution(s) => s.metrics.nodes,
            SolveOutcome::Bottom { nodes } => *nodes,
        }
    }

    pub fn is_solution(&self) -> bool {
        matches!(self, SolveOutcome::Solution(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solution(s) => Some(s),
            SolveOutcome::Bottom { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub strategy: Strategy,
    /// Worker threads; results do not depend on this.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            strategy: Strategy::Normalized,
            threads: 1,
        }
    }
}

impl SolveOptions {
    pub fn new(strategy: Strategy) -> Self {
        SolveOptions {
            strategy,
            threads: 1,
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Candidate {
    system: System,
    base: Option<System>,
}

type Stream<'a> = Box<dyn Iterator<Item = Candidate> + 'a>;
type Test<'a> = Box<dyn Fn(&Candidate) -> bool + Sync + 'a>;

struct Space<'a> {
    /// Candidates arrive in canonical order, so the first hit is the minimum.
    ascending: bool,
    make: Box<dyn Fn() -> Stream<'a> + Sync + 'a>,
}

fn plain<'a, I: Iterator<Item = System> + 'a>(it: I) -> Stream<'a> {
    Box::new(it.map(|system| Candidate { system, base: None }))
}

fn with_edits<'a, I: Iterator<Item = System> + 'a>(
    bases: I,
    c_c: usize,
    alphabet: Alphabet,
) -> Stream<'a> {
    Box::new(bases.flat_map(move |base| {
        enum_code_neighborhood(&base, c_c, alphabet).map(move |system| Candidate {
            system,
            base: Some(base.clone()),
        })
    }))
}

fn build_space<'a>(inst: &'a Instance, strategy: Strategy) -> Space<'a> {
    let alpha = inst.alphabet;
    match &inst.problem {
        Problem::ScreSpec { structure } => {
            let x = *structure;
            let distinct = strategy == Strategy::Normalized;
            Space {
                ascending: true,
                make: Box::new(move || plain(enum_systems_spec(x, distinct))),
            }
        }
        Problem::ScreComp { libraries, .. } => Space {
            ascending: true,
            make: match strategy {
                Strategy::Baseline => {
                    Box::new(move || plain(enum_systems_token_filtered(alpha, libraries)))
                }
                _ => Box::new(move || plain(enum_systems_comp(libraries, None))),
            },
        },
        Problem::ScreCompA { libraries, d, c_c } => {
            let (d, c_c) = (*d, *c_c);
            let fits = move |s: &System| component_type_count(s) <= d;
            Space {
                ascending: false,
                make: match strategy {
                    Strategy::Baseline => Box::new(move || {
                        with_edits(
                            enum_systems_token_filtered(alpha, libraries).filter(fits),
                            c_c,
                            alpha,
                        )
                    }),
                    _ => Box::new(move || {
                        with_edits(enum_systems_comp(libraries, None).filter(fits), c_c, alpha)
                    }),
                },
            }
        }
        Problem::SrecSpec { base, c_c, .. } => {
            let budget = match strategy {
                Strategy::Baseline => token_count(base),
                _ => *c_c,
            };
            Space {
                ascending: true,
                make: Box::new(move || plain(enum_code_neighborhood(base, budget, alpha))),
            }
        }
        Problem::SrecComp {
            base,
            libraries,
            c_l,
            ..
        } => {
            let c_l = *c_l;
            Space {
                ascending: true,
                make: match strategy {
                    Strategy::Baseline => {
                        Box::new(move || plain(enum_systems_token_filtered(alpha, libraries)))
                    }
                    Strategy::Normalized => {
                        Box::new(move || plain(enum_component_neighborhood(base, libraries, c_l)))
                    }
                    Strategy::LibraryProduct => {
                        Box::new(move || plain(enum_systems_comp(libraries, None)))
                    }
                },
            }
        }
        Problem::SrecCompA {
            base,
            libraries,
            c_l,
            c_c,
            d,
            ..
        } => {
            let (c_l, c_c, d) = (*c_l, *c_c, *d);
            let near = move |s: &System| {
                component_distance(base, s, libraries).is_some_and(|k| k <= c_l)
                    && component_type_count(s) <= d
            };
            Space {
                ascending: false,
                make: match strategy {
                    Strategy::Baseline => Box::new(move || {
                        with_edits(
                            enum_systems_token_filtered(alpha, libraries).filter(near),
                            c_c,
                            alpha,
                        )
                    }),
                    Strategy::Normalized => Box::new(move || {
                        with_edits(
                            enum_component_neighborhood(base, libraries, c_l)
                                .filter(move |s| component_type_count(s) <= d),
                            c_c,
                            alpha,
                        )
                    }),
                    Strategy::LibraryProduct => Box::new(move || {
                        with_edits(enum_systems_comp(libraries, None).filter(near), c_c, alpha)
                    }),
                },
            }
        }
    }
}

/// The per-candidate test for one strategy. Properties the strategy's
/// space already guarantees are not retested.
fn build_test<'a>(inst: &'a Instance, strategy: Strategy, reqs: &'a [Requirement]) -> Test<'a> {
    match &inst.problem {
        Problem::ScreSpec { .. } | Problem::ScreCompA { .. } | Problem::SrecCompA { .. } => {
            Box::new(move |c| satisfies_all(&c.system, reqs))
        }
        Problem::ScreComp { d, .. } => {
            let d = *d;
            Box::new(move |c| {
                component_type_count(&c.system) <= d && satisfies_all(&c.system, reqs)
            })
        }
        Problem::SrecSpec {
            base,
            structure,
            c_c,
            ..
        } => {
            let c_c = *c_c;
            let check_distance = strategy == Strategy::Baseline;
            Box::new(move |c| {
                (!check_distance || code_distance(base, &c.system).is_some_and(|k| k <= c_c))
                    && consistent_with(&c.system, structure)
                    && satisfies_all(&c.system, reqs)
            })
        }
        Problem::SrecComp {
            base,
            libraries,
            c_l,
            d,
            ..
        } => {
            let (c_l, d) = (*c_l, *d);
            let check_distance = strategy != Strategy::Normalized;
            Box::new(move |c| {
                (!check_distance
                    || component_distance(base, &c.system, libraries).is_some_and(|k| k <= c_l))
                    && component_type_count(&c.system) <= d
                    && satisfies_all(&c.system, reqs)
            })
        }
    }
}

struct WorkerResult {
    hit: Option<(usize, Candidate)>,
    scanned: u64,
}

fn scan_worker(
    stream: impl Iterator<Item = (usize, Candidate)>,
    test: &(dyn Fn(&Candidate) -> bool + Sync),
    first_hit: bool,
    best_index: &AtomicUsize,
) -> WorkerResult {
    let mut scanned = 0u64;
    let mut hit: Option<(usize, Candidate)> = None;
    for (idx, cand) in stream {
        if first_hit && idx > best_index.load(AtomicOrdering::Relaxed) {
            break;
        }
        scanned += 1;
        if test(&cand) {
            if first_hit {
                best_index.fetch_min(idx, AtomicOrdering::Relaxed);
                hit = Some((idx, cand));
                break;
            }
            if hit.as_ref().is_none_or(|(_, best)| cand < *best) {
                hit = Some((idx, cand));
            }
        }
    }
    WorkerResult { hit, scanned }
}

/// Runs the search. With `first_hit`, stops at the earliest candidate (by
/// stream position) that passes; otherwise scans everything and keeps the
/// canonical minimum. `nodes` counts candidates up to and including the
/// reported one in first-hit mode, and all candidates otherwise, so it does
/// not depend on `threads`.
fn search(
    space: &Space<'_>,
    test: &(dyn Fn(&Candidate) -> bool + Sync),
    threads: usize,
    first_hit: bool,
) -> (Option<Candidate>, u64) {
    let best_index = AtomicUsize::new(usize::MAX);
    let results: Vec<WorkerResult> = if threads <= 1 {
        vec![scan_worker(
            (space.make)().enumerate(),
            test,
            first_hit,
            &best_index,
        )]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let best_index = &best_index;
                    scope.spawn(move || {
                        scan_worker(
                            partition((space.make)(), threads, w),
                            test,
                            first_hit,
                            best_index,
                        )
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };
    // Without a hit no worker stops early, so the scanned counts cover the
    // whole space.
    let scanned: u64 = results.iter().map(|r| r.scanned).sum();
    if first_hit {
        match results
            .into_iter()
            .filter_map(|r| r.hit)
            .min_by_key(|(i, _)| *i)
        {
            Some((idx, cand)) => (Some(cand), idx as u64 + 1),
            None => (None, scanned),
        }
    } else {
        (
            results
                .into_iter()
                .filter_map(|r| r.hit.map(|(_, c)| c))
                .min(),
            scanned,
        )
    }
}

fn metrics_for(inst: &Instance, cand: &Candidate, nodes: u64) -> Metrics {
    let pre_edit = cand.base.as_ref().unwrap_or(&cand.system);
    let types = component_type_count(pre_edit);
    let (code_changes, component_changes) = match &inst.problem {
        Problem::ScreSpec { .. } | Problem::ScreComp { .. } => (None, None),
        Problem::ScreCompA { .. } => (code_distance(pre_edit, &cand.system), None),
        Problem::SrecSpec { base, .. } => (code_distance(base, &cand.system), None),
        Problem::SrecComp {
            base, libraries, ..
        } => (None, component_distance(base, &cand.system, libraries)),
        Problem::SrecCompA {
            base, libraries, ..
        } => (
            code_distance(pre_edit, &cand.system),
            component_distance(base, pre_edit, libraries),
        ),
    };
    Metrics {
        types,
        code_changes,
        component_changes,
        nodes,
    }
}

fn prepare<'a>(
    inst: &'a Instance,
    options: &SolveOptions,
    reqs: &'a [Requirement],
) -> Result<(Space<'a>, Test<'a>), SolveError> {
    if !options.strategy.applies_to(inst.kind()) {
        return Err(SolveError::Inapplicable {
            strategy: options.strategy,
            kind: inst.kind(),
        });
    }
    inst.validate()?;
    Ok((
        build_space(inst, options.strategy),
        build_test(inst, options.strategy, reqs),
    ))
}

pub fn solve_with(inst: &Instance, options: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    let reqs = inst.all_requirements();
    let (space, test) = prepare(inst, options, &reqs)?;
    let (best, nodes) = search(&space, &*test, options.threads, space.ascending);
    Ok(match best {
        Some(cand) => {
            let metrics = metrics_for(inst, &cand, nodes);
            SolveOutcome::Solution(Solution {
                system: cand.system,
                base: cand.base,
                metrics,
            })
        }
        None => SolveOutcome::Bottom { nodes },
    })
}

pub fn solve(inst: &Instance, strategy: Strategy) -> Result<SolveOutcome, SolveError> {
    solve_with(inst, &SolveOptions::new(strategy))
}

/// Decision version: does any admissible system exist? Stops at the first
/// candidate that passes.
pub fn decide(inst: &Instance, strategy: Strategy) -> Result<bool, SolveError> {
    let reqs = inst.all_requirements();
    let (space, test) = prepare(inst, &SolveOptions::new(strategy), &reqs)?;
    Ok(search(&space, &*test, 1, true).0.is_some())
}

pub fn solve_scre_spec(
    requirements: &[Requirement],
    structure: StructureSpec,
    strategy: Strategy,
) -> Result<SolveOutcome, SolveError> {
    let inst = Instance::new(
        structure.alphabet,
        requirements.to_vec(),
        Problem::ScreSpec { structure },
    )?;
    solve(&inst, strategy)
}

pub fn solve_scre_comp(
    alphabet: Alphabet,
    requirements: &[Requirement],
    libraries: &Libraries,
    d: usize,
    strategy: Strategy,
) -> Result<SolveOutcome, SolveError> {
    let problem = Problem::ScreComp {
        libraries: libraries.clone(),
        d,
    };
    solve(
        &Instance::new(alphabet, requirements.to_vec(), problem)?,
        strategy,
    )
}

pub fn solve_scre_compa(
    alphabet: Alphabet,
    requirements: &[Requirement],
    libraries: &Libraries,
    d: usize,
    c_c: usize,
    strategy: Strategy,
) -> Result<SolveOutcome, SolveError> {
    let problem = Problem::ScreCompA {
        libraries: libraries.clone(),
        d,
        c_c,
    };
    solve(
        &Instance::new(alphabet, requirements.to_vec(), problem)?,
        strategy,
    )
}

pub fn solve_srec_spec(
    base: &System,
    requirements: &[Requirement],
    structure: StructureSpec,
    new_requirements: &[Requirement],
    c_c: usize,
    strategy: Strategy,
) -> Result<SolveOutcome, SolveError> {
    let problem = Problem::SrecSpec {
        base: base.clone(),
        structure,
        new_requirements: new_requirements.to_vec(),
        c_c,
    };
    solve(
        &Instance::new(structure.alphabet, requirements.to_vec(), problem)?,
        strategy,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn solve_srec_comp(
    alphabet: Alphabet,
    base: &System,
    requirements: &[Requirement],
    libraries: &Libraries,
    new_requirements: &[Requirement],
    c_l: usize,
    d: usize,
    strategy: Strategy,
) -> Result<SolveOutcome, SolveError> {
    let problem = Problem::SrecComp {
        base: base.clone(),
        libraries: libraries.clone(),
        new_requirements: new_requirements.to_vec(),
        c_l,
        d,
    };
    solve(
        &Instance::new(alphabet, requirements.to_vec(), problem)?,
        strategy,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn solve_srec_compa(
    alphabet: Alphabet,
    base: &System,
    requirements: &[Requirement],
    libraries: &Libraries,
    new_requirements: &[Requirement],
    c_l: usize,
    c_c: usize,
    d: usize,
    strategy: Strategy,
) -> Result<SolveOutcome, SolveError> {
    let problem = Problem::SrecCompA {
        base: base.clone(),
        libraries: libraries.clone(),
        new_requirements: new_requirements.to_vec(),
        c_l,
        c_c,
        d,
    };
    solve(
        &Instance::new(alphabet, requirements.to_vec(), problem)?,
        strategy,
    )
}

/// Checks a proposed answer against every predicate of the instance using
/// only the model's metric functions. `pre_edit` is the library assembly or
/// post-swap system that code edits start from; it is required for the
/// adapted problems and ignored otherwise.
pub fn verify_solution(
    inst: &Instance,
    system: &System,
    pre_edit: Option<&System>,
) -> Result<(), String> {
    system.validate(&inst.alphabet).map_err(|e| e.to_string())?;
    let (ok, violated) = satisfies(system, &inst.all_requirements()).map_err(|e| e.to_string())?;
    if !ok {
        return Err(format!("violates requirements at positions {violated:?}"));
    }
    let need = |cond: bool, what: &str| if cond { Ok(()) } else { Err(what.to_string()) };
    let pre = || pre_edit.ok_or_else(|| "adapted problem needs the pre-edit system".to_string());
    match &inst.problem {
        Problem::ScreSpec { structure } => need(
            consistent_with(system, structure),
            "not consistent with structure spec",
        ),
        Problem::ScreComp { libraries, d } => {
            need(libraries.builds(system), "not assembled from the libraries")?;
            need(
                component_type_count(system) <= *d,
                "too many component types",
            )
        }
        Problem::ScreCompA { libraries, d, c_c } => {
            let pre = pre()?;
            need(
                libraries.builds(pre),
                "pre-edit system not assembled from the libraries",
            )?;
            need(component_type_count(pre) <= *d, "too many component types")?;
            need(
                code_distance(pre, system).is_some_and(|k| k <= *c_c),
                "too many code changes",
            )
        }
        Problem::SrecSpec {
            base,
            structure,
            c_c,
            ..
        } => {
            need(
                consistent_with(system, structure),
                "not consistent with structure spec",
            )?;
            need(
                code_distance(base, system).is_some_and(|k| k <= *c_c),
                "too many code changes",
            )
        }
        Problem::SrecComp {
            base,
            libraries,
            c_l,
            d,
            ..
        } => {
            need(
                component_distance(base, system, libraries).is_some_and(|k| k <= *c_l),
                "too many component changes",
            )?;
            need(
                component_type_count(system) <= *d,
                "too many component types",
            )
        }
        Problem::SrecCompA {
            base,
            libraries,
            c_l,
            c_c,
            d,
            ..
        } => {
            let pre = pre()?;
            need(
                component_distance(base, pre, libraries).is_some_and(|k| k <= *c_l),
                "too many component changes",
            )?;
            need(component_type_count(pre) <= *d, "too many component types")?;
            need(
                code_distance(pre, system).is_some_and(|k| k <= *c_c),
                "too many code changes",
            )
        }
    }
}
