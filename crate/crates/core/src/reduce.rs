//! Reductions from Dominating Set to each of the six problems, the forward
//! witness constructions, and an empirical equivalence check.
//!
//! Vertex `v_j` (1-based) is encoded by variable `j - 1` in every
//! construction. The doubled constructions additionally use variable
//! `n + j - 1` for the neighborhood copy of `v_j`, and the reconfiguration
//! constructions put their marker variable last.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{ds_oracle, Graph};
use crate::model::{
    Action, Alphabet, Libraries, Literal, Procedure, Requirement, SelectorShape, Situation,
    StructureSpec, System,
};
use crate::solve::{decide, verify_solution, Instance, Problem, ProblemKind, SolveError, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("vertex set is not dominating")]
    NotDominating,
    #[error("dominating set has {size} vertices, more than k = {k}")]
    TooLarge { size: usize, k: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Size parameters of a reduced instance. Library-based instances report
/// the largest library component for `sel_max`/`prc_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParameterMap {
    pub vars: usize,
    pub actions: usize,
    pub sel_max: usize,
    pub prc_max: usize,
    pub lib_selectors: Option<usize>,
    pub lib_procedures: Option<usize>,
    pub d: Option<usize>,
    pub c_c: Option<usize>,
    pub c_l: Option<usize>,
    pub new_requirements: usize,
}

impl ParameterMap {
    pub fn of(inst: &Instance) -> Self {
        let (sel_max, prc_max) = match &inst.problem {
            Problem::ScreSpec { structure } | Problem::SrecSpec { structure, .. } => {
                (structure.sel_max, structure.prc_max)
            }
            p => {
                let libs = p.libraries().expect("library problem");
                (libs.max_sel(), libs.max_prc())
            }
        };
        let (d, c_c, c_l) = match &inst.problem {
            Problem::ScreSpec { .. } => (None, None, None),
            Problem::ScreComp { d, .. } => (Some(*d), None, None),
            Problem::ScreCompA { d, c_c, .. } => (Some(*d), Some(*c_c), None),
            Problem::SrecSpec { c_c, .. } => (None, Some(*c_c), None),
            Problem::SrecComp { c_l, d, .. } => (Some(*d), None, Some(*c_l)),
            Problem::SrecCompA { c_l, c_c, d, .. } => (Some(*d), Some(*c_c), Some(*c_l)),
        };
        let libs = inst.problem.libraries();
        ParameterMap {
            vars: inst.alphabet.num_vars(),
            actions: inst.alphabet.num_actions(),
            sel_max,
            prc_max,
            lib_selectors: libs.map(|l| l.selectors().len()),
            lib_procedures: libs.map(|l| l.procedures().len()),
            d,
            c_c,
            c_l,
            new_requirements: inst.problem.new_requirements().len(),
        }
    }
}

/// Closed-form parameters of the reduction of a graph with `n` vertices
/// and budget `k`.
pub fn expected_parameters(kind: ProblemKind, n: usize, k: usize) -> ParameterMap {
    let base = ParameterMap {
        vars: n,
        actions: 2,
        sel_max: 0,
        prc_max: k,
        lib_selectors: None,
        lib_procedures: None,
        d: None,
        c_c: None,
        c_l: None,
        new_requirements: 0,
    };
    match kind {
        ProblemKind::ScreSpec => base,
        ProblemKind::ScreCompA => ParameterMap {
            lib_selectors: Some(1),
            lib_procedures: Some(1),
            d: Some(2),
            c_c: Some(k),
            ..base
        },
        ProblemKind::ScreComp => ParameterMap {
            vars: 2 * n,
            sel_max: n - 1,
            prc_max: 1,
            lib_selectors: Some(1),
            lib_procedures: Some(n),
            d: Some(k + 1),
            ..base
        },
        ProblemKind::SrecSpec => ParameterMap {
            vars: n + 1,
            actions: 3,
            prc_max: k + 1,
            c_c: Some(k + 1),
            new_requirements: 1,
            ..base
        },
        ProblemKind::SrecCompA => ParameterMap {
            vars: n + 1,
            actions: 3,
            prc_max: k + 1,
            lib_selectors: Some(1),
            lib_procedures: Some(1),
            d: Some(2),
            c_c: Some(k + 1),
            c_l: Some(0),
            new_requirements: 1,
            ..base
        },
        ProblemKind::SrecComp => ParameterMap {
            vars: 2 * n + 1,
            sel_max: n,
            prc_max: 1,
            lib_selectors: Some(2),
            lib_procedures: Some(n + 1),
            d: Some(k + 2),
            c_l: Some(n + 1),
            new_requirements: n,
            ..base
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub kind: ProblemKind,
    pub instance: Instance,
    /// `vertex_to_var[j - 1]` is the variable encoding `v_j`.
    pub vertex_to_var: Vec<usize>,
    pub parameters: ParameterMap,
    pub notes: Vec<String>,
}

/// A forward witness: the answer system and, for the adapted problems, the
/// system that code edits were applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub system: System,
    pub pre_edit: Option<System>,
}

const A0: Action = Action(0);
const A1: Action = Action(1);
const A2: Action = Action(2);

fn situation(num_vars: usize, true_vars: impl IntoIterator<Item = usize>) -> Situation {
    let mut s = Situation::all(num_vars, false);
    for v in true_vars {
        s.set(v, true);
    }
    s
}

fn neighborhood(g: &Graph, v: usize) -> BTreeSet<usize> {
    g.closed_neighborhood(v).expect("vertex in range")
}

fn alphabet(vars: usize, actions: usize) -> Alphabet {
    Alphabet::new(vars, actions).expect("nonempty alphabet")
}

fn branch_list(
    conds: impl IntoIterator<Item = usize>,
    action: Action,
    otherwise: Action,
) -> Procedure {
    let branches: Vec<_> = conds
        .into_iter()
        .map(|v| (Literal::pos(v), action))
        .collect();
    if branches.is_empty() {
        Procedure::Single(otherwise)
    } else {
        Procedure::Guarded {
            branches,
            otherwise,
        }
    }
}

fn selector(conds: Vec<Literal>) -> SelectorShape {
    if conds.is_empty() {
        SelectorShape::Default
    } else {
        SelectorShape::Guarded(conds)
    }
}

/// Variables `0..k` wrapped around the first `n`, i.e. `i_1 .. i_k` with
/// `i_1` repeated once the vertices run out.
fn placeholder_conditions(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|t| if t < n { t } else { 0 }).collect()
}

/// Neighborhood rows with action 1 plus the all-False row with action 0;
/// `marker` adds a variable set in every neighborhood row.
fn neighborhood_rows(g: &Graph, num_vars: usize, marker: Option<usize>) -> Vec<Requirement> {
    let n = g.n();
    let mut rows: Vec<Requirement> = (1..=n)
        .map(|i| {
            let vars = neighborhood(g, i).into_iter().map(|j| j - 1).chain(marker);
            Requirement::new(situation(num_vars, vars), A1)
        })
        .collect();
    rows.push(Requirement::new(Situation::all(num_vars, false), A0));
    rows
}

/// Rows where `v_i` sets its own variable and the copies of its neighbors.
fn doubled_rows(g: &Graph, num_vars: usize, marker: Option<usize>) -> Vec<Requirement> {
    let n = g.n();
    (1..=n)
        .map(|i| {
            let vars = std::iter::once(i - 1)
                .chain(neighborhood(g, i).into_iter().map(|j| n + j - 1))
                .chain(marker);
            Requirement::new(situation(num_vars, vars), A1)
        })
        .collect()
}

fn vertex_procedures(n: usize) -> Vec<Procedure> {
    (1..=n).map(|j| branch_list([n + j - 1], A1, A0)).collect()
}

fn srec_spec_parts(g: &Graph, k: usize) -> (Alphabet, Vec<Requirement>, System, Vec<Requirement>) {
    let n = g.n();
    let alpha = alphabet(n + 1, 3);
    let reqs = neighborhood_rows(g, n + 1, Some(n));
    let conds = placeholder_conditions(n, k).into_iter().chain([n]);
    let base =
        System::new(SelectorShape::Default, vec![branch_list(conds, A1, A0)]).expect("one slot");
    let new = vec![Requirement::new(situation(n + 1, [n]), A2)];
    (alpha, reqs, base, new)
}

fn srec_comp_selectors(n: usize) -> (SelectorShape, SelectorShape) {
    let marker = 2 * n;
    let rest = (0..n - 1).map(Literal::pos);
    let original = selector(
        std::iter::once(Literal::pos(marker))
            .chain(rest.clone())
            .collect(),
    );
    let swapped = selector(std::iter::once(Literal::neg(marker)).chain(rest).collect());
    (original, swapped)
}

fn srec_comp_filler(n: usize) -> Procedure {
    branch_list([2 * n], A1, A1)
}

/// Builds the reduced instance of `(g, k)` for one problem kind.
pub fn reduce(kind: ProblemKind, g: &Graph, k: usize) -> ReducedInstance {
    let n = g.n();
    let mut notes = Vec::new();
    let (alpha, reqs, problem) = match kind {
        ProblemKind::ScreSpec => {
            let alpha = alphabet(n, 2);
            let structure = StructureSpec::new(alpha, 0, k);
            (
                alpha,
                neighborhood_rows(g, n, None),
                Problem::ScreSpec { structure },
            )
        }
        ProblemKind::ScreCompA => {
            let alpha = alphabet(n, 2);
            let libraries = Libraries::new(
                vec![SelectorShape::Default],
                vec![branch_list(placeholder_conditions(n, k), A1, A0)],
            );
            (
                alpha,
                neighborhood_rows(g, n, None),
                Problem::ScreCompA {
                    libraries,
                    d: 2,
                    c_c: k,
                },
            )
        }
        ProblemKind::ScreComp => {
            let alpha = alphabet(2 * n, 2);
            let mut reqs = doubled_rows(g, 2 * n, None);
            reqs.push(Requirement::new(Situation::all(2 * n, false), A0));
            if n == 1 {
                notes.push("single vertex: the library selector has no conditions, so the default selector is used".into());
            }
            let sel = selector((0..n - 1).map(Literal::pos).collect());
            let libraries = Libraries::new(vec![sel], vertex_procedures(n));
            (
                alpha,
                reqs,
                Problem::ScreComp {
                    libraries,
                    d: k + 1,
                },
            )
        }
        ProblemKind::SrecSpec => {
            let (alpha, reqs, base, new_requirements) = srec_spec_parts(g, k);
            let structure = StructureSpec::new(alpha, 0, k + 1);
            (
                alpha,
                reqs,
                Problem::SrecSpec {
                    base,
                    structure,
                    new_requirements,
                    c_c: k + 1,
                },
            )
        }
        ProblemKind::SrecCompA => {
            let (alpha, reqs, base, new_requirements) = srec_spec_parts(g, k);
            let libraries =
                Libraries::new(vec![base.selector().clone()], base.procedures().to_vec());
            let problem = Problem::SrecCompA {
                base,
                libraries,
                new_requirements,
                c_l: 0,
                c_c: k + 1,
                d: 2,
            };
            (alpha, reqs, problem)
        }
        ProblemKind::SrecComp => {
            let vars = 2 * n + 1;
            let alpha = alphabet(vars, 2);
            let reqs = doubled_rows(g, vars, Some(2 * n));
            let (original, swapped) = srec_comp_selectors(n);
            let filler = srec_comp_filler(n);
            let base =
                System::new(original.clone(), vec![filler.clone(); n + 1]).expect("slot count");
            let mut procedures = vertex_procedures(n);
            procedures.push(filler);
            let libraries = Libraries::new(vec![original, swapped], procedures);
            let new_requirements = (0..n)
                .map(|i| Requirement::new(situation(vars, [i, 2 * n]), A0))
                .collect();
            notes.push("d = k + 2: the unreachable first slot keeps its original procedure after the selector swap".into());
            let problem = Problem::SrecComp {
                base,
                libraries,
                new_requirements,
                c_l: n + 1,
                d: k + 2,
            };
            (alpha, reqs, problem)
        }
    };
    let instance = Instance::new(alpha, reqs, problem).expect("reduction builds a valid instance");
    ReducedInstance {
        kind,
        parameters: ParameterMap::of(&instance),
        instance,
        vertex_to_var: (0..n).collect(),
        notes,
    }
}

/// Smallest member of `ds` dominating `v`.
fn dominator(g: &Graph, ds: &BTreeSet<usize>, v: usize) -> usize {
    *ds.iter()
        .find(|&&u| u == v || g.has_edge(u, v))
        .expect("set is dominating")
}

/// `ds` in ascending order, padded with its first member up to `k` entries,
/// as 0-based variables.
fn padded_vars(ds: &BTreeSet<usize>, k: usize) -> Vec<usize> {
    let first = *ds.iter().next().expect("nonempty set");
    ds.iter()
        .copied()
        .chain(std::iter::repeat(first))
        .take(k)
        .map(|v| v - 1)
        .collect()
}

/// The system built in the forward direction of each reduction from a
/// dominating set of size at most `k`.
pub fn witness_from_ds(
    kind: ProblemKind,
    g: &Graph,
    k: usize,
    ds: &BTreeSet<usize>,
) -> Result<Witness, ReduceError> {
    if !g.is_dominating(ds) {
        return Err(ReduceError::NotDominating);
    }
    if ds.len() > k {
        return Err(ReduceError::TooLarge { size: ds.len(), k });
    }
    let n = g.n();
    let plain = |system: System| {
        Ok(Witness {
            system,
            pre_edit: None,
        })
    };
    match kind {
        ProblemKind::ScreSpec => {
            let p = branch_list(ds.iter().map(|v| v - 1), A1, A0);
            plain(System::new(SelectorShape::Default, vec![p]).expect("one slot"))
        }
        ProblemKind::ScreCompA => {
            let pre_edit = System::new(
                SelectorShape::Default,
                vec![branch_list(placeholder_conditions(n, k), A1, A0)],
            )
            .expect("one slot");
            let system = System::new(
                SelectorShape::Default,
                vec![branch_list(padded_vars(ds, k), A1, A0)],
            )
            .expect("one slot");
            Ok(Witness {
                system,
                pre_edit: Some(pre_edit),
            })
        }
        ProblemKind::ScreComp => {
            let procs = vertex_procedures(n);
            let slots = (1..=n)
                .map(|v| procs[dominator(g, ds, v) - 1].clone())
                .collect();
            plain(
                System::new(selector((0..n - 1).map(Literal::pos).collect()), slots)
                    .expect("slot count"),
            )
        }
        ProblemKind::SrecSpec | ProblemKind::SrecCompA => {
            let conds = padded_vars(ds, k)
                .into_iter()
                .map(|v| (Literal::pos(v), A1));
            let branches = conds.chain([(Literal::pos(n), A2)]).collect();
            let system = System::new(
                SelectorShape::Default,
                vec![Procedure::Guarded {
                    branches,
                    otherwise: A0,
                }],
            )
            .expect("one slot");
            if kind == ProblemKind::SrecSpec {
                return plain(system);
            }
            let (_, _, base, _) = srec_spec_parts(g, k);
            Ok(Witness {
                system,
                pre_edit: Some(base),
            })
        }
        ProblemKind::SrecComp => {
            let procs = vertex_procedures(n);
            let (_, swapped) = srec_comp_selectors(n);
            let slots = std::iter::once(srec_comp_filler(n))
                .chain((1..=n).map(|v| procs[dominator(g, ds, v) - 1].clone()))
                .collect();
            plain(System::new(swapped, slots).expect("slot count"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub kind: ProblemKind,
    pub n: usize,
    pub k: usize,
    pub dominating_set: Option<BTreeSet<usize>>,
    pub solver_answer: Option<bool>,
    /// Outcome of checking the forward witness, when a dominating set exists.
    pub witness_check: Option<Result<(), String>>,
    pub notes: Vec<String>,
    pub error: Option<String>,
}

impl ReductionReport {
    pub fn ds_answer(&self) -> bool {
        self.dominating_set.is_some()
    }

    pub fn equivalent(&self) -> bool {
        self.error.is_none() && self.solver_answer == Some(self.ds_answer())
    }

    pub fn witness_ok(&self) -> bool {
        !matches!(self.witness_check, Some(Err(_)))
    }
}

/// Checks a forward witness against every predicate of the reduced instance.
pub fn check_witness(reduced: &ReducedInstance, witness: &Witness) -> Result<(), String> {
    verify_solution(
        &reduced.instance,
        &witness.system,
        witness.pre_edit.as_ref(),
    )
}

/// Compares the Dominating Set answer with the solver's answer on the
/// reduced instance, and checks the forward witness when one exists.
pub fn verify_reduction(
    kind: ProblemKind,
    g: &Graph,
    k: usize,
    strategy: Strategy,
) -> ReductionReport {
    let reduced = reduce(kind, g, k);
    let dominating_set = ds_oracle(g, k);
    let mut report = ReductionReport {
        kind,
        n: g.n(),
        k,
        dominating_set: dominating_set.clone(),
        solver_answer: None,
        witness_check: None,
        notes: reduced.notes.clone(),
        error: None,
    };
    match decide(&reduced.instance, strategy) {
        Ok(answer) => report.solver_answer = Some(answer),
        Err(e) => report.error = Some(e.to_string()),
    }
    if let Some(ds) = &dominating_set {
        report.witness_check = Some(
            witness_from_ds(kind, g, k, ds)
                .map_err(|e| e.to_string())
                .and_then(|w| check_witness(&reduced, &w)),
        );
    }
    report
}
