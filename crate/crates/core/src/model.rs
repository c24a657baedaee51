//! Two-level selector/procedure systems: value types, execution semantics,
//! satisfaction, and the size, type-count and distance metrics.
//!
//! Indices are 0-based throughout this module. The text formats in
//! [`crate::format`] add 1 so that variables, actions and vertices read as
//! `i1`, `a1`, `v1`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("alphabet needs at least one variable and one action (got {num_vars} variables, {num_actions} actions)")]
    EmptyAlphabet { num_vars: usize, num_actions: usize },
    #[error("variable index {var} out of range for {num_vars} variables")]
    VarOutOfRange { var: usize, num_vars: usize },
    #[error("action index {action} out of range for {num_actions} actions")]
    ActionOutOfRange { action: usize, num_actions: usize },
    #[error("situation has {len} values but the alphabet has {num_vars} variables")]
    SituationLength { len: usize, num_vars: usize },
    #[error("a guarded block needs at least one condition")]
    EmptyGuard,
    #[error("selector has {slots} slots but {procedures} procedures were supplied")]
    SlotMismatch { slots: usize, procedures: usize },
}

/// The situation-variable set `I` and action set `A`, by size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    num_vars: usize,
    num_actions: usize,
}

impl Alphabet {
    pub fn new(num_vars: usize, num_actions: usize) -> Result<Self, ModelError> {
        if num_vars == 0 || num_actions == 0 {
            return Err(ModelError::EmptyAlphabet {
                num_vars,
                num_actions,
            });
        }
        Ok(Alphabet {
            num_vars,
            num_actions,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_actions(&self) -> usize {
        self.num_actions
    }

    fn check_var(&self, var: usize) -> Result<(), ModelError> {
        if var < self.num_vars {
            Ok(())
        } else {
            Err(ModelError::VarOutOfRange {
                var,
                num_vars: self.num_vars,
            })
        }
    }

    fn check_action(&self, action: Action) -> Result<(), ModelError> {
        if action.0 < self.num_actions {
            Ok(())
        } else {
            Err(ModelError::ActionOutOfRange {
                action: action.0,
                num_actions: self.num_actions,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(pub usize);

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0 + 1)
    }
}

/// A complete truth assignment over the situation-variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Situation(Vec<bool>);

impl Situation {
    pub fn new(values: Vec<bool>) -> Self {
        Situation(values)
    }

    pub fn all(num_vars: usize, value: bool) -> Self {
        Situation(vec![value; num_vars])
    }

    /// Every situation over `num_vars` variables, in binary counting order
    /// with variable 0 as the most significant bit.
    pub fn enumerate(num_vars: usize) -> impl Iterator<Item = Situation> {
        (0..1u64 << num_vars).map(move |mask| {
            Situation(
                (0..num_vars)
                    .map(|v| mask >> (num_vars - 1 - v) & 1 == 1)
                    .collect(),
            )
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.0[var] = value;
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    fn check(&self, alphabet: &Alphabet) -> Result<(), ModelError> {
        if self.0.len() == alphabet.num_vars {
            Ok(())
        } else {
            Err(ModelError::SituationLength {
                len: self.0.len(),
                num_vars: alphabet.num_vars,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Requirement {
    pub situation: Situation,
    pub action: Action,
}

impl Requirement {
    pub fn new(situation: Situation, action: Action) -> Self {
        Requirement { situation, action }
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<(), ModelError> {
        self.situation.check(alphabet)?;
        alphabet.check_action(self.action)
    }
}

/// A condition: a variable or its negation.
///
/// Field order gives the canonical order: by variable, positive before
/// negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    #[inline]
    pub fn holds(&self, s: &Situation) -> bool {
        s.0[self.var] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!i{}", self.var + 1)
        } else {
            write!(f, "i{}", self.var + 1)
        }
    }
}

/// A lower-level block that executes exactly one action.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Procedure {
    Single(Action),
    Guarded {
        branches: Vec<(Literal, Action)>,
        otherwise: Action,
    },
}

impl Procedure {
    pub fn guarded(
        branches: Vec<(Literal, Action)>,
        otherwise: Action,
    ) -> Result<Self, ModelError> {
        if branches.is_empty() {
            return Err(ModelError::EmptyGuard);
        }
        Ok(Procedure::Guarded {
            branches,
            otherwise,
        })
    }

    pub fn cond_count(&self) -> usize {
        match self {
            Procedure::Single(_) => 0,
            Procedure::Guarded { branches, .. } => branches.len(),
        }
    }

    /// Runs the block. Literals must index inside `s`.
    #[inline]
    pub fn run(&self, s: &Situation) -> Action {
        match self {
            Procedure::Single(a) => *a,
            Procedure::Guarded {
                branches,
                otherwise,
            } => branches
                .iter()
                .find(|(lit, _)| lit.holds(s))
                .map_or(*otherwise, |&(_, a)| a),
        }
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<(), ModelError> {
        match self {
            Procedure::Single(a) => alphabet.check_action(*a),
            Procedure::Guarded {
                branches,
                otherwise,
            } => {
                if branches.is_empty() {
                    return Err(ModelError::EmptyGuard);
                }
                for (lit, a) in branches {
                    alphabet.check_var(lit.var)?;
                    alphabet.check_action(*a)?;
                }
                alphabet.check_action(*otherwise)
            }
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Procedure::Single(_) => None,
            Procedure::Guarded { branches, .. } => branches.iter().map(|(l, _)| l.var).max(),
        }
    }
}

impl Ord for Procedure {
    fn cmp(&self, other: &Self) -> Ordering {
        use Procedure::*;
        match (self, other) {
            (Single(a), Single(b)) => a.cmp(b),
            (Single(_), Guarded { .. }) => Ordering::Less,
            (Guarded { .. }, Single(_)) => Ordering::Greater,
            (
                Guarded {
                    branches: b1,
                    otherwise: e1,
                },
                Guarded {
                    branches: b2,
                    otherwise: e2,
                },
            ) => b1
                .len()
                .cmp(&b2.len())
                .then_with(|| b1.cmp(b2))
                .then_with(|| e1.cmp(e2)),
        }
    }
}

impl PartialOrd for Procedure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The top-level block: either the default `IF *` selector with one slot,
/// or an ordered condition list with one slot per condition plus the
/// final `ELSE` slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SelectorShape {
    Default,
    Guarded(Vec<Literal>),
}

impl SelectorShape {
    pub fn guarded(conditions: Vec<Literal>) -> Result<Self, ModelError> {
        if conditions.is_empty() {
            return Err(ModelError::EmptyGuard);
        }
        Ok(SelectorShape::Guarded(conditions))
    }

    pub fn cond_count(&self) -> usize {
        match self {
            SelectorShape::Default => 0,
            SelectorShape::Guarded(c) => c.len(),
        }
    }

    pub fn slots(&self) -> usize {
        self.cond_count() + 1
    }

    pub fn conditions(&self) -> &[Literal] {
        match self {
            SelectorShape::Default => &[],
            SelectorShape::Guarded(c) => c,
        }
    }

    /// Index of the slot that handles `s`.
    #[inline]
    pub fn route(&self, s: &Situation) -> usize {
        match self {
            SelectorShape::Default => 0,
            SelectorShape::Guarded(conds) => {
                conds.iter().position(|l| l.holds(s)).unwrap_or(conds.len())
            }
        }
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<(), ModelError> {
        match self {
            SelectorShape::Default => Ok(()),
            SelectorShape::Guarded(conds) => {
                if conds.is_empty() {
                    return Err(ModelError::EmptyGuard);
                }
                conds.iter().try_for_each(|l| alphabet.check_var(l.var))
            }
        }
    }
}

impl Ord for SelectorShape {
    fn cmp(&self, other: &Self) -> Ordering {
        use SelectorShape::*;
        match (self, other) {
            (Default, Default) => Ordering::Equal,
            (Default, Guarded(_)) => Ordering::Less,
            (Guarded(_), Default) => Ordering::Greater,
            (Guarded(a), Guarded(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for SelectorShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A selector with one procedure per slot.
///
/// Derived ordering compares the selector first and then the slot list
/// lexicographically, which is the canonical system order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct System {
    selector: SelectorShape,
    procedures: Vec<Procedure>,
}

impl System {
    pub fn new(selector: SelectorShape, procedures: Vec<Procedure>) -> Result<Self, ModelError> {
        if selector.slots() != procedures.len() {
            return Err(ModelError::SlotMismatch {
                slots: selector.slots(),
                procedures: procedures.len(),
            });
        }
        Ok(System {
            selector,
            procedures,
        })
    }

    /// Builds without the slot check; callers guarantee the shape.
    pub(crate) fn from_parts(selector: SelectorShape, procedures: Vec<Procedure>) -> Self {
        debug_assert_eq!(selector.slots(), procedures.len());
        System {
            selector,
            procedures,
        }
    }

    pub fn selector(&self) -> &SelectorShape {
        &self.selector
    }

    pub fn procedures(&self) -> &[Procedure] {
        &self.procedures
    }

    pub fn into_parts(self) -> (SelectorShape, Vec<Procedure>) {
        (self.selector, self.procedures)
    }

    #[inline]
    pub fn run(&self, s: &Situation) -> Action {
        self.procedures[self.selector.route(s)].run(s)
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<(), ModelError> {
        self.selector.validate(alphabet)?;
        if self.selector.slots() != self.procedures.len() {
            return Err(ModelError::SlotMismatch {
                slots: self.selector.slots(),
                procedures: self.procedures.len(),
            });
        }
        self.procedures
            .iter()
            .try_for_each(|p| p.validate(alphabet))
    }

    /// Largest procedure condition count.
    pub fn max_prc(&self) -> usize {
        self.procedures
            .iter()
            .map(Procedure::cond_count)
            .max()
            .unwrap_or(0)
    }

    /// Lines of code: selector lines times the longest procedure's lines.
    pub fn line_bound(&self) -> usize {
        (self.selector.cond_count() + 1) * (self.max_prc() + 2)
    }

    fn max_var(&self) -> Option<usize> {
        let sel = self.selector.conditions().iter().map(|l| l.var).max();
        self.procedures
            .iter()
            .filter_map(Procedure::max_var)
            .chain(sel)
            .max()
    }
}

/// `X = <I, A, |sel|, |prc|>`: the shape budget for creating a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructureSpec {
    pub alphabet: Alphabet,
    pub sel_max: usize,
    pub prc_max: usize,
}

impl StructureSpec {
    pub fn new(alphabet: Alphabet, sel_max: usize, prc_max: usize) -> Self {
        StructureSpec {
            alphabet,
            sel_max,
            prc_max,
        }
    }
}

/// Component pools `L_sel` and `L_prc`, kept sorted and free of structural
/// duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Libraries {
    selectors: Vec<SelectorShape>,
    procedures: Vec<Procedure>,
}

impl Libraries {
    pub fn new(selectors: Vec<SelectorShape>, procedures: Vec<Procedure>) -> Self {
        let selectors: BTreeSet<_> = selectors.into_iter().collect();
        let procedures: BTreeSet<_> = procedures.into_iter().collect();
        Libraries {
            selectors: selectors.into_iter().collect(),
            procedures: procedures.into_iter().collect(),
        }
    }

    pub fn selectors(&self) -> &[SelectorShape] {
        &self.selectors
    }

    pub fn procedures(&self) -> &[Procedure] {
        &self.procedures
    }

    pub fn has_selector(&self, s: &SelectorShape) -> bool {
        self.selectors.binary_search(s).is_ok()
    }

    pub fn has_procedure(&self, p: &Procedure) -> bool {
        self.procedures.binary_search(p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.selectors.is_empty() || self.procedures.is_empty()
    }

    /// True when the selector and every slot procedure are library members.
    pub fn builds(&self, system: &System) -> bool {
        self.has_selector(&system.selector)
            && system.procedures.iter().all(|p| self.has_procedure(p))
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<(), ModelError> {
        self.selectors
            .iter()
            .try_for_each(|s| s.validate(alphabet))?;
        self.procedures
            .iter()
            .try_for_each(|p| p.validate(alphabet))
    }

    pub fn max_sel(&self) -> usize {
        self.selectors
            .iter()
            .map(SelectorShape::cond_count)
            .max()
            .unwrap_or(0)
    }

    pub fn max_prc(&self) -> usize {
        self.procedures
            .iter()
            .map(Procedure::cond_count)
            .max()
            .unwrap_or(0)
    }
}

fn check_situation_for(s: &Situation, max_var: Option<usize>) -> Result<(), ModelError> {
    match max_var {
        Some(v) if v >= s.len() => Err(ModelError::VarOutOfRange {
            var: v,
            num_vars: s.len(),
        }),
        _ => Ok(()),
    }
}

pub fn eval_procedure(p: &Procedure, s: &Situation) -> Result<Action, ModelError> {
    check_situation_for(s, p.max_var())?;
    Ok(p.run(s))
}

pub fn eval_system(system: &System, s: &Situation) -> Result<Action, ModelError> {
    check_situation_for(s, system.max_var())?;
    Ok(system.run(s))
}

/// Checks every requirement, returning the indices of the violated ones in
/// input order.
pub fn satisfies(
    system: &System,
    requirements: &[Requirement],
) -> Result<(bool, Vec<usize>), ModelError> {
    let max_var = system.max_var();
    let mut violated = Vec::new();
    for (idx, r) in requirements.iter().enumerate() {
        check_situation_for(&r.situation, max_var)?;
        if system.run(&r.situation) != r.action {
            violated.push(idx);
        }
    }
    Ok((violated.is_empty(), violated))
}

/// Unchecked satisfaction test for search loops over pre-validated input.
#[inline]
pub(crate) fn satisfies_all(system: &System, requirements: &[Requirement]) -> bool {
    requirements
        .iter()
        .all(|r| system.run(&r.situation) == r.action)
}

pub fn consistent_with(system: &System, spec: &StructureSpec) -> bool {
    system.selector.cond_count() <= spec.sel_max
        && system
            .procedures
            .iter()
            .all(|p| p.cond_count() <= spec.prc_max)
        && system.validate(&spec.alphabet).is_ok()
}

/// `(|sel| + 1)(|prc| + 2)`, the maximum line count of a conforming system.
pub fn size_bound(spec: &StructureSpec) -> usize {
    (spec.sel_max + 1) * (spec.prc_max + 2)
}

/// The selector plus the number of structurally distinct slot procedures.
pub fn component_type_count(system: &System) -> usize {
    let distinct: BTreeSet<&Procedure> = system.procedures.iter().collect();
    1 + distinct.len()
}

fn same_procedure_skeleton(a: &Procedure, b: &Procedure) -> bool {
    match (a, b) {
        (Procedure::Single(_), Procedure::Single(_)) => true,
        (Procedure::Guarded { branches: x, .. }, Procedure::Guarded { branches: y, .. }) => {
            x.len() == y.len()
        }
        _ => false,
    }
}

/// True when both systems have the same selector form and condition count
/// and, slot by slot, procedures of the same form and branch count.
pub fn same_skeleton(a: &System, b: &System) -> bool {
    let sel_match = matches!(
        (&a.selector, &b.selector),
        (SelectorShape::Default, SelectorShape::Default)
    ) || matches!(
        (&a.selector, &b.selector),
        (SelectorShape::Guarded(x), SelectorShape::Guarded(y)) if x.len() == y.len()
    );
    sel_match
        && a.procedures.len() == b.procedures.len()
        && a.procedures
            .iter()
            .zip(&b.procedures)
            .all(|(p, q)| same_procedure_skeleton(p, q))
}

fn procedure_token_distance(a: &Procedure, b: &Procedure) -> usize {
    match (a, b) {
        (Procedure::Single(x), Procedure::Single(y)) => usize::from(x != y),
        (
            Procedure::Guarded {
                branches: bx,
                otherwise: ex,
            },
            Procedure::Guarded {
                branches: by,
                otherwise: ey,
            },
        ) => {
            let branch_diff: usize = bx
                .iter()
                .zip(by)
                .map(|((lx, ax), (ly, ay))| usize::from(lx != ly) + usize::from(ax != ay))
                .sum();
            branch_diff + usize::from(ex != ey)
        }
        _ => unreachable!("skeletons checked by caller"),
    }
}

/// Number of single-token code changes (one condition literal or one
/// executed action) separating two systems. `None` when the skeletons
/// differ, since code changes never add or remove statements.
pub fn code_distance(a: &System, b: &System) -> Option<usize> {
    if !same_skeleton(a, b) {
        return None;
    }
    let sel = a
        .selector
        .conditions()
        .iter()
        .zip(b.selector.conditions())
        .filter(|(x, y)| x != y)
        .count();
    let prc: usize = a
        .procedures
        .iter()
        .zip(&b.procedures)
        .map(|(p, q)| procedure_token_distance(p, q))
        .sum();
    Some(sel + prc)
}

/// Number of component swaps turning `a` into `b`: one for a different
/// selector plus one per slot whose procedure differs. `None` when the
/// slot counts differ or a replacement is not in the library.
pub fn component_distance(a: &System, b: &System, libs: &Libraries) -> Option<usize> {
    if a.selector.slots() != b.selector.slots() {
        return None;
    }
    let mut changes = 0;
    if a.selector != b.selector {
        if !libs.has_selector(&b.selector) {
            return None;
        }
        changes += 1;
    }
    for (p, q) in a.procedures.iter().zip(&b.procedures) {
        if p != q {
            if !libs.has_procedure(q) {
                return None;
            }
            changes += 1;
        }
    }
    Some(changes)
}

/// Rewrites a decision list so every variable is tested at most once.
///
/// A repeat of an earlier literal can never fire and is dropped. The
/// complement of an earlier literal always fires, so the list ends there
/// and its target becomes the fallback.
pub fn normalize_decision_list<T: Clone>(
    branches: &[(Literal, T)],
    otherwise: &T,
) -> (Vec<(Literal, T)>, T) {
    let mut seen: Vec<Literal> = Vec::new();
    let mut kept = Vec::new();
    for (lit, target) in branches {
        if let Some(prev) = seen.iter().find(|l| l.var == lit.var) {
            if prev == lit {
                continue;
            }
            return (kept, target.clone());
        }
        seen.push(*lit);
        kept.push((*lit, target.clone()));
    }
    (kept, otherwise.clone())
}

pub fn normalize_procedure(p: &Procedure) -> Procedure {
    match p {
        Procedure::Single(_) => p.clone(),
        Procedure::Guarded {
            branches,
            otherwise,
        } => {
            let (branches, otherwise) = normalize_decision_list(branches, otherwise);
            // The first branch is always kept, so the result stays guarded.
            Procedure::Guarded {
                branches,
                otherwise,
            }
        }
    }
}

pub fn normalize_selector(s: &SelectorShape) -> SelectorShape {
    match s {
        SelectorShape::Default => SelectorShape::Default,
        SelectorShape::Guarded(conds) => {
            let tagged: Vec<(Literal, ())> = conds.iter().map(|l| (*l, ())).collect();
            let (kept, _) = normalize_decision_list(&tagged, &());
            SelectorShape::Guarded(kept.into_iter().map(|(l, _)| l).collect())
        }
    }
}

/// Normalizes the selector (carrying slot procedures along with their
/// conditions) and then every procedure.
pub fn normalize_system(system: &System) -> System {
    let selector_list: Vec<(Literal, usize)> = system
        .selector
        .conditions()
        .iter()
        .enumerate()
        .map(|(i, l)| (*l, i))
        .collect();
    let (selector, slot_ids) = match &system.selector {
        SelectorShape::Default => (SelectorShape::Default, vec![0]),
        SelectorShape::Guarded(conds) => {
            let (kept, fallback) = normalize_decision_list(&selector_list, &conds.len());
            let mut ids: Vec<usize> = kept.iter().map(|(_, i)| *i).collect();
            ids.push(fallback);
            (
                SelectorShape::Guarded(kept.into_iter().map(|(l, _)| l).collect()),
                ids,
            )
        }
    };
    let procedures = slot_ids
        .iter()
        .map(|&i| normalize_procedure(&system.procedures[i]))
        .collect();
    System::from_parts(selector, procedures)
}

/// True when no variable occurs in two conditions of the block.
pub fn is_variable_distinct(lits: impl IntoIterator<Item = Literal>) -> bool {
    let mut seen = BTreeSet::new();
    lits.into_iter().all(|l| seen.insert(l.var))
}
