//! Canonical, lazy enumeration of blocks, systems, library assemblies and
//! bounded edit/swap neighborhoods.
//!
//! Every stream is strictly ascending in the canonical order defined by the
//! `Ord` impls in [`crate::model`]. All of them are built on one primitive,
//! [`BoundedOdometer`], which walks index vectors in lexicographic order
//! while keeping the Hamming distance to a base vector within a budget.
//! Block lists (procedures for one slot) are materialized; system products
//! never are.

use std::sync::Arc;

use crate::model::{
    is_variable_distinct, Action, Alphabet, Libraries, Literal, Procedure, SelectorShape,
    StructureSpec, System,
};

/// Lexicographic walk over vectors `v` with `v[p] < radices[p]` that differ
/// from `base` in at most `budget` positions.
#[derive(Debug, Clone)]
pub struct BoundedOdometer {
    radices: Vec<usize>,
    base: Vec<usize>,
    budget: usize,
    current: Vec<usize>,
    state: OdoState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OdoState {
    Fresh,
    Running,
    Done,
}

impl BoundedOdometer {
    pub fn new(radices: Vec<usize>, base: Vec<usize>, budget: usize) -> Self {
        assert_eq!(radices.len(), base.len());
        debug_assert!(radices.contains(&0) || base.iter().zip(&radices).all(|(b, r)| b < r));
        let state = if radices.contains(&0) {
            OdoState::Done
        } else {
            OdoState::Fresh
        };
        let current = vec![0; radices.len()];
        BoundedOdometer {
            radices,
            base,
            budget,
            current,
            state,
        }
    }

    /// Every vector with the given radices.
    pub fn full(radices: Vec<usize>) -> Self {
        let n = radices.len();
        BoundedOdometer::new(radices, vec![0; n], n)
    }

    // Smallest completion of positions `from..` using at most `left` changes.
    fn fill(&mut self, from: usize, mut left: usize) {
        for q in from..self.radices.len() {
            if left > 0 {
                self.current[q] = 0;
                if self.base[q] != 0 {
                    left -= 1;
                }
            } else {
                self.current[q] = self.base[q];
            }
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.radices.len();
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(0usize);
        for q in 0..n {
            let d = prefix[q] + usize::from(self.current[q] != self.base[q]);
            prefix.push(d);
        }
        for p in (0..n).rev() {
            let used = prefix[p];
            let cur = self.current[p];
            let next = if used < self.budget {
                (cur + 1 < self.radices[p]).then_some(cur + 1)
            } else {
                (self.base[p] > cur).then_some(self.base[p])
            };
            if let Some(v) = next {
                self.current[p] = v;
                let spent = used + usize::from(v != self.base[p]);
                self.fill(p + 1, self.budget - spent);
                return true;
            }
        }
        false
    }
}

impl Iterator for BoundedOdometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        match self.state {
            OdoState::Done => None,
            OdoState::Fresh => {
                self.fill(0, self.budget);
                self.state = OdoState::Running;
                Some(self.current.clone())
            }
            OdoState::Running => {
                if self.advance() {
                    Some(self.current.clone())
                } else {
                    self.state = OdoState::Done;
                    None
                }
            }
        }
    }
}

/// All literals over the alphabet in canonical order; literal `l` sits at
/// index `2 * l.var + l.negated`.
pub fn literals(alphabet: &Alphabet) -> Vec<Literal> {
    (0..alphabet.num_vars())
        .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
        .collect()
}

fn literal_index(l: Literal) -> usize {
    2 * l.var + usize::from(l.negated)
}

fn literal_at(idx: usize) -> Literal {
    Literal {
        var: idx / 2,
        negated: idx % 2 == 1,
    }
}

fn cond_cap(alphabet: &Alphabet, max_conds: usize, distinct_vars: bool) -> usize {
    if distinct_vars {
        max_conds.min(alphabet.num_vars())
    } else {
        max_conds
    }
}

/// Every procedure with at most `max_conds` conditions, ascending. With
/// `distinct_vars`, only blocks that test each variable at most once.
pub fn enum_procedures(
    alphabet: Alphabet,
    max_conds: usize,
    distinct_vars: bool,
) -> impl Iterator<Item = Procedure> {
    let n_act = alphabet.num_actions();
    let n_lit = 2 * alphabet.num_vars();
    let singles = (0..n_act).map(|a| Procedure::Single(Action(a)));
    let cap = cond_cap(&alphabet, max_conds, distinct_vars);
    let guarded = (1..=cap).flat_map(move |c| {
        // Digits: c branches, each (literal, action) flattened, then the else action.
        let mut radices = vec![n_lit * n_act; c];
        radices.push(n_act);
        BoundedOdometer::full(radices).filter_map(move |digits| {
            let branches: Vec<(Literal, Action)> = digits[..c]
                .iter()
                .map(|&d| (literal_at(d / n_act), Action(d % n_act)))
                .collect();
            if distinct_vars && !is_variable_distinct(branches.iter().map(|(l, _)| *l)) {
                return None;
            }
            Some(Procedure::Guarded {
                branches,
                otherwise: Action(digits[c]),
            })
        })
    });
    singles.chain(guarded)
}

/// The default selector, then every guarded selector with
/// `1..=max_conds` conditions, ascending.
pub fn enum_selectors(
    alphabet: Alphabet,
    max_conds: usize,
    distinct_vars: bool,
) -> impl Iterator<Item = SelectorShape> {
    let n_lit = 2 * alphabet.num_vars();
    let cap = cond_cap(&alphabet, max_conds, distinct_vars);
    let guarded = (1..=cap).flat_map(move |c| {
        BoundedOdometer::full(vec![n_lit; c]).filter_map(move |digits| {
            let conds: Vec<Literal> = digits.into_iter().map(literal_at).collect();
            if distinct_vars && !is_variable_distinct(conds.iter().copied()) {
                return None;
            }
            Some(SelectorShape::Guarded(conds))
        })
    });
    std::iter::once(SelectorShape::Default).chain(guarded)
}

fn fill_slots<'a>(
    selectors: impl Iterator<Item = SelectorShape> + 'a,
    procedures: Arc<Vec<Procedure>>,
) -> impl Iterator<Item = System> + 'a {
    selectors.flat_map(move |sel| {
        let procs = Arc::clone(&procedures);
        let slots = sel.slots();
        BoundedOdometer::full(vec![procs.len(); slots]).map(move |digits| {
            let chosen = digits.iter().map(|&d| procs[d].clone()).collect();
            System::from_parts(sel.clone(), chosen)
        })
    })
}

/// Every system consistent with `spec`, ascending.
pub fn enum_systems_spec(spec: StructureSpec, distinct_vars: bool) -> impl Iterator<Item = System> {
    let procs: Vec<Procedure> =
        enum_procedures(spec.alphabet, spec.prc_max, distinct_vars).collect();
    fill_slots(
        enum_selectors(spec.alphabet, spec.sel_max, distinct_vars),
        Arc::new(procs),
    )
}

/// Every system assembled from library components, ascending. Selectors
/// with more than `sel_cap` conditions are skipped when a cap is given.
pub fn enum_systems_comp(libs: &Libraries, sel_cap: Option<usize>) -> impl Iterator<Item = System> {
    let selectors: Vec<SelectorShape> = libs
        .selectors()
        .iter()
        .filter(|s| sel_cap.is_none_or(|cap| s.cond_count() <= cap))
        .cloned()
        .collect();
    fill_slots(selectors.into_iter(), Arc::new(libs.procedures().to_vec()))
}

/// Same set as [`enum_systems_comp`] without a cap, reached through the raw
/// token enumerators: blocks of the full token space are kept when the
/// library holds them.
pub fn enum_systems_token_filtered(
    alphabet: Alphabet,
    libs: &Libraries,
) -> impl Iterator<Item = System> {
    let sel_lib = libs.clone();
    let selectors =
        enum_selectors(alphabet, libs.max_sel(), false).filter(move |s| sel_lib.has_selector(s));
    let procs: Vec<Procedure> = enum_procedures(alphabet, libs.max_prc(), false)
        .filter(|p| libs.has_procedure(p))
        .collect();
    fill_slots(selectors, Arc::new(procs))
}

#[derive(Debug, Clone, Copy)]
enum Token {
    Lit,
    Act,
}

fn tokenize(system: &System) -> (Vec<Token>, Vec<usize>) {
    let mut kinds = Vec::new();
    let mut values = Vec::new();
    for l in system.selector().conditions() {
        kinds.push(Token::Lit);
        values.push(literal_index(*l));
    }
    for p in system.procedures() {
        match p {
            Procedure::Single(a) => {
                kinds.push(Token::Act);
                values.push(a.0);
            }
            Procedure::Guarded {
                branches,
                otherwise,
            } => {
                for (l, a) in branches {
                    kinds.push(Token::Lit);
                    values.push(literal_index(*l));
                    kinds.push(Token::Act);
                    values.push(a.0);
                }
                kinds.push(Token::Act);
                values.push(otherwise.0);
            }
        }
    }
    (kinds, values)
}

fn detokenize(skeleton: &System, values: &[usize]) -> System {
    let mut it = values.iter().copied();
    let selector = match skeleton.selector() {
        SelectorShape::Default => SelectorShape::Default,
        SelectorShape::Guarded(c) => SelectorShape::Guarded(
            (0..c.len())
                .map(|_| literal_at(it.next().unwrap()))
                .collect(),
        ),
    };
    let procedures = skeleton
        .procedures()
        .iter()
        .map(|p| match p {
            Procedure::Single(_) => Procedure::Single(Action(it.next().unwrap())),
            Procedure::Guarded { branches, .. } => {
                let branches = (0..branches.len())
                    .map(|_| (literal_at(it.next().unwrap()), Action(it.next().unwrap())))
                    .collect();
                Procedure::Guarded {
                    branches,
                    otherwise: Action(it.next().unwrap()),
                }
            }
        })
        .collect();
    System::from_parts(selector, procedures)
}

/// Number of replaceable tokens (condition literals and executed actions).
pub fn token_count(system: &System) -> usize {
    tokenize(system).0.len()
}

/// Every system reachable from `system` by at most `c_c` single-token
/// replacements, ascending, `system` itself included. The system must be
/// valid against `alphabet`.
pub fn enum_code_neighborhood(
    system: &System,
    c_c: usize,
    alphabet: Alphabet,
) -> impl Iterator<Item = System> {
    let (kinds, base) = tokenize(system);
    let radices = kinds
        .iter()
        .map(|k| match k {
            Token::Lit => 2 * alphabet.num_vars(),
            Token::Act => alphabet.num_actions(),
        })
        .collect();
    let budget = c_c.min(base.len());
    let skeleton = system.clone();
    BoundedOdometer::new(radices, base, budget).map(move |values| detokenize(&skeleton, &values))
}

/// Every system reachable from `system` by at most `c_l` component swaps
/// drawn from `libs`, ascending, `system` itself included. Selector swaps
/// keep the slot assignment positionally and so need equal condition counts.
pub fn enum_component_neighborhood(
    system: &System,
    libs: &Libraries,
    c_l: usize,
) -> impl Iterator<Item = System> {
    let mut sel_choices: Vec<SelectorShape> = libs
        .selectors()
        .iter()
        .filter(|s| s.cond_count() == system.selector().cond_count())
        .cloned()
        .collect();
    sel_choices.push(system.selector().clone());
    sel_choices.sort();
    sel_choices.dedup();
    let sel_base = sel_choices.binary_search(system.selector()).unwrap();

    let slot_choices: Vec<Vec<Procedure>> = system
        .procedures()
        .iter()
        .map(|p| {
            let mut c = libs.procedures().to_vec();
            if !libs.has_procedure(p) {
                c.push(p.clone());
                c.sort();
            }
            c
        })
        .collect();
    let mut radices = vec![sel_choices.len()];
    let mut base = vec![sel_base];
    for (p, choices) in system.procedures().iter().zip(&slot_choices) {
        radices.push(choices.len());
        base.push(choices.binary_search(p).unwrap());
    }
    let budget = c_l.min(base.len());
    BoundedOdometer::new(radices, base, budget).map(move |digits| {
        let selector = sel_choices[digits[0]].clone();
        let procedures = digits[1..]
            .iter()
            .zip(&slot_choices)
            .map(|(&d, c)| c[d].clone())
            .collect();
        System::from_parts(selector, procedures)
    })
}

/// The `index`-th of `parts` disjoint, deterministic strided sub-streams,
/// paired with each item's position in the full stream.
pub fn partition<I: Iterator>(
    iter: I,
    parts: usize,
    index: usize,
) -> impl Iterator<Item = (usize, I::Item)> {
    assert!(parts > 0 && index < parts);
    iter.enumerate().filter(move |(i, _)| i % parts == index)
}

/// Emitted size of a stream next to a theoretical bound on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSpaceStats {
    pub emitted: u64,
    pub bound: f64,
}

impl SearchSpaceStats {
    pub fn measure<I: Iterator>(iter: I, bound: f64) -> Self {
        SearchSpaceStats {
            emitted: iter.count() as u64,
            bound,
        }
    }

    pub fn within_bound(&self) -> bool {
        (self.emitted as f64) <= self.bound
    }
}

/// Bound `T` on selectors or procedures with at most `|I| + 1` conditions:
/// `(|I|+1) (2|I|)^(|I|+1) (|I|+1)^(|I|+1)`. It counts condition choices
/// and orderings only, not executed actions.
pub fn block_bound(num_vars: usize) -> f64 {
    let n = num_vars as f64;
    let e = num_vars as i32 + 1;
    (n + 1.0) * (2.0 * n).powi(e) * (n + 1.0).powi(e)
}

/// Bound `T' = T^(|I|+3) (|I|+2)^(|I|+2)` on the number of systems over
/// `|I|` variables.
pub fn system_bound(num_vars: usize) -> f64 {
    let t = block_bound(num_vars);
    let n = num_vars as i32;
    t.powi(n + 3) * ((num_vars + 2) as f64).powi(n + 2)
}

/// Exact size of the library product: the sum over selectors of
/// `|L_prc|^slots`.
pub fn library_product_size(libs: &Libraries, sel_cap: Option<usize>) -> u128 {
    let n = libs.procedures().len() as u128;
    libs.selectors()
        .iter()
        .filter(|s| sel_cap.is_none_or(|cap| s.cond_count() <= cap))
        .map(|s| n.pow(s.slots() as u32))
        .sum()
}

fn falling(n: u128, k: usize) -> u128 {
    (0..k as u128).map(|i| n.saturating_sub(i)).product()
}

/// Closed-form count of [`enum_procedures`].
pub fn procedure_space_size(alphabet: Alphabet, max_conds: usize, distinct_vars: bool) -> u128 {
    let a = alphabet.num_actions() as u128;
    let n = alphabet.num_vars() as u128;
    let cap = cond_cap(&alphabet, max_conds, distinct_vars);
    let guarded: u128 = (1..=cap)
        .map(|c| {
            let conds = if distinct_vars {
                falling(n, c) * 2u128.pow(c as u32)
            } else {
                (2 * n).pow(c as u32)
            };
            conds * a.pow(c as u32 + 1)
        })
        .sum();
    a + guarded
}

/// Closed-form count of [`enum_selectors`].
pub fn selector_space_size(alphabet: Alphabet, max_conds: usize, distinct_vars: bool) -> u128 {
    let n = alphabet.num_vars() as u128;
    let cap = cond_cap(&alphabet, max_conds, distinct_vars);
    1 + (1..=cap)
        .map(|c| {
            if distinct_vars {
                falling(n, c) * 2u128.pow(c as u32)
            } else {
                (2 * n).pow(c as u32)
            }
        })
        .sum::<u128>()
}

/// Closed-form count of [`enum_systems_spec`].
pub fn system_space_size(spec: StructureSpec, distinct_vars: bool) -> u128 {
    let procs = procedure_space_size(spec.alphabet, spec.prc_max, distinct_vars);
    let n = spec.alphabet.num_vars() as u128;
    let cap = cond_cap(&spec.alphabet, spec.sel_max, distinct_vars);
    let default = procs;
    let guarded: u128 = (1..=cap)
        .map(|c| {
            let sels = if distinct_vars {
                falling(n, c) * 2u128.pow(c as u32)
            } else {
                (2 * n).pow(c as u32)
            };
            sels * procs.pow(c as u32 + 1)
        })
        .sum();
    default + guarded
}
