//! Text formats: the block syntax for components, and TOML documents for
//! instances and solutions.
//!
//! Variables, actions and requirement rows are 1-based in text. A
//! procedure reads `a2` or `if i4 then a2 elsif !i3 then a1 else a1`; a
//! selector reads `*` or `if i1 elsif i5 else`. Situations are bit-strings
//! such as `TTFFT` in variable order.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    Action, Alphabet, Libraries, Literal, Procedure, Requirement, SelectorShape, Situation,
    StructureSpec, System,
};
use crate::solve::{Instance, Problem, ProblemKind, SolveError, SolveOutcome, Strategy};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticCode {
    Syntax,
    Range,
    Precondition,
    Version,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::Syntax => "E-SYNTAX",
            DiagnosticCode::Range => "E-RANGE",
            DiagnosticCode::Precondition => "E-PRECONDITION",
            DiagnosticCode::Version => "E-VERSION",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} {field}: {message}", code.as_str())]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    /// Dotted path of the offending field, e.g. `requirements[2]`.
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, field: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TextError {
    Syntax(String),
    Range(String),
}

impl TextError {
    fn at(self, field: impl Into<String>) -> Diagnostic {
        match self {
            TextError::Syntax(m) => Diagnostic::new(DiagnosticCode::Syntax, field, m),
            TextError::Range(m) => Diagnostic::new(DiagnosticCode::Range, field, m),
        }
    }
}

fn index_1based(
    tok: &str,
    prefix: &str,
    what: &str,
    limit: Option<usize>,
) -> Result<usize, TextError> {
    let digits = tok
        .strip_prefix(prefix)
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| {
            TextError::Syntax(format!("expected {what} like `{prefix}1`, got `{tok}`"))
        })?;
    let n: usize = digits
        .parse()
        .map_err(|_| TextError::Range(format!("{what} `{tok}` is too large")))?;
    if n == 0 {
        return Err(TextError::Range(format!(
            "{what} `{tok}`: indices start at 1"
        )));
    }
    if let Some(limit) = limit {
        if n > limit {
            return Err(TextError::Range(format!(
                "{what} `{tok}` out of range 1..={limit}"
            )));
        }
    }
    Ok(n - 1)
}

fn parse_literal(tok: &str, alpha: &Alphabet) -> Result<Literal, TextError> {
    let (negated, rest) = match tok.strip_prefix('!') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let var = index_1based(rest, "i", "variable", Some(alpha.num_vars()))?;
    Ok(Literal { var, negated })
}

fn parse_action(tok: &str, alpha: &Alphabet) -> Result<Action, TextError> {
    index_1based(tok, "a", "action", Some(alpha.num_actions())).map(Action)
}

fn expect_word(tokens: &mut std::slice::Iter<'_, &str>, word: &str) -> Result<(), TextError> {
    match tokens.next() {
        Some(t) if *t == word => Ok(()),
        Some(t) => Err(TextError::Syntax(format!("expected `{word}`, got `{t}`"))),
        None => Err(TextError::Syntax(format!(
            "expected `{word}`, got end of text"
        ))),
    }
}

fn next_token<'a>(tokens: &mut std::slice::Iter<'_, &'a str>) -> Result<&'a str, TextError> {
    tokens
        .next()
        .copied()
        .ok_or_else(|| TextError::Syntax("unexpected end of text".into()))
}

fn parse_procedure_text(text: &str, alpha: &Alphabet) -> Result<Procedure, TextError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let mut it = words.iter();
    let first = next_token(&mut it)?;
    if first != "if" {
        let a = parse_action(first, alpha)?;
        if let Some(extra) = it.next() {
            return Err(TextError::Syntax(format!(
                "unexpected `{extra}` after single action"
            )));
        }
        return Ok(Procedure::Single(a));
    }
    let mut branches = Vec::new();
    loop {
        let lit = parse_literal(next_token(&mut it)?, alpha)?;
        expect_word(&mut it, "then")?;
        branches.push((lit, parse_action(next_token(&mut it)?, alpha)?));
        match next_token(&mut it)? {
            "elsif" => continue,
            "else" => break,
            t => {
                return Err(TextError::Syntax(format!(
                    "expected `elsif` or `else`, got `{t}`"
                )))
            }
        }
    }
    let otherwise = parse_action(next_token(&mut it)?, alpha)?;
    if let Some(extra) = it.next() {
        return Err(TextError::Syntax(format!(
            "unexpected `{extra}` after else action"
        )));
    }
    Ok(Procedure::Guarded {
        branches,
        otherwise,
    })
}

fn parse_selector_text(text: &str, alpha: &Alphabet) -> Result<SelectorShape, TextError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let mut it = words.iter();
    let first = next_token(&mut it)?;
    if first == "*" {
        if let Some(extra) = it.next() {
            return Err(TextError::Syntax(format!("unexpected `{extra}` after `*`")));
        }
        return Ok(SelectorShape::Default);
    }
    if first != "if" {
        return Err(TextError::Syntax(format!(
            "expected `*` or `if`, got `{first}`"
        )));
    }
    let mut conds = Vec::new();
    loop {
        conds.push(parse_literal(next_token(&mut it)?, alpha)?);
        match next_token(&mut it)? {
            "elsif" => continue,
            "else" => break,
            t => {
                return Err(TextError::Syntax(format!(
                    "expected `elsif` or `else`, got `{t}`"
                )))
            }
        }
    }
    if let Some(extra) = it.next() {
        return Err(TextError::Syntax(format!(
            "unexpected `{extra}` after `else`"
        )));
    }
    Ok(SelectorShape::Guarded(conds))
}

fn parse_situation_text(text: &str, alpha: &Alphabet) -> Result<Situation, TextError> {
    let values = text
        .chars()
        .map(|c| match c {
            'T' => Ok(true),
            'F' => Ok(false),
            other => Err(TextError::Syntax(format!(
                "situation character `{other}` is not T or F"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != alpha.num_vars() {
        return Err(TextError::Range(format!(
            "situation has {} values, expected {}",
            values.len(),
            alpha.num_vars()
        )));
    }
    Ok(Situation::new(values))
}

fn parse_requirement_text(text: &str, alpha: &Alphabet) -> Result<Requirement, TextError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let [s, a] = words[..] else {
        return Err(TextError::Syntax(format!(
            "expected `<bits> <action>`, got `{text}`"
        )));
    };
    Ok(Requirement::new(
        parse_situation_text(s, alpha)?,
        parse_action(a, alpha)?,
    ))
}

/// Parses a procedure in block syntax, checked against `alpha`.
pub fn parse_procedure(text: &str, alpha: &Alphabet) -> Result<Procedure, Diagnostic> {
    parse_procedure_text(text, alpha).map_err(|e| e.at("procedure"))
}

pub fn parse_selector(text: &str, alpha: &Alphabet) -> Result<SelectorShape, Diagnostic> {
    parse_selector_text(text, alpha).map_err(|e| e.at("selector"))
}

pub fn parse_requirement(text: &str, alpha: &Alphabet) -> Result<Requirement, Diagnostic> {
    parse_requirement_text(text, alpha).map_err(|e| e.at("requirement"))
}

/// Block-syntax rendering of a procedure.
pub struct ProcedureText<'a>(pub &'a Procedure);

impl fmt::Display for ProcedureText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Procedure::Single(a) => write!(f, "{a}"),
            Procedure::Guarded {
                branches,
                otherwise,
            } => {
                for (i, (l, a)) in branches.iter().enumerate() {
                    let kw = if i == 0 { "if" } else { " elsif" };
                    write!(f, "{kw} {l} then {a}")?;
                }
                write!(f, " else {otherwise}")
            }
        }
    }
}

pub struct SelectorText<'a>(pub &'a SelectorShape);

impl fmt::Display for SelectorText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            SelectorShape::Default => f.write_str("*"),
            SelectorShape::Guarded(conds) => {
                for (i, l) in conds.iter().enumerate() {
                    let kw = if i == 0 { "if" } else { " elsif" };
                    write!(f, "{kw} {l}")?;
                }
                f.write_str(" else")
            }
        }
    }
}

pub fn situation_text(s: &Situation) -> String {
    s.values()
        .iter()
        .map(|&b| if b { 'T' } else { 'F' })
        .collect()
}

pub fn requirement_text(r: &Requirement) -> String {
    format!("{} {}", situation_text(&r.situation), r.action)
}

/// Multi-line rendering of a whole system for terminal output.
pub fn system_listing(system: &System) -> String {
    let mut out = format!("selector: {}\n", SelectorText(system.selector()));
    for (i, p) in system.procedures().iter().enumerate() {
        out.push_str(&format!("  slot {}: {}\n", i + 1, ProcedureText(p)));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub sel_max: usize,
    pub prc_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LibrariesDoc {
    pub selectors: Vec<String>,
    pub procedures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub selector: String,
    pub procedures: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_l: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub format: u32,
    pub kind: String,
    pub vars: usize,
    pub actions: usize,
    pub requirements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new_requirements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub libraries: Option<LibrariesDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<BudgetsDoc>,
}

fn system_doc(system: &System) -> SystemDoc {
    SystemDoc {
        selector: SelectorText(system.selector()).to_string(),
        procedures: system
            .procedures()
            .iter()
            .map(|p| ProcedureText(p).to_string())
            .collect(),
    }
}

impl InstanceDoc {
    pub fn from_instance(inst: &Instance) -> Self {
        let reqs = |rs: &[Requirement]| rs.iter().map(requirement_text).collect::<Vec<_>>();
        let libs = |l: &Libraries| LibrariesDoc {
            selectors: l
                .selectors()
                .iter()
                .map(|s| SelectorText(s).to_string())
                .collect(),
            procedures: l
                .procedures()
                .iter()
                .map(|p| ProcedureText(p).to_string())
                .collect(),
        };
        let structure = |x: &StructureSpec| StructureDoc {
            sel_max: x.sel_max,
            prc_max: x.prc_max,
        };
        let budgets = |d, c_c, c_l| Some(BudgetsDoc { d, c_c, c_l });
        let mut doc = InstanceDoc {
            format: FORMAT_VERSION,
            kind: inst.kind().name().to_string(),
            vars: inst.alphabet.num_vars(),
            actions: inst.alphabet.num_actions(),
            requirements: reqs(&inst.requirements),
            new_requirements: None,
            structure: None,
            libraries: inst.problem.libraries().map(libs),
            system: inst.problem.base().map(system_doc),
            budgets: None,
        };
        if inst.kind().is_reconfiguration() {
            doc.new_requirements = Some(reqs(inst.problem.new_requirements()));
        }
        match &inst.problem {
            Problem::ScreSpec { structure: x } => doc.structure = Some(structure(x)),
            Problem::ScreComp { d, .. } => doc.budgets = budgets(Some(*d), None, None),
            Problem::ScreCompA { d, c_c, .. } => doc.budgets = budgets(Some(*d), Some(*c_c), None),
            Problem::SrecSpec {
                structure: x, c_c, ..
            } => {
                doc.structure = Some(structure(x));
                doc.budgets = budgets(None, Some(*c_c), None);
            }
            Problem::SrecComp { c_l, d, .. } => doc.budgets = budgets(Some(*d), None, Some(*c_l)),
            Problem::SrecCompA { c_l, c_c, d, .. } => {
                doc.budgets = budgets(Some(*d), Some(*c_c), Some(*c_l))
            }
        }
        doc
    }

    pub fn to_instance(&self) -> Result<Instance, Diagnostic> {
        use DiagnosticCode::*;
        if self.format != FORMAT_VERSION {
            return Err(Diagnostic::new(
                Version,
                "format",
                format!(
                    "unsupported format {}, expected {FORMAT_VERSION}",
                    self.format
                ),
            ));
        }
        let kind: ProblemKind = self
            .kind
            .parse()
            .map_err(|m: String| Diagnostic::new(Syntax, "kind", m))?;
        let alpha = Alphabet::new(self.vars, self.actions).map_err(|e| {
            Diagnostic::new(
                Range,
                if self.vars == 0 { "vars" } else { "actions" },
                e.to_string(),
            )
        })?;

        let parse_reqs = |rows: &[String], field: &str| {
            rows.iter()
                .enumerate()
                .map(|(i, r)| {
                    parse_requirement_text(r, &alpha)
                        .map_err(|e| e.at(format!("{field}[{}]", i + 1)))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let requirements = parse_reqs(&self.requirements, "requirements")?;

        let present = |field: &str, is_some: bool, wanted: bool| -> Result<(), Diagnostic> {
            match (is_some, wanted) {
                (true, false) => Err(Diagnostic::new(
                    Syntax,
                    field,
                    format!("not used by {kind}"),
                )),
                (false, true) => Err(Diagnostic::new(
                    Syntax,
                    field,
                    format!("required by {kind}"),
                )),
                _ => Ok(()),
            }
        };
        let uses_structure = matches!(kind, ProblemKind::ScreSpec | ProblemKind::SrecSpec);
        present("structure", self.structure.is_some(), uses_structure)?;
        present("libraries", self.libraries.is_some(), kind.uses_libraries())?;
        present("system", self.system.is_some(), kind.is_reconfiguration())?;
        present(
            "new_requirements",
            self.new_requirements.is_some(),
            kind.is_reconfiguration(),
        )?;

        let budgets = self.budgets.clone().unwrap_or_default();
        let needs_d = kind.uses_libraries();
        let needs_cc = matches!(
            kind,
            ProblemKind::ScreCompA | ProblemKind::SrecSpec | ProblemKind::SrecCompA
        );
        let needs_cl = matches!(kind, ProblemKind::SrecComp | ProblemKind::SrecCompA);
        present("budgets.d", budgets.d.is_some(), needs_d)?;
        present("budgets.c_c", budgets.c_c.is_some(), needs_cc)?;
        present("budgets.c_l", budgets.c_l.is_some(), needs_cl)?;
        if self.budgets.is_some() && !(needs_d || needs_cc || needs_cl) {
            present("budgets", true, false)?;
        }

        let structure = self
            .structure
            .as_ref()
            .map(|x| StructureSpec::new(alpha, x.sel_max, x.prc_max));
        let libraries = match &self.libraries {
            Some(l) => {
                let selectors = l
                    .selectors
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        parse_selector_text(s, &alpha)
                            .map_err(|e| e.at(format!("libraries.selectors[{}]", i + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let procedures = l
                    .procedures
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        parse_procedure_text(p, &alpha)
                            .map_err(|e| e.at(format!("libraries.procedures[{}]", i + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if selectors.is_empty() {
                    return Err(Diagnostic::new(
                        Precondition,
                        "libraries.selectors",
                        "library must not be empty",
                    ));
                }
                if procedures.is_empty() {
                    return Err(Diagnostic::new(
                        Precondition,
                        "libraries.procedures",
                        "library must not be empty",
                    ));
                }
                Some(Libraries::new(selectors, procedures))
            }
            None => None,
        };
        let base = match &self.system {
            Some(s) => {
                let selector = parse_selector_text(&s.selector, &alpha)
                    .map_err(|e| e.at("system.selector"))?;
                let procedures = s
                    .procedures
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        parse_procedure_text(p, &alpha)
                            .map_err(|e| e.at(format!("system.procedures[{}]", i + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(
                    System::new(selector, procedures)
                        .map_err(|e| Diagnostic::new(Range, "system.procedures", e.to_string()))?,
                )
            }
            None => None,
        };
        let new_requirements = match &self.new_requirements {
            Some(rows) => parse_reqs(rows, "new_requirements")?,
            None => Vec::new(),
        };

        let (d, c_c, c_l) = (
            budgets.d.unwrap_or(0),
            budgets.c_c.unwrap_or(0),
            budgets.c_l.unwrap_or(0),
        );
        let problem = match kind {
            ProblemKind::ScreSpec => Problem::ScreSpec {
                structure: structure.unwrap(),
            },
            ProblemKind::ScreComp => Problem::ScreComp {
                libraries: libraries.unwrap(),
                d,
            },
            ProblemKind::ScreCompA => Problem::ScreCompA {
                libraries: libraries.unwrap(),
                d,
                c_c,
            },
            ProblemKind::SrecSpec => Problem::SrecSpec {
                base: base.unwrap(),
                structure: structure.unwrap(),
                new_requirements,
                c_c,
            },
            ProblemKind::SrecComp => Problem::SrecComp {
                base: base.unwrap(),
                libraries: libraries.unwrap(),
                new_requirements,
                c_l,
                d,
            },
            ProblemKind::SrecCompA => Problem::SrecCompA {
                base: base.unwrap(),
                libraries: libraries.unwrap(),
                new_requirements,
                c_l,
                c_c,
                d,
            },
        };
        Instance::new(alpha, requirements, problem).map_err(|e| match e {
            SolveError::Precondition(m) => {
                let field = if m.contains("structure")
                    || m.contains("libraries")
                    || m.contains("requirements")
                {
                    "system"
                } else {
                    "instance"
                };
                Diagnostic::new(Precondition, field, m)
            }
            other => Diagnostic::new(Range, "instance", other.to_string()),
        })
    }
}

fn toml_syntax(e: toml::de::Error) -> Diagnostic {
    let field = match e.span() {
        Some(span) => format!("byte {}", span.start),
        None => "document".to_string(),
    };
    Diagnostic::new(
        DiagnosticCode::Syntax,
        field,
        e.message().trim().to_string(),
    )
}

pub fn parse_instance(text: &str) -> Result<Instance, Diagnostic> {
    let doc: InstanceDoc = toml::from_str(text).map_err(toml_syntax)?;
    doc.to_instance()
}

pub fn serialize_instance(inst: &Instance) -> String {
    toml::to_string(&InstanceDoc::from_instance(inst)).expect("instance documents serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDoc {
    pub format: u32,
    pub kind: String,
    pub strategy: String,
    /// `solution` or `bottom`.
    pub answer: String,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre_edit: Option<SystemDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsDoc {
    pub types: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code_changes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_changes: Option<usize>,
}

impl SolutionDoc {
    pub fn new(kind: ProblemKind, strategy: Strategy, outcome: &SolveOutcome) -> Self {
        let mut doc = SolutionDoc {
            format: FORMAT_VERSION,
            kind: kind.name().to_string(),
            strategy: strategy.name().to_string(),
            answer: "bottom".into(),
            nodes: outcome.nodes(),
            metrics: None,
            system: None,
            pre_edit: None,
        };
        if let SolveOutcome::Solution(s) = outcome {
            doc.answer = "solution".into();
            doc.metrics = Some(MetricsDoc {
                types: s.metrics.types,
                code_changes: s.metrics.code_changes,
                component_changes: s.metrics.component_changes,
            });
            doc.system = Some(system_doc(&s.system));
            doc.pre_edit = s.base.as_ref().map(system_doc);
        }
        doc
    }

    /// Parses the answer system back, if any.
    pub fn parse_system(&self, alpha: &Alphabet) -> Result<Option<System>, Diagnostic> {
        let Some(s) = &self.system else {
            return Ok(None);
        };
        let selector =
            parse_selector_text(&s.selector, alpha).map_err(|e| e.at("system.selector"))?;
        let procedures = s
            .procedures
            .iter()
            .enumerate()
            .map(|(i, p)| {
                parse_procedure_text(p, alpha)
                    .map_err(|e| e.at(format!("system.procedures[{}]", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        System::new(selector, procedures)
            .map(Some)
            .map_err(|e| Diagnostic::new(DiagnosticCode::Range, "system", e.to_string()))
    }
}

pub fn serialize_solution(kind: ProblemKind, strategy: Strategy, outcome: &SolveOutcome) -> String {
    toml::to_string(&SolutionDoc::new(kind, strategy, outcome))
        .expect("solution documents serialize")
}

pub fn parse_solution(text: &str) -> Result<SolutionDoc, Diagnostic> {
    let doc: SolutionDoc = toml::from_str(text).map_err(toml_syntax)?;
    if doc.format != FORMAT_VERSION {
        return Err(Diagnostic::new(
            DiagnosticCode::Version,
            "format",
            format!("unsupported format {}", doc.format),
        ));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fig1;
    use crate::solve::solve;

    fn fig1_instance() -> Instance {
        let x = StructureSpec::new(fig1::alphabet(), 2, 3);
        Instance::new(
            fig1::alphabet(),
            fig1::requirements(),
            Problem::ScreSpec { structure: x },
        )
        .unwrap()
    }

    const FIG1_TEXT: &str = r#"
format = 1
kind = "scre-spec"
vars = 5
actions = 3
requirements = ["TTTTT a2", "TFFFT a1", "FFFFF a2", "FFFFF a2", "TTTFT a3"]

[structure]
sel_max = 2
prc_max = 3
"#;

    #[test]
    fn figure_document_parses() {
        assert_eq!(parse_instance(FIG1_TEXT).unwrap(), fig1_instance());
    }

    #[test]
    fn block_syntax_round_trip() {
        let a = fig1::alphabet();
        for p in [fig1::p1(), fig1::p2(), fig1::p3(), fig1::p4()] {
            let text = ProcedureText(&p).to_string();
            assert_eq!(parse_procedure(&text, &a).unwrap(), p, "{text}");
        }
        assert_eq!(
            ProcedureText(&fig1::p3()).to_string(),
            "if i4 then a2 else a2"
        );
        assert_eq!(SelectorText(&fig1::s1()).to_string(), "if i1 elsif i5 else");
        assert_eq!(parse_selector("*", &a).unwrap(), SelectorShape::Default);
        assert_eq!(
            parse_selector("if i1 elsif i5 else", &a).unwrap(),
            fig1::s1()
        );
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad_action = FIG1_TEXT.replace("TFFFT a1", "TFFFT a0");
        let e = parse_instance(&bad_action).unwrap_err();
        assert_eq!(
            (e.code, e.field.as_str()),
            (DiagnosticCode::Range, "requirements[2]")
        );

        let e = parse_instance(&FIG1_TEXT.replace("FFFFF a2\", \"TTT", "FFFF a2\", \"TTT"))
            .unwrap_err();
        assert_eq!(
            (e.code, e.field.as_str()),
            (DiagnosticCode::Range, "requirements[4]")
        );

        let e = parse_instance(&FIG1_TEXT.replace("format = 1", "format = 2")).unwrap_err();
        assert_eq!(e.code, DiagnosticCode::Version);

        let e = parse_instance(&format!("{FIG1_TEXT}\nextra = 3\n")).unwrap_err();
        assert_eq!(e.code, DiagnosticCode::Syntax);

        let e = parse_instance(&FIG1_TEXT.replace("TTTTT a2", "TTXTT a2")).unwrap_err();
        assert_eq!(
            (e.code, e.field.as_str()),
            (DiagnosticCode::Syntax, "requirements[1]")
        );

        let e = parse_instance(&format!("{FIG1_TEXT}\n[budgets]\nd = 3\n")).unwrap_err();
        assert_eq!(
            (e.code, e.field.as_str()),
            (DiagnosticCode::Syntax, "budgets.d")
        );
    }

    #[test]
    fn precondition_diagnostic() {
        let text = r#"
format = 1
kind = "srec-spec"
vars = 1
actions = 2
requirements = ["T a2"]
new_requirements = []

[structure]
sel_max = 0
prc_max = 0

[system]
selector = "*"
procedures = ["a1"]

[budgets]
c_c = 1
"#;
        let e = parse_instance(text).unwrap_err();
        assert_eq!(e.code, DiagnosticCode::Precondition);
        assert!(parse_instance(&text.replace("[\"a1\"]", "[\"a2\"]")).is_ok());
    }

    #[test]
    fn instance_and_solution_round_trip() {
        let inst = fig1_instance();
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);

        let out = solve(&inst, Strategy::Normalized).unwrap();
        let doc_text = serialize_solution(inst.kind(), Strategy::Normalized, &out);
        let doc = parse_solution(&doc_text).unwrap();
        assert_eq!(doc.answer, "solution");
        assert_eq!(
            doc.parse_system(&inst.alphabet).unwrap().as_ref(),
            out.solution().map(|s| &s.system)
        );
    }
}
