//! Command-line front end.
//!
//! Exit codes: 0 for a positive answer or a successful validation, 2 for a
//! negative answer (no system, no dominating set, reduction mismatch), 1 for
//! usage and input errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bench::{parse_setting, run_bench, write_csv, BenchConfig, BenchParam, Sweep};
use crate::format::{parse_instance, serialize_instance, serialize_solution, system_listing};
use crate::graph::{ds_oracle, format_vertex_set, Graph};
use crate::reduce::{reduce, verify_reduction};
use crate::solve::{solve_with, ProblemKind, SolveOptions, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "compsynth",
    version,
    about = "Create and reconfigure selector/procedure systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate an instance document.
    Check { instance: PathBuf },
    /// Solve an instance and emit a solution document.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "normalized")]
        strategy: Strategy,
        /// Write the solution document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Find a minimum dominating set of size at most k.
    Ds { graph: PathBuf, k: usize },
    /// Build the reduced instance of a graph for one problem kind.
    Reduce {
        kind: ProblemKind,
        graph: PathBuf,
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the Dominating Set answer with the solver on the reduced instance.
    VerifyReduction {
        kind: ProblemKind,
        graph: PathBuf,
        k: usize,
        #[arg(long, default_value = "normalized")]
        strategy: Strategy,
    },
    /// Sweep one parameter over seeded unsatisfiable instances and record node counts.
    Bench {
        kind: ProblemKind,
        /// `<param>=<lo>..<hi>`, inclusive.
        #[arg(long)]
        sweep: Sweep,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Run only this strategy.
        #[arg(long)]
        strategy: Option<Strategy>,
        /// Fix another parameter, e.g. `--set sel_max=2`.
        #[arg(long = "set", value_parser = parse_setting)]
        settings: Vec<(BenchParam, usize)>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Replaces `path` with `contents` in one rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            write_atomic(p, text.as_bytes()).map_err(|e| Failure(format!("{}: {e}", p.display())))
        }
        None => out.write_all(text.as_bytes()).map_err(Failure::from),
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Check { instance } => {
            let inst = parse_instance(&read(&instance)?)
                .map_err(|d| Failure(format!("{}: {d}", instance.display())))?;
            writeln!(out, "valid {} instance", inst.kind())?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            instance,
            strategy,
            out: path,
            threads,
        } => {
            let inst = parse_instance(&read(&instance)?)
                .map_err(|d| Failure(format!("{}: {d}", instance.display())))?;
            let outcome = solve_with(&inst, &SolveOptions::new(strategy).threads(threads))?;
            emit(
                out,
                path.as_deref(),
                &serialize_solution(inst.kind(), strategy, &outcome),
            )?;
            if let (Some(_), Some(sol)) = (&path, outcome.solution()) {
                write!(out, "{}", system_listing(&sol.system))?;
            }
            Ok(if outcome.is_solution() {
                EXIT_OK
            } else {
                EXIT_NO
            })
        }
        Command::Ds { graph, k } => match ds_oracle(&read_graph(&graph)?, k) {
            Some(set) => {
                writeln!(out, "{}", format_vertex_set(&set))?;
                Ok(EXIT_OK)
            }
            None => {
                writeln!(out, "none")?;
                Ok(EXIT_NO)
            }
        },
        Command::Reduce {
            kind,
            graph,
            k,
            out: path,
        } => {
            let reduced = reduce(kind, &read_graph(&graph)?, k);
            for note in &reduced.notes {
                writeln!(err, "note: {note}")?;
            }
            emit(out, path.as_deref(), &serialize_instance(&reduced.instance))?;
            Ok(EXIT_OK)
        }
        Command::VerifyReduction {
            kind,
            graph,
            k,
            strategy,
        } => {
            let report = verify_reduction(kind, &read_graph(&graph)?, k, strategy);
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            match &report.dominating_set {
                Some(set) => writeln!(out, "dominating set: yes ({})", format_vertex_set(set))?,
                None => writeln!(out, "dominating set: no")?,
            }
            match report.solver_answer {
                Some(a) => writeln!(out, "solver: {}", yes_no(a))?,
                None => writeln!(out, "solver: error")?,
            }
            match &report.witness_check {
                Some(Ok(())) => writeln!(out, "witness: ok")?,
                Some(Err(e)) => writeln!(out, "witness: FAILED ({e})")?,
                None => {}
            }
            writeln!(out, "equivalent: {}", yes_no(report.equivalent()))?;
            for note in &report.notes {
                writeln!(err, "note: {note}")?;
            }
            if let Some(e) = &report.error {
                writeln!(err, "error: {e}")?;
            }
            Ok(if report.equivalent() && report.witness_ok() {
                EXIT_OK
            } else {
                EXIT_NO
            })
        }
        Command::Bench {
            kind,
            sweep,
            seed,
            out: path,
            strategy,
            settings,
            threads,
        } => {
            let config = BenchConfig {
                kind,
                sweep,
                seed,
                strategy,
                settings,
                threads: threads.max(1),
            };
            let records = run_bench(&config)?;
            let mut buf = Vec::new();
            write_csv(&records, &mut buf)?;
            emit(
                out,
                Some(&path),
                &String::from_utf8(buf).expect("csv is utf-8"),
            )?;
            writeln!(
                out,
                "{} records written to {}",
                records.len(),
                path.display()
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_ERROR
                }
            };
        }
    };
    match run(cli, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
