//! The `evstruct` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use evstruct_core::translate::{translate, Route, Target};
use evstruct_core::{oracle, Error, Structure};

use crate::io::{export_dot, export_json, export_text, parse, serialize, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "evstruct", version, about = "Event structures, their configurations and translations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a model file.
    Validate { file: PathBuf },
    /// Print the configurations and steps of a model.
    Configs {
        file: PathBuf,
        #[command(flatten)]
        format: Format,
    },
    /// Translate a model and check the result against its source.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "cdes")]
        to: TargetArg,
        #[arg(long, value_enum, default_value = "direct")]
        via: RouteArg,
    },
    /// Decide whether two models have the same event automaton.
    Equiv { first: PathBuf, second: PathBuf },
    /// Report structural properties.
    Props { file: PathBuf },
    /// Recompute configurations by trace enumeration and compare.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_events: usize,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct Format {
    /// Graphviz output.
    #[arg(long)]
    dot: bool,
    /// One state or step per line (the default).
    #[arg(long)]
    text: bool,
    #[arg(long)]
    json: bool,
    /// Only the number of states and steps.
    #[arg(long)]
    count: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TargetArg {
    Cdes,
    Ies,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RouteArg {
    Direct,
    Ea,
}

/// A failed invocation: exit code plus the message for stderr.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Model(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io { .. } => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

fn load(path: &Path) -> Result<Structure, Failure> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Failure::Io { path: shown.clone(), source })?;
    parse(&text).map_err(|source| Failure::Parse { path: shown, source })
}

/// Runs one invocation, writing to the given streams, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let w = |r: std::io::Result<()>| r.map_err(|source| Failure::Io { path: "<stdout>".into(), source });
    match cmd {
        Command::Validate { file } => {
            let x = load(&file)?;
            w(writeln!(out, "valid {}", x.kind()))?;
            Ok(EXIT_OK)
        }
        Command::Configs { file, format } => {
            let x = load(&file)?;
            if let Structure::Fes(f) = &x {
                for s in f.configurations().unreachable {
                    let _ = writeln!(err, "warning: configuration {s} is not reachable from {{}}");
                }
            }
            let l = x.lattice()?;
            let text = if format.count {
                format!("states: {}\nedges: {}\n", l.states().len(), l.edges().len())
            } else if format.dot {
                export_dot(&l)
            } else if format.json {
                export_json(&l)
            } else {
                export_text(&l)
            };
            w(out.write_all(text.as_bytes()))?;
            Ok(EXIT_OK)
        }
        Command::Translate { file, to, via } => {
            let x = load(&file)?;
            let target = match to {
                TargetArg::Cdes => Target::Cdes,
                TargetArg::Ies => Target::Ies,
            };
            let route = match via {
                RouteArg::Direct => Route::Direct,
                RouteArg::Ea => Route::Automaton,
            };
            let report = translate(&x, target, route)?;
            w(out.write_all(serialize(&report.output).as_bytes()))?;
            match report.witness {
                None => {
                    w(writeln!(out, "// equivalence: verified"))?;
                    Ok(EXIT_OK)
                }
                Some(m) => {
                    w(writeln!(out, "// equivalence: FAILED ({m})"))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Equiv { first, second } => {
            let a = load(&first)?.automaton()?;
            let b = load(&second)?.automaton()?;
            match a.compare(&b) {
                Ok(()) => {
                    w(writeln!(out, "equivalent"))?;
                    Ok(EXIT_OK)
                }
                Err(m) => {
                    w(writeln!(out, "not equivalent: {m}"))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Props { file } => {
            let x = load(&file)?;
            w(out.write_all(props(&x)?.as_bytes()))?;
            Ok(EXIT_OK)
        }
        Command::Oracle { file, max_events } => {
            let x = load(&file)?;
            let n = x.events().len();
            if n > max_events {
                return Err(Failure::Usage(format!(
                    "model has {n} events, above the oracle limit of {max_events} (raise it with --max-events)"
                )));
            }
            match oracle::check(&x)? {
                None => {
                    w(writeln!(out, "agree"))?;
                    Ok(EXIT_OK)
                }
                Some(c) => {
                    w(writeln!(out, "disagree: {c}"))?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
    }
}

fn props(x: &Structure) -> Result<String, Error> {
    let a = x.automaton()?;
    let mut lines = vec![("simple", a.is_simple()), ("complete", a.is_complete())];
    let events = x.events();
    match x {
        Structure::Cdes(c) => {
            lines.push(("full", c.is_full()));
            lines.push(("faithful", c.is_faithful()));
        }
        Structure::Pes(p) => {
            let l = x.lattice()?;
            lines.push(("full", l.is_full(events)));
            lines.push(("faithful", l.is_faithful(events, p.conflict())));
        }
        Structure::Fes(f) => {
            let c = f.configurations();
            lines.push(("full", c.lattice.is_full(events)));
            lines.push(("faithful", c.lattice.is_faithful(events, f.conflict())));
            lines.push(("reachable", c.unreachable.is_empty()));
        }
        Structure::Rpes(r) => {
            let l = x.lattice()?;
            lines.push(("full", l.is_full(events)));
            lines.push(("faithful", l.is_faithful(events, r.conflict())));
            lines.push(("po", l.states().iter().all(|c| r.po_check(c))));
        }
        Structure::Dces(d) => {
            let l = x.lattice()?;
            lines.push(("full", l.is_full(events)));
            lines.push(("faithful", l.is_faithful(events, d.conflict())));
        }
        Structure::Ies(i) => {
            let l = x.lattice()?;
            lines.push(("full", l.is_full(events)));
            lines.push(("faithful", l.is_faithful(events, i.conflict())));
        }
        Structure::Rces(_) | Structure::Ea(_) => {
            let l = x.lattice()?;
            lines.push(("full", l.is_full(events)));
        }
    }
    Ok(lines.into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect())
}
