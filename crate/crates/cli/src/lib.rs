//! Command-line front end: construct relations from a class-table file,
//! answer subtyping/containment/validity queries, run the adjunction
//! verifier, and export posets as DOT.
//!
//! Exit codes: boolean queries exit 0 iff the answer is true, verification
//! commands exit 0 iff no violation was found, and operational errors
//! (unreadable table, parse errors, ceilings) exit 2 with a message on
//! stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use gensub::construct::{build_with_ceiling, containment_poset};
use gensub::judge::{
    self, check_galois, dfbg_check, f_subtypes, f_supertypes, is_admittable, BoundSpec,
};
use gensub::poset::Poset;
use gensub::typesys::{
    parse_bound_expr, parse_class_table, parse_interval_arg, parse_type, parse_type_lenient,
    ClassTable,
};
use gensub::{Mode, TypeExpr};

#[derive(Parser)]
#[command(
    name = "gensub",
    version,
    about = "Construct and query the generic subtyping relation of a class table"
)]
struct Cli {
    /// Class-table file (one declaration per line, `#` comments).
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<PathBuf>,

    /// Argument-nesting depth of constructed relations.
    #[arg(long, global = true, default_value_t = 2, value_name = "N")]
    depth: usize,

    /// Type-argument constructor.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Wildcards)]
    mode: ModeArg,

    /// Element-count ceiling for constructed relations.
    #[arg(long, global = true, default_value_t = 50_000, value_name = "N")]
    ceiling: usize,

    /// Write DOT output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Wildcards,
    Intervals,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Wildcards => Mode::Wildcard,
            ModeArg::Intervals => Mode::Interval,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DotWhat {
    Subtyping,
    Containment,
    Subclassing,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the subtyping relation and print its size.
    Build,
    /// Decide T1 <: T2; exit 0 iff it holds.
    Sub { t1: String, t2: String },
    /// Decide whether argument A1 is contained in A2; exit 0 iff it holds.
    Contains { a1: String, a2: String },
    /// Exhaustively verify the erasure adjunction over all (type, class)
    /// pairs; exit 0 iff there are no counterexamples.
    Galois,
    /// List all types Ty with Ty <: CLASS<Ty> up to the configured depth.
    Fsub { class: String },
    /// List all types Ty with CLASS<Ty> <: Ty up to the configured depth.
    Fsup { class: String },
    /// Report admittability and validity of a type; exit 0 iff both hold.
    Valid { r#type: String },
    /// Check a candidate type against variable bounds, which may mention
    /// the variable itself.
    Dfbg {
        /// Lower bound expression.
        #[arg(long, value_name = "TYPE")]
        lower: Option<String>,
        /// Upper bound expression.
        #[arg(long, value_name = "TYPE")]
        upper: Option<String>,
        /// Name of the bounded type variable inside the bound expressions.
        #[arg(long, default_value = "T")]
        param: String,
        candidate: String,
    },
    /// Print one of the three relations as a DOT digraph.
    ExportDot {
        #[arg(long, value_enum)]
        what: DotWhat,
    },
}

/// Deterministic DOT rendering of a poset: one node per element labeled
/// with its canonical string, one edge per cover pair directed
/// subtype -> supertype, nodes and edges in lexicographic order.
pub fn export_dot(p: &Poset) -> String {
    fn quoted(s: &str) -> String {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
    let mut dot = String::from("digraph {\n");
    for e in p.elements() {
        let _ = writeln!(dot, "  {};", quoted(e));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(dot, "  {} -> {};", quoted(a), quoted(b));
    }
    dot.push_str("}\n");
    dot
}

/// Parses `argv` and runs the selected command, writing regular output to
/// `out` and error messages to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match dispatch(cli) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn load_table(cli: &Cli) -> Result<ClassTable, String> {
    let path = cli
        .table
        .as_ref()
        .ok_or_else(|| "--table is required".to_string())?;
    let source =
        fs::read_to_string(path).map_err(|e| format!("cannot read `{}`: {e}", path.display()))?;
    parse_class_table(&source).map_err(|e| e.to_string())
}

fn dispatch(cli: Cli) -> Result<(i32, String), String> {
    let table = load_table(&cli)?;
    let mode: Mode = cli.mode.into();
    let mut text = String::new();
    match &cli.command {
        Command::Build => {
            let approx = build_with_ceiling(&table, cli.depth, mode, cli.ceiling)
                .map_err(|e| e.to_string())?;
            let _ = writeln!(text, "elements: {}", approx.poset().len());
            let _ = writeln!(text, "covers: {}", approx.poset().cover_count());
            if let Some(path) = &cli.out {
                fs::write(path, export_dot(approx.poset()))
                    .map_err(|e| format!("cannot write `{}`: {e}", path.display()))?;
            }
            Ok((0, text))
        }
        Command::Sub { t1, t2 } => {
            let t1 = parse_type(t1, &table).map_err(|e| e.to_string())?;
            let t2 = parse_type(t2, &table).map_err(|e| e.to_string())?;
            let holds = judge::subtype(&table, &t1, &t2).map_err(|e| e.to_string())?;
            let _ = writeln!(text, "{holds}");
            Ok((i32::from(!holds), text))
        }
        Command::Contains { a1, a2 } => {
            let a1 = parse_interval_arg(a1, &table).map_err(|e| e.to_string())?;
            let a2 = parse_interval_arg(a2, &table).map_err(|e| e.to_string())?;
            let holds = judge::contains(&table, &a1, &a2);
            let _ = writeln!(text, "{holds}");
            Ok((i32::from(!holds), text))
        }
        Command::Galois => {
            let report =
                check_galois(&table, cli.depth, mode, cli.ceiling).map_err(|e| e.to_string())?;
            let _ = writeln!(
                text,
                "checked {} pairs, {} counterexamples",
                report.checked_pairs,
                report.counterexamples.len()
            );
            for c in &report.counterexamples {
                let _ = writeln!(text, "  {} / {}: {}", c.ty, c.class, c.direction);
            }
            Ok((i32::from(!report.holds()), text))
        }
        Command::Fsub { class } => {
            let types =
                f_subtypes(&table, class, cli.depth, cli.ceiling).map_err(|e| e.to_string())?;
            for t in types {
                let _ = writeln!(text, "{t}");
            }
            Ok((0, text))
        }
        Command::Fsup { class } => {
            let types =
                f_supertypes(&table, class, cli.depth, cli.ceiling).map_err(|e| e.to_string())?;
            for t in types {
                let _ = writeln!(text, "{t}");
            }
            Ok((0, text))
        }
        Command::Valid { r#type } => {
            let t = parse_type_lenient(r#type, &table).map_err(|e| e.to_string())?;
            let admittable = is_admittable(&table, &t);
            let valid = if admittable {
                judge::is_valid(&table, &t).map_err(|e| e.to_string())?
            } else {
                false
            };
            let _ = writeln!(text, "admittable: {admittable}, valid: {valid}");
            if let TypeExpr::App(_, arg) = &t {
                if admittable && !arg.is_singleton() {
                    let _ = writeln!(text, "witness search depth: {}", t.depth());
                }
            }
            Ok((i32::from(!(admittable && valid)), text))
        }
        Command::Dfbg {
            lower,
            upper,
            param,
            candidate,
        } => {
            let lower = lower
                .as_ref()
                .map(|s| parse_bound_expr(s, &table, param))
                .transpose()
                .map_err(|e| e.to_string())?;
            let upper = upper
                .as_ref()
                .map(|s| parse_bound_expr(s, &table, param))
                .transpose()
                .map_err(|e| e.to_string())?;
            let spec = BoundSpec {
                param_name: param.clone(),
                lower,
                upper,
            };
            let candidate = parse_type(candidate, &table).map_err(|e| e.to_string())?;
            let holds = dfbg_check(&table, &spec, &candidate);
            let _ = writeln!(text, "{holds}");
            Ok((i32::from(!holds), text))
        }
        Command::ExportDot { what } => {
            let dot = match what {
                DotWhat::Subclassing => export_dot(table.class_poset()),
                DotWhat::Subtyping => {
                    let approx = build_with_ceiling(&table, cli.depth, mode, cli.ceiling)
                        .map_err(|e| e.to_string())?;
                    export_dot(approx.poset())
                }
                DotWhat::Containment => {
                    let approx = build_with_ceiling(&table, cli.depth, mode, cli.ceiling)
                        .map_err(|e| e.to_string())?;
                    export_dot(containment_poset(&approx).base())
                }
            };
            match &cli.out {
                Some(path) => {
                    fs::write(path, dot)
                        .map_err(|e| format!("cannot write `{}`: {e}", path.display()))?;
                    Ok((0, text))
                }
                None => Ok((0, dot)),
            }
        }
    }
}
