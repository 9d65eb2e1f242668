//! The `autoperm` command line.
//!
//! Every subcommand takes its input from `--automaton FILE`, `--morphism FILE`
//! or `--builtin NAME` (with `--param key=value` for parameterized builtins).
//! Exit codes: 0 success, 1 negative verdict or failed check, 2 usage or
//! malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::automaton::{
    equivalent, minimize, parse_automaton, serialize_automaton, to_dot, ComparisonAutomaton,
    Equivalence, OracleMode,
};
use crate::compiler::{compile_with, CompileOptions};
use crate::error::Error;
use crate::fixtures::{builtin, Artifact, CATALOG};
use crate::kernel::{kernel_exact, kernel_window};
use crate::perm::{rank_window, PermutationOracle, Radix};
use crate::validity::is_permutation;
use crate::words::{
    coded_prefix, parse_morphism, relabel_prefix, valid_permutation_oracle,
    word_automaton_from_morphism, ThresholdWord, UltimatelyPeriodic, DEFAULT_DEPTH,
};

#[derive(Parser, Debug)]
#[command(name = "autoperm", version, about = "Automatic infinite permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
struct SourceArgs {
    /// Comparison automaton file (perm-automaton v1)
    #[arg(long, value_name = "FILE")]
    automaton: Option<PathBuf>,
    /// Morphism file (perm-morphism v1)
    #[arg(long, value_name = "FILE")]
    morphism: Option<PathBuf>,
    /// Built-in fixture name
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Source {
    #[command(flatten)]
    which: SourceArgs,
    /// Builtin parameter, repeatable
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
    params: Vec<(String, String)>,
    /// Letters compared before giving up on two suffixes
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .ok_or_else(|| format!("expected KEY=VALUE, got '{s}'"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the relation between entries i and j
    Compare {
        #[command(flatten)]
        source: Source,
        #[arg(short)]
        i: u64,
        #[arg(short)]
        j: u64,
    },
    /// Print the 1-based ranks of the first N entries
    Prefix {
        #[command(flatten)]
        source: Source,
        #[arg(short)]
        n: usize,
    },
    /// Decide whether a machine defines a permutation
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Compile a morphism into a comparison automaton
    Compile {
        #[command(flatten)]
        source: Source,
        #[arg(short, value_name = "FILE")]
        o: Option<PathBuf>,
        /// Minimize before writing
        #[arg(long)]
        minimize: bool,
        #[arg(long, default_value_t = crate::compiler::DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
    /// Print the minimal equivalent machine
    Minimize {
        #[command(flatten)]
        source: Source,
    },
    /// Decide whether two machines agree on every input
    Equivalent {
        /// A machine or morphism file, or builtin:NAME
        a: String,
        /// A machine or morphism file, or builtin:NAME
        b: String,
    },
    /// Print a Graphviz rendering
    Dot {
        #[command(flatten)]
        source: Source,
    },
    /// Exact k-kernel of a machine
    Kernel {
        #[command(flatten)]
        source: Source,
    },
    /// Distinct kernel windows (a lower bound on the kernel size)
    KernelWindow {
        #[command(flatten)]
        source: Source,
        #[arg(short = 'L', default_value_t = 16)]
        window: usize,
        /// Highest level n examined
        #[arg(long, default_value_t = 6)]
        levels: u32,
    },
    /// Print a prefix of the coded fixed point
    Word {
        #[command(flatten)]
        source: Source,
        #[arg(short)]
        n: usize,
    },
    /// Print a prefix of the word relabeled against a threshold constant
    Relabel {
        #[command(flatten)]
        source: Source,
        /// File holding the digits of the constant, e.g. `0.(10)`
        #[arg(long, value_name = "FILE")]
        threshold: PathBuf,
        #[arg(short)]
        n: usize,
    },
    /// List built-in fixtures
    Builtins,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::Incomplete { .. }
            | Error::InvalidMachine(_)
            | Error::InvalidMorphism(_)
            | Error::InvalidRadix(_)
            | Error::UnknownBuiltin(_)
            | Error::BadParam(_)
            | Error::RadixMismatch(..)
            | Error::InvalidDepth
            | Error::EmptyWindow => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Loads a file in either text format, picking by header.
fn load_file(path: &Path) -> Result<Artifact, Failure> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("perm-morphism") {
        let (m, c) = parse_morphism(&text)?;
        Ok(Artifact::Morphism(m, c))
    } else {
        Ok(Artifact::Machine(parse_automaton(&text)?))
    }
}

fn load(source: &Source) -> Result<Artifact, Failure> {
    let w = &source.which;
    if let Some(p) = &w.automaton {
        return Ok(Artifact::Machine(parse_automaton(&read(p)?)?));
    }
    if let Some(p) = &w.morphism {
        let (m, c) = parse_morphism(&read(p)?)?;
        return Ok(Artifact::Morphism(m, c));
    }
    let name = w.builtin.as_deref().expect("clap enforces one source");
    Ok(builtin(name, &source.params)?)
}

/// A machine for the artifact; morphisms are compiled and minimized.
fn machine_of(a: Artifact) -> Result<ComparisonAutomaton, Failure> {
    match a {
        Artifact::Machine(m) => Ok(m),
        Artifact::Morphism(m, c) => {
            let comp = compile_with(&m, &c, CompileOptions::default())?;
            Ok(minimize(&comp.machine))
        }
        Artifact::Oracle {
            machine: Some(m), ..
        } => Ok(m),
        Artifact::Oracle { machine: None, .. } => Err(Failure::Usage(
            "this source has no automaton; use kernel-window, compare or prefix".into(),
        )),
    }
}

fn with_oracle<T>(
    a: &Artifact,
    depth: usize,
    f: impl FnOnce(&dyn PermutationOracle, Radix) -> Result<T, Failure>,
) -> Result<T, Failure> {
    match a {
        Artifact::Machine(m) => f(&m.as_oracle(OracleMode::Trusted)?, m.radix()),
        Artifact::Morphism(m, c) => {
            let w = word_automaton_from_morphism(m, c)?;
            let o = valid_permutation_oracle(w, c.alphabet_size(), depth)?;
            f(&o, m.radix())
        }
        Artifact::Oracle { oracle, radix, .. } => f(oracle.as_ref(), *radix),
    }
}

fn load_operand(arg: &str) -> Result<Artifact, Failure> {
    match arg.strip_prefix("builtin:") {
        Some(name) => Ok(builtin(name, &[])?),
        None => load_file(Path::new(arg)),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Compare { source, i, j } => {
            let a = load(&source)?;
            let r = with_oracle(&a, source.depth, |o, _| Ok(o.compare(i, j)?))?;
            writeln!(out, "{r}")?;
        }
        Command::Prefix { source, n } => {
            let a = load(&source)?;
            let w = with_oracle(&a, source.depth, |o, _| Ok(rank_window(o, n)?))?;
            writeln!(out, "{w}")?;
        }
        Command::Validate { source } => {
            let m = machine_of(load(&source)?)?;
            let report = is_permutation(&m);
            writeln!(out, "{report}")?;
            return Ok(if report.is_permutation() { 0 } else { 1 });
        }
        Command::Compile {
            source,
            o,
            minimize: min,
            state_cap,
        } => {
            let (m, c) = match load(&source)? {
                Artifact::Morphism(m, c) => (m, c),
                _ => return Err(Failure::Usage("compile needs a morphism source".into())),
            };
            let comp = compile_with(&m, &c, CompileOptions { state_cap })?;
            let machine = if min {
                minimize(&comp.machine)
            } else {
                comp.machine
            };
            let text = serialize_automaton(&machine);
            match o {
                Some(path) => {
                    fs::write(&path, text)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    writeln!(
                        out,
                        "wrote {} states to {}",
                        machine.state_count(),
                        path.display()
                    )?;
                }
                None => write!(out, "{text}")?,
            }
        }
        Command::Minimize { source } => {
            let m = machine_of(load(&source)?)?;
            write!(out, "{}", serialize_automaton(&minimize(&m)))?;
        }
        Command::Equivalent { a, b } => {
            let ma = machine_of(load_operand(&a)?)?;
            let mb = machine_of(load_operand(&b)?)?;
            match equivalent(&ma, &mb)? {
                Equivalence::Equivalent => writeln!(out, "equivalent")?,
                Equivalence::Distinguished(c) => {
                    writeln!(out, "not equivalent: {c}")?;
                    return Ok(1);
                }
            }
        }
        Command::Dot { source } => {
            let m = machine_of(load(&source)?)?;
            write!(out, "{}", to_dot(&m))?;
        }
        Command::Kernel { source } => {
            let m = machine_of(load(&source)?)?;
            writeln!(out, "{}", kernel_exact(&m)?)?;
        }
        Command::KernelWindow {
            source,
            window,
            levels,
        } => {
            let a = load(&source)?;
            let (patterns, radix) = with_oracle(&a, source.depth, |o, r| {
                Ok((kernel_window(o, r, window, levels)?, r))
            })?;
            writeln!(
                out,
                "kernel-window k={radix} L={window} n_max={levels} classes>={}",
                patterns.len()
            )?;
            for (idx, p) in patterns.iter().enumerate() {
                writeln!(out, "pattern {idx}\n{p}")?;
            }
        }
        Command::Word { source, n } => {
            let (m, c) = match load(&source)? {
                Artifact::Morphism(m, c) => (m, c),
                _ => return Err(Failure::Usage("word needs a morphism source".into())),
            };
            let w = coded_prefix(&m, &c, n)?;
            writeln!(out, "{}", join_letters(&w.0))?;
        }
        Command::Relabel {
            source,
            threshold,
            n,
        } => {
            let (m, c) = match load(&source)? {
                Artifact::Morphism(m, c) => (m, c),
                _ => return Err(Failure::Usage("relabel needs a morphism source".into())),
            };
            let constant = ThresholdWord(UltimatelyPeriodic::parse(&read(&threshold)?)?);
            let w = word_automaton_from_morphism(&m, &c)?;
            let relabeled = relabel_prefix(&w, &constant, n, source.depth)?;
            writeln!(out, "{}", join_letters(&relabeled.0))?;
        }
        Command::Builtins => {
            for (name, about) in CATALOG {
                writeln!(out, "{name:<26}{about}")?;
            }
        }
    }
    Ok(0)
}

fn join_letters(letters: &[u32]) -> String {
    if letters.iter().all(|&x| x < 10) {
        letters.iter().map(|x| x.to_string()).collect()
    } else {
        letters
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
