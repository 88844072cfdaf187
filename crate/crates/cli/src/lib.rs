//! The `rfun` command: run, invert and cross-check reversible programs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use rfun::densem::{self, Denotation};
use rfun::inverter::invert_program;
use rfun::opsem::{self, Direction};
use rfun::syntax::print_program;
use rfun::{check_static, parse_program, parse_value, Program, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_STATIC: i32 = 1;
pub const EXIT_NO_MATCH: i32 = 2;
pub const EXIT_OUT_OF_FUEL: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

/// Largest nesting of constructors in generated inputs.
const SAMPLE_DEPTH: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "rfun", version, about = "Run, invert and check reversible functional programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply a function to a value.
    Run {
        file: PathBuf,
        #[arg(long)]
        entry: String,
        #[arg(long)]
        input: String,
        /// Run the function backwards.
        #[arg(long)]
        backward: bool,
        /// Fuel (default: 10^4 operational, 10^5 denotational).
        #[arg(long)]
        fuel: Option<u64>,
        /// Use the denotational semantics instead of the interpreter.
        #[arg(long)]
        denotational: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the inverse of every function in a program.
    Invert { file: PathBuf },
    /// Compare the operational and denotational semantics on random inputs.
    Check {
        file: PathBuf,
        /// Only check this function (default: all of them).
        #[arg(long)]
        entry: Option<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fuel for both semantics (default: 10^4 operational, 10^5
        /// denotational).
        #[arg(long)]
        fuel: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

/// Parses the arguments and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_STATIC } else { EXIT_OK };
        }
    };
    execute(cli.command, out, err)
}

pub fn execute(cmd: Command, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let result = match cmd {
        Command::Run {
            file,
            entry,
            input,
            backward,
            fuel,
            denotational,
            json,
        } => {
            let dir = if backward { Direction::Backward } else { Direction::Forward };
            cmd_run(&file, &entry, &input, dir, fuel, denotational, json, out)
        }
        Command::Invert { file } => cmd_invert(&file, out),
        Command::Check {
            file,
            entry,
            samples,
            seed,
            fuel,
            json,
        } => cmd_check(&file, entry.as_deref(), samples, seed, fuel, json, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_STATIC
        }
    }
}

/// Reads, parses and statically checks a program.
pub fn load(file: &Path) -> Result<Program, String> {
    let src = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let q = parse_program(&src).map_err(|e| format!("{}: {e}", file.display()))?;
    check_static(&q).map_err(|vs| {
        vs.iter()
            .map(|v| format!("{}: {v}", file.display()))
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    Ok(q)
}

fn require_entry(q: &Program, entry: &str) -> Result<(), String> {
    match q.get(entry) {
        Some(_) => Ok(()),
        None => Err(format!("no function `{entry}`")),
    }
}

/// Result of one run in a form shared by both semantics: the value, or the
/// status of the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value")]
pub enum Outcome {
    Value(String),
    NoMatch,
    FirstMatchViolation,
    OutOfFuel,
    Error(String),
}

impl Outcome {
    fn from_opsem(r: opsem::EvalResult<Value>) -> Self {
        match r {
            Ok(v) => Outcome::Value(v.to_string()),
            Err(e) => match e.status() {
                "NoMatch" => Outcome::NoMatch,
                "FirstMatchViolation" => Outcome::FirstMatchViolation,
                "OutOfFuel" => Outcome::OutOfFuel,
                _ => Outcome::Error(e.to_string()),
            },
        }
    }

    fn from_densem(r: Result<Value, densem::DenError>) -> Self {
        match r {
            Ok(v) => Outcome::Value(v.to_string()),
            Err(e) => match e.status() {
                "NoMatch" => Outcome::NoMatch,
                "FirstMatchViolation" => Outcome::FirstMatchViolation,
                "OutOfFuel" => Outcome::OutOfFuel,
                _ => Outcome::Error(e.to_string()),
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Value(_) => EXIT_OK,
            Outcome::NoMatch | Outcome::FirstMatchViolation => EXIT_NO_MATCH,
            Outcome::OutOfFuel => EXIT_OUT_OF_FUEL,
            Outcome::Error(_) => EXIT_STATIC,
        }
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    entry: &'a str,
    direction: String,
    input: String,
    fuel: u64,
    #[serde(flatten)]
    outcome: &'a Outcome,
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_run(
    file: &Path,
    entry: &str,
    input: &str,
    dir: Direction,
    fuel: Option<u64>,
    denotational: bool,
    json: bool,
    out: &mut impl Write,
) -> Result<i32, String> {
    let q = load(file)?;
    require_entry(&q, entry)?;
    let v = parse_value(input).map_err(|e| format!("input: {e}"))?;
    let (outcome, fuel) = if denotational {
        let fuel = fuel.unwrap_or(densem::DEFAULT_FUEL);
        let den = Denotation::new(&q).map_err(|e| e.to_string())?;
        (Outcome::from_densem(den.apply(entry, &v, dir, fuel)), fuel)
    } else {
        let fuel = fuel.unwrap_or(opsem::DEFAULT_FUEL);
        (Outcome::from_opsem(opsem::apply_dir(&q, entry, &v, dir, fuel)), fuel)
    };
    if json {
        let report = RunReport {
            entry,
            direction: dir.to_string(),
            input: v.to_string(),
            fuel,
            outcome: &outcome,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))
    } else {
        match &outcome {
            Outcome::Value(s) => writeln!(out, "{s}"),
            Outcome::NoMatch => writeln!(out, "NoMatch"),
            Outcome::FirstMatchViolation => writeln!(out, "FirstMatchViolation"),
            Outcome::OutOfFuel => writeln!(out, "OutOfFuel"),
            Outcome::Error(m) => writeln!(out, "Error: {m}"),
        }
    }
    .map_err(|e| e.to_string())?;
    Ok(outcome.exit_code())
}

pub fn cmd_invert(file: &Path, out: &mut impl Write) -> Result<i32, String> {
    let q = load(file)?;
    write!(out, "{}", print_program(&invert_program(&q))).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Case {
    pub entry: String,
    pub direction: String,
    pub input: String,
    pub opsem: Outcome,
    pub densem: Outcome,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub program: String,
    pub entry: Option<String>,
    pub seed: u64,
    pub fuel: Fuels,
    pub total: usize,
    pub mismatches: usize,
    pub cases: Vec<Case>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct Fuels {
    pub opsem: u64,
    pub densem: u64,
}

/// Runs both semantics in both directions on `samples` seeded inputs for
/// each selected function.
pub fn check_program(
    q: &Program,
    name: &str,
    entry: Option<&str>,
    samples: usize,
    seed: u64,
    fuel: Fuels,
) -> Result<Report, String> {
    if let Some(e) = entry {
        require_entry(q, e)?;
    }
    let den = Denotation::new(q).map_err(|e| e.to_string())?;
    let sig = Signature::of(q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for d in q.defs.iter().filter(|d| entry.is_none_or(|e| e == d.name)) {
        for _ in 0..samples {
            let v = sig.sample(&mut rng, SAMPLE_DEPTH);
            for dir in [Direction::Forward, Direction::Backward] {
                let o = Outcome::from_opsem(opsem::apply_dir(q, &d.name, &v, dir, fuel.opsem));
                let dn = Outcome::from_densem(den.apply(&d.name, &v, dir, fuel.densem));
                let verdict = if o == dn { "agree" } else { "mismatch" };
                cases.push(Case {
                    entry: d.name.clone(),
                    direction: dir.to_string(),
                    input: v.to_string(),
                    opsem: o,
                    densem: dn,
                    verdict,
                });
            }
        }
    }
    let mismatches = cases.iter().filter(|c| c.verdict != "agree").count();
    Ok(Report {
        program: name.to_string(),
        entry: entry.map(str::to_string),
        seed,
        fuel,
        total: cases.len(),
        mismatches,
        cases,
    })
}

pub fn cmd_check(
    file: &Path,
    entry: Option<&str>,
    samples: usize,
    seed: u64,
    fuel: Option<u64>,
    json: bool,
    out: &mut impl Write,
) -> Result<i32, String> {
    let q = load(file)?;
    let fuel = Fuels {
        opsem: fuel.unwrap_or(opsem::DEFAULT_FUEL),
        densem: fuel.unwrap_or(densem::DEFAULT_FUEL),
    };
    let report = check_program(&q, &file.display().to_string(), entry, samples, seed, fuel)?;
    let written = if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))
    } else {
        write_summary(&report, out)
    };
    written.map_err(|e| e.to_string())?;
    Ok(if report.mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn write_summary(r: &Report, out: &mut impl Write) -> std::io::Result<()> {
    for c in r.cases.iter().filter(|c| c.verdict != "agree") {
        writeln!(
            out,
            "mismatch: {} {} {}: opsem {:?}, densem {:?}",
            c.entry, c.direction, c.input, c.opsem, c.densem
        )?;
    }
    writeln!(out, "{} cases, {} mismatches (seed {})", r.total, r.mismatches, r.seed)
}

/// Constructors and the arities a program uses them at, for generating
/// inputs the program can take apart.
#[derive(Clone, Debug)]
pub struct Signature {
    ctors: Vec<(String, usize)>,
}

impl Signature {
    pub fn of(q: &Program) -> Self {
        let mut ctors: Vec<(String, usize)> = q
            .constructors()
            .into_iter()
            .map(|(c, n)| (c.to_string(), n))
            .collect();
        if !ctors.iter().any(|(_, n)| *n == 0) {
            ctors.push(("Z".to_string(), 0));
        }
        Signature { ctors }
    }

    /// A random value at most `depth` constructors deep.
    pub fn sample(&self, rng: &mut impl Rng, depth: usize) -> Value {
        let choices: Vec<&(String, usize)> = if depth <= 1 {
            self.ctors.iter().filter(|(_, n)| *n == 0).collect()
        } else {
            self.ctors.iter().collect()
        };
        let (c, n) = choices.choose(rng).expect("signature has a nullary constructor");
        let depth = rng.gen_range(1..depth.max(2));
        Value::new(c.clone(), (0..*n).map(|_| self.sample(rng, depth)).collect())
    }
}
