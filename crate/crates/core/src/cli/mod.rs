//! The `hint` command line.
//!
//! Exit codes: 0 success, 1 law violation, 2 parse error, 3 unsupported input
//! or unknown set, 4 undefined sum, 5 demo mismatch.

mod demo;
pub mod files;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::deficiency::{defi_continuity, defi_convexity, defi_lineness, Scenario};
use crate::error::Error;
use crate::integral::{integrate, verify_certificate};
use crate::oracle::{
    check_algebra_laws_with, check_integral_laws_with, Algebra, ExactAlgebra, IntegralSystem, LawReport,
    ReferenceSystem,
};

pub use demo::{distributivity, monotone_failure, no_approx, DEMOS};
pub use files::{load_function, load_space, FunctionFile, SpaceFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_UNDEFINED_SUM: i32 = 4;
pub const EXIT_GOLDEN: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UndefinedSum { .. } => EXIT_UNDEFINED_SUM,
        Error::UnknownSet(_) | Error::UnsupportedExpression(_) | Error::UnsupportedScenario(_) => EXIT_UNSUPPORTED,
        Error::Parse(_) | Error::InvalidValue(_) | Error::NonDisjoint(_) | Error::EmptyList => EXIT_PARSE,
    }
}

#[derive(Debug, Parser)]
#[command(name = "hint", version, about = "Exact pair-valued Hausdorff integrals")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a function file over a space file.
    Eval {
        space: PathBuf,
        function: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also print the witness sets behind the value.
        #[arg(long)]
        certificate: bool,
    },
    /// Run the randomized algebra and integral law suites.
    Laws {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a deficiency scenario file.
    Defi {
        kind: DefiKind,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print a worked counterexample.
    Demo { name: DemoName },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DefiKind {
    Continuity,
    Lineness,
    Convexity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    MonotoneFailure,
    NoApprox,
    Distributivity,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn fail(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit_code(e)
}

pub fn run(config: RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match config.command {
        Command::Eval { space, function, json, certificate } => {
            let texts = read(&space).and_then(|s| Ok((s, read(&function)?)));
            match texts {
                Ok((s, f)) => cmd_eval(
                    (&space.display().to_string(), &s),
                    (&function.display().to_string(), &f),
                    json,
                    certificate,
                    out,
                    err,
                ),
                Err(e) => fail(err, &e),
            }
        }
        Command::Laws { trials, seed, json } => cmd_laws(trials, seed, json, out),
        Command::Defi { kind, file, json } => match read(&file) {
            Ok(text) => cmd_defi(kind, &file.display().to_string(), &text, json, out, err),
            Err(e) => fail(err, &e),
        },
        Command::Demo { name } => cmd_demo(name, out, err),
    }
}

/// `(label, contents)` pairs for the space and function files.
pub fn cmd_eval(
    space: (&str, &str),
    function: (&str, &str),
    json: bool,
    certificate: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let result = (|| {
        let sp = load_space(space.0, space.1)?;
        let f = load_function(function.0, function.1)?;
        let (value, cert) = integrate(&sp, &f)?;
        let verified = if certificate { Some(verify_certificate(&sp, &f, &value, &cert)?) } else { None };
        Ok((value, cert, verified))
    })();
    let (value, cert, verified) = match result {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    let _ = if json {
        let mut doc = json!({ "value": value.to_string() });
        if let Some(v) = verified {
            doc["certificate"] = cert.to_json();
            doc["verified"] = json!(v);
        }
        writeln!(out, "{doc}")
    } else {
        let r = writeln!(out, "{value}");
        match verified {
            Some(v) => writeln!(out, "certificate ({}): {}", if v { "verified" } else { "NOT verified" }, cert.to_json()),
            None => r,
        }
    };
    EXIT_OK
}

pub fn cmd_laws(trials: u64, seed: u64, json: bool, out: &mut dyn Write) -> i32 {
    cmd_laws_with(&ExactAlgebra, &ReferenceSystem, trials, seed, json, out)
}

/// The law suites against the given implementations; exit 1 on any violation.
pub fn cmd_laws_with<A: Algebra, S: IntegralSystem>(
    alg: &A,
    sys: &S,
    trials: u64,
    seed: u64,
    json: bool,
    out: &mut dyn Write,
) -> i32 {
    let reports: Vec<LawReport> =
        vec![check_algebra_laws_with(alg, trials, seed), check_integral_laws_with(sys, trials, seed)];
    let passed = reports.iter().all(LawReport::passed);
    let _ = if json {
        writeln!(out, "{}", json!({ "passed": passed, "reports": reports }))
    } else {
        reports.iter().try_for_each(|r| write!(out, "{r}"))
    };
    if passed {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

pub fn cmd_defi(kind: DefiKind, label: &str, text: &str, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let scenario: Scenario = match files::parse_json(label, text) {
        Ok(s) => s,
        Err(e) => return fail(err, &e),
    };
    let wanted = match kind {
        DefiKind::Continuity => "continuity",
        DefiKind::Lineness => "lineness",
        DefiKind::Convexity => "convexity",
    };
    if scenario.kind() != wanted {
        return fail(err, &Error::Parse(format!("{label}: a {} scenario, not {wanted}", scenario.kind())));
    }
    let result = match &scenario {
        Scenario::Continuity(s) => defi_continuity(s).map(|v| (v, None)),
        Scenario::Convexity(s) => defi_convexity(s).map(|v| (v, None)),
        Scenario::Lineness(s) => defi_lineness(s).map(|r| (r.value, Some(r.line))),
    };
    let (value, line) = match result {
        Ok(r) => r,
        Err(e) => return fail(err, &e),
    };
    let _ = if json {
        let mut doc = json!({ "kind": wanted, "value": value.to_string() });
        if let Some(l) = &line {
            doc["line"] = json!(l);
            doc["upper_bound"] = json!(true);
        }
        writeln!(out, "{doc}")
    } else {
        match &line {
            Some(l) => writeln!(out, "{value}\nbest candidate: {l} (an upper bound over all lines)"),
            None => writeln!(out, "{value}"),
        }
    };
    EXIT_OK
}

pub fn cmd_demo(name: DemoName, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let key = match name {
        DemoName::MonotoneFailure => "monotone-failure",
        DemoName::NoApprox => "no-approx",
        DemoName::Distributivity => "distributivity",
    };
    let (_, demo) = DEMOS.iter().find(|(n, _)| *n == key).expect("every demo is listed");
    match demo(out) {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(err, "error: {key} did not reproduce its expected values");
            EXIT_GOLDEN
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_GOLDEN
        }
    }
}
