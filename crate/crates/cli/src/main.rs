//! `ulp`: ground and solve programs, encode machines, and compare accepting
//! runs with stable models.

use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use ulp_core::solver::for_each_stable_model;
use ulp_core::turing::DEFAULT_RUN_BOUND;
use ulp_core::{
    build_edb, enumerate_valid_runs, format_runs, ground_program, model_to_run, parse_machine, parse_program,
    relational_ground, verify_bijection, EdbSplit, GroundAtom, GroundProgram, MachineSpec, Program, Run, SolveLimits,
};

#[derive(Parser)]
#[command(name = "ulp", version, about = "Stable-model toolkit for function-free logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ground program.
    Ground {
        /// Program file, or `-` for standard input.
        program: PathBuf,
        /// Instantiate every clause over the whole Herbrand universe.
        #[arg(long)]
        naive: bool,
    },
    /// Enumerate stable models, one per line.
    Solve {
        program: PathBuf,
        #[arg(long, value_name = "N")]
        max_models: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print the instance database together with the transition program.
    Encode { machine: PathBuf },
    /// Decode every stable model of the encoding into a run table.
    Run { machine: PathBuf },
    /// Enumerate the accepting runs directly.
    Oracle { machine: PathBuf },
    /// Compare the runs with the stable models; exit 1 on a mismatch.
    Check {
        machine: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Failure to read or interpret an input; exits with status 2.
struct InputError(String);

impl<E: Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| InputError(format!("<stdin>: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn label(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "<stdin>".to_string()
    } else {
        path.display().to_string()
    }
}

fn load_program(path: &Path) -> Result<Program, InputError> {
    parse_program(&read(path)?).map_err(|e| InputError(format!("{}: {e}", label(path))))
}

fn load_machine(path: &Path) -> Result<MachineSpec, InputError> {
    parse_machine(&read(path)?).map_err(|e| InputError(format!("{}: {e}", label(path))))
}

fn ground_auto(program: &Program) -> Result<GroundProgram, InputError> {
    Ok(relational_ground(program, &EdbSplit::auto(program))?)
}

fn show_model(atoms: &std::collections::BTreeSet<GroundAtom>) -> String {
    let atoms: Vec<String> = atoms.iter().map(ToString::to_string).collect();
    format!("{{{}}}", atoms.join(", "))
}

#[derive(Serialize)]
struct SolveReport {
    models: Vec<Vec<String>>,
    complete: bool,
}

fn sorted_runs(mut runs: Vec<Run>) -> Vec<Run> {
    runs.sort();
    runs
}

fn execute(command: Command, out: &mut impl Write) -> Result<ExitCode, InputError> {
    match command {
        Command::Ground { program, naive } => {
            let p = load_program(&program)?;
            let pg = if naive { ground_program(&p) } else { ground_auto(&p)? };
            write!(out, "{pg}")?;
        }
        Command::Solve { program, max_models, json } => {
            let pg = ground_auto(&load_program(&program)?)?;
            let mut limits = SolveLimits::unlimited();
            if let Some(n) = max_models {
                limits = limits.with_max_models(n);
            }
            let mut models = Vec::new();
            let mut failure = None;
            let stats = for_each_stable_model(&pg, limits, |m| {
                let atoms = pg.to_symbolic(m);
                if json {
                    models.push(atoms.iter().map(ToString::to_string).collect());
                } else if let Err(e) = writeln!(out, "{}", show_model(&atoms)).and_then(|_| out.flush()) {
                    failure = Some(e);
                    return false;
                }
                true
            });
            if let Some(e) = failure {
                return Err(e.into());
            }
            if json {
                let report = SolveReport { models, complete: stats.complete };
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else if stats.models == 0 {
                writeln!(out, "UNSATISFIABLE")?;
            }
        }
        Command::Encode { machine } => {
            let spec = load_machine(&machine)?;
            let inst = build_edb(&spec.machine, &spec.poly, &spec.input)?;
            write!(out, "{}", inst.program())?;
        }
        Command::Run { machine } => {
            let spec = load_machine(&machine)?;
            let inst = build_edb(&spec.machine, &spec.poly, &spec.input)?;
            let pg = inst.ground()?;
            let mut runs = Vec::new();
            let mut failure = None;
            for_each_stable_model(&pg, SolveLimits::unlimited(), |m| match model_to_run(&inst, &pg.to_symbolic(m)) {
                Ok(r) => {
                    runs.push(r);
                    true
                }
                Err(e) => {
                    failure = Some(e);
                    false
                }
            });
            if let Some(e) = failure {
                return Err(e.into());
            }
            write!(out, "{}", format_runs(inst.machine(), &sorted_runs(runs)))?;
        }
        Command::Oracle { machine } => {
            let spec = load_machine(&machine)?;
            let m = spec.machine.normalize();
            let runs = enumerate_valid_runs(&m, &spec.poly, &spec.input, DEFAULT_RUN_BOUND)?;
            write!(out, "{}", format_runs(&m, &sorted_runs(runs)))?;
        }
        Command::Check { machine, json } => {
            let spec = load_machine(&machine)?;
            let report = verify_bijection(&spec.machine, &spec.poly, &spec.input)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else {
                writeln!(out, "runs: {}", report.runs)?;
                writeln!(out, "models: {}", report.models)?;
                writeln!(out, "bijection: {}", if report.bijection { "yes" } else { "no" })?;
                if let Some(c) = &report.counterexample {
                    writeln!(out, "counterexample:\n{c}")?;
                }
            }
            if !report.bijection {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match execute(cli.command, &mut out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    code
}
