//! `garra`: command-line front end for the relation algebra toolkit.
//!
//! Exit status: 0 for a "yes" answer, 2 for a "no" answer (invalid,
//! rejected, no isomorphism), 1 for errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use garra_core::decision::{verify_decision, DecideOptions, Z2Decision};
use garra_core::format::{
    axioms_report, decision_report, parse_action, parse_atom_structure, parse_concrete,
    write_atom_structure, write_concrete,
};
use garra_core::iso::DEFAULT_BUDGET;
use garra_core::{check_action_represents, classify, decide_z2, find_isomorphism, IsoWitness};

#[derive(Parser)]
#[command(name = "garra", version, about = "Finite relation algebras and group action representations")]
struct Cli {
    /// Node budget for isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an atom structure against the atom structure axioms.
    Validate { structure: PathBuf },
    /// Emit the algebra of relations compatible with an action.
    Rel { action: PathBuf },
    /// Decide representability by an action of the two-element group.
    DecideZ2 {
        structure: PathBuf,
        /// Independently re-check an accepted decision.
        #[arg(long)]
        verify: bool,
    },
    /// Search for an isomorphism between two atom structures.
    Iso { source: PathBuf, target: PathBuf },
    /// Classify the atoms of a concrete algebra by structure type.
    Classify { algebra: PathBuf },
    /// Check whether an action represents an atom structure.
    CheckAction { structure: PathBuf, action: PathBuf },
    /// Report the three first-order conditions for two-element representability.
    Axioms { structure: PathBuf },
}

/// A report and whether it answers "yes".
struct Outcome {
    report: String,
    yes: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read file", path.display()))
}

fn load<T, E: std::fmt::Display>(path: &Path, parse: impl Fn(&str) -> Result<T, E>) -> Result<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn witness_report(w: Option<IsoWitness>) -> Outcome {
    match w {
        Some(w) => Outcome {
            report: w.to_string(),
            yes: true,
        },
        None => Outcome {
            report: "none\n".into(),
            yes: false,
        },
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let budget = cli.budget;
    Ok(match &cli.command {
        Command::Validate { structure } => {
            let s = load(structure, parse_atom_structure)?;
            let r = s.validate();
            Outcome {
                report: r.to_string(),
                yes: r.is_valid(),
            }
        }
        Command::Rel { action } => {
            let a = load(action, parse_action)?;
            let c = a.rel_algebra()?;
            let s = c.extract_atom_structure();
            let report = format!(
                "# concrete algebra\n{}# atom structure\n{}",
                write_concrete(&c),
                write_atom_structure(&s)
            );
            Outcome { report, yes: true }
        }
        Command::DecideZ2 { structure, verify } => {
            let s = load(structure, parse_atom_structure)?;
            let d = decide_z2(&s, DecideOptions { budget })?;
            if let (true, Z2Decision::Accepted(rep)) = (verify, &d) {
                let v = verify_decision(rep);
                if !v.passed() {
                    return Err(anyhow!("{v}"));
                }
            }
            Outcome {
                report: decision_report(&s, &d),
                yes: d.is_accepted(),
            }
        }
        Command::Iso { source, target } => {
            let a = load(source, parse_atom_structure)?;
            let b = load(target, parse_atom_structure)?;
            witness_report(find_isomorphism(&a, &b, budget)?)
        }
        Command::Classify { algebra } => {
            let c = load(algebra, parse_concrete)?;
            Outcome {
                report: classify(&c)?.to_string(),
                yes: true,
            }
        }
        Command::CheckAction { structure, action } => {
            let s = load(structure, parse_atom_structure)?;
            let a = load(action, parse_action)?;
            witness_report(check_action_represents(&s, &a, budget)?)
        }
        Command::Axioms { structure } => {
            let s = load(structure, parse_atom_structure)?;
            Outcome {
                report: axioms_report(&s),
                yes: s.check_z2_axioms().all_hold(),
            }
        }
    })
}

fn emit(cli: &Cli, report: &str) -> Result<()> {
    match &cli.output {
        Some(p) => fs::write(p, report).with_context(|| format!("{}: cannot write file", p.display())),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli).and_then(|o| emit(&cli, &o.report).map(|()| o.yes)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
