use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use finring::ledger;
use finring::lattice::{self, Identity};
use finring::predicates;
use finring::report::{self, FamilyKind, FamilyReport, Report};
use finring::substructures::{Level, Mode, RingAnalysis};
use finring::{Error, Ring};

#[derive(Parser)]
#[command(name = "finring", version, about = "Brute-force analysis of small finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Element censuses (units, idempotents, nilpotents, ...) as JSON.
    Classify { spec: String },
    /// One substructure family.
    Substructures {
        spec: String,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "I")]
        level: String,
        #[arg(long, default_value = "strict")]
        mode: String,
    },
    /// Lattice checks on a substructure family.
    Lattice {
        spec: String,
        #[arg(long)]
        family: String,
        /// Comma-separated identities: modular, distributive, ...
        #[arg(long, value_delimiter = ',', default_value = "modular")]
        check: Vec<String>,
        /// Write the Hasse diagram in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value = "I")]
        level: String,
        #[arg(long, default_value = "strict")]
        mode: String,
    },
    /// Ring-level predicate battery.
    Predicates {
        spec: String,
        /// Comma-separated predicate ids; an empty value selects none.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value = "strict")]
        mode: String,
    },
    /// Claim ledgers.
    Claims {
        #[command(subcommand)]
        action: ClaimsAction,
    },
}

#[derive(Subcommand)]
enum ClaimsAction {
    /// Evaluate every claim of a ledger file.
    Run {
        ledger: PathBuf,
        /// Only claims whose id matches this glob.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn analysis(spec: &str) -> Result<RingAnalysis, Error> {
    Ok(RingAnalysis::new(Ring::construct(&spec.parse()?)?))
}

fn run(cmd: Command) -> Result<(String, bool), Error> {
    match cmd {
        Command::Classify { spec } => Ok((report::classify_report(&analysis(&spec)?)?.to_json(), true)),
        Command::Substructures { spec, kind, level, mode } => {
            let (kind, level, mode): (FamilyKind, Level, Mode) = (kind.parse()?, level.parse()?, mode.parse()?);
            let a = analysis(&spec)?;
            let mut rep = Report::new(a.ring())?;
            rep.families.push(FamilyReport::of(&report::family(&a, kind, level, mode)?));
            Ok((rep.to_json(), true))
        }
        Command::Lattice {
            spec,
            family,
            check,
            dot,
            level,
            mode,
        } => {
            let (kind, level, mode): (FamilyKind, Level, Mode) = (family.parse()?, level.parse()?, mode.parse()?);
            let checks = check.iter().filter(|c| !c.trim().is_empty()).map(|c| c.trim().parse()).collect::<Result<Vec<Identity>, _>>()?;
            let a = analysis(&spec)?;
            let fam = report::family(&a, kind, level, mode)?;
            let (lat, _) = report::analyze_lattice(&fam, &checks)?;
            if let Some(path) = dot {
                let poset = lattice::poset_from_family(&fam.sets)?;
                std::fs::write(path, report::hasse_dot(a.ring(), &poset))?;
            }
            let mut rep = Report::new(a.ring())?;
            rep.lattices.push(lat);
            Ok((rep.to_json(), true))
        }
        Command::Predicates { spec, only, mode } => {
            let a = analysis(&spec)?;
            let ids: Option<Vec<String>> = only.map(|o| o.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect());
            let mut rep = Report::new(a.ring())?;
            rep.predicates = predicates::battery(&a, mode.parse()?, ids.as_deref())?;
            Ok((rep.to_json(), true))
        }
        Command::Claims {
            action: ClaimsAction::Run { ledger: path, filter },
        } => {
            let text = std::fs::read_to_string(&path)?;
            let run = ledger::run_claims(&ledger::parse_ledger(&text)?, filter.as_deref())?;
            Ok((run.to_json(), run.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("finring: {e}");
            ExitCode::from(if e.is_capacity() { 3 } else { 2 })
        }
    }
}
