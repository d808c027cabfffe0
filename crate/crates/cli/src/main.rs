//! Command line front end: one subcommand per check, a JSON report per run,
//! and exit codes 0 (pass), 1 (mathematical finding) and 2 (usage or
//! budget).

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use degeneracy_atlas::epw::{Flavor, DEFAULT_POINT_BUDGET};
use degeneracy_atlas::exactalg::{ExtField, FieldSpec, PrimeField, Rationals};

use report::{Envelope, Outcome, Status};

#[derive(Parser, Debug)]
#[command(
    name = "degeneracy-atlas",
    version,
    about = "Exact checks on quadratic and Lagrangian degeneracy loci"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Odd prime of the base field.
    #[arg(long, global = true, conflicts_with = "rationals")]
    p: Option<u64>,
    /// Work over F_{p^r}.
    #[arg(long, global = true, requires = "p")]
    ext_degree: Option<u32>,
    /// Work over the rationals.
    #[arg(long, global = true)]
    rationals: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated points (census, screens, exhaustive checks).
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_points: u64,
    /// Cap on Gröbner pair reductions.
    #[arg(long, global = true, default_value_t = 50_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_groebner: u64,
    /// Wall time budget in milliseconds, checked when the run ends; a run
    /// over budget is reported as skipped.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget_wall_ms: Option<u64>,
    /// Input file (a Lagrangian or a quadratic family).
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Add the wall time to the report (which then varies between runs).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Corank strata and cover signatures of a quadratic family.
    Stratify(commands::StratifyArgs),
    /// Corank histogram of an EPW Lagrangian over a finite field.
    Census(commands::CensusArgs),
    /// Fiber of the double cover at one datum.
    CoverFiber(commands::CoverFiberArgs),
    /// Square roots of rank one forms against the cover signature.
    VeroneseCheck(commands::VeroneseArgs),
    /// Ruling rationality against the signed discriminant.
    SteinCheck(commands::SteinArgs),
    /// Degree, smoothness and branching of a symmetroid.
    Symmetroid(commands::SymmetroidArgs),
    /// Invariance of coranks and signatures under isotropic reduction.
    Reduce(commands::ReduceArgs),
    /// Conversion of a Lagrangian pair to a quadratic family.
    Lag2quad(commands::Lag2QuadArgs),
    /// Degree of the EPW hypersurfaces (or of the surface Y^{>=2}).
    EpwDegree(commands::EpwDegreeArgs),
    /// The first quadratic fibration against the sextic coranks.
    Q1Check(commands::Q1Args),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Stratify(_) => "stratify",
            Command::Census(_) => "census",
            Command::CoverFiber(_) => "cover-fiber",
            Command::VeroneseCheck(_) => "veronese-check",
            Command::SteinCheck(_) => "stein-check",
            Command::Symmetroid(_) => "symmetroid",
            Command::Reduce(_) => "reduce",
            Command::Lag2quad(_) => "lag2quad",
            Command::EpwDegree(_) => "epw-degree",
            Command::Q1Check(_) => "q1-check",
        }
    }

    /// Field used when no field flag or input file says otherwise.
    fn default_field(&self) -> FieldSpec {
        let p = match self {
            Command::Census(_)
            | Command::Stratify(_)
            | Command::Reduce(_)
            | Command::Lag2quad(_) => 3,
            Command::VeroneseCheck(_) | Command::SteinCheck(_) => 3,
            Command::CoverFiber(_) => 7,
            Command::Symmetroid(_) | Command::EpwDegree(_) | Command::Q1Check(_) => 101,
        };
        FieldSpec::Prime { p }
    }

    fn reads_lagrangian(&self) -> bool {
        matches!(
            self,
            Command::Census(_)
                | Command::CoverFiber(_)
                | Command::EpwDegree(_)
                | Command::Q1Check(_)
        )
    }
}

/// A field chosen at run time.
pub enum AnyField {
    Prime(PrimeField),
    Ext(ExtField),
    Rationals(Rationals),
}

fn field_spec(cli: &Cli, input_text: Option<&str>) -> anyhow::Result<FieldSpec> {
    let c = &cli.common;
    let flags = if c.rationals {
        Some(FieldSpec::Rationals)
    } else {
        c.p.map(|p| match c.ext_degree {
            Some(r) if r > 1 => FieldSpec::Ext { p, r },
            _ => FieldSpec::Prime { p },
        })
    };
    let from_file = match input_text {
        Some(text) if cli.command.reads_lagrangian() => Some(input::lagrangian_field(text)?),
        _ => None,
    };
    match (flags, from_file) {
        (Some(a), Some(b)) if a != b => {
            anyhow::bail!("field flags ask for {a} but the input file is over {b}")
        }
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(cli.command.default_field()),
    }
}

fn make_field(spec: FieldSpec) -> degeneracy_atlas::Result<AnyField> {
    Ok(match spec {
        FieldSpec::Prime { p } => AnyField::Prime(PrimeField::new(p)?),
        FieldSpec::Ext { p, r } => AnyField::Ext(ExtField::new(p, r)?),
        FieldSpec::Rationals => AnyField::Rationals(Rationals),
    })
}

fn run(cli: &Cli) -> anyhow::Result<(Envelope, Status)> {
    let start = Instant::now();
    let input_text = match &cli.common.input {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?,
        ),
        None => None,
    };
    let spec = field_spec(cli, input_text.as_deref())?;
    let field = make_field(spec)?;
    let ctx = commands::Context {
        common: &cli.common,
        input: input_text.as_deref(),
    };
    let mut outcome: Outcome = commands::dispatch(&cli.command, &field, &ctx)?;
    if let Some(budget) = cli.common.budget_wall_ms {
        let spent = start.elapsed().as_millis() as u64;
        if spent > budget {
            outcome.status = Status::Skipped;
            outcome.summary = format!(
                "wall time budget of {budget} ms exceeded ({spent} ms)\n{}",
                outcome.summary
            );
        }
    }
    let status = outcome.status;
    let envelope = Envelope::new(
        cli.command.name(),
        spec,
        &cli.common,
        outcome,
        cli.common.timing.then(|| start),
    );
    Ok((envelope, status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((envelope, status)) => {
            let json = envelope.to_json();
            if let Some(path) = &cli.common.out {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if cli.common.json {
                println!("{json}");
            } else {
                println!("{}", envelope.summary_line());
            }
            ExitCode::from(status.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Parses a flavor name for clap.
fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse::<Flavor>().map_err(|e| e.to_string())
}
