mod commands;
mod expr;
mod report;
mod search;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use kummono::{ErrorClass, FactorBudget, FieldOptions};

use report::{Failure, Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "kummono", version, about = "Monogeneity of radical and Kummer extensions")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for all randomized subroutines.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Skip the check that Z[t] is the maximal order of the base field.
    #[arg(long, global = true)]
    pub assume_maximal: bool,
    /// Skip irreducibility checks; verdicts become conditional.
    #[arg(long, global = true)]
    pub assume_irreducible: bool,
    /// Pollard-rho iteration budget for integer factorization.
    #[arg(long, global = true)]
    pub factor_budget: Option<u64>,
    /// Worker threads for `search`.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Include wall-clock timings in the output.
    #[arg(long, global = true)]
    pub timing: bool,
}

impl GlobalOpts {
    pub fn field_options(&self) -> FieldOptions {
        let mut factor_budget = FactorBudget::default();
        if let Some(b) = self.factor_budget {
            factor_budget.rho_iterations = b;
        }
        FieldOptions { assume_maximal: self.assume_maximal, factor_budget, seed: self.seed }
    }
}

/// Exactly one of `--cyclotomic` or `--field`.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct FieldSpec {
    /// Base field Q(zeta_N); elements are written in `z`.
    #[arg(long, value_name = "N")]
    pub cyclotomic: Option<u64>,
    /// Base field Q[x]/(g) for a monic integer polynomial g; elements are written in `t`.
    #[arg(long, value_name = "POLY")]
    pub field: Option<String>,
}

/// Optional base field.
#[derive(Args, Debug, Clone)]
#[group(required = false, multiple = false)]
pub struct OptFieldSpec {
    #[arg(long, value_name = "N")]
    pub cyclotomic: Option<u64>,
    #[arg(long, value_name = "POLY")]
    pub field: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Is O_L[alpha^(1/n)] the ring of integers of L(alpha^(1/n))?
    CheckRadical {
        #[command(flatten)]
        field: FieldSpec,
        #[arg(short = 'n')]
        n: u64,
        #[arg(long)]
        alpha: String,
    },
    /// The case L = Q(zeta_p), n = p.
    CheckKummerPrime {
        #[arg(short = 'p')]
        p: u64,
        #[arg(long)]
        alpha: String,
    },
    /// Is l an essential discriminant divisor of Q(zeta_n, alpha^(1/n))?
    Edd {
        #[arg(short = 'n')]
        n: u64,
        #[arg(long)]
        alpha: String,
        #[arg(short = 'l')]
        l: u64,
    },
    /// Splitting of p in the base field, and optionally in L(alpha^(1/n)).
    Split {
        #[command(flatten)]
        field: FieldSpec,
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'n', requires = "alpha")]
        n: Option<u64>,
        #[arg(long, requires = "n")]
        alpha: Option<String>,
    },
    /// Is O_L[zeta_n] the ring of integers of L(zeta_n)?
    CycloRelative {
        #[command(flatten)]
        field: FieldSpec,
        #[arg(short = 'n')]
        n: u64,
    },
    /// Discriminants of the base field, of a polynomial over Z, or of a polynomial over the base.
    Disc {
        #[command(flatten)]
        field: OptFieldSpec,
        /// Polynomial in x (coefficients may use the field variable).
        #[arg(long)]
        poly: Option<String>,
        /// Also run the index criterion at every prime dividing the discriminant.
        #[arg(long)]
        monogenic: bool,
    },
    /// Scan a range of alpha and write one CSV row per candidate.
    Search(search::SearchArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckRadical { .. } => "check-radical",
            Command::CheckKummerPrime { .. } => "check-kummer-prime",
            Command::Edd { .. } => "edd",
            Command::Split { .. } => "split",
            Command::CycloRelative { .. } => "cyclo-relative",
            Command::Disc { .. } => "disc",
            Command::Search(_) => "search",
        }
    }
}

const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Usage(_) => EXIT_USAGE,
        Failure::Core(e) => match e.class() {
            ErrorClass::Hypothesis => EXIT_HYPOTHESIS,
            ErrorClass::Budget => EXIT_BUDGET,
            ErrorClass::Input => EXIT_USAGE,
            ErrorClass::Internal => EXIT_INTERNAL,
        },
        Failure::Io(_) => EXIT_INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let name = cli.command.name();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = commands::run(&cli.command, &cli.global);
    let timing_ms = cli.global.timing.then(|| start.elapsed().as_millis() as u64);
    match result {
        Ok(Outcome { payload, human, report_to_stderr }) => {
            let report = Report::new(name, &argv, &cli.global, payload, None, timing_ms);
            let mut text = if cli.global.json { report.to_json() + "\n" } else { report.human_header() + &human };
            if let (Some(t), false) = (timing_ms, cli.global.json) {
                text.push_str(&format!("time: {t} ms\n"));
            }
            if report_to_stderr {
                eprint!("{text}");
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = exit_code(&f);
            if cli.global.json {
                let report = Report::new(name, &argv, &cli.global, serde_json::Value::Null, Some(&f), timing_ms);
                println!("{}", report.to_json());
            } else {
                eprintln!("kummono {name}: {}", f.message());
            }
            ExitCode::from(code)
        }
    }
}
