use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod golden;
mod output;

use exceptional::cyclo_trace::{self, DEFAULT_MAX_INDEX};
use exceptional::density::{self, DEFAULT_ARTIN_CUTOFF};
use exceptional::prime_class::{self, ClassError, DEFAULT_GCD_BUDGET};
use exceptional::{CycloError, DensityError, Membership};
use rayon::prelude::*;

/// The first ten primes, the rows of the density table.
const TABLE_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

#[derive(Debug, Parser)]
#[command(
    name = "exceptional",
    version,
    about = "Exceptional primes for X^q - 1 in F_p[X; <2,3>]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Largest q for which the polynomial gcd test runs.
    #[arg(long, default_value_t = DEFAULT_GCD_BUDGET, global = true)]
    gcd_budget: u64,

    /// Cap on r + 1 for the exhaustive bipartition search.
    #[arg(long, default_value_t = DEFAULT_MAX_INDEX, global = true)]
    max_index: u64,

    /// Seed for randomized equal-degree splitting.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Worker threads (0 = available parallelism).
    #[arg(long, env = "EXCEPTIONAL_THREADS", default_value_t = 0, global = true)]
    threads: usize,

    /// Prime cutoff for the truncated Artin product.
    #[arg(long, default_value_t = DEFAULT_ARTIN_CUTOFF, global = true)]
    artin_cutoff: u64,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetKind {
    Eprime,
    E2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one prime q relative to p.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Also run the polynomial gcd test.
        #[arg(long)]
        gcd: bool,
    },
    /// List E'(p) or E'_2(p) up to x.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: u64,
        #[arg(long, value_enum, default_value_t = SetKind::Eprime)]
        set: SetKind,
    },
    /// Classification dump of every prime q <= x.
    Dump {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        gcd: bool,
    },
    /// Factor X^q - 1 in F_p[X; <2,3>] for q in E'(p).
    Factor {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Exhaustive E(p) membership over irreducible-factor bipartitions,
    /// for one q or for every prime q <= x.
    #[command(group = clap::ArgGroup::new("target").required(true).args(["q", "x"]))]
    Exact {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        x: Option<u64>,
    },
    /// Empirical and conjectural densities of E'_2(p).
    Density {
        #[arg(long, num_args = 1.., required = true)]
        p: Vec<u64>,
        #[arg(long)]
        x: u64,
    },
    /// Density table for the first ten primes.
    Table1 {
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
    },
    /// Check the worked examples and printed lists; nonzero exit on mismatch.
    VerifyExamples,
}

#[derive(Debug)]
enum RunError {
    Usage(String),
    Failure(String),
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Failure(e.to_string())
    }
}

impl From<CycloError> for RunError {
    fn from(e: CycloError) -> Self {
        match e {
            CycloError::SamePrime(_)
            | CycloError::NotPrime(_)
            | CycloError::ModulusRange(_) => RunError::Usage(e.to_string()),
            other => RunError::Failure(other.to_string()),
        }
    }
}

impl From<ClassError> for RunError {
    fn from(e: ClassError) -> Self {
        match e {
            ClassError::SamePrime(_) | ClassError::NotPrime(_) | ClassError::BoundTooSmall(_) => {
                RunError::Usage(e.to_string())
            }
            ClassError::Cyclo(c) => (*c).into(),
            other => RunError::Failure(other.to_string()),
        }
    }
}

impl From<DensityError> for RunError {
    fn from(e: DensityError) -> Self {
        match e {
            DensityError::Class(c) => c.into(),
            DensityError::NotPrime(_) | DensityError::CutoffTooSmall(_) => {
                RunError::Usage(e.to_string())
            }
        }
    }
}

fn require_prime(n: u64, what: &str) -> Result<(), RunError> {
    if prime_class::is_prime(n) {
        Ok(())
    } else {
        Err(RunError::Usage(format!("--{what} {n} is not prime")))
    }
}

fn require_pair(p: u64, q: u64) -> Result<(), RunError> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if p == q {
        eprintln!("warning: skipping q = p = {p}; only q != p is supported");
        return Err(RunError::Usage(format!("q = p = {p} is not supported")));
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), RunError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Classify { p, q, gcd } => {
            require_pair(*p, *q)?;
            let rec = prime_class::classify(*p, *q, *gcd)?;
            output::records(out, fmt, &[rec])?;
        }
        Command::Dump { p, x, gcd } => {
            require_prime(*p, "p")?;
            if *gcd && *x > cli.gcd_budget {
                return Err(RunError::Failure(format!(
                    "x = {x} exceeds the gcd budget {}",
                    cli.gcd_budget
                )));
            }
            eprintln!("classifying primes up to {x}");
            let recs = prime_class::classify_range(*p, *x, *gcd)?;
            output::records(out, fmt, &recs)?;
        }
        Command::Enumerate { p, x, set } => {
            require_prime(*p, "p")?;
            let (name, members) = match set {
                SetKind::E2 => ("E'_2", prime_class::enumerate_e2_prime(*p, *x)?),
                SetKind::Eprime => match prime_class::enumerate_e_prime(*p, *x, cli.gcd_budget) {
                    Ok(v) => ("E'", v),
                    Err(ClassError::GcdBudget {
                        high_water,
                        partial,
                        ..
                    }) => {
                        output::set(out, fmt, "E'", *p, high_water, &partial)?;
                        return Err(RunError::Failure(format!(
                            "gcd budget exceeded: complete only up to {high_water}"
                        )));
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            output::set(out, fmt, name, *p, *x, &members)?;
        }
        Command::Factor { p, q } => {
            require_pair(*p, *q)?;
            let fac = cyclo_trace::factor_in_monoid_ring(*p, *q)?;
            output::factorization(out, fmt, &fac)?;
        }
        Command::Exact { p, q, x } => {
            let qs = match (q, x) {
                (Some(q), _) => {
                    require_pair(*p, *q)?;
                    vec![*q]
                }
                (None, Some(x)) => {
                    require_prime(*p, "p")?;
                    if *x > cli.gcd_budget {
                        return Err(RunError::Failure(format!(
                            "x = {x} exceeds the gcd budget {}",
                            cli.gcd_budget
                        )));
                    }
                    eprintln!("searching bipartitions for primes up to {x}");
                    prime_class::sieve_primes(*x)?
                        .into_iter()
                        .filter(|&q| q != *p)
                        .collect()
                }
                (None, None) => unreachable!("clap requires --q or --x"),
            };
            let rows = qs
                .par_iter()
                .map(|&q| exact_row(cli, *p, q))
                .collect::<Result<Vec<_>, RunError>>()?;
            output::exact(out, fmt, &rows)?;
        }
        Command::Density { p, x } => {
            for &pp in p {
                require_prime(pp, "p")?;
            }
            let reports = density_reports(cli, p, *x)?;
            output::densities(out, fmt, &reports)?;
        }
        Command::Table1 { x } => {
            let reports = density_reports(cli, &TABLE_PRIMES, *x)?;
            output::densities(out, fmt, &reports)?;
        }
        Command::VerifyExamples => {
            let failures = golden::verify_all(out)?;
            if failures > 0 {
                return Err(RunError::Failure(format!("{failures} golden check(s) failed")));
            }
        }
    }
    Ok(())
}

fn exact_row(cli: &Cli, p: u64, q: u64) -> Result<output::ExactRow, RunError> {
    let mut membership = cyclo_trace::exact_e_membership(p, q, cli.max_index, cli.seed)?;
    let mut method = output::Method::Bipartitions;
    if membership == Membership::Undecided {
        membership = cyclo_trace::exact_e_membership_low_terms(p, q, cli.seed)?;
        method = output::Method::LowTerms;
    }
    let in_eprime = !cyclo_trace::gcd_test(p, q)?.is_one();
    Ok(output::ExactRow {
        p,
        q,
        membership,
        method,
        in_eprime,
    })
}

fn density_reports(
    cli: &Cli,
    ps: &[u64],
    x: u64,
) -> Result<Vec<density::DensityReport>, RunError> {
    if x < 2 {
        return Err(RunError::Usage(format!("--x must be at least 2, got {x}")));
    }
    eprintln!("computing Artin's constant to cutoff {}", cli.artin_cutoff);
    let artin = density::artin_constant(cli.artin_cutoff)?;
    eprintln!("counting E'_2(p) up to {x} for {} value(s) of p", ps.len());
    Ok(density::table_report(ps, x, artin)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if cli.threads > 0 {
        builder = builder.num_threads(cli.threads);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(1);
        }
    };
    let result = pool.install(|| match &cli.output {
        Some(path) => {
            let file = File::create(path)?;
            let mut w = BufWriter::new(file);
            run(&cli, &mut w).and_then(|()| Ok(w.flush()?))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            run(&cli, &mut w).and_then(|()| Ok(w.flush()?))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
