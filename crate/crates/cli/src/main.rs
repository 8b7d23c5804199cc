use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Session};

#[derive(Parser, Debug)]
#[command(
    name = "rootstack-gw",
    version,
    about = "Genus zero Gromov-Witten invariants of the square root stack of P^2 along a degree delta curve"
)]
struct Cli {
    /// Seed the memo table from a cache file before running the command.
    #[arg(long, global = true, value_name = "FILE")]
    cache_in: Option<PathBuf>,

    /// Write the memo table to a cache file after the command succeeds.
    #[arg(long, global = true, value_name = "FILE")]
    cache_out: Option<PathBuf>,

    /// Print memo statistics to stderr.
    #[arg(long, global = true)]
    stats: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute I_d(n2, n3, n4).
    Compute(ComputeArgs),
    /// Compute an invariant with arbitrary insertions of T0..T4.
    General(GeneralArgs),
    /// Every admissible invariant of one degree, up to a bound on n3.
    Table(TableArgs),
    /// Run a verification suite. Exit status 1 when any case fails.
    Verify(VerifyArgs),
    /// Read or write the memo cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long)]
    delta: u32,
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    n2: u32,
    #[arg(long)]
    n3: u32,
    #[arg(long)]
    n4: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GeneralArgs {
    #[arg(long)]
    delta: u32,
    #[arg(long)]
    degree: u32,
    /// Insertion counts n0,n1,n2,n3,n4.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    delta: u32,
    #[arg(long)]
    degree: u32,
    /// Required: for a fixed degree n3 is unbounded.
    #[arg(long)]
    max_n3: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ClosedForms,
    Bases,
    Pinned,
    Relations,
    Wdvv,
    Cross,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Comma separated list. Defaults depend on the suite.
    #[arg(long, value_delimiter = ',')]
    delta: Vec<u32>,
    #[arg(long)]
    q_max: Option<u32>,
    #[arg(long)]
    y_max: Option<u32>,
    #[arg(long, default_value_t = 8)]
    k_max: u32,
    #[arg(long)]
    d_max: Option<u32>,
    #[arg(long, default_value_t = 6)]
    n3_max: u32,
    #[arg(long, default_value_t = 8)]
    n4_max: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Validate a cache file and load it into the memo table.
    Import {
        #[arg(long)]
        file: PathBuf,
    },
    /// Compute the tables for `delta`, degrees 1..=max-degree and n3 <= max-n3,
    /// then write the memo table.
    Export {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        delta: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        max_n3: u32,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let session = Session::new();
    if let Some(path) = &cli.cache_in {
        session.import(path)?;
    }
    let mut out = String::new();
    let status = match cli.command {
        Command::Compute(a) => {
            out = session.compute(a.delta, a.degree, [a.n2, a.n3, a.n4], a.json)?;
            ExitCode::SUCCESS
        }
        Command::General(a) => {
            let n: [u32; 5] = a
                .n
                .try_into()
                .map_err(|_| CliError::Usage("--n takes exactly five counts n0,n1,n2,n3,n4".into()))?;
            out = session.general(a.delta, a.degree, n, a.json)?;
            ExitCode::SUCCESS
        }
        Command::Table(a) => {
            out = session.table(a.delta, a.degree, a.max_n3, a.format)?;
            ExitCode::SUCCESS
        }
        Command::Verify(a) => {
            let plan = commands::VerifyPlan {
                suite: a.suite,
                deltas: a.delta,
                q_max: a.q_max,
                y_max: a.y_max,
                k_max: a.k_max,
                d_max: a.d_max,
                n3_max: a.n3_max,
                n4_max: a.n4_max,
            };
            let (text, passed) = session.verify(&plan, a.json)?;
            out = text;
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Cache(CacheCommand::Import { file }) => {
            let n = session.import(&file)?;
            eprintln!("imported {n} entries");
            ExitCode::SUCCESS
        }
        Command::Cache(CacheCommand::Export { file, delta, max_degree, max_n3 }) => {
            for &dl in &delta {
                for d in 1..=max_degree {
                    session.table(dl, d, max_n3, TableFormat::Csv)?;
                }
            }
            session.export(&file)?;
            ExitCode::SUCCESS
        }
    };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        other => other.map_err(|e| CliError::Usage(format!("cannot write output: {e}")))?,
    }
    if let Some(path) = &cli.cache_out {
        session.export(path)?;
    }
    if cli.stats {
        eprintln!("{}", session.stats());
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // deep same-degree chains recurse on the native stack
    const STACK: usize = 256 << 20;
    rayon::ThreadPoolBuilder::new()
        .stack_size(STACK)
        .build_global()
        .expect("configure thread pool");
    let worker = std::thread::Builder::new()
        .stack_size(STACK)
        .spawn(move || run(cli))
        .expect("spawn worker thread");
    match worker.join() {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(3),
    }
}
