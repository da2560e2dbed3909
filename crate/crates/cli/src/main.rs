use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopf_cyclic::equivariant::DEFAULT_BUDGET;
use hopf_cyclic::io::to_pretty;
use hopf_cyclic::EngineError;
use hopf_cyclic_cli::{run, CliError, Command, Format, JobConfig, Theory};

#[derive(Parser)]
#[command(name = "hcyc", version, about = "Equivariant cyclic cohomology, K-theory and index computations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Highest cohomology degree computed.
    #[arg(long, global = true, default_value_t = 2)]
    max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = TheoryArg::Cyclic)]
    theory: TheoryArg,
    /// Largest ambient dimension of a cochain level.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Element of the Hopf algebra: `1`, `e<i>` or a coordinate vector.
    #[arg(long, global = true)]
    omega: Option<String>,
    /// Group-like element used for twisting.
    #[arg(long, global = true)]
    rho: Option<String>,
    /// Largest module dimension for `ktheory` and `homogeneous`.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every structural identity of a document.
    Verify { input: PathBuf },
    /// Hochschild, cyclic, lambda or periodic cohomology of a module algebra.
    Cohomology { input: PathBuf },
    /// Pair cyclic cocycles with an invariant idempotent or invertible.
    Pair { input: PathBuf },
    /// K-theory of the crossed product and the invariant-idempotent survey.
    Ktheory { input: PathBuf },
    /// Index characters and the index theorem for a Fredholm module.
    Index { input: PathBuf },
    /// Spectral subspaces and decompositions for a subgroup datum.
    Homogeneous { input: PathBuf },
    /// Emit a built-in fixture, or all of them.
    Fixtures {
        name: String,
        /// Directory to write `NAME.json` files into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Hochschild,
    Cyclic,
    Lambda,
    Periodic,
    Classical,
    Twisted,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, inputs) = match cli.command {
        Cmd::Verify { input } => (Command::Verify, vec![input]),
        Cmd::Cohomology { input } => (Command::Cohomology, vec![input]),
        Cmd::Pair { input } => (Command::Pair, vec![input]),
        Cmd::Ktheory { input } => (Command::Ktheory, vec![input]),
        Cmd::Index { input } => (Command::Index, vec![input]),
        Cmd::Homogeneous { input } => (Command::Homogeneous, vec![input]),
        Cmd::Fixtures { name, out } => (Command::Fixtures { name, out }, vec![]),
    };
    let o = cli.opts;
    let raw_fixture = matches!(&command, Command::Fixtures { out: None, .. });
    let config = JobConfig {
        command,
        inputs,
        max_degree: o.max_degree,
        theory: match o.theory {
            TheoryArg::Hochschild => Theory::Hochschild,
            TheoryArg::Cyclic => Theory::Cyclic,
            TheoryArg::Lambda => Theory::Lambda,
            TheoryArg::Periodic => Theory::Periodic,
            TheoryArg::Classical => Theory::Classical,
            TheoryArg::Twisted => Theory::Twisted,
        },
        budget: o.budget,
        seed: o.seed,
        format: match o.format {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        },
        omega: o.omega,
        rho: o.rho,
        max_dim: o.max_dim,
        timings: o.timings,
    };
    match run(&config) {
        Ok(report) => {
            if raw_fixture && report.passed() && config.format == Format::Json {
                print!("{}", to_pretty(&report.results));
            } else {
                print!("{}", report.render(config.format));
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Engine(EngineError::SizeBudgetExceeded { dim, .. }) = e {
                eprintln!("hint: lower --max-degree or pass --budget {dim} or more");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
