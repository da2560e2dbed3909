//! Batch front-end: parse documents, dispatch computations, emit reports.

mod commands;
mod element;

use std::path::PathBuf;
use std::time::Instant;

use hopf_cyclic::equivariant::DEFAULT_BUDGET;
use hopf_cyclic::io::{parse_document, to_pretty, Document};
use hopf_cyclic::report::CheckReport;
use hopf_cyclic::EngineError;
use serde_json::{json, Value};

pub use element::parse_element;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Hochschild,
    Cyclic,
    Lambda,
    Periodic,
    Classical,
    Twisted,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Hochschild => "hochschild",
            Theory::Cyclic => "cyclic",
            Theory::Lambda => "lambda",
            Theory::Periodic => "periodic",
            Theory::Classical => "classical",
            Theory::Twisted => "twisted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Cohomology,
    Pair,
    Ktheory,
    Index,
    Homogeneous,
    /// Emit the named fixture, or every fixture for `"all"`.
    Fixtures { name: String, out: Option<PathBuf> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Cohomology => "cohomology",
            Command::Pair => "pair",
            Command::Ktheory => "ktheory",
            Command::Index => "index",
            Command::Homogeneous => "homogeneous",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub max_degree: usize,
    pub theory: Theory,
    pub budget: usize,
    pub seed: u64,
    pub format: Format,
    pub omega: Option<String>,
    pub rho: Option<String>,
    /// Largest module dimension for `ktheory` (of `X`) and `homogeneous`.
    pub max_dim: Option<usize>,
    pub timings: bool,
}

impl JobConfig {
    pub fn new(command: Command, inputs: Vec<PathBuf>) -> Self {
        JobConfig {
            command,
            inputs,
            max_degree: 2,
            theory: Theory::Cyclic,
            budget: DEFAULT_BUDGET,
            seed: 0,
            format: Format::Json,
            omega: None,
            rho: None,
            max_dim: None,
            timings: false,
        }
    }
}

/// Usage and schema errors exit with 2, engine refusals with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Engine(EngineError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Engine(e) => match e {
                EngineError::Schema(_) | EngineError::UnknownFixture(_) | EngineError::Invalid(_) => 2,
                _ => 1,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

/// The outcome of one job.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: u64,
    pub results: Value,
    pub checks: CheckReport,
    /// Only filled with `--timings`.
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<&str> = self.checks.failures().iter().map(|e| e.name.as_str()).collect();
        let mut v = json!({
            "command": self.command,
            "engine_version": ENGINE_VERSION,
            "inputs": self.inputs,
            "seed": self.seed,
            "results": self.results,
            "checks": self.checks.entries,
            "summary": {
                "passed": self.passed(),
                "checks": self.checks.entries.len(),
                "failures": failures,
            },
        });
        if let Some(ms) = self.elapsed_ms {
            v["timings"] = json!({ "total_ms": ms as u64 });
        }
        v
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} (engine {ENGINE_VERSION})\n", self.command);
        for i in &self.inputs {
            out.push_str(&format!("input: {i}\n"));
        }
        commands::table_results(&self.results, "", &mut out);
        out.push_str(&self.checks.to_string());
        let n = self.checks.entries.len();
        let f = self.checks.failures().len();
        out.push_str(&format!("{} of {n} checks passed\n", n - f));
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("time: {ms} ms\n"));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_pretty(&self.to_json()),
            Format::Table => self.to_table(),
        }
    }
}

pub fn read_document(path: &PathBuf) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        EngineError::Schema(s) => CliError::Engine(EngineError::Schema(format!("{}: {s}", path.display()))),
        other => CliError::Engine(other),
    })
}

pub fn run(config: &JobConfig) -> Result<Report, CliError> {
    if config.budget == 0 {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    let start = Instant::now();
    let (results, checks) = match &config.command {
        Command::Fixtures { name, out } => commands::fixtures(name, out.as_ref())?,
        cmd => {
            let [path] = config.inputs.as_slice() else {
                return Err(CliError::Usage(format!("{} takes exactly one input file", cmd.name())));
            };
            let doc = read_document(path)?;
            commands::dispatch(cmd, &doc, config)?
        }
    };
    Ok(Report {
        command: config.command.name().to_string(),
        inputs: config.inputs.iter().map(|p| p.display().to_string()).collect(),
        seed: config.seed,
        results,
        checks,
        elapsed_ms: config.timings.then(|| start.elapsed().as_millis()),
    })
}
