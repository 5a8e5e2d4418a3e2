use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quiverhh::checks::{checks_result, run_checks, CheckOptions, Scope};
use quiverhh::dsl::serialize_presentation;
use quiverhh::error::EngineError;
use quiverhh::families::Family;
use quiverhh::field::{field_parse, FieldDescriptor};
use quiverhh::hochschild::DEFAULT_NMAX;
use quiverhh::report::{
    confluence_trace, resolve, run_report, run_table, OutputFormat, ReportRequest, Source, TableName,
    TableRequest, DEFAULT_SEED,
};

/// Exact Hochschild cohomology of bound quiver algebras.
#[derive(Parser)]
#[command(name = "quiverhh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// HH dimensions, cup and bracket summaries for one algebra.
    Report(ReportArgs),
    /// Reproduce a table: psi-examples, torus-sweep or feasibility.
    Table(TableArgs),
    /// Run the invariant suites.
    Check(CheckArgs),
    /// Print a built-in family as DSL text.
    Export(SourceArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in family: torus-s, torus-c, p1p1, pi, kronecker.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    family: Option<String>,
    /// Presentation in the DSL.
    #[arg(long)]
    file: Option<String>,
    /// `rational` or `fp:<p>`.
    #[arg(long)]
    field: Option<String>,
    /// Deformation parameter of the torus families.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Tensor for p1p1, e.g. `ee:2,ff:2,hh:1`.
    #[arg(long)]
    psi: Option<String>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// json, csv or text.
    #[arg(long, default_value = "json")]
    out: String,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: usize,
    /// Recorded in the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Print the confluence trace to stderr.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct TableArgs {
    name: String,
    #[arg(long)]
    field: Option<String>,
    /// q values for torus-sweep, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Number of random tensors for feasibility.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value = "text")]
    out: String,
}

#[derive(Args)]
struct CheckArgs {
    /// fast or full.
    #[arg(long, default_value = "fast")]
    scope: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Corrupt one bar differential entry first; the run must then fail.
    #[arg(long)]
    tamper: bool,
    /// json or text.
    #[arg(long, default_value = "text")]
    out: String,
}

fn field_arg(s: &Option<String>) -> Result<Option<FieldDescriptor>, EngineError> {
    Ok(s.as_deref().map(field_parse).transpose()?)
}

fn request(src: &SourceArgs) -> Result<ReportRequest, EngineError> {
    let source = match (&src.family, &src.file) {
        (Some(name), _) => Source::Family(name.parse::<Family>()?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| EngineError::Parse(format!("cannot read {path}: {e}")))?;
            Source::Dsl { name: path.clone(), text }
        }
        (None, None) => return Err(EngineError::Parse("give --family or --file".into())),
    };
    Ok(ReportRequest {
        source,
        field: field_arg(&src.field)?,
        q: src.q.clone(),
        psi: src.psi.clone(),
        nmax: DEFAULT_NMAX,
        seed: None,
    })
}

fn run(cli: Cli) -> Result<String, EngineError> {
    match cli.command {
        Command::Report(a) => {
            let fmt: OutputFormat = a.out.parse()?;
            let mut req = request(&a.source)?;
            req.nmax = a.nmax;
            req.seed = a.seed;
            if a.trace {
                let (_, pres, _) = resolve(&req)?;
                eprint!("{}", confluence_trace(&pres)?);
            }
            Ok(run_report(&req)?.render(fmt))
        }
        Command::Table(a) => {
            let fmt: OutputFormat = a.out.parse()?;
            let mut req = TableRequest::new(a.name.parse::<TableName>()?);
            req.field = field_arg(&a.field)?;
            req.qs = a.q.map(|s| s.split(',').map(|t| t.trim().to_string()).collect());
            req.samples = a.samples;
            req.seed = a.seed;
            Ok(run_table(&req)?.render(fmt))
        }
        Command::Check(a) => {
            let mut opts = CheckOptions::new(a.scope.parse::<Scope>()?);
            opts.seed = a.seed;
            opts.tamper = a.tamper;
            let summary = run_checks(opts);
            let text = match a.out.as_str() {
                "json" => summary.to_json() + "\n",
                "text" => summary.to_text(),
                other => return Err(EngineError::Parse(format!("unknown output format `{other}`"))),
            };
            print!("{text}");
            checks_result(&summary).map(|_| String::new())
        }
        Command::Export(src) => {
            let (_, pres, _) = resolve(&request(&src)?)?;
            Ok(serialize_presentation(&pres))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
