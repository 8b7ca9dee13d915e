use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use scout_core::domain::ProblemStatement;
use scout_core::runtime::{run_pipeline, Pipeline, RunConfig};
use scout_service::report::{render_report, ReportError};
use scout_service::AppState;
use tracing_subscriber::EnvFilter;

/// Technology scouting: batch runs, the HTTP API and run reports.
#[derive(Parser)]
#[command(name = "scout", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline once and write a run directory.
    Run(RunArgs),
    /// Serve the HTTP API.
    Serve(ServeArgs),
    /// Summarize a finished run directory.
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Text file holding the problem statement.
    #[arg(long)]
    problem: PathBuf,
    /// Patent corpus (JSON lines).
    #[arg(long)]
    corpus: PathBuf,
    /// Directory of web fixture pages.
    #[arg(long)]
    web_fixtures: PathBuf,
    /// Taxonomy file (TOML).
    #[arg(long)]
    taxonomy: PathBuf,
    /// Run configuration (JSON); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Root directory for run directories.
    #[arg(long)]
    out: PathBuf,
    /// Overrides the seed recorded in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Run directory name; a fresh id by default.
    #[arg(long)]
    run_id: Option<String>,
    #[arg(long)]
    gazetteer: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    synonyms: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    addr: SocketAddr,
    /// Where run directories live.
    #[arg(long, env = "SCOUT_DATA_DIR")]
    data: PathBuf,
    /// Run configuration with fixture paths; `<data>/config.json` when omitted.
    #[arg(long, env = "SCOUT_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Run directory to summarize.
    #[arg(long)]
    run: PathBuf,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn require(path: &Path, what: &str) -> Result<(), ExitCode> {
    if path.exists() {
        Ok(())
    } else {
        Err(usage_error(format!("{what} {} does not exist", path.display())))
    }
}

fn init_logging(default: &str) {
    let filter = EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new(default));
    tracing_subscriber::fmt().with_env_filter(filter).with_writer(std::io::stderr).init();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => {
            init_logging("warn");
            cmd_run(args)
        }
        Command::Serve(args) => {
            init_logging("info");
            cmd_serve(args)
        }
        Command::Report(args) => {
            init_logging("warn");
            cmd_report(args)
        }
    };
    result.unwrap_or_else(|code| code)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, ExitCode> {
    require(&args.problem, "problem file")?;
    require(&args.corpus, "corpus")?;
    require(&args.web_fixtures, "web fixture directory")?;
    require(&args.taxonomy, "taxonomy")?;
    for (path, what) in [
        (&args.config, "config"),
        (&args.gazetteer, "gazetteer"),
        (&args.lexicon, "lexicon"),
        (&args.synonyms, "synonyms"),
    ] {
        if let Some(p) = path {
            require(p, what)?;
        }
    }

    let mut config = match &args.config {
        Some(p) => RunConfig::load(p).map_err(usage_error)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let paths = &mut config.paths;
    paths.corpus = Some(args.corpus);
    paths.web_fixtures = Some(args.web_fixtures);
    paths.taxonomy = Some(args.taxonomy);
    paths.gazetteer = args.gazetteer.or(paths.gazetteer.take());
    paths.lexicon = args.lexicon.or(paths.lexicon.take());
    paths.synonyms = args.synonyms.or(paths.synonyms.take());

    let text = std::fs::read_to_string(&args.problem).map_err(|e| usage_error(format!("{}: {e}", args.problem.display())))?;
    let problem = ProblemStatement::new(&text).map_err(usage_error)?;
    let run_id = args.run_id.unwrap_or_else(|| problem.id.clone());

    let (outcome, dir) = run_pipeline(&problem, config, &args.out, &run_id).map_err(usage_error)?;
    match outcome.result {
        Ok(out) => {
            println!("run {run_id} complete: {} solutions in {}", out.solutions.len(), dir.path().display());
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            let stage = outcome.state.error.map(|s| s.stage).unwrap_or_else(|| "unknown".into());
            eprintln!("run {run_id} failed at stage {stage}: {e}");
            eprintln!("partial artifacts in {}", dir.path().display());
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_serve(args: ServeArgs) -> Result<ExitCode, ExitCode> {
    let config_path = args.config.unwrap_or_else(|| args.data.join("config.json"));
    require(&config_path, "config")?;
    let config = RunConfig::load(&config_path).map_err(usage_error)?;
    let pipeline = Pipeline::from_config(config).map_err(usage_error)?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| usage_error(format!("runtime: {e}")))?;
    runtime.block_on(async {
        let state = AppState::new(pipeline, &args.data).map_err(usage_error)?;
        scout_service::serve(args.addr, state).await.map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(1)
        })?;
        Ok(ExitCode::SUCCESS)
    })
}

fn cmd_report(args: ReportArgs) -> Result<ExitCode, ExitCode> {
    require(&args.run, "run directory")?;
    match render_report(&args.run) {
        Ok(text) => {
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ (ReportError::Failed { .. } | ReportError::Incomplete { .. })) => {
            eprintln!("{e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(usage_error(e)),
    }
}
