use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use weyl_cli::config::{
    parse_alpha, parse_class, parse_gate, parse_mode, parse_seed, CliError, Command,
    EnsembleChoice, ExperimentConfig, Format,
};
use weyl_cli::{run, write_report};

/// Billiard dynamics of two-qubit and bipartite gates in the Weyl chamber.
#[derive(Parser, Debug)]
#[command(name = "weyl", version)]
struct Args {
    /// trajectory, ensemble, moments, spectral, freeness, approximate,
    /// interlace or tables
    command: String,
    /// Root seed, decimal or 0x-prefixed hex.
    #[arg(long, env = "WEYL_SEED", default_value = "1")]
    seed: String,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    /// Subsystem dimension N (gates act on N²).
    #[arg(long = "dim")]
    dim: Option<usize>,
    /// I, II or III.
    #[arg(long)]
    class: Option<String>,
    /// Comma-separated angles, e.g. "pi/8,0.3,-0.1".
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, default_value_t = 100)]
    bins: usize,
    /// Output file; sidecar tables go next to it. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Continuous-time step for `trajectory`.
    #[arg(long)]
    dt: Option<f64>,
    /// Named gate: identity, cnot, sqrt-cnot, swap, sqrt-swap, ...
    #[arg(long)]
    target: Option<String>,
    #[arg(long, default_value_t = 0.998)]
    fidelity: f64,
    /// cue, cpe, gamma, trajectory or diagonal-trajectory.
    #[arg(long, default_value = "cue")]
    ensemble: String,
    /// wishart, haar_reshuffled or trajectory_reshuffled.
    #[arg(long)]
    mode: Option<String>,
    /// Omit elapsed time from headers so reruns are byte-identical.
    #[arg(long)]
    reproducible: bool,
}

fn config(args: &Args) -> Result<ExperimentConfig, CliError> {
    let mut cfg = ExperimentConfig::new(args.command.parse::<Command>()?);
    cfg.seed = parse_seed(&args.seed)?;
    cfg.samples = args.samples;
    cfg.steps = args.steps;
    cfg.dims = args.dim;
    cfg.class = args.class.as_deref().map(parse_class).transpose()?;
    cfg.alpha = args.alpha.as_deref().map(parse_alpha).transpose()?;
    cfg.bins = args.bins;
    cfg.format = args.format.parse::<Format>()?;
    cfg.dt = args.dt;
    cfg.target = args.target.as_deref().map(parse_gate).transpose()?;
    cfg.fidelity = args.fidelity;
    cfg.ensemble = args.ensemble.parse::<EnsembleChoice>()?;
    cfg.mode = args.mode.as_deref().map(parse_mode).transpose()?;
    cfg.reproducible = args.reproducible;
    cfg.validate()?;
    Ok(cfg)
}

fn execute(args: &Args) -> Result<(), CliError> {
    let cfg = config(args)?;
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
    }
    let start = Instant::now();
    let report = run(&cfg)?;
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    let mut header = cfg.header_fields();
    header.push(("version".into(), env!("CARGO_PKG_VERSION").into()));
    if !cfg.reproducible {
        header.push(("elapsed_ms".into(), start.elapsed().as_millis().to_string()));
    }
    for path in write_report(&report, &header, cfg.format, args.out.as_deref())? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
