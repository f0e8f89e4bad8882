use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harness_cli::dump::{dump_matrix, MatrixKind};
use harness_cli::{
    compare, exact_rows, predict_rows, run_oracle, write_rows, ExactMethod, ExperimentConfig,
    HarnessError, OutputFormat, Result, StateChoice, Tolerances,
};
use negham_core::TripartiteGeometry;

#[derive(Parser, Debug)]
#[command(name = "negham", version, about = "Negativity Hamiltonian sweeps after a fermionic quench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quasiparticle predictions over the time grid.
    Predict(ExperimentArgs),
    /// Exact Gaussian computation over the time grid (dimer state).
    Exact(ExperimentArgs),
    /// Runs both methods and checks their agreement.
    Compare(CompareArgs),
    /// Pair-algebra and dense-oracle identity suites.
    Oracle(OracleArgs),
    /// Writes the correlation, entanglement or negativity matrix at one time.
    DumpMatrix(DumpArgs),
}

#[derive(Args, Debug, Clone)]
struct ExperimentArgs {
    /// Config file (`[section]` headers with `key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    state: Option<StateChoice>,
    /// Sets both interval lengths.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    l1: Option<usize>,
    #[arg(long)]
    l2: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    tmin: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Renyi indices, comma separated.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u32>>,
    /// Flux values for charged moments, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<f64>>,
    #[arg(long)]
    kgrid: Option<usize>,
    #[arg(long)]
    cutoff: Option<f64>,
    /// Largest doubled matrix dimension the exact engine may build.
    #[arg(long)]
    ceiling: Option<usize>,
    #[arg(long)]
    exact_method: Option<ExactMethod>,
    /// Output path, `-` for stdout.
    #[arg(long, short)]
    output: Option<String>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Directory for matrix dumps of the exact run.
    #[arg(long)]
    dump_dir: Option<String>,
    /// Worker threads; 1 gives a serial run, 0 the available parallelism.
    #[arg(long, env = "NEGHAM_THREADS")]
    workers: Option<usize>,
}

impl ExperimentArgs {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::parse(&std::fs::read_to_string(path)?)?,
            None => ExperimentConfig::default(),
        };
        if let Some(v) = self.state {
            cfg.state = v;
        }
        if let Some(v) = self.l {
            cfg.l1 = v;
            cfg.l2 = v;
        }
        if let Some(v) = self.l1 {
            cfg.l1 = v;
        }
        if let Some(v) = self.l2 {
            cfg.l2 = v;
        }
        if let Some(v) = self.d {
            cfg.d = v;
        }
        if let Some(v) = self.tmin {
            cfg.t_min = v;
        }
        if let Some(v) = self.tmax {
            cfg.t_max = v;
        }
        if let Some(v) = self.steps {
            cfg.steps = v;
        }
        if let Some(v) = &self.alpha {
            cfg.alphas = v.clone();
        }
        if let Some(v) = &self.lambda {
            cfg.lambdas = v.clone();
        }
        if let Some(v) = self.kgrid {
            cfg.kgrid = v;
        }
        if let Some(v) = self.cutoff {
            cfg.cutoff = v;
        }
        if let Some(v) = self.ceiling {
            cfg.ceiling = v;
        }
        if let Some(v) = self.exact_method {
            cfg.exact_method = v;
        }
        if let Some(v) = &self.output {
            cfg.output = v.clone();
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = &self.dump_dir {
            cfg.dump_dir = Some(v.clone());
        }
        if let Some(v) = self.workers {
            cfg.workers = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    experiment: ExperimentArgs,
    /// Allowed deviation as a fraction of the exact curve's peak.
    #[arg(long, default_value_t = Tolerances::default().relative)]
    rel_tol: f64,
    /// Floor on the allowed deviation.
    #[arg(long, default_value_t = Tolerances::default().absolute)]
    abs_tol: f64,
    /// Machine-readable JSON report path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Points per axis of the (n, phi) grid.
    #[arg(long, default_value_t = 20)]
    points: usize,
    /// Largest l1 + l2 in the dense sweep.
    #[arg(long, default_value_t = 8)]
    max_modes: usize,
    /// Largest separation in the dense sweep.
    #[arg(long, default_value_t = 3)]
    max_d: usize,
    /// Machine-readable JSON report path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DumpArgs {
    /// correlation, entanglement or negativity.
    #[arg(long, default_value = "negativity")]
    matrix: MatrixKind,
    #[arg(long)]
    l1: usize,
    #[arg(long)]
    l2: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = gaussian_engine::DEFAULT_CUTOFF)]
    cutoff: f64,
    #[arg(long, short, default_value = "-")]
    output: String,
}

fn open_output(path: &str) -> Result<Box<dyn Write>> {
    Ok(if path == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(path)?))
    })
}

fn emit(cfg: &ExperimentConfig, rows: &[harness_cli::ResultRow]) -> Result<()> {
    let mut out = open_output(&cfg.output)?;
    write_rows(&mut out, rows, cfg.format)?;
    out.flush()?;
    Ok(())
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Predict(args) => {
            let cfg = args.resolve()?;
            emit(&cfg, &predict_rows(&cfg)?)
        }
        Command::Exact(args) => {
            let cfg = args.resolve()?;
            emit(&cfg, &exact_rows(&cfg)?)
        }
        Command::Compare(args) => {
            let cfg = args.experiment.resolve()?;
            let tol = Tolerances {
                relative: args.rel_tol,
                absolute: args.abs_tol,
            };
            let report = compare(&cfg, tol)?;
            if let Some(path) = &args.report {
                write_json(path, &report)?;
            } else if cfg.format == OutputFormat::Json {
                serde_json::to_writer_pretty(io::stdout().lock(), &report)?;
                println!();
            }
            eprint!("{}", report.summary());
            if report.passed {
                Ok(())
            } else {
                Err(HarnessError::Tolerance("qp and exact curves disagree".into()))
            }
        }
        Command::Oracle(args) => {
            let report = run_oracle(args.points, args.max_modes, args.max_d)?;
            if let Some(path) = &args.report {
                write_json(path, &report)?;
            }
            print!("{}", report.summary());
            if report.passed {
                Ok(())
            } else {
                Err(HarnessError::Tolerance(format!(
                    "{} oracle identities violated",
                    report.failures()
                )))
            }
        }
        Command::DumpMatrix(args) => {
            let g = TripartiteGeometry::new(args.l1, args.l2, args.d)?;
            let mut out = open_output(&args.output)?;
            dump_matrix(&mut out, args.matrix, &g, args.t, args.cutoff)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
