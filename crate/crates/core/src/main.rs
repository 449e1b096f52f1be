use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use micropolar::harness::{self, RunConfig, Selector, SweepPlan};
use micropolar::parallel;

#[derive(Parser)]
#[command(name = "micropolar", version, about = "2D micropolar Rayleigh–Bénard solver and estimate laboratory")]
struct Cli {
    /// Print the configuration schema with defaults and exit.
    #[arg(long, global = true)]
    help_config: bool,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Override a key, e.g. `--set physics.beta=0.8`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Output directory (overrides `output.dir`).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed of the random initial data (overrides `init.seed`).
    #[arg(long)]
    seed: Option<u64>,
}

impl ConfigArgs {
    fn load(&self) -> micropolar::Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        for o in &self.overrides {
            c.apply_override(o)?;
        }
        if let Some(out) = &self.out {
            c.output_dir = out.clone();
        }
        if let Some(seed) = self.seed {
            c.init.seed = seed;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one trajectory and write its artifacts.
    Run(ConfigArgs),
    /// Run one trajectory per value of a configuration key.
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
        /// Key to vary, e.g. `physics.beta`.
        #[arg(long)]
        axis: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
    },
    /// Run verification checks and print a JSONL report.
    Verify {
        /// trivial | lemmas | solver | all
        #[arg(default_value = "all")]
        selector: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Temporal and spatial convergence study; prints JSON.
    Convergence(ConfigArgs),
    /// Continue a run from a checkpoint to `time.t_end`.
    Resume {
        #[command(flatten)]
        config: ConfigArgs,
        /// Checkpoint written by a previous run.
        #[arg(long)]
        checkpoint: PathBuf,
    },
}

fn execute(command: Command, workers: usize) -> micropolar::Result<u8> {
    match command {
        Command::Run(args) => {
            let c = args.load()?;
            let s = parallel::with_workers(workers, || harness::run(&c))?;
            println!("{}: {} at t = {} after {} steps", c.output_dir.display(), s.outcome.label(), s.t_final, s.steps);
            Ok(s.exit_code as u8)
        }
        Command::Sweep { config, axis, values } => {
            let plan = SweepPlan { base: config.load()?, axis, values, workers };
            let rows = harness::sweep(&plan)?;
            print!("{}", harness::summary_csv(&rows));
            Ok(if rows.iter().any(|r| r.error.is_some()) { 1 } else { 0 })
        }
        Command::Verify { selector, out } => {
            let selector: Selector = selector.parse()?;
            let records = parallel::with_workers(workers, || match out {
                Some(path) => harness::verify(selector, &mut BufWriter::new(File::create(path)?)),
                None => harness::verify(selector, &mut io::stdout().lock()),
            })?;
            let failed = records.iter().filter(|r| !r.passed()).count();
            eprintln!("verify {selector}: {} checks, {failed} failed", records.len());
            Ok(if failed > 0 { 1 } else { 0 })
        }
        Command::Convergence(args) => {
            let c = args.load()?;
            let report = parallel::with_workers(workers, || harness::convergence(&c))?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(0)
        }
        Command::Resume { config, checkpoint } => {
            let c = config.load()?;
            let s = parallel::with_workers(workers, || harness::resume(&c, &checkpoint))?;
            println!("{}: {} at t = {} after {} steps", c.output_dir.display(), s.outcome.label(), s.t_final, s.steps);
            Ok(s.exit_code as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.help_config {
        print!("{}", RunConfig::help_text());
        let _ = io::stdout().flush();
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("no subcommand given; see --help");
        return ExitCode::from(1);
    };
    match execute(command, cli.workers) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
