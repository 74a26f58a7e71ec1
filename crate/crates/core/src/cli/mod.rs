//! The `qpagerank` command line.
//!
//! Every command resolves a [`RunConfig`] from built-in defaults, an optional
//! `--config` file of `key = value` lines and then the flags, writes it to
//! `run_config.json` in the output directory and runs inside a thread pool of
//! `--jobs` workers. Results are assembled in seed and grid order, so the
//! worker count never changes the bytes written.

mod commands;
mod config;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use commands::Output;
pub use config::{
    parse_config_file, Command, FamilyKind, Mode, RunConfig, DEFAULT_OUTPUT_ROOT, OUTPUT_ROOT_ENV,
};

use crate::error::Error;
use crate::report::to_json;

/// An error together with the stage of the command that raised it.
#[derive(Debug)]
pub struct Failure {
    pub stage: &'static str,
    pub error: Error,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.error)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        self.error.exit_code()
    }
}

trait Staged<T> {
    fn at(self, stage: &'static str) -> Result<T, Failure>;
}

impl<T> Staged<T> for crate::error::Result<T> {
    fn at(self, stage: &'static str) -> Result<T, Failure> {
        self.map_err(|error| Failure { stage, error })
    }
}

#[derive(Parser, Debug)]
#[command(name = "qpagerank", version, about = "Classical and quantum PageRank experiments")]
pub struct Cli {
    /// File of `key = value` settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory [default: $QPR_OUTPUT_ROOT or ./qpr-output]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Generate a graph and write edge-list, Pajek and degree files.
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Rank one graph with both algorithms.
    Rank {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        /// Also write the dense Google matrix.
        #[arg(long)]
        export_matrix: bool,
        /// Also write the instantaneous quantum distribution for every t.
        #[arg(long)]
        trajectory: bool,
    },
    /// Scaling of the inverse participation ratio with graph size.
    Ipr {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        /// Comma-separated graph sizes.
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        r: Option<u32>,
        /// Independent size scans, seeds seed..seed+ensemble.
        #[arg(long)]
        ensemble: Option<usize>,
    },
    /// Fidelity and distance between rankings over a damping grid.
    Stability {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long, value_parser = ["coarse", "fine"])]
        grid: Option<String>,
        /// Reference damping of the one-dimensional sweep.
        #[arg(long)]
        reference_alpha: Option<f64>,
    },
    /// Power-law fits of the sorted importances.
    Powerlaw {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long)]
        ensemble: Option<usize>,
        /// First rank of the fit (1-based).
        #[arg(long)]
        i_min: Option<usize>,
        /// Last rank of the fit.
        #[arg(long)]
        i_max: Option<usize>,
    },
    /// Ranking changes under removal of the top hubs.
    Attack {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long)]
        removals: Option<usize>,
        #[arg(long)]
        ensemble: Option<usize>,
        #[arg(long, value_parser = ["initial", "adaptive"])]
        selection: Option<String>,
    },
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Pajek `.net` or edge-list file instead of a generator.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_parser = ["sf", "er", "hier3", "outerplanar"])]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability of the er family.
    #[arg(long)]
    p: Option<f64>,
    /// Generation of the hierarchical families.
    #[arg(long = "gen")]
    generation: Option<u32>,
    /// Keep self-loops produced by the sf generator.
    #[arg(long)]
    self_loops: bool,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct AlgoArgs {
    #[arg(long)]
    alpha: Option<f64>,
    /// Averaging horizon of the quantum walk.
    #[arg(long = "T", alias = "horizon")]
    horizon: Option<usize>,
    #[arg(long, value_parser = ["classical", "quantum", "both"])]
    mode: Option<String>,
    /// Power-iteration tolerance on the L1 residual.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
}

type Pairs = Vec<(&'static str, String)>;

fn push<T: ToString>(out: &mut Pairs, key: &'static str, v: &Option<T>) {
    if let Some(v) = v {
        out.push((key, v.to_string()));
    }
}

impl GraphArgs {
    fn pairs(&self, out: &mut Pairs) {
        push(out, "input", &self.input.as_ref().map(|p| p.display().to_string()));
        push(out, "family", &self.family);
        push(out, "n", &self.n);
        push(out, "p", &self.p);
        push(out, "generation", &self.generation);
        if self.self_loops {
            out.push(("self_loops", "true".into()));
        }
        push(out, "seed", &self.seed);
    }
}

impl AlgoArgs {
    fn pairs(&self, out: &mut Pairs) {
        push(out, "alpha", &self.alpha);
        push(out, "T", &self.horizon);
        push(out, "mode", &self.mode);
        push(out, "tol", &self.tol);
        push(out, "max_iter", &self.max_iter);
    }
}

impl Sub {
    fn command(&self) -> Command {
        match self {
            Sub::Generate { .. } => Command::Generate,
            Sub::Rank { .. } => Command::Rank,
            Sub::Ipr { .. } => Command::Ipr,
            Sub::Stability { .. } => Command::Stability,
            Sub::Powerlaw { .. } => Command::Powerlaw,
            Sub::Attack { .. } => Command::Attack,
        }
    }

    fn pairs(&self) -> Pairs {
        let mut out = Pairs::new();
        match self {
            Sub::Generate { graph } => graph.pairs(&mut out),
            Sub::Rank {
                graph,
                algo,
                export_matrix,
                trajectory,
            } => {
                graph.pairs(&mut out);
                algo.pairs(&mut out);
                if *export_matrix {
                    out.push(("export_matrix", "true".into()));
                }
                if *trajectory {
                    out.push(("trajectory", "true".into()));
                }
            }
            Sub::Ipr {
                graph,
                algo,
                sizes,
                r,
                ensemble,
            } => {
                graph.pairs(&mut out);
                algo.pairs(&mut out);
                push(&mut out, "sizes", sizes);
                push(&mut out, "r", r);
                push(&mut out, "ensemble", ensemble);
            }
            Sub::Stability {
                graph,
                algo,
                grid,
                reference_alpha,
            } => {
                graph.pairs(&mut out);
                algo.pairs(&mut out);
                push(&mut out, "grid", grid);
                push(&mut out, "reference_alpha", reference_alpha);
            }
            Sub::Powerlaw {
                graph,
                algo,
                ensemble,
                i_min,
                i_max,
            } => {
                graph.pairs(&mut out);
                algo.pairs(&mut out);
                push(&mut out, "ensemble", ensemble);
                push(&mut out, "i_min", i_min);
                push(&mut out, "i_max", i_max);
            }
            Sub::Attack {
                graph,
                algo,
                removals,
                ensemble,
                selection,
            } => {
                graph.pairs(&mut out);
                algo.pairs(&mut out);
                push(&mut out, "removals", removals);
                push(&mut out, "ensemble", ensemble);
                push(&mut out, "selection", selection);
            }
        }
        out
    }
}

impl Cli {
    /// Defaults, then the config file, then the flags.
    pub fn resolve(&self) -> Result<RunConfig, Failure> {
        let mut cfg = RunConfig::defaults(self.command.command());
        if let Some(path) = &self.config {
            for (k, v) in config::read_config_file(path).at("read config")? {
                cfg.set(&k, &v).at("read config")?;
            }
        }
        for (k, v) in self.command.pairs() {
            cfg.set(k, &v).at("parse flags")?;
        }
        if let Some(out) = &self.out {
            cfg.output = Some(out.clone());
        }
        cfg.validate().at("validate configuration")?;
        Ok(cfg)
    }
}

/// Runs an already resolved configuration. Returns the files written.
pub fn execute(cfg: &RunConfig, jobs: Option<usize>) -> Result<Vec<PathBuf>, Failure> {
    let mut out = Output::new(cfg.output_dir());
    let echo = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg,
    });
    out.raw("run_config.json", &to_json(&echo).at("write output")?)
        .at("write output")?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::param(format!("cannot start worker pool: {e}")))
        .at("start workers")?;
    pool.install(|| match cfg.command {
        Command::Generate => commands::cmd_generate(cfg, &mut out),
        Command::Rank => commands::cmd_rank(cfg, &mut out),
        Command::Ipr => commands::cmd_ipr(cfg, &mut out),
        Command::Stability => commands::cmd_stability(cfg, &mut out),
        Command::Powerlaw => commands::cmd_powerlaw(cfg, &mut out),
        Command::Attack => commands::cmd_attack(cfg, &mut out),
    })?;
    Ok(out.written().to_vec())
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let name = cli.command.command().name();
    let result = cli.resolve().and_then(|cfg| execute(&cfg, cli.jobs));
    match result {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            0
        }
        Err(fail) => {
            eprintln!("qpagerank {name}: {fail}");
            fail.exit_code()
        }
    }
}
