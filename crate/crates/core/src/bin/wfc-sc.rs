use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wfc_setcover::baselines::TabuParams;
use wfc_setcover::bench::{
    emit_table, instance_files, run_benchmark, solve, Algorithm, BenchConfig, SolverConfig, TableFormat,
};
use wfc_setcover::hillclimb::{default_exponent_rules, HillClimbParams};
use wfc_setcover::oracle::{exact_min_cover, ExactOutcome, OracleLimits};
use wfc_setcover::orlib::{format_solution, parse_solution, read_instance, verify_solution, OrlibFormat};
use wfc_setcover::TieBreak;

#[derive(Parser)]
#[command(
    name = "wfc-sc",
    version,
    about = "Minimum set cover heuristics on OR-Library scp files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "wfc-hc")]
        algo: Algo,
        #[command(flatten)]
        run: RunArgs,
        /// Print the selected column indices
        #[arg(long)]
        print_solution: bool,
    },
    /// Benchmark every file in a directory
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated algorithm list
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "greedy,biggreedy,tabu,wfc-hc"
        )]
        algos: Vec<Algo>,
        /// CSV output path (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print a markdown table to stdout
        #[arg(long)]
        markdown: bool,
        /// Benchmark files on worker threads
        #[arg(long)]
        parallel: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exact minimum cover for small files
    Exact {
        file: PathBuf,
        #[arg(long, default_value_t = OracleLimits::default().max_sets)]
        max_sets: usize,
        #[arg(long, default_value_t = OracleLimits::default().max_nodes)]
        max_nodes: u64,
        #[arg(long)]
        format: Option<OrlibFormat>,
    },
    /// Check a solution file (1-based column indices) against an instance
    Verify {
        file: PathBuf,
        solution: PathBuf,
        #[arg(long)]
        format: Option<OrlibFormat>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Greedy,
    Biggreedy,
    Tabu,
    Wfc,
    WfcHc,
    WfcHcTabu,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Greedy => Algorithm::Greedy,
            Algo::Biggreedy => Algorithm::BigGreedy,
            Algo::Tabu => Algorithm::Tabu,
            Algo::Wfc => Algorithm::Wfc,
            Algo::WfcHc => Algorithm::WfcHc,
            Algo::WfcHcTabu => Algorithm::WfcHcTabu,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, env = "WFC_SC_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 25)]
    runs: usize,
    /// Break final ties by lowest set index instead of randomly
    #[arg(long)]
    deterministic: bool,
    /// Big Greedy step size
    #[arg(long, default_value_t = 2)]
    bg_p: usize,
    /// Tabu list capacity
    #[arg(long, default_value_t = 10)]
    tabu_t: usize,
    /// Tabu iterations
    #[arg(long, default_value_t = 1000)]
    tabu_n: usize,
    /// Hill climbing iterations
    #[arg(long, default_value_t = 100)]
    hc_iters: usize,
    /// Initial entropy exponent
    #[arg(long, default_value_t = 1.0)]
    hc_exp0: f64,
    /// Initial temperature
    #[arg(long, default_value_t = 0.1)]
    hc_temp: f64,
    /// Conflicts exponent (default 0.9, 0.7 for scp6x instances)
    #[arg(long)]
    hc_c: Option<f64>,
    /// Input encoding; detected when absent
    #[arg(long)]
    format: Option<OrlibFormat>,
}

impl RunArgs {
    fn solver_config(&self) -> SolverConfig {
        let tie_break = if self.deterministic {
            TieBreak::LowestIndex
        } else {
            TieBreak::Random
        };
        SolverConfig {
            big_greedy_step: self.bg_p,
            tabu: TabuParams {
                tenure: self.tabu_t,
                iterations: self.tabu_n,
                ..TabuParams::default()
            },
            hill_climb: HillClimbParams {
                iterations: self.hc_iters,
                exp_init: self.hc_exp0,
                temperature: self.hc_temp,
                ..HillClimbParams::default()
            },
            conflict_exponent: self.hc_c,
            exponent_rules: default_exponent_rules(),
            tie_break,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve {
            file,
            algo,
            run,
            print_solution,
        } => {
            let instance = read_instance(&file, run.format)?;
            let config = run.solver_config();
            let algorithm = Algorithm::from(algo);
            let runs = if algorithm.is_randomized() { run.runs.max(1) } else { 1 };
            let mut best = None;
            for r in 0..runs {
                let seed = wfc_setcover::rng::derive_seed(run.seed, r as u64);
                let start = Instant::now();
                let cover = solve(&instance, algorithm, &config, seed)?;
                let elapsed = start.elapsed();
                let report = verify_solution(&instance, cover.selected());
                if !report.feasible {
                    bail!("{algorithm} produced an infeasible cover on {}", instance.name());
                }
                println!("run {r}: k = {} ({:.3} ms)", cover.size(), elapsed.as_secs_f64() * 1e3);
                if best
                    .as_ref()
                    .is_none_or(|b: &wfc_setcover::Cover| cover.size() < b.size())
                {
                    best = Some(cover);
                }
            }
            let best = best.expect("at least one run");
            println!("{} {algorithm}: best k = {}", instance.name(), best.size());
            if print_solution {
                println!("{}", format_solution(&instance, best.selected()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            dir,
            algos,
            out,
            markdown,
            parallel,
            run,
        } => {
            let files = instance_files(&dir).with_context(|| format!("listing {}", dir.display()))?;
            let config = BenchConfig {
                files,
                algorithms: algos.into_iter().map(Algorithm::from).collect(),
                solver: run.solver_config(),
                runs: run.runs,
                seed: run.seed,
                format: run.format,
                parallel,
            };
            let report = run_benchmark(&config)?;
            for failure in &report.failures {
                eprintln!("skipped {}: {}", failure.path.display(), failure.error);
            }
            if report.records.is_empty() {
                bail!("no instance in {} could be benchmarked", dir.display());
            }
            let csv = emit_table(&report.records, TableFormat::Csv)?;
            match &out {
                Some(path) => std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?,
                None if !markdown => print!("{csv}"),
                None => {}
            }
            if markdown {
                print!("{}", emit_table(&report.records, TableFormat::Markdown)?);
            }
            Ok(if report.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Exact {
            file,
            max_sets,
            max_nodes,
            format,
        } => {
            let instance = read_instance(&file, format)?;
            let limits = OracleLimits { max_sets, max_nodes };
            match exact_min_cover(&instance, &limits).with_context(|| {
                format!(
                    "{} is too large for the exact solver; raise --max-sets to try anyway",
                    instance.name()
                )
            })? {
                ExactOutcome::Optimal(cover) => {
                    println!("{}: optimal k = {}", instance.name(), cover.size());
                    println!("{}", format_solution(&instance, cover.selected()));
                    Ok(ExitCode::SUCCESS)
                }
                ExactOutcome::Unknown { nodes } => {
                    println!(
                        "{}: unknown (node budget exhausted after {nodes} nodes)",
                        instance.name()
                    );
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Verify { file, solution, format } => {
            let instance = read_instance(&file, format)?;
            let text = std::fs::read_to_string(&solution).with_context(|| format!("reading {}", solution.display()))?;
            let selection = parse_solution(&text, &instance)?;
            let report = verify_solution(&instance, &selection);
            println!("{report}");
            Ok(if report.feasible {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
