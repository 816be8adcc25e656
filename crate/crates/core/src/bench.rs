//! Repeated, timed, verified solver runs over instance files, and the
//! CSV / markdown tables summarising them.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{big_greedy, greedy, tabu_search, wfc_hc_tabu, TabuParams};
use crate::error::{Error, Result};
use crate::hillclimb::{conflict_exponent_for, default_exponent_rules, hill_climb, ExponentRule, HillClimbParams};
use crate::instance::{Cover, Instance};
use crate::orlib::{read_instance, verify_solution, OrlibFormat};
use crate::rng::{derive_seed, TieBreak};
use crate::wfc::{wfc_solve, WfcParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Greedy,
    BigGreedy,
    Tabu,
    Wfc,
    WfcHc,
    WfcHcTabu,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Greedy,
        Algorithm::BigGreedy,
        Algorithm::Tabu,
        Algorithm::Wfc,
        Algorithm::WfcHc,
        Algorithm::WfcHcTabu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::BigGreedy => "biggreedy",
            Algorithm::Tabu => "tabu",
            Algorithm::Wfc => "wfc",
            Algorithm::WfcHc => "wfc-hc",
            Algorithm::WfcHcTabu => "wfc-hc-tabu",
        }
    }

    pub fn is_randomized(self) -> bool {
        !matches!(self, Algorithm::Greedy | Algorithm::BigGreedy)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParam(format!("unknown algorithm {s:?}")))
    }
}

/// Parameters for every algorithm. Seeds inside `tabu` and `hill_climb` are
/// replaced per run.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub big_greedy_step: usize,
    pub tabu: TabuParams,
    pub hill_climb: HillClimbParams,
    /// Explicit conflicts exponent; wins over `exponent_rules`.
    pub conflict_exponent: Option<f64>,
    pub exponent_rules: Vec<ExponentRule>,
    pub tie_break: TieBreak,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            big_greedy_step: 2,
            tabu: TabuParams::default(),
            hill_climb: HillClimbParams::default(),
            conflict_exponent: None,
            exponent_rules: default_exponent_rules(),
            tie_break: TieBreak::Random,
        }
    }
}

impl SolverConfig {
    fn hill_climb_for(&self, instance: &Instance, seed: u64) -> HillClimbParams {
        let c = self
            .conflict_exponent
            .unwrap_or_else(|| conflict_exponent_for(instance.name(), &self.exponent_rules, self.hill_climb.c));
        HillClimbParams {
            c,
            seed,
            tie_break: self.tie_break,
            ..self.hill_climb
        }
    }

    fn tabu_with(&self, seed: u64) -> TabuParams {
        TabuParams {
            seed,
            tie_break: self.tie_break,
            ..self.tabu
        }
    }
}

/// Runs one algorithm once.
pub fn solve(instance: &Instance, algorithm: Algorithm, config: &SolverConfig, seed: u64) -> Result<Cover> {
    match algorithm {
        Algorithm::Greedy => Ok(greedy(instance)),
        Algorithm::BigGreedy => big_greedy(instance, config.big_greedy_step),
        Algorithm::Tabu => Ok(tabu_search(instance, &greedy(instance), &config.tabu_with(seed))?.best),
        Algorithm::Wfc => wfc_solve(instance, &WfcParams::plain(seed).with_tie_break(config.tie_break)),
        Algorithm::WfcHc => hill_climb(instance, &config.hill_climb_for(instance, seed)),
        Algorithm::WfcHcTabu => wfc_hc_tabu(
            instance,
            &config.hill_climb_for(instance, derive_seed(seed, 0)),
            &config.tabu_with(derive_seed(seed, 1)),
        ),
    }
}

/// One (instance, algorithm) result row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub algorithm: String,
    /// Best cover size over the runs.
    pub k: usize,
    pub mean_k: f64,
    pub best_k: usize,
    pub runs: usize,
    pub mean_time_ns: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub files: Vec<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub solver: SolverConfig,
    pub runs: usize,
    pub seed: u64,
    pub format: Option<OrlibFormat>,
    /// Benchmark files on worker threads. Runs on one file stay sequential.
    pub parallel: bool,
}

#[derive(Debug)]
pub struct FileFailure {
    pub path: PathBuf,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub failures: Vec<FileFailure>,
}

/// Times `runs` seeded repetitions of one algorithm after an untimed
/// warm-up. Every cover is verified; an infeasible one is an error.
pub fn bench_instance(
    instance: &Instance,
    algorithm: Algorithm,
    config: &SolverConfig,
    runs: usize,
    seed: u64,
) -> Result<BenchRecord> {
    if runs == 0 {
        return Err(Error::InvalidParam("runs must be >= 1".into()));
    }
    solve(instance, algorithm, config, derive_seed(seed, 0))?;
    let mut sizes = Vec::with_capacity(runs);
    let mut total_ns = 0u128;
    for run in 0..runs {
        let run_seed = derive_seed(seed, run as u64);
        let start = Instant::now();
        let cover = solve(instance, algorithm, config, run_seed)?;
        total_ns += start.elapsed().as_nanos().max(1);
        let report = verify_solution(instance, cover.selected());
        if !report.feasible || !report.duplicates.is_empty() {
            return Err(Error::Infeasible {
                algorithm: algorithm.to_string(),
                instance: instance.name().to_owned(),
            });
        }
        sizes.push(cover.size());
    }
    let best = *sizes.iter().min().expect("runs >= 1");
    Ok(BenchRecord {
        instance: instance.name().to_owned(),
        algorithm: algorithm.to_string(),
        k: best,
        mean_k: sizes.iter().sum::<usize>() as f64 / runs as f64,
        best_k: best,
        runs,
        mean_time_ns: total_ns as f64 / runs as f64,
        seed,
    })
}

fn bench_file(path: &Path, config: &BenchConfig) -> Result<Result<Vec<BenchRecord>, FileFailure>> {
    let instance = match read_instance(path, config.format) {
        Ok(instance) => instance,
        Err(error) => {
            return Ok(Err(FileFailure {
                path: path.to_owned(),
                error,
            }))
        }
    };
    let records = config
        .algorithms
        .iter()
        .map(|&algo| bench_instance(&instance, algo, &config.solver, config.runs, config.seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ok(records))
}

/// Benchmarks every file with every algorithm. Unreadable files are
/// collected in [`BenchReport::failures`]; solver errors abort the run.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    let per_file: Vec<_> = if config.parallel {
        config.files.par_iter().map(|p| bench_file(p, config)).collect()
    } else {
        config.files.iter().map(|p| bench_file(p, config)).collect()
    };
    let mut report = BenchReport::default();
    for outcome in per_file {
        match outcome? {
            Ok(records) => report.records.extend(records),
            Err(failure) => report.failures.push(failure),
        }
    }
    Ok(report)
}

/// Regular files in `dir`, sorted by name.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

pub fn emit_table(records: &[BenchRecord], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Csv => emit_csv(records),
        TableFormat::Markdown => Ok(emit_markdown(records)),
    }
}

fn emit_csv(records: &[BenchRecord]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in records {
        writer.serialize(record)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

fn first_seen<'a>(items: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    let mut seen: Vec<&str> = Vec::new();
    for item in items {
        if !seen.contains(&item) {
            seen.push(item);
        }
    }
    seen
}

/// One row per instance; each algorithm contributes `k` and mean time, and
/// tabu also its best. For tabu `k` is the mean over runs.
fn emit_markdown(records: &[BenchRecord]) -> String {
    let instances = first_seen(records.iter().map(|r| r.instance.as_str()));
    let algorithms = first_seen(records.iter().map(|r| r.algorithm.as_str()));
    let is_tabu = |a: &str| a == Algorithm::Tabu.name();

    let mut header = vec!["Test Set".to_owned()];
    for &a in &algorithms {
        header.push(format!("{a} k"));
        if is_tabu(a) {
            header.push(format!("{a} Best"));
        }
        header.push(format!("{a} Mean Time (ms)"));
    }
    let mut out = String::new();
    let row = |out: &mut String, cells: &[String]| {
        writeln!(out, "| {} |", cells.join(" | ")).expect("writing to a String");
    };
    row(&mut out, &header);
    row(&mut out, &vec!["---".to_owned(); header.len()]);

    for &inst in &instances {
        let mut cells = vec![inst.to_owned()];
        for &a in &algorithms {
            let found = records.iter().find(|r| r.instance == inst && r.algorithm == a);
            let width = if is_tabu(a) { 3 } else { 2 };
            match found {
                None => cells.extend(std::iter::repeat_n("-".to_owned(), width)),
                Some(r) => {
                    if is_tabu(a) {
                        cells.push(format!("{:.2}", r.mean_k));
                        cells.push(r.best_k.to_string());
                    } else {
                        cells.push(r.k.to_string());
                    }
                    cells.push(format!("{:.3}", r.mean_time_ns / 1e6));
                }
            }
        }
        row(&mut out, &cells);
    }
    out
}
