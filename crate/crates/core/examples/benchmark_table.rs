//! Benchmarks a directory of scp files and prints CSV and markdown tables.
//!
//! ```text
//! cargo run --release --example benchmark_table -- path/to/orlib [runs]
//! ```
//!
//! Without a directory, three random instances are written to a temporary
//! directory first.

use std::path::PathBuf;

use wfc_setcover::bench::{
    emit_table, instance_files, run_benchmark, Algorithm, BenchConfig, SolverConfig, TableFormat,
};
use wfc_setcover::generate::random_instance;
use wfc_setcover::orlib::{write_orlib, OrlibFormat};

fn main() -> wfc_setcover::Result<()> {
    let mut args = std::env::args().skip(1);
    let scratch = std::env::temp_dir().join("wfc-sc-benchmark-table");
    let dir = match args.next() {
        Some(dir) => PathBuf::from(dir),
        None => {
            std::fs::create_dir_all(&scratch)?;
            for (i, cols) in [300, 500, 700].into_iter().enumerate() {
                let instance = random_instance(100, cols, 0.03, i as u64, "random");
                std::fs::write(
                    scratch.join(format!("rand{i}.txt")),
                    write_orlib(&instance, OrlibFormat::RowMajor),
                )?;
            }
            scratch
        }
    };
    let runs = args.next().and_then(|n| n.parse().ok()).unwrap_or(5);
    let config = BenchConfig {
        files: instance_files(&dir)?,
        algorithms: vec![
            Algorithm::Greedy,
            Algorithm::BigGreedy,
            Algorithm::Tabu,
            Algorithm::WfcHc,
        ],
        solver: SolverConfig::default(),
        runs,
        seed: 42,
        format: None,
        parallel: false,
    };
    let report = run_benchmark(&config)?;
    for failure in &report.failures {
        eprintln!("skipped {}: {}", failure.path.display(), failure.error);
    }
    print!("{}", emit_table(&report.records, TableFormat::Csv)?);
    println!();
    print!("{}", emit_table(&report.records, TableFormat::Markdown)?);
    Ok(())
}
