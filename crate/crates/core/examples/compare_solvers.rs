//! Runs every solver on one instance.
//!
//! ```text
//! cargo run --release --example compare_solvers -- path/to/scp41.txt
//! ```
//!
//! Without an argument a random 200 x 1000 instance at 2% density is used.

use std::time::Instant;

use wfc_setcover::bench::{solve, Algorithm, SolverConfig};
use wfc_setcover::generate::random_instance;
use wfc_setcover::orlib::{read_instance, verify_solution};

fn main() -> wfc_setcover::Result<()> {
    let instance = match std::env::args().nth(1) {
        Some(path) => read_instance(path.as_ref(), None)?,
        None => random_instance(200, 1000, 0.02, 41, "random-200x1000"),
    };
    println!(
        "{}: {} elements, {} sets, {} nonzeros",
        instance.name(),
        instance.universe_size(),
        instance.num_sets(),
        instance.nonzeros()
    );
    let config = SolverConfig::default();
    for algorithm in Algorithm::ALL {
        let start = Instant::now();
        let cover = solve(&instance, algorithm, &config, 7)?;
        let elapsed = start.elapsed();
        assert!(verify_solution(&instance, cover.selected()).feasible);
        println!(
            "{algorithm:>12}: k = {:>4}  {:>10.3} ms",
            cover.size(),
            elapsed.as_secs_f64() * 1e3
        );
    }
    Ok(())
}
