//! Prints the exponent, temperature and cover size for each hill-climbing
//! iteration.
//!
//! ```text
//! cargo run --release --example hill_climb_trace -- [path/to/scp41.txt] [iterations]
//! ```

use wfc_setcover::generate::random_instance;
use wfc_setcover::hillclimb::{conflict_exponent_for, default_exponent_rules, hill_climb_traced, HillClimbParams};
use wfc_setcover::orlib::read_instance;

fn main() -> wfc_setcover::Result<()> {
    let mut args = std::env::args().skip(1);
    let instance = match args.next() {
        Some(path) => read_instance(path.as_ref(), None)?,
        None => random_instance(200, 1000, 0.02, 41, "random-200x1000"),
    };
    let iterations = args.next().and_then(|n| n.parse().ok()).unwrap_or(40);
    let params = HillClimbParams {
        iterations,
        c: conflict_exponent_for(instance.name(), &default_exponent_rules(), 0.9),
        seed: 3,
        ..Default::default()
    };
    let outcome = hill_climb_traced(&instance, &params)?;
    println!(
        "{} with c = {}: baseline k = {}",
        instance.name(),
        params.c,
        outcome.baseline_size
    );
    println!("{:>4} {:>9} {:>11} {:>5}", "iter", "exp", "temperature", "k");
    for (i, step) in outcome.steps.iter().enumerate() {
        println!("{i:>4} {:>9.5} {:>11.6} {:>5}", step.exp, step.temperature, step.size);
    }
    println!("best k = {}", outcome.best.size());
    Ok(())
}
