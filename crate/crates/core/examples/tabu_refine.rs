//! Starts tabu search from a greedy cover and from a WFC + hill-climbing
//! cover, printing each improvement.

use wfc_setcover::baselines::{greedy, tabu_search, TabuParams};
use wfc_setcover::generate::random_instance;
use wfc_setcover::hillclimb::{hill_climb, HillClimbParams};
use wfc_setcover::orlib::read_instance;
use wfc_setcover::Cover;

fn refine(label: &str, instance: &wfc_setcover::Instance, initial: &Cover) -> wfc_setcover::Result<()> {
    let params = TabuParams {
        iterations: 2000,
        seed: 1,
        ..Default::default()
    };
    let result = tabu_search(instance, initial, &params)?;
    println!("{label}: start k = {}", initial.size());
    for (iteration, k) in &result.improvements {
        println!("  iteration {iteration:>5}: k = {k}");
    }
    println!(
        "  best k = {} after {} iterations",
        result.best.size(),
        result.iterations_run
    );
    Ok(())
}

fn main() -> wfc_setcover::Result<()> {
    let instance = match std::env::args().nth(1) {
        Some(path) => read_instance(path.as_ref(), None)?,
        None => random_instance(200, 1000, 0.02, 41, "random-200x1000"),
    };
    refine("greedy", &instance, &greedy(&instance))?;
    let hc = hill_climb(
        &instance,
        &HillClimbParams {
            seed: 1,
            ..Default::default()
        },
    )?;
    refine("wfc + hill climbing", &instance, &hc)
}
