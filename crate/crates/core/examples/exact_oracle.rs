//! Compares heuristic covers with the exact optimum on small random instances.

use wfc_setcover::baselines::{big_greedy, greedy};
use wfc_setcover::generate::small_instance;
use wfc_setcover::hillclimb::{hill_climb, HillClimbParams};
use wfc_setcover::oracle::{exact_min_cover, ExactOutcome, OracleLimits};
use wfc_setcover::wfc::{wfc_solve, WfcParams};

fn main() -> wfc_setcover::Result<()> {
    println!(
        "{:>6} {:>5} {:>6} {:>9} {:>4} {:>7}",
        "seed", "opt", "greedy", "biggreedy", "wfc", "wfc-hc"
    );
    for seed in 0..12 {
        let instance = small_instance(30, 40, 0.12, seed);
        let opt = match exact_min_cover(&instance, &OracleLimits::default())? {
            ExactOutcome::Optimal(cover) => cover.size().to_string(),
            ExactOutcome::Unknown { nodes } => format!("?{nodes}"),
        };
        let hc = hill_climb(
            &instance,
            &HillClimbParams {
                iterations: 30,
                seed,
                ..Default::default()
            },
        )?;
        println!(
            "{seed:>6} {opt:>5} {:>6} {:>9} {:>4} {:>7}",
            greedy(&instance).size(),
            big_greedy(&instance, 2)?.size(),
            wfc_solve(&instance, &WfcParams::plain(seed))?.size(),
            hc.size()
        );
    }
    Ok(())
}
