//! Comparison heuristics and the hill-climb + tabu pipeline.

mod greedy;
mod tabu;

pub use greedy::{big_greedy, greedy};
pub use tabu::{fitness, tabu_search, TabuParams, TabuResult};

use crate::error::Result;
use crate::hillclimb::{hill_climb, HillClimbParams};
use crate::instance::{Cover, Instance};

/// Hill-climbed WFC, refined by tabu search starting from its cover.
pub fn wfc_hc_tabu(instance: &Instance, hc: &HillClimbParams, tabu: &TabuParams) -> Result<Cover> {
    let initial = hill_climb(instance, hc)?;
    Ok(tabu_search(instance, &initial, tabu)?.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::worked_example;

    #[test]
    fn pipeline_on_worked_example() {
        let inst = worked_example();
        let cover = wfc_hc_tabu(&inst, &HillClimbParams::default(), &TabuParams::default()).unwrap();
        assert_eq!(cover.size(), 2);
    }
}
