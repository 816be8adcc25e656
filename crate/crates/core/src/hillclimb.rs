//! Hill climbing over the entropy exponent of the scored observe.
//!
//! Each iteration runs WFC from scratch with the current exponent. If the
//! answer shrank compared to the previous iteration the exponent keeps moving
//! the same way, otherwise the direction flips. The step is `T * exp` and the
//! temperature `T` decays by 1% per iteration.

use crate::error::{Error, Result};
use crate::instance::{Cover, Instance};
use crate::rng::{derive_seed, TieBreak};
use crate::wfc::{wfc_solve, WfcParams, DEFAULT_CONFLICT_EXPONENT};

pub const TEMPERATURE_DECAY: f64 = 0.99;

/// Seed stream of the `exp = 1` baseline run; iteration `i` uses stream `i`.
const BASELINE_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillClimbParams {
    pub iterations: usize,
    pub exp_init: f64,
    pub temperature: f64,
    pub c: f64,
    pub seed: u64,
    pub tie_break: TieBreak,
}

impl Default for HillClimbParams {
    fn default() -> Self {
        Self {
            iterations: 100,
            exp_init: 1.0,
            temperature: 0.1,
            c: DEFAULT_CONFLICT_EXPONENT,
            seed: 0,
            tie_break: TieBreak::Random,
        }
    }
}

impl HillClimbParams {
    fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "temperature must be finite and > 0, got {}",
                self.temperature
            )));
        }
        if !self.exp_init.is_finite() {
            return Err(Error::InvalidParam(format!(
                "initial exponent must be finite, got {}",
                self.exp_init
            )));
        }
        Ok(())
    }

    fn wfc(&self, stream: u64, exp: f64) -> WfcParams {
        WfcParams::scored(derive_seed(self.seed, stream), exp, self.c).with_tie_break(self.tie_break)
    }
}

/// Picks the conflicts exponent for instances whose name starts with a prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentRule {
    pub prefix: String,
    pub c: f64,
}

/// `c = 0.7` for the scp6x family.
pub fn default_exponent_rules() -> Vec<ExponentRule> {
    vec![ExponentRule {
        prefix: "scp6".to_owned(),
        c: 0.7,
    }]
}

/// First matching rule's `c`, else `fallback`.
pub fn conflict_exponent_for(instance_name: &str, rules: &[ExponentRule], fallback: f64) -> f64 {
    rules
        .iter()
        .find(|rule| instance_name.starts_with(&rule.prefix))
        .map_or(fallback, |rule| rule.c)
}

/// State at the start of one hill-climbing iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillClimbStep {
    pub exp: f64,
    pub temperature: f64,
    /// Size of the cover this iteration produced.
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct HillClimbOutcome {
    pub best: Cover,
    /// Size of the `exp = 1` run used to initialise `best`.
    pub baseline_size: usize,
    pub steps: Vec<HillClimbStep>,
    pub final_temperature: f64,
    pub final_exp: f64,
}

pub fn hill_climb(instance: &Instance, params: &HillClimbParams) -> Result<Cover> {
    hill_climb_traced(instance, params).map(|outcome| outcome.best)
}

pub fn hill_climb_traced(instance: &Instance, params: &HillClimbParams) -> Result<HillClimbOutcome> {
    params.validate()?;
    let mut best = wfc_solve(instance, &params.wfc(BASELINE_STREAM, 1.0))?;
    let baseline_size = best.size();
    let mut prev_size = baseline_size;
    let mut exp = params.exp_init;
    let mut temperature = params.temperature;
    let mut add = 0.0_f64;
    let mut steps = Vec::with_capacity(params.iterations);

    for i in 0..params.iterations {
        let s = wfc_solve(instance, &params.wfc(i as u64, exp))?;
        steps.push(HillClimbStep {
            exp,
            temperature,
            size: s.size(),
        });
        let improved = prev_size > s.size();
        // keep direction on improvement, flip otherwise; add == 0 counts as "not > 0"
        add = if improved == (add > 0.0) {
            temperature * exp
        } else {
            -temperature * exp
        };
        prev_size = s.size();
        if improved && best.size() > s.size() {
            best = s;
        }
        temperature *= TEMPERATURE_DECAY;
        exp += add;
    }

    Ok(HillClimbOutcome {
        best,
        baseline_size,
        steps,
        final_temperature: temperature,
        final_exp: exp,
    })
}
