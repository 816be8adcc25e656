//! Minimum set cover heuristics built around wave-function-collapse set
//! covering (WFC-SC).
//!
//! * [`wfc`]: the observe / propagate / collapse solver.
//! * [`hillclimb`]: tunes the entropy exponent of the scored observe over
//!   repeated WFC runs.
//! * [`baselines`]: greedy, big greedy and tabu search, plus the
//!   hill-climb + tabu pipeline.
//! * [`oracle`]: exact solvers for small instances.
//! * [`orlib`]: OR-Library `scp` file parsing and solution verification.
//! * [`bench`]: repeated, timed runs and result tables.

pub mod baselines;
pub mod bench;
mod error;
pub mod generate;
pub mod hillclimb;
pub mod instance;
pub mod oracle;
pub mod orlib;
pub mod rng;
pub mod wfc;

pub use error::{Error, Result};
pub use instance::{worked_example, Cover, ElemId, Instance, Normalization, SetId};
pub use rng::TieBreak;
