//! Exact minimum covers for small instances, used as ground truth.

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::baselines::greedy;
use crate::error::{Error, Result};
use crate::instance::{Cover, ElemId, Instance, SetId};

/// Largest instance [`brute_force_min_cover`] accepts.
pub const BRUTE_FORCE_MAX_SETS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_sets: usize,
    pub max_nodes: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_sets: 200,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    /// A minimum-cardinality cover; among minima the lexicographically
    /// smallest sorted identifier list.
    Optimal(Cover),
    /// The node budget ran out before optimality was proven.
    Unknown { nodes: u64 },
}

impl ExactOutcome {
    pub fn optimal(self) -> Option<Cover> {
        match self {
            ExactOutcome::Optimal(cover) => Some(cover),
            ExactOutcome::Unknown { .. } => None,
        }
    }
}

/// Tries subsets by increasing size in lexicographic order; the first cover
/// found is the lexicographically smallest minimum cover.
pub fn brute_force_min_cover(instance: &Instance) -> Result<Cover> {
    let m = instance.num_sets();
    if m > BRUTE_FORCE_MAX_SETS {
        return Err(Error::TooLarge {
            sets: m,
            max: BRUTE_FORCE_MAX_SETS,
        });
    }
    let n = instance.universe_size();
    for k in 1..=m {
        for combo in (0..m).combinations(k) {
            if instance.union_of(&combo).count_ones(..) == n {
                return Ok(Cover::from_distinct(instance.name(), combo));
            }
        }
    }
    unreachable!("the full family covers the universe")
}

struct Search<'a> {
    instance: &'a Instance,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.max_nodes
    }

    fn gain(&self, set: SetId, uncovered: &FixedBitSet) -> usize {
        self.instance.set_bits(set).intersection_count(uncovered)
    }

    fn lower_bound(&self, uncovered: &FixedBitSet, sets: impl Iterator<Item = SetId>) -> Option<usize> {
        let remaining = uncovered.count_ones(..);
        if remaining == 0 {
            return Some(0);
        }
        let best = sets.map(|s| self.gain(s, uncovered)).max().unwrap_or(0);
        (best > 0).then(|| remaining.div_ceil(best))
    }

    /// Uncovered element with the fewest candidate sets.
    fn branching_element(&self, uncovered: &FixedBitSet) -> ElemId {
        uncovered
            .ones()
            .min_by_key(|&x| self.instance.sets_containing(x).len())
            .expect("called with uncovered elements")
    }

    /// Returns false if the node budget ran out.
    fn branch_and_bound(
        &mut self,
        partial: &mut Vec<SetId>,
        uncovered: &FixedBitSet,
        incumbent: &mut Vec<SetId>,
    ) -> bool {
        if !self.tick() {
            return false;
        }
        if uncovered.count_ones(..) == 0 {
            if partial.len() < incumbent.len() {
                incumbent.clone_from(partial);
            }
            return true;
        }
        let Some(bound) = self.lower_bound(uncovered, 0..self.instance.num_sets()) else {
            return true;
        };
        if partial.len() + bound >= incumbent.len() {
            return true;
        }
        let x = self.branching_element(uncovered);
        let mut candidates: Vec<(usize, SetId)> = self
            .instance
            .sets_containing(x)
            .iter()
            .map(|&s| (self.gain(s, uncovered), s))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, s) in candidates {
            let mut rest = uncovered.clone();
            rest.difference_with(self.instance.set_bits(s));
            partial.push(s);
            let finished = self.branch_and_bound(partial, &rest, incumbent);
            partial.pop();
            if !finished {
                return false;
            }
        }
        true
    }

    /// Lexicographically smallest cover of exactly `target` sets, using only
    /// identifiers from `start` upward. `Err(())` on budget exhaustion.
    fn lexicographic(
        &mut self,
        start: SetId,
        target: usize,
        partial: &mut Vec<SetId>,
        uncovered: &FixedBitSet,
    ) -> std::result::Result<bool, ()> {
        if !self.tick() {
            return Err(());
        }
        if uncovered.count_ones(..) == 0 {
            return Ok(partial.len() == target);
        }
        let m = self.instance.num_sets();
        let slots = target - partial.len();
        match self.lower_bound(uncovered, start..m) {
            Some(bound) if bound <= slots => {}
            _ => return Ok(false),
        }
        if uncovered
            .ones()
            .any(|x| self.instance.sets_containing(x).last().is_none_or(|&last| last < start))
        {
            return Ok(false);
        }
        for s in start..m {
            if self.gain(s, uncovered) == 0 {
                continue;
            }
            let mut rest = uncovered.clone();
            rest.difference_with(self.instance.set_bits(s));
            partial.push(s);
            let found = self.lexicographic(s + 1, target, partial, &rest)?;
            if found {
                return Ok(true);
            }
            partial.pop();
        }
        Ok(false)
    }
}

/// Branch and bound on the uncovered element with the fewest candidate sets,
/// with bound `|partial| + ceil(uncovered / best remaining gain)`.
///
/// A second, lexicographic pass picks the canonical optimal cover so results
/// can be compared set for set.
pub fn exact_min_cover(instance: &Instance, limits: &OracleLimits) -> Result<ExactOutcome> {
    if limits.max_sets == 0 || limits.max_nodes == 0 {
        return Err(Error::InvalidParam("oracle limits must be positive".into()));
    }
    if instance.num_sets() > limits.max_sets {
        return Err(Error::TooLarge {
            sets: instance.num_sets(),
            max: limits.max_sets,
        });
    }
    let mut search = Search {
        instance,
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    let mut uncovered = FixedBitSet::with_capacity(instance.universe_size());
    uncovered.insert_range(..);

    let mut incumbent = greedy(instance).sorted();
    if !search.branch_and_bound(&mut Vec::new(), &uncovered, &mut incumbent) {
        return Ok(ExactOutcome::Unknown { nodes: search.nodes });
    }
    let target = incumbent.len();
    let mut canonical = Vec::with_capacity(target);
    match search.lexicographic(0, target, &mut canonical, &uncovered) {
        Ok(true) => Ok(ExactOutcome::Optimal(Cover::from_distinct(instance.name(), canonical))),
        Ok(false) => Err(Error::Contract("no cover of the proven optimal size found".into())),
        Err(()) => Ok(ExactOutcome::Unknown { nodes: search.nodes }),
    }
}
