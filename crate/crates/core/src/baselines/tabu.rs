use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::instance::{Cover, Instance, SetId};
use crate::rng::{seeded, SolverRng, TieBreak, TiePicker};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TabuParams {
    /// Tabu list capacity.
    pub tenure: usize,
    pub iterations: usize,
    pub seed: u64,
    pub tie_break: TieBreak,
}

impl Default for TabuParams {
    fn default() -> Self {
        Self {
            tenure: 10,
            iterations: 1000,
            seed: 0,
            tie_break: TieBreak::Random,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabuResult {
    pub best: Cover,
    pub iterations_run: usize,
    /// `(iteration, size)` each time a new best cover was recorded.
    pub improvements: Vec<(usize, usize)>,
}

/// Current selection with per-element cover multiplicities, so evaluating a
/// toggle costs `O(|set|)`.
struct Selection<'a> {
    instance: &'a Instance,
    member: Vec<bool>,
    multiplicity: Vec<u32>,
    uncovered: usize,
    size: usize,
}

impl<'a> Selection<'a> {
    fn new(instance: &'a Instance) -> Self {
        Self {
            instance,
            member: vec![false; instance.num_sets()],
            multiplicity: vec![0; instance.universe_size()],
            uncovered: instance.universe_size(),
            size: 0,
        }
    }

    fn toggle(&mut self, s: SetId) {
        let adding = !self.member[s];
        self.member[s] = adding;
        for &x in self.instance.elements_of(s) {
            if adding {
                self.multiplicity[x] += 1;
                if self.multiplicity[x] == 1 {
                    self.uncovered -= 1;
                }
            } else {
                self.multiplicity[x] -= 1;
                if self.multiplicity[x] == 0 {
                    self.uncovered += 1;
                }
            }
        }
        if adding {
            self.size += 1;
        } else {
            self.size -= 1;
        }
    }

    /// `(size, uncovered)` after toggling `s`.
    fn after_toggle(&self, s: SetId) -> (usize, usize) {
        let elems = self.instance.elements_of(s);
        if self.member[s] {
            let lost = elems.iter().filter(|&&x| self.multiplicity[x] == 1).count();
            (self.size - 1, self.uncovered + lost)
        } else {
            let gained = elems.iter().filter(|&&x| self.multiplicity[x] == 0).count();
            (self.size + 1, self.uncovered - gained)
        }
    }

    fn ids(&self) -> Vec<SetId> {
        (0..self.member.len()).filter(|&s| self.member[s]).collect()
    }
}

/// Fitness of a selection: uncovered elements plus selected sets.
pub fn fitness(instance: &Instance, selection: &[SetId]) -> Result<usize> {
    Ok(instance.uncovered_count(selection)? + selection.len())
}

/// Best admissible toggle: not tabu, resulting size within `bound`, minimal
/// resulting fitness.
fn best_move(sel: &Selection, tabu: &[bool], bound: usize, tie_break: TieBreak, rng: &mut SolverRng) -> Option<SetId> {
    let mut picker = TiePicker::new(tie_break);
    let mut best: Option<(SetId, usize)> = None;
    for s in (0..tabu.len()).filter(|&s| !tabu[s]) {
        let (size, uncovered) = sel.after_toggle(s);
        if size > bound {
            continue;
        }
        let fit = size + uncovered;
        match best {
            Some((_, b)) if fit > b => {}
            Some((_, b)) if fit == b => {
                if picker.offer(rng) {
                    best = Some((s, fit));
                }
            }
            _ => {
                best = Some((s, fit));
                picker.reset();
            }
        }
    }
    best.map(|(s, _)| s)
}

/// Tabu search over single-set toggles, starting from a feasible cover.
///
/// The size bound starts at `|initial| - 1` and tightens to `|best| - 1`
/// each time the current selection becomes a cover. If every move is tabu
/// or over the bound, the oldest tabu entry is released and the search is
/// retried once; failing that, the iteration does nothing.
pub fn tabu_search(instance: &Instance, initial: &Cover, params: &TabuParams) -> Result<TabuResult> {
    search(instance, initial, params, |_, _| {})
}

/// `observe` sees each applied move and the tabu list right after it.
fn search(
    instance: &Instance,
    initial: &Cover,
    params: &TabuParams,
    mut observe: impl FnMut(SetId, &VecDeque<SetId>),
) -> Result<TabuResult> {
    if params.tenure == 0 {
        return Err(Error::InvalidParam("tabu list capacity must be >= 1".into()));
    }
    if !instance.is_cover(initial)? {
        return Err(Error::InvalidParam("tabu search needs a feasible initial cover".into()));
    }
    let mut rng = seeded(params.seed);
    let mut sel = Selection::new(instance);
    for &s in initial.selected() {
        sel.toggle(s);
    }
    let mut best = initial.clone();
    let mut bound = best.size() - 1;
    let mut tabu_list: VecDeque<SetId> = VecDeque::with_capacity(params.tenure + 1);
    let mut tabu = vec![false; instance.num_sets()];
    let mut improvements = Vec::new();

    for iteration in 0..params.iterations {
        let mut mv = best_move(&sel, &tabu, bound, params.tie_break, &mut rng);
        if mv.is_none() {
            if let Some(oldest) = tabu_list.pop_front() {
                tabu[oldest] = false;
                mv = best_move(&sel, &tabu, bound, params.tie_break, &mut rng);
            }
        }
        let Some(s) = mv else { continue };
        sel.toggle(s);
        tabu_list.push_back(s);
        tabu[s] = true;
        if tabu_list.len() > params.tenure {
            let oldest = tabu_list.pop_front().expect("non-empty");
            tabu[oldest] = false;
        }
        observe(s, &tabu_list);
        if sel.uncovered == 0 {
            best = Cover::from_distinct(instance.name(), sel.ids());
            bound = best.size().saturating_sub(1);
            improvements.push((iteration, best.size()));
        }
    }

    Ok(TabuResult {
        best,
        iterations_run: params.iterations,
        improvements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::greedy;
    use crate::instance::worked_example;

    #[test]
    fn fitness_values() {
        let inst = worked_example();
        assert_eq!(fitness(&inst, &[1]).unwrap(), 3);
        assert_eq!(fitness(&inst, &[]).unwrap(), 5);
        assert_eq!(fitness(&inst, &[0, 2]).unwrap(), 2);
        assert!(fitness(&inst, &[4]).is_err());
    }

    #[test]
    fn zero_iterations_keep_initial() {
        let inst = worked_example();
        let initial = greedy(&inst);
        let params = TabuParams {
            iterations: 0,
            ..Default::default()
        };
        let result = tabu_search(&inst, &initial, &params).unwrap();
        assert_eq!(result.best, initial);
        assert_eq!(result.iterations_run, 0);
    }

    #[test]
    fn finds_optimum_on_worked_example() {
        let inst = worked_example();
        let initial = greedy(&inst);
        assert_eq!(initial.size(), 3);
        for seed in 0..32 {
            let params = TabuParams {
                tenure: 2,
                iterations: 50,
                seed,
                ..Default::default()
            };
            let result = tabu_search(&inst, &initial, &params).unwrap();
            assert_eq!(result.best.size(), 2, "seed {seed}");
            assert!(inst.is_cover(&result.best).unwrap());
        }
    }

    #[test]
    fn tabu_list_is_a_bounded_fifo_of_recent_moves() {
        for seed in 0..20 {
            let inst = crate::generate::small_instance(25, 30, 0.15, seed);
            let initial = greedy(&inst);
            let params = TabuParams {
                tenure: 4,
                iterations: 200,
                seed,
                ..Default::default()
            };
            let mut moves = Vec::new();
            search(&inst, &initial, &params, |s, list| {
                moves.push(s);
                assert!(list.len() <= params.tenure);
                let recent = &moves[moves.len() - list.len()..];
                assert!(list.iter().eq(recent.iter()), "{list:?} vs {recent:?}");
            })
            .unwrap();
        }
    }

    #[test]
    fn rejects_infeasible_initial() {
        let inst = worked_example();
        let bad = Cover::new("worked-example", vec![0]).unwrap();
        assert!(matches!(
            tabu_search(&inst, &bad, &TabuParams::default()),
            Err(Error::InvalidParam(_))
        ));
        let greedy_cover = greedy(&inst);
        let params = TabuParams {
            tenure: 0,
            ..Default::default()
        };
        assert!(tabu_search(&inst, &greedy_cover, &params).is_err());
    }

    #[test]
    fn single_set_instance_survives_deadlock() {
        // the only admissible move is dropping the set; afterwards re-adding
        // breaks the bound, so every later iteration is a no-op
        let inst = Instance::build(2, [vec![1, 2]], "one").unwrap();
        let initial = greedy(&inst);
        let result = tabu_search(&inst, &initial, &TabuParams::default()).unwrap();
        assert_eq!(result.best.size(), 1);
        assert_eq!(result.iterations_run, 1000);
    }
}
