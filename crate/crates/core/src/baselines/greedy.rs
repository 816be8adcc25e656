use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::instance::{Cover, Instance, SetId};

/// Number of elements of `set` not yet in `covered`.
fn gain(instance: &Instance, covered: &FixedBitSet, set: SetId) -> usize {
    instance.set_bits(set).difference_count(covered)
}

/// Classic greedy: repeatedly take the set adding the most uncovered
/// elements. Ties go to the lowest set index.
pub fn greedy(instance: &Instance) -> Cover {
    let n = instance.universe_size();
    let mut covered = FixedBitSet::with_capacity(n);
    let mut taken = vec![false; instance.num_sets()];
    let mut selected = Vec::new();
    while covered.count_ones(..) < n {
        let mut best: Option<(SetId, usize)> = None;
        for s in (0..instance.num_sets()).filter(|&s| !taken[s]) {
            let g = gain(instance, &covered, s);
            if best.is_none_or(|(_, b)| g > b) {
                best = Some((s, g));
            }
        }
        let (s, _) = best.expect("instance union covers the universe");
        taken[s] = true;
        covered.union_with(instance.set_bits(s));
        selected.push(s);
    }
    Cover::from_distinct(instance.name(), selected)
}

/// Big Greedy with step size `p`.
///
/// Each batch ranks the remaining sets by their gain at the start of the
/// batch and commits the top `p` together (ties to the lowest index). When
/// fewer than `p` sets remain, all of them are committed.
pub fn big_greedy(instance: &Instance, p: usize) -> Result<Cover> {
    if p == 0 {
        return Err(Error::InvalidParam("big greedy step size must be >= 1".into()));
    }
    let n = instance.universe_size();
    let mut covered = FixedBitSet::with_capacity(n);
    let mut remaining: Vec<SetId> = (0..instance.num_sets()).collect();
    let mut selected = Vec::new();
    while covered.count_ones(..) < n {
        let batch: Vec<SetId> = if p > remaining.len() {
            std::mem::take(&mut remaining)
        } else {
            let mut ranked: Vec<(usize, SetId)> = remaining.iter().map(|&s| (gain(instance, &covered, s), s)).collect();
            // stable: equal gains keep ascending index order
            ranked.sort_by_key(|&(g, _)| std::cmp::Reverse(g));
            let batch: Vec<SetId> = ranked[..p].iter().map(|&(_, s)| s).collect();
            remaining.retain(|s| !batch.contains(s));
            batch
        };
        for s in batch {
            covered.union_with(instance.set_bits(s));
            selected.push(s);
        }
    }
    Ok(Cover::from_distinct(instance.name(), selected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::worked_example;

    #[test]
    fn greedy_worked_example() {
        let inst = worked_example();
        assert_eq!(greedy(&inst).selected(), &[1, 0, 2]);
    }

    #[test]
    fn greedy_takes_full_set() {
        let inst = Instance::build(4, [vec![1, 2], vec![1, 2, 3, 4], vec![3]], "x").unwrap();
        assert_eq!(greedy(&inst).selected(), &[1]);
    }

    #[test]
    fn big_greedy_large_step_takes_everything() {
        let inst = worked_example();
        assert_eq!(big_greedy(&inst, 4).unwrap().size(), 4);
        assert_eq!(big_greedy(&inst, 9).unwrap().size(), 4);
    }

    #[test]
    fn big_greedy_step_two() {
        // gains at start: S1 2, S2 3, S3 3, S4 2 -> {S2, S3} covers everything but 4
        // next batch ranks S1 and S4 (gain 1 each) and commits both
        let inst = worked_example();
        assert_eq!(big_greedy(&inst, 2).unwrap().selected(), &[1, 2, 0, 3]);
    }

    #[test]
    fn big_greedy_rejects_zero_step() {
        assert!(matches!(big_greedy(&worked_example(), 0), Err(Error::InvalidParam(_))));
    }

    #[test]
    fn big_greedy_one_is_greedy() {
        let inst = worked_example();
        assert_eq!(big_greedy(&inst, 1).unwrap(), greedy(&inst));
    }
}
